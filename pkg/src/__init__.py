"""Hard Edge Lab - en küçük tekil değer ve koşul sayısı deneyleri"""
