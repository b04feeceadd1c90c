"""
Hard Edge Lab giriş noktası

MIMARI:
  main.py
  ├─ LoggerSetup (logger.py) → "src" paket logger'ı
  └─ src.cli.cli_main(argv) → çıkış kodu
     ├─ sample / dbm               → ensembles, spectra, dynamics
     ├─ smoothed / coupled / universality / complex-exact / condition / nonsquare
     │                             → experiments (TrialRunner, SummaryStats)
     ├─ lindeberg                  → comparison
     ├─ apps lop|cg                → experiments.applications
     └─ verify [--quick]           → cli.verify
"""
import sys

from logger import configure_package_logging
from src.cli import cli_main


def main() -> int:
    configure_package_logging()
    return cli_main(sys.argv[1:])


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n⚠️ Kullanıcı tarafından durduruldu")
        sys.exit(1)
