"""
Grafik verisi: (x, y, ci_lo, ci_hi) CSV ve isteğe bağlı SVG
"""
import logging
from pathlib import Path
from typing import Any, Callable, List, Optional

import numpy as np
import pandas as pd

from ..ensembles import as_generator
from .io import PathLike, write_frame_csv


logger = logging.getLogger(__name__)

PLOT_COLUMNS = ["series", "x", "y", "ci_lo", "ci_hi"]


def median_series(frame: pd.DataFrame, value: Callable[[pd.DataFrame], np.ndarray],
                  x_column: str = "param", series_column: str = "N", rng: Any = 0,
                  resamples: int = 200, level: float = 0.95) -> pd.DataFrame:
    """Her (seri, x) için medyan ve bootstrap güven aralığı"""
    gen = np.random.default_rng(rng) if isinstance(rng, int) else as_generator(rng)
    tail = (1.0 - level) / 2.0
    rows: List[dict] = []
    for (series, x), group in frame.groupby([series_column, x_column], sort=True):
        values = np.asarray(value(group), dtype=float)
        values = values[np.isfinite(values)]
        if values.size == 0:
            continue
        boot = [np.median(gen.choice(values, size=values.size, replace=True)) for _ in range(resamples)]
        lo, hi = np.quantile(boot, [tail, 1.0 - tail])
        rows.append({"series": series, "x": float(x), "y": float(np.median(values)),
                     "ci_lo": float(lo), "ci_hi": float(hi)})
    return pd.DataFrame(rows, columns=PLOT_COLUMNS)


def write_plot_data(points: pd.DataFrame, path: PathLike, svg: bool = False,
                    title: str = "", xlabel: str = "x", ylabel: str = "y",
                    log_axes: bool = False) -> Optional[Path]:
    """CSV'yi yaz; svg=True ise aynı adla .svg çizgi grafiği de üret. SVG yolunu döndürür."""
    missing = [c for c in ("x", "y", "ci_lo", "ci_hi") if c not in points.columns]
    if missing:
        raise ValueError(f"Eksik grafik sütunları: {missing}")
    path = Path(path)
    write_frame_csv(points, path)
    if not svg or points.empty:
        return None

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as e:
        logger.warning(f"⚠️ matplotlib yok, SVG atlandı: {e}")
        return None

    groups = points.groupby("series", sort=True) if "series" in points.columns else [("", points)]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for series, group in groups:
        ax.plot(group["x"], group["y"], marker="o", label=str(series))
        ax.fill_between(group["x"], group["ci_lo"], group["ci_hi"], alpha=0.2)
    if log_axes:
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, ls=":", alpha=0.4)
    if "series" in points.columns:
        ax.legend(fontsize=7)
    fig.tight_layout()
    svg_path = path.with_suffix(".svg")
    fig.savefig(svg_path, format="svg")
    plt.close(fig)
    return svg_path
