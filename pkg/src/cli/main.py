"""
Komut satırı arayüzü

Çıkış kodları: 0 başarı, 1 kontrol başarısızlığı ya da beklenmeyen hata,
2 kullanım/konfigürasyon hatası.
"""
import argparse
import logging
import math
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from ..comparison import ComparisonError, TestFunctionSpec, lindeberg_swap_experiment
from ..config import get_settings
from ..dynamics import DynamicsError, run_dbm
from ..ensembles import EnsembleError, EntryLaw, RngStreamSpec, match_first_three_moments, sample_matrix
from ..experiments import (
    EXPERIMENTS,
    ApplicationError,
    ExperimentConfig,
    ExperimentConfigError,
    SummaryStats,
    cg_iterations,
    lop_estimate,
    records_frame,
)
from ..experiments.runner import H_STREAM, NOISE_STREAM
from ..spectra import singular_values
from ..utils import ErrorHandler
from .io import (
    ConfigError,
    RunManifest,
    load_config,
    prepare_output_dir,
    write_frame_csv,
    write_json,
    write_manifest,
    write_records_csv,
    write_records_json,
)
from .plots import median_series, write_plot_data
from .verify import run_verify


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

DEFAULT_SEED = 1

USAGE_ERRORS = (ExperimentConfigError, EnsembleError, ApplicationError, ComparisonError, DynamicsError)

# Deney başına varsayılanlar: ensemble, ızgara, M_offset ve N listesi (varsayılan [64])
EXPERIMENT_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "smoothed": {"ensemble": "rademacher", "grid": [0.5, 1.0, 2.0], "M_offset": "zero"},
    "coupled": {"ensemble": "rademacher", "grid": [0.05, 0.1, 0.2, 0.4], "M_offset": "zero",
                "N_list": [128]},
    "universality": {"ensemble": "rademacher", "grid": [], "M_offset": "zero"},
    "complex-exact": {"ensemble": "gaussian-complex", "grid": [], "M_offset": "zero"},
    "condition": {"ensemble": "rademacher", "grid": [1.0], "M_offset": "zero"},
    "nonsquare": {"ensemble": "rademacher", "grid": [], "M_offset": "log"},
}


# ------------------------------------------------------------------
# Argümanlar
# ------------------------------------------------------------------
def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="ExperimentConfig JSON dosyası")
    common.add_argument("--seed", type=int, help="64-bit ana tohum")
    common.add_argument("--out", help="çıktı dizini")
    common.add_argument("--trials", type=int, help="deneme sayısı")
    common.add_argument("--threads", type=int, help="iş parçacığı sayısı")
    common.add_argument("--format", choices=("csv", "json"), default="csv", help="kayıt biçimi")
    common.add_argument("--force", action="store_true", help="dolu çıktı dizinine yaz")
    common.add_argument("--svg", action="store_true", help="grafik verisi için SVG de üret")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="hard-edge-lab",
                                     description="En küçük tekil değer deney laboratuvarı")
    sub = parser.add_subparsers(dest="command", required=True, metavar="komut")

    sample = sub.add_parser("sample", parents=[common], help="tek matris ve spektrumu")
    sample.add_argument("--N", type=int, required=True)
    sample.add_argument("--M", type=int)
    sample.add_argument("--ensemble", default="gaussian-real")

    dbm = sub.add_parser("dbm", parents=[common], help="tekil değer DBM yörüngesi")
    dbm.add_argument("--N", type=int, default=32)
    dbm.add_argument("--ensemble", default="gaussian-real")
    dbm.add_argument("--t", type=float, nargs="+", default=[0.1], dest="t_grid")
    dbm.add_argument("--dt", type=float)
    dbm.add_argument("--record", choices=("grid", "steps"), default="steps")
    dbm.add_argument("--no-noise", action="store_true")

    for name in EXPERIMENTS:
        exp = sub.add_parser(name, parents=[common], help=f"{name} deneyi")
        exp.add_argument("--N", type=int, nargs="+", dest="N_list")
        exp.add_argument("--ensemble")
        exp.add_argument("--grid", type=float, nargs="+", help="λ ya da t ızgarası")
        exp.add_argument("--r-grid", type=float, nargs="+", dest="r_grid")
        exp.add_argument("--M-offset", choices=("zero", "log"), dest="M_offset")
        exp.add_argument("--dt", type=float)

    lind = sub.add_parser("lindeberg", parents=[common], help="Lindeberg değiş-tokuş karşılaştırması")
    lind.add_argument("--N", type=int, default=16)
    lind.add_argument("--law-x", default="rademacher")
    lind.add_argument("--law-y", default="gaussian-real")
    lind.add_argument("--gap", type=float, help="Y'yi ilk üç momenti eşlenmiş üç noktalı yasa yap")
    lind.add_argument("--r", type=float, default=1.0)
    lind.add_argument("--a", type=float, default=1.5)
    lind.add_argument("--rho", type=float)
    lind.add_argument("--variant", choices=("f1", "f2"), default="f1")

    apps = sub.add_parser("apps", help="LoP / CG hesaplayıcıları")
    apps_sub = apps.add_subparsers(dest="app", required=True, metavar="uygulama")
    lop = apps_sub.add_parser("lop")
    lop.add_argument("--M", type=int, required=True)
    lop.add_argument("--N", type=int, required=True)
    lop.add_argument("--kappa", type=float, required=True)
    cg = apps_sub.add_parser("cg")
    cg.add_argument("--kappa", type=float, required=True)
    cg.add_argument("--delta", type=float, required=True)

    verify = sub.add_parser("verify", help="değişmez doğrulama paketi")
    verify.add_argument("--quick", action="store_true")
    return parser


# ------------------------------------------------------------------
# Yardımcılar
# ------------------------------------------------------------------
def _seed(args: argparse.Namespace) -> int:
    return DEFAULT_SEED if args.seed is None else args.seed


def _output_dir(args: argparse.Namespace, name: str, seed: int, configured: str = "") -> Path:
    target = args.out or configured or str(get_settings().output.root / f"{name}-seed{seed}")
    return prepare_output_dir(target, force=args.force)


def _finish(manifest: RunManifest, directory: Path, artifacts: List[str]) -> None:
    manifest.finish()
    manifest.record_artifacts(directory, artifacts)
    write_manifest(manifest, directory)


def experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    """--config dosyası ya da bayraklardan konfigürasyon; bayraklar dosyayı ezer"""
    defaults = EXPERIMENT_DEFAULTS[args.command]
    if args.config:
        data = load_config(args.config).to_dict()
    else:
        data = {
            "name": args.command,
            "N_list": defaults.get("N_list", [64]),
            "ensemble": defaults["ensemble"],
            "trials": get_settings().experiments.min_trials,
            "master_seed": DEFAULT_SEED,
            "M_offset": defaults["M_offset"],
            "lambda_or_t_grid": list(defaults["grid"]),
        }
    overrides = {
        "N_list": args.N_list,
        "ensemble": args.ensemble,
        "lambda_or_t_grid": args.grid,
        "r_grid": args.r_grid,
        "M_offset": args.M_offset,
        "master_seed": args.seed,
        "trials": args.trials,
        "threads": args.threads,
        "dt": args.dt,
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ExperimentConfig.from_dict(data)
    except ExperimentConfigError as e:
        raise ConfigError(str(e).split(": ", 1)[-1], e.field)


def _plot_points(summary: SummaryStats) -> pd.DataFrame:
    frame = records_frame(summary.records)
    return median_series(frame, lambda group: group["aux1"].to_numpy(),
                         rng=int(summary.config_echo.get("master_seed", 0)))


# ------------------------------------------------------------------
# Komutlar
# ------------------------------------------------------------------
@ErrorHandler.log_errors(logger, passthrough=USAGE_ERRORS)
def cmd_sample(args: argparse.Namespace) -> int:
    seed = _seed(args)
    M = args.M or args.N
    law = EntryLaw.from_name(args.ensemble)
    manifest = RunManifest(config={"command": "sample", "N": args.N, "M": M,
                                   "ensemble": law.label, "master_seed": seed})
    out = _output_dir(args, f"sample-{law.label}-{M}x{args.N}", seed)

    A = sample_matrix(law, M, args.N, RngStreamSpec(master_seed=seed).child(H_STREAM))
    rows, cols = np.indices(A.shape)
    matrix = pd.DataFrame({"i": rows.ravel(), "j": cols.ravel(), "re": A.entries.real.ravel()})
    if A.is_complex:
        matrix["im"] = A.entries.imag.ravel()
    write_frame_csv(matrix, out / "matrix.csv")
    write_frame_csv(singular_values(A).symmetrized().to_frame(), out / "spectrum.csv")
    _finish(manifest, out, ["matrix.csv", "spectrum.csv"])
    print(out)
    return EXIT_OK


@ErrorHandler.log_errors(logger, passthrough=USAGE_ERRORS)
def cmd_dbm(args: argparse.Namespace) -> int:
    seed = _seed(args)
    law = EntryLaw.from_name(args.ensemble)
    dt = args.dt or get_settings().simulation.dt_max
    manifest = RunManifest(config={"command": "dbm", "N": args.N, "ensemble": law.label,
                                   "t_grid": args.t_grid, "dt": dt, "noise": not args.no_noise,
                                   "master_seed": seed})
    out = _output_dir(args, f"dbm-{law.label}-{args.N}", seed)

    root = RngStreamSpec(master_seed=seed)
    initial = singular_values(sample_matrix(law, args.N, args.N, root.child(H_STREAM))).values
    trajectory = run_dbm(initial, args.t_grid, dt, root.child(NOISE_STREAM), noise=not args.no_noise,
                         record=args.record)
    write_frame_csv(trajectory.to_frame(), out / "trajectory.csv")
    _finish(manifest, out, ["trajectory.csv"])
    print(out)
    return EXIT_OK


@ErrorHandler.log_errors(logger, passthrough=USAGE_ERRORS)
def cmd_experiment(args: argparse.Namespace) -> int:
    cfg = experiment_config(args)
    out = _output_dir(args, cfg.name, int(cfg.master_seed), cfg.output_path)
    manifest = RunManifest(config=cfg.to_dict())

    summary = EXPERIMENTS[args.command](cfg)
    records_name = f"records.{args.format}"
    if args.format == "csv":
        write_records_csv(summary.records, out / records_name)
    else:
        write_records_json(summary.records, out / records_name)
    write_json(summary.to_dict(), out / "summary.json")
    artifacts = [records_name, "summary.json", "plot_median.csv"]
    svg = write_plot_data(_plot_points(summary), out / "plot_median.csv", svg=args.svg,
                          title=cfg.name, xlabel="param", ylabel="median aux1")
    if svg is not None:
        artifacts.append(svg.name)
    _finish(manifest, out, artifacts)

    if summary.passed:
        logger.info(f"✓ {cfg.name}: {out}")
        return EXIT_OK
    logger.warning(f"⚠️ {cfg.name}: başarısız kontroller {summary.failed_checks()}")
    return EXIT_CHECK_FAILED


@ErrorHandler.log_errors(logger, passthrough=USAGE_ERRORS)
def cmd_lindeberg(args: argparse.Namespace) -> int:
    seed = _seed(args)
    N = args.N
    law_x = EntryLaw.from_name(args.law_x)
    law_y = match_first_three_moments(args.gap) if args.gap is not None else EntryLaw.from_name(args.law_y)
    rho = args.rho if args.rho is not None else N ** (-(1.0 + args.a) / 2.0)
    spec = TestFunctionSpec(r=args.r, rho=rho, a=args.a, N=N, variant=args.variant)
    trials = args.trials or get_settings().experiments.min_trials
    manifest = RunManifest(config={"command": "lindeberg", "N": N, "law_x": law_x.to_dict(),
                                   "law_y": law_y.to_dict(), "test_function": spec.to_dict(),
                                   "trials": trials, "master_seed": seed})
    out = _output_dir(args, f"lindeberg-{N}", seed)

    result = lindeberg_swap_experiment(law_x, law_y, N, spec, trials, RngStreamSpec(master_seed=seed),
                                       threads=args.threads or get_settings().experiments.default_threads)
    write_frame_csv(result.frame, out / "lindeberg.csv")
    summary = dict(result.to_summary(), within_budget=result.within_budget())
    write_json(summary, out / "summary.json")
    _finish(manifest, out, ["lindeberg.csv", "summary.json"])
    return EXIT_OK if result.within_budget() else EXIT_CHECK_FAILED


@ErrorHandler.log_errors(logger, passthrough=USAGE_ERRORS)
def cmd_apps(args: argparse.Namespace) -> int:
    if args.app == "lop":
        value = lop_estimate(args.M, args.N, args.kappa)
    else:
        value = cg_iterations(args.kappa, args.delta)
    print(f"{value:.12g}" if math.isfinite(value) else value)
    return EXIT_OK


@ErrorHandler.log_errors(logger)
def cmd_verify(args: argparse.Namespace) -> int:
    results = run_verify(quick=args.quick)
    for result in results:
        print(f"{'PASS' if result.passed else 'FAIL'}  {result.name}  {result.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "sample": cmd_sample,
    "dbm": cmd_dbm,
    "lindeberg": cmd_lindeberg,
    "apps": cmd_apps,
    "verify": cmd_verify,
    **{name: cmd_experiment for name in EXPERIMENTS},
}


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        return COMMANDS[args.command](args)
    except USAGE_ERRORS as e:
        parser.print_usage()
        print(f"hata: {e}")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"✗ {args.command} başarısız: {e}", exc_info=True)
        return EXIT_CHECK_FAILED
