"""CLI Module - komut satırı, kalıcılık, manifesto ve grafik verisi"""
from .io import (
    ConfigError,
    RunManifest,
    load_config,
    save_config,
    read_manifest,
    write_manifest,
    verify_manifest,
    write_records_csv,
    read_records_csv,
    write_records_json,
    prepare_output_dir,
)
from .plots import median_series, write_plot_data
from .verify import CheckResult, run_verify
from .main import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, build_parser, cli_main

__all__ = [
    "ConfigError",
    "RunManifest",
    "load_config",
    "save_config",
    "read_manifest",
    "write_manifest",
    "verify_manifest",
    "write_records_csv",
    "read_records_csv",
    "write_records_json",
    "prepare_output_dir",
    "median_series",
    "write_plot_data",
    "CheckResult",
    "run_verify",
    "EXIT_OK",
    "EXIT_CHECK_FAILED",
    "EXIT_USAGE",
    "build_parser",
    "cli_main",
]
