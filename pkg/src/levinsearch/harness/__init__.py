from .config import ConfigError, LoadedConfig, load_config, parse_config
from .experiment import ALGORITHMS, config_for, run_cell, run_suite
from .report import RunReport, Verdict, emit_report

__all__ = ["ALGORITHMS", "ConfigError", "LoadedConfig", "RunReport", "Verdict",
           "config_for", "emit_report", "load_config", "parse_config", "run_cell",
           "run_suite"]
