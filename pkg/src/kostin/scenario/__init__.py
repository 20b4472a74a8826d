"""Scenario files, pipelines and validation reports."""

from __future__ import annotations

from .config import (
    KNOWN_KEYS,
    Pipeline,
    ScenarioConfig,
    check_config,
    load_config,
    parse_config,
    render_entries,
)
from .runner import (
    EXIT_CHECK_FAILED,
    EXIT_CONFIG,
    EXIT_NUMERICAL,
    EXIT_OK,
    REPORT_NAME,
    Check,
    Report,
    cross_validate,
    parse_vary,
    run_scenario,
    run_sweep,
)
from .validation import ValidationIssue, ValidationResult, ValidationSeverity

__all__ = [
    "EXIT_CHECK_FAILED",
    "EXIT_CONFIG",
    "EXIT_NUMERICAL",
    "EXIT_OK",
    "KNOWN_KEYS",
    "REPORT_NAME",
    "Check",
    "Pipeline",
    "Report",
    "ScenarioConfig",
    "ValidationIssue",
    "ValidationResult",
    "ValidationSeverity",
    "check_config",
    "cross_validate",
    "load_config",
    "parse_config",
    "parse_vary",
    "render_entries",
    "run_scenario",
    "run_sweep",
]
