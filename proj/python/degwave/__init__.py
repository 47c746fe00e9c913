"""Python bindings for the degenerate wave equation lab."""

import json

from . import _core
from ._core import (
    ArgumentError,
    ConfigError,
    DomainError,
    MultiplierProfile,
    NumericalError,
    boundary_functionals,
    config_hash,
    convergence_study,
    duality_residuals,
    embedding_constants,
    liminf_experiment,
    multiplier_residual,
    solve,
)

__version__ = _core.version()


def default_config():
    return json.loads(_core.default_config())


def run_campaign(name, config=None):
    """Run one campaign; `config` is a dict of overrides on the defaults."""
    text = "" if config is None else json.dumps(config)
    summary, violations = _core.run_campaign(name, text)
    return json.loads(summary), violations
