"""Simulation of a qubit-probed field mode across the quantum-classical crossover.

Continuous Rabi oscillations (classical field), collapse and revival
(quantized field), and the dissipation-driven transition between them, via
density-matrix integration and diffusive pure-state trajectories.
"""

__version__ = "0.1.0"

from .hilbert import FockCutoff, coherent_state, default_cutoff  # noqa: F401
from .models import SystemParams, build_model, initial_state  # noqa: F401
from .dynamics import (  # noqa: F401
    IntegratorConfig,
    NoiseStream,
    TimeSeries,
    run_ensemble,
    run_master,
    run_trajectory,
)
from .analysis import Timescales, classify_regime, detect_features, timescales  # noqa: F401
from .observables import GridSpec, WignerGrid, wigner  # noqa: F401
from .scenario import ScenarioConfig, parse_config, run, write_artifacts  # noqa: F401
