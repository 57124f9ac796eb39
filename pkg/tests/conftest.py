import numpy as np
import pytest

from fieldmode import dynamics, hilbert, models

QUANTUM_LIMIT_ALPHA = complex(np.sqrt(15.0))


@pytest.fixture(scope="session")
def quantum_limit_params():
    """Desk-scale quantum-limit parameters: coupling 1, mean photon number 15."""
    return models.SystemParams(lam=1.0, alpha=QUANTUM_LIMIT_ALPHA)


@pytest.fixture(scope="session")
def quantum_limit_run(quantum_limit_params):
    """Undamped quantum-limit reference run shared across test modules."""
    cutoff = hilbert.default_cutoff(quantum_limit_params.n_bar)
    model = models.build_model(quantum_limit_params, cutoff)
    psi0 = models.initial_state(quantum_limit_params, cutoff)
    cfg = dynamics.IntegratorConfig(dt=0.002, t_end=30.0, sample_stride=10, scheme="rk4")
    return dynamics.run_trajectory(psi0, cfg, model)
