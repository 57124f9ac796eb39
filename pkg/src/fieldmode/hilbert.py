"""Truncated qubit (x) field Hilbert space: states, operators, expectations.

Basis ordering is fixed as qubit-major everywhere in this package: a full-space
index is ``q * (n_max + 1) + n`` where ``q = 0`` labels the upper qubit level
and ``q = 1`` the lower one, and ``n`` is the Fock level of the field. All
constructors return arrays with the write flag cleared, so operators and
states can be shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CutoffTooSmall, DimensionMismatch

QUBIT_DIM = 2
UP = 0
DOWN = 1


@dataclass(frozen=True)
class FockCutoff:
    """Highest Fock level retained; the field space has dimension n_max + 1.

    ``leakage_tol`` bounds the probability weight a coherent state may lose
    to truncation before construction is refused.
    """

    n_max: int
    leakage_tol: float = 1e-10

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        if not 0.0 < self.leakage_tol < 1.0:
            raise ValueError("leakage_tol must lie in (0, 1)")

    @property
    def field_dim(self) -> int:
        return self.n_max + 1

    @property
    def full_dim(self) -> int:
        return QUBIT_DIM * (self.n_max + 1)


def default_cutoff(n_bar: float, leakage_tol: float = 1e-10) -> FockCutoff:
    """Cutoff rule n_max = ceil(n_bar + 10*sqrt(n_bar)), never below 1."""
    if n_bar < 0:
        raise ValueError("n_bar must be non-negative")
    n_max = max(1, math.ceil(n_bar + 10.0 * math.sqrt(n_bar)))
    return FockCutoff(n_max=n_max, leakage_tol=leakage_tol)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


def annihilation(cutoff: FockCutoff) -> np.ndarray:
    """Field annihilation operator: <n-1|a|n> = sqrt(n)."""
    return _frozen(np.diag(np.sqrt(np.arange(1, cutoff.field_dim)), k=1).astype(complex))


def creation(cutoff: FockCutoff) -> np.ndarray:
    return _frozen(annihilation(cutoff).conj().T.copy())


def number_op(cutoff: FockCutoff) -> np.ndarray:
    return _frozen(np.diag(np.arange(cutoff.field_dim)).astype(complex))


def qubit_ops() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Return (sigma_z, sigma_x, sigma_plus, sigma_minus) in the (up, down) basis."""
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sp = np.array([[0, 1], [0, 0]], dtype=complex)  # |up><down|
    sm = np.array([[0, 0], [1, 0]], dtype=complex)
    return _frozen(sz), _frozen(sx), _frozen(sp), _frozen(sm)


def identity(dim: int) -> np.ndarray:
    return _frozen(np.eye(dim, dtype=complex))


def fock_state(n: int, cutoff: FockCutoff) -> np.ndarray:
    if not 0 <= n <= cutoff.n_max:
        raise ValueError(f"Fock level {n} outside 0..{cutoff.n_max}")
    vec = np.zeros(cutoff.field_dim, dtype=complex)
    vec[n] = 1.0
    return _frozen(vec)


def qubit_up() -> np.ndarray:
    return _frozen(np.array([1.0, 0.0], dtype=complex))


def qubit_down() -> np.ndarray:
    return _frozen(np.array([0.0, 1.0], dtype=complex))


def coherent_tail_weight(alpha: complex, n_max: int) -> float:
    """Poisson weight above n_max for a coherent state of amplitude alpha."""
    n_bar = abs(alpha) ** 2
    if n_bar == 0.0:
        return 0.0
    term = math.exp(-n_bar)
    total = term
    for n in range(1, n_max + 1):
        term *= n_bar / n
        total += term
    return max(0.0, 1.0 - total)


def coherent_state(alpha: complex, cutoff: FockCutoff) -> np.ndarray:
    """Truncated coherent state, renormalized after truncation.

    Amplitudes are built with the stable recurrence
    c_{n+1} = c_n * alpha / sqrt(n+1), c_0 = exp(-|alpha|^2 / 2).

    Raises CutoffTooSmall if the weight beyond n_max exceeds the cutoff's
    leakage tolerance.
    """
    tail = coherent_tail_weight(alpha, cutoff.n_max)
    if tail > cutoff.leakage_tol:
        raise CutoffTooSmall(
            f"coherent state |alpha|^2 = {abs(alpha)**2:.6g} leaks {tail:.3e} "
            f"above n_max = {cutoff.n_max} (tolerance {cutoff.leakage_tol:.1e})"
        )
    amps = np.empty(cutoff.field_dim, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(cutoff.n_max):
        amps[n + 1] = amps[n] * alpha / math.sqrt(n + 1)
    return _frozen(amps / np.linalg.norm(amps))


def tensor(qubit_op: np.ndarray, field_op: np.ndarray) -> np.ndarray:
    """Kronecker product embedding a (qubit, field) operator pair, qubit-major."""
    qubit_op = np.asarray(qubit_op)
    field_op = np.asarray(field_op)
    if qubit_op.shape != (QUBIT_DIM, QUBIT_DIM):
        raise DimensionMismatch(f"qubit operand must be 2x2, got {qubit_op.shape}")
    if field_op.ndim != 2 or field_op.shape[0] != field_op.shape[1]:
        raise DimensionMismatch(f"field operand must be square, got {field_op.shape}")
    return _frozen(np.kron(qubit_op, field_op).astype(complex))


def embed_qubit(op: np.ndarray, cutoff: FockCutoff) -> np.ndarray:
    return tensor(op, np.eye(cutoff.field_dim, dtype=complex))


def embed_field(op: np.ndarray, cutoff: FockCutoff) -> np.ndarray:
    return tensor(np.eye(QUBIT_DIM, dtype=complex), op)


def product_state(qubit_vec: np.ndarray, field_vec: np.ndarray) -> np.ndarray:
    return _frozen(np.kron(np.asarray(qubit_vec, dtype=complex),
                           np.asarray(field_vec, dtype=complex)))


def normalize(psi: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(psi)
    if norm == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return psi / norm


def expectation(op: np.ndarray, state: np.ndarray) -> complex:
    """<psi|A|psi> for a vector, Tr(rho A) for a density matrix."""
    op = np.asarray(op)
    state = np.asarray(state)
    if state.ndim == 1:
        if op.shape != (state.size, state.size):
            raise DimensionMismatch(
                f"operator {op.shape} does not act on a vector of length {state.size}"
            )
        return complex(np.vdot(state, op @ state))
    if state.ndim == 2:
        if op.shape != state.shape:
            raise DimensionMismatch(
                f"operator {op.shape} does not match density matrix {state.shape}"
            )
        return complex(np.trace(state @ op))
    raise DimensionMismatch(f"state must be a vector or a square matrix, got ndim={state.ndim}")


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def assert_density_matrix(rho: np.ndarray, herm_tol: float = 1e-12,
                          trace_tol: float = 1e-8, eig_tol: float = 1e-8) -> None:
    """Check the Hermiticity / unit-trace / positivity invariants, loudly."""
    defect = hermiticity_defect(rho)
    if defect > herm_tol:
        raise AssertionError(f"density matrix not Hermitian: defect {defect:.3e}")
    trace_err = abs(np.trace(rho).real - 1.0) + abs(np.trace(rho).imag)
    if trace_err > trace_tol:
        raise AssertionError(f"density matrix trace off by {trace_err:.3e}")
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if min_eig < -eig_tol:
        raise AssertionError(f"density matrix has eigenvalue {min_eig:.3e}")
