"""Physics read-outs: inversion, partial traces, entropy, photon number, Wigner grids.

The quadrature convention is q = (a + a')/sqrt(2), p = i(a' - a)/sqrt(2), so a
coherent state with real amplitude alpha sits at x = sqrt(2)*alpha, p = 0, and
the phase-space distribution is normalized as integral W dx dp = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, GridTooCoarse, NegativeEigenvalue
from .hilbert import FockCutoff, annihilation


def _split_dims(state: np.ndarray) -> int:
    dim = state.shape[0]
    if dim % 2 != 0:
        raise DimensionMismatch(f"full-space dimension must be even, got {dim}")
    return dim // 2


def inversion(state: np.ndarray) -> float:
    """<sigma_z> of a full-space state vector or density matrix."""
    state = np.asarray(state)
    nf = _split_dims(state)
    if state.ndim == 1:
        up = float(np.sum(np.abs(state[:nf]) ** 2))
        down = float(np.sum(np.abs(state[nf:]) ** 2))
        return up - down
    if state.ndim == 2 and state.shape[0] == state.shape[1]:
        diag = np.diagonal(state).real
        return float(np.sum(diag[:nf]) - np.sum(diag[nf:]))
    raise DimensionMismatch(f"expected vector or square matrix, got shape {state.shape}")


def reduce_qubit(state: np.ndarray) -> np.ndarray:
    """Partial trace over the field, giving the 2x2 qubit density matrix."""
    state = np.asarray(state)
    nf = _split_dims(state)
    if state.ndim == 1:
        m = state.reshape(2, nf)
        return m @ m.conj().T
    rho = state.reshape(2, nf, 2, nf)
    return np.einsum("injn->ij", rho)


def reduce_field(state: np.ndarray) -> np.ndarray:
    """Partial trace over the qubit, giving the field density matrix."""
    state = np.asarray(state)
    nf = _split_dims(state)
    if state.ndim == 1:
        m = state.reshape(2, nf)
        return m.T @ m.conj()
    rho = state.reshape(2, nf, 2, nf)
    return np.einsum("qnqm->nm", rho)


def entropy_nats(rho: np.ndarray) -> float:
    """Von Neumann entropy -Tr(rho ln rho) in Nats.

    Eigenvalues in [-1e-8, 0) are clamped to zero; anything more negative
    raises NegativeEigenvalue.
    """
    evals = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if evals.min() < -1e-8:
        raise NegativeEigenvalue(f"eigenvalue {evals.min():.3e} below -1e-8")
    evals = np.clip(evals, 0.0, None)
    positive = evals[evals > 0.0]
    return float(-np.sum(positive * np.log(positive)))


def photon_number(state: np.ndarray, cutoff: FockCutoff) -> float:
    """<a'a> of a field-only or full-space state (vector or density matrix)."""
    state = np.asarray(state)
    dim = state.shape[0]
    levels = np.arange(cutoff.field_dim, dtype=float)
    if dim == cutoff.field_dim:
        weights = levels
    elif dim == cutoff.full_dim:
        weights = np.concatenate([levels, levels])
    else:
        raise DimensionMismatch(
            f"state dimension {dim} matches neither the field space "
            f"({cutoff.field_dim}) nor the full space ({cutoff.full_dim})"
        )
    if state.ndim == 1:
        return float(np.sum(weights * np.abs(state) ** 2))
    return float(np.sum(weights * np.diagonal(state).real))


@dataclass(frozen=True)
class GridSpec:
    """Rectangular phase-space window with `resolution` points per axis."""

    x_min: float = -8.0
    x_max: float = 8.0
    p_min: float = -8.0
    p_max: float = 8.0
    resolution: int = 101

    def __post_init__(self):
        if self.x_max <= self.x_min or self.p_max <= self.p_min:
            raise ValueError("grid ranges must be non-empty")
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.resolution)

    @property
    def p(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.resolution)

    @property
    def cell_area(self) -> float:
        dx = (self.x_max - self.x_min) / (self.resolution - 1)
        dp = (self.p_max - self.p_min) / (self.resolution - 1)
        return dx * dp


@dataclass(frozen=True)
class WignerGrid:
    spec: GridSpec
    values: np.ndarray  # shape (resolution, resolution), rows index x

    @property
    def integral(self) -> float:
        return float(np.sum(self.values) * self.spec.cell_area)

    @property
    def min_value(self) -> float:
        return float(self.values.min())


def _padded_levels(spec: GridSpec, n_bar: float, nf: int) -> int:
    """Fock levels needed so grid-edge displacements stay inside the space.

    The displaced image of the state reaches mean photon number about
    (|beta|_max + sqrt(n_bar))^2; keeping ~8 standard deviations beyond that
    makes the truncated displacement exact to well below the grid tolerance.
    """
    corner = max(abs(spec.x_min), abs(spec.x_max)) ** 2 + \
        max(abs(spec.p_min), abs(spec.p_max)) ** 2
    beta_max = np.sqrt(corner / 2.0)
    mean = (beta_max + np.sqrt(max(n_bar, 0.0))) ** 2
    return max(nf, int(np.ceil(mean + 8.0 * np.sqrt(mean) + 12.0)))


def wigner(rho_field: np.ndarray, spec: GridSpec, check_norm: bool = True,
           norm_tol: float = 0.02, weight_cutoff: float = 1e-12) -> WignerGrid:
    """Wigner function W(x, p) = (1/pi) Tr[D(-beta) rho D(beta) P].

    beta = (x + i p)/sqrt(2), P the photon-number parity. The state is
    zero-padded into a Fock space large enough for the displaced image of
    every grid point, then D(beta) is applied exactly by splitting it into a
    number-phase rotation and the one-parameter group exp(r (a' - a)), whose
    Hermitian generator is diagonalized once. rho is eigendecomposed and
    weights below `weight_cutoff` are dropped, so pure and low-rank states
    cost O(grid^2 * dim^2).

    Raises GridTooCoarse when check_norm is set and the grid integral differs
    from 1 by more than norm_tol (state not resolved or not contained).
    """
    rho_field = np.asarray(rho_field, dtype=complex)
    if rho_field.ndim != 2 or rho_field.shape[0] != rho_field.shape[1]:
        raise DimensionMismatch(f"expected a square field density matrix, got {rho_field.shape}")
    nf = rho_field.shape[0]

    weights, states = np.linalg.eigh(0.5 * (rho_field + rho_field.conj().T))
    keep = weights > weight_cutoff
    weights = weights[keep]
    states = states[:, keep]  # columns are eigenvectors

    n_bar = float(np.sum(np.arange(nf) * np.diagonal(rho_field).real))
    pad = _padded_levels(spec, n_bar, nf)
    a = annihilation(FockCutoff(n_max=pad - 1))
    generator = 1j * (a.conj().T - a)  # Hermitian; exp(r(a'-a)) = exp(-i r generator)
    s, u = np.linalg.eigh(generator)
    parity = np.where(np.arange(pad) % 2 == 0, 1.0, -1.0)
    uh_support = u.conj().T[:, :nf]
    levels_src = np.arange(nf)

    x_axis, p_axis = spec.x, spec.p
    values = np.empty((x_axis.size, p_axis.size), dtype=float)
    for i, x in enumerate(x_axis):
        for j, p in enumerate(p_axis):
            beta = (x + 1j * p) / np.sqrt(2.0)
            r = abs(beta)
            theta = np.angle(beta) if r > 0 else 0.0
            # D(beta)^dag = R(theta) exp(-r(a'-a)) R(theta)^dag with
            # R(theta) = exp(i theta a'a). The outer rotation is a diagonal
            # phase and drops out of |.|^2, so only R^dag is applied.
            rotated = states * np.exp(-1j * theta * levels_src)[:, None] if theta else states
            displaced = u @ (np.exp(1j * r * s)[:, None] * (uh_support @ rotated))
            values[i, j] = float(
                np.sum(weights * (parity @ (np.abs(displaced) ** 2)))
            ) / np.pi

    grid = WignerGrid(spec=spec, values=values)
    if check_norm and abs(grid.integral - 1.0) > norm_tol:
        raise GridTooCoarse(
            f"grid integral {grid.integral:.4f} deviates from 1 by more than {norm_tol}"
        )
    return grid
