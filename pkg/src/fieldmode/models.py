"""Physical model builders: Hamiltonian terms and damping operators.

Everything is expressed in units hbar = 1 with frequencies measured in units
of the field frequency (set omega = 1 unless stated otherwise). Time is the
dimensionless omega*t used throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import hilbert
from .hilbert import FockCutoff


@dataclass(frozen=True)
class SystemParams:
    """All physical constants of the coupled qubit-field system.

    omega0 : qubit level splitting
    omega  : field frequency (the reference unit, normally 1)
    nu     : classical-drive amplitude on the qubit (classical-field model)
    lam    : qubit-field coupling
    gamma  : field decay constant
    alpha  : initial coherent amplitude of the field
    """

    omega0: float = 1.0
    omega: float = 1.0
    nu: float = 0.0
    lam: float = 0.0
    gamma: float = 0.0
    alpha: complex = 0j

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.gamma < 0 or self.lam < 0 or self.nu < 0:
            raise ValueError("gamma, lam and nu must be non-negative")
        if self.gamma >= 2.0 * self.omega:
            raise ValueError(
                "gamma must stay below 2*omega for the damped oscillator "
                "frequency sqrt(omega^2 - gamma^2/4) to be real"
            )

    @property
    def delta(self) -> float:
        """Detuning omega0 - omega."""
        return self.omega0 - self.omega

    @property
    def n_bar(self) -> float:
        """Mean photon number |alpha|^2 of the initial coherent state."""
        return abs(self.alpha) ** 2


def _require_real_alpha(p: SystemParams) -> float:
    if p.alpha.imag != 0.0:
        raise ValueError(
            "the field drive is defined for real alpha; got "
            f"alpha = {p.alpha}"
        )
    return p.alpha.real


def h_classical(t: float, p: SystemParams) -> np.ndarray:
    """Qubit in a classical field: (omega0/2) sz + nu cos(omega t) sx."""
    sz, sx, _, _ = hilbert.qubit_ops()
    return 0.5 * p.omega0 * sz + p.nu * math.cos(p.omega * t) * sx


def h_jc(p: SystemParams, cutoff: FockCutoff) -> np.ndarray:
    """Resonant-interaction qubit-field Hamiltonian on the full space.

    (omega0/2) sz + omega (a'a + 1/2) + lam (s+ a + s- a')
    """
    sz, _, sp, sm = hilbert.qubit_ops()
    a = hilbert.annihilation(cutoff)
    ad = a.conj().T
    field_free = p.omega * (ad @ a + 0.5 * np.eye(cutoff.field_dim))
    h = hilbert.embed_qubit(0.5 * p.omega0 * sz, cutoff).copy()
    h += hilbert.embed_field(field_free, cutoff)
    h += p.lam * (hilbert.tensor(sp, a) + hilbert.tensor(sm, ad))
    return h


def drive_quadrature(p: SystemParams, cutoff: FockCutoff) -> np.ndarray:
    """Time-independent factor of the field drive: gamma*alpha*(a + a')."""
    if p.gamma == 0.0:
        return np.zeros((cutoff.full_dim, cutoff.full_dim), dtype=complex)
    alpha = _require_real_alpha(p)
    a = hilbert.annihilation(cutoff)
    return hilbert.embed_field(p.gamma * alpha * (a + a.conj().T), cutoff).copy()


def h_drive(t: float, p: SystemParams, cutoff: FockCutoff) -> np.ndarray:
    """Field drive gamma*alpha*sin(omega t)*(a + a') compensating the damping.

    The single-quadrature harmonic drive of amplitude gamma*alpha whose phase
    locks the initially-real coherent amplitude onto the damped-driven steady
    orbit: together with the frequency-shift correction, the mean field then
    follows alpha*exp(-i omega t) exactly, with no transient. (A drive phased
    as cos(omega t) instead has its steady orbit at i*alpha, so a field
    started at real alpha would first slump by ~40% in photon number before
    settling.)
    """
    return math.sin(p.omega * t) * drive_quadrature(p, cutoff)


def h_shift(p: SystemParams, cutoff: FockCutoff) -> np.ndarray:
    """Frequency-shift correction (gamma i / 4)(a'^2 - a^2) for the damped mode."""
    if p.gamma == 0.0:
        return np.zeros((cutoff.full_dim, cutoff.full_dim), dtype=complex)
    a = hilbert.annihilation(cutoff)
    ad = a.conj().T
    return hilbert.embed_field(0.25j * p.gamma * (ad @ ad - a @ a), cutoff).copy()


def lindblad_ops(p: SystemParams, cutoff: FockCutoff) -> list[np.ndarray]:
    """Damping operators: [sqrt(gamma) a] on the full space, empty if gamma = 0."""
    if p.gamma == 0.0:
        return []
    a = hilbert.annihilation(cutoff)
    return [hilbert.embed_field(math.sqrt(p.gamma) * a, cutoff)]


def h_total(t: float, p: SystemParams, cutoff: FockCutoff) -> np.ndarray:
    """Full Hamiltonian h_jc + h_drive(t) + h_shift."""
    return h_jc(p, cutoff) + h_drive(t, p, cutoff) + h_shift(p, cutoff)


@dataclass(frozen=True)
class Model:
    """Prebuilt operator bundle consumed by the integrators.

    hamiltonian(t) = h_static + sin(omega t) * drive_mat, where h_static
    collects the time-independent terms (h_jc + h_shift).
    """

    params: SystemParams
    cutoff: FockCutoff
    h_static: np.ndarray
    drive_mat: np.ndarray
    lindblads: list[np.ndarray] = field(default_factory=list)
    lindblad_squares: list[np.ndarray] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.h_static.shape[0]

    @property
    def has_drive(self) -> bool:
        return bool(np.any(self.drive_mat))

    def hamiltonian(self, t: float) -> np.ndarray:
        if not self.has_drive:
            return self.h_static
        return self.h_static + math.sin(self.params.omega * t) * self.drive_mat


def build_model(p: SystemParams, cutoff: FockCutoff) -> Model:
    h_static = h_jc(p, cutoff) + h_shift(p, cutoff)
    drive = drive_quadrature(p, cutoff)
    ls = lindblad_ops(p, cutoff)
    for m in (h_static, drive, *ls):
        m.flags.writeable = False
    squares = []
    for l in ls:
        sq = l.conj().T @ l
        sq.flags.writeable = False
        squares.append(sq)
    return Model(params=p, cutoff=cutoff, h_static=h_static, drive_mat=drive,
                 lindblads=ls, lindblad_squares=squares)


def initial_state(p: SystemParams, cutoff: FockCutoff) -> np.ndarray:
    """The standard scenario start: qubit up, field in the coherent state alpha."""
    return hilbert.product_state(hilbert.qubit_up(),
                                 hilbert.coherent_state(p.alpha, cutoff))
