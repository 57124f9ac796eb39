"""Time evolution engines and closed-form oracles.

Three integration schemes are provided:

* ``rk4``: classical fixed-step 4th-order scheme for deterministic runs
  (pure-state evolution without damping, and the density-matrix equation).
* ``euler-maruyama``: explicit Ito step for diffusive trajectories.
* ``heun``: Euler-Maruyama noise with a trapezoidal corrector on the
  deterministic drift.

Trajectories own their state and noise stream exclusively, so ensembles can
run them concurrently; results are always reduced in stream-id order, which
makes ensemble output independent of the execution schedule.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import observables
from .errors import StabilityViolation, TailTooLarge
from .models import Model, SystemParams

SCHEMES = ("rk4", "euler-maruyama", "heun")


@dataclass(frozen=True)
class IntegratorConfig:
    """Fixed-step integration plan.

    dt and t_end are in units of 1/omega; every sample_stride-th step is
    recorded (step 0 included).
    """

    dt: float
    t_end: float
    sample_stride: int = 10
    scheme: str = "rk4"

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.t_end <= 0:
            raise ValueError("t_end must be positive")
        if self.sample_stride < 1:
            raise ValueError("sample_stride must be at least 1")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")

    @property
    def n_steps(self) -> int:
        return max(1, int(round(self.t_end / self.dt)))


def check_stability_guard(cfg: IntegratorConfig, model: Model) -> None:
    """dt * max(omega0, omega, nu, lam*sqrt(n_bar), gamma*n_max) must be <= 0.1."""
    p = model.params
    rate = max(p.omega0, p.omega, p.nu,
               p.lam * math.sqrt(p.n_bar), p.gamma * model.cutoff.n_max)
    if cfg.dt * rate > 0.1:
        raise ValueError(
            f"dt = {cfg.dt:g} violates the stability guard: dt * {rate:g} > 0.1"
        )


@dataclass
class NoiseStream:
    """Reproducible complex-noise source for one trajectory.

    Distinct (seed, stream_id) pairs give statistically independent
    sequences; equal pairs replay bit-identical sequences.
    """

    seed: int
    stream_id: int = 0
    _rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))
        self._rng = np.random.default_rng(seq)


def sample_noise(stream: NoiseStream, dt: float, m: int) -> np.ndarray:
    """Draw m complex increments with M(dxi) = M(dxi^2) = 0 and M(|dxi|^2) = dt."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    g = stream._rng.standard_normal((m, 2))
    return (g[:, 0] + 1j * g[:, 1]) * math.sqrt(0.5 * dt)


# ---------------------------------------------------------------------------
# Density-matrix evolution
# ---------------------------------------------------------------------------

def lindblad_rhs(rho: np.ndarray, t: float, model: Model) -> np.ndarray:
    h = model.hamiltonian(t)
    out = -1j * (h @ rho - rho @ h)
    for l, lsq in zip(model.lindblads, model.lindblad_squares):
        lr = l @ rho
        out += lr @ l.conj().T
        out -= 0.5 * (lsq @ rho + rho @ lsq)
    return out


def step_master(rho: np.ndarray, t: float, cfg: IntegratorConfig, model: Model) -> np.ndarray:
    """One RK4 step of the density-matrix equation, re-Hermitized on exit.

    Raises StabilityViolation if the trace moves by more than 1e-6 in the step.
    """
    dt = cfg.dt
    k1 = lindblad_rhs(rho, t, model)
    k2 = lindblad_rhs(rho + 0.5 * dt * k1, t + 0.5 * dt, model)
    k3 = lindblad_rhs(rho + 0.5 * dt * k2, t + 0.5 * dt, model)
    k4 = lindblad_rhs(rho + dt * k3, t + dt, model)
    out = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    out = 0.5 * (out + out.conj().T)
    drift = abs(np.trace(out).real - np.trace(rho).real)
    if drift > 1e-6:
        raise StabilityViolation(f"trace drifted by {drift:.3e} in one step at t = {t:g}")
    return out


# ---------------------------------------------------------------------------
# Pure-state evolution (deterministic and diffusive)
# ---------------------------------------------------------------------------

def _schrodinger_rhs(psi: np.ndarray, t: float, model: Model) -> np.ndarray:
    return -1j * (model.hamiltonian(t) @ psi)


def _qsd_drift(psi: np.ndarray, t: float, model: Model) -> np.ndarray:
    """Deterministic part of the diffusive pure-state step (Ito form)."""
    out = _schrodinger_rhs(psi, t, model)
    for l, lsq in zip(model.lindblads, model.lindblad_squares):
        lpsi = l @ psi
        expect_l = np.vdot(psi, lpsi)
        out += np.conj(expect_l) * lpsi
        out -= 0.5 * (lsq @ psi)
        out -= 0.5 * (np.conj(expect_l) * expect_l) * psi
    return out


def _qsd_noise(psi: np.ndarray, model: Model, dxi: np.ndarray) -> np.ndarray:
    out = np.zeros_like(psi)
    for l, inc in zip(model.lindblads, dxi):
        lpsi = l @ psi
        out += inc * (lpsi - np.vdot(psi, lpsi) * psi)
    return out


def step_qsd(psi: np.ndarray, t: float, cfg: IntegratorConfig, model: Model,
             stream: NoiseStream) -> tuple[np.ndarray, float]:
    """One diffusive step; returns the renormalized state and the
    pre-renormalization norm defect |norm - 1|.

    Raises StabilityViolation if the defect exceeds 1e-2.
    """
    dt = cfg.dt
    dxi = sample_noise(stream, dt, len(model.lindblads)) if model.lindblads else ()
    drift = _qsd_drift(psi, t, model)
    noise = _qsd_noise(psi, model, dxi) if model.lindblads else 0.0
    if cfg.scheme == "heun":
        predictor = psi + drift * dt + noise
        drift = 0.5 * (drift + _qsd_drift(predictor, t + dt, model))
    out = psi + drift * dt + noise
    norm = float(np.linalg.norm(out))
    defect = abs(norm - 1.0)
    if defect > 1e-2:
        raise StabilityViolation(
            f"pre-renormalization norm deviated by {defect:.3e} at t = {t:g}"
        )
    return out / norm, defect


def _step_rk4_state(psi: np.ndarray, t: float, dt: float, model: Model) -> tuple[np.ndarray, float]:
    k1 = _schrodinger_rhs(psi, t, model)
    k2 = _schrodinger_rhs(psi + 0.5 * dt * k1, t + 0.5 * dt, model)
    k3 = _schrodinger_rhs(psi + 0.5 * dt * k2, t + 0.5 * dt, model)
    k4 = _schrodinger_rhs(psi + dt * k3, t + dt, model)
    out = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    norm = float(np.linalg.norm(out))
    return out / norm, abs(norm - 1.0)


# ---------------------------------------------------------------------------
# Observables along a run
# ---------------------------------------------------------------------------

Observer = tuple[str, Callable[[np.ndarray], float]]


def standard_observers(model: Model) -> list[Observer]:
    """inversion, qubit entropy, photon number: the columns every run records."""
    cutoff = model.cutoff
    return [
        ("sigma_z", observables.inversion),
        ("entropy_nats", lambda s: observables.entropy_nats(observables.reduce_qubit(s))),
        ("photon_number", lambda s: observables.photon_number(s, cutoff)),
    ]


@dataclass
class TimeSeries:
    """Sampled observables against dimensionless time omega*t.

    ``values`` maps observer names to arrays aligned with ``times``; the
    ``norm_error`` channel records the worst pre-renormalization norm (or
    trace) defect seen since the previous sample. ``stderr`` is only present
    for ensemble means.
    """

    times: np.ndarray
    values: dict[str, np.ndarray]
    norm_error: np.ndarray
    stderr: dict[str, np.ndarray] | None = None
    states: list[np.ndarray] | None = None

    @property
    def sigma_z(self) -> np.ndarray:
        return self.values["sigma_z"]

    @property
    def entropy(self) -> np.ndarray:
        return self.values["entropy_nats"]

    @property
    def photon_number(self) -> np.ndarray:
        return self.values["photon_number"]


def _sample_times(cfg: IntegratorConfig) -> np.ndarray:
    ks = np.arange(0, cfg.n_steps + 1, cfg.sample_stride)
    return ks * cfg.dt


class _Recorder:
    """Collects observer values per sample; keeps every state_stride-th
    sampled state when state_stride is set (sample 0 included)."""

    def __init__(self, observers: list[Observer], state_stride: int | None):
        self.observers = observers
        self.records: dict[str, list[float]] = {name: [] for name, _ in observers}
        self.norm_errors: list[float] = []
        self.state_stride = state_stride
        self.states: list[np.ndarray] | None = [] if state_stride else None
        self._sample = 0

    def add(self, state: np.ndarray, defect: float) -> None:
        for name, fn in self.observers:
            self.records[name].append(fn(state))
        self.norm_errors.append(defect)
        if self.states is not None and self._sample % self.state_stride == 0:
            self.states.append(state.copy())
        self._sample += 1

    def series(self, times: np.ndarray) -> TimeSeries:
        return TimeSeries(
            times=times,
            values={name: np.asarray(vals) for name, vals in self.records.items()},
            norm_error=np.asarray(self.norm_errors),
            states=self.states,
        )


def run_trajectory(initial: np.ndarray, cfg: IntegratorConfig, model: Model,
                   stream: NoiseStream | None = None,
                   observers: list[Observer] | None = None,
                   state_stride: int | None = None) -> TimeSeries:
    """Fixed-step pure-state run recording observables every sample_stride steps.

    With scheme ``rk4`` the evolution is deterministic (requires an undamped
    model); the diffusive schemes need a NoiseStream whenever damping
    operators are present.
    """
    check_stability_guard(cfg, model)
    if observers is None:
        observers = standard_observers(model)
    deterministic = cfg.scheme == "rk4"
    if deterministic and model.lindblads:
        raise ValueError("the rk4 scheme is deterministic: use it only with gamma = 0")
    if not deterministic and model.lindblads and stream is None:
        raise ValueError("damped diffusive runs need a NoiseStream")
    if stream is None:
        stream = NoiseStream(seed=0)

    psi = np.array(initial, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    recorder = _Recorder(observers, state_stride)
    recorder.add(psi, 0.0)
    worst = 0.0
    try:
        for k in range(cfg.n_steps):
            t = k * cfg.dt
            if deterministic:
                psi, defect = _step_rk4_state(psi, t, cfg.dt, model)
            else:
                psi, defect = step_qsd(psi, t, cfg, model, stream)
            worst = max(worst, defect)
            if (k + 1) % cfg.sample_stride == 0:
                recorder.add(psi, worst)
                worst = 0.0
    except StabilityViolation as exc:
        raise StabilityViolation(f"stream {stream.stream_id}: {exc}") from exc

    return recorder.series(_sample_times(cfg))


def run_master(initial: np.ndarray, cfg: IntegratorConfig, model: Model,
               observers: list[Observer] | None = None,
               state_stride: int | None = None) -> TimeSeries:
    """Density-matrix run; a pure-state vector is promoted to a projector."""
    check_stability_guard(cfg, model)
    if observers is None:
        observers = standard_observers(model)
    initial = np.asarray(initial, dtype=complex)
    rho = np.outer(initial, initial.conj()) if initial.ndim == 1 else initial.copy()
    rho = rho / np.trace(rho).real

    recorder = _Recorder(observers, state_stride)
    recorder.add(rho, 0.0)
    worst = 0.0
    for k in range(cfg.n_steps):
        rho = step_master(rho, k * cfg.dt, cfg, model)
        worst = max(worst, abs(np.trace(rho).real - 1.0))
        if (k + 1) % cfg.sample_stride == 0:
            recorder.add(rho, worst)
            worst = 0.0

    return recorder.series(_sample_times(cfg))


def run_ensemble(initial: np.ndarray, cfg: IntegratorConfig, model: Model,
                 n_traj: int, base_seed: int,
                 observers: list[Observer] | None = None,
                 threads: int = 1) -> TimeSeries:
    """Mean over independent trajectories, with per-point standard errors.

    Trajectory i uses NoiseStream(base_seed, i). Trajectories may run on a
    thread pool; the reduction always walks stream ids in order, so the
    result is bit-identical for any thread count.
    """
    if n_traj < 1:
        raise ValueError("n_traj must be at least 1")
    if observers is None:
        observers = standard_observers(model)

    def one(i: int) -> TimeSeries:
        return run_trajectory(initial, cfg, model,
                              stream=NoiseStream(seed=base_seed, stream_id=i),
                              observers=observers)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            runs = list(pool.map(one, range(n_traj)))
    else:
        runs = [one(i) for i in range(n_traj)]

    names = [name for name, _ in observers]
    values, stderr = {}, {}
    for name in names:
        stacked = np.vstack([r.values[name] for r in runs])
        mean = stacked.mean(axis=0)
        values[name] = mean
        if n_traj > 1:
            spread = stacked.std(axis=0, ddof=1) / math.sqrt(n_traj)
        else:
            spread = np.zeros_like(mean)
        stderr[name] = spread
    norm_error = np.vstack([r.norm_error for r in runs]).mean(axis=0)
    return TimeSeries(times=runs[0].times, values=values,
                      norm_error=norm_error, stderr=stderr)


# ---------------------------------------------------------------------------
# Closed-form oracles
# ---------------------------------------------------------------------------

def analytic_rabi_inversion(t, p: SystemParams):
    """Inversion of a qubit starting up in a resonant or detuned classical field.

    Resonant: cos(nu t). Detuned: 1 - (nu^2/Omega^2)(1 - cos(Omega t)) with
    Omega = sqrt(delta^2 + nu^2).
    """
    t = np.asarray(t, dtype=float)
    if p.delta == 0.0:
        out = np.cos(p.nu * t)
    else:
        omega_r = math.hypot(p.delta, p.nu)
        ratio = (p.nu / omega_r) ** 2 if omega_r > 0 else 0.0
        out = 1.0 - ratio * (1.0 - np.cos(omega_r * t))
    return out if out.ndim else float(out)


def analytic_jc_inversion(t, p: SystemParams, n_terms: int | None = None,
                          tail_bound: float = 1e-10):
    """Resonant quantized-field inversion for a qubit starting up against
    a coherent field: sum_n P(n) cos(2 lam sqrt(n+1) t), P Poissonian.

    The Poisson tail beyond n_terms must fall below tail_bound, otherwise
    TailTooLarge is raised. With n_terms omitted, the sum is extended
    automatically until the tail bound is met.
    """
    if p.delta != 0.0:
        raise ValueError("the quantized-field inversion oracle is resonant only (delta = 0)")
    n_bar = p.n_bar
    t = np.asarray(t, dtype=float)
    if n_bar == 0.0:
        out = np.cos(2.0 * p.lam * t)
        return out if out.ndim else float(out)

    if n_terms is None:
        n_terms = max(32, math.ceil(n_bar + 12.0 * math.sqrt(n_bar)))
        while _poisson_tail(n_bar, n_terms) > tail_bound:
            n_terms *= 2
    tail = _poisson_tail(n_bar, n_terms)
    if tail > tail_bound:
        raise TailTooLarge(
            f"Poisson tail {tail:.3e} beyond n_terms = {n_terms} exceeds {tail_bound:.1e}"
        )
    weight = math.exp(-n_bar)
    out = np.zeros_like(t)
    for n in range(n_terms + 1):
        out += weight * np.cos(2.0 * p.lam * math.sqrt(n + 1.0) * t)
        weight *= n_bar / (n + 1)
    return out if out.ndim else float(out)


def _poisson_tail(n_bar: float, n_top: int) -> float:
    term = math.exp(-n_bar)
    total = term
    for n in range(1, n_top + 1):
        term *= n_bar / n
        total += term
    return max(0.0, 1.0 - total)
