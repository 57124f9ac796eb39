"""Closed-form timescales, regime classification and feature detection.

The three characteristic times of the quantized-field problem, for a qubit
coupled with strength lam to a coherent field of mean photon number n_bar:

* Rabi period    pi / (lam sqrt(n_bar))
* collapse time  sqrt(2) / lam   (Gaussian envelope exp(-t^2/t_c^2))
* revival time   2 pi sqrt(n_bar) / lam

The qubit transiently disentangles from the field at half the revival time
(the attractor time).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import TimeSeries
from .errors import DegenerateCoupling, SeriesTooShort
from .models import SystemParams

CLASSICAL = "classical"
CROSSOVER = "crossover"
QUANTUM = "quantum"


@dataclass(frozen=True)
class Timescales:
    rabi_period: float
    collapse_time: float
    revival_time: float

    @property
    def attractor_time(self) -> float:
        return 0.5 * self.revival_time


def timescales(p: SystemParams) -> Timescales:
    if p.lam <= 0.0 or p.n_bar <= 0.0:
        raise DegenerateCoupling(
            f"timescales need lam > 0 and n_bar > 0 (got lam = {p.lam:g}, "
            f"n_bar = {p.n_bar:g})"
        )
    root_n = math.sqrt(p.n_bar)
    return Timescales(
        rabi_period=math.pi / (p.lam * root_n),
        collapse_time=math.sqrt(2.0) / p.lam,
        revival_time=2.0 * math.pi * root_n / p.lam,
    )


def collapse_envelope(t, p: SystemParams):
    """Gaussian decay envelope exp(-t^2 / t_c^2) of the early oscillations."""
    t = np.asarray(t, dtype=float)
    t_c = math.sqrt(2.0) / p.lam
    out = np.exp(-((t / t_c) ** 2))
    return out if out.ndim else float(out)


def classical_threshold(p: SystemParams) -> float:
    """Damping above which the field coherence time beats the Rabi period."""
    return p.lam * math.sqrt(p.n_bar) / math.pi


def quantum_threshold(p: SystemParams) -> float:
    """Damping below which the field coherence time exceeds the revival time."""
    return p.lam / (2.0 * math.pi * math.sqrt(p.n_bar))


def classify_regime(gamma: float, p: SystemParams, margin: float = 10.0) -> str:
    """Label the damping strength classical / crossover / quantum.

    The underlying conditions are asymptotic (gamma far above or far below
    the two thresholds); `margin` fixes how far "far" is. The labels are a
    reporting convention, monotone in gamma.
    """
    if gamma < 0:
        raise ValueError("gamma must be non-negative")
    if gamma <= quantum_threshold(p) / margin:
        return QUANTUM
    if gamma >= margin * classical_threshold(p):
        return CLASSICAL
    return CROSSOVER


@dataclass(frozen=True)
class FeatureThresholds:
    """Decision levels for the feature detector (see detect_features)."""

    collapse_max: float = 0.15
    revival_min: float = 0.25
    dip_fraction: float = 0.30


@dataclass(frozen=True)
class FeatureReport:
    collapse_complete: bool
    collapse_window_max: float
    revival_present: bool
    revival_peak: float
    revival_peak_time: float
    entropy_peak: float
    entropy_dip: float
    entropy_dip_time: float
    entropy_dip_present: bool

    def as_dict(self) -> dict:
        return {
            "collapse_complete": self.collapse_complete,
            "collapse_window_max": self.collapse_window_max,
            "revival_present": self.revival_present,
            "revival_peak": self.revival_peak,
            "revival_peak_time": self.revival_peak_time,
            "entropy_peak": self.entropy_peak,
            "entropy_dip": self.entropy_dip,
            "entropy_dip_time": self.entropy_dip_time,
            "entropy_dip_present": self.entropy_dip_present,
        }


def _window(times: np.ndarray, lo: float, hi: float) -> np.ndarray:
    mask = (times >= lo) & (times <= hi)
    if not np.any(mask):
        raise SeriesTooShort(f"no samples inside [{lo:g}, {hi:g}]")
    return mask


def detect_features(series: TimeSeries, scales: Timescales,
                    thresholds: FeatureThresholds = FeatureThresholds()) -> FeatureReport:
    """Quantify collapse, revival and the attractor-time entropy dip.

    * collapse complete: max |sigma_z| over [1.5 t_c, 0.7 t_r] below
      thresholds.collapse_max;
    * revival present: the collapse completed AND max |sigma_z| over
      [0.85 t_r, 1.15 t_r] (window clipped to the data) exceeds
      thresholds.revival_min -- oscillations that never died cannot revive,
      so a flat-line series reports neither collapse nor revival;
    * entropy dip: min entropy over [0.4 t_r, 0.6 t_r] below
      thresholds.dip_fraction times the series' entropy peak.

    The series must cover [0, t_r]; SeriesTooShort otherwise. Entropy checks
    are skipped (reported as NaN / False) when the entropy channel is absent
    or not finite, as for analytic-mode series.
    """
    times = series.times
    if times[-1] < scales.revival_time:
        raise SeriesTooShort(
            f"series ends at t = {times[-1]:g} but the revival is at "
            f"{scales.revival_time:g}"
        )
    sigma_z = np.abs(series.values["sigma_z"])

    collapse_mask = _window(times, 1.5 * scales.collapse_time, 0.7 * scales.revival_time)
    collapse_max = float(sigma_z[collapse_mask].max())

    hi = min(1.15 * scales.revival_time, float(times[-1]))
    revival_mask = _window(times, 0.85 * scales.revival_time, hi)
    revival_idx = np.flatnonzero(revival_mask)
    peak_at = revival_idx[np.argmax(sigma_z[revival_mask])]
    revival_peak = float(sigma_z[peak_at])
    revival_peak_time = float(times[peak_at])

    entropy = series.values.get("entropy_nats")
    if entropy is not None and np.all(np.isfinite(entropy)):
        entropy_peak = float(np.max(entropy))
        dip_mask = _window(times, 0.4 * scales.revival_time, 0.6 * scales.revival_time)
        dip_idx = np.flatnonzero(dip_mask)
        dip_at = dip_idx[np.argmin(entropy[dip_mask])]
        entropy_dip = float(entropy[dip_at])
        entropy_dip_time = float(times[dip_at])
        dip_present = entropy_dip < thresholds.dip_fraction * entropy_peak
    else:
        entropy_peak = float("nan")
        entropy_dip = float("nan")
        entropy_dip_time = float("nan")
        dip_present = False

    collapse_complete = collapse_max < thresholds.collapse_max
    return FeatureReport(
        collapse_complete=collapse_complete,
        collapse_window_max=collapse_max,
        revival_present=collapse_complete and revival_peak > thresholds.revival_min,
        revival_peak=revival_peak,
        revival_peak_time=revival_peak_time,
        entropy_peak=entropy_peak,
        entropy_dip=entropy_dip,
        entropy_dip_time=entropy_dip_time,
        entropy_dip_present=dip_present,
    )
