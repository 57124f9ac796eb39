"""Declarative scenario configs, execution, and artifact serialization.

Config grammar: flat ``key = value`` lines, ``#`` comments, blank lines
ignored. Keys map one-to-one onto the physical ratios (lambda_over_omega,
gamma_over_omega, ...). The full grammar is documented in the README; every
produced artifact embeds the fully-resolved config between ``# config-begin``
and ``# config-end`` comment lines, and re-running from that header
reproduces the artifact byte for byte.

Artifacts are built in memory as (relative path, text) pairs so the same
runner backs both the HTTP service and direct library use; `write_artifacts`
puts them on disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import analysis, dynamics, models, observables
from .dynamics import IntegratorConfig, NoiseStream, TimeSeries
from .errors import ParseError, ValidationError
from .hilbert import FockCutoff, coherent_tail_weight
from .models import SystemParams
from .observables import GridSpec

MODES = ("rabi-analytic", "jc-analytic", "schrodinger", "master", "qsd", "qsd-ensemble")
ANALYTIC_MODES = ("rabi-analytic", "jc-analytic")
STOCHASTIC_MODES = ("qsd", "qsd-ensemble")

CONFIG_BEGIN = "# config-begin"
CONFIG_END = "# config-end"


@dataclass(frozen=True)
class OutputSpec:
    csv_name: str = "timeseries.csv"
    wigner_enabled: bool = False
    wigner_dir: str = "wigner"
    frame_stride: int = 50
    grid: GridSpec = GridSpec()
    analysis_enabled: bool = False


@dataclass(frozen=True)
class ScenarioConfig:
    mode: str
    params: SystemParams
    cutoff: FockCutoff
    integrator: IntegratorConfig
    seed: int = 1
    threads: int = 1
    n_traj: int = 1
    outputs: OutputSpec = OutputSpec()
    sweep: tuple[float, ...] | None = None
    explicit: frozenset[str] = frozenset()


@dataclass(frozen=True)
class Artifact:
    path: str
    content: str


@dataclass
class RunResult:
    artifacts: list[Artifact]
    report: analysis.FeatureReport | None = None
    regime: str | None = None


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _to_float(raw: str, line: int) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ParseError(f"line {line}: expected a number, got {raw!r}") from None


def _to_int(raw: str, line: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"line {line}: expected an integer, got {raw!r}") from None


def _to_complex(raw: str, line: int) -> complex:
    try:
        return complex(raw.replace(" ", ""))
    except ValueError:
        raise ParseError(f"line {line}: expected a real or complex number, got {raw!r}") from None


def _to_bool(raw: str, line: int) -> bool:
    lowered = raw.lower()
    if lowered in ("on", "true", "1", "yes"):
        return True
    if lowered in ("off", "false", "0", "no"):
        return False
    raise ParseError(f"line {line}: expected on/off, got {raw!r}")


def _to_float_list(raw: str, line: int) -> tuple[float, ...]:
    parts = [part.strip() for part in raw.split(",")]
    return tuple(_to_float(part, line) for part in parts if part != "")


_CONVERTERS = {
    "mode": lambda raw, line: raw,
    "omega0_over_omega": _to_float,
    "nu_over_omega": _to_float,
    "lambda_over_omega": _to_float,
    "gamma_over_omega": _to_float,
    "alpha": _to_complex,
    "n_max": _to_int,
    "leakage_tol": _to_float,
    "dt": _to_float,
    "t_end": _to_float,
    "sample_stride": _to_int,
    "scheme": lambda raw, line: raw,
    "n_traj": _to_int,
    "seed": _to_int,
    "threads": _to_int,
    "csv": lambda raw, line: raw,
    "analysis": _to_bool,
    "wigner": _to_bool,
    "wigner_dir": lambda raw, line: raw,
    "frame_stride": _to_int,
    "wigner_xmin": _to_float,
    "wigner_xmax": _to_float,
    "wigner_pmin": _to_float,
    "wigner_pmax": _to_float,
    "wigner_resolution": _to_int,
    "sweep_gamma": _to_float_list,
}


def _read_items(text: str) -> dict[str, object]:
    items: dict[str, object] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value', got {raw_line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _CONVERTERS:
            raise ParseError(f"line {lineno}: unknown key {key!r}")
        if key in items:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        items[key] = _CONVERTERS[key](value, lineno)
    return items


def _fail(key: str, message: str) -> ValidationError:
    return ValidationError(f"{key}: {message}")


def _default_dt(mode: str, scheme: str, p: SystemParams, cutoff: FockCutoff) -> float:
    """Timestep rule balancing accuracy against the spectral radius of H.

    Deterministic 4th-order steps tolerate |E| dt ~ 1, explicit diffusive
    steps need |E| dt ~ 0.1 to keep the per-step norm defect well under the
    1e-2 stability bound.
    """
    root = math.sqrt(cutoff.n_max + 1.0)
    dyn = max(p.omega0, p.omega, p.nu, 2.0 * p.lam * math.sqrt(p.n_bar + 1.0))
    if mode in ANALYTIC_MODES:
        return 0.02 / dyn
    e_bound = (0.5 * p.omega0 + p.omega * (cutoff.n_max + 1.0)
               + 2.0 * p.lam * root
               + 2.0 * p.gamma * abs(p.alpha) * root
               + 0.5 * p.gamma * (cutoff.n_max + 1.0))
    if scheme == "rk4":
        return min(0.05 / dyn, 1.0 / e_bound)
    candidates = [0.02 / dyn, 0.1 / e_bound]
    if p.gamma > 0:
        candidates.append(0.01 / (p.gamma * cutoff.n_max))
    return min(candidates)


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate config text, resolving every default.

    Syntax problems raise ParseError with the line number; inconsistent
    values raise ValidationError naming the offending key.
    """
    items = _read_items(text)
    return _build_config(items)


def _build_config(items: dict[str, object]) -> ScenarioConfig:
    explicit = frozenset(items)

    mode = items.get("mode")
    if mode is None:
        raise _fail("mode", "is required")
    if mode not in MODES:
        raise _fail("mode", f"must be one of {', '.join(MODES)}; got {mode!r}")

    omega0 = float(items.get("omega0_over_omega", 1.0))
    nu = float(items.get("nu_over_omega", 0.0))
    lam = float(items.get("lambda_over_omega", 0.0))
    gamma = float(items.get("gamma_over_omega", 0.0))
    alpha = complex(items.get("alpha", 0j))

    try:
        params = SystemParams(omega0=omega0, omega=1.0, nu=nu, lam=lam,
                              gamma=gamma, alpha=alpha)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None

    if nu != 0.0 and mode != "rabi-analytic":
        raise _fail("nu_over_omega", "the classical drive only applies to mode=rabi-analytic")
    if mode == "rabi-analytic" and nu <= 0.0:
        raise _fail("nu_over_omega", "mode=rabi-analytic needs a positive drive amplitude")
    if mode in ("rabi-analytic", "jc-analytic", "schrodinger") and gamma != 0.0:
        raise _fail("gamma_over_omega", f"mode={mode} is undamped; gamma must be 0")
    if mode == "jc-analytic" and params.delta != 0.0:
        raise _fail("omega0_over_omega", "mode=jc-analytic is resonant only (omega0 = omega)")
    if mode == "jc-analytic" and lam <= 0.0:
        raise _fail("lambda_over_omega", "mode=jc-analytic needs a positive coupling")
    if gamma > 0.0 and alpha.imag != 0.0:
        raise _fail("alpha", "the field drive is defined for real alpha")

    leakage_tol = float(items.get("leakage_tol", 1e-10))
    if not 0.0 < leakage_tol < 1.0:
        raise _fail("leakage_tol", "must lie in (0, 1)")
    if "n_max" in items:
        n_max = int(items["n_max"])
        if n_max < 1:
            raise _fail("n_max", "must be at least 1")
    else:
        n_max = max(1, math.ceil(params.n_bar + 10.0 * math.sqrt(params.n_bar)))
    cutoff = FockCutoff(n_max=n_max, leakage_tol=leakage_tol)
    if mode not in ANALYTIC_MODES:
        tail = coherent_tail_weight(alpha, n_max)
        if tail > leakage_tol:
            raise _fail("n_max", f"coherent state leaks {tail:.3e} above n_max = {n_max} "
                                 f"(tolerance {leakage_tol:.1e})")

    if "scheme" in items:
        scheme = str(items["scheme"])
        if scheme not in dynamics.SCHEMES:
            raise _fail("scheme", f"must be one of {', '.join(dynamics.SCHEMES)}")
    else:
        # heun: the plain explicit Ito step mis-amplifies high-Fock components
        # over long horizons, so the corrected drift is the safer default.
        scheme = "heun" if mode in STOCHASTIC_MODES else "rk4"
    if mode in ("schrodinger", "master") and scheme != "rk4":
        raise _fail("scheme", f"mode={mode} uses the deterministic rk4 scheme")
    if mode in STOCHASTIC_MODES and scheme == "rk4" and gamma != 0.0:
        raise _fail("scheme", "rk4 is deterministic; damped diffusive runs need "
                              "euler-maruyama or heun")

    if "t_end" in items:
        t_end = float(items["t_end"])
    elif lam > 0.0 and params.n_bar > 0.0:
        t_end = 1.25 * analysis.timescales(params).revival_time
    else:
        raise _fail("t_end", "is required when no revival time is defined "
                             "(needs lambda > 0 and alpha != 0)")
    if t_end <= 0:
        raise _fail("t_end", "must be positive")

    dt = float(items["dt"]) if "dt" in items else _default_dt(mode, scheme, params, cutoff)
    sample_stride = int(items.get("sample_stride", 10))
    try:
        integrator = IntegratorConfig(dt=dt, t_end=t_end,
                                      sample_stride=sample_stride, scheme=scheme)
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    guard_rate = max(params.omega0, params.omega, params.nu,
                     params.lam * math.sqrt(params.n_bar), params.gamma * cutoff.n_max)
    if dt * guard_rate > 0.1:
        raise _fail("dt", f"stability guard violated: dt * {guard_rate:g} > 0.1")

    if "n_traj" in items:
        if mode != "qsd-ensemble":
            raise _fail("n_traj", "only applies to mode=qsd-ensemble")
        n_traj = int(items["n_traj"])
        if n_traj < 1:
            raise _fail("n_traj", "must be at least 1")
    else:
        n_traj = 500 if mode == "qsd-ensemble" else 1

    seed = int(items.get("seed", 1))
    threads = int(items.get("threads", 1))
    if threads < 1:
        raise _fail("threads", "must be at least 1")

    analysis_enabled = bool(items.get("analysis", False))
    wigner_enabled = bool(items.get("wigner", False))
    if wigner_enabled and mode in ANALYTIC_MODES + ("qsd-ensemble",):
        raise _fail("wigner", f"phase-space frames are not available for mode={mode}")
    half = float(math.ceil(math.sqrt(2.0 * params.n_bar)) + 4)
    try:
        grid = GridSpec(
            x_min=float(items.get("wigner_xmin", -half)),
            x_max=float(items.get("wigner_xmax", half)),
            p_min=float(items.get("wigner_pmin", -half)),
            p_max=float(items.get("wigner_pmax", half)),
            resolution=int(items.get("wigner_resolution", 161)),
        )
    except ValueError as exc:
        raise ValidationError(f"wigner grid: {exc}") from None
    frame_stride = int(items.get("frame_stride", 50))
    if frame_stride < 1:
        raise _fail("frame_stride", "must be at least 1")
    csv_name = str(items.get("csv", "timeseries.csv"))
    wigner_dir = str(items.get("wigner_dir", "wigner"))
    for key, name in (("csv", csv_name), ("wigner_dir", wigner_dir)):
        parts = Path(name).parts
        if not name or Path(name).is_absolute() or ".." in parts:
            raise _fail(key, "must be a relative path inside the output directory")
    outputs = OutputSpec(
        csv_name=csv_name,
        wigner_enabled=wigner_enabled,
        wigner_dir=wigner_dir,
        frame_stride=frame_stride,
        grid=grid,
        analysis_enabled=analysis_enabled,
    )

    if analysis_enabled:
        if lam <= 0.0 or params.n_bar <= 0.0:
            raise _fail("analysis", "feature detection needs lambda > 0 and alpha != 0")
        if t_end < analysis.timescales(params).revival_time:
            raise _fail("analysis", "feature detection needs t_end to reach the revival "
                                    f"time {analysis.timescales(params).revival_time:g}")

    sweep = items.get("sweep_gamma")
    if sweep is not None:
        if len(sweep) == 0:
            raise _fail("sweep_gamma", "sweep list must not be empty")
        if mode not in ("master", "qsd", "qsd-ensemble"):
            raise _fail("sweep_gamma", f"sweeps require a damped mode, not {mode}")
        for g in sweep:
            if g < 0 or g >= 2.0 * params.omega:
                raise _fail("sweep_gamma", f"each value must lie in [0, 2*omega); got {g:g}")
        sweep = tuple(sweep)

    return ScenarioConfig(mode=mode, params=params, cutoff=cutoff,
                          integrator=integrator, seed=seed, threads=threads,
                          n_traj=n_traj, outputs=outputs, sweep=sweep,
                          explicit=explicit)


# ---------------------------------------------------------------------------
# Rendering / echo headers
# ---------------------------------------------------------------------------

def _fmt_float(value: float) -> str:
    return format(float(value), ".17g")


def _fmt_complex(value: complex) -> str:
    if value.imag == 0.0:
        return _fmt_float(value.real)
    return f"{value.real:.17g}{value.imag:+.17g}j"


def render_config(cfg: ScenarioConfig) -> str:
    """Canonical key = value text for the fully-resolved config."""
    p, out = cfg.params, cfg.outputs
    pairs: list[tuple[str, str]] = [
        ("mode", cfg.mode),
        ("omega0_over_omega", _fmt_float(p.omega0)),
        ("nu_over_omega", _fmt_float(p.nu)),
        ("lambda_over_omega", _fmt_float(p.lam)),
        ("gamma_over_omega", _fmt_float(p.gamma)),
        ("alpha", _fmt_complex(p.alpha)),
        ("n_max", str(cfg.cutoff.n_max)),
        ("leakage_tol", _fmt_float(cfg.cutoff.leakage_tol)),
        ("dt", _fmt_float(cfg.integrator.dt)),
        ("t_end", _fmt_float(cfg.integrator.t_end)),
        ("sample_stride", str(cfg.integrator.sample_stride)),
        ("scheme", cfg.integrator.scheme),
        ("seed", str(cfg.seed)),
        ("threads", str(cfg.threads)),
        ("csv", out.csv_name),
        ("analysis", "on" if out.analysis_enabled else "off"),
        ("wigner", "on" if out.wigner_enabled else "off"),
        ("wigner_dir", out.wigner_dir),
        ("frame_stride", str(out.frame_stride)),
        ("wigner_xmin", _fmt_float(out.grid.x_min)),
        ("wigner_xmax", _fmt_float(out.grid.x_max)),
        ("wigner_pmin", _fmt_float(out.grid.p_min)),
        ("wigner_pmax", _fmt_float(out.grid.p_max)),
        ("wigner_resolution", str(out.grid.resolution)),
    ]
    if cfg.mode == "qsd-ensemble":
        pairs.insert(12, ("n_traj", str(cfg.n_traj)))
    if cfg.sweep is not None:
        pairs.append(("sweep_gamma", ",".join(_fmt_float(g) for g in cfg.sweep)))
    return "\n".join(f"{key} = {value}" for key, value in pairs) + "\n"


def config_header(cfg: ScenarioConfig) -> str:
    body = "".join(f"# {line}\n" for line in render_config(cfg).splitlines())
    return f"{CONFIG_BEGIN}\n{body}{CONFIG_END}\n"


def extract_config(artifact_text: str) -> ScenarioConfig:
    """Recover the resolved config embedded in an artifact's comment header."""
    lines = artifact_text.splitlines()
    try:
        begin = lines.index(CONFIG_BEGIN)
        end = lines.index(CONFIG_END)
    except ValueError:
        raise ParseError("artifact carries no config header") from None
    body = "\n".join(line[2:] for line in lines[begin + 1:end])
    return parse_config(body)


def with_overrides(cfg: ScenarioConfig, seed: int | None = None,
                   threads: int | None = None) -> ScenarioConfig:
    updates: dict = {}
    if seed is not None:
        updates["seed"] = seed
    if threads is not None:
        if threads < 1:
            raise ValidationError("threads: must be at least 1")
        updates["threads"] = threads
    if not updates:
        return cfg
    explicit = frozenset(cfg.explicit | set(updates))
    return replace(cfg, explicit=explicit, **updates)


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------

def _analytic_series(cfg: ScenarioConfig) -> TimeSeries:
    times = np.arange(0, cfg.integrator.n_steps + 1,
                      cfg.integrator.sample_stride) * cfg.integrator.dt
    p = cfg.params
    if cfg.mode == "rabi-analytic":
        sigma_z = np.asarray(dynamics.analytic_rabi_inversion(times, p))
        entropy = np.zeros_like(times)
    else:
        sigma_z = np.asarray(dynamics.analytic_jc_inversion(times, p))
        entropy = np.full_like(times, float("nan"))
    photon = np.full_like(times, p.n_bar)
    return TimeSeries(times=times,
                      values={"sigma_z": sigma_z, "entropy_nats": entropy,
                              "photon_number": photon},
                      norm_error=np.zeros_like(times))


def _numeric_series(cfg: ScenarioConfig) -> TimeSeries:
    model = models.build_model(cfg.params, cfg.cutoff)
    psi0 = models.initial_state(cfg.params, cfg.cutoff)
    state_stride = cfg.outputs.frame_stride if cfg.outputs.wigner_enabled else None
    if cfg.mode == "master":
        return dynamics.run_master(psi0, cfg.integrator, model, state_stride=state_stride)
    if cfg.mode == "schrodinger":
        return dynamics.run_trajectory(psi0, cfg.integrator, model, state_stride=state_stride)
    if cfg.mode == "qsd":
        stream = NoiseStream(seed=cfg.seed, stream_id=0)
        return dynamics.run_trajectory(psi0, cfg.integrator, model, stream=stream,
                                       state_stride=state_stride)
    return dynamics.run_ensemble(psi0, cfg.integrator, model, n_traj=cfg.n_traj,
                                 base_seed=cfg.seed, threads=cfg.threads)


def _series_csv(cfg: ScenarioConfig, series: TimeSeries) -> str:
    header = config_header(cfg)
    columns = ["omega_t", "sigma_z", "entropy_nats", "photon_number", "norm_error"]
    arrays = [series.times, series.sigma_z, series.entropy,
              series.photon_number, series.norm_error]
    if series.stderr is not None:
        columns.append("sigma_z_stderr")
        arrays.append(series.stderr["sigma_z"])
    lines = [",".join(columns)]
    for row in zip(*arrays):
        lines.append(",".join(_fmt_float(v) for v in row))
    return header + "\n".join(lines) + "\n"


def _frame_text(cfg: ScenarioConfig, t: float, grid_values: np.ndarray) -> str:
    g = cfg.outputs.grid
    header = config_header(cfg)
    meta = (f"# time = {_fmt_float(t)}\n"
            f"# x_range = {_fmt_float(g.x_min)} {_fmt_float(g.x_max)}\n"
            f"# p_range = {_fmt_float(g.p_min)} {_fmt_float(g.p_max)}\n"
            f"# resolution = {g.resolution}\n")
    rows = "\n".join(" ".join(_fmt_float(v) for v in row) for row in grid_values)
    return header + meta + rows + "\n"


def _report_text(cfg: ScenarioConfig, report: analysis.FeatureReport, regime: str) -> str:
    scales = analysis.timescales(cfg.params)
    pairs: list[tuple[str, str]] = [
        ("regime", regime),
        ("rabi_period", _fmt_float(scales.rabi_period)),
        ("collapse_time", _fmt_float(scales.collapse_time)),
        ("revival_time", _fmt_float(scales.revival_time)),
        ("attractor_time", _fmt_float(scales.attractor_time)),
    ]
    for key, value in report.as_dict().items():
        if isinstance(value, bool):
            pairs.append((key, "true" if value else "false"))
        else:
            pairs.append((key, _fmt_float(value)))
    body = "\n".join(f"{key} = {value}" for key, value in pairs)
    return config_header(cfg) + body + "\n"


def run_scenario(cfg: ScenarioConfig) -> RunResult:
    """Execute one scenario and build its artifact set in memory."""
    if cfg.sweep is not None:
        raise ValidationError("sweep_gamma: use run_sweep for sweep configs")
    series = _analytic_series(cfg) if cfg.mode in ANALYTIC_MODES else _numeric_series(cfg)
    artifacts = [Artifact(cfg.outputs.csv_name, _series_csv(cfg, series))]

    if cfg.outputs.wigner_enabled and series.states is not None:
        stride = cfg.outputs.frame_stride
        for i, state in enumerate(series.states):
            t = float(series.times[i * stride])
            rho_field = observables.reduce_field(state)
            grid = observables.wigner(rho_field, cfg.outputs.grid, check_norm=False)
            artifacts.append(Artifact(f"{cfg.outputs.wigner_dir}/frame_{i:06d}.txt",
                                      _frame_text(cfg, t, grid.values)))

    report = None
    regime = None
    if cfg.outputs.analysis_enabled:
        scales = analysis.timescales(cfg.params)
        report = analysis.detect_features(series, scales)
        regime = analysis.classify_regime(cfg.params.gamma, cfg.params)
        artifacts.append(Artifact("features.txt", _report_text(cfg, report, regime)))

    return RunResult(artifacts=artifacts, report=report, regime=regime)


def run_sweep(cfg: ScenarioConfig) -> RunResult:
    """Run the scenario once per sweep damping value.

    Each value gets its own subdirectory with a full artifact set; failures
    are recorded in the summary and do not stop the sweep. The drive
    amplitude follows each gamma automatically through the drive term.
    """
    if cfg.sweep is None:
        raise ValidationError("sweep_gamma: run_sweep needs a sweep list")
    artifacts: list[Artifact] = []
    summary_rows = []
    for i, gamma in enumerate(cfg.sweep):
        subdir = f"gamma_{i:02d}_{gamma:.6g}"
        try:
            sub_cfg = _sweep_entry(cfg, gamma)
            result = run_scenario(sub_cfg)
        except Exception as exc:  # recorded per entry; the sweep continues
            summary_rows.append((gamma, f"error:{type(exc).__name__}", "", "", "", ""))
            continue
        for artifact in result.artifacts:
            artifacts.append(Artifact(f"{subdir}/{artifact.path}", artifact.content))
        flags = ("", "", "")
        if result.report is not None:
            flags = tuple("true" if flag else "false" for flag in
                          (result.report.collapse_complete,
                           result.report.revival_present,
                           result.report.entropy_dip_present))
        regime = result.regime or analysis.classify_regime(gamma, cfg.params)
        summary_rows.append((gamma, "ok", regime, *flags))

    lines = ["gamma_over_omega,status,regime,collapse_complete,revival_present,entropy_dip_present"]
    for gamma, status, regime, *flags in summary_rows:
        lines.append(",".join([_fmt_float(gamma), status, regime, *flags]))
    summary = config_header(cfg) + "\n".join(lines) + "\n"
    artifacts.append(Artifact("sweep_summary.csv", summary))
    return RunResult(artifacts=artifacts)


def _sweep_entry(cfg: ScenarioConfig, gamma: float) -> ScenarioConfig:
    items = {}
    for line in render_config(cfg).splitlines():
        key, _, value = line.partition(" = ")
        items[key] = value
    items["gamma_over_omega"] = _fmt_float(gamma)
    items.pop("sweep_gamma", None)
    if "dt" not in cfg.explicit:
        items.pop("dt", None)  # re-resolve the step for this damping value
    text = "\n".join(f"{k} = {v}" for k, v in items.items())
    return parse_config(text)


def run(cfg: ScenarioConfig) -> RunResult:
    return run_sweep(cfg) if cfg.sweep is not None else run_scenario(cfg)


def write_artifacts(result: RunResult, out_dir) -> list[str]:
    """Write every artifact below out_dir; returns the paths written."""
    base = Path(out_dir)
    written = []
    for artifact in result.artifacts:
        target = base / artifact.path
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(artifact.content, encoding="utf-8")
        written.append(str(target))
    return written
