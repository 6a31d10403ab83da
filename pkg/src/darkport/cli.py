"""Batch frontend: parse a JSON run configuration, dispatch to the scheme
simulators or the DIC imager, and emit deterministic CSV/JSON results.

Interface: ``darkport <command> --config <path> --out <dir> [--workers N]``
with commands weak-real, weak-imag, interferometry, compare, dic, sweep.
The config file also names its command; the two must agree. All quantities
in config and data files are SI base units (s, m, rad/s). Validation is
strict: unknown keys are errors, so typos in physics parameters cannot pass
silently. Exit codes: 0 success, 1 validation failure, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dic import dic_image, read_phase_profile, write_dic_image
from .errors import (
    DarkportError,
    DomainError,
    ParseError,
    ValidationError,
)
from .pointer import (
    DEFAULT_SAMPLES,
    DEFAULT_SPAN_SIGMAS,
    COVERAGE_SIGMAS,
    TimeGrid,
    dft_spectrum,
    envelope_to_csv,
    make_gaussian,
    postselect_envelope,
    spectrum_to_csv,
)
from .polarization import preset_imag_wv, preset_real_wv
from .schemes import (
    EPSILON_MAX,
    ErrorBudget,
    SchemeOutcome,
    compare_schemes,
    domega_from_dlambda,
    omega_from_wavelength,
    run_imag_wv_scheme,
    run_interferometry,
    run_real_wv_scheme,
)

COMMANDS = ("weak-real", "weak-imag", "interferometry", "compare", "dic", "sweep")
SWEEP_SCHEMES = ("weak-real", "weak-imag", "interferometry")

#: parameters that may be swept, per scheme
SWEEPABLE = {
    "weak-real": ("tau", "delta", "epsilon"),
    "weak-imag": ("tau", "phi", "epsilon"),
    "interferometry": ("tau", "epsilon"),
}

#: scheme parameters required when running (or sweeping) each scheme
SCHEME_PARAMS = {
    "weak-real": ("tau", "delta"),
    "weak-imag": ("tau", "phi"),
    "interferometry": ("tau",),
}


@dataclass(frozen=True)
class GridSpec:
    n_samples: int = DEFAULT_SAMPLES
    span_sigmas: float = DEFAULT_SPAN_SIGMAS

    def build(self, sigma: float) -> TimeGrid:
        return TimeGrid.for_pulse(
            sigma, n_samples=self.n_samples, span_sigmas=self.span_sigmas
        )


@dataclass(frozen=True)
class SweepSpec:
    scheme: str
    parameter: str
    start: float
    stop: float
    count: int
    scale: str  # "linear" | "log"

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class DicSpec:
    profile_csv: str
    shear: float
    analyzer_offset: float = 0.0


@dataclass(frozen=True)
class RunConfig:
    command: str
    budget: ErrorBudget | None = None
    tau: float | None = None
    delta: float | None = None
    phi: float | None = None
    grid: GridSpec | None = None
    sweep: SweepSpec | None = None
    dic: DicSpec | None = None


# ---------------------------------------------------------------------------
# validation helpers (all errors carry the offending field path)
# ---------------------------------------------------------------------------

def _require_dict(obj, path: str) -> dict:
    if not isinstance(obj, dict):
        raise ValidationError(path, f"expected an object, got {type(obj).__name__}")
    return obj


def _check_keys(obj: dict, path: str, required: tuple, optional: tuple = ()):
    prefix = path + "." if path else ""
    for key in obj:
        if key not in required and key not in optional:
            raise ValidationError(f"{prefix}{key}", "unknown key")
    for key in required:
        if key not in obj:
            raise ValidationError(f"{prefix}{key}", "missing required key")


def _number(obj: dict, path: str, key: str, *, positive=False, nonnegative=False):
    prefix = path + "." if path else ""
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{prefix}{key}", f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{prefix}{key}", "must be finite")
    if positive and value <= 0.0:
        raise ValidationError(f"{prefix}{key}", f"must be positive, got {value!r}")
    if nonnegative and value < 0.0:
        raise ValidationError(f"{prefix}{key}", f"must be >= 0, got {value!r}")
    return value


def _integer(obj: dict, path: str, key: str, *, minimum: int):
    prefix = path + "." if path else ""
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{prefix}{key}", f"expected an integer, got {value!r}")
    if value < minimum:
        raise ValidationError(f"{prefix}{key}", f"must be >= {minimum}, got {value}")
    return value


def _parse_budget(obj, path: str = "budget") -> ErrorBudget:
    obj = _require_dict(obj, path)
    _check_keys(
        obj,
        path,
        required=("epsilon", "delta_t", "sigma", "n_photons"),
        optional=("omega_carrier", "delta_omega", "lambda_carrier", "delta_lambda"),
    )
    epsilon = _number(obj, path, "epsilon", positive=True)
    if epsilon >= EPSILON_MAX:
        raise ValidationError(
            f"{path}.epsilon", f"must be < {EPSILON_MAX} (small-angle regime)"
        )
    delta_t = _number(obj, path, "delta_t", positive=True)
    sigma = _number(obj, path, "sigma", positive=True)
    n_photons = _number(obj, path, "n_photons", positive=True)

    if ("omega_carrier" in obj) == ("lambda_carrier" in obj):
        raise ValidationError(
            path, "give exactly one of omega_carrier or lambda_carrier"
        )
    if "omega_carrier" in obj:
        omega = _number(obj, path, "omega_carrier", positive=True)
    else:
        omega = omega_from_wavelength(_number(obj, path, "lambda_carrier", positive=True))

    if ("delta_omega" in obj) == ("delta_lambda" in obj):
        raise ValidationError(
            path, "give exactly one of delta_omega or delta_lambda"
        )
    if "delta_omega" in obj:
        domega = _number(obj, path, "delta_omega", positive=True)
    else:
        if "lambda_carrier" not in obj:
            raise ValidationError(
                f"{path}.delta_lambda", "requires lambda_carrier to convert"
            )
        lam = _number(obj, path, "lambda_carrier", positive=True)
        dlam = _number(obj, path, "delta_lambda", positive=True)
        if dlam >= lam:
            raise ValidationError(f"{path}.delta_lambda", "must be << lambda_carrier")
        domega = domega_from_dlambda(lam, dlam)

    return ErrorBudget(
        epsilon=epsilon,
        delta_t=delta_t,
        delta_omega=domega,
        omega_carrier=omega,
        sigma=sigma,
        n_photons=n_photons,
    )


def _parse_grid(obj, path: str = "grid") -> GridSpec:
    obj = _require_dict(obj, path)
    _check_keys(obj, path, required=(), optional=("n_samples", "span_sigmas"))
    n_samples = (
        _integer(obj, path, "n_samples", minimum=16)
        if "n_samples" in obj
        else DEFAULT_SAMPLES
    )
    span = (
        _number(obj, path, "span_sigmas", positive=True)
        if "span_sigmas" in obj
        else DEFAULT_SPAN_SIGMAS
    )
    if span < COVERAGE_SIGMAS:
        raise ValidationError(f"{path}.span_sigmas", f"must be >= {COVERAGE_SIGMAS}")
    return GridSpec(n_samples=n_samples, span_sigmas=span)


def _check_angle(value: float, path: str, *, include_half_pi: bool):
    limit = math.pi / 2
    ok = value != 0.0 and (abs(value) <= limit if include_half_pi else abs(value) < limit)
    if not ok:
        bound = "<=" if include_half_pi else "<"
        raise ValidationError(path, f"must satisfy 0 < |value| {bound} pi/2")


def _parse_sweep(obj, path: str = "sweep") -> SweepSpec:
    obj = _require_dict(obj, path)
    _check_keys(
        obj, path, required=("scheme", "parameter", "start", "stop", "count", "scale")
    )
    scheme = obj["scheme"]
    if scheme not in SWEEP_SCHEMES:
        raise ValidationError(f"{path}.scheme", f"must be one of {SWEEP_SCHEMES}")
    parameter = obj["parameter"]
    if parameter not in SWEEPABLE[scheme]:
        raise ValidationError(
            f"{path}.parameter",
            f"scheme {scheme!r} can sweep only {SWEEPABLE[scheme]}",
        )
    scale = obj["scale"]
    if scale not in ("linear", "log"):
        raise ValidationError(f"{path}.scale", "must be 'linear' or 'log'")
    count = _integer(obj, path, "count", minimum=2)
    start = _number(obj, path, "start")
    stop = _number(obj, path, "stop")
    if scale == "log" and (start <= 0.0 or stop <= 0.0):
        raise ValidationError(f"{path}.start", "log sweeps need positive endpoints")
    if parameter == "tau" and (start < 0.0 or stop < 0.0):
        raise ValidationError(f"{path}.start", "tau sweeps need nonnegative endpoints")
    if parameter == "epsilon":
        for key, val in (("start", start), ("stop", stop)):
            if not 0.0 < val < EPSILON_MAX:
                raise ValidationError(
                    f"{path}.{key}", f"epsilon sweeps must stay in (0, {EPSILON_MAX})"
                )
    if parameter in ("delta", "phi"):
        if start * stop <= 0.0:
            raise ValidationError(
                f"{path}.start", f"{parameter} sweep endpoints must share a sign"
            )
        _check_angle(start, f"{path}.start", include_half_pi=(parameter == "phi"))
        _check_angle(stop, f"{path}.stop", include_half_pi=(parameter == "phi"))
    return SweepSpec(
        scheme=scheme, parameter=parameter, start=start, stop=stop,
        count=count, scale=scale,
    )


def _parse_dic(obj, path: str = "dic") -> DicSpec:
    obj = _require_dict(obj, path)
    _check_keys(
        obj, path, required=("profile_csv", "shear"), optional=("analyzer_offset",)
    )
    profile_csv = obj["profile_csv"]
    if not isinstance(profile_csv, str) or not profile_csv:
        raise ValidationError(f"{path}.profile_csv", "expected a nonempty string path")
    shear = _number(obj, path, "shear")
    offset = (
        _number(obj, path, "analyzer_offset") if "analyzer_offset" in obj else 0.0
    )
    if abs(offset) >= 0.3:
        raise ValidationError(f"{path}.analyzer_offset", "must satisfy |offset| < 0.3")
    return DicSpec(profile_csv=profile_csv, shear=shear, analyzer_offset=offset)


def parse_config(text: str) -> RunConfig:
    """Parse and strictly validate a JSON run configuration."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    raw = _require_dict(raw, "")
    if "command" not in raw:
        raise ValidationError("command", "missing required key")
    command = raw["command"]
    if command not in COMMANDS:
        raise ValidationError("command", f"must be one of {COMMANDS}")

    if command == "dic":
        _check_keys(raw, "", required=("command", "dic"))
        return RunConfig(command=command, dic=_parse_dic(raw["dic"]))

    if command == "compare":
        _check_keys(raw, "", required=("command", "budget"), optional=("grid",))
        return RunConfig(
            command=command,
            budget=_parse_budget(raw["budget"]),
            grid=_parse_grid(raw["grid"]) if "grid" in raw else None,
        )

    if command == "sweep":
        _check_keys(
            raw,
            "",
            required=("command", "budget", "sweep"),
            optional=("tau", "delta", "phi", "grid"),
        )
        sweep = _parse_sweep(raw["sweep"])
        config = RunConfig(
            command=command,
            budget=_parse_budget(raw["budget"]),
            grid=_parse_grid(raw["grid"]) if "grid" in raw else None,
            sweep=sweep,
            tau=_number(raw, "", "tau", nonnegative=True) if "tau" in raw else None,
            delta=_number(raw, "", "delta") if "delta" in raw else None,
            phi=_number(raw, "", "phi") if "phi" in raw else None,
        )
        if sweep.parameter in raw:
            raise ValidationError(
                sweep.parameter, "parameter is swept; remove the fixed value"
            )
        for name in ("tau", "delta", "phi"):
            if getattr(config, name) is not None and name not in SCHEME_PARAMS[sweep.scheme]:
                raise ValidationError(
                    name, f"not a parameter of swept scheme {sweep.scheme!r}"
                )
        for name in SCHEME_PARAMS[sweep.scheme]:
            if name != sweep.parameter and getattr(config, name) is None:
                raise ValidationError(name, f"required by swept scheme {sweep.scheme!r}")
        if config.delta is not None:
            _check_angle(config.delta, "delta", include_half_pi=False)
        if config.phi is not None:
            _check_angle(config.phi, "phi", include_half_pi=True)
        return config

    # single scheme runs
    required = ("command", "budget") + SCHEME_PARAMS[command]
    optional = ("grid",) if command != "interferometry" else ()
    _check_keys(raw, "", required=required, optional=optional)
    tau = _number(raw, "", "tau", nonnegative=True)
    delta = phi = None
    if command == "weak-real":
        delta = _number(raw, "", "delta")
        _check_angle(delta, "delta", include_half_pi=False)
    if command == "weak-imag":
        phi = _number(raw, "", "phi")
        _check_angle(phi, "phi", include_half_pi=True)
    return RunConfig(
        command=command,
        budget=_parse_budget(raw["budget"]),
        tau=tau,
        delta=delta,
        phi=phi,
        grid=_parse_grid(raw["grid"]) if "grid" in raw else None,
    )


# ---------------------------------------------------------------------------
# execution
# ---------------------------------------------------------------------------

def _write_json(payload: dict, path: Path) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _grid_for(config: RunConfig, budget: ErrorBudget) -> TimeGrid | None:
    return config.grid.build(budget.sigma) if config.grid is not None else None


def _run_point(scheme: str, params: dict, budget: ErrorBudget, grid) -> SchemeOutcome:
    if scheme == "weak-real":
        return run_real_wv_scheme(params["tau"], params["delta"], budget, grid)
    if scheme == "weak-imag":
        return run_imag_wv_scheme(params["tau"], params["phi"], budget, grid)
    return run_interferometry(params["tau"], budget)


def _execute_scheme(config: RunConfig, out: Path) -> None:
    budget = config.budget
    grid = _grid_for(config, budget)
    params = {"tau": config.tau, "delta": config.delta, "phi": config.phi}
    outcome = _run_point(config.command, params, budget, grid)
    payload = {
        "command": config.command,
        "tau": config.tau,
        "outcome": outcome.to_json_dict(),
    }
    if config.command == "weak-real":
        payload["delta"] = config.delta
    if config.command == "weak-imag":
        payload["phi"] = config.phi
    _write_json(payload, out / "result.json")

    # plot-ready data: dark-port envelope or spectrum
    if config.command in ("weak-real", "weak-imag"):
        used_grid = grid if grid is not None else TimeGrid.for_pulse(budget.sigma)
        preset = preset_real_wv if config.command == "weak-real" else preset_imag_wv
        pre, post = preset(config.delta if config.command == "weak-real" else config.phi)
        dark = postselect_envelope(
            pre, post, make_gaussian(budget.sigma, used_grid), config.tau
        )
        if config.command == "weak-real":
            envelope_to_csv(dark, out / "envelope.csv")
        else:
            spectrum_to_csv(dft_spectrum(dark), out / "spectrum.csv")


def _execute_compare(config: RunConfig, out: Path) -> None:
    grid = _grid_for(config, config.budget)
    report = compare_schemes(config.budget, grid)
    _write_json({"command": "compare", "report": report.to_json_dict()},
                out / "result.json")
    with open(out / "report.txt", "w") as fh:
        fh.write(report.to_table())


def _execute_dic(config: RunConfig, out: Path, base_dir: Path) -> None:
    spec = config.dic
    profile_path = Path(spec.profile_csv)
    if not profile_path.is_absolute():
        profile_path = base_dir / profile_path
    profile = read_phase_profile(profile_path)
    image = dic_image(profile, spec.shear, spec.analyzer_offset)
    write_dic_image(image, out / "image.csv")
    _write_json(
        {
            "command": "dic",
            "n_pixels": int(len(image.intensity)),
            "n_valid": int(np.count_nonzero(image.valid)),
            "max_intensity": float(np.max(image.intensity)),
            "min_intensity": float(np.min(image.intensity)),
        },
        out / "result.json",
    )


def _execute_sweep(config: RunConfig, out: Path, workers: int) -> None:
    sweep = config.sweep
    budget = config.budget
    grid = _grid_for(config, budget)
    values = sweep.values()

    def point(value: float) -> SchemeOutcome:
        params = {"tau": config.tau, "delta": config.delta, "phi": config.phi}
        point_budget = budget
        if sweep.parameter == "epsilon":
            point_budget = budget.with_epsilon(float(value))
        else:
            params[sweep.parameter] = float(value)
        return _run_point(sweep.scheme, params, point_budget, grid)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(point, values))
    else:
        outcomes = [point(v) for v in values]

    with open(out / "sweep.csv", "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            [sweep.parameter, "observable_shift", "postselect_prob",
             "resolvable", "tau_min"]
        )
        for value, outcome in zip(values, outcomes):
            writer.writerow(
                [
                    repr(float(value)),
                    repr(float(outcome.observable_shift)),
                    repr(float(outcome.postselect_prob)),
                    int(outcome.resolvable),
                    repr(float(outcome.tau_min)),
                ]
            )
    _write_json(
        {
            "command": "sweep",
            "scheme": sweep.scheme,
            "parameter": sweep.parameter,
            "count": sweep.count,
            "scale": sweep.scale,
        },
        out / "result.json",
    )


def execute(
    config: RunConfig,
    out_dir: str | Path,
    workers: int = 1,
    base_dir: str | Path = ".",
) -> None:
    """Run a validated config, writing deterministic outputs into out_dir.

    Raises DarkportError subclasses on failure; the `main` wrapper maps them
    to exit codes.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if config.command == "compare":
        _execute_compare(config, out)
    elif config.command == "dic":
        _execute_dic(config, out, Path(base_dir))
    elif config.command == "sweep":
        _execute_sweep(config, out, workers)
    else:
        _execute_scheme(config, out)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="darkport",
        description="Simulate and compare weak-value and interferometric "
        "readout of small longitudinal phase delays.",
    )
    sub = parser.add_subparsers(dest="cli_command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--workers", type=int, default=1,
                       help="concurrent sweep points (default 1)")
    args = parser.parse_args(argv)

    try:
        try:
            text = Path(args.config).read_text()
        except OSError as exc:
            raise ValidationError("config", f"cannot read {args.config}: {exc}")
        config = parse_config(text)
        if config.command != args.cli_command:
            raise ValidationError(
                "command",
                f"config says {config.command!r} but CLI invoked {args.cli_command!r}",
            )
        if args.workers < 1:
            raise ValidationError("workers", "must be >= 1")
        execute(
            config,
            args.out,
            workers=args.workers,
            base_dir=Path(args.config).resolve().parent,
        )
    except (ParseError, ValidationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DarkportError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
