"""Command-line driver: one subcommand per verifiable claim.

Every run resolves a config (JSON file, then command-line flags on top),
executes one experiment, and emits a JSON report; series-producing
commands also export CSV. Identical config and seed give byte-identical
reports apart from the timestamp field. Exit status: 0 when the report
verdict is PASS, 1 on FAIL, 2 on invalid configuration.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from datetime import datetime, timezone

from . import __version__

_QUAD_KEYS = {"initial_grid", "max_grid", "tol"}
_COCYCLE_KEYS = {"base", "map", "alpha", "seed", "c", "matrix", "matrices", "x0"}
_LAW_KEYS = {"c_distribution", "c", "c_min", "c_max"}
_COMMON_KEYS = {"seed", "out", "format", "threads"}

# command -> (required fields, optional fields, defaults)
_SCHEMAS = {
    "verify-theorem1": ({"matrices"}, {"quadrature"}, {}),
    "verify-theorem2": ({"matrices"}, {"quadrature"}, {}),
    "avg-expansion": ({"matrices"}, {"quadrature"}, {}),
    "f-integral": (set(), {"b", "quadrature"}, {"b": [1.0, 1.5, 2.0, 10.0, 100.0]}),
    "measure-bound": ({"matrices", "a"}, {"grid"}, {"grid": 2 ** 14}),
    "fubini": ({"matrices"}, {"quadrature"}, {}),
    "centro-check": ({"matrices"}, set(), {}),
    "autoval-sample": (set(), {"samples"}, {"samples": 1000}),
    "lyapunov": ({"cocycle"}, {"n"}, {"n": 100000}),
    "herman-equality": ({"cocycle"}, {"n", "quadrature"}, {"n": 10000}),
    "bernoulli": (set(), {"n_max"}, {"n_max": 10000}),
    "spectral-growth": ({"cocycle"}, {"n_max"}, {"n_max": 10000}),
    "star-probe": (set(), {"n"}, {"n": 12}),
    "dedieu-shub": ({"law"}, {"samples", "n_steps"}, {"samples": 10000, "n_steps": 1000}),
}

# (initial_grid, max_grid, tol) and the verdict tolerance per quadrature command.
_QUAD_DEFAULTS = {
    "verify-theorem1": ((64, 2 ** 18, 1e-9), 1e-8),
    "verify-theorem2": ((64, 2 ** 18, 2e-7), 1e-6),
    "avg-expansion": ((64, 2 ** 14, 1e-10), 1e-8),
    "f-integral": ((64, 2 ** 18, 1e-10), 1e-8),
    "fubini": ((64, 2 ** 10, 1e-6), 1e-4),
    "herman-equality": ((64, 256, 1e-3), 0.02),
}


class ConfigError(ValueError):
    pass


def _jsonable(obj):
    import numpy as np

    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return _jsonable(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    return obj


def _check_keys(name: str, given: dict, allowed: set) -> None:
    unknown = sorted(set(given) - allowed)
    if unknown:
        raise ConfigError(f"unknown field(s) in {name}: {', '.join(unknown)}")


def _merge_config(command: str, file_cfg: dict, flag_cfg: dict) -> dict:
    required, optional, defaults = _SCHEMAS[command]
    allowed = required | optional | _COMMON_KEYS
    if "command" in file_cfg:
        if file_cfg["command"] != command:
            raise ConfigError(
                f"config file is for {file_cfg['command']!r}, not {command!r}"
            )
        file_cfg = {k: v for k, v in file_cfg.items() if k != "command"}
    _check_keys("config", file_cfg, allowed)
    _check_keys("flags", flag_cfg, allowed)

    cfg = {"seed": 0, "format": "json", **defaults}
    for layer in (file_cfg, flag_cfg):
        for key, value in layer.items():
            if isinstance(value, dict) and isinstance(cfg.get(key), dict):
                cfg[key] = {**cfg[key], **value}
            else:
                cfg[key] = value
    missing = sorted(k for k in required if k not in cfg)
    if missing:
        raise ConfigError(f"missing required field(s): {', '.join(missing)}")
    if cfg.get("format") not in ("json", "csv"):
        raise ConfigError("format must be 'json' or 'csv'")
    return cfg


def _quad_spec(command: str, cfg: dict):
    from .quadrature import QuadratureSpec

    (g0, gmax, tol), _check = _QUAD_DEFAULTS[command]
    q = dict(cfg.get("quadrature") or {})
    _check_keys("quadrature", q, _QUAD_KEYS)
    max_grid = int(q.get("max_grid", gmax))
    # convergence needs two confirmed doublings, so leave room below max
    spec = QuadratureSpec(
        initial_grid=int(q.get("initial_grid", min(g0, max(max_grid // 4, 16)))),
        max_grid=max_grid,
        tol=float(q.get("tol", tol)),
    )
    cfg["quadrature"] = {
        "initial_grid": spec.initial_grid,
        "max_grid": spec.max_grid,
        "tol": spec.tol,
    }
    return spec


def _matrices(cfg: dict, exactly: int | None = None) -> list:
    from .mat2 import check_sl2

    raw = cfg.get("matrices")
    if not isinstance(raw, (list, tuple)) or len(raw) == 0:
        raise ConfigError("matrices must be a non-empty list of 2x2 row-major arrays")
    if exactly is not None and len(raw) != exactly:
        raise ConfigError(f"this command takes exactly {exactly} matrix")
    try:
        return [check_sl2(m) for m in raw]
    except ValueError as exc:
        raise ConfigError(f"bad matrix: {exc}") from exc


def _build_cocycle(cfg: dict):
    from . import cocycles as cc

    raw = dict(cfg.get("cocycle") or {})
    _check_keys("cocycle", raw, _COCYCLE_KEYS)
    kind = raw.get("map")
    if kind not in ("herman", "bernoulli_hir", "constant", "table"):
        raise ConfigError("cocycle.map must be herman|bernoulli_hir|constant|table")
    seed = int(raw.get("seed", cfg.get("seed", 0)))
    base_kind = raw.get(
        "base", "circle_rotation" if kind in ("herman", "constant") else "bernoulli_shift"
    )
    if base_kind == "circle_rotation":
        base = cc.CircleRotation(float(raw.get("alpha", cc.GOLDEN_FRACTION)))
    elif base_kind == "bernoulli_shift":
        base = cc.BernoulliShift(seed)
    else:
        raise ConfigError("cocycle.base must be circle_rotation|bernoulli_shift")
    try:
        if kind == "herman":
            mp = cc.HermanMap(float(raw["c"]))
        elif kind == "bernoulli_hir":
            mp = cc.BernoulliHIRMap()
        elif kind == "constant":
            if "matrix" not in raw:
                raise ConfigError("constant map needs cocycle.matrix")
            mp = cc.ConstantMap(raw["matrix"])
        else:
            mats = raw.get("matrices")
            if not isinstance(mats, (list, tuple)) or len(mats) != 2:
                raise ConfigError("table map needs cocycle.matrices with 2 entries")
            mp = cc.TableMap(mats[0], mats[1])
        spec = cc.CocycleSpec(base, mp)
    except KeyError as exc:
        raise ConfigError(f"cocycle is missing field {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    x0 = raw.get("x0", cc.default_x0(spec))
    x0 = float(x0) if isinstance(base, cc.CircleRotation) else int(x0)
    cfg["cocycle"] = {
        "base": base_kind,
        "map": kind,
        "x0": x0,
        **({"alpha": base.alpha} if base_kind == "circle_rotation" else {"seed": seed}),
        **({"c": mp.c} if kind == "herman" else {}),
        **({"matrix": mp.matrix.tolist()} if kind == "constant" else {}),
        **(
            {"matrices": [mp.matrix0.tolist(), mp.matrix1.tolist()]}
            if kind == "table"
            else {}
        ),
    }
    return spec, x0


def _build_law(cfg: dict):
    from . import randprod as rp

    raw = dict(cfg.get("law") or {})
    _check_keys("law", raw, _LAW_KEYS)
    kind = raw.get("c_distribution")
    try:
        if kind == "constant":
            dist = rp.ConstantStretch(float(raw["c"]))
        elif kind == "log_uniform":
            dist = rp.LogUniformStretch(float(raw["c_min"]), float(raw["c_max"]))
        else:
            raise ConfigError("law.c_distribution must be constant|log_uniform")
        law = rp.LawSpec(dist, seed=int(cfg.get("seed", 0)))
    except KeyError as exc:
        raise ConfigError(f"law is missing field {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    cfg["law"] = {"c_distribution": kind, **{k: raw[k] for k in raw if k != "c_distribution"}}
    return law


def _formula_results(command: str, report) -> tuple[dict, bool]:
    _, check_tol = _QUAD_DEFAULTS[command]
    ok = report.abs_error <= check_tol and (
        report.quadrature is None or report.quadrature.converged
    )
    return (
        {
            "lhs": report.lhs,
            "rhs": report.rhs,
            "abs_error": report.abs_error,
            "check_tol": check_tol,
            "quadrature": report.quadrature,
        },
        ok,
    )


# ---------------------------------------------------------------------------
# command handlers: cfg -> (results dict, verdict bool, series or None)

def _integrand_series(f, grid_used: int):
    """(theta, integrand) samples for plotting, capped at 4096 rows."""
    import numpy as np

    from .quadrature import grid_values

    m = min(int(grid_used), 4096)
    thetas = 2.0 * np.pi * np.arange(m) / m
    rows = [[float(t), float(v)] for t, v in zip(thetas, grid_values(f, m))]
    return ["theta", "integrand"], rows


def _run_theorem(command: str, cfg: dict):
    import numpy as np

    from .formulas import rotated_chain, theorem1_check, theorem2_check
    from .mat2 import n_value, spectral_radius

    spec = _quad_spec(command, cfg)
    mats = _matrices(cfg)
    if command == "verify-theorem1":
        rep = theorem1_check(mats, spec)
        f = lambda th: n_value(rotated_chain(mats, th))
    else:
        rep = theorem2_check(mats, spec)
        f = lambda th: np.log(spectral_radius(rotated_chain(mats, th)))
    results, ok = _formula_results(command, rep)
    return results, ok, _integrand_series(f, rep.quadrature.grid_used)


def _run_avg_expansion(cfg: dict):
    import numpy as np

    from .formulas import avg_expansion_check

    spec = _quad_spec("avg-expansion", cfg)
    (mat,) = _matrices(cfg, exactly=1)
    rep = avg_expansion_check(mat, spec)
    results, ok = _formula_results("avg-expansion", rep)

    def f(th):
        c, s = np.cos(th), np.sin(th)
        x = mat[0, 0] * c + mat[0, 1] * s
        y = mat[1, 0] * c + mat[1, 1] * s
        return 0.5 * np.log(x * x + y * y)

    return results, ok, _integrand_series(f, rep.quadrature.grid_used)


def _run_f_integral(cfg: dict):
    from .formulas import f_integral_check

    spec = _quad_spec("f-integral", cfg)
    bs = cfg["b"]
    if isinstance(bs, (int, float)):
        bs = [bs]
    cfg["b"] = [float(b) for b in bs]
    _, check_tol = _QUAD_DEFAULTS["f-integral"]
    rows, ok = [], True
    for b in cfg["b"]:
        rep = f_integral_check(b, spec)
        ok = ok and rep.abs_error <= check_tol and rep.quadrature.converged
        rows.append(
            {"b": b, "lhs": rep.lhs, "rhs": rep.rhs, "abs_error": rep.abs_error,
             "grid_used": rep.quadrature.grid_used}
        )
    return {"cases": rows, "check_tol": check_tol}, ok, None


def _run_measure_bound(cfg: dict):
    from .formulas import measure_bound_check

    a = float(cfg["a"])
    grid = int(cfg["grid"])
    rep = measure_bound_check(_matrices(cfg), a, grid)
    results = {
        "a": rep.a,
        "nu_estimate": rep.nu_estimate,
        "lower_bound": rep.lower_bound,
        "grid": rep.grid,
        "satisfied": rep.satisfied,
    }
    return results, rep.satisfied, None


def _run_fubini(cfg: dict):
    from .formulas import fubini_check

    spec = _quad_spec("fubini", cfg)
    results, ok = _formula_results("fubini", fubini_check(_matrices(cfg), spec))
    return results, ok, None


def _run_centro(cfg: dict):
    from .complexify import centro_check

    small, large = centro_check(_matrices(cfg))
    ok = max(abs(small), abs(large)) <= 1e-8
    return (
        {"small_eigenvalue_abs": small, "large_eigenvalue_residual": large,
         "check_tol": 1e-8},
        ok,
        None,
    )


def _run_autoval(cfg: dict):
    from .complexify import sampled_separation

    rep = sampled_separation(int(cfg["samples"]), seed=int(cfg["seed"]))
    ok = rep.min_rel_separation > 1e-10
    return (
        {"min_rel_separation": rep.min_rel_separation, "samples": rep.samples,
         "worst_z": rep.worst_z, "check_tol": 1e-10},
        ok,
        None,
    )


def _run_lyapunov(cfg: dict):
    from .cocycles import lyapunov_estimate

    spec, x0 = _build_cocycle(cfg)
    rep = lyapunov_estimate(spec, x0, int(cfg["n"]))
    ok = rep.exponent >= -1e-6
    return (
        {"n": rep.n, "exponent": rep.exponent, "x0": rep.x0,
         "renorm_count": rep.renorm_count},
        ok,
        None,
    )


def _run_herman_equality(cfg: dict):
    from .cocycles import herman_equality_check

    spec_q = _quad_spec("herman-equality", cfg)
    spec, x0 = _build_cocycle(cfg)
    rep = herman_equality_check(spec, int(cfg["n"]), spec_q, x0=x0)
    results, ok = _formula_results("herman-equality", rep)
    return results, ok, None


def _growth_results(rep):
    import numpy as np

    bounded = bool(np.all(rep.inv_n_log_rho <= rep.inv_n_log_norm + 1e-9))
    results = {
        "n_max": rep.n_max,
        "running_max": rep.running_max,
        "rho_one_count": rep.rho_one_count,
        "final_inv_n_log_norm": float(rep.inv_n_log_norm[-1]),
        "rho_bounded_by_norm": bounded,
    }
    header = ["n", "inv_n_log_rho", "inv_n_log_norm", "rho_is_one"]
    rows = [
        [n, lr, ln, int(one)]
        for n, lr, ln, one in zip(
            range(1, rep.n_max + 1),
            rep.inv_n_log_rho,
            rep.inv_n_log_norm,
            rep.rho_is_one,
        )
    ]
    return results, bounded, (header, rows)


def _run_bernoulli(cfg: dict):
    from .cocycles import bernoulli_hir, spectral_growth

    rep = spectral_growth(bernoulli_hir(int(cfg["seed"])), 0, int(cfg["n_max"]))
    results, bounded, series = _growth_results(rep)
    return results, bounded and rep.rho_one_count > 0, series


def _run_spectral_growth(cfg: dict):
    from .cocycles import spectral_growth

    spec, x0 = _build_cocycle(cfg)
    rep = spectral_growth(spec, x0, int(cfg["n_max"]))
    return _growth_results(rep)


def _run_star_probe(cfg: dict):
    from .cocycles import star_identity_probe

    exact, reference = star_identity_probe(int(cfg["n"]))
    ok = exact < reference
    return (
        {"n": int(cfg["n"]), "exact_mean_log_rho_rate": exact,
         "exponent_reference": reference, "gap": reference - exact},
        ok,
        None,
    )


def _run_dedieu_shub(cfg: dict):
    from .randprod import dedieu_shub_check

    law = _build_law(cfg)
    rep = dedieu_shub_check(law, int(cfg["samples"]), int(cfg["n_steps"]))
    results = {
        "lambda_est": rep.lambda_est,
        "int_log_rho_est": rep.int_log_rho_est,
        "int_N_est": rep.int_N_est,
        "furstenberg_est": rep.furstenberg_est,
        "std_errors": rep.std_errors,
        "max_mutual_sigma": rep.max_mutual_sigma(),
        "n_steps": rep.n_steps,
        "samples": rep.samples,
    }
    return results, rep.consistent, None


_HANDLERS = {
    "verify-theorem1": lambda cfg: _run_theorem("verify-theorem1", cfg),
    "verify-theorem2": lambda cfg: _run_theorem("verify-theorem2", cfg),
    "avg-expansion": _run_avg_expansion,
    "f-integral": _run_f_integral,
    "measure-bound": _run_measure_bound,
    "fubini": _run_fubini,
    "centro-check": _run_centro,
    "autoval-sample": _run_autoval,
    "lyapunov": _run_lyapunov,
    "herman-equality": _run_herman_equality,
    "bernoulli": _run_bernoulli,
    "spectral-growth": _run_spectral_growth,
    "star-probe": _run_star_probe,
    "dedieu-shub": _run_dedieu_shub,
}


def run_experiment(command: str, cfg: dict) -> tuple[int, dict]:
    """Execute one resolved config; returns (exit_code, report)."""
    results, ok, series = _HANDLERS[command](cfg)
    report = {
        "command": command,
        "version": __version__,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "config": _jsonable(cfg),
        "results": _jsonable(results),
        "verdict": "PASS" if ok else "FAIL",
    }
    if series is not None:
        report["series_rows"] = len(series[1])
        report["_series"] = series  # stripped before serialization
    return (0 if ok else 1), report


def _format_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(
            ",".join(f"{v:.17g}" if isinstance(v, float) else str(v) for v in row)
        )
    return "\n".join(lines) + "\n"


def _emit(report: dict, cfg: dict) -> None:
    series = report.pop("_series", None)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    out = cfg.get("out")
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        if series is not None:
            root, ext = os.path.splitext(out)
            with open(root + ".csv", "w") as fh:
                fh.write(_format_csv(*series))
    elif cfg.get("format") == "csv" and series is not None:
        sys.stdout.write(_format_csv(*series))
    else:
        sys.stdout.write(text)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file; flags override it")
    p.add_argument("--seed", type=int, default=None, help="64-bit RNG seed")
    p.add_argument("--out", default=None, help="report path (JSON); series go to .csv")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.add_argument("--threads", type=int, default=None,
                   help="cap BLAS worker threads; never changes results")
    p.add_argument("--dry-run", action="store_true",
                   help="validate config and print the resolved plan")


def _add_quad(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", type=int, default=None, help="max quadrature grid (power of two)")
    p.add_argument("--tol", type=float, default=None, help="quadrature refinement tolerance")


def _add_matrices(p: argparse.ArgumentParser) -> None:
    p.add_argument("--matrices", default=None,
                   help="JSON list of 2x2 row-major matrices")


def _add_cocycle(p: argparse.ArgumentParser) -> None:
    p.add_argument("--base", choices=["circle_rotation", "bernoulli_shift"], default=None)
    p.add_argument("--map", choices=["herman", "bernoulli_hir", "constant", "table"],
                   default=None)
    p.add_argument("--alpha", type=float, default=None, help="rotation turn fraction")
    p.add_argument("--c", type=float, default=None, help="herman stretch parameter")
    p.add_argument("--x0", type=float, default=None, help="base point")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2lab",
        description="Average-expansion identities and Lyapunov experiments "
                    "for SL(2,R) products",
    )
    parser.add_argument("--version", action="version", version=f"sl2lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for cmd in ("verify-theorem1", "verify-theorem2", "avg-expansion", "fubini"):
        p = sub.add_parser(cmd)
        _add_common(p)
        _add_quad(p)
        _add_matrices(p)
    p = sub.add_parser("f-integral")
    _add_common(p)
    _add_quad(p)
    p.add_argument("--b", type=float, action="append", default=None,
                   help="stretch value; repeatable")
    p = sub.add_parser("measure-bound")
    _add_common(p)
    _add_matrices(p)
    p.add_argument("--a", type=float, default=None, help="expansion slack, > 0")
    p.add_argument("--grid", type=int, default=None, help="sampling grid size")
    p = sub.add_parser("centro-check")
    _add_common(p)
    _add_matrices(p)
    p = sub.add_parser("autoval-sample")
    _add_common(p)
    p.add_argument("--samples", type=int, default=None)
    for cmd in ("lyapunov", "herman-equality"):
        p = sub.add_parser(cmd)
        _add_common(p)
        _add_cocycle(p)
        p.add_argument("--n", type=int, default=None, help="orbit length")
        if cmd == "herman-equality":
            _add_quad(p)
        else:
            p.add_argument("--matrix", default=None, help="JSON 2x2 for the constant map")
    p = sub.add_parser("spectral-growth")
    _add_common(p)
    _add_cocycle(p)
    p.add_argument("--matrix", default=None, help="JSON 2x2 for the constant map")
    p.add_argument("--n-max", type=int, default=None)
    p = sub.add_parser("bernoulli")
    _add_common(p)
    p.add_argument("--n-max", type=int, default=None)
    p = sub.add_parser("star-probe")
    _add_common(p)
    p.add_argument("--n", type=int, default=None, help="horizon, at most 22")
    p = sub.add_parser("dedieu-shub")
    _add_common(p)
    p.add_argument("--law", choices=["constant", "log_uniform"], default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--c-min", type=float, default=None)
    p.add_argument("--c-max", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--n-steps", type=int, default=None)
    return parser


def _flags_to_config(command: str, args: argparse.Namespace) -> dict:
    """Collect only the flags the user actually set."""
    cfg: dict = {}
    plain = {
        "seed": "seed", "out": "out", "format": "format", "threads": "threads",
        "a": "a", "samples": "samples", "n": "n", "n_max": "n_max",
        "n_steps": "n_steps", "b": "b",
    }
    for attr, key in plain.items():
        value = getattr(args, attr, None)
        if value is not None:
            cfg[key] = value
    if getattr(args, "grid", None) is not None:
        if command == "measure-bound":
            cfg["grid"] = args.grid
        else:
            cfg.setdefault("quadrature", {})["max_grid"] = args.grid
    if getattr(args, "tol", None) is not None:
        cfg.setdefault("quadrature", {})["tol"] = args.tol
    if getattr(args, "matrices", None) is not None:
        try:
            cfg["matrices"] = json.loads(args.matrices)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--matrices is not valid JSON: {exc}") from exc
    if command == "dedieu-shub":
        law = {}
        if args.law is not None:
            law["c_distribution"] = args.law
        for attr in ("c", "c_min", "c_max"):
            if getattr(args, attr) is not None:
                law[attr] = getattr(args, attr)
        if law:
            cfg["law"] = law
    elif command in ("lyapunov", "herman-equality", "spectral-growth"):
        coc = {}
        for attr in ("base", "map", "alpha", "c", "x0"):
            if getattr(args, attr, None) is not None:
                coc[attr] = getattr(args, attr)
        if getattr(args, "matrix", None) is not None:
            try:
                coc["matrix"] = json.loads(args.matrix)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"--matrix is not valid JSON: {exc}") from exc
        if coc:
            cfg["cocycle"] = coc
    return cfg


def _load_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"config file {path}: invalid JSON at line {exc.lineno} column {exc.colno}"
        ) from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config file must hold a JSON object")
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads is not None and args.threads >= 1:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
            os.environ.setdefault(var, str(args.threads))
    try:
        file_cfg = _load_config_file(args.config) if args.config else {}
        flag_cfg = _flags_to_config(args.command, args)
        cfg = _merge_config(args.command, file_cfg, flag_cfg)
        if args.dry_run:
            plan = {
                "command": args.command,
                "version": __version__,
                "dry_run": True,
                "config": _jsonable(cfg),
            }
            sys.stdout.write(json.dumps(plan, indent=2, sort_keys=True) + "\n")
            return 0
        code, report = run_experiment(args.command, cfg)
    except (ConfigError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    _emit(report, cfg)
    return code


if __name__ == "__main__":
    sys.exit(main())
