"""Command-line front end.

Subcommands: validate, disentangle, metric, spectrum, sweep, pdm, verify.
Flags may be preloaded from a line-oriented key=value config file
(--config FILE); explicit flags override file values.  Numeric output is
printed with 12 significant digits; sweep output is CSV with a fixed,
documented column order and is fully computed before anything is
emitted, so no partial CSV is produced on error.

Exit codes: 0 success (all residuals under tolerance), 1 residuals over
tolerance or a failed/inconclusive check, 2 invalid parameters or
inadmissible z, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .core import disentangle_closed_form
from .errors import (DecompositionSingular, InvalidParams, NoConvergence,
                     NotSymmetric, TrigRegime, TruncationTooSmall, ZOutOfDomain)
from .metric import (SwansonParams, is_admissible, solve_epsilon, solve_metric,
                     validate_params)
from .pdm import PdmConfig, run_pdm_check
from .realizations import from_descriptor
from .verification import build_bundle, spectrum_prediction

RESIDUAL_TOLS = {
    "r_herm": 1e-6,
    "r_eq10": 1e-7,
    "r_intertwine": 1e-6,
    "r_quasi": 1e-6,
    "r_commute": 1e-10,
}

SWEEP_COLUMNS = ["z", "epsilon", "mu", "nu", "mu_nu_product", "U", "V", "W",
                 "r_herm", "r_eq10", "r_intertwine", "r_quasi", "r_commute",
                 "e0", "e1", "e2", "e3", "e4"]

_EDGE = 1e-9


def _fmt(value) -> str:
    if isinstance(value, complex):
        if value.imag == 0.0:
            return f"{value.real:.12g}"
        return f"{value.real:.12g}{value.imag:+.12g}j"
    return f"{float(value):.12g}"


def _table(rows) -> str:
    width = max(len(name) for name, _ in rows)
    lines = []
    for name, value in rows:
        text = value if isinstance(value, str) else _fmt(value)
        lines.append(f"{name:<{width}}  {text}")
    return "\n".join(lines) + "\n"


def _emit(args, rows) -> None:
    if getattr(args, "output", "table") == "csv":
        lines = ["quantity,value"]
        for name, value in rows:
            text = value if isinstance(value, str) else _fmt(value)
            lines.append(f"{name},{text}")
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write(_table(rows))


def _params(args) -> SwansonParams:
    missing = [f"--{k}" for k in ("omega", "alpha", "beta")
               if getattr(args, k) is None]
    if missing:
        raise InvalidParams(f"missing required parameter(s): {', '.join(missing)}")
    return SwansonParams(args.omega, args.alpha, args.beta)


def _realization(args, p: SwansonParams):
    if args.size <= args.trusted:
        raise TruncationTooSmall(
            f"need size > trusted (got size = {args.size}, trusted = {args.trusted})")
    mats, override = from_descriptor(args.realization, args.size, omega=p.omega)
    return mats, (override if override is not None else p)


def cmd_validate(args) -> int:
    p = validate_params(_params(args))
    sys.stdout.write(
        f"parameters valid: omega = {_fmt(p.omega)}, alpha = {_fmt(p.alpha)}, "
        f"beta = {_fmt(p.beta)}, omega^2 - 4*alpha*beta = "
        f"{_fmt(p.omega ** 2 - 4 * p.alpha * p.beta)}\n")
    return 0


def cmd_disentangle(args) -> int:
    eta = complex(args.eta, args.eta_im)
    normal, anti = disentangle_closed_form(args.epsilon, eta)
    rows = [("epsilon", args.epsilon), ("eta", eta),
            ("p", normal.p), ("q", normal.q), ("r", normal.r),
            ("r_prime", anti.r), ("q_prime", anti.q), ("p_prime", anti.p)]
    _emit(args, rows)
    return 0


def cmd_metric(args) -> int:
    p = _params(args)
    z = args.z
    if abs(z) >= 1.0 - _EDGE:
        eps = solve_epsilon(p, z)
        rows = [("z", z), ("epsilon", eps), ("eta", z * eps / 2.0),
                ("theta", 0.0),
                ("note", "mu/nu and the power base degenerate at |z| = 1; "
                         "exponent coefficients only")]
        _emit(args, rows)
        return 0
    sol = solve_metric(p, z)
    rows = [("z", sol.z), ("epsilon", sol.epsilon), ("eta", sol.eta),
            ("theta", sol.theta), ("lambda", sol.lambda_base),
            ("mu", sol.mu), ("nu", sol.nu), ("mu_nu_product", sol.mu * sol.nu),
            ("U", sol.u), ("V", sol.v), ("W", sol.w)]
    _emit(args, rows)
    return 0


def cmd_spectrum(args) -> int:
    p = _params(args)
    vals = spectrum_prediction(p, args.k, args.count)
    rows = [(f"e{i}", v) for i, v in enumerate(vals)]
    _emit(args, rows)
    return 0


def _tolerances(args) -> dict[str, float]:
    tols = dict(RESIDUAL_TOLS)
    for key in RESIDUAL_TOLS:
        override = getattr(args, f"tol_{key[2:]}", None)
        if override is not None:
            tols[key] = override
    return tols


def cmd_verify(args) -> int:
    p = _params(args)
    mats, p = _realization(args, p)
    bundle = build_bundle(p, args.z, mats, trusted=args.trusted,
                          spectrum_count=5)
    tols = _tolerances(args)
    rows = [("realization", mats.kind), ("z", args.z),
            ("size", mats.dim), ("trusted", args.trusted)]
    ok = True
    for name in RESIDUAL_TOLS:
        value = bundle.residuals[name]
        passed = value <= tols[name]
        ok = ok and passed
        rows.append((name, f"{_fmt(value)}  [{'PASS' if passed else 'FAIL'} <= {tols[name]:g}]"))
    for i, v in enumerate(bundle.spectrum_h[:5]):
        rows.append((f"e{i}", v))
    _emit(args, rows)
    return 0 if ok else 1


def cmd_sweep(args) -> int:
    p = _params(args)
    mats, p = _realization(args, p)
    if args.steps < 1:
        raise InvalidParams(f"steps must be at least 1 (got {args.steps})")
    zs = np.sort(np.linspace(args.z_from, args.z_to, args.steps))
    for z in zs:
        if abs(z) >= 1.0 - _EDGE:
            raise ZOutOfDomain(f"sweep point z = {z:g} too close to |z| = 1")
        if not is_admissible(p, float(z)):
            raise ZOutOfDomain(f"sweep point z = {z:g} is not admissible")
    tols = _tolerances(args)
    lines = [",".join(SWEEP_COLUMNS)]
    ok = True
    for z in zs:
        z = float(z)
        sol = solve_metric(p, z)
        bundle = build_bundle(p, z, mats, trusted=args.trusted, spectrum_count=5)
        for name in RESIDUAL_TOLS:
            ok = ok and bundle.residuals[name] <= tols[name]
        values = [z, sol.epsilon, sol.mu, sol.nu, sol.mu * sol.nu,
                  sol.u, sol.v, sol.w]
        values += [bundle.residuals[name] for name in
                   ("r_herm", "r_eq10", "r_intertwine", "r_quasi", "r_commute")]
        values += list(bundle.spectrum_h[:5])
        lines.append(",".join(_fmt(v) for v in values))
    sys.stdout.write("\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_pdm(args) -> int:
    p = _params(args)
    cfg = PdmConfig(params=p, z=args.z, s=args.s, tau=args.tau,
                    x_min=args.x_min, x_max=args.x_max, points=args.points)
    report = run_pdm_check(cfg)
    rows = [("s", cfg.s), ("tau", cfg.tau), ("x_min", cfg.x_min),
            ("x_max", cfg.x_max), ("points", str(cfg.points)), ("z", cfg.z)]
    for i, (e, pred, err) in enumerate(zip(report.eigenvalues, report.predicted,
                                           report.rel_errors)):
        rows.append((f"e{i}", f"{_fmt(e)}  (predicted {_fmt(pred)}, "
                              f"rel_error {_fmt(err)})"))
    for pts in report.points_used:
        rows.append((f"refine_{pts}",
                     " ".join(_fmt(v) for v in report.refine_table[pts])))
    rows.append(("convergence", "ok" if report.convergence_ok else "not ok"))
    rows.append(("boundary_decay", report.boundary_decay))
    rows.append(("status", report.status))
    _emit(args, rows)
    return 0 if report.status == "PASS" else 1


def _add_param_flags(sp) -> None:
    sp.add_argument("--omega", type=float, default=None,
                    help="oscillator frequency (required)")
    sp.add_argument("--alpha", type=float, default=None,
                    help="lowering coupling (required)")
    sp.add_argument("--beta", type=float, default=None,
                    help="raising coupling (required)")


def _add_output_flag(sp) -> None:
    sp.add_argument("--output", choices=("table", "csv"), default="table",
                    help="report format (default table)")


def _add_matrix_flags(sp) -> None:
    sp.add_argument("--realization", default="discrete:k=0.25",
                    help="realization descriptor, e.g. discrete:k=0.25, "
                         "oscillator:parity=even, multiboson:l=2,residues=0.25,0.75, "
                         "radial:L=1, conformal:k=0.75,c=1 (a conformal "
                         "descriptor overrides alpha and beta)")
    sp.add_argument("--size", type=int, default=200,
                    help="basis truncation N (default 200)")
    sp.add_argument("--trusted", type=int, default=50,
                    help="trusted leading block T (default 50)")
    for key, default in RESIDUAL_TOLS.items():
        sp.add_argument(f"--tol-{key[2:]}", type=float, default=None,
                        help=f"tolerance for {key} (default {default:g})")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="su11metric",
        description="Metric operators, Hermitian equivalents, and commuting "
                    "observables for su(1,1) oscillator Hamiltonians.")
    ap.add_argument("--config", default=None, help=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check the parameter constraints")
    _add_param_flags(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("disentangle",
                        help="ordered factorizations of exp(2 eps K0 + 2 eta Km + 2 eta* Kp)")
    sp.add_argument("--epsilon", type=float, required=True)
    sp.add_argument("--eta", type=float, required=True, help="real part of eta")
    sp.add_argument("--eta-im", type=float, default=0.0, help="imaginary part of eta")
    _add_output_flag(sp)
    sp.set_defaults(func=cmd_disentangle)

    sp = sub.add_parser("metric", help="solve the metric family at one z")
    _add_param_flags(sp)
    sp.add_argument("--z", type=float, default=0.0)
    _add_output_flag(sp)
    sp.set_defaults(func=cmd_metric)

    sp = sub.add_parser("spectrum", help="closed-form spectrum of the Hermitian equivalent")
    _add_param_flags(sp)
    sp.add_argument("--k", type=float, default=0.25, help="lowest weight")
    sp.add_argument("--count", type=int, default=5)
    _add_output_flag(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("verify", help="build the operator bundle and check residuals")
    _add_param_flags(sp)
    sp.add_argument("--z", type=float, default=0.0)
    _add_matrix_flags(sp)
    _add_output_flag(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="CSV sweep over a z range")
    _add_param_flags(sp)
    sp.add_argument("--z-from", type=float, required=True)
    sp.add_argument("--z-to", type=float, required=True)
    sp.add_argument("--steps", type=int, required=True)
    _add_matrix_flags(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("pdm", help="position-dependent-mass spectral check")
    _add_param_flags(sp)
    sp.add_argument("--z", type=float, default=0.0)
    sp.add_argument("--s", type=float, default=0.5, help="mass exponent")
    sp.add_argument("--tau", type=float, default=3.0, help="integration constant")
    sp.add_argument("--x-min", type=float, default=-4.0)
    sp.add_argument("--x-max", type=float, default=14.0)
    sp.add_argument("--points", type=int, default=2000)
    _add_output_flag(sp)
    sp.set_defaults(func=cmd_pdm)

    return ap


def _apply_config(argv: list[str]) -> list[str]:
    """Splice config-file values in as flags ahead of the explicit ones."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise InvalidParams("--config needs a file path")
    path = argv[idx + 1]
    rest = argv[:idx] + argv[idx + 2:]
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise InvalidParams(f"cannot read config file {path!r}: {exc}") from exc
    flags: list[str] = []
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParams(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        flags += [f"--{key.strip().replace('_', '-')}", value.strip()]
    if not rest:
        return flags
    # insert after the subcommand so explicit flags take precedence
    return rest[:1] + flags + rest[1:]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _apply_config(argv)
        args = _build_parser().parse_args(argv)
    except (InvalidParams,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except (InvalidParams, ZOutOfDomain, TrigRegime, DecompositionSingular) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NoConvergence, TruncationTooSmall, NotSymmetric) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
