"""remezkit command line.

Each subcommand echoes its resolved configuration to stderr as one JSON
line; ``remezkit --from-config FILE`` replays such a line exactly.

Exit codes: 0 ok, 1 verification failed, 2 usage or parse error, 3 I/O
error, 4 solver failure, 5 comb-domain failure.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import closed_form, comb, oracle, regularity
from .arcset import ArcSet, measure
from .errors import (CombError, ConditioningError, DegenerateSetError, DomainError, RemezkitError,
                     SolverError)
from .polynomial import CirclePolynomial

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_SOLVER, EXIT_COMB = 0, 1, 2, 3, 4, 5
ANGLE_OPTIONS = ("s", "a", "c", "c0", "c1")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# small I/O helpers
# ---------------------------------------------------------------------------

def _fmt(x) -> str:
    return format(float(x), ".17g")


def _dump_json(obj, path=None):
    text = json.dumps(obj, indent=2) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_csv(header, rows, path=None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, (int, np.integer)) else _fmt(v) for v in row])
    if path in (None, "-"):
        sys.stdout.write(buf.getvalue())
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc})") from exc


def _load_set(path) -> ArcSet:
    return ArcSet.from_json(_read_json(path))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_constant(args):
    if args.kind == "interval":
        if args.a is None:
            raise UsageError("--kind interval needs -a")
        const = closed_form.remez_constant_interval(args.n, args.a)
        s_env = 2.0 * math.pi - 2.0 * args.a
    else:
        if args.s is None:
            raise UsageError(f"--kind {args.kind} needs -s")
        fn = closed_form.remez_constant_algebraic if args.kind == "algebraic" else closed_form.remez_constant_trig
        const = fn(args.n, args.s)
        s_env = args.s
    out = const.to_json()
    if 0.0 < s_env < 2.0 * math.pi:
        out["envelopes"] = closed_form.comparison_envelopes(args.n, s_env)
    _dump_json(out, args.output)
    return EXIT_OK


def cmd_extremal(args):
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    P = closed_form.extremal_coeffs(args.n, args.s, args.c0, args.c1)
    xs = 2.0 * math.pi * np.arange(args.samples) / args.samples
    v = P.on_circle(xs)
    _write_csv(["x", "re", "im", "abs"], zip(xs, v.real, v.imag, np.abs(v)), args.csv)
    if args.json:
        _dump_json(P.to_json(), args.json)
    return EXIT_OK


def cmd_oracle(args):
    E = _load_set(args.set)
    kw = dict(M=args.M, density=args.density, cut=args.cut)
    if args.gap is not None:
        res = oracle.solve_problem_c(args.n, E, args.gap, tol=args.tol, **kw)
        out = res.to_json()
        sol = res.solution
    else:
        if args.c is None:
            raise UsageError("give -c or --gap")
        sol = oracle.solve_problem_d(oracle.OracleProblem(args.n, E, args.c, tol=args.tol, **kw))
        out = sol.to_json()
    out["width"] = sol.upper - sol.lower
    _dump_json(out, args.output)
    return EXIT_OK


def cmd_verify(args):
    P = CirclePolynomial.from_json(_read_json(args.coeffs))
    rep = regularity.check_remez(P, args.kind, args.s)
    out = rep.to_json()
    out["equality"] = bool(abs(rep.sup_norm - rep.constant_used) <= 1e-8 * rep.constant_used)
    _dump_json(out, args.output)
    return EXIT_OK if rep.remez_ok else EXIT_FAIL


def cmd_sweep(args):
    if args.steps < 1:
        raise UsageError("--steps must be positive")
    if not args.n_min <= args.n_max:
        raise UsageError("--n-min must not exceed --n-max")
    svals = np.linspace(args.s_min, args.s_max, args.steps) if args.steps > 1 else np.array([args.s_min])
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        for s in svals:
            sharp = closed_form.remez_constant_trig(n, float(s))
            env = closed_form.comparison_envelopes(n, float(s))
            if args.log:
                vals = [sharp.log_value, env["log"]["asymptotic"], env["log"]["ganzburg"], env["log"]["large_gap"]]
            else:
                vals = [sharp.value, env["asymptotic"], env["ganzburg"], env["large_gap"]]
            rows.append([n, s] + vals)
    _write_csv(["n", "s", "sharp", "asymptotic", "ganzburg", "large_gap"], rows, args.output)
    return EXIT_OK


def _comb_input(args):
    if args.comb:
        C = comb.CombDomain.from_json(_read_json(args.comb), strict=False)
        return C, comb.solve_prevertices_from_comb(C)
    if args.set:
        if args.n is None:
            raise UsageError("--set needs -n")
        res = comb.solve_prevertices_from_set(args.n, _load_set(args.set))
        return res.comb, res.params
    raise UsageError("give --comb or --set")


def _deformed_json(d):
    return {"comb": d.comb.to_json(), "set": d.E.to_json(), "measure": d.measure}


def cmd_comb(args):
    C, params = _comb_input(args)
    if args.action == "map":
        if args.points:
            xs = np.array([float(t) for t in args.points.split(",")])
        else:
            xs = 2.0 * math.pi * np.arange(args.samples) / args.samples
        th = np.array([comb.theta_eval(params, float(x)) for x in xs])
        F = np.cos(0.5 * C.n * th)
        _write_csv(["z", "re_theta", "im_theta", "F"], zip(xs, th.real, th.imag, F.real), args.output)
    elif args.action == "extremal":
        if not C.is_regular():
            raise comb.NonRegularCombError(
                f"bases {[round(float(w), 12) for w in C.bases]} are not on the 2pi/{C.n} grid, so cos(n theta/2) is not "
                "the boundary trace of a polynomial; use `extend` for the n-regular extension")
        _dump_json(comb.extremal_from_comb(C, params).to_json(), args.output)
    elif args.action == "raise":
        _dump_json(_deformed_json(comb.raise_height(C, args.gap, args.height)), args.output)
    elif args.action == "delete":
        D = comb.delete_gap(C, args.gap)
        p = comb.solve_prevertices_from_comb(D)
        _dump_json({"comb": D.to_json(), "set": p.band_set().to_json(), "measure": p.band_measure()},
                   args.output)
    elif args.action == "equalize":
        if args.target is None:
            raise UsageError("equalize needs --target")
        eq = comb.equalize_measure(C, args.target, args.gap)
        _dump_json({"h_star": eq.h_star, "comb": eq.comb.to_json(), "set": eq.E_star.to_json(),
                    "measure": measure(eq.E_star)}, args.output)
    return EXIT_OK


def cmd_extend(args):
    E = _load_set(args.set)
    ext = regularity.n_regular_extension(args.n, E, args.gap, tol=args.tol)
    regular = regularity.same_set(ext.E_hat, E, 1e-5)
    _dump_json({"E_hat": ext.E_hat.to_json(), "regular": regular, "measure_E": measure(E),
                "measure_E_hat": measure(ext.E_hat), "F_poly": ext.F_poly.to_json()}, args.output)
    return EXIT_OK


COMMANDS = {
    "constant": cmd_constant, "extremal": cmd_extremal, "oracle": cmd_oracle, "verify": cmd_verify,
    "sweep": cmd_sweep, "comb": cmd_comb, "extend": cmd_extend,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="remezkit", description="Sharp Remez constants, extremal polynomials and comb maps.")
    p.add_argument("--from-config", metavar="FILE", help="replay a configuration echoed by an earlier run")
    p.add_argument("--degrees", action="store_true", help="read angle arguments in degrees")
    p.add_argument("--tol", type=float, default=None, help="solver tolerance (default: REMEZKIT_TOL or 1e-6)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quiet", action="store_true", help="do not echo the configuration")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    q = sub.add_parser("constant", help="sharp constant and comparison envelopes")
    q.add_argument("--kind", choices=["algebraic", "trig", "interval"], default="algebraic")
    q.add_argument("-n", type=int, required=True)
    q.add_argument("-s", type=float)
    q.add_argument("-a", type=float)
    q.add_argument("-o", "--output")

    q = sub.add_parser("extremal", help="sample the extremal polynomial")
    q.add_argument("-n", type=int, required=True)
    q.add_argument("-s", type=float, required=True)
    q.add_argument("--c0", type=float, default=0.0)
    q.add_argument("--c1", type=float, default=0.0)
    q.add_argument("--samples", type=int, default=256)
    q.add_argument("--csv", help="CSV output path (default stdout)")
    q.add_argument("--json", help="coefficient JSON output path")

    q = sub.add_parser("oracle", help="numerical extremal problem on a set")
    q.add_argument("-n", type=int, required=True)
    q.add_argument("--set", required=True, help="ArcSet JSON file")
    q.add_argument("-c", type=float)
    q.add_argument("--gap", type=int)
    q.add_argument("--M", type=int, default=64)
    q.add_argument("--density", type=float)
    q.add_argument("--cut", choices=["exact", "polygon"], default="exact")
    q.add_argument("-o", "--output")

    q = sub.add_parser("verify", help="check a polynomial against the sharp constant")
    q.add_argument("--coeffs", required=True, help="CirclePolynomial JSON file")
    q.add_argument("--kind", choices=["algebraic", "trig"], default="algebraic")
    q.add_argument("-s", type=float, help="declared gap length (default: read off {|P| <= 1})")
    q.add_argument("-o", "--output")

    q = sub.add_parser("sweep", help="constant and envelopes on an (n, s) grid")
    q.add_argument("--n-min", type=int, default=1)
    q.add_argument("--n-max", type=int, default=10)
    q.add_argument("--s-min", type=float, default=0.1)
    q.add_argument("--s-max", type=float, default=math.pi)
    q.add_argument("--steps", type=int, default=10)
    q.add_argument("--log", action="store_true", help="emit natural logarithms")
    q.add_argument("-o", "--output")

    q = sub.add_parser("comb", help="comb maps and their deformations")
    q.add_argument("action", choices=["map", "extremal", "raise", "delete", "equalize"])
    q.add_argument("--comb", help="CombDomain JSON file")
    q.add_argument("--set", help="ArcSet JSON file (with -n)")
    q.add_argument("-n", type=int)
    q.add_argument("--gap", type=int, default=0)
    q.add_argument("--height", type=float, default=0.0)
    q.add_argument("--target", type=float)
    q.add_argument("--points", help="comma-separated real angles for `map`")
    q.add_argument("--samples", type=int, default=64)
    q.add_argument("-o", "--output")

    q = sub.add_parser("extend", help="n-regular extension of a set")
    q.add_argument("-n", type=int, required=True)
    q.add_argument("--set", required=True)
    q.add_argument("--gap", type=int, default=0)
    q.add_argument("-o", "--output")
    return p


def _resolve(args):
    """Resolved configuration: every default filled in, every angle in radians."""
    cfg = vars(args).copy()
    cfg.pop("from_config", None)
    if cfg.get("tol") is None:
        cfg["tol"] = oracle.default_tol()
    if cfg["degrees"]:
        for key in ANGLE_OPTIONS:
            if cfg.get(key) is not None:
                cfg[key] = math.radians(cfg[key])
        if cfg.get("points"):
            cfg["points"] = ",".join(repr(math.radians(float(t))) for t in cfg["points"].split(","))
        cfg["degrees"] = False
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.from_config:
            cfg = _read_json(args.from_config)
            if not isinstance(cfg, dict) or cfg.get("command") not in COMMANDS:
                raise UsageError(f"{args.from_config}: not a remezkit configuration")
        else:
            if args.command is None:
                parser.print_help(sys.stderr)
                return EXIT_USAGE
            cfg = _resolve(args)
        if not cfg.get("quiet"):
            sys.stderr.write(json.dumps(cfg, sort_keys=True) + "\n")
        np.random.seed(cfg.get("seed", 0))
        ns = argparse.Namespace(**cfg)
        return COMMANDS[cfg["command"]](ns)
    except UsageError as exc:
        sys.stderr.write(f"remezkit: error: {exc}\n")
        return EXIT_USAGE
    except (DomainError, DegenerateSetError) as exc:
        sys.stderr.write(f"remezkit: invalid input: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"remezkit: I/O error: {exc}\n")
        return EXIT_IO
    except (SolverError, ConditioningError) as exc:
        sys.stderr.write(f"remezkit: solver failure: {exc}\n")
        return EXIT_SOLVER
    except CombError as exc:
        sys.stderr.write(f"remezkit: comb failure: {exc}\n")
        return EXIT_COMB
    except RemezkitError as exc:  # pragma: no cover - every subclass is routed above
        sys.stderr.write(f"remezkit: {exc}\n")
        return EXIT_SOLVER


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
