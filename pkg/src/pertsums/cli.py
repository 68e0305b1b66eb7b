"""Command-line front end: ``pertsums {sum,verify,oscillator,kernel,laplace}``.

Exit codes: 0 success, 1 verification failure, 2 domain error,
3 convergence failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Iterable, Sequence

from . import closedform as cf
from . import laplace as lp
from . import oracle as orc
from . import oscillator as osc
from .errors import ConvergenceError, DomainError
from .registry import REGISTRY, SweepReport, run_sweep

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_USAGE = 0, 1, 2, 3, 64
CONFLUENT_MAX_N = 4_000_000

GENERATOR = "random.Random (Mersenne Twister)"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# output


def _fmt(v: Any, digits: int) -> str:
    if isinstance(v, bool) or v is None:
        return str(v).lower() if v is not None else ""
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, f".{digits}g")
    return str(v)


def _json_value(v: Any) -> str:
    if isinstance(v, float):
        if math.isnan(v):
            return "NaN"
        if math.isinf(v):
            return "Infinity" if v > 0 else "-Infinity"
        return format(v, ".17g")
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    return json.dumps(v)


def _json_line(row: dict) -> str:
    return "{" + ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in row.items()) + "}"


class Emitter:
    """Writes rows of named fields as text, CSV or JSON lines."""

    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out if out is not None else sys.stdout

    def comment(self, text: str) -> None:
        # header lines only make sense for text output
        if self.fmt == "text":
            self.out.write(f"# {text}\n")

    def record(self, row: dict) -> None:
        """A single result, printed as aligned ``key  value`` lines in text mode."""
        if self.fmt == "text":
            width = max(len(k) for k in row)
            for k, v in row.items():
                self.out.write(f"{k:<{width}}  {_fmt(v, 10)}\n")
        else:
            self.table(list(row), [list(row.values())])

    def table(self, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
        rows = list(rows)
        if self.fmt == "json":
            for r in rows:
                self.out.write(_json_line(dict(zip(columns, r))) + "\n")
        elif self.fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(columns)
            for r in rows:
                w.writerow([_fmt(v, 17) for v in r])
            self.out.write(buf.getvalue())
        else:
            cells = [[_fmt(v, 10) for v in r] for r in rows]
            widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
            self.out.write("  ".join(c.rjust(w) for c, w in zip(columns, widths)).rstrip() + "\n")
            for r in cells:
                self.out.write("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")


# ---------------------------------------------------------------------------
# commands


def _closed_sum(alpha: float, b: float | None, gamma: float, y: float) -> float:
    if alpha != math.floor(alpha):
        raise DomainError(f"no closed form for non-integer alpha={alpha:g}; use --method oracle or integral")
    k = int(alpha)
    if b is None:
        if k == 1:
            return cf.sum_half_confluent(gamma, y)
        if k == 2:
            return cf.toscano(gamma, y)
        if k % 2:
            return cf.sum_odd_confluent((k - 1) // 2, gamma, y)
        return cf.sum_even_confluent(k // 2 - 2, gamma, y)
    if k == 1:
        return cf.sum_half(b, gamma, y)
    if k == 2:
        return cf.sum_alpha2(b, gamma, y)
    if k % 2:
        return cf.sum_odd((k - 1) // 2, b, gamma, y)
    return cf.sum_even(k // 2 - 2, b, gamma, y)


def cmd_sum(args, em: Emitter) -> int:
    p = orc.SeriesParams(args.alpha, args.b, args.gamma, args.y)
    p.validate()
    kind = "confluent" if p.is_confluent else "gauss"
    if args.method == "closed":
        value = _closed_sum(args.alpha, args.b, args.gamma, args.y)
        # closed forms are limited by rounding only
        err, terms = 64.0 * math.ulp(value), 0
    else:
        tol = args.tolerance
        if args.method == "oracle":
            if p.is_confluent:
                # algebraic decay, so the direct series needs a far larger budget
                res = orc.series_confluent(args.alpha, args.gamma, args.y, tolerance=tol or 1e-9,
                                           max_n=args.max_terms or CONFLUENT_MAX_N)
            else:
                res = orc.series_gauss(p, tolerance=tol or 1e-12, max_n=args.max_terms or orc.DEFAULT_MAX_N)
        elif p.is_confluent:
            res = orc.series_confluent_abel(args.alpha, args.gamma, args.y, tolerance=tol or 1e-12)
        else:
            res = orc.integral_representation(p, tolerance=tol or 1e-12)
        value, err, terms = res.value, res.abs_error_estimate, res.terms_used
    em.record({"series": kind, "method": args.method, "value": value, "abs_error_estimate": err,
               "terms_used": terms})
    return EXIT_OK


def _report_row(r: SweepReport) -> list:
    point = ";".join(f"{k}={_fmt(v, 17)}" for k, v in r.worst_point)
    return [r.identity, r.samples, r.max_rel_error, r.tolerance, r.passed, r.seed, point]


def cmd_verify(args, em: Emitter) -> int:
    ids = list(REGISTRY) if args.identity == "all" else [args.identity]
    seed = 0 if args.seed is None else args.seed
    samples = 20 if args.samples is None else args.samples
    if samples < 1:
        raise UsageError("--samples must be positive")
    em.comment(f"seed {seed}  generator {GENERATOR}  samples {samples}")
    reports = [run_sweep(REGISTRY[i], samples, seed, args.tolerance) for i in ids]
    cols = ["identity", "samples", "max_rel_error", "tolerance", "passed", "seed", "worst_point"]
    em.table(cols, [_report_row(r) for r in reports])
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _gamma_arg(args) -> float:
    if (args.A is None) == (args.gamma is None):
        raise UsageError("give exactly one of --A and --gamma")
    if args.gamma is not None:
        return args.gamma
    return osc.gamma_from_A(args.A)


def _grid(spec: str) -> list[float]:
    try:
        lo, hi, step = (float(t) for t in spec.split(":"))
    except ValueError:
        raise UsageError(f"bad --x-grid {spec!r}, expected start:stop:step") from None
    if not (step > 0.0 and hi >= lo):
        raise UsageError("--x-grid needs step > 0 and stop >= start")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def _signed(c: float) -> str:
    return ("− " if c < 0 else "+ ") + _fmt(abs(c), 10)


def cmd_oscillator(args, em: Emitter) -> int:
    g = _gamma_arg(args)
    lam = args.lam
    if args.task == "energy":
        e = osc.energy_expansion(args.alpha, g, tolerance=args.tolerance or 1e-9)
        row = {"alpha": args.alpha, "gamma": g, "e0": e.e0, "c1": e.c1, "c2": e.c2, "c2_error": e.c2_error,
               "alpha_limit": e.validity}
        if lam is not None:
            row.update({"lambda": lam, "energy": e.energy(lam)})
        if em.fmt == "text":
            em.out.write(f"E0(λ) = {_fmt(e.e0, 10)} {_signed(e.c1)} λ {_signed(e.c2)} λ²\n")
        em.record(row)
    elif args.task == "matrix":
        if args.N is None:
            raise UsageError("matrix needs --N")
        H = osc.hamiltonian_matrix(args.N, args.alpha, g, lam or 0.0)
        em.table([f"c{j}" for j in range(args.N)], [[float(v) for v in r] for r in H])
    elif args.task == "correction":
        xs = _grid(args.x_grid or "0.1:3:0.1")
        if xs[0] <= 0.0:
            raise DomainError("the correction grid must start at x > 0")
        rows = [[x, osc.basis_psi(0, g, x), osc.psi1_correction(args.alpha, g, x)] for x in xs]
        em.table(["x", "psi0", "psi1"], rows)
    else:
        n_max = args.N or 20
        if n_max < 1:
            raise UsageError("--N must be positive")
        lam = lam or 0.0
        try:
            pred = osc.energy_expansion(args.alpha, g).energy(lam)
        except DomainError:
            pred = math.nan
        sizes = [1 << k for k in range(n_max.bit_length()) if (1 << k) < n_max] + [n_max]
        rows = []
        for n in sizes:
            e = osc.variational_ground_energy(n, args.alpha, g, lam)
            rows.append([n, e, pred, e - pred])
        em.table(["N", "E0", "second_order", "difference"], rows)
    return EXIT_OK


def cmd_kernel(args, em: Emitter) -> int:
    fn = cf.gauss_kernel if args.which == "gauss" else cf.f3_kernel
    k = fn(args.a, args.z)
    em.record({"kernel": args.which, "a": args.a, "z": args.z, "value": k.value, "branch": k.branch_note.value})
    return EXIT_OK


def cmd_laplace(args, em: Emitter) -> int:
    g = args.gamma
    if args.task == "inverse-log":
        if args.x2 is None:
            raise UsageError("inverse-log needs --x2")
        em.record({"gamma": g, "x2": args.x2, "value": lp.inverse_log_formula(g, args.x2)})
        return EXIT_OK
    if args.x is None:
        raise UsageError(f"{args.task} needs --x")
    if args.task == "f":
        em.record({"gamma": g, "x": args.x, "value": lp.f_gamma(g, args.x)})
    elif args.task == "derivative":
        em.record({"gamma": g, "x": args.x, "value": lp.f_gamma_derivative(g, args.x)})
    else:
        pairs = lp.antiderivative_identities_check(g, args.x, tolerance=args.tolerance or 1e-13)
        rows = [[name, q.lhs, q.rhs, q.difference] for name, q in zip(("2F2(1,1/2;3/2,1/2+g)", "2F2(1,1;2,1+g)"), pairs)]
        em.table(["antiderivative", "quadrature", "closed_form", "difference"], rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--tolerance", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--max-terms", type=int, dest="max_terms")

    parser = _Parser(prog="pertsums", description="Closed-form perturbation sums and their oracles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sum", parents=[common], help="evaluate a Gauss or confluent series")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--b", type=float, help="omit for the confluent series (then --y is x^2)")
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--y", type=float, required=True)
    s.add_argument("--method", choices=("closed", "oracle", "integral"), default="closed")
    s.set_defaults(func=cmd_sum)

    v = sub.add_parser("verify", parents=[common], help="seeded random sweep of a registered identity")
    v.add_argument("identity", choices=["all", *REGISTRY], metavar="IDENTITY",
                   help="one of: all, " + ", ".join(REGISTRY))
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oscillator", parents=[common], help="spiked oscillator spectra and corrections")
    o.add_argument("task", choices=("energy", "matrix", "correction", "variational"))
    o.add_argument("--alpha", type=float, required=True)
    o.add_argument("--A", type=float)
    o.add_argument("--gamma", type=float)
    o.add_argument("--lambda", type=float, dest="lam")
    o.add_argument("--N", type=int)
    o.add_argument("--x-grid", dest="x_grid", metavar="START:STOP:STEP")
    o.set_defaults(func=cmd_oscillator)

    k = sub.add_parser("kernel", parents=[common], help="the 2F1 and 3F2 kernels")
    k.add_argument("which", choices=("gauss", "f3"))
    k.add_argument("--a", type=float, required=True)
    k.add_argument("--z", type=float, required=True)
    k.set_defaults(func=cmd_kernel)

    lpp = sub.add_parser("laplace", parents=[common], help="inverse Laplace transform checks")
    lpp.add_argument("task", choices=("f", "derivative", "inverse-log", "antiderivative"))
    lpp.add_argument("--gamma", type=float, required=True)
    lpp.add_argument("--x", type=float)
    lpp.add_argument("--x2", type=float)
    lpp.set_defaults(func=cmd_laplace)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    em = Emitter(args.format)
    try:
        return args.func(args, em)
    except UsageError as exc:
        parser.exit(EXIT_USAGE, f"pertsums: error: {exc}\n")
    except ConvergenceError as exc:
        sys.stderr.write(f"pertsums: convergence failure: {exc}\n")
        return EXIT_CONVERGENCE
    except (DomainError, ValueError) as exc:
        sys.stderr.write(f"pertsums: domain error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
