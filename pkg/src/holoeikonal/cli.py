"""Command-line entry point.

Exit codes: 0 success, 2 no entire solution, 3 invalid input (syntax,
singular matrix, bad flags), 4 verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .errors import HoloError, NoEntireSolution, NonPolynomial, ParseError, SingularMatrix
from .multipoly import MAX_VARS
from .parsing import parse_expr, parse_matrix, parse_poly, read_text_arg
from .reduce import MatrixA, reduce_solve_backsub, transform_g
from .report import Report, emit_report
from .structure import NO_SOLUTION, classification_of, classify
from .synthesize import (
    SolutionForm,
    enumerate_affine_merges,
    render_solution,
    synthesize_partition,
)
from .verify import numeric_verify, symbolic_verify

EXIT_OK = 0
EXIT_NO_SOLUTION = 2
EXIT_INVALID = 3
EXIT_VERIFY_FAILED = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_int(text):
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="holoeikonal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("classify", "solve", "verify", "reduce"):
        p = sub.add_parser(name)
        p.add_argument("--g", required=True, help="polynomial text or @file")
        p.add_argument("--nvars", type=_positive_int, required=True)
        p.add_argument("--matrix", help="@file with a JSON array of arrays of scalars")
        p.add_argument("--samples", type=_positive_int, default=100)
        p.add_argument("--radius", type=_positive_float, default=1.0)
        p.add_argument("--tol", type=_positive_float, default=1e-9)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--precision", type=int, choices=(53, 256), default=256)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--merges", type=_positive_int, default=8, help="affine-merge cap (<= 32)")
        p.add_argument("--timings", action="store_true",
                       help="include wall-clock timings (breaks byte-identical output)")
        if name == "verify":
            p.add_argument("--solution", help="@file with a solution JSON")
            p.add_argument("--u", help="expression for u (text or @file)")
    return parser


# ---------------------------------------------------------------------------

def _partition_json(part, cls_=None) -> dict:
    cls_ = cls_ or classification_of(part)
    return {
        "J": [v + 1 for v in part.J],
        "chi": [v + 1 for v in part.chi],
        "kappa": str(part.kappa),
        "t": cls_.t,
        "nu": cls_.nu,
        "blocks": [
            {
                "vars": [v + 1 for v in b.vars],
                "kind": b.kind,
                "poly": b.poly.render(),
                "ell": b.ell.render() if b.ell is not None else None,
                "G": b.G.render(["t"]) if b.G is not None else None,
            }
            for b in part.blocks
        ],
    }


def _solution_json(s: SolutionForm) -> dict:
    return {
        "text": render_solution(s, "text"),
        "latex": render_solution(s, "latex"),
        "total_degree": s.total_degree(),
        "structured": s.to_json(),
    }


def _numeric(args, u, g, matrix=None, nvars=None):
    return numeric_verify(u, g, samples=args.samples, radius=args.radius, tol=args.tol,
                          seed=args.seed, precision=args.precision, matrix=matrix,
                          nvars=nvars)


def _verify_solution(args, s, g, matrix=None) -> tuple:
    sym = symbolic_verify(s, g, matrix)
    num = _numeric(args, s, g, matrix)
    rep = sym.to_json()
    rep.update(num.to_json())
    return rep, sym.symbolic == "pass" and num.numeric["verdict"] == "pass"


def _input_echo(args, g=None) -> dict:
    out = {"g": args.g, "nvars": args.nvars}
    if g is not None:
        out["g_canonical"] = g.render()
    if args.matrix:
        out["matrix"] = args.matrix
    return out


def _no_solution(report: Report, exc: NoEntireSolution) -> int:
    cls_ = exc.classification
    w = cls_.witness
    report.case = NO_SOLUTION
    report.status = "no_entire_solution"
    report.witness = {"vars": [v + 1 for v in w.vars], "poly": w.poly.render(),
                      "detail": cls_.detail}
    return EXIT_NO_SOLUTION


def _cmd_classify(args, report):
    g = parse_poly(read_text_arg(args.g), args.nvars)
    report.input = _input_echo(args, g)
    part, cls_ = classify(g)
    if cls_.tag == NO_SOLUTION:
        return _no_solution(report, NoEntireSolution(part, cls_))
    report.case = cls_.tag
    report.partition = _partition_json(part, cls_)
    return EXIT_OK


def _cmd_solve(args, report):
    g = parse_poly(read_text_arg(args.g), args.nvars)
    report.input = _input_echo(args, g)
    part, cls_ = classify(g)
    if cls_.tag == NO_SOLUTION:
        return _no_solution(report, NoEntireSolution(part, cls_))
    report.case = cls_.tag
    report.partition = _partition_json(part, cls_)
    s = synthesize_partition(part)
    report.solutions = [_solution_json(s)]
    report.family = s.family
    verification, ok = _verify_solution(args, s, g)
    report.verification = {"canonical": verification}
    merged, truncated = enumerate_affine_merges(part, min(args.merges, 32))
    alternatives = []
    for k, mp in enumerate(merged):
        alt = synthesize_partition(mp)
        sym = symbolic_verify(alt, g)
        ok = ok and sym.symbolic == "pass"
        entry = {"case": classification_of(mp).tag, "partition": _partition_json(mp)}
        entry.update(_solution_json(alt))
        entry["symbolic"] = sym.symbolic
        alternatives.append(entry)
    report.merges = {"count": len(alternatives), "truncated": truncated,
                     "alternatives": alternatives}
    if not ok:
        report.status = "verification_failed"
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def _load_matrix(args):
    if not args.matrix:
        raise UsageError("--matrix is required")
    return MatrixA(parse_matrix(read_text_arg(args.matrix) if args.matrix.startswith("@")
                                else args.matrix))


def _cmd_reduce(args, report):
    g = parse_poly(read_text_arg(args.g), args.nvars)
    report.input = _input_echo(args, g)
    A = _load_matrix(args)
    if A.n != args.nvars:
        raise UsageError(f"matrix is {A.n}x{A.n} but --nvars is {args.nvars}")
    g_tilde = transform_g(g, A)
    report.input["g_transformed"] = g_tilde.render()
    report.input["determinant"] = str(A.determinant())
    s = reduce_solve_backsub(A, g)
    report.case = classify(g_tilde)[1].tag
    report.solutions = [_solution_json(s)]
    report.family = s.family
    verification, ok = _verify_solution(args, s, g, A)
    report.verification = {"matrix": verification}
    if not ok:
        report.status = "verification_failed"
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def _cmd_verify(args, report):
    matrix = _load_matrix(args) if args.matrix else None
    if bool(args.solution) == bool(args.u):
        raise UsageError("verify needs exactly one of --solution or --u")
    g_text = read_text_arg(args.g)
    if args.solution:
        g = parse_poly(g_text, args.nvars)
        report.input = _input_echo(args, g)
        path = args.solution[1:] if args.solution.startswith("@") else args.solution
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        s = SolutionForm.from_json(data.get("structured", data))
        if s.nvars != args.nvars:
            raise UsageError("solution nvars differs from --nvars")
        verification, ok = _verify_solution(args, s, g, matrix)
    else:
        u = parse_expr(read_text_arg(args.u), args.nvars)
        try:
            g = parse_poly(g_text, args.nvars)
        except NonPolynomial:
            g = parse_expr(g_text, args.nvars)
        report.input = _input_echo(args)
        report.input["u"] = args.u
        num = _numeric(args, u, g, matrix, nvars=args.nvars)
        verification, ok = num.to_json(), num.numeric["verdict"] == "pass"
    report.verification = {"provided": verification}
    if not ok:
        report.status = "verification_failed"
        return EXIT_VERIFY_FAILED
    return EXIT_OK


COMMANDS = {
    "classify": _cmd_classify,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "reduce": _cmd_reduce,
}


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"holoeikonal: error: {exc}", file=stderr)
        return EXIT_INVALID
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    fmt = args.format
    report = Report(command=args.command, input={"g": args.g, "nvars": args.nvars})
    started = time.perf_counter()
    try:
        if args.nvars > MAX_VARS:
            raise UsageError(f"--nvars must be at most {MAX_VARS}")
        code = COMMANDS[args.command](args, report)
    except NoEntireSolution as exc:
        code = _no_solution(report, exc)
    except (UsageError, ParseError, SingularMatrix, HoloError, OSError,
            json.JSONDecodeError, KeyError) as exc:
        report.status = "invalid_input"
        report.message = f"{type(exc).__name__}: {exc}"
        print(f"holoeikonal: error: {report.message}", file=stderr)
        code = EXIT_INVALID
    if args.timings:
        report.timings = {"total_seconds": round(time.perf_counter() - started, 6)}
    if code == EXIT_NO_SOLUTION:
        print(f"holoeikonal: no entire solution: {report.witness['detail']}", file=stderr)
    elif code == EXIT_VERIFY_FAILED:
        print("holoeikonal: verification failed", file=stderr)
    stdout.write(emit_report(report, fmt))
    return code


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
