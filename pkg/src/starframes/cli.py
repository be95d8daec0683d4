"""Command-line interface.

Exit codes are shared by every command: 0 success, 1 usage or input error,
2 input is not a frame, 3 a verification failed.  Reports go to stdout as
JSON unless ``--human`` is given.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import sys
from pathlib import Path

from . import serialize
from .config import Tolerances, get_tolerances
from .duals import canonical_dual, dual_from_bessel, dual_from_right_inverse, \
    right_inverse_from_psi, verify_dual
from .errors import FrameError, NotADualPair, NotAFrame
from .frames import (
    analysis,
    condition_number,
    is_bessel,
    is_frame,
    optimal_scalar_bounds,
    random_frame,
)
from .module import FrameContext, SequenceOperator
from .tensor import TensorContext, tensor_frame, verify_tensor_dual

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_FRAME = 2
EXIT_VERIFY_FAILED = 3


class CommandFailed(Exception):
    def __init__(self, code: int, message: str, results: dict | None = None):
        super().__init__(message)
        self.code = code
        self.results = results or {}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _digest(path) -> str:
    try:
        return hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError:
        return ""


def _tolerances(args) -> Tolerances:
    base = get_tolerances()
    tol = getattr(args, "tol", None)
    return base if tol is None else dataclasses.replace(base, eq=tol)


def _finite_or_none(x: float):
    return x if x != float("inf") else None


def _frame_summary(F) -> dict:
    lower, upper = optimal_scalar_bounds(F)
    return {
        "algebra_dim": F.ctx.algebra_dim,
        "module_rank": F.ctx.module_rank,
        "n_operators": len(F),
        "optimal_bounds": [lower, upper],
    }


def cmd_check(args, tol):
    F = serialize.load_frame(args.file)
    frame = is_frame(F, tol)
    bessel, upper = is_bessel(F)
    results = {
        **_frame_summary(F),
        "is_frame": frame,
        "is_bessel": bessel,
        "bessel_bound": upper,
        "condition_number": _finite_or_none(condition_number(F)),
    }
    return (EXIT_OK if frame else EXIT_NOT_FRAME), results


def _load_aux(spec: str):
    kind, _, path = spec.partition(":")
    if kind not in ("bessel", "psi") or not path:
        raise FrameError(f"--mode must be canonical, bessel:<file> or psi:<file>, got {spec!r}")
    return kind, path


def cmd_dual(args, tol):
    F = serialize.load_frame(args.file)
    if not is_frame(F, tol):
        raise CommandFailed(EXIT_NOT_FRAME, "input is not a frame", {"is_frame": False})
    extra_inputs = []
    if args.mode == "canonical":
        D = canonical_dual(F, tol)
    else:
        kind, path = _load_aux(args.mode)
        aux = serialize.load_frame(path)
        extra_inputs.append(path)
        if kind == "bessel":
            D = dual_from_bessel(F, aux, tol)
        else:
            psi = SequenceOperator(aux.ctx, aux.ops)
            D = dual_from_right_inverse(F, right_inverse_from_psi(F, psi, tol), tol)
    D = dataclasses.replace(D, label=args.label or D.label or f"{args.mode} dual")
    serialize.save_frame(D, args.out)
    pair = verify_dual(F, D, tol)
    results = {"mode": args.mode, "out": str(args.out), **pair.to_json(),
               "tolerance": pair.tolerance}
    return (EXIT_OK if pair.passed else EXIT_VERIFY_FAILED), results, extra_inputs


def cmd_verify_dual(args, tol):
    F = serialize.load_frame(args.file)
    D = serialize.load_frame(args.dualfile)
    pair = verify_dual(F, D, tol)
    results = {**pair.to_json(), "tolerance": pair.tolerance}
    return (EXIT_OK if pair.passed else EXIT_VERIFY_FAILED), results


def cmd_tensor(args, tol):
    F = serialize.load_frame(args.file1)
    G = serialize.load_frame(args.file2)
    tctx = TensorContext(F.ctx, G.ctx)
    T = tensor_frame(F, G, tctx)
    serialize.save_frame(T, args.out)
    results = {
        "out": str(args.out),
        "left_context": [F.ctx.algebra_dim, F.ctx.module_rank],
        "right_context": [G.ctx.algebra_dim, G.ctx.module_rank],
        **_frame_summary(T),
        "is_frame": is_frame(T, tol),
    }
    code = EXIT_OK
    extra = []
    if args.verify_duals:
        d1, d2 = args.verify_duals
        extra = [d1, d2]
        Fd, Gd = serialize.load_frame(d1), serialize.load_frame(d2)
        try:
            pair = verify_tensor_dual(F, Fd, G, Gd, tol)
        except NotADualPair as exc:
            raise CommandFailed(EXIT_VERIFY_FAILED, str(exc), results) from exc
        results["tensor_dual"] = {**pair.to_json(), "tolerance": pair.tolerance}
        if not pair.passed:
            code = EXIT_VERIFY_FAILED
    return code, results, extra


def cmd_random(args, tol):
    for name in ("n", "k", "count"):
        if getattr(args, name) < 1:
            raise FrameError(f"--{name} must be positive")
    if args.seed < 0:
        raise FrameError("--seed must be non-negative")
    F = random_frame(FrameContext(args.n, args.k), args.count, args.seed,
                     label=args.label or f"random n={args.n} k={args.k} N={args.count} seed={args.seed}")
    if args.out is None:
        sys.stdout.write(serialize.dumps_frame(F))
        return None
    serialize.save_frame(F, args.out)
    return EXIT_OK, {"out": str(args.out), **_frame_summary(F), "is_frame": is_frame(F, tol)}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="starframes", description="Dual *-operator frames over M_n(C).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--human", action="store_true", help="plain-text report")
        return p

    p = add("check", cmd_check, "frame test, bounds and condition number")
    p.add_argument("file")
    p.add_argument("--tol", type=float)

    p = add("dual", cmd_dual, "compute a dual frame")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--mode", default="canonical",
                   help="canonical | bessel:<file> | psi:<file>")
    p.add_argument("--label")
    p.add_argument("--tol", type=float)

    p = add("verify-dual", cmd_verify_dual, "check that two frames are dual")
    p.add_argument("file")
    p.add_argument("dualfile")
    p.add_argument("--tol", type=float)

    p = add("tensor", cmd_tensor, "tensor product of two frames")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--out", required=True)
    p.add_argument("--verify-duals", nargs=2, metavar=("DUAL1", "DUAL2"))
    p.add_argument("--tol", type=float)

    p = add("random", cmd_random, "seeded random frame")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--label")
    return parser


def _print_report(report: dict, human: bool):
    if not human:
        sys.stdout.write(serialize.dumps(report))
        return
    print(f"{report['command']}: {'PASS' if report['pass'] else 'FAIL'}")
    for key, value in report["results"].items():
        print(f"  {key}: {value}")
    if "error" in report:
        print(f"  error: {report['error']}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = [getattr(args, a) for a in ("file", "dualfile", "file1", "file2")
              if getattr(args, a, None)]
    tol = _tolerances(args)
    report = {"command": args.command, "tolerances": tol.as_dict()}
    error = None
    try:
        if getattr(args, "tol", None) is not None and not args.tol > 0:
            raise FrameError("--tol must be positive")
        outcome = args.func(args, tol)
        if outcome is None:
            return EXIT_OK
        code, results, *extra = outcome
        if extra:
            inputs += extra[0]
    except CommandFailed as exc:
        code, results, error = exc.code, exc.results, str(exc)
    except NotAFrame as exc:
        code, results, error = EXIT_NOT_FRAME, {}, str(exc)
    except (FrameError, ValueError) as exc:
        code, results, error = EXIT_ERROR, {}, str(exc)
    report.update({
        "inputs": {str(p): _digest(p) for p in inputs},
        "results": results,
        "pass": code == EXIT_OK,
    })
    if error is not None:
        report["error"] = error
    _print_report(report, getattr(args, "human", False))
    return code


if __name__ == "__main__":
    sys.exit(main())
