"""Command-line frontend.

Subcommands: ``solve`` (full pipeline to roots), ``matrices`` (serialize the
reduced Bezout and companion matrices), ``verify`` (the mod-p probabilistic
check on computed or loaded matrices).

Exit codes: 0 success, 1 verification failed, 2 unusable input, 3 pipeline
error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import serialize
from .bezout import BezoutBuildError, BuildOptions, build_bezout_set
from .companion import (
    BadPrimeError,
    CompanionError,
    CompanionSet,
    VerifyReport,
    companion_matrices,
    fallback_primes,
    is_prime,
    verify_modp,
)
from .poly import ParseError, PolySystem, SystemFormatError, parse_system, x_names
from .reduction import ReducedBezoutSet, ReductionError, reduce
from .roots import (
    EigensolveError,
    Histogram,
    RootSet,
    attach_residuals,
    eigen_roots,
    residual_histogram,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_PIPELINE = 3


@dataclass
class RunReport:
    """Everything the human-readable report prints."""

    phase_timings: dict[str, float] = field(default_factory=dict)
    dim: int | None = None
    initial_size: tuple[int, int] | None = None
    relations_count: int | None = None
    verify: VerifyReport | None = None
    histogram: Histogram | None = None
    matrix_bytes: int | None = None

    def render(self) -> str:
        lines = ["phase,seconds"]
        for phase, seconds in self.phase_timings.items():
            lines.append(f"{phase},{seconds:.6f}")
        lines.append("")
        if self.initial_size is not None:
            lines.append(f"initial size: {self.initial_size[0]} x {self.initial_size[1]}")
        if self.dim is not None:
            lines.append(f"dim: {self.dim}")
        if self.relations_count is not None:
            lines.append(f"relations: {self.relations_count}")
        if self.matrix_bytes is not None:
            lines.append(f"matrix bytes: {self.matrix_bytes}")
        if self.verify is not None:
            status = "passed" if self.verify.passed else "FAILED"
            lines.append(
                f"verify: {status} (prime={self.verify.prime}, seed={self.verify.seed}, "
                f"per-poly={list(self.verify.per_poly)})"
            )
        if self.histogram is not None:
            lines.append("log10 of errors | nb of roots")
            for key in sorted(self.histogram.bins):
                lines.append(f"{key} | {self.histogram.bins[key]}")
            lines.append(f"skipped (singular jacobian): {self.histogram.skipped}")
        return "\n".join(lines) + "\n"


class _Timer:
    def __init__(self, report: RunReport, phase: str):
        self.report = report
        self.phase = phase

    def __enter__(self):
        self.start = time.perf_counter()

    def __exit__(self, *exc):
        self.report.phase_timings[self.phase] = time.perf_counter() - self.start
        return False


def _prime_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if not is_prime(value):
        raise argparse.ArgumentTypeError(f"{value} is not prime")
    return value


def _build_options(args) -> BuildOptions:
    return BuildOptions(
        margin=args.margin,
        round_tol=args.round_tol,
        force_symbolic=args.force_symbolic,
    )


def _load_system(path: str) -> PolySystem:
    return parse_system(Path(path).read_text(encoding="utf-8"))


def _verify_with_fallback(system: PolySystem, cs: CompanionSet, prime: int, seed: int) -> VerifyReport:
    last: BadPrimeError | None = None
    for p in fallback_primes(prime):
        try:
            return verify_modp(system, cs, p, seed)
        except BadPrimeError as exc:
            last = exc
    raise BadPrimeError(f"all fallback primes hit bad denominators: {last}")


def _matrix_files(red: ReducedBezoutSet, cs: CompanionSet | None):
    """(filename, k, matrix, row family, col family) for everything we persist."""
    out = []
    for k, matrix in enumerate(red.matrices):
        out.append((f"B{k}.smat", k, matrix, red.row_family, red.col_family))
    if cs is not None:
        for j, matrix in enumerate(cs.matrices, start=1):
            out.append((f"X{j}.smat", j, matrix, cs.basis, cs.basis))
    return out


def _total_matrix_bytes(red: ReducedBezoutSet, cs: CompanionSet | None) -> int:
    return sum(
        serialize.triplet_bytes(k, m, rf, cf)
        for _, k, m, rf, cf in _matrix_files(red, cs)
    )


def _emit(text: str, path: str | None, default_stream) -> None:
    if path is None or path == "-":
        default_stream.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_solve(args) -> int:
    system = _load_system(args.system)
    report = RunReport()
    with _Timer(report, "build"):
        bez = build_bezout_set(system, _build_options(args))
    report.initial_size = bez.shape
    with _Timer(report, "reduce"):
        red = reduce(bez)
    report.dim = red.dim
    report.relations_count = len(red.relations)

    if red.dim == 0:
        report.matrix_bytes = _total_matrix_bytes(red, None)
        _emit(serialize.empty_roots_json(), args.out, sys.stdout)
        _emit(report.render(), args.report, sys.stderr)
        return EXIT_OK

    with _Timer(report, "companion"):
        cs = companion_matrices(red)
    report.matrix_bytes = _total_matrix_bytes(red, cs)

    verify_ok = True
    if not args.no_verify:
        with _Timer(report, "verify"):
            report.verify = _verify_with_fallback(system, cs, args.prime, args.seed)
        verify_ok = report.verify.passed

    with _Timer(report, "eigen"):
        rs = attach_residuals(eigen_roots(cs, args.seed), system)
    report.histogram = residual_histogram(rs)

    _emit(serialize.roots_to_json(rs), args.out, sys.stdout)
    _emit(report.render(), args.report, sys.stderr)
    return EXIT_OK if verify_ok else EXIT_VERIFY_FAILED


def cmd_matrices(args) -> int:
    system = _load_system(args.system)
    report = RunReport()
    with _Timer(report, "build"):
        bez = build_bezout_set(system, _build_options(args))
    report.initial_size = bez.shape
    with _Timer(report, "reduce"):
        red = reduce(bez)
    report.dim = red.dim
    report.relations_count = len(red.relations)

    cs = None
    if red.dim >= 1:
        with _Timer(report, "companion"):
            cs = companion_matrices(red)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    total = 0
    if cs is None:
        # dim 0: companion matrices do not exist; persist empty placeholders
        cs = CompanionSet(system.n, tuple([] for _ in range(system.n)), ())
    names = _matrix_files(red, cs)
    for filename, k, matrix, rf, cf in names:
        total += serialize.write_matrix(out_dir / filename, k, matrix, rf, cf)
    report.matrix_bytes = total
    _emit(report.render(), args.report, sys.stderr)
    return EXIT_OK


def _load_companions(dir_path: str, n: int) -> CompanionSet:
    names = x_names(n)
    mats = []
    basis = None
    for j in range(1, n + 1):
        _, matrix, rf, cf = serialize.read_matrix(Path(dir_path) / f"X{j}.smat", names, names)
        mats.append(matrix)
        basis = rf
    if basis is None:
        raise CompanionError("no companion matrix files found")
    return CompanionSet(n, tuple(mats), basis)


def cmd_verify(args) -> int:
    system = _load_system(args.system)
    if args.load_matrices:
        cs = _load_companions(args.load_matrices, system.n)
    else:
        red = reduce(build_bezout_set(system, _build_options(args)))
        if red.dim == 0:
            print("dim 0: nothing to verify", file=sys.stderr)
            return EXIT_OK
        cs = companion_matrices(red)
    report = _verify_with_fallback(system, cs, args.prime, args.seed)
    print(f"prime: {report.prime}")
    for i, ok in enumerate(report.per_poly, start=1):
        print(f"f{i}(X) v == 0 mod p: {ok}")
    print("passed" if report.passed else "FAILED")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("system", help="polynomial system file, one polynomial per line")
    parser.add_argument("--margin", type=int, default=1, help="grid margin above the degree bounds")
    parser.add_argument("--round-tol", type=float, default=1e-6, dest="round_tol",
                        help="largest accepted integer-rounding deviation")
    parser.add_argument("--force-symbolic", action="store_true",
                        help="skip the evaluation-interpolation fast path")
    parser.add_argument("--seed", type=int, default=0, help="seed for all randomized steps")
    parser.add_argument("--prime", type=_prime_arg, default=2003,
                        help="prime for the mod-p verification")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bezsolve",
        description="Solve square polynomial systems through Bezout and companion matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="compute and verify the numerical roots")
    _add_common(p_solve)
    p_solve.add_argument("--out", default=None, help="roots JSON path (default: stdout)")
    p_solve.add_argument("--report", default=None, help="report path (default: stderr)")
    p_solve.add_argument("--no-verify", action="store_true", help="skip the mod-p check")
    p_solve.set_defaults(func=cmd_solve)

    p_mat = sub.add_parser("matrices", help="write reduced Bezout and companion matrices")
    _add_common(p_mat)
    p_mat.add_argument("--out-dir", required=True, dest="out_dir", help="output directory")
    p_mat.add_argument("--report", default=None, help="report path (default: stderr)")
    p_mat.set_defaults(func=cmd_matrices)

    p_ver = sub.add_parser("verify", help="run the mod-p identity check")
    _add_common(p_ver)
    p_ver.add_argument("--load-matrices", default=None, dest="load_matrices",
                       help="directory of X*.smat files to check instead of recomputing")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SystemFormatError, serialize.MatrixFileError) as exc:
        print(f"bezsolve: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"bezsolve: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (BezoutBuildError, ReductionError, CompanionError, EigensolveError,
            BadPrimeError, OSError) as exc:
        print(f"bezsolve: pipeline error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
