"""Command-line interface: ``fockoptics {nls,run,sample,teleport02}``.

Output interleaves human-readable lines, prefixed with ``#``, and machine-readable
lines of the form ``<record> key=value ...`` with a fixed field order. Reals are
printed with 12 significant digits; complex values as ``re,im``.

Exit status: 0 on success, 1 on validation or usage errors, 2 on circuit parse errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from importlib import resources
from pathlib import Path

from .circuit_io import execute, load_circuit, run_circuit
from .errors import CircuitSemanticError, CircuitSyntaxError, FockOpticsError
from .fock import InputQutrit, StateVector
from .measurement import OutcomeDistribution, sample_outcomes
from .nls import CANONICAL_THETA, HERALD_PATTERNS, nls_gate, teleport_vacuum_two_photon

EXIT_OK, EXIT_VALIDATION, EXIT_PARSE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _real(x: float) -> str:
    return f"{x + 0.0:.11e}"  # + 0.0 folds -0.0 into 0.0


def _cplx(z: complex) -> str:
    return f"{_real(z.real)},{_real(z.imag)}"


def _pattern_str(p) -> str:
    return ",".join(map(str, p))


def parse_complex(text: str) -> complex:
    """``re`` or ``re,im``, decimal or scientific notation."""
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"non-finite value in {text!r}")
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def parse_pattern(text: str) -> tuple[int, ...]:
    try:
        pattern = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated photon counts, got {text!r}") from None
    if any(n < 0 for n in pattern):
        raise argparse.ArgumentTypeError(f"photon counts must be non-negative: {text!r}")
    return pattern


def _finite(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return x


def resolve_circuit_path(name: str) -> Path:
    """A path on disk, or failing that, the name of a circuit bundled with the package."""
    path = Path(name)
    if path.is_file():
        return path
    bundled = resources.files("fockoptics") / "data" / name
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(f"circuit file not found: {name}")


def _normalized_qutrit(amps, out) -> InputQutrit:
    norm2 = math.fsum(abs(c) ** 2 for c in amps)
    if norm2 == 0:
        raise FockOpticsError("all input amplitudes are zero")
    if abs(norm2 - 1.0) > 1e-9:
        print(f"# notice: input normalized (norm^2 was {norm2:.12g})", file=out)
    return InputQutrit.normalized_from(*amps)


def _print_branches(branches, out):
    print("# branch  probability   correction     amplitudes of |0>, |1>, |2>", file=out)
    for b in branches:
        corr = "none" if b.correction is None else f"phase {b.correction.phi:.6g}"
        amps = "  ".join(f"{c.real + 0.0:+.10f}{c.imag + 0.0:+.10f}j" for c in b.amplitudes)
        print(f"# ({_pattern_str(b.pattern)})   {b.probability:.10f}  {corr:<13}  {amps}", file=out)
    for b in branches:
        corr = "none" if b.correction is None else f"ps:{b.correction.mode}:{_real(b.correction.phi)}"
        amps = " ".join(f"a{n}={_cplx(c)}" for n, c in enumerate(b.amplitudes))
        print(f"branch pattern={_pattern_str(b.pattern)} probability={_real(b.probability)} "
              f"correction={corr} {amps}", file=out)


def cmd_nls(args, out) -> int:
    q = _normalized_qutrit((args.alpha, args.beta, args.gamma), out)
    report = nls_gate(q, args.theta)
    print(f"# nonlinear sign gate, theta = {report.theta:.12g} rad, sin(2 theta) = {math.sin(2 * report.theta):.12g}",
          file=out)
    print(f"input alpha={_cplx(q.alpha)} beta={_cplx(q.beta)} gamma={_cplx(q.gamma)}", file=out)
    print(f"theta value={_real(report.theta)}", file=out)
    _print_branches(report.branches, out)
    print(f"# total success probability {report.total_success_probability:.10f}", file=out)
    print(f"total success={_real(report.total_success_probability)} failure={_real(report.failure_probability)}",
          file=out)
    return EXIT_OK


def cmd_teleport02(args, out) -> int:
    amps = _normalized_qutrit((args.alpha, 0j, args.gamma), out)
    report = teleport_vacuum_two_photon(amps.alpha, amps.gamma)
    print("# vacuum/two-photon teleportation, symmetric ancilla beam splitter", file=out)
    print(f"input alpha={_cplx(report.alpha)} gamma={_cplx(report.gamma)}", file=out)
    _print_branches(report.branches, out)
    print(f"# total success probability {report.total_success_probability:.10f}", file=out)
    print(f"total success={_real(report.total_success_probability)} failure={_real(report.failure_probability)}",
          file=out)
    return EXIT_OK


def _print_state(s: StateVector, out, prefix=""):
    for ket, amp in s.sorted_items():
        print(f"amplitude {prefix}ket={_pattern_str(ket)} value={_cplx(amp)}", file=out)


def cmd_run(args, out) -> int:
    circuit = load_circuit(resolve_circuit_path(args.file))
    result = execute(circuit, args.postselect)
    if isinstance(result, StateVector):
        print(f"# final state on {result.mode_count} modes (no measurement)", file=out)
        _print_state(result, out)
    elif isinstance(result, OutcomeDistribution):
        print(f"# outcome distribution on modes {_pattern_str(result.spec.modes)}", file=out)
        for pattern, outcome in result.items():
            print(f"# ({_pattern_str(pattern)})  p = {outcome.probability:.10f}", file=out)
            print(f"outcome pattern={_pattern_str(pattern)} probability={_real(outcome.probability)}", file=out)
            _print_state(outcome.residual, out, prefix=f"pattern={_pattern_str(pattern)} ")
        print(f"total probability={_real(result.total_probability())}", file=out)
    else:
        probability, residual = result
        pattern = tuple(args.postselect) if args.postselect is not None else circuit.measure.postselect
        print(f"# post-selected on ({_pattern_str(pattern)})  p = {probability:.10f}", file=out)
        print(f"outcome pattern={_pattern_str(pattern)} probability={_real(probability)}", file=out)
        _print_state(residual, out, prefix=f"pattern={_pattern_str(pattern)} ")
    return EXIT_OK


def cmd_sample(args, out) -> int:
    circuit = load_circuit(resolve_circuit_path(args.file))
    if circuit.measure is None:
        raise FockOpticsError("circuit has no 'measure' record to sample")
    spec = circuit.measure.spec
    counts = sample_outcomes(run_circuit(circuit), spec, args.shots, args.seed)
    print(f"# {args.shots} shots, seed {args.seed}, numpy PCG64 inverse-CDF sampler", file=out)
    print(f"sample shots={args.shots} seed={args.seed}", file=out)
    for pattern, n in counts.items():
        print(f"count pattern={_pattern_str(pattern)} count={n} frequency={_real(n / args.shots)}", file=out)
    heralds = args.herald if args.herald else [p for p in HERALD_PATTERNS if len(p) == len(spec.modes)]
    if heralds:
        hits = sum(counts.get(tuple(p), 0) for p in heralds)
        print(f"# herald patterns {' '.join('(' + _pattern_str(p) + ')' for p in heralds)}: "
              f"frequency {hits / args.shots:.6f}", file=out)
        print(f"herald patterns={';'.join(_pattern_str(p) for p in heralds)} count={hits} "
              f"frequency={_real(hits / args.shots)} seed={args.seed}", file=out)
    return EXIT_OK


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fockoptics", description="Exact Fock-space simulation of linear-optical circuits.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("nls", help="run the heralded nonlinear sign gate on a qutrit")
    p.add_argument("--alpha", type=parse_complex, required=True, help="amplitude of |0>, 're' or 're,im'")
    p.add_argument("--beta", type=parse_complex, required=True, help="amplitude of |1>")
    p.add_argument("--gamma", type=parse_complex, required=True, help="amplitude of |2>")
    p.add_argument("--theta", type=_finite, default=CANONICAL_THETA, help="ancilla beam-splitter angle (rad)")
    p.set_defaults(func=cmd_nls)

    p = sub.add_parser("run", help="execute a circuit file")
    p.add_argument("file")
    p.add_argument("--postselect", type=parse_pattern, default=None, help="e.g. 2,0")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sample", help="sample detector patterns from a circuit file")
    p.add_argument("file")
    p.add_argument("--shots", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--herald", type=parse_pattern, action="append", default=None,
                   help="pattern counted as success (repeatable; default 2,0 and 0,2 for two detectors)")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("teleport02", help="teleport alpha|0> + gamma|2> with a symmetric ancilla")
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--gamma", type=parse_complex, required=True)
    p.set_defaults(func=cmd_teleport02)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_VALIDATION
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_VALIDATION
    try:
        return args.func(args, out)
    except (CircuitSyntaxError, CircuitSemanticError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (FockOpticsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
