"""Command-line front end: verification suites and experiments as CSV.

Five subcommands: ``coeffs`` (closed-form word coefficients against the
free-algebra oracle), ``verify`` (matrix identities per time step),
``simulate`` (one trajectory), ``sweep`` (stability survey over a range
of time steps) and ``shadow`` (per-step drift of the conserved energies,
both schemes side by side).

Output is deterministic CSV: LF line endings, header row, no timestamps.
Exit status is the contract: 0 all checks pass, 1 a mathematical check
failed, 2 usage error (argparse's own convention).
"""

from __future__ import annotations

import argparse
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import goldberg
from .oscillator import (
    PhaseState,
    SchemeId,
    SeriesDivergesError,
    check_generator_relations,
    generator_direction,
    generator_scale,
    map_matrix,
    matrix_log_principal,
    rotation_angle,
    shadow_energy,
    shadow_form,
    spectral_radius,
    stability_classify,
    trajectory,
)

_SCHEMES = {"first": SchemeId.FIRST_ORDER, "second": SchemeId.SECOND_ORDER}


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return value


def _x_range(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}")
    start, stop, step = (_rational(part) for part in parts)
    if step <= 0:
        raise argparse.ArgumentTypeError("step must be positive")
    if stop < start:
        raise argparse.ArgumentTypeError("stop must be >= start")
    return start, stop, step


def _x_samples(args) -> list[Fraction]:
    """Ascending exact sample points; a single --x wins over the range."""
    if getattr(args, "x", None) is not None:
        return [args.x]
    start, stop, step = args.x_range
    count = int((stop - start) / step) + 1
    return [start + i * step for i in range(count)]


def _format_value(value) -> str:
    """Exact values as decimal strings with 17 significant digits,
    floats as their shortest round-trip repr."""
    if isinstance(value, Fraction):
        with localcontext() as ctx:
            ctx.prec = 17
            return str(Decimal(value.numerator) / Decimal(value.denominator))
    return repr(float(value))


def _series_tol(gate_tol: float) -> float:
    """Partial-sum tolerance for the scale series, kept well below the
    pass/fail gate so series truncation never decides a comparison."""
    return min(gate_tol * 1e-2, 1e-14)


def _sign_matches(value, x) -> bool:
    boundary = 2 - abs(x)
    if boundary > 0:
        return value > 0
    if boundary == 0:
        return value == 0
    return value < 0


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_coeffs(args) -> tuple[list[list[str]], int]:
    if args.letters == 2:
        max_degree = args.max_degree or goldberg.DEFAULT_MAX_DEGREE_TWO
        reports = goldberg.verify_two_letter(max_degree)
    else:
        max_degree = args.max_degree or goldberg.DEFAULT_MAX_DEGREE_THREE
        reports = goldberg.verify_three_letter(max_degree)
    rows = [["word", "closed_form", "oracle", "match"]]
    failed = False
    for report in reports:
        rows.append(
            [
                report.word,
                str(report.closed_form),
                str(report.oracle),
                "true" if report.match else "false",
            ]
        )
        failed = failed or not report.match
    return rows, 1 if failed else 0


def cmd_verify(args) -> tuple[list[list[str]], int]:
    rows = [["invariant", "x", "residual", "pass"]]
    failed = False

    def emit(name: str, x_text: str, residual: str, ok: bool):
        nonlocal failed
        rows.append([name, x_text, residual, "pass" if ok else "fail"])
        failed = failed or not ok

    relations_ok = all(ok for _, ok in check_generator_relations())
    emit("generator_relations", "", "exact", relations_ok)

    for x in _x_samples(args):
        x_text = repr(float(x))
        for label, scheme in _SCHEMES.items():
            mat = map_matrix(scheme, x)
            emit(f"det_map_{label}", x_text, "exact", mat.det() == 1)

            form = shadow_form(scheme, x).m
            direction = generator_direction(scheme, x)
            product = form @ direction
            skew = product.transpose() + product
            emit(f"antisymmetry_{label}", x_text, "exact", skew == skew.zero())

            det = shadow_form(scheme, x).det()
            emit(f"shadow_det_sign_{label}", x_text, "exact", _sign_matches(det, x))

        if 0 < abs(x) < 2:
            scale = generator_scale(float(x), _series_tol(args.tol))
            for label, scheme in _SCHEMES.items():
                logmat = matrix_log_principal(map_matrix(scheme, float(x)))
                target = (float(x) * scale) * generator_direction(scheme, float(x))
                residual = logmat.max_abs_diff(target)
                emit(
                    f"log_vs_generator_{label}",
                    x_text,
                    repr(residual),
                    residual <= args.tol,
                )
        elif abs(x) >= 2:
            try:
                generator_scale(float(x))
                signalled = False
            except SeriesDivergesError:
                signalled = True
            emit("divergence_signaled", x_text, "exact", signalled)

    return rows, 1 if failed else 0


def cmd_simulate(args) -> tuple[list[list[str]], int]:
    scheme = _SCHEMES[args.scheme]
    if args.exact:
        x, p0, q0 = args.x, args.p0, args.q0
    else:
        x, p0, q0 = float(args.x), float(args.p0), float(args.q0)
    states = trajectory(PhaseState(p0, q0), scheme, x, args.steps)
    rows = [["step", "p", "q", "shadow_energy", "p2_plus_q2"]]
    for step, state in enumerate(states):
        energy = shadow_energy(state, scheme, x)
        rows.append(
            [
                str(step),
                _format_value(state.p),
                _format_value(state.q),
                _format_value(energy),
                _format_value(state.p * state.p + state.q * state.q),
            ]
        )
    return rows, 0


def cmd_shadow(args) -> tuple[list[list[str]], int]:
    if args.exact:
        x, p0, q0 = args.x, args.p0, args.q0
    else:
        x, p0, q0 = float(args.x), float(args.p0), float(args.q0)
    s0 = PhaseState(p0, q0)
    rows = [["step", "first_energy", "first_drift", "second_energy", "second_drift"]]
    columns = []
    for scheme in (SchemeId.FIRST_ORDER, SchemeId.SECOND_ORDER):
        states = trajectory(s0, scheme, x, args.steps)
        energies = [shadow_energy(state, scheme, x) for state in states]
        columns.append(energies)
    for step in range(args.steps + 1):
        row = [str(step)]
        for energies in columns:
            row.append(_format_value(energies[step]))
            row.append(_format_value(energies[step] - energies[0]))
        rows.append(row)
    return rows, 0


def cmd_sweep(args) -> tuple[list[list[str]], int]:
    scheme = _SCHEMES[args.scheme]
    rows = [
        [
            "x",
            "trace",
            "stability",
            "spectral_radius",
            "shadow_det",
            "generator_scale",
            "theta",
        ]
    ]
    for x in _x_samples(args):
        trace = map_matrix(scheme, x).trace()
        stability = stability_classify(scheme, x)
        try:
            scale_text = repr(generator_scale(float(x), _series_tol(args.tol)))
        except SeriesDivergesError:
            scale_text = "DIVERGENT"
        theta_text = (
            repr(rotation_angle(scheme, float(x))) if abs(trace) <= 2 else ""
        )
        rows.append(
            [
                repr(float(x)),
                repr(float(trace)),
                stability.value,
                repr(spectral_radius(scheme, float(x))),
                repr(float(shadow_form(scheme, x).det())),
                scale_text,
                theta_text,
            ]
        )
    return rows, 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_scheme(parser):
    parser.add_argument(
        "--scheme", choices=sorted(_SCHEMES), default="first", help="integrator scheme"
    )


def _add_state(parser):
    parser.add_argument("--p0", type=_rational, default=Fraction(1), help="initial momentum")
    parser.add_argument("--q0", type=_rational, default=Fraction(0), help="initial coordinate")
    parser.add_argument(
        "--exact",
        action="store_true",
        help="run in exact rational arithmetic (accepts values like 1/2)",
    )


def _add_x(parser, default="1"):
    parser.add_argument("--x", type=_rational, default=_rational(default), help="time step")


def _add_x_choice(parser):
    parser.add_argument("--x", type=_rational, default=None, help="single time step")
    parser.add_argument(
        "--x-range",
        type=_x_range,
        default=_x_range("0:3:0.1"),
        metavar="START:STOP:STEP",
        help="inclusive sweep over time steps (default 0:3:0.1)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shadowosc",
        description="Exact shadow energies and effective generators of the "
        "split-step harmonic oscillator.",
    )
    parser.add_argument("--out", default=None, help="output file (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    coeffs = sub.add_parser("coeffs", help="check word coefficients against the oracle")
    coeffs.add_argument("--letters", type=int, choices=(2, 3), default=2)
    coeffs.add_argument(
        "--max-degree",
        type=int,
        default=None,
        help="truncation order (default 12 for two letters, 8 for three)",
    )
    coeffs.set_defaults(handler=cmd_coeffs)

    verify = sub.add_parser("verify", help="check matrix identities per time step")
    _add_x_choice(verify)
    verify.add_argument("--tol", type=_positive_float, default=1e-12)
    verify.set_defaults(handler=cmd_verify)

    simulate = sub.add_parser("simulate", help="emit one trajectory")
    _add_scheme(simulate)
    _add_x(simulate)
    simulate.add_argument("--steps", type=_nonnegative_int, default=100)
    _add_state(simulate)
    simulate.set_defaults(handler=cmd_simulate)

    shadow = sub.add_parser("shadow", help="per-step energy drift, both schemes")
    _add_x(shadow)
    shadow.add_argument("--steps", type=_nonnegative_int, default=100)
    _add_state(shadow)
    shadow.set_defaults(handler=cmd_shadow)

    sweep = sub.add_parser("sweep", help="stability survey over time steps")
    _add_scheme(sweep)
    _add_x_choice(sweep)
    sweep.add_argument("--tol", type=_positive_float, default=1e-12)
    sweep.set_defaults(handler=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, code = args.handler(args)
    except ValueError as exc:  # bad parameter combinations are usage errors
        print(f"shadowosc: error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:  # a mathematical check tripped
        print(f"shadowosc: check failed: {exc}", file=sys.stderr)
        return 1
    text = "\n".join(",".join(row) for row in rows) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as handle:
            handle.write(text)
    return code


def run():
    raise SystemExit(main())


if __name__ == "__main__":
    run()
