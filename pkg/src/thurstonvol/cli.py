"""Command line front end.

Exit codes: 0 success, 1 a verdict failed, 2 bad input, 3 unsupported surface.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import catalog
from .exactmath import OddDimension, pfaffian, rational_kernel, smith_invariants
from .family import (
    ORACLE_MAX_DIM,
    UnsupportedSurface,
    add_genus,
    add_puncture,
    box_cube,
    box_cube_check,
    build,
    form_terms_text,
    genus_index,
    induction_step_check,
    is_supported,
    volume_coefficient,
)
from .measures import (
    MISMATCH,
    OK,
    euclid_demo,
    load_track,
    model_report,
    surfaces,
    sweep,
    track_report,
    unsupported_cells,
)
from .traintrack import (
    DegenerateForm,
    DimensionMismatch,
    TrackError,
    expected_dimension,
    has_positive_point,
    integral_lattice,
    restricted_form,
    switch_matrix,
    weight_space,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2, 3


class InputError(Exception):
    pass


def _get_track(args):
    if args.builtin:
        if args.file:
            raise InputError("give either a track file or --builtin, not both")
        try:
            return catalog.builtin(args.builtin)
        except KeyError as e:
            raise InputError(e.args[0]) from None
    if not args.file:
        raise InputError("a track file or --builtin NAME is required")
    try:
        return load_track(args.file)
    except OSError as e:
        raise InputError(f"{args.file}: {e.strerror}") from None
    except TrackError as e:
        raise InputError(f"{args.file}: {e}") from None


def cmd_ratio(args) -> int:
    t = _get_track(args)
    try:
        weight_space(t)
        report = track_report(t)
    except (DegenerateForm, DimensionMismatch, OddDimension) as e:
        print(f"track={t.name} error={type(e).__name__}: {e}")
        return EXIT_FAIL
    print(report.render())
    return EXIT_FAIL if report.verdict == MISMATCH else EXIT_OK


def cmd_family(args) -> int:
    try:
        m = build(args.g, args.n)
    except UnsupportedSurface as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    report = model_report(m)
    print(report.render())
    if args.dump_form:
        for line in form_terms_text(m):
            print(f"  {line}")
    return EXIT_OK if report.verdict == OK else EXIT_FAIL


def cmd_sweep(args) -> int:
    if args.max < 2:
        raise InputError("--max must be at least 2")
    reports = sweep(args.max)
    for r in reports:
        print(r.render())
    ok = sum(r.verdict == OK for r in reports)
    skipped = ",".join(f"({g},{n})" for g, n in unsupported_cells(args.max))
    print(f"summary: cases={len(reports)} ok={ok} mismatch={len(reports) - ok} skipped={skipped or '-'}")
    return EXIT_OK if ok == len(reports) else EXIT_FAIL


def cmd_euclid_demo(args) -> int:
    demo = euclid_demo()
    print(demo.render())
    a, b = demo.approx(12)
    print(f"covolume tau ~ {a}  covolume tau' ~ {b}")
    return EXIT_OK if demo.distinct else EXIT_FAIL


def cmd_check(args) -> int:
    t = _get_track(args)
    results = []
    dim = rational_kernel(switch_matrix(t)).cols
    if t.has_metadata:
        exp = expected_dimension(t.genus, t.punctures)
        results.append(("dimension", f"dim={dim} expected={exp}", dim == exp))
    else:
        results.append(("dimension", f"dim={dim} expected=?", True))
    L = integral_lattice(t)
    # saturated iff the basis matrix has all invariant factors 1
    inv = smith_invariants(L.basis) if L.rank else []
    saturated = len(inv) == L.rank and all(d == 1 for d in inv)
    results.append(("saturation", f"rank={L.rank} invariants={inv or '-'}", saturated))
    try:
        R = restricted_form(t, L)
        results.append(("nondegenerate", f"pf={pfaffian(R) if R.rows else 1}", True))
    except (DegenerateForm, OddDimension) as e:
        results.append(("nondegenerate", type(e).__name__, False))
    results.append(("positivity", "strictly positive weight exists", has_positive_point(t)))
    for name, detail, passed in results:
        print(f"{name}: {detail} {'PASS' if passed else 'FAIL'}")
    return EXIT_OK if all(p for *_, p in results) else EXIT_FAIL


def identity_checks(max_complexity: int):
    """Yield (label, passed) for every Box-cube and step-factor check in range."""
    for g, n in surfaces(max_complexity):
        if not is_supported(g, n):
            continue
        m = build(g, n)
        if g >= 2 and n in (0, 1):
            new = add_genus(m)
            i = genus_index(m)
            coeff, _ = box_cube(i, new)
            ok = box_cube_check(i, new)
            yield f"box-cube g={g} n={n} i={i} coeff={coeff} dG-divisible={str(ok).lower()}", ok
            if new.dim <= ORACLE_MAX_DIM:
                ok = induction_step_check(m, "genus")
                yield _factor_line("genus", m, new, 4), ok
        if (g == 0 and n >= 5) or (g == 1 and n >= 2) or (g >= 2 and n >= 1):
            new_dim = m.dim + 2
            if new_dim <= ORACLE_MAX_DIM:
                ok = induction_step_check(m, "puncture")
                yield _factor_line("puncture", m, add_puncture(m), 2), ok


def _factor_line(kind, m, new, factor) -> str:
    before = volume_coefficient(m.form)
    after = volume_coefficient(new.form)
    ratio = abs(Fraction(after) / before) if before else "?"
    return f"step-{kind} g={m.g} n={m.n} -> g={new.g} n={new.n} before={before} after={after} factor={ratio} expected={factor}"


def cmd_identities(args) -> int:
    if args.max < 2:
        raise InputError("--max must be at least 2")
    failures = 0
    count = 0
    for label, ok in identity_checks(args.max):
        count += 1
        failures += not ok
        print(f"{label} {'PASS' if ok else 'FAIL'}")
    print(f"summary: checks={count} failed={failures}")
    return EXIT_OK if failures == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="thurstonvol",
        description="Exact symplectic/integral Thurston measure ratios on train-track charts.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    for name, helptext in (("ratio", "ratio for one track"), ("check", "sanity checks for one track")):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("file", nargs="?")
        sp.add_argument("--builtin", choices=sorted(catalog.BUILTINS), help="use a built-in track")

    sp = sub.add_parser("family", help="ratio for the model chart of Σ_{g,n}")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--dump-form", action="store_true", help="print the wedge terms of the form")

    sp = sub.add_parser("sweep", help="check the ratio for all surfaces up to a complexity")
    sp.add_argument("--max", type=int, required=True, help="largest 3g-3+n")

    sub.add_parser("euclid-demo", help="Euclidean covolumes of the two Σ0,4 lattices")

    sp = sub.add_parser("identities", help="Box-cube and induction-step checks")
    sp.add_argument("--max", type=int, required=True, help="largest 3g-3+n of the starting chart")
    return p


COMMANDS = {
    "ratio": cmd_ratio,
    "family": cmd_family,
    "sweep": cmd_sweep,
    "euclid-demo": cmd_euclid_demo,
    "check": cmd_check,
    "identities": cmd_identities,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
