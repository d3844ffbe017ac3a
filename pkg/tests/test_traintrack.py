import random
from fractions import Fraction
from pathlib import Path

import pytest
from scipy.optimize import linprog

from thurstonvol import catalog
from thurstonvol.exactmath import Matrix, OddDimension, pfaffian, rank, sublattice_index
from thurstonvol.exterior import to_skew_matrix
from thurstonvol.family import base_model, model_lattice
from thurstonvol.traintrack import (
    DegenerateForm,
    DimensionMismatch,
    EndpointCountViolation,
    NonTrivalentSwitch,
    Switch,
    TrackSyntaxError,
    TrainTrack,
    UnknownBranch,
    dump_track,
    has_positive_point,
    integral_lattice,
    orientation_sensitive_switches,
    parse_track,
    restricted_form,
    strictly_feasible,
    switch_matrix,
    thurston_form,
    weight_space,
)

from conftest import random_unimodular

TRACKS = Path(__file__).resolve().parent.parent / "tracks"

TAU_TEXT = """{
  "name": "tau", "genus": 0, "punctures": 4,
  "branches": ["a", "b", "c", "a'", "b'", "c'"],
  "switches": [
    {"pair": ["b", "c'"], "single": "a"},
    {"pair": ["b'", "c"], "single": "a"},
    {"pair": ["b", "c"], "single": "a'"},
    {"pair": ["b'", "c'"], "single": "a'"}
  ]
}"""


def toy(pairs, name="toy", g=None, n=None, branches=None):
    sw = tuple(Switch((a, b), (c,)) for a, b, c in pairs)
    if branches is None:
        branches = sorted({x for s in sw for x in s.slots})
    return TrainTrack(name, tuple(branches), sw, g, n)


def test_parse_tau():
    t = parse_track(TAU_TEXT)
    assert len(t.branches) == 6 and len(t.switches) == 4
    assert t.genus == 0 and t.punctures == 4


def test_parse_unknown_branch():
    with pytest.raises(UnknownBranch):
        parse_track(TAU_TEXT.replace('"single": "a\'"}\n  ]', '"single": "q"}\n  ]'))


def test_parse_endpoint_violation():
    text = '{"name": "x", "branches": ["x", "y"], "switches": [{"pair": ["x", "x"], "single": "x"}, {"pair": ["y", "y"], "single": "y"}]}'
    with pytest.raises(EndpointCountViolation):
        parse_track(text)


def test_parse_rejects_unknown_keys_and_bad_json():
    with pytest.raises(TrackSyntaxError, match="unknown keys"):
        parse_track('{"name": "x", "branches": [], "switches": [], "colour": 1}')
    with pytest.raises(TrackSyntaxError, match="line 2"):
        parse_track('{"name": "x",\n "branches": [,]}')
    with pytest.raises(TrackSyntaxError):
        parse_track('{"name": "x", "branches": [], "switches": [{"pair": ["a", "b"]}]}')


def test_parse_non_trivalent():
    text = '{"name": "x", "branches": ["a", "b"], "switches": [{"pair": ["a", "b", "a"], "single": "b"}]}'
    with pytest.raises(NonTrivalentSwitch):
        parse_track(text)


def test_track_files_match_builtins():
    for name, make in catalog.BUILTINS.items():
        assert parse_track((TRACKS / f"{name}.json").read_text(encoding="utf-8")) == make()


def test_dump_roundtrip():
    t = parse_track(TAU_TEXT)
    assert parse_track(dump_track(t)) == t


def test_switch_matrix_rows():
    t = catalog.sigma04_tauprime()
    M = switch_matrix(t)
    a, ap = t.index("a"), t.index("a'")
    row = M.row(0)
    assert row[a] == -1 and row[ap] == 2
    # single switch x + y - z
    loose = TrainTrack("one", ("x", "y", "z"), (Switch(("x", "y"), ("z",)),) * 2)
    assert switch_matrix(loose).row(0) == (1, 1, -1)
    empty = TrainTrack("none", ("p", "q"), ())
    assert switch_matrix(empty).shape == (0, 2)


def test_no_switch_tracks():
    loops = TrainTrack("loops", ("p", "q", "r"), ())
    assert weight_space(loops).dim == 3
    assert integral_lattice(loops).basis == Matrix.identity(3)
    empty = TrainTrack("empty", (), ())
    R = restricted_form(empty)
    assert R.shape == (0, 0) and pfaffian(R) == 1


def test_weight_space_dimensions():
    assert weight_space(catalog.sigma04_tau()).dim == 2
    assert weight_space(catalog.tau05()).dim == 4
    for name in ("tau12", "tau20", "tau21", "sigma04-tauprime"):
        t = catalog.builtin(name)
        assert weight_space(t).dim == 6 * t.genus - 6 + 2 * t.punctures


def test_weight_space_metadata_mismatch():
    t = catalog.tau05()
    bad = TrainTrack(t.name, t.branches, t.switches, 1, 2)
    assert weight_space(bad).dim == 4
    wrong = TrainTrack(t.name, t.branches, t.switches, 0, 6)
    with pytest.raises(DimensionMismatch):
        weight_space(wrong)


def test_weight_space_basis_satisfies_switches():
    for make in catalog.BUILTINS.values():
        t = make()
        W = weight_space(t)
        assert switch_matrix(t) @ W.basis == Matrix.zeros(len(t.switches), W.dim)


def test_integral_lattice_span_equals_weight_space():
    for make in catalog.BUILTINS.values():
        t = make()
        L, W = integral_lattice(t), weight_space(t)
        assert rank(L.basis.hstack(W.basis)) == L.rank == W.dim


def test_integral_lattice_tau_examples():
    known = Matrix.from_columns([(1, 1, 0, 1, 1, 0), (1, 0, 1, 1, 0, 1)])
    assert sublattice_index(integral_lattice(catalog.sigma04_tau()).basis, known) == 1
    known = Matrix.from_columns([(2, 0, 2, 1, 0, 1), (0, 2, 2, 0, 1, 1)])
    assert sublattice_index(integral_lattice(catalog.sigma04_tauprime()).basis, known) == 1


def test_thurston_form_terms():
    t = toy([("x", "y", "z"), ("x", "y", "z")])
    f = thurston_form(t)
    assert len(f.terms) == 2
    c, u, v = f.terms[0]
    assert c == Fraction(1, 2) and u == (1, 0, 0) and v == (0, 1, 0)


def test_thurston_form_self_incident_switch_is_zero():
    t = catalog.sigma04_tauprime()
    f = thurston_form(t)
    assert to_skew_matrix(type(f)(f.dimension, f.terms[:3])) == Matrix.zeros(6, 6)
    assert to_skew_matrix(f) != Matrix.zeros(6, 6)


def _raw_track(branches, switches):
    """A TrainTrack that skips endpoint validation, for hand-built toys."""
    t = object.__new__(TrainTrack)
    for k, v in dict(name="toy", branches=tuple(branches), switches=tuple(switches),
                     genus=None, punctures=None).items():
        object.__setattr__(t, k, v)
    return t


def test_thurston_form_two_switch_toy():
    # switches (p, q | r) and (r, p | s): ½ dp∧dq + ½ dr∧dp over (p, q, r, s)
    t = _raw_track("pqrs", [Switch(("p", "q"), ("r",)), Switch(("r", "p"), ("s",))])
    h = Fraction(1, 2)
    expected = Matrix([
        [0, h, -h, 0],
        [-h, 0, 0, 0],
        [h, 0, 0, 0],
        [0, 0, 0, 0],
    ])
    assert to_skew_matrix(thurston_form(t)) == expected


def test_thurston_form_rejects_non_trivalent():
    t = _raw_track("ab", [Switch(("a", "b", "a"), ("b",))])
    assert switch_matrix(t).row(0) == (2, 0)
    with pytest.raises(NonTrivalentSwitch):
        thurston_form(t)


def test_restricted_form_base_tracks():
    assert abs(pfaffian(restricted_form(catalog.tau20()))) == 2
    assert abs(pfaffian(restricted_form(catalog.tau21()))) == 4
    assert abs(pfaffian(restricted_form(catalog.tau05()))) == 4
    assert abs(pfaffian(restricted_form(catalog.tau12()))) == 2


def test_restricted_form_errors():
    # a single bigon with reversed second switch: dim 2 but zero form
    t = toy([("x", "y", "z"), ("y", "x", "z")])
    with pytest.raises(DegenerateForm):
        restricted_form(t)
    odd = toy([("x", "x", "z"), ("y", "y", "z")], branches=["x", "y", "z"])
    assert weight_space(odd).dim == 1
    with pytest.raises(OddDimension):
        restricted_form(odd)


@pytest.mark.parametrize("name", list(catalog.BASE_OF))
def test_base_tracks_realize_models(name):
    """Reading the coordinate branches identifies Λ(τ) with the model lattice and ω̃ with the model form."""
    t = catalog.builtin(name)
    m = base_model(catalog.BASE_OF[name])
    P = Matrix([[int(b == c) for b in t.branches] for c in m.coords])
    B = integral_lattice(t).basis
    PB = P @ B
    assert sublattice_index(PB, model_lattice(m).basis) == 1
    assert restricted_form(t) == PB.T @ to_skew_matrix(m.form) @ PB


def test_unimodular_invariance_of_restricted_pfaffian(rng):
    for name in catalog.BASE_OF:
        t = catalog.builtin(name)
        L = integral_lattice(t)
        A = to_skew_matrix(thurston_form(t))
        ref = abs(pfaffian(L.basis.T @ A @ L.basis))
        for _ in range(5):
            B = L.basis @ random_unimodular(rng, L.rank)
            assert abs(pfaffian(B.T @ A @ B)) == ref


def test_switch_reversal_sensitivity():
    """Flipping s1/s2 changes the restricted form exactly when the pair weights are independent on W.

    Each catalog track also has a flip that alters its Pfaffian, so pinned |Pf|
    values catch a mis-oriented catalog entry.
    """
    for name, make in catalog.BUILTINS.items():
        t = make()
        L = integral_lattice(t).basis
        R0 = L.T @ to_skew_matrix(thurston_form(t)) @ L
        pf0 = pfaffian(R0)
        pf_changed = False
        for k in orientation_sensitive_switches(t):
            t2 = t.with_switch(k, t.switches[k].reversed())
            R = L.T @ to_skew_matrix(thurston_form(t2)) @ L
            s = t.switches[k]
            u, v = L.row(t.index(s.pair[0])), L.row(t.index(s.pair[1]))
            independent = rank(Matrix([u, v])) == 2
            assert (R != R0) == independent, (name, k)
            pf_changed |= pfaffian(R) != pf0
        assert pf_changed, name


def test_has_positive_point_examples():
    t = catalog.sigma04_tau()
    assert has_positive_point(t)
    witness = (2, 1, 1, 2, 1, 1)
    assert switch_matrix(t) @ Matrix([[w] for w in witness]) == Matrix.zeros(4, 1)
    assert not strictly_feasible([[1], [-1]])
    assert not strictly_feasible([[], []])


def test_has_positive_point_kernel_one_minus_one():
    # kernel spanned by (1, -1): the branch rows are [1] and [-1]
    assert not strictly_feasible([[Fraction(1)], [Fraction(-1)]])
    # (x, x | y), (y, z | z) force x = y = 0 while z stays free
    t = toy([("x", "x", "y"), ("y", "z", "z")], branches=["x", "y", "z"])
    assert weight_space(t).dim == 1
    assert not has_positive_point(t)


def test_has_positive_point_builtins():
    for make in catalog.BUILTINS.values():
        assert has_positive_point(make())


def test_fourier_motzkin_against_linprog():
    rng = random.Random(11)
    for _ in range(60):
        k = rng.randint(1, 4)
        rows = [[rng.randint(-3, 3) for _ in range(k)] for _ in range(rng.randint(1, 6))]
        # strict homogeneous feasibility <=> some x with rows·x >= 1
        res = linprog(c=[0] * k, A_ub=[[-a for a in r] for r in rows], b_ub=[-1] * len(rows),
                      bounds=[(None, None)] * k, method="highs")
        assert strictly_feasible(rows) == (res.status == 0), rows
