"""Combinatorial train tracks, their weight spaces and the Thurston form."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from collections import Counter
from fractions import Fraction

from .exactmath import Matrix, OddDimension, integer_kernel, pfaffian, rational_kernel
from .exterior import TwoForm, to_skew_matrix


class TrackError(ValueError):
    pass


class TrackSyntaxError(TrackError):
    pass


class UnknownBranch(TrackError):
    pass


class EndpointCountViolation(TrackError):
    pass


class NonTrivalentSwitch(TrackError):
    pass


class DimensionMismatch(TrackError):
    pass


class DegenerateForm(TrackError):
    pass


@dataclass(frozen=True)
class Switch:
    """A switch: ``pair`` is the ordered two-branch side (s1, s2), ``single`` the other side.

    Both sides are stored as tuples so that non-trivalent switches can still be
    parsed; the form code rejects them.
    """

    pair: tuple[str, ...]
    single: tuple[str, ...]

    @property
    def slots(self) -> tuple[str, ...]:
        return self.pair + self.single

    @property
    def trivalent(self) -> bool:
        return len(self.pair) == 2 and len(self.single) == 1

    def reversed(self) -> "Switch":
        return Switch(self.pair[::-1], self.single)


@dataclass(frozen=True)
class TrainTrack:
    name: str
    branches: tuple[str, ...]
    switches: tuple[Switch, ...]
    genus: int | None = None
    punctures: int | None = None

    def __post_init__(self):
        if len(set(self.branches)) != len(self.branches):
            dup = [b for b, k in Counter(self.branches).items() if k > 1]
            raise TrackError(f"duplicate branch names: {dup}")
        known = set(self.branches)
        ends = Counter()
        for k, s in enumerate(self.switches):
            for b in s.slots:
                if b not in known:
                    raise UnknownBranch(f"switch {k} references unknown branch {b!r}")
            ends.update(s.slots)
        # a branch touching no switch is a closed loop component
        bad = {b: ends[b] for b in self.branches if ends[b] not in (0, 2)}
        if bad:
            raise EndpointCountViolation(
                "each branch needs exactly two ends (or none, for a loop), got " + ", ".join(f"{b}:{n}" for b, n in bad.items())
            )

    @property
    def has_metadata(self) -> bool:
        return self.genus is not None and self.punctures is not None

    def index(self, branch: str) -> int:
        return self.branches.index(branch)

    def with_switch(self, k: int, switch: Switch) -> "TrainTrack":
        sw = list(self.switches)
        sw[k] = switch
        return TrainTrack(self.name, self.branches, tuple(sw), self.genus, self.punctures)


_TOP_KEYS = {"name", "genus", "punctures", "branches", "switches"}
_SWITCH_KEYS = {"pair", "single"}


def parse_track(text: str) -> TrainTrack:
    """Parse the JSON track format into a validated :class:`TrainTrack`."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise TrackSyntaxError(f"line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise TrackSyntaxError("top level must be an object")
    extra = set(data) - _TOP_KEYS
    if extra:
        raise TrackSyntaxError(f"unknown keys: {sorted(extra)}")
    for key in ("name", "branches", "switches"):
        if key not in data:
            raise TrackSyntaxError(f"missing key {key!r}")
    name = data["name"]
    if not isinstance(name, str):
        raise TrackSyntaxError("'name' must be a string")
    meta = {}
    for key in ("genus", "punctures"):
        v = data.get(key)
        if v is not None and (not isinstance(v, int) or isinstance(v, bool) or v < 0):
            raise TrackSyntaxError(f"{key!r} must be a non-negative integer")
        meta[key] = v
    branches = data["branches"]
    if not isinstance(branches, list) or not all(isinstance(b, str) and b for b in branches):
        raise TrackSyntaxError("'branches' must be a list of non-empty strings")
    switches = []
    raw = data["switches"]
    if not isinstance(raw, list):
        raise TrackSyntaxError("'switches' must be a list")
    for k, s in enumerate(raw):
        if not isinstance(s, dict):
            raise TrackSyntaxError(f"switch {k} must be an object")
        extra = set(s) - _SWITCH_KEYS
        if extra:
            raise TrackSyntaxError(f"switch {k}: unknown keys {sorted(extra)}")
        if set(s) != _SWITCH_KEYS:
            raise TrackSyntaxError(f"switch {k}: needs 'pair' and 'single'")
        pair, single = s["pair"], s["single"]
        if isinstance(single, str):
            single = [single]
        if not (isinstance(pair, list) and all(isinstance(b, str) for b in pair)):
            raise TrackSyntaxError(f"switch {k}: 'pair' must be a list of branch names")
        if not (isinstance(single, list) and all(isinstance(b, str) for b in single)):
            raise TrackSyntaxError(f"switch {k}: 'single' must be a branch name")
        sw = Switch(tuple(pair), tuple(single))
        if not sw.trivalent:
            raise NonTrivalentSwitch(f"switch {k} has {len(pair)}+{len(single)} slots")
        switches.append(sw)
    return TrainTrack(name, tuple(branches), tuple(switches), meta["genus"], meta["punctures"])


def dump_track(t: TrainTrack) -> str:
    """Serialize to the track file format, one switch per line."""
    head = {"name": t.name}
    if t.genus is not None:
        head["genus"] = t.genus
    if t.punctures is not None:
        head["punctures"] = t.punctures
    lines = ["{"]
    lines += [f"  {json.dumps(k)}: {json.dumps(v, ensure_ascii=False)}," for k, v in head.items()]
    lines.append(f'  "branches": {json.dumps(list(t.branches), ensure_ascii=False)},')
    lines.append('  "switches": [')
    sw = []
    for s in t.switches:
        single = s.single[0] if len(s.single) == 1 else list(s.single)
        sw.append(f'    {{"pair": {json.dumps(list(s.pair), ensure_ascii=False)}, '
                  f'"single": {json.dumps(single, ensure_ascii=False)}}}')
    lines.append(",\n".join(sw))
    lines += ["  ]", "}"]
    return "\n".join(x for x in lines if x) + "\n"


def switch_matrix(t: TrainTrack) -> Matrix:
    """Switch conditions, one row per switch: pair side minus single side."""
    rows = []
    for s in t.switches:
        row = [0] * len(t.branches)
        for b in s.pair:
            row[t.index(b)] += 1
        for b in s.single:
            row[t.index(b)] -= 1
        rows.append(row)
    return Matrix(rows, cols=len(t.branches))


def expected_dimension(g: int, n: int) -> int:
    return 6 * g - 6 + 2 * n


@dataclass(frozen=True)
class WeightSpace:
    ambient_dim: int
    basis: Matrix

    @property
    def dim(self) -> int:
        return self.basis.cols


@dataclass(frozen=True)
class IntegralLattice:
    ambient_dim: int
    basis: Matrix = field(repr=False)

    @property
    def rank(self) -> int:
        return self.basis.cols


def weight_space(t: TrainTrack) -> WeightSpace:
    B = rational_kernel(switch_matrix(t))
    if t.has_metadata and B.cols != expected_dimension(t.genus, t.punctures):
        raise DimensionMismatch(
            f"{t.name}: dim W = {B.cols}, expected 6g-6+2n = {expected_dimension(t.genus, t.punctures)}"
        )
    return WeightSpace(len(t.branches), B)


def integral_lattice(t: TrainTrack) -> IntegralLattice:
    return IntegralLattice(len(t.branches), integer_kernel(switch_matrix(t)))


def thurston_form(t: TrainTrack) -> TwoForm:
    """½ Σ ds1 ∧ ds2 over switches, in branch coordinates."""
    n = len(t.branches)
    half = Fraction(1, 2)
    terms = []
    for k, s in enumerate(t.switches):
        if not s.trivalent:
            raise NonTrivalentSwitch(f"switch {k} is not trivalent")
        u = [0] * n
        v = [0] * n
        u[t.index(s.pair[0])] = 1
        v[t.index(s.pair[1])] = 1
        terms.append((half, tuple(u), tuple(v)))
    return TwoForm(n, tuple(terms))


def restricted_form(t: TrainTrack, lattice: IntegralLattice | None = None) -> Matrix:
    """Gram matrix of the Thurston form on a Z-basis of the integral lattice."""
    B = (lattice or integral_lattice(t)).basis
    if B.cols % 2:
        raise OddDimension(f"{t.name}: weight space has odd dimension {B.cols}")
    R = B.T @ to_skew_matrix(thurston_form(t)) @ B
    if R.rows and pfaffian(R) == 0:
        raise DegenerateForm(f"{t.name}: Thurston form is degenerate on W")
    return R


def has_positive_point(t: TrainTrack) -> bool:
    """Does W contain a vector with every branch weight strictly positive?"""
    B = rational_kernel(switch_matrix(t))
    return strictly_feasible([list(B.row(i)) for i in range(B.rows)])


def strictly_feasible(rows: list[list]) -> bool:
    """Decide whether some x has r·x > 0 for every row r (Fourier–Motzkin, exact).

    For a homogeneous strict system, elimination of all variables leaves only
    ``0 > 0`` rows, so the system is feasible iff nothing survives.
    """
    if not rows:
        return True
    cons = {_normalize(r) for r in rows}
    nvars = len(rows[0])
    for j in range(nvars):
        pos = [r for r in cons if r[j] > 0]
        neg = [r for r in cons if r[j] < 0]
        zero = [r for r in cons if r[j] == 0]
        new = set(zero)
        for p, q in ((p, q) for p in pos for q in neg):
            # p/p_j + q/|q_j| removes variable j and stays strict
            new.add(_normalize([a / p[j] - b / q[j] for a, b in zip(p, q)]))
        cons = new
        if any(not any(r) for r in cons):
            return False
    return not cons


def _normalize(r) -> tuple:
    r = [Fraction(x) for x in r]
    lead = next((abs(x) for x in r if x), None)
    return tuple(r) if lead is None else tuple(x / lead for x in r)


def orientation_sensitive_switches(t: TrainTrack) -> list[int]:
    """Indices of switches whose two pair branches are distinct."""
    return [k for k, s in enumerate(t.switches) if s.trivalent and s.pair[0] != s.pair[1]]

