"""Coordinate models of the charts V(τ_{g,n}) and the two induction steps.

A model stores the Thurston form directly in the chart's coordinates, the
congruences cutting the integral lattice out of Z^coords, and the running
covectors of the two auxiliary branch families (G along the genus chain,
c along the puncture chain).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .exactmath import Matrix, hermite_columns, integer_kernel
from .exterior import (
    MultiVector,
    TwoForm,
    divides_out,
    top_coefficient,
    wedge_power,
)
from .traintrack import IntegralLattice, expected_dimension

HALF = Fraction(1, 2)
ORACLE_MAX_DIM = 14

BASE_IDS = ("S05", "S12", "S20", "S21")


class FamilyError(ValueError):
    pass


class WrongChain(FamilyError):
    pass


class UnsupportedSurface(FamilyError):
    pass


class OracleTooLarge(FamilyError):
    pass


Covector = tuple[int, ...]


@dataclass(frozen=True)
class CoordModel:
    g: int
    n: int
    coords: tuple[str, ...]
    form: TwoForm
    congruences: tuple[tuple[Covector, int], ...] = ()
    G_chain: tuple[Covector, ...] = ()  # G_1, G_2, ...; last entry is the current G
    c_chain: tuple[Covector, ...] = ()  # c_1, c_2, ...
    base: str = ""

    def __post_init__(self):
        if len(self.coords) != expected_dimension(self.g, self.n):
            raise FamilyError(f"{len(self.coords)} coordinates for Σ{self.g},{self.n}")
        if self.form.dimension != len(self.coords):
            raise FamilyError("form dimension does not match coordinates")
        for _, mod in self.congruences:
            if mod < 2:
                raise FamilyError("congruence modulus must be at least 2")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def half_dim(self) -> int:
        return self.dim // 2

    @property
    def aux_G(self) -> Covector | None:
        return self.G_chain[-1] if self.G_chain else None

    @property
    def aux_c(self) -> Covector | None:
        return self.c_chain[-1] if self.c_chain else None

    def covector(self, expr: str) -> Covector:
        return lin(self.coords, expr)


_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*([A-Za-z]\w*)")


def lin(coords: Sequence[str], expr: str) -> Covector:
    """Integer covector of a linear expression such as ``"2x1+2x2-2x3"``."""
    out = [0] * len(coords)
    pos = 0
    expr = expr.strip()
    while pos < len(expr):
        m = _TERM.match(expr, pos)
        if not m or (pos and not m.group(1)):
            raise ValueError(f"cannot parse linear expression {expr!r} at {pos}")
        sign = -1 if m.group(1) == "-" else 1
        k = int(m.group(2)) if m.group(2) else 1
        out[list(coords).index(m.group(3))] += sign * k
        pos = m.end()
    return tuple(out)


def _pad(v: Covector, dim: int) -> Covector:
    return tuple(v) + (0,) * (dim - len(v))


def _add(*parts: tuple[int, Covector]) -> Covector:
    n = len(parts[0][1])
    return tuple(sum(k * v[i] for k, v in parts) for i in range(n))


def _form(coords: Sequence[str], terms: Sequence[tuple]) -> TwoForm:
    """Terms are (coefficient, u, v) with u, v either expressions or covectors."""
    def cv(x):
        return lin(coords, x) if isinstance(x, str) else x
    return TwoForm(len(coords), tuple((Fraction(c), cv(u), cv(v)) for c, u, v in terms))


def _names(prefix: str, k: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, k + 1))


def base_model(base_id: str) -> CoordModel:
    """The four base charts, written out term by term in their native coordinates."""
    h = HALF
    if base_id == "S05":
        z = _names("z", 4)
        form = _form(z, [
            (h * 4, "z1", "z2"),
            (h * 4, "z1+z2", "z3"),
            (h * 4, "z1+z2+z3", "z4"),
        ])
        return CoordModel(0, 5, z, form, c_chain=(lin(z, "2z1+2z2+2z3+2z4"),), base="S05")
    if base_id == "S12":
        s = _names("s", 4)
        form = _form(s, [
            (h, "s1", "s2"),
            (h, "s3", "s1"),
            (h, "s2", "s3"),
            (h, "s1+s2", "s1+s3"),
            (h, "s4", "s2+s3"),
            (h, "2s1+s2+s3", "s4"),
            (h, "s2+s3-s4", "2s1+s2+s3-s4"),
        ])
        return CoordModel(1, 2, s, form, c_chain=(lin(s, "2s1+2s2+2s3-2s4"),), base="S12")
    if base_id == "S20":
        x = _names("x", 6)
        form = _form(x, [
            (h * 2, "x1", "x2"),
            (h * 2, "2x1+2x2-2x3", "x4"),
            (h * 2, "x5", "x6"),
        ])
        return CoordModel(2, 0, x, form, G_chain=(lin(x, "x1+x2-2x3"),), base="S20")
    if base_id == "S21":
        y = _names("y", 8)
        form = _form(y, [
            (h, "y1", "y2"),
            (h, "y2", "y3+y4"),
            (h, "y3+y4-y2", "y1"),
            (h * 2, "y3", "y4"),
            (h, "y3+y4", "y5"),
            (h, "y5", "y1+y2"),
            (h, "y1+y2-y5", "y3+y4-y5"),
            (h * 2, "y1+y2+y3+y4-2y5", "y6"),
            (h * 2, "y7", "y8"),
        ])
        parity = lin(y, "y1-y2+y3+y4")
        c1 = lin(y, "y1-y2+y3+y4")
        # the lattice congruence and the first puncture-chain covector coincide
        assert parity == c1
        return CoordModel(
            2, 1, y, form,
            congruences=((parity, 2),),
            G_chain=(lin(y, "y1+y2+y3+y4-2y5"),),
            c_chain=(c1,),
            base="S21",
        )
    raise ValueError(f"unknown base case {base_id!r}; expected one of {BASE_IDS}")


def genus_index(m: CoordModel) -> int:
    """Index i of the Box_i added by the next genus step."""
    return m.g - 1


def puncture_index(m: CoordModel) -> int:
    """Index k of the Δ_k added by the next puncture step."""
    if m.g == 0:
        return m.n - 4
    if m.g == 1:
        return m.n - 1
    return m.n


def box_form(i: int, m: CoordModel) -> TwoForm:
    """Box_i over the coordinates of m, which must already contain A_i..F_i."""
    if i < 1 or i > len(m.G_chain):
        raise FamilyError(f"model has no G_{i}")
    d = m.dim
    G = _pad(m.G_chain[i - 1], d)
    A, B, C, D, E, F = (lin(m.coords, f"{L}{i}") for L in "ABCDEF")
    one = lambda v: (1, v)  # noqa: E731
    AB = _add(one(A), one(B))
    GmA = _add(one(G), (-1, A))
    GmApB = _add(one(G), (-1, A), one(B))
    ABmE = _add(one(A), one(B), (-1, E))
    GmApBmE = _add(one(G), (-1, A), one(B), (-1, E))
    Gnext = _add(one(G), (2, B), (-2, E))
    h = HALF
    return TwoForm(d, (
        (h, A, B),
        (h, G, A),
        (h, B, GmA),
        (h * 2, AB, C),
        (h * 2, GmApB, D),
        (h, GmApB, E),
        (h, E, AB),
        (h, ABmE, GmApBmE),
        (h * 2, Gnext, F),
    ))


def delta_form(k: int, m: CoordModel) -> TwoForm:
    """Δ_k = 2 da∧db + dc_k∧d(a-b) over the coordinates of m."""
    if k < 1 or k > len(m.c_chain):
        raise FamilyError(f"model has no c_{k}")
    d = m.dim
    a = lin(m.coords, f"a{k}")
    b = lin(m.coords, f"b{k}")
    c = _pad(m.c_chain[k - 1], d)
    return TwoForm(d, (
        (Fraction(2), a, b),
        (Fraction(1), c, _add((1, a), (-1, b))),
    ))


def add_genus(m: CoordModel) -> CoordModel:
    """ω_{g+1,n} = ω_{g,n} + Box_{g-1} on the closed / once-punctured chain."""
    if m.g < 2 or m.n not in (0, 1) or not m.G_chain:
        raise WrongChain(f"add_genus needs a closed or once-punctured model of genus >= 2, got Σ{m.g},{m.n}")
    i = genus_index(m)
    if len(m.G_chain) != i:
        raise WrongChain("G chain out of step with genus")
    coords = m.coords + tuple(f"{L}{i}" for L in "ABCDEF")
    grown = _unchecked(m, coords, g=m.g + 1)
    box = box_form(i, grown)
    G = grown.G_chain[-1]
    B, E = lin(coords, f"B{i}"), lin(coords, f"E{i}")
    G_next = _add((1, G), (2, B), (-2, E))
    return CoordModel(
        m.g + 1, m.n, coords, grown.form + box,
        congruences=grown.congruences,
        G_chain=grown.G_chain + (G_next,),
        c_chain=grown.c_chain,
        base=m.base,
    )


def add_puncture(m: CoordModel) -> CoordModel:
    """ω_{g,n+1} = ω_{g,n} + Δ_k on the puncture chain."""
    ok = (m.g == 0 and m.n >= 5) or (m.g == 1 and m.n >= 2) or (m.g >= 2 and m.n >= 1)
    if not ok or not m.c_chain:
        raise WrongChain(f"add_puncture is not defined on Σ{m.g},{m.n} ({m.base or 'custom'} chain)")
    k = puncture_index(m)
    if len(m.c_chain) != k:
        raise WrongChain("c chain out of step with puncture count")
    coords = m.coords + (f"a{k}", f"b{k}")
    grown = _unchecked(m, coords, n=m.n + 1)
    delta = delta_form(k, grown)
    a, b = lin(coords, f"a{k}"), lin(coords, f"b{k}")
    c_next = _add((1, grown.c_chain[-1]), (-2, a), (2, b))
    return CoordModel(
        m.g, m.n + 1, coords, grown.form + delta,
        congruences=grown.congruences,
        G_chain=grown.G_chain,
        c_chain=grown.c_chain + (c_next,),
        base=m.base,
    )


def _unchecked(m: CoordModel, coords: tuple[str, ...], **changes) -> CoordModel:
    """Model with new coordinates appended, skipping the dimension check."""
    d = len(coords)
    out = object.__new__(CoordModel)
    fields = dict(
        g=m.g, n=m.n, coords=coords, form=m.form.extended(d),
        congruences=tuple((_pad(v, d), mod) for v, mod in m.congruences),
        G_chain=tuple(_pad(v, d) for v in m.G_chain),
        c_chain=tuple(_pad(v, d) for v in m.c_chain),
        base=m.base,
    )
    fields.update(changes)
    for k, v in fields.items():
        object.__setattr__(out, k, v)
    return out


def is_supported(g: int, n: int) -> bool:
    return (g == 0 and n >= 5) or (g == 1 and n >= 2) or (g >= 2 and n >= 0)


def build(g: int, n: int) -> CoordModel:
    """Walk the induction scheme from the nearest base case to Σ_{g,n}."""
    if g < 0 or n < 0:
        raise UnsupportedSurface(f"Σ{g},{n}: genus and punctures must be non-negative")
    if not is_supported(g, n):
        raise UnsupportedSurface(
            f"Σ{g},{n} is not covered: χ >= 0 surfaces are excluded and Σ0,3, Σ0,4, Σ1,1 "
            "are the three cases left outside the induction"
        )
    if g == 0:
        m = base_model("S05")
    elif g == 1:
        m = base_model("S12")
    else:
        m = base_model("S20" if n == 0 else "S21")
        while m.g < g:
            m = add_genus(m)
    while m.n < n:
        m = add_puncture(m)
    return m


def model_lattice(m: CoordModel) -> IntegralLattice:
    """Z-basis of {v in Z^coords : covector·v ≡ 0 mod modulus for every congruence}."""
    d = m.dim
    if not m.congruences:
        return IntegralLattice(d, Matrix.identity(d))
    r = len(m.congruences)
    rows = [list(v) + [mod if j == i else 0 for j in range(r)] for i, (v, mod) in enumerate(m.congruences)]
    K = integer_kernel(Matrix(rows, cols=d + r))
    proj = Matrix(([K[i, j] for j in range(K.cols)] for i in range(d)), cols=K.cols)
    return IntegralLattice(d, hermite_columns(proj))


def volume_coefficient(form: TwoForm) -> Fraction:
    """top(ω^N)/N! via the exterior engine (N = half the dimension)."""
    N = form.dimension // 2
    return top_coefficient(wedge_power(form, N)) / factorial(N)


def box_cube(i: int, m: CoordModel, box: TwoForm | None = None) -> tuple[Fraction, MultiVector]:
    """Return (coefficient of dA_i∧…∧dF_i, remainder) for Box_i³."""
    box = box if box is not None else box_form(i, m)
    cube = wedge_power(box, 3)
    key = tuple(m.coords.index(f"{L}{i}") for L in "ABCDEF")
    coeff = cube.terms.get(key, Fraction(0))
    rest = cube - MultiVector(m.dim, {key: coeff})
    return coeff, rest


def box_cube_check(i: int, m: CoordModel, box: TwoForm | None = None) -> bool:
    """Box_i³ = ±24 dA_i∧…∧dF_i + dG_i ∧ (…)."""
    coeff, rest = box_cube(i, m, box)
    if abs(coeff) != 24:
        return False
    return not rest or divides_out(rest, _pad(m.G_chain[i - 1], m.dim))


def induction_step_check(m: CoordModel, step: str) -> bool:
    """Compare top-degree volume coefficients before and after one step.

    The genus step must scale |top(ω^N)/N!| by 24/6 = 4 and the puncture step
    by 2.
    """
    if step == "genus":
        new, factor = add_genus(m), 4
    elif step == "puncture":
        new, factor = add_puncture(m), 2
    else:
        raise ValueError(f"unknown step {step!r}")
    if new.dim > ORACLE_MAX_DIM:
        raise OracleTooLarge(f"dimension {new.dim} exceeds oracle bound {ORACLE_MAX_DIM}")
    before = volume_coefficient(m.form)
    after = volume_coefficient(new.form)
    return abs(after) == abs(before) * factor


def form_terms_text(m: CoordModel) -> list[str]:
    """Human-readable wedge terms, e.g. ``1/2 d(y3+y4-y2) ^ d(y1)``."""
    return [f"{c} d({_expr(m.coords, u)}) ^ d({_expr(m.coords, v)})" for c, u, v in m.form.terms]


def _expr(coords: Sequence[str], v: Sequence) -> str:
    parts = []
    for name, k in zip(coords, v):
        if not k:
            continue
        k = Fraction(k)
        sign = "-" if k < 0 else "+"
        mag = abs(k)
        body = name if mag == 1 else f"{mag}{name}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    s = ("-" if first_sign == "-" else "") + first
    return s + "".join(f"{sg}{b}" for sg, b in parts[1:])

