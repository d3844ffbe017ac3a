"""Sparse exterior algebra with exact coefficients.

A :class:`MultiVector` maps strictly increasing index tuples to nonzero
Fractions.  This engine is deliberately naive: it expands everything term by
term, which makes it a usable brute-force oracle for the Pfaffian code.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactmath import Matrix, rational_kernel, rank


class ExteriorError(ValueError):
    pass


class DimensionMismatch(ExteriorError):
    pass


class ZeroCovector(ExteriorError):
    pass


def _merge_sign(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Sign of the shuffle sorting a+b, or 0 if they share an index."""
    inversions = 0
    j = 0
    # count pairs (x in a, y in b) with x > y
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        if j < len(b) and b[j] == x:
            return 0
        inversions += j
    return -1 if inversions % 2 else 1


class MultiVector:
    __slots__ = ("dimension", "terms")

    def __init__(self, dimension: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.dimension = dimension
        clean: dict[tuple[int, ...], Fraction] = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if any(x >= y for x, y in zip(key, key[1:])):
                raise ExteriorError(f"index tuple {key} is not strictly increasing")
            if key and not (0 <= key[0] and key[-1] < dimension):
                raise ExteriorError(f"index tuple {key} out of range for dimension {dimension}")
            if c:
                clean[key] = Fraction(c)
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def basis(cls, dimension: int, i: int) -> "MultiVector":
        return cls(dimension, {(i,): Fraction(1)})

    @classmethod
    def covector(cls, coeffs: Sequence) -> "MultiVector":
        """The 1-form sum(c_i dz_i)."""
        return cls(len(coeffs), {(i,): Fraction(c) for i, c in enumerate(coeffs) if c})

    @classmethod
    def scalar(cls, dimension: int, c=1) -> "MultiVector":
        return cls(dimension, {(): Fraction(c)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiVector):
            return NotImplemented
        return self.dimension == other.dimension and self.terms == other.terms

    def __repr__(self) -> str:
        return f"MultiVector({self.dimension}, {self.terms!r})"

    def __add__(self, other: "MultiVector") -> "MultiVector":
        _check_dim(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return MultiVector(self.dimension, out)

    def __neg__(self) -> "MultiVector":
        return MultiVector(self.dimension, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "MultiVector") -> "MultiVector":
        return self + (-other)

    def scale(self, c) -> "MultiVector":
        c = Fraction(c)
        return MultiVector(self.dimension, {k: c * v for k, v in self.terms.items()})

    def __xor__(self, other: "MultiVector") -> "MultiVector":
        return wedge(self, other)

    def degrees(self) -> set[int]:
        return {len(k) for k in self.terms}


def _check_dim(a: MultiVector, b: MultiVector) -> None:
    if a.dimension != b.dimension:
        raise DimensionMismatch(f"dimensions {a.dimension} and {b.dimension} differ")


def wedge(a: MultiVector, b: MultiVector) -> MultiVector:
    _check_dim(a, b)
    out: dict[tuple[int, ...], Fraction] = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            s = _merge_sign(ka, kb)
            if s:
                key = tuple(sorted(ka + kb))
                out[key] = out.get(key, 0) + s * ca * cb
    return MultiVector(a.dimension, out)


@dataclass(frozen=True)
class TwoForm:
    """A 2-form written as a sum of coeff * du ∧ dv with u, v rational covectors."""

    dimension: int
    terms: tuple[tuple[Fraction, tuple, tuple], ...] = field(default=())

    def __post_init__(self):
        norm = []
        for coeff, u, v in self.terms:
            u = tuple(Fraction(x) for x in u)
            v = tuple(Fraction(x) for x in v)
            if len(u) != self.dimension or len(v) != self.dimension:
                raise DimensionMismatch(
                    f"covector lengths {len(u)}, {len(v)} do not match dimension {self.dimension}"
                )
            norm.append((Fraction(coeff), u, v))
        object.__setattr__(self, "terms", tuple(norm))

    def __add__(self, other: "TwoForm") -> "TwoForm":
        if self.dimension != other.dimension:
            raise DimensionMismatch("forms of different dimension")
        return TwoForm(self.dimension, self.terms + other.terms)

    def extended(self, dimension: int) -> "TwoForm":
        """Same form, pulled back along a projection onto the first coordinates."""
        pad = (Fraction(0),) * (dimension - self.dimension)
        return TwoForm(dimension, tuple((c, u + pad, v + pad) for c, u, v in self.terms))

    def without(self, index: int) -> "TwoForm":
        return TwoForm(self.dimension, self.terms[:index] + self.terms[index + 1:])


def to_skew_matrix(f: TwoForm) -> Matrix:
    """Skew matrix A with f(x, y) = xᵀ A y."""
    n = f.dimension
    A = [[Fraction(0)] * n for _ in range(n)]
    for c, u, v in f.terms:
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if vj:
                    A[i][j] += c * ui * vj
                    A[j][i] -= c * ui * vj
    return Matrix(A, cols=n)


def as_multivector(f: TwoForm) -> MultiVector:
    out = MultiVector(f.dimension)
    for c, u, v in f.terms:
        out = out + wedge(MultiVector.covector(u), MultiVector.covector(v)).scale(c)
    return out


def wedge_power(f: TwoForm, k: int) -> MultiVector:
    if k < 0:
        raise ValueError("negative power")
    w = as_multivector(f)
    out = MultiVector.scalar(f.dimension)
    for _ in range(k):
        out = wedge(out, w)
        if not out:
            break
    return out


def top_coefficient(m: MultiVector) -> Fraction:
    return m.terms.get(tuple(range(m.dimension)), Fraction(0))


def _change_basis(m: MultiVector, P: Matrix) -> MultiVector:
    """Rewrite m in new coordinates w = P⁻¹ z, i.e. substitute dz = P dw."""
    n = m.dimension
    images = [MultiVector.covector(P.row(i)) for i in range(n)]
    out = MultiVector(n)
    for key, c in m.terms.items():
        term = MultiVector.scalar(n, c)
        for i in key:
            term = wedge(term, images[i])
        out = out + term
    return out


def divides_out(m: MultiVector, covector: Sequence) -> bool:
    """True iff m = (d covector) ∧ r for some multivector r.

    Picks coordinates w with the covector as the last one, rewrites m there and
    checks that every surviving term contains dw_last.
    """
    n = m.dimension
    if len(covector) != n:
        raise DimensionMismatch("covector length does not match dimension")
    cv = [Fraction(x) for x in covector]
    if not any(cv):
        raise ZeroCovector("covector is zero")
    # new dual basis: kernel directions of the covector plus one complement direction e
    # with covector(e) = 1; write dz_i in terms of dw.
    K = rational_kernel(Matrix([cv], cols=n))
    j = next(i for i, x in enumerate(cv) if x)
    e = [Fraction(0)] * n
    e[j] = 1 / cv[j]
    basis = K.columns() + [tuple(e)]
    Q = Matrix.from_columns(basis)  # z = Q w
    assert rank(Q) == n
    # dw_last = covector exactly, since covector(kernel cols) = 0 and covector(e) = 1.
    mw = _change_basis(m, Q)
    last = n - 1
    return all(last in key for key in mw.terms)


def wedge_all(factors: Iterable[MultiVector]) -> MultiVector:
    it = iter(factors)
    out = next(it)
    for f in it:
        out = wedge(out, f)
    return out
