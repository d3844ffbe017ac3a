"""Symplectic vs integral normalization: ratios, sweeps and the Euclidean example."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, getcontext
from fractions import Fraction

from .exactmath import Matrix, OddDimension, RankMismatch, gram_det, pfaffian
from .exterior import to_skew_matrix
from .family import CoordModel, build, is_supported, model_lattice
from .traintrack import IntegralLattice, TrainTrack, integral_lattice, parse_track, restricted_form


class NonHyperbolic(ValueError):
    pass


OK, MISMATCH, NA = "OK", "MISMATCH", "N/A"


@dataclass(frozen=True)
class RatioReport:
    source: str | tuple[int, int]
    dim: int
    pfaffian: Fraction
    expected: Fraction | None = None

    @property
    def ratio(self) -> Fraction:
        return abs(self.pfaffian)

    @property
    def verdict(self) -> str:
        if self.expected is None:
            return NA
        return OK if self.ratio == self.expected else MISMATCH

    def render(self) -> str:
        if isinstance(self.source, tuple):
            head = f"g={self.source[0]} n={self.source[1]}"
        else:
            head = f"track={self.source}"
        exp = "?" if self.expected is None else str(self.expected)
        return f"{head} dim={self.dim} pf={self.pfaffian} ratio={self.ratio} expected={exp} verdict={self.verdict}"


def ratio_of(form_matrix: Matrix, lattice: IntegralLattice | Matrix) -> Fraction:
    """|Pf(Bᵀ A B)|: covolume of the lattice under ω^N/N!."""
    B = lattice.basis if isinstance(lattice, IntegralLattice) else lattice
    return abs(Fraction(_pf_on(form_matrix, B)))


def _pf_on(A: Matrix, B: Matrix):
    if B.cols % 2:
        raise OddDimension(f"lattice rank {B.cols} is odd")
    if B.rows != A.rows:
        raise RankMismatch(f"lattice lives in Z^{B.rows}, form in dimension {A.rows}")
    if B.cols != A.rows:
        raise RankMismatch(f"lattice rank {B.cols} does not match form dimension {A.rows}")
    if B.cols == 0:
        return 1
    return pfaffian(B.T @ A @ B)


def expected_ratio(g: int, n: int) -> Fraction:
    """2^(|χ|-1) = 2^(2g+n-3) for a hyperbolic surface."""
    if 2 * g + n - 2 <= 0:
        raise NonHyperbolic(f"Σ{g},{n} has χ = {2 - 2 * g - n} >= 0")
    return Fraction(2) ** (2 * g + n - 3)


def model_report(m: CoordModel) -> RatioReport:
    A = to_skew_matrix(m.form)
    pf = Fraction(_pf_on(A, model_lattice(m).basis))
    return RatioReport((m.g, m.n), m.dim, pf, expected_ratio(m.g, m.n))


def track_report(t: TrainTrack) -> RatioReport:
    """Ratio on a track's own chart; raises DegenerateForm / OddDimension for bad charts."""
    R = restricted_form(t)
    pf = Fraction(pfaffian(R)) if R.rows else Fraction(1)
    expected = None
    if t.has_metadata:
        try:
            expected = expected_ratio(t.genus, t.punctures)
        except NonHyperbolic:
            expected = None
    return RatioReport(t.name, R.rows, pf, expected)


@dataclass(frozen=True)
class EuclidDemo:
    tau: Fraction
    tauprime: Fraction

    @property
    def distinct(self) -> bool:
        return self.tau != self.tauprime

    def approx(self, digits: int = 12) -> tuple[str, str]:
        getcontext().prec = digits
        return tuple(str((Decimal(x.numerator) / Decimal(x.denominator)).sqrt()) for x in (self.tau, self.tauprime))

    def render(self) -> str:
        return f"tau: {self.tau}  tau': {self.tauprime}  distinct: {str(self.distinct).lower()}"


def squared_covolume(t: TrainTrack) -> Fraction:
    return Fraction(gram_det(integral_lattice(t).basis))


def euclid_demo(tau: TrainTrack | None = None, tauprime: TrainTrack | None = None) -> EuclidDemo:
    """Squared Euclidean covolumes of Λ(τ) and Λ(τ') on Σ0,4."""
    from . import catalog

    tau = tau or catalog.sigma04_tau()
    tauprime = tauprime or catalog.sigma04_tauprime()
    return EuclidDemo(squared_covolume(tau), squared_covolume(tauprime))


def surfaces(max_complexity: int) -> list[tuple[int, int]]:
    """All hyperbolic (g, n) with 3g-3+n <= max_complexity, lexicographic."""
    out = []
    g = 0
    while 3 * g - 3 <= max_complexity:
        for n in range(0, max_complexity + 3 - 3 * g + 1):
            if 2 * g + n - 2 > 0:
                out.append((g, n))
        g += 1
    return out


def unsupported_cells(max_complexity: int) -> list[tuple[int, int]]:
    return [s for s in surfaces(max_complexity) if not is_supported(*s)]


def sweep(max_complexity: int) -> list[RatioReport]:
    if max_complexity < 2:
        raise ValueError("sweep needs max complexity >= 2")
    return [model_report(build(g, n)) for g, n in surfaces(max_complexity) if is_supported(g, n)]


def load_track(path) -> TrainTrack:
    with open(path, encoding="utf-8") as fh:
        return parse_track(fh.read())
