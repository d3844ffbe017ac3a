"""Independent brute-force references used by the tests."""
from fractions import Fraction
from itertools import product

from thurstonvol.exactmath import Matrix, solve_rational


def perfect_matchings(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k, partner in enumerate(rest):
        for m in perfect_matchings(rest[:k] + rest[k + 1:]):
            yield [(first, partner)] + m


def _perm_sign(seq):
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def pfaffian_by_matchings(A: Matrix) -> Fraction:
    """Σ over perfect matchings of sgn(π) Π a_{i j}."""
    n = A.rows
    total = Fraction(0)
    for m in perfect_matchings(list(range(n))):
        flat = [x for pair in m for x in pair]
        term = Fraction(_perm_sign(flat))
        for i, j in m:
            term *= A[i, j]
        total += term
    return total


def gauss_rank(rows) -> int:
    """Plain Gaussian elimination rank over Q."""
    M = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[rank], M[p] = M[p], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c] != 0:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def residue_index(congruences, dim: int, modulus: int) -> int:
    """Index of {v : cov·v ≡ 0 mod modulus} in Z^dim by counting residues mod `modulus`."""
    good = sum(
        all(sum(a * b for a, b in zip(cov, v)) % mod == 0 for cov, mod in congruences)
        for v in product(range(modulus), repeat=dim)
    )
    return modulus**dim // good


def count_box_points(basis_cols, box: int) -> int:
    """Number of lattice points in the box [0, box)^d, found by membership tests."""
    d = len(basis_cols[0])
    M = Matrix.from_columns(basis_cols)
    count = 0
    for v in product(range(box), repeat=d):
        X = solve_rational(M, Matrix([[x] for x in v], cols=1))
        if X is not None and X.is_integral():
            count += 1
    return count
