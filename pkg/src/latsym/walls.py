"""Short vectors in definite lattices and wall membership tests.

Wall vectors in the standard rank-16 model fall into four classes, keyed by
square and divisibility: PEX2 (square -2, div 1), PEX4 (square -4, div 2),
WALL6 (square -6, div 2) and WALL12 (square -12, div 2, with the six
coordinates of the scaled hyperbolic blocks all even).  The first two form
the pointlike-exceptional set; all four together form the full wall set.
"""

from fractions import Fraction
from math import ceil, floor, isqrt

from . import intmat, lattice

PEX2 = "PEX2"
PEX4 = "PEX4"
WALL6 = "WALL6"
WALL12 = "WALL12"
PEX_CLASSES = (PEX2, PEX4)


class WallWitness:
    """A wall vector with its square, divisibility and class."""

    __slots__ = ("vector", "square", "divisibility", "wclass")

    def __init__(self, vector, square, divisibility, wclass):
        self.vector = tuple(vector)
        self.square = square
        self.divisibility = divisibility
        self.wclass = wclass

    def __eq__(self, other):
        return (isinstance(other, WallWitness)
                and self.vector == other.vector
                and self.wclass == other.wclass)

    def __hash__(self):
        return hash((self.vector, self.wclass))

    def __repr__(self):
        return "WallWitness(%s, square=%d, div=%d, %s)" % (
            list(self.vector), self.square, self.divisibility, self.wclass)

    def as_dict(self):
        return {
            "vector": list(self.vector),
            "square": self.square,
            "divisibility": self.divisibility,
            "class": self.wclass,
        }


def _ldl(a):
    """Exact LDL data of a positive definite symmetric matrix.

    Returns (d, l) with Q(x) = sum_i d[i] * (x[i] + sum_{j>i} l[i][j] x[j])^2.
    Raises when the matrix is not positive definite.
    """
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    d = [Fraction(0)] * n
    l = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if m[i][i] <= 0:
            raise ValueError("form is not positive definite")
        d[i] = m[i][i]
        for j in range(i + 1, n):
            l[i][j] = m[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                m[j][k] -= d[i] * l[i][j] * l[i][k]
    return d, l


def _coeff_range(c, r):
    """Integers x with (x + c)^2 <= r, given exact rationals c and r >= 0."""
    num, den = r.numerator, r.denominator
    s = Fraction(isqrt(num * den) + 1, den)  # s >= sqrt(r)
    return range(ceil(-c - s), floor(-c + s) + 1)


def short_vectors(lat_or_gram, n):
    """All x with <x, x> = n in a negative definite lattice, up to sign.

    One representative per antipodal pair, the one whose first nonzero
    coordinate is positive; output sorted lexicographically.
    """
    gram = lat_or_gram.gram if hasattr(lat_or_gram, "gram") else lat_or_gram
    rank = len(gram)
    if n >= 0:
        raise ValueError("target square must be negative")
    if rank == 0:
        return []
    d, l = _ldl([[-x for x in row] for row in gram])
    target = -n
    out = []
    x = [0] * rank

    def descend(i, remaining):
        if i < 0:
            if remaining == 0:
                for c in x:
                    if c > 0:
                        out.append(tuple(x))
                        return
                    if c < 0:
                        return
            return
        c = sum(l[i][j] * x[j] for j in range(i + 1, rank))
        for xi in _coeff_range(c, Fraction(remaining) / d[i]):
            used = d[i] * (xi + c) ** 2
            if used <= remaining:
                x[i] = xi
                descend(i - 1, remaining - used)
        x[i] = 0

    descend(rank - 1, Fraction(target))
    return sorted(out)


def wall_class(model, x):
    """Classify a nonzero lattice vector as a wall, or return None.

    The WALL12 condition restricts the vector to the three scaled
    hyperbolic blocks: those six coordinates must all be even, which is
    membership of that component in twice the block sublattice.
    """
    if not any(x):
        raise ValueError("the zero vector is not a wall")
    lat = model.lattice
    square = lat.square(x)
    div = lat.divisibility(x)
    if square == -2 and div == 1:
        return WallWitness(x, square, div, PEX2)
    if square == -4 and div == 2:
        return WallWitness(x, square, div, PEX4)
    if square == -6 and div == 2:
        return WallWitness(x, square, div, WALL6)
    if square == -12 and div == 2 and all(c % 2 == 0 for c in x[:6]):
        return WallWitness(x, square, div, WALL12)
    return None


def coinvariant_wall_scan(model, f, pex_only=False):
    """Wall witnesses inside the coinvariant lattice of an isometry.

    Enumerates coinvariant vectors of the wall squares and classifies them
    in the ambient lattice; an empty list means the wall condition holds.
    Raises when the coinvariant lattice is not negative definite.
    """
    lat = model.lattice
    m = getattr(f, "matrix", f)
    if intmat.mat_mul(intmat.transpose(m), intmat.mat_mul(lat.gram, m)) != lat.gram:
        raise ValueError("map does not preserve the Gram matrix")
    delta = intmat.mat_sub(m, intmat.identity(lat.rank))
    inv_rows = intmat.kernel_basis(delta)
    coinv_rows = lattice.orthogonal_complement(lat, inv_rows)
    if not coinv_rows:
        return []
    gc = lattice.restricted_gram(lat, coinv_rows)
    if intmat.symmetric_signature(gc) != (0, len(coinv_rows)):
        raise ValueError("coinvariant lattice is not negative definite")
    targets = (-2, -4) if pex_only else (-2, -4, -6, -12)
    witnesses = []
    for t in targets:
        for coords in short_vectors(gc, t):
            ambient = [0] * lat.rank
            for c, row in zip(coords, coinv_rows):
                for i in range(lat.rank):
                    ambient[i] += c * row[i]
            w = wall_class(model, ambient)
            if w is not None:
                witnesses.append(w)
    return witnesses
