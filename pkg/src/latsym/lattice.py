"""Even lattices with exact Gram arithmetic, and the standard rank-16 model.

A lattice here is a free Z-module of finite rank carrying a nondegenerate
symmetric bilinear form, stored as an exact Gram matrix (ints, or Fractions
for non-integral forms).  Vectors are coordinate lists in the lattice basis.
"""

from fractions import Fraction
from math import gcd
import re

from . import intmat


class Lattice:
    """A lattice given by its Gram matrix in a fixed basis."""

    def __init__(self, gram, name=None, blocks=None):
        n = len(gram)
        for row in gram:
            if len(row) != n:
                raise ValueError("Gram matrix must be square")
        g = [[_as_exact(x) for x in row] for row in gram]
        for i in range(n):
            for j in range(n):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        if n and intmat.frac_det(g) == 0:
            raise ValueError("Gram matrix must be nondegenerate")
        self.gram = g
        self.rank = n
        self.name = name
        # optional list of (label, rank) pairs recording a direct-sum shape
        self.blocks = blocks
        self._signature = None
        self._det = None

    def __repr__(self):
        label = self.name if self.name else "rank %d" % self.rank
        return "Lattice(%s)" % label

    @property
    def is_integral(self):
        return all(Fraction(x).denominator == 1 for row in self.gram for x in row)

    @property
    def is_even(self):
        if not self.is_integral:
            return False
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def inner(self, x, y):
        """Bilinear form value <x, y>."""
        if len(x) != self.rank or len(y) != self.rank:
            raise ValueError("vector length does not match rank")
        gx = intmat.mat_vec(self.gram, y)
        return _normalize_num(sum(a * b for a, b in zip(x, gx)))

    def square(self, x):
        return self.inner(x, x)

    def divisibility(self, x):
        """div(x): the positive generator of the ideal <x, L>, for integral L."""
        if not self.is_integral:
            raise ValueError("divisibility needs an integral lattice")
        if not any(x):
            raise ValueError("divisibility of the zero vector is undefined")
        pairings = intmat.mat_vec(self.gram, x)
        return intmat.gcd_vec(pairings)

    def signature(self):
        if self._signature is None:
            self._signature = intmat.symmetric_signature(self.gram)
        return self._signature

    def det(self):
        if self._det is None:
            d = intmat.frac_det(self.gram)
            self._det = _normalize_num(d)
        return self._det

    def dual_gram(self):
        """Gram matrix of the dual lattice in the dual basis."""
        return intmat.frac_inverse(self.gram)

    def int_gram(self):
        if not self.is_integral:
            raise ValueError("lattice is not integral")
        return intmat.to_int_matrix(self.gram)


def _as_exact(x):
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


def _normalize_num(x):
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


# ---------------------------------------------------------------------------
# standard building blocks (root lattices negative definite)

def hyperbolic():
    """U: the even unimodular hyperbolic plane."""
    return Lattice([[0, 1], [1, 0]], name="U")


def odd_plane():
    """V: the odd unimodular plane [[0,1],[1,1]]."""
    return Lattice([[0, 1], [1, 1]], name="V")


def root_A(n):
    """A_n root lattice, negative definite."""
    if n < 1:
        raise ValueError("A_n needs n >= 1")
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = 1
    return Lattice(g, name="A%d" % n)


def root_D(n):
    """D_n root lattice, negative definite (fork at the last node)."""
    if n < 2:
        raise ValueError("D_n needs n >= 2")
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    for i in range(n - 2):
        g[i][i + 1] = g[i + 1][i] = 1
    if n >= 3:
        g[n - 3][n - 1] = g[n - 1][n - 3] = 1
    return Lattice(g, name="D%d" % n)


# Node ordering: 1-3-4-5-6-7-8 chain with node 2 attached to node 4.
_E8_EDGES = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]


def root_E8():
    """E8 root lattice, negative definite, in the fixed node order above."""
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for a, b in _E8_EDGES:
        g[a - 1][b - 1] = g[b - 1][a - 1] = 1
    return Lattice(g, name="E8")


def plane_K(p):
    """Rank-2 positive definite even plane of determinant p (p odd prime)."""
    if p % 2 == 0 or p < 3:
        raise ValueError("needs an odd prime")
    return Lattice([[(p + 1) // 2, -1], [-1, 2]], name="K%d" % p)


def plane_H(p):
    """Rank-2 even plane of determinant -p (p odd prime), signature (1,1)."""
    if p % 2 == 0 or p < 3:
        raise ValueError("needs an odd prime")
    return Lattice([[(p - 1) // 2, 1], [1, -2]], name="H%d" % p)


def rescale(lat, m):
    """L(m): the same module with the form multiplied by m."""
    if m == 0:
        raise ValueError("rescale by zero")
    g = [[x * m for x in row] for row in lat.gram]
    base = lat.name or "?"
    return Lattice(g, name="%s(%d)" % (base, m))


def dual(lat):
    """L^v: the dual lattice, with its form written in the dual basis."""
    base = lat.name or "?"
    return Lattice(lat.dual_gram(), name="%sv" % base)


def dual_rescale(lat, m):
    """L^v(m): the rescaled dual."""
    g = [[x * m for x in row] for row in lat.dual_gram()]
    base = lat.name or "?"
    return Lattice(g, name="%sv(%d)" % (base, m))


def direct_sum(*lats):
    """Orthogonal direct sum, blocks in the given order."""
    total = sum(l.rank for l in lats)
    g = [[0] * total for _ in range(total)]
    off = 0
    blocks = []
    for l in lats:
        for i in range(l.rank):
            for j in range(l.rank):
                g[off + i][off + j] = l.gram[i][j]
        blocks.append((l.name or "?", l.rank))
        off += l.rank
    name = "+".join(l.name or "?" for l in lats)
    return Lattice(g, name=name, blocks=blocks)


# ---------------------------------------------------------------------------
# named lattice expressions:  "U(2)^3+E8+A1^2", "U^3+D8v(2)+A1", "K7+H7(2)"

_TERM_RE = re.compile(
    r"^(U|V|E8|A(\d+)|D(\d+)|K(\d+)|H(\d+))(v?)(?:\((-?\d+)\))?(?:\^(\d+))?$")


def _build_atom(name):
    if name == "U":
        return hyperbolic()
    if name == "V":
        return odd_plane()
    if name == "E8":
        return root_E8()
    if name.startswith("A"):
        return root_A(int(name[1:]))
    if name.startswith("D"):
        return root_D(int(name[1:]))
    if name.startswith("K"):
        return plane_K(int(name[1:]))
    if name.startswith("H"):
        return plane_H(int(name[1:]))
    raise ValueError("unknown lattice name %r" % name)


def build_named(expr):
    """Build a lattice from a direct-sum expression.

    Grammar: terms joined by "+"; a term is NAME, NAME(m), NAME^k or
    NAME(m)^k, where NAME is U, V, E8, An, Dn, Kp or Hp, optionally with a
    "v" suffix for the dual (taken before rescaling, as in "D8v(2)").
    """
    parts = [t.strip() for t in expr.replace(" ", "").split("+")]
    if not parts or not parts[0]:
        raise ValueError("empty lattice expression")
    summands = []
    for part in parts:
        m = _TERM_RE.match(part)
        if not m:
            raise ValueError("cannot parse lattice term %r" % part)
        name, take_dual, scale, mult = m.group(1), m.group(6), m.group(7), m.group(8)
        lat = _build_atom(name)
        if take_dual:
            lat = dual(lat)
        if scale is not None:
            s = int(scale)
            if take_dual:
                lat = Lattice(
                    [[x * s for x in row] for row in lat.gram],
                    name="%sv(%d)" % (name, s))
            else:
                lat = rescale(_build_atom(name), s)
        for _ in range(int(mult) if mult else 1):
            summands.append(lat)
    if len(summands) == 1:
        return summands[0]
    return direct_sum(*summands)


# ---------------------------------------------------------------------------
# sublattices of a fixed ambient lattice

def restricted_gram(lat, rows):
    """Gram matrix of the sublattice spanned by the given row vectors."""
    return [[lat.inner(r, s) for s in rows] for r in rows]


def orthogonal_complement(lat, rows):
    """Basis of {x in L : <x, r> = 0 for all r}, a saturated sublattice."""
    if not rows:
        return [list(r) for r in intmat.identity(lat.rank)]
    pair = [intmat.mat_vec(lat.gram, list(r)) for r in rows]
    frac = [[Fraction(x) for x in row] for row in pair]
    # clear denominators rowwise so the integer kernel applies
    cleared = []
    for row in frac:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        cleared.append([int(x * den) for x in row])
    return intmat.kernel_basis(cleared)


def saturate(rows):
    """Saturation of the span of the given rows inside Z^n."""
    return intmat.saturate_rows([list(r) for r in rows])


# ---------------------------------------------------------------------------
# the standard rank-16 model  U(2)^3 + E8 + A1^2

class StandardModel:
    """The fixed-basis model of the rank-16 lattice U(2)^3 + E8 + A1^2.

    Basis layout (16 coordinates):

    - 0..5: three scaled hyperbolic planes U(2); block i has its isotropic
      pair (e_i, f_i) at coordinates (2i, 2i+1), with <e_i, f_i> = 2;
    - 6..13: E8 in the fixed node order of root_E8;
    - 14, 15: the two A1 generators.

    Named vectors:

    - a1_first, a1_second: the A1 generators (square -2 each);
    - a1_sum = a1_first + a1_second (square -4, divisibility 2);
    - a1_diff = a1_first - a1_second (square -4, orthogonal to a1_sum);
    - e8_root: the first E8 basis root (square -2, divisibility 1);
    - e8_root_pair: sum of two orthogonal E8 basis roots (square -4);
    - u2_vector(i): e_1 + i f_1 in the first U(2) block (square 4i).
    """

    def __init__(self):
        self.lattice = direct_sum(
            rescale(hyperbolic(), 2), rescale(hyperbolic(), 2),
            rescale(hyperbolic(), 2), root_E8(), root_A(1), root_A(1))
        self.rank = 16
        n = self.rank
        self.named = {
            "a1_first": _unit(n, 14),
            "a1_second": _unit(n, 15),
            "a1_sum": _unit(n, 14, 15),
            "a1_diff": [1 if i == 14 else (-1 if i == 15 else 0) for i in range(n)],
            "e8_root": _unit(n, 6),
            "e8_root_pair": _unit(n, 6, 7),
        }

    def u2_vector(self, i):
        """e_1 + i f_1 in the first U(2) block; square 4i, primitive."""
        v = [0] * self.rank
        v[0] = 1
        v[1] = i
        return v

    def hyperbolic_pair(self, block):
        """The isotropic basis pair (e, f) of U(2) block 0, 1 or 2."""
        if block not in (0, 1, 2):
            raise ValueError("block must be 0, 1 or 2")
        return _unit(self.rank, 2 * block), _unit(self.rank, 2 * block + 1)

    def orbit_sample(self):
        """Six vectors, one per orbit of the monodromy wall analysis.

        Returns a list of (vector, square, divisibility) triples in a fixed
        order: three of square -4 and divisibility 2, one of square -2 and
        divisibility 2, two of square -2 and divisibility 1.
        """
        n = self.named
        u2 = self.u2_vector
        vecs = [
            u2(-1),
            n["a1_sum"],
            _lincomb((2, u2(1)), (2, n["e8_root_pair"]), (-1, n["a1_sum"])),
            n["a1_first"],
            _lincomb((1, u2(1)), (1, n["e8_root_pair"]), (-1, n["a1_first"])),
            n["e8_root"],
        ]
        lat = self.lattice
        return [(v, lat.square(v), lat.divisibility(v)) for v in vecs]


def _unit(n, *idx):
    v = [0] * n
    for i in idx:
        v[i] = 1
    return v


def _lincomb(*terms):
    n = len(terms[0][1])
    out = [0] * n
    for c, v in terms:
        for i in range(n):
            out[i] += c * v[i]
    return out


_standard = None


def standard_model():
    """The shared StandardModel instance (immutable by convention)."""
    global _standard
    if _standard is None:
        _standard = StandardModel()
    return _standard


# ---------------------------------------------------------------------------
# JSON interchange: {"name": ..., "gram": [["p/q", ...], ...], "blocks": ...}

def lattice_to_json(lat):
    """Plain-dict form of a lattice; Gram entries become fraction strings."""
    return {
        "name": lat.name,
        "gram": [[str(Fraction(x)) for x in row] for row in lat.gram],
        "blocks": [list(b) for b in lat.blocks] if lat.blocks else None,
    }


def lattice_from_json(data):
    """Inverse of lattice_to_json; accepts int or "p/q" string entries."""
    if "gram" not in data:
        raise ValueError("lattice data needs a gram field")
    gram = [[_as_exact(Fraction(x)) for x in row] for row in data["gram"]]
    blocks = data.get("blocks")
    if blocks:
        blocks = [(str(label), int(rank)) for label, rank in blocks]
    return Lattice(gram, name=data.get("name"), blocks=blocks)
