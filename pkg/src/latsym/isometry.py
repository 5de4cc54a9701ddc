"""Isometries of even lattices: orders, invariant lattices, classification.

The entry point for the rank-16 model is report(), which fingerprints an
isometry (order, discriminant action, invariant and coinvariant genus,
spinor norm, wall scan) and matches the result against the bundled class
table.  The supporting operations are usable on any integral lattice.
"""

from fractions import Fraction
from math import gcd
from pathlib import Path

from . import discform, fixtures, genus, intmat, lattice, walls


class LatticeIsometry:
    """An isometry of an integral lattice, acting on column coordinates."""

    def __init__(self, lat, matrix):
        m = [list(row) for row in matrix]
        if len(m) != lat.rank or any(len(row) != lat.rank for row in m):
            raise ValueError("matrix size does not match the lattice rank")
        if not intmat.is_integer_matrix(m):
            raise ValueError("matrix is not unimodular over the integers")
        m = intmat.to_int_matrix(m)
        if lat.rank and intmat.det(m) not in (1, -1):
            raise ValueError("matrix is not unimodular over the integers")
        g = lat.gram
        if intmat.mat_mul(intmat.transpose(m), intmat.mat_mul(g, m)) != g:
            raise ValueError("matrix does not preserve the bilinear form")
        self.lattice = lat
        self.matrix = m

    def __call__(self, x):
        return intmat.mat_vec(self.matrix, list(x))

    def __eq__(self, other):
        return (isinstance(other, LatticeIsometry)
                and self.lattice.gram == other.lattice.gram
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.matrix))

    def __repr__(self):
        return "LatticeIsometry(%s, rank %d)" % (
            self.lattice.name or "unnamed", self.lattice.rank)

    def is_identity(self):
        return self.matrix == intmat.identity(self.lattice.rank)


def make_isometry(lat, matrix):
    """Validated isometry of lat from an integer matrix (column action)."""
    return LatticeIsometry(lat, matrix)


def identity_isometry(lat):
    return LatticeIsometry(lat, intmat.identity(lat.rank))


def reflection(lat, v):
    """The reflection in v, when it preserves the lattice."""
    q = lat.square(v)
    if q == 0:
        raise ValueError("cannot reflect in an isotropic vector")
    n = lat.rank
    m = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        c = Fraction(2 * lat.inner(e, v), q)
        for i in range(n):
            m[i][j] -= c * v[i]
    if not intmat.is_integer_matrix(m):
        raise ValueError("reflection in this vector does not preserve the lattice")
    return LatticeIsometry(lat, m)


def _same_lattice(f, g):
    if f.lattice.gram != g.lattice.gram:
        raise ValueError("isometries act on different lattices")


def compose(f, g):
    """The isometry applying g first, then f."""
    _same_lattice(f, g)
    return LatticeIsometry(f.lattice, intmat.mat_mul(f.matrix, g.matrix))


def inverse(f):
    inv = intmat.frac_inverse([[Fraction(x) for x in row] for row in f.matrix])
    return LatticeIsometry(f.lattice, inv)


def conjugate(f, g):
    """g o f o g^-1; carries the mirror of a reflection through g."""
    _same_lattice(f, g)
    return compose(compose(g, f), inverse(g))


def power(f, k):
    """The k-th power of an isometry (k may be negative)."""
    if k < 0:
        return power(inverse(f), -k)
    return LatticeIsometry(f.lattice, _mat_power(f.matrix, k))


def _mat_power(m, k):
    n = len(m)
    out = intmat.identity(n)
    base = m
    while k:
        if k & 1:
            out = intmat.mat_mul(out, base)
        k >>= 1
        if k:
            base = intmat.mat_mul(base, base)
    return out


# ---------------------------------------------------------------------------
# multiplicative order

def _char_poly(m):
    """Coefficients of det(xI - M), low degree first, integers."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    mk = intmat.identity(n)
    coeffs = [Fraction(0)] * n + [Fraction(1)]
    for k in range(1, n + 1):
        mk = intmat.mat_mul(a, mk)
        c = -sum(mk[i][i] for i in range(n)) / k
        coeffs[n - k] = c
        for i in range(n):
            mk[i][i] += c
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise RuntimeError("characteristic polynomial is not integral")
        out.append(int(c))
    return out


def _poly_divmod(a, b):
    """Quotient and remainder of integer polynomials, b monic."""
    a = list(a)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 1)
    for i in range(len(a) - db - 1, -1, -1):
        c = a[i + db]
        if c:
            q[i] = c
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    r = a[:db]
    while len(r) > 1 and r[-1] == 0:
        r.pop()
    return q, r


_CYCLOTOMIC = {1: [-1, 1]}


def _cyclotomic(d):
    if d not in _CYCLOTOMIC:
        poly = [0] * d + [1]
        poly[0] = -1
        for e in range(1, d):
            if d % e == 0:
                poly, rem = _poly_divmod(poly, _cyclotomic(e))
                if any(rem):
                    raise RuntimeError("cyclotomic division left a remainder")
        _CYCLOTOMIC[d] = poly
    return _CYCLOTOMIC[d]


def _totient(d):
    out = d
    k = 2
    while k * k <= d:
        if d % k == 0:
            out -= out // k
            while d % k == 0:
                d //= k
        k += 1
    if d > 1:
        out -= out // d
    return out


def order_of(f, cap=10**6):
    """Multiplicative order of an isometry; error beyond the cap.

    The order is read off the cyclotomic factorization of the
    characteristic polynomial, then confirmed by one matrix power, so an
    infinite-order input is rejected instead of looping.
    """
    n = f.lattice.rank
    if n == 0:
        return 1
    poly = _char_poly(f.matrix)
    order = 1
    for d in range(1, 2 * n * n + 2):
        if _totient(d) > n:
            continue
        cyc = _cyclotomic(d)
        hit = False
        while len(poly) >= len(cyc):
            quo, rem = _poly_divmod(poly, cyc)
            if any(rem):
                break
            poly = quo
            hit = True
        if hit:
            order = order * d // gcd(order, d)
        if len(poly) == 1:
            break
    finite = len(poly) == 1 and _mat_power(f.matrix, order) == intmat.identity(n)
    if not finite or order > cap:
        raise ValueError("isometry order exceeds the cap of %d" % cap)
    return order


# ---------------------------------------------------------------------------
# invariant and coinvariant lattices

class Sublattice:
    """A saturated sublattice, presented by basis rows in ambient coordinates."""

    def __init__(self, ambient, rows, name=None):
        self.ambient = ambient
        self.rows = [list(r) for r in rows]
        gram = lattice.restricted_gram(ambient, self.rows)
        self.lattice = lattice.Lattice(gram, name=name)

    @property
    def rank(self):
        return len(self.rows)

    def to_ambient(self, coords):
        """Ambient vector of a coordinate tuple in the basis rows."""
        out = [0] * self.ambient.rank
        for c, row in zip(coords, self.rows):
            for i in range(self.ambient.rank):
                out[i] += c * row[i]
        return out


def invariant_coinvariant(f):
    """The fixed sublattice of f and its orthogonal complement."""
    lat = f.lattice
    delta = intmat.mat_sub(f.matrix, intmat.identity(lat.rank))
    inv_rows = intmat.kernel_basis(delta)
    coinv_rows = lattice.orthogonal_complement(lat, inv_rows)
    return (Sublattice(lat, inv_rows, name="invariant"),
            Sublattice(lat, coinv_rows, name="coinvariant"))


# ---------------------------------------------------------------------------
# real spinor norm

def _bform(g, x, y):
    n = len(g)
    out = Fraction(0)
    for i in range(n):
        xi = x[i]
        if xi:
            row = g[i]
            out += xi * sum(row[j] * y[j] for j in range(n))
    return out


def _independent_rows(rows):
    out = []
    pivots = []
    for r in rows:
        r = list(r)
        for p, j in zip(out, pivots):
            if r[j]:
                c = r[j] / p[j]
                r = [a - c * b for a, b in zip(r, p)]
        j = next((k for k, a in enumerate(r) if a), None)
        if j is not None:
            out.append(r)
            pivots.append(j)
    return out


def _orthogonal_basis(g):
    """An orthogonal basis of anisotropic vectors for a nondegenerate form."""
    n = len(g)
    rem = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    out = []
    while rem:
        v = next((w for w in rem if _bform(g, w, w) != 0), None)
        if v is None:
            w0 = rem[0]
            wj = next((w for w in rem[1:] if _bform(g, w0, w) != 0), None)
            if wj is None:
                raise RuntimeError("reflection decomposition failed")
            v = [a + b for a, b in zip(w0, wj)]
        out.append(v)
        qv = _bform(g, v, v)
        proj = []
        for w in rem:
            c = _bform(g, w, v) / qv
            proj.append([a - c * b for a, b in zip(w, v)])
        rem = _independent_rows(proj)
        if len(rem) != n - len(out):
            raise RuntimeError("reflection decomposition failed")
    return out


def in_O_plus(f):
    """Positive real spinor norm taken for the negated form.

    The sign convention puts every reflection in a negative-square vector
    inside O+ and puts -id outside it.  The decomposition into rational
    reflections aligns an orthogonal basis one vector at a time; the two
    mirrors used per step fix the vectors already aligned.
    """
    g = f.lattice.gram
    basis = _orthogonal_basis(g)
    imgs = [intmat.mat_vec(f.matrix, b) for b in basis]
    positives = 0
    for i, b in enumerate(basis):
        if imgs[i] == b:
            continue
        w = [p - q for p, q in zip(imgs[i], b)]
        if _bform(g, w, w) != 0:
            mirrors = [w]
        else:
            mirrors = [[p + q for p, q in zip(imgs[i], b)], b]
        for w in mirrors:
            qw = _bform(g, w, w)
            if qw > 0:
                positives += 1
            for j in range(i, len(basis)):
                c = 2 * _bform(g, imgs[j], w) / qw
                imgs[j] = [a - c * t for a, t in zip(imgs[j], w)]
        if imgs[i] != b:
            raise RuntimeError("reflection decomposition failed")
    return positives % 2 == 0


# ---------------------------------------------------------------------------
# discriminant action and the wall criterion

def disc_order(f):
    """Order of the action induced on the discriminant group."""
    return discform.induced_disc_isometry(f.lattice, f).order()


def exceptional_involution(model):
    """The reflection in the second A1 generator; symplectic and regular."""
    m = intmat.identity(model.rank)
    m[15][15] = -1
    return LatticeIsometry(model.lattice, m)


def _coinv_neg_def(coinv):
    if coinv.rank == 0:
        return True
    return intmat.symmetric_signature(coinv.lattice.gram) == (0, coinv.rank)


def symplectic_status(model, f):
    """(symplectic, regular, witnesses) for an isometry of the model lattice.

    Symplectic means the coinvariant lattice is negative definite and meets
    no pointlike-exceptional wall; regular additionally excludes the other
    wall classes.  Raises for isometries outside O+ (non-effective).
    """
    if f.lattice.gram != model.lattice.gram:
        raise ValueError("isometry does not act on the model lattice")
    if not in_O_plus(f):
        raise ValueError("isometry is outside O+ (non-effective)")
    _inv, coinv = invariant_coinvariant(f)
    if not _coinv_neg_def(coinv):
        return False, False, []
    if coinv.rank == 0:
        return True, True, []
    witnesses = walls.coinvariant_wall_scan(model, f)
    symplectic = not any(w.wclass in walls.PEX_CLASSES for w in witnesses)
    return symplectic, not witnesses, witnesses


# ---------------------------------------------------------------------------
# order-p nonsymplectic criterion over the real cyclotomic subfields

class _RealSubfield:
    """Q[x]/(minpoly) with isolating intervals for its real roots.

    Elements are tuples of Fractions in the power basis.  Signs at a chosen
    root are decided by interval bisection with an exact error bound; the
    zero element is recognized exactly, so every sign query terminates.
    """

    def __init__(self, minpoly, intervals):
        self.minpoly = [Fraction(c) for c in minpoly]
        self.deg = len(minpoly) - 1
        self.intervals = intervals

    def reduce(self, coeffs):
        c = [Fraction(t) for t in coeffs]
        d = self.deg
        for k in range(len(c) - 1, d - 1, -1):
            lead = c[k]
            if lead:
                for j in range(d + 1):
                    c[k - d + j] -= lead * self.minpoly[j]
            c.pop()
        while len(c) < d:
            c.append(Fraction(0))
        return tuple(c)

    def zero(self):
        return tuple([Fraction(0)] * self.deg)

    def one(self):
        return self.reduce([1])

    def from_int(self, a):
        return self.reduce([a])

    def gen(self):
        return self.reduce([0, 1])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        conv = [Fraction(0)] * (2 * self.deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        return self.reduce(conv)

    def inverse(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in the subfield")
        cols = []
        pw = self.one()
        for _ in range(self.deg):
            cols.append(self.mul(pw, a))
            pw = self.mul(pw, self.gen())
        mat = [[cols[j][i] for j in range(self.deg)] for i in range(self.deg)]
        rhs = [Fraction(1)] + [Fraction(0)] * (self.deg - 1)
        return tuple(intmat.frac_solve(mat, rhs))

    def sign(self, a, power):
        """Sign of a at the real root isolated by the given interval."""
        if not any(a):
            return 0
        if self.deg == 1:
            return 1 if a[0] > 0 else -1
        lo, hi = (Fraction(t) for t in self.intervals[power])
        big = max(abs(lo), abs(hi), Fraction(1))
        slope = sum(abs(c) * k * big ** (k - 1) for k, c in enumerate(a) if k)
        while True:
            mid = (lo + hi) / 2
            val = _poly_eval(a, mid)
            if abs(val) > slope * (hi - lo) / 2:
                return 1 if val > 0 else -1
            fmid = _poly_eval(self.minpoly, mid)
            if fmid == 0:
                raise RuntimeError("isolating interval hit a rational root")
            if _poly_eval(self.minpoly, lo) * fmid < 0:
                hi = mid
            else:
                lo = mid


def _poly_eval(coeffs, x):
    out = Fraction(0)
    for c in reversed(list(coeffs)):
        out = out * x + c
    return out


_REAL_SUBFIELD = {
    2: ([2, 1], None),
    3: ([1, 1], None),
    5: ([-1, 1, 1], {1: (0, 1), 2: (-2, -1)}),
    7: ([-1, -2, 1, 1], {1: (1, 2), 2: (-1, 0), 3: (-2, -1)}),
}


def _field_kernel(field, mat):
    """Right kernel basis of a square matrix over the subfield."""
    m = [list(row) for row in mat]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivot_cols = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if any(m[i][c])), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inverse(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(nr):
            if i != r and any(m[i][c]):
                lead = m[i][c]
                m[i] = [field.sub(x, field.mul(lead, y)) for x, y in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == nr:
            break
    basis = []
    for c in range(nc):
        if c in pivot_cols:
            continue
        v = [field.zero()] * nc
        v[c] = field.one()
        for i, pc in enumerate(pivot_cols):
            v[pc] = field.neg(m[i][c])
        basis.append(v)
    return basis


def _field_diag_signs(field, b, power):
    """Signs of a congruence diagonalization of b at the chosen root."""
    a = [row[:] for row in b]
    n = len(a)
    signs = []
    for k in range(n):
        if not any(a[k][k]):
            j = next((t for t in range(k + 1, n) if any(a[t][t])), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((t for t in range(k + 1, n) if any(a[k][t])), None)
                if j is None:
                    signs.append(0)
                    continue
                for t in range(n):
                    a[k][t] = field.add(a[k][t], a[j][t])
                for t in range(n):
                    a[t][k] = field.add(a[t][k], a[t][j])
        dinv = field.inverse(a[k][k])
        for i in range(k + 1, n):
            if any(a[i][k]):
                c = field.mul(a[i][k], dinv)
                a[i] = [field.sub(x, field.mul(c, y)) for x, y in zip(a[i], a[k])]
                for t in range(n):
                    a[t][i] = field.sub(a[t][i], field.mul(c, a[t][k]))
        signs.append(field.sign(a[k][k], power))
    return signs


def _cos_kernel_signature(f, p, pw):
    """Real signature of ker(f + f^-1 - 2cos(2 pi pw / p)) as a quadratic space."""
    field = _RealSubfield(*_REAL_SUBFIELD[p])
    lat = f.lattice
    n = lat.rank
    s = intmat.mat_add(f.matrix, inverse(f).matrix)
    gen = field.gen()
    a = [[field.from_int(s[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        a[i][i] = field.sub(a[i][i], gen)
    ker = _field_kernel(field, a)
    if not ker:
        return 0, 0
    g = lat.gram
    gk = []
    for v in ker:
        img = []
        for i in range(n):
            acc = field.zero()
            for j in range(n):
                if g[i][j]:
                    acc = field.add(acc, field.mul(field.from_int(g[i][j]), v[j]))
            img.append(acc)
        gk.append(img)
    b = [[None] * len(ker) for _ in ker]
    for i, v in enumerate(ker):
        for j in range(i, len(ker)):
            acc = field.zero()
            for t in range(n):
                if any(v[t]):
                    acc = field.add(acc, field.mul(v[t], gk[j][t]))
            b[i][j] = acc
            b[j][i] = acc
    signs = _field_diag_signs(field, b, pw)
    return signs.count(1), signs.count(-1)


def nonsymplectic_prime_profile(f, p):
    """Order-p nonsymplectic criterion at each primitive cosine value.

    Maps k to the result obtained by evaluating at 2cos(2 pi k / p), for
    k = 1 .. (p-1)/2; the values for k and p-k coincide.
    """
    if p not in _REAL_SUBFIELD:
        raise ValueError("p must be one of 2, 3, 5, 7")
    if order_of(f) != p:
        raise ValueError("isometry does not have order %d" % p)
    inv, _coinv = invariant_coinvariant(f)
    if inv.rank == 0:
        inv_ok = False
    else:
        inv_ok = intmat.symmetric_signature(inv.lattice.gram)[0] == 1
    out = {}
    for pw in range(1, p // 2 + 1):
        pos, _neg = _cos_kernel_signature(f, p, pw)
        out[pw] = inv_ok and pos == 2
    return out


def nonsymplectic_prime_check(f, p):
    """True iff the invariant lattice has signature (1,*) and the cosine
    kernel at 2cos(2 pi / p) has signature (2,*)."""
    return nonsymplectic_prime_profile(f, p)[1]


# ---------------------------------------------------------------------------
# classification report

_REPORT_FIELDS = (
    "order", "disc_order", "inv_genus", "coinv_genus", "in_O_plus",
    "coinv_neg_def", "symplectic", "regular", "exceptional",
    "coinv_generator_divisibility", "type_letter", "table_row")


class IsometryReport:
    """Classification fingerprint of an isometry of the model lattice."""

    def __init__(self, witnesses, **fields):
        for name in _REPORT_FIELDS:
            setattr(self, name, fields.pop(name))
        if fields:
            raise TypeError("unexpected report fields: %s" % sorted(fields))
        self.witnesses = list(witnesses)

    def as_dict(self):
        out = {name: getattr(self, name) for name in _REPORT_FIELDS}
        out["witnesses"] = [w.as_dict() for w in self.witnesses]
        return out


_D10_2_SYMBOL = None


def _d10_2_symbol():
    global _D10_2_SYMBOL
    if _D10_2_SYMBOL is None:
        _D10_2_SYMBOL = genus.genus_symbol(lattice.rescale(lattice.root_D(10), 2))
    return _D10_2_SYMBOL


def _fixture_rows(fixture):
    if fixture is None:
        return fixtures.load_table()
    if isinstance(fixture, (str, Path)):
        return fixtures.load_table(fixture)
    return list(fixture)


def _genus_matches(text, sym):
    if text is None or sym is None:
        return (text is None) == (sym is None)
    return genus.genus_equal(genus.parse_genus(text), sym)


def _match_row(rows, order, dorder, regular, inv_sym, coinv_sym):
    for row in rows:
        if row["order"] != order or row["disc_order"] != dorder:
            continue
        if bool(row["regular"]) != regular:
            continue
        if not _genus_matches(row["invariant_genus"], inv_sym):
            continue
        if not _genus_matches(row["coinvariant_genus"], coinv_sym):
            continue
        return row
    return None


def _type_letter(row, order, regular, coinv_sym):
    # Precedence matters: irregular beats everything, the order-two class
    # with coinvariant D10(2) beats the generic letters.
    if not regular:
        return "a"
    if order == 2 and coinv_sym is not None and genus.genus_equal(
            coinv_sym, _d10_2_symbol()):
        return "e"
    if order % 5 == 0:
        return "d"
    if row["type"] == "twist":
        return "c"
    if row["type"] in ("K3", "K3[2]"):
        return "b"
    raise ValueError("table row %d carries no realization type" % row["no"])


def report(model, f, fixture=None):
    """Full fingerprint of an isometry, matched against the class table.

    Symplectic isometries must match a table row; no match raises, since
    the table claims to be complete.  Non-symplectic ones get the type
    letter "non-symplectic" and no row.
    """
    if f.lattice.gram != model.lattice.gram:
        raise ValueError("isometry does not act on the model lattice")
    order = order_of(f)
    dorder = disc_order(f)
    inv, coinv = invariant_coinvariant(f)
    inv_sym = genus.genus_symbol(inv.lattice) if inv.rank else None
    coinv_sym = genus.genus_symbol(coinv.lattice) if coinv.rank else None
    oplus = in_O_plus(f)
    neg_def = _coinv_neg_def(coinv)
    witnesses = walls.coinvariant_wall_scan(model, f) if neg_def else []
    symplectic = (oplus and neg_def
                  and not any(w.wclass in walls.PEX_CLASSES for w in witnesses))
    regular = symplectic and not witnesses
    exceptional = (order == 2 and coinv.rank == 1
                   and coinv.lattice.gram == [[-2]])
    gen_div = (model.lattice.divisibility(coinv.rows[0])
               if coinv.rank == 1 else None)
    table_row = None
    if symplectic:
        rows = _fixture_rows(fixture)
        row = _match_row(rows, order, dorder, regular, inv_sym, coinv_sym)
        if row is None:
            raise ValueError(
                "no table row matches this symplectic isometry (outside table)")
        table_row = row["no"]
        type_letter = _type_letter(row, order, regular, coinv_sym)
    else:
        type_letter = "non-symplectic"
    return IsometryReport(
        witnesses,
        order=order,
        disc_order=dorder,
        inv_genus=genus.canonical_string(inv_sym) if inv_sym else None,
        coinv_genus=genus.canonical_string(coinv_sym) if coinv_sym else None,
        in_O_plus=oplus,
        coinv_neg_def=neg_def,
        symplectic=symplectic,
        regular=regular,
        exceptional=exceptional,
        coinv_generator_divisibility=gen_div,
        type_letter=type_letter,
        table_row=table_row,
    )


# ---------------------------------------------------------------------------
# JSON interchange

def isometry_to_json(f):
    """Plain-dict form; the standard lattice is referenced by name."""
    model = lattice.standard_model()
    if f.lattice.gram == model.lattice.gram:
        lat_out = "Lambda"
    else:
        lat_out = lattice.lattice_to_json(f.lattice)
    return {"lattice": lat_out, "matrix": [list(row) for row in f.matrix]}


def isometry_from_json(data):
    """Inverse of isometry_to_json; validates the matrix on load."""
    if "matrix" not in data:
        raise ValueError("isometry data needs a matrix field")
    ref = data.get("lattice", "Lambda")
    if ref == "Lambda":
        lat = lattice.standard_model().lattice
    elif isinstance(ref, dict):
        lat = lattice.lattice_from_json(ref)
    else:
        raise ValueError("unknown lattice reference %r" % (ref,))
    return make_isometry(lat, data["matrix"])
