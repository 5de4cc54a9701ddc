"""Discriminant groups of even lattices and their finite orthogonal groups.

The discriminant group of an even nondegenerate lattice L is D_L = L^v/L.
It carries the quadratic form q(x) = x^2 mod 2Z and the polar form
b(x, y) = q(x+y) - q(x) - q(y) mod 2Z.  Elements are coordinate tuples over
the elementary divisors of the Gram matrix.  Groups of isometries of small
modules are handled as permutations of the element set through a
stabilizer chain, so order, membership and orbits are exact.
"""

from fractions import Fraction

from . import intmat


def _mod2(x):
    return Fraction(x) % 2


def _unit_tuple(k, j):
    return tuple(1 if i == j else 0 for i in range(k))


class TorsionQuadModule:
    """Finite abelian group with a Q/2Z-valued quadratic form.

    An element is a tuple (c_1, ..., c_k) with c_i taken modulo orders[i];
    the orders form a divisor chain and every entry exceeds 1.  qgen holds
    q on the generators, bmat the polar form values b(g_i, g_j), both as
    rationals mod 2Z.
    """

    def __init__(self, orders, qgen, bmat, source=None, lifts=None):
        k = len(orders)
        if any(d < 2 for d in orders):
            raise ValueError("orders must all exceed 1")
        for i in range(k - 1):
            if orders[i + 1] % orders[i]:
                raise ValueError("orders must form a divisor chain")
        if len(qgen) != k or len(bmat) != k or any(len(r) != k for r in bmat):
            raise ValueError("generator data does not match orders")
        self.orders = list(orders)
        self.qgen = [_mod2(x) for x in qgen]
        self.bmat = [[_mod2(x) for x in row] for row in bmat]
        for i in range(k):
            if self.bmat[i][i] != _mod2(2 * self.qgen[i]):
                raise ValueError("polar diagonal must be 2q of the generator")
            for j in range(k):
                if self.bmat[i][j] != self.bmat[j][i]:
                    raise ValueError("polar form must be symmetric")
        self.source = source
        self.lifts = lifts
        self._snf = None
        self._elems = None
        self._eidx = None

    def __repr__(self):
        return "TorsionQuadModule(orders=%r)" % (self.orders,)

    def order(self):
        n = 1
        for d in self.orders:
            n *= d
        return n

    @property
    def is_two_elementary(self):
        return all(d == 2 for d in self.orders)

    def zero(self):
        return (0,) * len(self.orders)

    def reduce(self, x):
        if len(x) != len(self.orders):
            raise ValueError("coordinate length does not match module rank")
        return tuple(int(c) % d for c, d in zip(x, self.orders))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def elements(self):
        """All elements, in lexicographic coordinate order."""
        self._ensure_elements()
        return list(self._elems)

    def index_of(self, x):
        self._ensure_elements()
        return self._eidx[self.reduce(x)]

    def _ensure_elements(self):
        if self._elems is None:
            elems = [()]
            for d in self.orders:
                elems = [e + (c,) for e in elems for c in range(d)]
            self._elems = elems
            self._eidx = {e: i for i, e in enumerate(elems)}

    def q(self, x):
        x = self.reduce(x)
        k = len(self.orders)
        total = Fraction(0)
        for i in range(k):
            total += x[i] * x[i] * self.qgen[i]
            for j in range(i + 1, k):
                total += x[i] * x[j] * self.bmat[i][j]
        return _mod2(total)

    def b(self, x, y):
        x = self.reduce(x)
        y = self.reduce(y)
        k = len(self.orders)
        total = Fraction(0)
        for i in range(k):
            for j in range(k):
                total += x[i] * y[j] * self.bmat[i][j]
        return _mod2(total)

    def lift(self, x):
        """A representative of x in the dual lattice, in lattice coordinates."""
        if self.lifts is None:
            raise ValueError("module has no source lattice")
        x = self.reduce(x)
        n = len(self.lifts[0]) if self.lifts else 0
        out = [Fraction(0)] * n
        for c, l in zip(x, self.lifts):
            for i in range(n):
                out[i] += c * l[i]
        return out

    def dual_class(self, y):
        """Class of a dual-lattice vector given in rational lattice coordinates."""
        if self._snf is None:
            raise ValueError("module has no source lattice")
        v, diag, keep = self._snf
        g = self.source.gram
        n = self.source.rank
        w = []
        for j in range(n):
            p = Fraction(sum(Fraction(y[i]) * g[i][j] for i in range(n)))
            if p.denominator != 1:
                raise ValueError("vector is not in the dual lattice")
            w.append(p.numerator)
        full = [sum(w[i] * v[i][j] for i in range(n)) % diag[j] for j in range(n)]
        for j in range(n):
            if j not in keep and full[j]:
                raise ValueError("vector is not in the dual lattice")
        return tuple(full[j] for j in keep)


def discriminant_form(lat):
    """D_L = L^v/L with q(x) = x^2 mod 2Z, for an even lattice L.

    The module is cached on the lattice, so repeated calls return the same
    instance and induced isometries share it.
    """
    cached = getattr(lat, "_disc_form", None)
    if cached is not None:
        return cached
    if not lat.is_even:
        raise ValueError("discriminant form needs an even lattice")
    g = lat.int_gram()
    n = lat.rank
    d, u, v = intmat.smith_normal_form(g)
    diag = [d[i][i] for i in range(n)]
    keep = [i for i in range(n) if diag[i] > 1]
    orders = [diag[i] for i in keep]
    lifts = [[Fraction(u[i][j], diag[i]) for j in range(n)] for i in keep]
    qgen = [lat.inner(l, l) for l in lifts]
    bmat = [[2 * lat.inner(a, c) for c in lifts] for a in lifts]
    mod = TorsionQuadModule(orders, qgen, bmat, source=lat, lifts=lifts)
    mod._snf = (v, diag, set(keep))
    lat._disc_form = mod
    return mod


# ---------------------------------------------------------------------------
# subgroups of 2-elementary modules (F2 linear algebra on coordinate tuples)

def _f2_rref(rows, width):
    mat = [[int(x) % 2 for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                mat[i] = [(a + b) % 2 for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def _f2_kernel(rows, width):
    """Basis of {x : rows x = 0} over F2."""
    rref, pivots = _f2_rref(rows, width)
    basis = []
    for f in range(width):
        if f in pivots:
            continue
        x = [0] * width
        x[f] = 1
        for row, p in zip(rref, pivots):
            if row[f]:
                x[p] = 1
        basis.append(x)
    return basis


class Subgroup:
    """F2 subspace of a 2-elementary module, stored by a reduced basis."""

    def __init__(self, module, vectors):
        if not module.is_two_elementary:
            raise ValueError("subgroups are supported for 2-elementary modules")
        self.module = module
        width = len(module.orders)
        rref, pivots = _f2_rref([module.reduce(x) for x in vectors], width)
        self.basis = [tuple(r) for r in rref]
        self._pivots = pivots

    @property
    def dim(self):
        return len(self.basis)

    def order(self):
        return 2 ** self.dim

    def contains(self, x):
        x = list(self.module.reduce(x))
        for row, p in zip(self.basis, self._pivots):
            if x[p]:
                x = [(a + b) % 2 for a, b in zip(x, row)]
        return not any(x)

    def elements(self):
        """All members, in lexicographic coordinate order."""
        out = [self.module.zero()]
        for b in self.basis:
            out += [self.module.add(x, b) for x in out]
        return sorted(out)


def kernel_and_radical(mod):
    """(K, R, r) for a 2-elementary module.

    K = {x : 2q(x) = 0 mod 2Z}, R = K intersect K-perp under the polar
    form, and r is the element of R with q(r) = 1 mod 2Z.  When R is not
    one dimensional or carries no q = 1 element, r is None.
    """
    if not mod.is_two_elementary:
        raise ValueError("kernel/radical needs a 2-elementary module")
    k = len(mod.orders)
    row = [int(_mod2(2 * qi)) for qi in mod.qgen]
    kernel = Subgroup(mod, [tuple(x) for x in _f2_kernel([row], k)])
    bk = [[int(mod.b(x, y)) for y in kernel.basis] for x in kernel.basis]
    combos = _f2_kernel(bk, kernel.dim)
    rad_vectors = []
    for combo in combos:
        x = mod.zero()
        for c, bvec in zip(combo, kernel.basis):
            if c:
                x = mod.add(x, bvec)
        rad_vectors.append(x)
    radical = Subgroup(mod, rad_vectors)
    r = None
    if radical.dim == 1:
        cand = [x for x in radical.elements() if x != mod.zero()][0]
        if mod.q(cand) == 1:
            r = cand
    return kernel, radical, r


# ---------------------------------------------------------------------------
# isometries of a module

class FqmIsometry:
    """Endomorphism of a torsion module given by an integer matrix.

    The matrix acts on coordinate columns: (f x)_i = sum_j m[i][j] x_j,
    reduced mod orders[i].  preserves_q records whether q survives exactly;
    only q-preserving maps are admitted into groups.
    """

    def __init__(self, module, matrix):
        k = len(module.orders)
        if len(matrix) != k or any(len(r) != k for r in matrix):
            raise ValueError("matrix shape does not match module")
        self.module = module
        self.matrix = [[int(matrix[i][j]) % module.orders[i] for j in range(k)]
                       for i in range(k)]
        # well defined on g_j of order d_j: the image must die under d_j
        for i in range(k):
            for j in range(k):
                if (self.matrix[i][j] * module.orders[j]) % module.orders[i]:
                    raise ValueError("matrix does not define a homomorphism")
        self._key = tuple(tuple(r) for r in self.matrix)
        self._preserves_q = None

    @classmethod
    def identity(cls, module):
        k = len(module.orders)
        return cls(module, intmat.identity(k))

    def __eq__(self, other):
        return (isinstance(other, FqmIsometry)
                and self.module is other.module and self._key == other._key)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "FqmIsometry(%r)" % (self._key,)

    def apply(self, x):
        x = self.module.reduce(x)
        return tuple(sum(row[j] * x[j] for j in range(len(x))) % d
                     for row, d in zip(self.matrix, self.module.orders))

    def compose(self, other):
        """self after other."""
        if other.module is not self.module:
            raise ValueError("isometries live on different modules")
        prod = intmat.mat_mul(self.matrix, other.matrix)
        return FqmIsometry(self.module, prod)

    @property
    def is_identity(self):
        k = len(self.module.orders)
        return all(self.matrix[i][j] == (1 if i == j else 0)
                   for i in range(k) for j in range(k))

    @property
    def preserves_q(self):
        if self._preserves_q is None:
            mod = self.module
            k = len(mod.orders)
            gens = [_unit_tuple(k, j) for j in range(k)]
            imgs = [self.apply(g) for g in gens]
            ok = all(mod.q(imgs[j]) == mod.qgen[j] for j in range(k))
            if ok:
                ok = all(mod.b(imgs[i], imgs[j]) == mod.bmat[i][j]
                         for i in range(k) for j in range(i + 1, k))
            self._preserves_q = ok
        return self._preserves_q

    def permutation(self):
        """Action on the module elements, as a tuple over element indices."""
        mod = self.module
        elems = mod.elements()
        perm = tuple(mod.index_of(self.apply(e)) for e in elems)
        if len(set(perm)) != len(perm):
            raise ValueError("map is not invertible")
        return perm

    def order(self):
        seen = self.permutation()
        return _perm_order(seen)


def transvection(mod, u):
    """T_u : x -> x + b(u, x) u on a 2-elementary module.

    The map squares to the identity; it preserves q exactly when
    q(u) = 1 mod 2Z, which is what preserves_q will report.
    """
    if not mod.is_two_elementary:
        raise ValueError("transvections need a 2-elementary module")
    u = mod.reduce(u)
    if u == mod.zero():
        raise ValueError("transvection by zero")
    k = len(mod.orders)
    bu = [int(mod.b(u, _unit_tuple(k, j))) for j in range(k)]
    mat = [[(1 if i == j else 0) + u[i] * bu[j] for j in range(k)]
           for i in range(k)]
    return FqmIsometry(mod, mat)


def induced_disc_isometry(lat, f):
    """Action of a lattice isometry on the discriminant group of lat."""
    m = getattr(f, "matrix", f)
    g = lat.gram
    if not intmat.is_integer_matrix(m) or abs(intmat.det(m)) != 1:
        raise ValueError("map is not a lattice isometry")
    if intmat.mat_mul(intmat.transpose(m), intmat.mat_mul(g, m)) != g:
        raise ValueError("map does not preserve the Gram matrix")
    mod = discriminant_form(lat)
    k = len(mod.orders)
    cols = [mod.dual_class(intmat.mat_vec(m, l)) for l in mod.lifts]
    mat = [[cols[j][i] for j in range(k)] for i in range(k)]
    iso = FqmIsometry(mod, mat)
    assert iso.preserves_q
    return iso


# ---------------------------------------------------------------------------
# permutation machinery: deterministic stabilizer chain

def _pcompose(p, q):
    """Permutation doing q first, then p."""
    return tuple(p[x] for x in q)


def _pinverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def _perm_order(p):
    n = len(p)
    seen = [False] * n
    total = 1
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        total = total * length // _gcd(total, length)
    return total


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class _StabilizerChain:
    """Schreier-Sims chain over the points 0..n-1.

    Strong generators are stored once with the number of leading base
    points they fix; level i uses every generator fixing base[:i].  After
    construction, order() multiplies the transversal sizes and sifting
    decides membership.
    """

    def __init__(self, n, perms=()):
        self.n = n
        self.ident = tuple(range(n))
        self.base = []
        self.strong = []  # (perm, fixed_prefix_length)
        self.trans = []
        for p in perms:
            self.add(p)

    def _gens_at(self, i):
        return [p for p, lv in self.strong if lv >= i]

    def _rebuild(self, i):
        b = self.base[i]
        trans = {b: self.ident}
        queue = [b]
        gens = self._gens_at(i)
        for a in queue:
            ra = trans[a]
            for g in gens:
                c = g[a]
                if c not in trans:
                    trans[c] = _pcompose(g, ra)
                    queue.append(c)
        self.trans[i] = trans

    def _strip(self, p, start):
        for i in range(start, len(self.base)):
            rep = self.trans[i].get(p[self.base[i]])
            if rep is None:
                return p, i
            p = _pcompose(_pinverse(rep), p)
        return p, len(self.base)

    def _place(self, p, stop):
        """Record p as a strong generator fixing base[:stop]."""
        if stop == len(self.base):
            moved = min(i for i in range(self.n) if p[i] != i)
            self.base.append(moved)
            self.trans.append({moved: self.ident})
        self.strong.append((p, stop))
        return stop

    def add(self, p):
        p = tuple(p)
        if len(p) != self.n:
            raise ValueError("permutation degree mismatch")
        residue, stop = self._strip(p, 0)
        if residue == self.ident:
            return
        level = self._place(residue, stop)
        # re-verify the Schreier condition from the affected level upward
        i = level
        while i >= 0:
            self._rebuild(i)
            trans = self.trans[i]
            gens = self._gens_at(i)
            clean = True
            for a in list(trans):
                ra = trans[a]
                for g in gens:
                    rb = trans[g[a]]
                    s = _pcompose(_pinverse(rb), _pcompose(g, ra))
                    if s == self.ident:
                        continue
                    resid, where = self._strip(s, i + 1)
                    if resid == self.ident:
                        continue
                    i = self._place(resid, where)
                    clean = False
                    break
                if not clean:
                    break
            if clean:
                i -= 1

    def order(self):
        total = 1
        for t in self.trans:
            total *= len(t)
        return total

    def contains(self, p):
        residue, _ = self._strip(tuple(p), 0)
        return residue == self.ident


class FiniteIsometryGroup:
    """Group of q-preserving isometries of one torsion module.

    The group acts on the module elements; order, membership and orbits
    come from a stabilizer chain over that action.  Modules are capped in
    size since the chain enumerates element indices.
    """

    def __init__(self, module, generators, cap=1024):
        if module.order() > cap:
            raise ValueError("module too large for group enumeration")
        for g in generators:
            if g.module is not module:
                raise ValueError("generators live on different modules")
            if not g.preserves_q:
                raise ValueError("generators must preserve q")
        self.module = module
        self.generators = list(generators)
        self._perms = [g.permutation() for g in self.generators]
        self._chain = None

    def _ensure_chain(self):
        if self._chain is None:
            self._chain = _StabilizerChain(self.module.order(), self._perms)
        return self._chain

    def order(self):
        return self._ensure_chain().order()

    def contains(self, iso):
        if iso.module is not self.module:
            raise ValueError("isometry lives on a different module")
        return self._ensure_chain().contains(iso.permutation())

    def is_central(self, iso):
        p = iso.permutation()
        return all(_pcompose(p, g) == _pcompose(g, p) for g in self._perms)

    def orbits(self, subset):
        """Orbits meeting the given elements, sorted by size then content."""
        mod = self.module
        idx = [mod.index_of(x) for x in subset]
        elems = mod.elements()
        seen = set()
        out = []
        for start in idx:
            if start in seen:
                continue
            orbit = {start}
            queue = [start]
            for a in queue:
                for g in self._perms:
                    c = g[a]
                    if c not in orbit:
                        orbit.add(c)
                        queue.append(c)
            seen |= orbit
            out.append(sorted(elems[i] for i in orbit))
        return sorted(out, key=lambda o: (len(o), o[0]))

    def quotient_order(self, sub, rad):
        """Order of the induced action on sub/rad cosets.

        Every generator must preserve both subgroups; this is checked.
        """
        mod = self.module
        reps = {}
        radels = rad.elements()
        for x in sub.elements():
            key = min(mod.add(x, t) for t in radels)
            reps.setdefault(key, len(reps))
        perms = []
        for g in self.generators:
            images = []
            for key in reps:
                y = g.apply(key)
                if not sub.contains(y):
                    raise ValueError("generator does not preserve the subgroup")
                images.append(reps[min(mod.add(y, t) for t in radels)])
            perms.append(tuple(images))
        return _StabilizerChain(len(reps), perms).order()


def group_from_generators(gens, cap=1024):
    """Group generated by q-preserving isometries of one module."""
    if not gens:
        raise ValueError("need at least one generator")
    return FiniteIsometryGroup(gens[0].module, gens, cap=cap)


def full_reflection_group(mod, cap=1024):
    """Group generated by all transvections T_u with q(u) = 1 mod 2Z."""
    if not mod.is_two_elementary:
        raise ValueError("reflection groups need a 2-elementary module")
    if mod.order() > cap:
        raise ValueError("module too large for group enumeration")
    gens = [transvection(mod, u) for u in mod.elements()
            if u != mod.zero() and mod.q(u) == 1]
    return FiniteIsometryGroup(mod, gens, cap=cap)
