"""Genus symbols of integral lattices.

The symbol collects, for each prime p dividing 2*det, the Jordan
constituents of the form over Z_p: entries (p^scale, rank, sign), with a
type marker and an oddity at p = 2.  At p = 2 the per-scale signs and
oddities are not separately invariant; symbols are compared after a
canonicalization that walks signs and fuses oddities along chains of
adjacent scales.  Rendered symbols look like "II_(3,13)2^8_6".
"""

from fractions import Fraction
import re

from . import intmat


class Constituent:
    """One Jordan constituent: rank and sign at scale p^scale.

    kind is "I" or "II" at p = 2 and None at odd p; oddity is the trace
    invariant mod 8 at p = 2 (0 for type II) and None at odd p.
    """

    __slots__ = ("scale", "rank", "eps", "kind", "oddity")

    def __init__(self, scale, rank, eps, kind=None, oddity=None):
        self.scale = scale
        self.rank = rank
        self.eps = eps
        self.kind = kind
        self.oddity = oddity

    def key(self):
        return (self.scale, self.rank, self.eps, self.kind, self.oddity)

    def copy(self):
        return Constituent(*self.key())

    def __eq__(self, other):
        return isinstance(other, Constituent) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Constituent%r" % (self.key(),)


class GenusSymbol:
    """Signature pair plus local constituent lists keyed by prime."""

    def __init__(self, pos, neg, even, local):
        self.pos = pos
        self.neg = neg
        self.even = even
        self.local = {p: [c.copy() for c in cs] for p, cs in local.items()}
        for cs in self.local.values():
            cs.sort(key=lambda c: c.scale)

    @property
    def rank(self):
        return self.pos + self.neg

    def det(self):
        """Signed determinant reconstructed from the local data."""
        d = 1
        for p, cs in self.local.items():
            for c in cs:
                d *= p ** (c.scale * c.rank)
        return -d if self.neg % 2 else d

    def local_at(self, p):
        """Constituents at p, synthesizing the trivial symbol if absent."""
        if p in self.local:
            return self.local[p]
        if p == 2:
            raise ValueError("symbol has no 2-adic data")
        eps = _legendre_int(self.det(), p)
        return [Constituent(0, self.rank, eps)]

    def __repr__(self):
        return "GenusSymbol(%s)" % render_genus(self)


# ---------------------------------------------------------------------------
# helpers on exact numbers

def _valuation(x, p):
    f = Fraction(x)
    num, den, v = f.numerator, f.denominator, 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _unit_mod8(x):
    """x an odd 2-adic unit given as a Fraction; its class mod 8."""
    f = Fraction(x)
    return f.numerator * pow(f.denominator, -1, 8) % 8


def _legendre_int(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        raise ValueError("not a unit mod %d" % p)
    return 1 if r == 1 else -1


def _legendre(x, p):
    f = Fraction(x)
    return _legendre_int(f.numerator, p) * _legendre_int(f.denominator, p)


def _prime_factors(n):
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Jordan splitting over Z_p

def _local_pieces(gram, p):
    """Split the form over Z_p into rank-1 pieces (and even rank-2 at p=2).

    Returns (scale, kind, value) triples: kind "unit" carries the unit
    pivot / p^scale, kind "pair" the determinant / 4^scale of an even
    2x2 block.  Off-diagonal minima at odd p are moved onto the diagonal
    by a row-and-column addition; at p = 2 they force an even block.
    """
    m = [[Fraction(x) for x in row] for row in gram]
    pieces = []
    while m:
        n = len(m)
        best = None
        for i in range(n):
            for j in range(i, n):
                if m[i][j]:
                    v = _valuation(m[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            raise ValueError("degenerate form")
        v, bi, bj = best
        diag = None
        for k in range(n):
            if m[k][k] and _valuation(m[k][k], p) == v:
                diag = k
                break
        if diag is None and p != 2:
            # a_ii + 2a_ij + a_jj has valuation v exactly when p is odd
            for t in range(n):
                m[bi][t] += m[bj][t]
            for t in range(n):
                m[t][bi] += m[t][bj]
            diag = bi
        if diag is not None:
            a = m[diag][diag]
            pieces.append((v, "unit", a / p ** v))
            rest = [r for r in range(n) if r != diag]
            m = [[m[r][s] - m[r][diag] * m[diag][s] / a for s in rest]
                 for r in rest]
        else:
            a, b, c = m[bi][bi], m[bi][bj], m[bj][bj]
            det = a * c - b * b
            pieces.append((v, "pair", det / 4 ** v))
            rest = [r for r in range(n) if r not in (bi, bj)]
            new = []
            for r in rest:
                x1, x2 = m[r][bi], m[r][bj]
                row = []
                for s in rest:
                    y1, y2 = m[bi][s], m[bj][s]
                    corr = (x1 * (c * y1 - b * y2) + x2 * (a * y2 - b * y1)) / det
                    row.append(m[r][s] - corr)
                new.append(row)
            m = new
    return pieces


def _local_symbol(gram, p):
    pieces = _local_pieces(gram, p)
    by_scale = {}
    for v, kind, value in pieces:
        if v < 0:
            raise ValueError("form is not integral at %d" % p)
        by_scale.setdefault(v, []).append((kind, value))
    out = []
    for v in sorted(by_scale):
        group = by_scale[v]
        if p == 2:
            rank = sum(2 if kind == "pair" else 1 for kind, _ in group)
            d = 1
            for _, value in group:
                d = d * _unit_mod8(value) % 8
            units = [_unit_mod8(val) for kind, val in group if kind == "unit"]
            eps = 1 if d in (1, 7) else -1
            if units:
                out.append(Constituent(v, rank, eps, "I", sum(units) % 8))
            else:
                out.append(Constituent(v, rank, eps, "II", 0))
        else:
            rank = len(group)
            eps = 1
            for _, value in group:
                eps *= _legendre(value, p)
            out.append(Constituent(v, rank, eps))
    return out


def padic_jordan(lat, p):
    """Jordan constituents of an integral lattice at the prime p.

    Returns the ordered list of Constituent records for ascending scales,
    including the scale-0 unimodular part.
    """
    gram = lat.gram if hasattr(lat, "gram") else lat
    g = intmat.to_int_matrix([[Fraction(x) for x in row] for row in gram])
    if p < 2 or any(p % k == 0 for k in range(2, p)):
        raise ValueError("p must be prime")
    return _local_symbol(g, p)


def genus_symbol(lat):
    """The genus symbol of an integral lattice (or Gram matrix)."""
    gram = lat.gram if hasattr(lat, "gram") else lat
    g = intmat.to_int_matrix([[Fraction(x) for x in row] for row in gram])
    pos, neg = intmat.symmetric_signature(g)
    even = all(g[i][i] % 2 == 0 for i in range(len(g)))
    det = intmat.det(g)
    local = {}
    for p in sorted(set([2] + _prime_factors(det))):
        local[p] = _local_symbol(g, p)
    return GenusSymbol(pos, neg, even, local)


# ---------------------------------------------------------------------------
# canonical form at p = 2

def _compartments(constituents):
    """Maximal runs of type I constituents at consecutive scales."""
    comps = []
    current = []
    by_scale = {c.scale: c for c in constituents}
    top = max(by_scale) if by_scale else -1
    for e in range(top + 1):
        c = by_scale.get(e)
        if c is not None and c.kind == "I":
            current.append(e)
        elif current:
            comps.append(current)
            current = []
    if current:
        comps.append(current)
    return comps


def _canonical_two_adic(constituents):
    """Deterministic representative of the 2-adic sign/oddity orbit.

    Allowed moves: flip the signs of two adjacent-scale constituents of
    nonzero rank, at least one of type I, adding 4 to the oddity total of
    the compartment holding an odd endpoint; or flip the signs of two
    type I constituents two scales apart with nothing in between, adding
    4 to the totals of both their compartments.  The orbit is searched
    exhaustively and the lexicographically least state kept; compartment
    totals are then pushed onto the first constituent of the compartment.
    """
    if not constituents:
        return []
    by_scale = {c.scale: c for c in constituents}
    top = max(by_scale)
    ranks = [by_scale[e].rank if e in by_scale else 0 for e in range(top + 1)]
    kinds = [by_scale[e].kind if e in by_scale else "II" for e in range(top + 1)]
    comps = _compartments(constituents)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for e in comp:
            comp_of[e] = ci
    eps0 = tuple(0 if e not in by_scale or by_scale[e].eps == 1 else 1
                 for e in range(top + 1))
    tot0 = tuple(sum(by_scale[e].oddity for e in comp) % 8 for comp in comps)
    moves = []
    for e in range(top):
        if ranks[e] and ranks[e + 1] and "I" in (kinds[e], kinds[e + 1]):
            target = comp_of[e] if kinds[e] == "I" else comp_of[e + 1]
            moves.append((e, e + 1, (target,)))
    for e in range(top - 1):
        if (ranks[e] and ranks[e + 2] and not ranks[e + 1]
                and kinds[e] == "I" and kinds[e + 2] == "I"):
            moves.append((e, e + 2, (comp_of[e], comp_of[e + 2])))
    seen = {(eps0, tot0)}
    queue = [(eps0, tot0)]
    while queue:
        eps, tot = queue.pop()
        for e1, e2, targets in moves:
            neps = list(eps)
            neps[e1] ^= 1
            neps[e2] ^= 1
            ntot = list(tot)
            for t in targets:
                ntot[t] = (ntot[t] + 4) % 8
            state = (tuple(neps), tuple(ntot))
            if state not in seen:
                seen.add(state)
                queue.append(state)
    eps, tot = min(seen)
    out = []
    for e in range(top + 1):
        if e not in by_scale:
            continue
        c = by_scale[e].copy()
        c.eps = -1 if eps[e] else 1
        out.append(c)
    by_scale = {c.scale: c for c in out}
    for ci, comp in enumerate(comps):
        tail = 0
        for e in comp[1:]:
            c = by_scale[e]
            c.oddity = c.rank % 2
            tail += c.oddity
        by_scale[comp[0]].oddity = (tot[ci] - tail) % 8
    return out


def canonicalize(sym):
    """A symbol with the same genus whose 2-adic data is in canonical form."""
    local = dict(sym.local)
    if 2 in local:
        local[2] = _canonical_two_adic(local[2])
    return GenusSymbol(sym.pos, sym.neg, sym.even, local)


def genus_equal(a, b):
    """Whether two symbols describe the same genus."""
    if (a.pos, a.neg, a.even) != (b.pos, b.neg, b.even):
        return False
    if a.det() != b.det():
        return False
    ca, cb = canonicalize(a), canonicalize(b)
    for p in sorted(set(ca.local) | set(cb.local)):
        if [c.key() for c in ca.local_at(p)] != [c.key() for c in cb.local_at(p)]:
            return False
    return True


# ---------------------------------------------------------------------------
# rendering and parsing

def _exp_str(eps, rank):
    val = eps * rank
    if val < 0 or val >= 10:
        return "^{%d}" % val
    return "^%d" % val


def render_genus(sym):
    """Plain-text symbol, scale-0 constituents left implicit."""
    head = "II" if sym.even else "I"
    parts = ["%s_(%d,%d)" % (head, sym.pos, sym.neg)]
    for p in sorted(sym.local):
        for c in sym.local[p]:
            if c.scale == 0 or c.rank == 0:
                continue
            tok = "%d%s" % (p ** c.scale, _exp_str(c.eps, c.rank))
            if p == 2 and c.kind == "I":
                tok += "_%d" % c.oddity
            parts.append(tok)
    return "".join(parts)


def canonical_string(x):
    """Canonical rendered symbol of a lattice, Gram matrix or symbol."""
    sym = x if isinstance(x, GenusSymbol) else genus_symbol(x)
    return render_genus(canonicalize(sym))


_HEAD_RE = re.compile(r"^(II|I)_\((\d+),(\d+)\)")
_TOKEN_RE = re.compile(r"(\d+)\^(?:\{(-?\d+)\}|(-?\d))(?:_(\d))?")


def _scale_of(q):
    p = _prime_factors(q)[0]
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    if q != 1:
        raise ValueError("scale %d is not a prime power" % q)
    return p, e


def parse_genus(text):
    """Parse a rendered symbol, reconstructing the implicit scale-0 parts."""
    s = text.replace(" ", "")
    head = _HEAD_RE.match(s)
    if not head:
        raise ValueError("cannot parse genus symbol %r" % text)
    even = head.group(1) == "II"
    pos, neg = int(head.group(2)), int(head.group(3))
    rank = pos + neg
    body = s[head.end():]
    pieces = {}
    pos_in = 0
    for m in _TOKEN_RE.finditer(body):
        if m.start() != pos_in:
            raise ValueError("cannot parse genus symbol %r" % text)
        pos_in = m.end()
        q = int(m.group(1))
        p, e = _scale_of(q)
        if e == 0:
            raise ValueError("scale-0 constituents are implicit")
        signed = int(m.group(2) if m.group(2) is not None else m.group(3))
        if signed == 0:
            raise ValueError("zero-rank constituent in %r" % text)
        eps, n = (1, signed) if signed > 0 else (-1, -signed)
        if p == 2:
            kind = "I" if m.group(4) is not None else "II"
            oddity = int(m.group(4)) if kind == "I" else 0
            c = Constituent(e, n, eps, kind, oddity)
        else:
            if m.group(4) is not None:
                raise ValueError("oddity subscript at odd prime in %r" % text)
            c = Constituent(e, n, eps)
        pieces.setdefault(p, []).append(c)
    if pos_in != len(body):
        raise ValueError("cannot parse genus symbol %r" % text)
    for p, cs in pieces.items():
        scales = [c.scale for c in cs]
        if scales != sorted(scales) or len(set(scales)) != len(scales):
            raise ValueError("repeated or unsorted scales in %r" % text)
    det = 1
    for p, cs in pieces.items():
        for c in cs:
            det *= p ** (c.scale * c.rank)
    if neg % 2:
        det = -det
    local = {}
    for p in sorted(set([2]) | set(pieces)):
        cs = pieces.get(p, [])
        used = sum(c.rank for c in cs)
        if used > rank:
            raise ValueError("ranks exceed signature in %r" % text)
        n0 = rank - used
        if n0 > 0:
            unit = det // p ** sum(c.scale * c.rank for c in cs)
            if p == 2:
                total = 1 if unit % 8 in (1, 7) else -1
                if not even:
                    raise ValueError("odd-lattice symbols are not supported")
                c0 = Constituent(0, n0, total, "II", 0)
            else:
                total = _legendre_int(unit, p)
                c0 = Constituent(0, n0, total)
            for c in cs:
                c0.eps *= c.eps
            cs = [c0] + cs
        local[p] = cs
    return GenusSymbol(pos, neg, even, local)


# ---------------------------------------------------------------------------
# the signature relation mod 8

def _two_adic_oddity(constituents):
    t = 0
    for c in constituents:
        if c.kind == "I":
            t += c.oddity
        if c.eps == -1 and c.scale % 2 == 1:
            t += 4
    return t % 8


def _p_excess(constituents, p):
    t = 0
    for c in constituents:
        t += c.rank * (p ** c.scale - 1)
        if c.eps == -1 and c.scale % 2 == 1:
            t += 4
    return t % 8


def signature_consistent(sym):
    """Check signature == oddity - sum of p-excesses (mod 8).

    Every valid symbol satisfies this; a failure means the symbol data
    does not describe any lattice.
    """
    total = _two_adic_oddity(sym.local_at(2))
    for p in sym.local:
        if p != 2:
            total -= _p_excess(sym.local[p], p)
    return (sym.pos - sym.neg) % 8 == total % 8
