"""Nilpotent representations of the cyclic quiver and of the infinite line.

Conventions.  Arrows go i -> i+1.  The segment [i, l] is the indecomposable
S_i[l] with top S_i; its composition factors from top to socle sit at the
vertices i, i+1, ..., i+l-1.  For a short exact sequence 0 -> N -> E -> M -> 0
we call M the quotient and N the sub; generic_ext(M, N) is the generic
middle term.
"""
from __future__ import annotations

import json
from functools import lru_cache
from itertools import product

from . import finite
from .ring import IntPolyQ, interpolate


class QuiverKind:
    __slots__ = ("n",)

    def __init__(self, n=None):
        if n is not None:
            n = int(n)
            if n < 2:
                raise ValueError("n must be ≥ 2")
        self.n = n

    @property
    def cyclic(self):
        return self.n is not None

    def vertex(self, i):
        return i % self.n if self.n is not None else i

    def __eq__(self, other):
        return isinstance(other, QuiverKind) and self.n == other.n

    def __hash__(self):
        return hash(("kind", self.n))

    def __repr__(self):
        return f"Cyclic({self.n})" if self.cyclic else "InfiniteLine"

    def to_json(self):
        return {"kind": "cyclic", "n": self.n} if self.cyclic else {"kind": "line"}


def Cyclic(n):
    return QuiverKind(n)


InfiniteLine = QuiverKind(None)


class DimVector:
    """Finitely supported nonnegative vector on the vertices of a quiver."""

    __slots__ = ("kind", "_key", "_d")

    def __init__(self, kind, entries=None):
        d = {}
        for i, a in (entries or {}).items():
            a = int(a)
            if a < 0:
                raise ValueError("dimension vector entries must be nonnegative")
            if a:
                v = kind.vertex(int(i))
                d[v] = d.get(v, 0) + a
        self.kind = kind
        self._d = d
        self._key = tuple(sorted(d.items()))

    @classmethod
    def eps(cls, kind, i, a=1):
        return cls(kind, {i: a})

    @classmethod
    def delta(cls, n, t=1):
        return cls(Cyclic(n), {i: t for i in range(n)})

    def __getitem__(self, i):
        return self._d.get(self.kind.vertex(i), 0)

    def items(self):
        return self._key

    def support(self):
        return [i for i, _ in self._key]

    def total(self):
        return sum(self._d.values())

    def is_zero(self):
        return not self._d

    def __add__(self, other):
        d = dict(self._d)
        for i, a in other._d.items():
            d[i] = d.get(i, 0) + a
        return DimVector(self.kind, d)

    def __sub__(self, other):
        d = dict(self._d)
        for i, a in other._d.items():
            d[i] = d.get(i, 0) - a
        return DimVector(self.kind, d)

    def __mul__(self, k):
        return DimVector(self.kind, {i: a * k for i, a in self._d.items()})

    __rmul__ = __mul__

    def leq(self, other):
        return all(a <= other[i] for i, a in self._key)

    def __eq__(self, other):
        return isinstance(other, DimVector) and self.kind == other.kind and self._key == other._key

    def __hash__(self):
        return hash((self.kind, self._key))

    def __repr__(self):
        if self.kind.cyclic:
            return "(" + ",".join(str(self[i]) for i in range(self.kind.n)) + ")"
        return "{" + ", ".join(f"{i}:{a}" for i, a in self._key) + "}"

    def to_json(self):
        return {str(i): a for i, a in self._key}

    @classmethod
    def from_json(cls, kind, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(kind, {int(k): int(a) for k, a in obj.items()})


class Multisegment:
    """Isoclass of a nilpotent representation: a multiset of segments [i, l]."""

    __slots__ = ("kind", "_key", "_d")

    def __init__(self, kind, segments=()):
        d = {}
        if isinstance(segments, dict):
            segments = [(i, l, a) for (i, l), a in segments.items()]
        for seg in segments:
            if len(seg) == 2:
                i, l, a = seg[0], seg[1], 1
            else:
                i, l, a = seg
            if l < 1:
                raise ValueError("segment lengths must be ≥ 1")
            if a < 0:
                raise ValueError("multiplicities must be nonnegative")
            if a:
                key = (kind.vertex(int(i)), int(l))
                d[key] = d.get(key, 0) + int(a)
        self.kind = kind
        self._d = d
        self._key = tuple(sorted(d.items()))

    @classmethod
    def zero(cls, kind):
        return cls(kind)

    @classmethod
    def semisimple(cls, d):
        return cls(d.kind, [(i, 1, a) for i, a in d.items()])

    def items(self):
        """((i, l), mult) pairs sorted by (i, l)."""
        return self._key

    def segments(self):
        return [(i, l, a) for (i, l), a in self._key]

    def mult(self, i, l):
        return self._d.get((self.kind.vertex(i), l), 0)

    def is_zero(self):
        return not self._d

    def dim(self):
        return dim_vector(self)

    def total_dim(self):
        return sum(l * a for (_, l), a in self._key)

    def max_length(self):
        return max((l for (_, l), _ in self._key), default=0)

    def __add__(self, other):
        if self.kind != other.kind:
            raise ValueError("kind mismatch")
        d = dict(self._d)
        for k, a in other._d.items():
            d[k] = d.get(k, 0) + a
        return Multisegment(self.kind, d)

    def __eq__(self, other):
        return isinstance(other, Multisegment) and self.kind == other.kind and self._key == other._key

    def __hash__(self):
        return hash((self.kind, self._key))

    def __lt__(self, other):
        return self._key < other._key

    def __repr__(self):
        if not self._key:
            return "0"
        return " + ".join((f"{a}" if a > 1 else "") + f"[{i},{l}]" for (i, l), a in self._key)

    def to_json(self):
        return [[i, l, a] for (i, l), a in self._key]

    @classmethod
    def from_json(cls, kind, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(kind, [tuple(t) for t in obj])


# partitions are tuples of positive weakly decreasing integers

def partition(parts):
    lam = tuple(int(p) for p in parts if p)
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"not a partition: {parts}")
    if any(p < 0 for p in lam):
        raise ValueError(f"negative part in {parts}")
    return lam


@lru_cache(maxsize=None)
def partitions_of(k, max_part=None):
    if max_part is None:
        max_part = k
    if k == 0:
        return ((),)
    out = []
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions_of(k - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_up_to(k):
    out = []
    for s in range(k + 1):
        out.extend(partitions_of(s))
    return out


def dominates(lam, mu):
    """True iff prefix sums of lam are >= those of mu."""
    a = b = 0
    for k in range(max(len(lam), len(mu))):
        a += lam[k] if k < len(lam) else 0
        b += mu[k] if k < len(mu) else 0
        if a < b:
            return False
    return True


# basic invariants

def dim_vector(m):
    d = {}
    for (i, l), a in m.items():
        for k in range(l):
            v = m.kind.vertex(i + k)
            d[v] = d.get(v, 0) + a
    return DimVector(m.kind, d)


def hom_dim(seg1, seg2, kind):
    """dim Hom(S_i[l], S_j[k])."""
    (i, l), (j, k) = seg1, seg2
    lo, hi = max(0, k - l), k - 1
    r = i - j
    if kind.cyclic:
        n = kind.n
        first = lo + ((r - lo) % n)
        return 0 if first > hi else (hi - first) // n + 1
    return 1 if lo <= r <= hi else 0


def hom_total(m1, m2):
    return sum(a * b * hom_dim(s, t, m1.kind) for s, a in m1.items() for t, b in m2.items())


def end_dim(m):
    return hom_total(m, m)


def euler_form(d, e):
    kind = d.kind
    out = 0
    for i, a in d.items():
        out += a * e[i] - a * e[kind.vertex(i + 1)]
    return out


def symmetric_euler(d, e):
    return euler_form(d, e) + euler_form(e, d)


def tau_shift(m, s):
    return Multisegment(m.kind, [(i + s, l, a) for (i, l), a in m.items()])


def covering(m, n):
    if m.kind.cyclic:
        raise ValueError("covering expects a multisegment over the infinite line")
    return Multisegment(Cyclic(n), [(i, l, a) for (i, l), a in m.items()])


def radical_layers(m):
    L = m.max_length()
    out = []
    for s in range(1, L + 1):
        d = {}
        for (i, l), a in m.items():
            if l >= s:
                v = m.kind.vertex(i + s - 1)
                d[v] = d.get(v, 0) + a
        out.append(DimVector(m.kind, d))
    return out


def top(m):
    d = {}
    for (i, l), a in m.items():
        d[i] = d.get(i, 0) + a
    return DimVector(m.kind, d)


def socle(m):
    d = {}
    for (i, l), a in m.items():
        v = m.kind.vertex(i + l - 1)
        d[v] = d.get(v, 0) + a
    return DimVector(m.kind, d)


def _test_objects(m):
    d = m.total_dim()
    if m.kind.cyclic:
        n = m.kind.n
        return [(j, l) for j in range(n) for l in range(1, d + n + 1)]
    sup = m.dim().support()
    if not sup:
        return []
    lo, hi = min(sup), max(sup)
    return [(j, l) for j in range(lo - d, hi + 1) for l in range(1, d + 1)]


def deg_leq(m1, m2):
    """M(m1) <=_deg M(m2): same dimension vector and Hom(m1, X) >= Hom(m2, X) for all X."""
    if m1.kind != m2.kind:
        raise ValueError("kind mismatch")
    if m1.dim() != m2.dim():
        return False
    kind = m1.kind
    for x in _test_objects(m1):
        h1 = sum(a * hom_dim(s, x, kind) for s, a in m1.items())
        h2 = sum(a * hom_dim(s, x, kind) for s, a in m2.items())
        if h1 < h2:
            return False
    return True


def m_of_partition(lam, kind):
    return Multisegment(kind, [(1 - s, p, 1) for s, p in enumerate(lam, start=1)])


def is_aperiodic(m):
    n = m.kind.n
    lengths = {}
    for (i, l), a in m.items():
        lengths.setdefault(l, set()).add(i)
    return all(len(v) < n for v in lengths.values())


def is_n_regular(lam, n):
    return all(lam[s] > lam[s + n - 1] for s in range(len(lam) - n + 1))


@lru_cache(maxsize=None)
def multisegments_of(d):
    """Every multisegment with dimension vector d, in a fixed order."""
    kind = d.kind
    if d.is_zero():
        return (Multisegment(kind),)
    sup = d.support()
    if kind.cyclic:
        starts = [i for i in range(kind.n) if d[i]]
    else:
        starts = sup
    total = d.total()
    segs = []
    for i in starts:
        for l in range(1, total + 1):
            need = {}
            ok = True
            for k in range(l):
                v = kind.vertex(i + k)
                need[v] = need.get(v, 0) + 1
                if need[v] > d[v]:
                    ok = False
                    break
            if not ok:
                break
            segs.append(((i, l), need))
    out = []

    def rec(idx, remaining, chosen):
        if not any(remaining.values()):
            out.append(Multisegment(kind, [(i, l, a) for (i, l), a in chosen.items()]))
            return
        # the smallest vertex with remaining dimension must be covered by a
        # segment of index >= idx; we iterate over all further segments
        for j in range(idx, len(segs)):
            (seg, need) = segs[j]
            if all(remaining.get(v, 0) >= c for v, c in need.items()):
                for v, c in need.items():
                    remaining[v] -= c
                chosen[seg] = chosen.get(seg, 0) + 1
                rec(j, remaining, chosen)
                chosen[seg] -= 1
                if not chosen[seg]:
                    del chosen[seg]
                for v, c in need.items():
                    remaining[v] += c

    rec(0, {v: a for v, a in d.items()}, {})
    out.sort()
    return tuple(out)


# finite-field representations

class FiniteFieldRep:
    """A representation over F_q given by one matrix per arrow i -> i+1."""

    def __init__(self, kind, q, dims, maps):
        self.kind = kind
        self.q = q
        self.F = finite.field(q)
        self.dims = dims
        self.maps = maps
        for i in self.vertices():
            a = maps.get(i)
            rows, cols = dims[kind.vertex(i + 1)], dims[i]
            if a is None:
                maps[i] = [[0] * cols for _ in range(rows)]
            elif len(a) != rows or any(len(r) != cols for r in a):
                raise ValueError(f"inconsistent dimensions for the map at vertex {i}")

    def vertices(self):
        if self.kind.cyclic:
            return list(range(self.kind.n))
        return self.dims.support()

    def path(self, i, l):
        """Matrix of the composite V_i -> V_{i+l}."""
        k = self.kind
        di = self.dims[i]
        cur = [[1 if r == c else 0 for c in range(di)] for r in range(di)]
        for s in range(l):
            v = k.vertex(i + s)
            if self.dims[k.vertex(v + 1)] == 0 or not cur or not cur[0]:
                return None
            a = self.maps.get(v)
            if a is None:
                return None
            cur = finite.matmul(self.F, a, cur)
        return cur


def build_rep(m, q):
    kind = m.kind
    d = m.dim()
    # basis vector (segment copy, position) -> index at its vertex
    index = {}
    counters = {}
    for (i, l), a in m.items():
        for c in range(a):
            for k in range(l):
                v = kind.vertex(i + k)
                index[(i, l, c, k)] = counters.get(v, 0)
                counters[v] = counters.get(v, 0) + 1
    maps = {}
    for v in (range(kind.n) if kind.cyclic else d.support()):
        w = kind.vertex(v + 1)
        maps[v] = [[0] * d[v] for _ in range(d[w])]
    for (i, l), a in m.items():
        for c in range(a):
            for k in range(l - 1):
                v = kind.vertex(i + k)
                maps[v][index[(i, l, c, k + 1)]][index[(i, l, c, k)]] = 1
    return FiniteFieldRep(kind, q, d, maps)


def _from_ranks(kind, R, vertices, L):
    """Multisegment from path ranks R(i, l) via inclusion–exclusion."""
    def r(i, l):
        return R(kind.vertex(i), l)
    segs = []
    for i in vertices:
        for l in range(1, L + 1):
            a = r(i, l - 1) - r(i, l) - r(i - 1, l) + r(i - 1, l + 1)
            if a < 0:
                raise ArithmeticError("negative multiplicity in iso_type")
            if a:
                segs.append((i, l, a))
    return Multisegment(kind, segs)


def iso_type(rep):
    kind = rep.kind
    F = rep.F
    cache = {}

    def R(i, l):
        if (i, l) not in cache:
            if rep.dims[i] == 0:
                cache[(i, l)] = 0
            elif l == 0:
                cache[(i, l)] = rep.dims[i]
            else:
                p = rep.path(i, l)
                cache[(i, l)] = 0 if p is None else finite.rank(F, p)
        return cache[(i, l)]

    total = rep.dims.total()
    return _from_ranks(kind, R, rep.vertices(), total)


# one-step counting: submodules with semisimple quotient or semisimple sub

def _interp_points(D):
    return finite.prime_powers(D + 2)


@lru_cache(maxsize=None)
def _profile_counts_at(lengths, w, mode, q):
    """Count w-dim subspaces W of F_q^N by their intersection profile.

    Coordinates carry segment lengths.  For r = 0..max(lengths) the profile
    records dim(W ∩ span C_r), where C_r is the set of coordinates of length
    <= r (mode 'le') or of length > r (mode 'gt').
    """
    F = finite.field(q)
    N = len(lengths)
    L = max(lengths, default=0)
    # columns outside C_r, used to compute dim(W ∩ span C_r) = w - rank(W|outside)
    outside = []
    for r in range(L + 1):
        if mode == "le":
            outside.append([c for c in range(N) if lengths[c] > r])
        else:
            outside.append([c for c in range(N) if lengths[c] <= r])
    counts = {}
    for W in finite.subspaces(F, N, w):
        prof = []
        for cols in outside:
            if not cols or not W:
                prof.append(w)
            else:
                prof.append(w - finite.rank(F, [[row[c] for c in cols] for row in W]))
        prof = tuple(prof)
        counts[prof] = counts.get(prof, 0) + 1
    return counts


@lru_cache(maxsize=None)
def profile_polys(lengths, w, mode):
    """Profile counts as polynomials in q, by interpolation over prime powers."""
    N = len(lengths)
    D = w * (N - w)
    pts = _interp_points(D)
    data = [_profile_counts_at(lengths, w, mode, q) for q in pts]
    profiles = set()
    for c in data:
        profiles.update(c)
    out = {}
    for prof in sorted(profiles):
        ys = [c.get(prof, 0) for c in data]
        coeffs = interpolate(list(zip(pts[:-1], ys[:-1])))
        if any(c.denominator != 1 for c in coeffs):
            raise ArithmeticError("non-integral subspace count polynomial")
        poly = IntPolyQ({e: int(c) for e, c in enumerate(coeffs)})
        if poly(pts[-1]) != ys[-1]:
            raise ArithmeticError("subspace count is not polynomial of the expected degree")
        out[prof] = poly
    return out


def _rank_table(m, skip_top=False):
    """R[(v, r)] = number of basis vectors at v surviving r arrows."""
    kind = m.kind
    R = {}
    for (i, l), a in m.items():
        for k in range(1 if skip_top else 0, l):
            v = kind.vertex(i + k)
            for r in range(l - k):
                R[(v, r)] = R.get((v, r), 0) + a
    return R


def _vertices_of(m, extra):
    kind = m.kind
    if kind.cyclic:
        return list(range(kind.n))
    sup = set(m.dim().support()) | set(extra)
    if not sup:
        return []
    return list(range(min(sup) - 1, max(sup) + 2))


def _lengths_at(m, where):
    kind = m.kind
    out = {}
    for (i, l), a in m.items():
        v = i if where == "top" else kind.vertex(i + l - 1)
        out.setdefault(v, []).extend([l] * a)
    return {v: tuple(sorted(ls)) for v, ls in out.items()}


def _profile_values(lengths, w, mode, q):
    """Profile counts as polynomials (q None) or as integers at a single q."""
    if q is None:
        return list(profile_polys(lengths, w, mode).items())
    return list(_profile_counts_at(lengths, w, mode, q).items())


def _left(p, alpha, q):
    kind = p.kind
    tp = top(p)
    if not alpha.leq(tp):
        return {}
    rad = _rank_table(p, skip_top=True)
    lens = _lengths_at(p, "top")
    verts = sorted(lens)
    dimw = {v: len(lens[v]) - alpha[v] for v in verts}
    per_vertex = [_profile_values(lens[v], dimw[v], "le", q) for v in verts]
    L = p.max_length()
    out = {}
    allv = _vertices_of(p, [])
    for combo in product(*per_vertex):
        prof = {v: c[0] for v, c in zip(verts, combo)}

        def R(i, r, prof=prof):
            base = rad.get((i, r), 0)
            if i in prof:
                w = dimw[i]
                inter = prof[i][r] if r < len(prof[i]) else w
                base += w - inter if r > 0 else w
            return base

        m = _from_ranks(kind, R, allv, L + 1)
        val = IntPolyQ({0: 1}) if q is None else 1
        for c in combo:
            val = val * c[1]
        out[m] = out[m] + val if m in out else val
    return out


def _right(p, alpha, q):
    kind = p.kind
    sp = socle(p)
    if not alpha.leq(sp):
        return {}
    full = _rank_table(p)
    lens = _lengths_at(p, "soc")
    verts = sorted(lens)
    per_vertex = [_profile_values(lens[v], alpha[v], "gt", q) for v in verts]
    L = p.max_length()
    allv = _vertices_of(p, [])
    out = {}
    for combo in product(*per_vertex):
        prof = {v: c[0] for v, c in zip(verts, combo)}

        def R(i, r, prof=prof):
            base = full.get((i, r), 0)
            j = kind.vertex(i + r)
            if j in prof and base:
                pr = prof[j]
                base -= pr[r] if r < len(pr) else 0
            return base

        m = _from_ranks(kind, R, allv, L + 1)
        val = IntPolyQ({0: 1}) if q is None else 1
        for c in combo:
            val = val * c[1]
        out[m] = out[m] + val if m in out else val
    return out


@lru_cache(maxsize=None)
def left_counts(p, alpha):
    """{m: phi} where phi(q) counts U <= M(p) with U = M(m) and M(p)/U = S_alpha."""
    return _left(p, alpha, None)


@lru_cache(maxsize=None)
def right_counts(p, alpha):
    """{m: phi} where phi(q) counts U <= soc M(p) with U = S_alpha and M(p)/U = M(m)."""
    return _right(p, alpha, None)


@lru_cache(maxsize=None)
def left_counts_at(p, alpha, q):
    """left_counts evaluated at one prime power, counted directly."""
    return _left(p, alpha, q)


@lru_cache(maxsize=None)
def left_table(alpha, grade):
    """{m: {p: phi}} over all p of the given grade (quotient S_alpha, sub M(m))."""
    table = {}
    for p in multisegments_of(grade):
        for m, poly in left_counts(p, alpha).items():
            table.setdefault(m, {})[p] = poly
    return table


@lru_cache(maxsize=None)
def right_table(alpha, grade):
    """{m: {p: phi}} over all p of the given grade (quotient M(m), sub S_alpha)."""
    table = {}
    for p in multisegments_of(grade):
        for m, poly in right_counts(p, alpha).items():
            table.setdefault(m, {})[p] = poly
    return table


# generic extensions

def _deg_max(cands):
    best = [c for c in cands if all(deg_leq(o, c) for o in cands)]
    if len(best) != 1:
        raise ArithmeticError(f"no unique degeneration-maximal extension among {cands}")
    return best[0]


# extensions are detected by direct counts over these fields
GENERIC_QS = (2, 3, 4)


def _semisimple_ext(alpha, n):
    """S_alpha * N: generic extension with quotient S_alpha and sub N."""
    if alpha.is_zero():
        return n
    grade = n.dim() + alpha
    cands = [p for p in multisegments_of(grade)
             if any(left_counts_at(p, alpha, q).get(n, 0) for q in GENERIC_QS)]
    if not cands:
        raise ArithmeticError("no extension found")
    return _deg_max(cands)


@lru_cache(maxsize=None)
def generic_ext(m1, m2):
    """M(m1) * M(m2): generic middle term with quotient m1 and sub m2."""
    if m1.kind != m2.kind:
        raise ValueError("kind mismatch")
    if m1.is_zero():
        return m2
    if m2.is_zero():
        return m1
    out = m2
    for alpha in reversed(radical_layers(m1)):
        out = _semisimple_ext(alpha, out)
    return out


def _ladder_step(lam, n):
    t = len(lam)
    s = 1
    while s < t and lam[s] == lam[0]:
        s += 1
    i1 = (lam[s - 1] - s) % n

    def part(a):
        return lam[a - 1] if 1 <= a <= t else 0

    k = 0
    while True:
        l = k
        a0 = s + l * (n - 1)
        ok = all(part(a0 + 1) == part(a0 + j) for j in range(1, n)) and part(a0) == part(a0 + 1) + 1
        if not ok or s + (l + 1) * (n - 1) > t:
            break
        k += 1
    rows = {s + l * (n - 1) for l in range(k + 1)}
    mu = partition(lam[a - 1] - 1 if a in rows else lam[a - 1] for a in range(1, t + 1))
    return i1, k + 1, mu


def ladder_word(lam, n, check=True):
    """The ladder word [(i_1, k_1), ..., (i_d, k_d)] of an n-regular partition."""
    lam = partition(lam)
    if not is_n_regular(lam, n):
        raise ValueError(f"{lam} is not {n}-regular")
    kind = Cyclic(n)
    word = []
    cur = lam
    while cur:
        i1, k1, mu = _ladder_step(cur, n)
        if not is_n_regular(mu, n):
            raise ArithmeticError(f"ladder step left the n-regular set at {cur}")
        if check:
            got = generic_ext(m_of_partition(mu, kind), Multisegment(kind, [(i1, 1, k1)]))
            if got != m_of_partition(cur, kind):
                raise ArithmeticError(f"ladder step fails the generic extension identity at {cur}")
        word.append((i1, k1))
        cur = mu
    return word
