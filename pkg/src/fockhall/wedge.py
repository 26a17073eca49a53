"""q-wedges: the level-one module Ω, straightening, and semi-infinite wedges.

Ω has basis ω_s (s ∈ ℤ).  A finite wedge word is reduced to strictly
decreasing words modulo Σ Im(1 + T_k), using a two-letter rewrite rule
derived from the Bernstein presentation of the affine Hecke algebra.
A semi-infinite wedge of charge m is stored as a finite prefix followed
by the tail m - N, m - N - 1, ...
"""
from __future__ import annotations

import json
from functools import lru_cache
from itertools import product

from .quiver import Cyclic, DimVector, euler_form
from .ring import ONE, ZERO, LaurentPoly, RatFrac, V, vpow

# re-check independence of the prefix length on every semi-infinite action
CHECK_PREFIX = True

_V2M1 = V * V - ONE


def _split(a, n):
    """a = a0 - c*n with -n < a0 <= 0."""
    c = (-a) // n
    a0 = a + c * n
    if a0 <= -n:
        a0 += n
        c -= 1
    return a0, c


def pair_rule(a, b, n):
    """ω_a ∧ ω_b for a < b as {(x, y): coeff}; corrections move inward."""
    a0, c1 = _split(a, n)
    b0, c2 = _split(b, n)
    d = c1 - c2
    lead = V * V if a0 == b0 else V
    out = {(b, a): -lead}
    dd = d - (1 if a0 > b0 else 0)
    for j in range(1, dd + 1):
        key = (a + j * n, b - j * n)
        out[key] = out.get(key, ZERO) + _V2M1
    return out


def _add(acc, key, c):
    s = acc.get(key, ZERO) + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


@lru_cache(maxsize=None)
def _straighten(word, n):
    for k in range(len(word) - 1):
        a, b = word[k], word[k + 1]
        if a > b:
            continue
        if a == b:
            return {}
        out = {}
        for (x, y), c in pair_rule(a, b, n).items():
            if x == y:
                continue
            w = word[:k] + (x, y) + word[k + 2:]
            for u, e in _straighten(w, n).items():
                _add(out, u, c * e)
        return out
    return {word: ONE}


def straighten(seq, n):
    """The class of ω_{i_1} ∧ ⋯ ∧ ω_{i_r} in the strictly decreasing basis."""
    if n < 2:
        raise ValueError("n must be ≥ 2")
    return dict(_straighten(tuple(seq), n))


# the affine Hecke action on Ω^{⊗r}, used by the quotient-space construction

def hecke_T(word, k, n):
    """ω_word · T_k (k is 1-based) as {word: RatFrac-free LaurentPoly}.

    Defined on the fundamental window by the three-case formula and
    extended by ω·X^c·T = ω·T·X^{s(c)} + (v²-1) ω·(X^c - X^{s(c)})/(1 - X_k X_{k+1}^{-1}).
    """
    a, b = word[k - 1], word[k]
    a0, c1 = _split(a, n)
    b0, c2 = _split(b, n)
    pre, post = word[:k - 1], word[k + 1:]

    def w(x, y):
        return pre + (x, y) + post

    base = {}
    if a0 == b0:
        base[(a0, b0)] = V * V
    elif a0 < b0:
        base[(b0, a0)] = V
    else:
        base[(b0, a0)] = V
        base[(a0, b0)] = _V2M1
    out = {}
    # ω_{a0,b0} T X_k^{c2} X_{k+1}^{c1}: X_t lowers the t-th index by n
    for (x, y), c in base.items():
        _add(out, w(x - c2 * n, y - c1 * n), c)
    # divided difference (X^c - X^{sc}) / (1 - X_k X_{k+1}^{-1}) for X^c = X_k^{c1} X_{k+1}^{c2}
    for e1, e2, sgn in _divided_difference(c1, c2):
        _add(out, w(a0 - e1 * n, b0 - e2 * n), _V2M1 * sgn)
    return out


def _divided_difference(c1, c2):
    """Monomials of (x^c1 y^c2 - x^c2 y^c1)/(1 - x/y) as (e1, e2, ±1)."""
    out = []
    if c1 == c2:
        return out
    # both cases are a finite geometric sum in x/y
    if c1 > c2:
        # x^c2 y^c1 (x/y)^(c1-c2) - x^c2 y^c1 = -x^c2 y^c1 (1 - (x/y)^d)
        # divide by (1 - x/y): -x^c2 y^c1 Σ_{j<d} (x/y)^j
        for j in range(c1 - c2):
            out.append((c2 + j, c1 - j, -1))
    else:
        # x^c1 y^c2 (1 - (x/y)^(c2-c1)) / (1 - x/y) = x^c1 y^c2 Σ_{j<d} (x/y)^j
        for j in range(c2 - c1):
            out.append((c1 + j, c2 - j, 1))
    return out


def _residue_sum_class(word, n):
    return (tuple(sorted(i % n for i in word)), sum(word))


def quotient_normal_form(seq, n):
    """Normal form of a wedge word by explicit linear algebra modulo Σ Im(1 + T_k).

    Works on the span of words with entries in [min, max] of the input
    that share its residue multiset and entry sum; this span is stable under
    every T_k.  Coefficients are eliminated over rational functions in v.
    """
    seq = tuple(seq)
    r = len(seq)
    if r < 2:
        return {seq: ONE}
    lo, hi = min(seq), max(seq)
    cls = _residue_sum_class(seq, n)
    words = [w for w in product(range(lo, hi + 1), repeat=r) if _residue_sum_class(w, n) == cls]
    normal = [w for w in words if all(w[i] > w[i + 1] for i in range(r - 1))]
    other = [w for w in words if w not in set(normal)]
    cols = other + normal
    index = {w: i for i, w in enumerate(cols)}
    rows = []
    for w in words:
        for k in range(1, r):
            vec = {w: ONE}
            for u, c in hecke_T(w, k, n).items():
                _add(vec, u, c)
            if any(u not in index for u in vec):
                raise ArithmeticError("window not stable under T")
            rows.append({index[u]: RatFrac(c) for u, c in vec.items()})
    # row-reduce, pivoting on the earliest column
    pivots = {}
    for row in rows:
        row = _reduce(row, pivots)
        if row:
            p = min(row)
            inv = RatFrac(ONE) / row[p]
            row = {j: c * inv for j, c in row.items()}
            for q in list(pivots):
                if p in pivots[q]:
                    f = pivots[q][p]
                    pivots[q] = _axpy(pivots[q], row, -f)
            pivots[p] = row
    if sorted(pivots) != list(range(len(other))):
        raise ArithmeticError("straightening subspace has the wrong dimension")
    target = _reduce({index[seq]: RatFrac(ONE)}, pivots)
    out = {}
    for j, c in target.items():
        poly = c.to_laurent()
        out[cols[j]] = poly
    return out


def _axpy(x, y, f):
    out = dict(x)
    for j, c in y.items():
        s = out.get(j, RatFrac(ZERO)) + f * c
        if s.is_zero():
            out.pop(j, None)
        else:
            out[j] = s
    return out


def _reduce(row, pivots):
    row = dict(row)
    for p in sorted(pivots):
        if p in row:
            row = _axpy(row, pivots[p], -row[p])
    return row


# Ω and its tensor powers

def _omega_action(gen, s, n):
    """A generator on a single ω_s as {s': coeff}."""
    kind = gen[0]
    r = s % n
    if kind == "u+":
        return {s - 1: ONE} if (gen[1] + 1) % n == r else {}
    if kind == "u-":
        return {s + 1: ONE} if gen[1] % n == r else {}
    if kind == "K":
        i, e = gen[1], gen[2]
        return {s: vpow(e * ((1 if i % n == r else 0) - (1 if (i + 1) % n == r else 0)))}
    if kind == "z+":
        return {s - gen[1] * n: ONE}
    if kind == "z-":
        return {s + gen[1] * n: ONE}
    raise ValueError(f"unknown generator {gen}")


def k_exponent(alpha, s, n):
    """K_alpha·ω_s = v^e ω_s."""
    r = s % n
    return alpha[r] - alpha[(r - 1) % n]


def _ut_single(alpha, sign, s, n):
    """ũ_alpha^± on ω_s: nonzero only for alpha = 0 or the matching ε."""
    if alpha.is_zero():
        return s
    if alpha.total() != 1:
        return None
    (i, _), = alpha.items()
    if sign == "+":
        return s - 1 if (i + 1) % n == s % n else None
    return s + 1 if i % n == s % n else None


def _vectors_01(alpha, word, sign, n):
    """0/1 vectors picking factors whose residues add up to alpha."""
    shift = 1 if sign == "+" else 0
    need = dict(alpha.items())
    out = []

    def rec(k, rem, chosen):
        if k == len(word):
            if not any(rem.values()):
                out.append(tuple(chosen))
            return
        rec(k + 1, rem, chosen + [0])
        res = (word[k] - shift) % n
        if rem.get(res, 0) > 0:
            rem[res] -= 1
            rec(k + 1, rem, chosen + [1])
            rem[res] += 1

    rec(0, need, [])
    return out


def ut_coproduct(alpha, sign, word, n):
    """ũ_alpha^± on ω_word through the iterated comultiplication."""
    kind = Cyclic(n)
    r = len(word)
    out = {}
    for pick in _vectors_01(alpha, word, sign, n):
        parts = [DimVector.eps(kind, (word[k] - (1 if sign == "+" else 0)) % n) if pick[k] else DimVector(kind)
                 for k in range(r)]
        e = sum(euler_form(parts[s], parts[t]) for s in range(r) for t in range(s))
        new = []
        for k in range(r):
            t = _ut_single(parts[k], sign, word[k], n)
            if sign == "+":
                # factor k carries ũ_{α^(k)} K_{α^(1)+…+α^(k-1)}; K acts first
                acc = DimVector(kind)
                for j in range(k):
                    acc = acc + parts[j]
                e += k_exponent(acc, word[k], n)
            else:
                # factor k carries ũ_{α^(k)} K_{-(α^(k+1)+…+α^(r))}
                acc = DimVector(kind)
                for j in range(k + 1, r):
                    acc = acc + parts[j]
                e -= k_exponent(acc, word[k], n)
            new.append(t)
        _add(out, tuple(new), vpow(e))
    return out


def ut_closed_form(alpha, sign, word, n):
    """ũ_alpha^± on ω_word by the closed formula with exponents c^±."""
    kind = Cyclic(n)
    r = len(word)
    out = {}
    for pick in _vectors_01(alpha, word, sign, n):
        e = 0
        for s in range(r):
            for t in range(s + 1, r):
                form = euler_form(DimVector.eps(kind, word[t] % n), DimVector.eps(kind, word[s] % n))
                if sign == "+":
                    e += pick[s] * (pick[t] - 1) * form
                else:
                    e += pick[t] * (pick[s] - 1) * form
        step = -1 if sign == "+" else 1
        new = tuple(word[k] + step * pick[k] for k in range(r))
        _add(out, new, vpow(e))
    return out


def act_tensor(gen, word, n):
    """A generator on ω_word ∈ Ω^{⊗r} as {word: coeff}.

    gen is one of ("u+", i), ("u-", i), ("K", i, ±1), ("z+", t), ("z-", t),
    ("ut+", alpha), ("ut-", alpha).
    """
    word = tuple(word)
    kind = gen[0]
    r = len(word)
    if kind in ("ut+", "ut-"):
        sign = kind[2]
        a = ut_coproduct(gen[1], sign, word, n)
        b = ut_closed_form(gen[1], sign, word, n)
        if a != b:
            raise ArithmeticError(f"comultiplication and closed form disagree on {word}")
        return a
    if kind in ("u+", "u-"):
        alpha = DimVector.eps(Cyclic(n), gen[1] % n)
        return ut_coproduct(alpha, kind[1], word, n)
    if kind == "K":
        e = 0
        for s in word:
            (c,) = _omega_action(gen, s, n).values()
            e += c.max_deg()
        return {word: vpow(e)}
    if kind in ("z+", "z-"):
        # K_{±tδ} acts trivially on each ω_s
        out = {}
        for k in range(r):
            (s2,) = _omega_action(gen, word[k], n)
            _add(out, word[:k] + (s2,) + word[k + 1:], ONE)
        return out
    raise ValueError(f"unknown generator {gen}")


# semi-infinite wedges

class WedgeMonomial:
    __slots__ = ("charge", "prefix")

    def __init__(self, charge, prefix=()):
        prefix = list(prefix)
        if any(prefix[i] <= prefix[i + 1] for i in range(len(prefix) - 1)):
            raise ValueError("prefix must be strictly decreasing")
        while prefix and prefix[-1] == charge - len(prefix) + 1:
            prefix.pop()
        if prefix and prefix[-1] <= charge - len(prefix):
            raise ValueError("prefix does not meet the tail")
        self.charge = charge
        self.prefix = tuple(prefix)

    def padded(self, N):
        """The first N entries (N ≥ len(prefix))."""
        return self.prefix + tuple(self.charge - s + 1 for s in range(len(self.prefix) + 1, N + 1))

    def __eq__(self, other):
        return isinstance(other, WedgeMonomial) and (self.charge, self.prefix) == (other.charge, other.prefix)

    def __hash__(self):
        return hash((self.charge, self.prefix))

    def __lt__(self, other):
        return (self.charge, self.prefix) < (other.charge, other.prefix)

    def __repr__(self):
        return f"|{list(self.prefix)};{self.charge}>"

    def to_json(self):
        return {"charge": self.charge, "prefix": list(self.prefix)}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["charge"], obj["prefix"])


class WedgeVector:
    __slots__ = ("charge", "terms")

    def __init__(self, charge, terms=None):
        self.charge = charge
        self.terms = {}
        for w, c in (terms or {}).items():
            if w.charge != charge:
                raise ValueError("mixed charges")
            if c:
                self.terms[w] = LaurentPoly.coerce(c)

    @classmethod
    def monomial(cls, w, c=ONE):
        return cls(w.charge, {w: c})

    @classmethod
    def from_partition(cls, lam):
        return cls.monomial(kappa(lam))

    def __add__(self, other):
        if self.charge != other.charge and self.terms and other.terms:
            raise ValueError("mixed charges")
        charge = self.charge if self.terms else other.charge
        t = dict(self.terms)
        for w, c in other.terms.items():
            _add(t, w, c)
        out = WedgeVector(charge)
        out.terms = t
        return out

    def __sub__(self, other):
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, c):
        c = LaurentPoly.coerce(c)
        out = WedgeVector(self.charge)
        out.terms = {w: a * c for w, a in self.terms.items() if a * c}
        return out

    def __eq__(self, other):
        if not isinstance(other, WedgeVector):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.charge == other.charge and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c}){w}" for w, c in sorted(self.terms.items()))

    def to_json(self):
        return {"charge": self.charge,
                "terms": [{"w": w.to_json(), "coeff": c.to_json()} for w, c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["charge"], {WedgeMonomial.from_json(t["w"]): LaurentPoly.from_json(t["coeff"])
                                   for t in obj["terms"]})


def kappa(lam):
    return WedgeMonomial(0, tuple(p - s + 1 for s, p in enumerate(lam, start=1)))


def kappa_inv(w):
    if w.charge != 0:
        raise ValueError("kappa_inv needs charge 0")
    return tuple(p for p in (i + s - 1 for s, i in enumerate(w.prefix, start=1)) if p)


def to_fock(x):
    from .fock import FockVector  # fock imports this module
    return FockVector({kappa_inv(w): c for w, c in x.terms.items()})


def from_fock(x):
    out = WedgeVector(0)
    for lam, c in x.terms.items():
        out = out + WedgeVector.monomial(kappa(lam), c)
    return out


def tail_k_exponent(alpha, m):
    """K_alpha·|m⟩ = v^e |m⟩ for the semi-infinite tail |m⟩."""
    return alpha[m % alpha.kind.n]


def _gen_grade(gen, n):
    """(sign, alpha, t) describing how a generator meets the tail."""
    kind = gen[0]
    if kind in ("u+", "u-"):
        return kind[1], DimVector.eps(Cyclic(n), gen[1] % n), 0
    if kind in ("ut+", "ut-"):
        return kind[2], gen[1], gen[1].total()
    if kind in ("z+", "z-"):
        return kind[1], DimVector.delta(n, gen[1]), gen[1] * n
    return None, None, 0


def _act_prefix(fn, w, N, look, tail_exp, n):
    """Apply fn to the first N entries, straighten against `look` further tail
    entries, and reattach the remaining tail.

    Returns None when some result does not fit in front of the tail.
    """
    m = w.charge
    full = w.padded(N + look)
    rest = full[N:]
    tail_top = m - N - look
    out = {}
    for word, c in fn(full[:N]).items():
        for u, e in _straighten(word + rest, n).items():
            if u and u[-1] == tail_top:
                # adjacent equal entries across the junction
                continue
            if u and u[-1] < tail_top:
                return None
            _add(out, WedgeMonomial(m, u), c * e * vpow(tail_exp))
    return out


def _act_fixed_N(fn, w, N, n, extra, tail_exp):
    look = extra + 1
    while True:
        res = _act_prefix(fn, w, N, look, tail_exp, n)
        if res is not None:
            return res
        look += n


def _semi_infinite(fn, x, n, extra, tail_exp_fn):
    out = WedgeVector(x.charge)
    for w, c in x.terms.items():
        N = len(w.prefix) + extra + 2
        res = _act_fixed_N(fn, w, N, n, extra, tail_exp_fn(w.charge - N))
        if CHECK_PREFIX:
            N2 = N + n + 1
            res2 = _act_fixed_N(fn, w, N2, n, extra, tail_exp_fn(w.charge - N2))
            if res2 != res:
                raise ArithmeticError(f"action on {w} depends on the prefix length")
        part = WedgeVector(x.charge)
        part.terms = res
        out = out + part.scale(c)
    return out


def act_wedge(gen, x, n):
    """A generator on a semi-infinite wedge vector.

    Negative generators act on a long enough prefix only.  Positive
    generators and K_i also pick up the K-eigenvalue of the tail.
    """
    if n < 2:
        raise ValueError("n must be ≥ 2")
    sign, alpha, extra = _gen_grade(gen, n)
    kind = gen[0]
    if kind == "K":
        a = DimVector.eps(Cyclic(n), gen[1] % n)
        return _semi_infinite(lambda word: act_tensor(gen, word, n), x, n, 0,
                              lambda m: gen[2] * tail_k_exponent(a, m))
    if sign == "+":
        return _semi_infinite(lambda word: act_tensor(gen, word, n), x, n, extra,
                              lambda m: tail_k_exponent(alpha, m))
    return _semi_infinite(lambda word: act_tensor(gen, word, n), x, n, extra, lambda m: 0)


def heisenberg_B(t, sign, x, n):
    """B_t^±: shift one entry at a time by ∓tn and straighten."""
    if t < 1:
        raise ValueError("t must be ≥ 1")
    step = -t * n if sign == "+" else t * n

    def shifts(word):
        out = {}
        for k in range(len(word)):
            _add(out, word[:k] + (word[k] + step,) + word[k + 1:], ONE)
        return out

    return _semi_infinite(shifts, x, n, t * n, lambda m: 0)


def heisenberg_z(t, sign, x, n):
    """z_t^± on wedges through the comultiplication."""
    return act_wedge(("z" + sign, t), x, n)
