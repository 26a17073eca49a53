"""The Fock space: partitions, coloured boxes and the module structures on it.

A box in row r and column c (both 1-based) has colour c - r.  F_i adds the
addable i-box, E_i removes the removable i-box.  The cyclic Hall algebra
acts through the maps gamma_d of the hall module; negative-part monomials
let their first letter act first, positive-part monomials their last.
"""
from __future__ import annotations

import json
from functools import lru_cache

from . import hall as H
from . import quiver as Q
from . import wedge as W
from .quiver import Cyclic, DimVector, InfiniteLine, Multisegment, dominates, partition, partitions_of
from .ring import ONE, ZERO, LaurentPoly, quantum_factorial, vpow


class FockVector:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for lam, c in (terms or {}).items():
            if c:
                t[partition(lam)] = LaurentPoly.coerce(c)
        self.terms = t

    @classmethod
    def basis(cls, lam, c=ONE):
        return cls({partition(lam): c})

    @classmethod
    def vacuum(cls):
        return cls({(): ONE})

    def __add__(self, other):
        t = dict(self.terms)
        for lam, c in other.terms.items():
            s = t.get(lam, ZERO) + c
            if s:
                t[lam] = s
            else:
                t.pop(lam, None)
        out = FockVector()
        out.terms = t
        return out

    def __neg__(self):
        return self.scale(LaurentPoly.const(-1))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = LaurentPoly.coerce(c)
        out = FockVector()
        out.terms = {lam: a * c for lam, a in self.terms.items() if a * c}
        return out

    def bar_coeffs(self):
        out = FockVector()
        out.terms = {lam: c.bar() for lam, c in self.terms.items()}
        return out

    def coeff(self, lam):
        return self.terms.get(partition(lam), ZERO)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})|{lam}>" for lam, c in sorted(self.terms.items(), reverse=True))

    def to_json(self):
        return [{"mu": list(lam), "coeff": c.to_json()} for lam, c in sorted(self.terms.items(), reverse=True)]

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls({tuple(t["mu"]): LaurentPoly.from_json(t["coeff"]) for t in obj})


def _linear(fn):
    """Extend a map partition -> {partition: coeff} linearly to FockVectors."""
    def apply(x):
        out = {}
        for lam, c in x.terms.items():
            for mu, a in fn(lam).items():
                s = out.get(mu, ZERO) + c * a
                if s:
                    out[mu] = s
                else:
                    out.pop(mu, None)
        v = FockVector()
        v.terms = out
        return v
    return apply


# box combinatorics

@lru_cache(maxsize=None)
def addable(lam):
    """{colour: row} of addable boxes."""
    out = {}
    t = len(lam)
    for r in range(1, t + 2):
        prev = lam[r - 2] if r >= 2 else None
        cur = lam[r - 1] if r <= t else 0
        if prev is None or prev > cur:
            out[cur + 1 - r] = r
    return out


@lru_cache(maxsize=None)
def removable(lam):
    out = {}
    t = len(lam)
    for r in range(1, t + 1):
        nxt = lam[r] if r < t else 0
        if lam[r - 1] > nxt:
            out[lam[r - 1] - r] = r
    return out


def n_color(lam, i):
    return (1 if i in addable(lam) else 0) - (1 if i in removable(lam) else 0)


@lru_cache(maxsize=None)
def _n_table(lam):
    out = {}
    for c in addable(lam):
        out[c] = out.get(c, 0) + 1
    for c in removable(lam):
        out[c] = out.get(c, 0) - 1
    return {c: a for c, a in out.items() if a}


def n_plus(lam, i, n):
    return sum(a for c, a in _n_table(lam).items() if c > i and (c - i) % n == 0)


def n_minus(lam, i, n):
    return sum(a for c, a in _n_table(lam).items() if c < i and (c - i) % n == 0)


def n_residue(lam, i, n):
    return sum(a for c, a in _n_table(lam).items() if (c - i) % n == 0)


def box_profile(lam, i, n=None):
    lam = partition(lam)
    out = {
        "addable": 1 if i in addable(lam) else 0,
        "removable": 1 if i in removable(lam) else 0,
        "n": n_color(lam, i),
    }
    if n is not None:
        out.update({"n_plus": n_plus(lam, i, n), "n_minus": n_minus(lam, i, n),
                    "n_residue": n_residue(lam, i, n)})
    return out


def color_table(lam):
    return [[c - r for c in range(1, p + 1)] for r, p in enumerate(lam, start=1)]


def add_box(lam, row):
    parts = list(lam)
    if row > len(parts):
        parts.append(1)
    else:
        parts[row - 1] += 1
    return tuple(parts)


def remove_box(lam, row):
    parts = list(lam)
    parts[row - 1] -= 1
    return tuple(p for p in parts if p)


def content(lam, n):
    d = {}
    for r, p in enumerate(lam, start=1):
        for c in range(1, p + 1):
            d[(c - r) % n] = d.get((c - r) % n, 0) + 1
    return DimVector(Cyclic(n), d)


def line_content(lam):
    d = {}
    for r, p in enumerate(lam, start=1):
        for c in range(1, p + 1):
            d[c - r] = d.get(c - r, 0) + 1
    return DimVector(InfiniteLine, d)


# the sl_infinity action

def _inf_basis(gen, i, lam):
    if gen == "F":
        r = addable(lam).get(i)
        return {} if r is None else {add_box(lam, r): ONE}
    if gen == "E":
        r = removable(lam).get(i)
        return {} if r is None else {remove_box(lam, r): ONE}
    if gen == "K":
        return {lam: vpow(n_color(lam, i))}
    if gen == "Kinv":
        return {lam: vpow(-n_color(lam, i))}
    raise ValueError(f"unknown generator {gen}")


def act_inf(gen, i, x):
    return _linear(lambda lam: _inf_basis(gen, i, lam))(x)


# the Hayashi action of the quantum affine algebra

def _hayashi_basis(gen, i, n, lam):
    i %= n
    if gen == "F":
        out = {}
        for c, r in addable(lam).items():
            if (c - i) % n == 0:
                out[add_box(lam, r)] = vpow(-n_plus(lam, c, n))
        return out
    if gen == "E":
        out = {}
        for c, r in removable(lam).items():
            if (c - i) % n == 0:
                out[remove_box(lam, r)] = vpow(n_minus(lam, c, n))
        return out
    if gen == "K":
        return {lam: vpow(n_residue(lam, i, n))}
    if gen == "Kinv":
        return {lam: vpow(-n_residue(lam, i, n))}
    raise ValueError(f"unknown generator {gen}")


def act_hayashi(gen, i, x, n):
    if n < 2:
        raise ValueError("n must be ≥ 2")
    return _linear(lambda lam: _hayashi_basis(gen, i, n, lam))(x)


def divided_power(gen, i, k, x, n):
    """E_i^(k) or F_i^(k) in the Hayashi action, dividing exactly by [k]!."""
    for _ in range(k):
        x = act_hayashi(gen, i, x, n)
    f = quantum_factorial(k)
    out = FockVector()
    out.terms = {lam: c.divexact(f) for lam, c in x.terms.items()}
    return out


# Hall-algebra monomials acting through colour lifts

def _kappa_add(prev, new, n):
    """κ(prev, new) for colour multisets given as dicts colour -> count."""
    # b_j enters κ with weight 2 at index j and -1 at indices j±1
    out = 0
    for i, a in prev.items():
        for j, b in new.items():
            for k, w in ((j, 2), (j + 1, -1), (j - 1, -1)):
                if i > k and (i - k) % n == 0:
                    out += a * b * w
    return out


def _h_set(colors, n):
    """h(d) for a 0/1 vector given by its colour set."""
    out = 0
    s = set(colors)
    for i in s:
        for j in s | {c - 1 for c in s}:
            if j > i and (j - i) % n == 0:
                out += (1 if j + 1 in s else 0) - (1 if j in s else 0)
    return out


def _letter_lifts_neg(mu, alpha, n, window):
    """Colour sets lifting alpha that can be added to mu in decreasing colour order."""
    out = []

    def rec(nu, bound, rem, chosen):
        if not any(rem.values()):
            out.append((nu, tuple(chosen)))
            return
        for c, r in sorted(addable(nu).items(), reverse=True):
            if c >= bound:
                continue
            if window is not None and not (window[0] <= c <= window[1]):
                continue
            res = c % n
            if rem.get(res, 0) <= 0:
                continue
            rem[res] -= 1
            rec(add_box(nu, r), c, rem, chosen + [c])
            rem[res] += 1

    rec(mu, float("inf"), dict(alpha.items()), [])
    return out


def _letter_lifts_pos(mu, alpha, n, window):
    """Colour sets lifting alpha removable from mu in increasing colour order."""
    out = []

    def rec(nu, bound, rem, chosen):
        if not any(rem.values()):
            out.append((nu, tuple(chosen)))
            return
        for c, r in sorted(removable(nu).items()):
            if c <= bound:
                continue
            if window is not None and not (window[0] <= c <= window[1]):
                continue
            res = c % n
            if rem.get(res, 0) <= 0:
                continue
            rem[res] -= 1
            rec(remove_box(nu, r), c, rem, chosen + [c])
            rem[res] += 1

    rec(mu, float("-inf"), dict(alpha.items()), [])
    return out


def default_window(lam, total):
    return (-(len(lam) + total + 1), (lam[0] if lam else 0) + total + 1)


@lru_cache(maxsize=None)
def word_action(word, sign, lam, n, window="default"):
    """Action of the monomial ũ_{α_1}⋯ũ_{α_ℓ} (cyclic letters) on |lam>.

    Returns {mu: coeff}.  window="default" restricts lifts to the standard
    colour window, None lifts without restriction.
    """
    total = sum(a.total() for a in word)
    win = default_window(lam, total) if window == "default" else window
    if sign == "-":
        states = {lam: (ONE, {})}
        for alpha in word:
            nxt = {}
            for mu, (c, added) in states.items():
                for nu, cols in _letter_lifts_neg(mu, alpha, n, win):
                    new = {}
                    for col in cols:
                        new[col] = new.get(col, 0) + 1
                    e = _kappa_add(added, new, n) - _h_set(cols, n)
                    e -= sum(n_plus(lam, col, n) for col in cols)
                    acc = dict(added)
                    for col in cols:
                        acc[col] = acc.get(col, 0) + 1
                    term = c * vpow(e)
                    if nu in nxt:
                        nxt[nu] = (nxt[nu][0] + term, acc)
                    else:
                        nxt[nu] = (term, acc)
            states = {k: v for k, v in nxt.items() if v[0]}
        return {mu: c for mu, (c, _) in states.items()}
    if sign == "+":
        states = {lam: (ONE, {})}
        for alpha in reversed(word):
            nxt = {}
            for mu, (c, removed) in states.items():
                for nu, cols in _letter_lifts_pos(mu, alpha, n, win):
                    new = {}
                    for col in cols:
                        new[col] = new.get(col, 0) + 1
                    e = _kappa_add(new, removed, n) - _h_set(cols, n)
                    e += sum(n_minus(lam, col, n) for col in cols)
                    acc = dict(removed)
                    for col in cols:
                        acc[col] = acc.get(col, 0) + 1
                    term = c * vpow(e)
                    if nu in nxt:
                        nxt[nu] = (nxt[nu][0] + term, acc)
                    else:
                        nxt[nu] = (term, acc)
            states = {k: v for k, v in nxt.items() if v[0]}
        return {mu: c for mu, (c, _) in states.items()}
    raise ValueError("sign must be '+' or '-'")


def _as_hall(elem, kind):
    if isinstance(elem, Multisegment):
        return H.HallElement.ut(elem)
    return elem


def act_hall_n(elem, sign, x, window="default"):
    """Action of x^± for x in the cyclic Hall algebra; a Multisegment m means ũ_m."""
    elem = _as_hall(elem, None)
    if not elem.kind.cyclic:
        raise ValueError("act_hall_n expects a cyclic Hall element")
    n = elem.kind.n
    mono = H.to_monomials(elem)
    out = {}
    for lam, c in x.terms.items():
        for w, a in mono.items():
            word = tuple(H.distinguished_word(w))
            if not word:
                res = {lam: ONE}
            else:
                res = word_action(word, sign, lam, n, window)
            for mu, b in res.items():
                s = out.get(mu, ZERO) + c * a * b
                if s:
                    out[mu] = s
                else:
                    out.pop(mu, None)
    v = FockVector()
    v.terms = out
    return v


def _line_letter(alpha, sign, lam):
    """ũ_alpha^± on |lam> for a semisimple line vector alpha."""
    if any(a >= 2 for _, a in alpha.items()):
        return {}
    cols = sorted(alpha.support(), reverse=(sign == "-"))
    mu = lam
    for c in cols:
        table = addable(mu) if sign == "-" else removable(mu)
        r = table.get(c)
        if r is None:
            return {}
        mu = add_box(mu, r) if sign == "-" else remove_box(mu, r)
    return {mu: ONE}


def act_pbw_inf(z, sign, x):
    """ũ_z^± for z over the infinite line, acting by the sl_infinity action."""
    elem = _as_hall(z, None)
    if elem.kind.cyclic:
        raise ValueError("act_pbw_inf expects a multisegment over the line")
    mono = H.to_monomials(elem)
    out = FockVector()
    for w, a in mono.items():
        word = list(H.distinguished_word(w))
        if sign == "+":
            word = word[::-1]
        cur = x
        for alpha in word:
            cur = _linear(lambda lam, alpha=alpha: _line_letter(alpha, sign, lam))(cur)
        out = out + cur.scale(a)
    return out


def act_z(t, sign, x, n):
    out = FockVector()
    for lam, c in x.terms.items():
        w = W.heisenberg_z(t, sign, W.WedgeVector.from_partition(lam), n)
        out = out + W.to_fock(w).scale(c)
    return out


# blocks, bar involution, canonical basis

@lru_cache(maxsize=None)
def block(beta):
    """Partitions with residue content beta, in increasing lexicographic order."""
    n = beta.kind.n
    size = beta.total()
    return tuple(sorted(lam for lam in partitions_of(size) if content(lam, n) == beta))


@lru_cache(maxsize=None)
def monomial_vector(lam, n):
    """A_lam: the radical-word monomial of m_lam acting on the vacuum."""
    m = Q.m_of_partition(lam, Cyclic(n))
    word = tuple(H.distinguished_word(m))
    if not word:
        return {(): ONE}
    return word_action(word, "-", (), n)


@lru_cache(maxsize=None)
def _bar_block(beta):
    n = beta.kind.n
    order = block(beta)
    bars = {}
    for lam in order:
        A = monomial_vector(lam, n)
        if A.get(lam) != ONE:
            raise ArithmeticError(f"monomial vector of {lam} has leading coefficient {A.get(lam)}")
        for mu in A:
            if not dominates(lam, mu):
                raise ArithmeticError(f"monomial vector of {lam} is not dominance-triangular at {mu}")
        row = dict(A)
        for mu, tau in A.items():
            if mu == lam:
                continue
            tb = tau.bar()
            for nu, c in bars[mu].items():
                s = row.get(nu, ZERO) - tb * c
                if s:
                    row[nu] = s
                else:
                    row.pop(nu, None)
        bars[lam] = row
    return bars


def bar_fock(x, n):
    out = FockVector()
    for lam, c in x.terms.items():
        row = _bar_block(content(lam, n))[lam]
        out = out + FockVector(row).scale(c.bar())
    return out


@lru_cache(maxsize=None)
def _canonical_block(beta):
    order = list(block(beta))
    cols = H.triangular_fixed_points(order, _bar_block(beta))
    return cols


def canonical_basis(lam, n):
    lam = partition(lam)
    return FockVector(_canonical_block(content(lam, n))[lam])


def ladder_vector(lam, n):
    lam = partition(lam)
    word = Q.ladder_word(lam, n)
    x = FockVector.vacuum()
    for i, k in reversed(word):
        x = divided_power("F", i, k, x, n)
    if x.coeff(lam) != ONE or any(not dominates(lam, mu) for mu in x.terms):
        raise ArithmeticError(f"ladder vector of {lam} is not unitriangular")
    return x


# statistics and counting

def theta(lam, n):
    layers = Q.radical_layers(Q.m_of_partition(lam, InfiniteLine))
    e = 0
    for s in range(len(layers)):
        e -= H.h_form(layers[s], n)
        for t in range(s + 1, len(layers)):
            e += H.kappa_form(layers[s], layers[t], n)
    return e


def sigma(lam, n):
    d = Q.m_of_partition(lam, InfiniteLine).dim()
    return -sum(a for i, a in d.items() if i < 0 and i % n == 0)


def _count_n_regular(beta, n):
    return sum(1 for lam in block(beta) if Q.is_n_regular(lam, n))


def decomposition_census(beta, n):
    lhs = len(block(beta))
    rhs = 0
    for m in range(min(beta[i] for i in range(n)) + 1):
        cur = DimVector(Cyclic(n), {i: beta[i] - m for i in range(n)})
        rhs += len(partitions_of(m)) * _count_n_regular(cur, n)
    return lhs, rhs
