"""Twisted generic Ringel–Hall algebras of the cyclic quiver and of the line.

Elements are stored in the u-basis; the rescaled basis
ũ_m = v^(dim End M(m) - dim M(m)) u_m is applied at the boundary.
Products are built from one-step products with semisimple modules, whose
structure constants come from finite-field counts (see quiver.left_counts).
"""
from __future__ import annotations

import json
from functools import lru_cache
from itertools import product

from . import quiver as Q
from .quiver import DimVector, Multisegment
from .ring import ONE, ZERO, IntPolyQ, LaurentPoly, RatFrac, vpow


class HallElement:
    """A finite Z[v, v^-1]-combination of u_m, all in one grade."""

    coeff_zero = ZERO

    __slots__ = ("kind", "grade", "terms")

    def __init__(self, kind, grade, terms=None):
        self.kind = kind
        self.grade = grade
        t = {}
        for m, c in (terms or {}).items():
            if c:
                if m.dim() != grade:
                    raise ValueError(f"{m} is not in grade {grade}")
                t[m] = c
        self.terms = t

    @classmethod
    def zero(cls, kind, grade):
        return cls(kind, grade)

    @classmethod
    def unit(cls, kind):
        return cls(kind, DimVector(kind), {Multisegment(kind): ONE})

    @classmethod
    def u(cls, m, c=ONE):
        return cls(m.kind, m.dim(), {m: c})

    @classmethod
    def ut(cls, m, c=ONE):
        return cls(m.kind, m.dim(), {m: c * vpow(tilde_exp(m))})

    def tilde_terms(self):
        """Coefficients in the ũ-basis."""
        return {m: c * vpow(-tilde_exp(m)) for m, c in self.terms.items()}

    @classmethod
    def from_tilde(cls, kind, grade, terms):
        return cls(kind, grade, {m: c * vpow(tilde_exp(m)) for m, c in terms.items()})

    def _check(self, other):
        if self.kind != other.kind or self.grade != other.grade:
            raise ValueError("elements live in different grades")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return type(self)(self.kind, self.grade, t)

    def __neg__(self):
        return type(self)(self.kind, self.grade, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return type(self)(self.kind, self.grade, {m: c * a for m, a in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, HallElement):
            return NotImplemented
        return self.kind == other.kind and self.grade == other.grade and self.terms == other.terms

    def __hash__(self):
        return hash((self.kind, self.grade, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*u{m!r}" for m, c in sorted(self.terms.items()))

    def to_json(self, tilde=False):
        terms = self.tilde_terms() if tilde else self.terms
        obj = dict(self.kind.to_json())
        obj["grade"] = self.grade.to_json()
        if tilde:
            obj["basis"] = "tilde"
        obj["terms"] = [{"m": m.to_json(), "coeff": _coeff_json(c)} for m, c in sorted(terms.items())]
        return obj

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        kind = Q.Cyclic(obj["n"]) if obj["kind"] == "cyclic" else Q.InfiniteLine
        grade = DimVector.from_json(kind, obj["grade"])
        terms = {Multisegment.from_json(kind, t["m"]): LaurentPoly.from_json(t["coeff"]) for t in obj["terms"]}
        if obj.get("basis") == "tilde":
            return cls.from_tilde(kind, grade, terms)
        return cls(kind, grade, terms)


class RatHallElement(HallElement):
    """Same as HallElement with coefficients in Q(v)."""

    __slots__ = ()

    def __init__(self, kind, grade, terms=None):
        super().__init__(kind, grade, {m: RatFrac.coerce(c) for m, c in (terms or {}).items()})


def _coeff_json(c):
    if isinstance(c, RatFrac):
        return {"num": c.num.to_json(), "den": c.den.to_json()}
    return c.to_json()


def tilde_exp(m):
    return Q.end_dim(m) - m.total_dim()


def _semisimple_tilde(alpha):
    return sum(a * a - a for _, a in alpha.items())


# one-step products

def mul_semisimple_left(alpha, x):
    """u_[S_alpha] · x."""
    kind = x.kind
    grade = x.grade + alpha
    if alpha.is_zero():
        return x
    table = Q.left_table(alpha, grade)
    out = {}
    for m, c in x.terms.items():
        tw = vpow(Q.euler_form(alpha, m.dim()))
        for p, poly in table.get(m, {}).items():
            term = c * tw * poly.to_laurent()
            out[p] = out[p] + term if p in out else term
    return HallElement(kind, grade, out)


def mul_semisimple_right(x, alpha):
    """x · u_[S_alpha]."""
    kind = x.kind
    grade = x.grade + alpha
    if alpha.is_zero():
        return x
    table = Q.right_table(alpha, grade)
    out = {}
    for m, c in x.terms.items():
        tw = vpow(Q.euler_form(m.dim(), alpha))
        for p, poly in table.get(m, {}).items():
            term = c * tw * poly.to_laurent()
            out[p] = out[p] + term if p in out else term
    return HallElement(kind, grade, out)


def tilde_semisimple_left(alpha, x):
    """ũ_alpha · x."""
    return mul_semisimple_left(alpha, x).scale(vpow(_semisimple_tilde(alpha)))


def distinguished_word(m):
    return Q.radical_layers(m)


def apply_word(word, x):
    """ũ_{α_1} ⋯ ũ_{α_ℓ} · x."""
    for alpha in reversed(list(word)):
        x = tilde_semisimple_left(alpha, x)
    return x


@lru_cache(maxsize=None)
def monomial_of_word(word):
    word = tuple(word)
    kind = word[0].kind if word else None
    if kind is None:
        raise ValueError("empty word")
    return apply_word(word, HallElement.unit(kind))


# expansion in monomials of distinguished words

@lru_cache(maxsize=None)
def deg_order(grade):
    """A linear extension of <=_deg on the grade (small first), lex tie-breaking."""
    ms = list(Q.multisegments_of(grade))
    below = {m: {p for p in ms if p != m and Q.deg_leq(p, m)} for m in ms}
    done, order = set(), []
    remaining = sorted(ms)
    while remaining:
        for m in remaining:
            if below[m] <= done:
                order.append(m)
                done.add(m)
                remaining.remove(m)
                break
        else:
            raise ArithmeticError("degeneration order has a cycle")
    return tuple(order), below


class Expansion:
    """Unitriangular data for one grade.

    theta[w][p] is the ũ_p coefficient of the monomial of the distinguished
    word of w; inverse[m][w] gives ũ_m = Σ_w inverse[m][w]·monomial(w).
    """

    def __init__(self, grade):
        self.grade = grade
        self.order, self.below = deg_order(grade)
        self.theta = {}
        for w in self.order:
            mono = monomial_of_word(tuple(distinguished_word(w))) if not w.is_zero() else HallElement.unit(grade.kind)
            tt = mono.tilde_terms()
            if tt.get(w) != ONE:
                raise ArithmeticError(f"monomial of {w} does not have leading coefficient 1")
            for p in tt:
                if p != w and p not in self.below[w]:
                    raise ArithmeticError(f"monomial of {w} is not unitriangular (term {p})")
            self.theta[w] = tt
        self.inverse = {}
        for m in self.order:
            row = {m: ONE}
            for p, c in self.theta[m].items():
                if p == m:
                    continue
                for w, e in self.inverse[p].items():
                    s = row.get(w, ZERO) - c * e
                    if s:
                        row[w] = s
                    else:
                        row.pop(w, None)
            self.inverse[m] = row

    def words(self, w):
        return tuple(distinguished_word(w))


@lru_cache(maxsize=None)
def expansion(grade):
    return Expansion(grade)


def expand_in_monomials(grade):
    return expansion(grade)


def to_monomials(x):
    """x as {w: coeff}, meaning Σ coeff · monomial(distinguished word of w)."""
    if x.grade.is_zero():
        c = x.terms.get(Multisegment(x.kind), ZERO)
        return {Multisegment(x.kind): c} if c else {}
    ex = expansion(x.grade)
    out = {}
    for m, c in x.tilde_terms().items():
        for w, e in ex.inverse[m].items():
            s = out.get(w, ZERO) + c * e
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return out


def mul(x, y):
    if x.kind != y.kind:
        raise ValueError("kind mismatch")
    grade = x.grade + y.grade
    out = HallElement.zero(x.kind, grade)
    if x.grade.is_zero():
        c = x.terms.get(Multisegment(x.kind), ZERO)
        return y.scale(c) if c else out
    for w, c in to_monomials(x).items():
        out = out + apply_word(distinguished_word(w), y).scale(c)
    return out


def hall_poly(m, m2, p):
    """φ^p_{m, m2}(q): submodules U ≅ M(m2) of M(p) with M(p)/U ≅ M(m)."""
    prod = mul(HallElement.u(m), HallElement.u(m2))
    c = prod.terms.get(p, ZERO)
    c = c * vpow(-Q.euler_form(m.dim(), m2.dim()))
    coeffs = {}
    for e, a in c.items():
        if e % 2 or e < 0:
            raise ArithmeticError(f"structure constant {c} is not a polynomial in v^2")
        coeffs[e // 2] = a
    return IntPolyQ(coeffs)


def aut_order(m):
    shift = Q.end_dim(m)
    poly = IntPolyQ({0: 1})
    for _, a in m.items():
        for j in range(1, a + 1):
            shift -= j
            poly = poly * IntPolyQ({j: 1, 0: -1})
    return poly * IntPolyQ({shift: 1})


# central elements

def _square_free_socle(m):
    return all(a <= 1 for _, a in Q.socle(m).items())


@lru_cache(maxsize=None)
def c_element(t, n):
    kind = Q.Cyclic(n)
    grade = DimVector.delta(n, t)
    terms = {}
    for m in Q.multisegments_of(grade):
        if not _square_free_socle(m):
            continue
        sign = -1 if (t + Q.end_dim(m)) % 2 else 1
        terms[m] = aut_order(m).to_laurent() * vpow(-2 * n * t) * sign
    return HallElement(kind, grade, terms)


@lru_cache(maxsize=None)
def x_element(t, n):
    x = c_element(t, n).scale(LaurentPoly.const(t))
    for s in range(1, t):
        x = x - mul(x_element(s, n), c_element(t - s, n))
    return x


def z_scalar(t, n):
    return RatFrac(vpow(t * n), vpow(t) - vpow(-t))


def z_element(t, n):
    x = x_element(t, n)
    s = z_scalar(t, n)
    return RatHallElement(x.kind, x.grade, {m: s * c for m, c in x.terms.items()})


def central_elements(t, n):
    if t < 1:
        raise ValueError("t must be ≥ 1")
    return c_element(t, n), x_element(t, n), z_element(t, n)


# pairing

def pairing_psi(a, b):
    """ψ(K_alpha u_m^+, K_beta u_m2^-)."""
    (alpha, m), (beta, m2) = a, b
    if m != m2:
        return RatFrac(ZERO)
    e = Q.symmetric_euler(alpha, beta) - Q.euler_form(m.dim(), m2.dim()) + 2 * m.total_dim()
    return RatFrac(vpow(e), aut_order(m).to_laurent())


def pairing_elements(x, y):
    """Bilinear extension of ψ to x^+ and y^- (no Cartan parts)."""
    zero = DimVector(x.kind)
    out = RatFrac(ZERO)
    for m, c in x.terms.items():
        d = y.terms.get(m)
        if d:
            out = out + RatFrac.coerce(c) * RatFrac.coerce(d) * pairing_psi((zero, m), (zero, m))
    return out


# the maps gamma_d

def kappa_form(a, b, n):
    """κ(a, b) = Σ_{i>j, i≡j} a_i (2 b_j - b_{j-1} - b_{j+1})."""
    out = 0
    for i, ai in a.items():
        for j in range(min(list(b.support()) + [i]) - 2, i):
            if (i - j) % n:
                continue
            out += ai * (2 * b[j] - b[j - 1] - b[j + 1])
    return out


def h_form(d, n):
    """h(d) = Σ_{i<j, i≡j} d_i (d_{j+1} - d_j)."""
    out = 0
    sup = d.support()
    if not sup:
        return 0
    hi = max(sup) + 1
    for i, di in d.items():
        for j in range(i + n, hi + 1, n):
            out += di * (d[j + 1] - d[j])
    return out


def _lifts(alpha, budget, n):
    """Line vectors a with residue reduction alpha and a <= budget."""
    res = {}
    for i, b in budget.items():
        res.setdefault(i % n, []).append((i, b))
    parts = []
    for r, a in alpha.items():
        slots = res.get(r, [])
        parts.append(list(_distribute(a, slots)))
    line = budget.kind
    for combo in product(*parts):
        d = {}
        for chunk in combo:
            d.update(chunk)
        yield DimVector(line, d)


def _distribute(a, slots):
    if a == 0:
        yield {}
        return
    if not slots:
        return
    (i, b), rest = slots[0], slots[1:]
    for k in range(min(a, b), -1, -1):
        for tail in _distribute(a - k, rest):
            out = dict(tail)
            if k:
                out[i] = k
            yield out


def _word_lifts(word, d, n):
    """All lifts (a_1, ..., a_l) of the word with Σ a_s = d, with their v-exponent."""
    out = []

    def rec(s, budget, chosen):
        if s == len(word):
            if budget.is_zero():
                e = 0
                for x in range(len(chosen)):
                    e -= h_form(chosen[x], n)
                    for y in range(x + 1, len(chosen)):
                        e += kappa_form(chosen[x], chosen[y], n)
                out.append((tuple(chosen), e))
            return
        for a in _lifts(word[s], budget, n):
            rec(s + 1, budget - a, chosen + [a])

    rec(0, d, [])
    return out


def gamma_d(d, x):
    if not x.kind.cyclic or d.kind.cyclic:
        raise ValueError("gamma_d maps the cyclic Hall algebra to the line")
    n = x.kind.n
    dbar = DimVector(x.kind, dict(d.items()))
    if dbar != x.grade:
        raise ValueError(f"grade mismatch: {d} reduces to {dbar}, element has grade {x.grade}")
    line = d.kind
    out = HallElement.zero(line, d)
    for w, c in to_monomials(x).items():
        for lift, e in _word_lifts(tuple(distinguished_word(w)), d, n):
            letters = tuple(a for a in lift if not a.is_zero())
            mono = monomial_of_word(letters) if letters else HallElement.unit(line)
            out = out + mono.scale(c * vpow(e))
    return out


# bar involution and canonical basis

@lru_cache(maxsize=None)
def bar_matrix(grade):
    """{m: {p: a}} with bar(ũ_m) = Σ_p a ũ_p."""
    ex = expansion(grade)
    out = {}
    for m in ex.order:
        row = {}
        for w, e in ex.inverse[m].items():
            eb = e.bar()
            for p, c in ex.theta[w].items():
                s = row.get(p, ZERO) + eb * c
                if s:
                    row[p] = s
                else:
                    row.pop(p, None)
        out[m] = row
    return out


def bar_hall(x):
    if x.grade.is_zero():
        return HallElement(x.kind, x.grade, {m: c.bar() for m, c in x.terms.items()})
    B = bar_matrix(x.grade)
    out = {}
    for m, c in x.tilde_terms().items():
        cb = c.bar()
        for p, a in B[m].items():
            out[p] = out.get(p, ZERO) + cb * a
    return HallElement.from_tilde(x.kind, x.grade, {p: c for p, c in out.items() if c})


def _negative_part(r):
    return LaurentPoly({e: a for e, a in r.items() if e < 0})


def triangular_fixed_points(order, barmat):
    """Bar-invariant unitriangular basis.

    order lists the index set so that barmat[m] only involves indices <= m;
    returns {m: {p: c}} with c_mm = 1 and c_pm in v^-1 Z[v^-1].
    """
    pos = {m: k for k, m in enumerate(order)}
    out = {}
    for m in order:
        coeffs = {m: ONE}
        for p in reversed(order[:pos[m]]):
            r = ZERO
            for q, c in coeffs.items():
                a = barmat[q].get(p)
                if a:
                    r = r + c.bar() * a
            if not r:
                continue
            if r + r.bar() or r[0]:
                raise ArithmeticError(f"bar-invariance obstruction at {p} in the column of {m}")
            c = _negative_part(r)
            if c:
                coeffs[p] = c
        out[m] = coeffs
    return out


@lru_cache(maxsize=None)
def canonical_basis_hall(grade):
    ex = expansion(grade)
    B = bar_matrix(grade)
    cols = triangular_fixed_points(list(ex.order), B)
    return {m: HallElement.from_tilde(grade.kind, grade, c) for m, c in cols.items()}
