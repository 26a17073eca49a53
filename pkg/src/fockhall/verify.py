"""Relation and property suites behind `fockhall verify`.

Each suite yields Check records; a failing check carries the smallest
counterexample found (the first one met in size order).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import fock as F
from . import hall as H
from . import quiver as Q
from .quiver import Cyclic, DimVector, InfiniteLine, Multisegment, dominates, partitions_of
from .ring import ONE, ZERO, LaurentPoly, gauss_binomial, vpow

SUITES = ("relations", "gamma", "fock-triangularity", "decomposition", "schiffmann")


@dataclass
class Check:
    suite: str
    name: str
    ok: bool = True
    count: int = 0
    counterexample: str = ""
    details: list = field(default_factory=list)

    def record(self, ok, where):
        self.count += 1
        if not ok and self.ok:
            self.ok = False
            self.counterexample = where


def cartan(i, j, n):
    i, j = i % n, j % n
    if i == j:
        return 2
    if n == 2:
        return -2
    return -1 if (i - j) % n in (1, n - 1) else 0


def _op(gen, i, n):
    return lambda x: F.act_hayashi(gen, i, x, n)


def _compose(*ops):
    """ops[0] ∘ ops[1] ∘ ⋯ (the last one acts first)."""
    def run(x):
        for op in reversed(ops):
            x = op(x)
        return x
    return run


def serre(gen, i, j, n, x):
    """Σ_{a+b=1-c} (-1)^a [1-c choose a] X_i^a X_j X_i^b on x."""
    c = cartan(i, j, n)
    top = 1 - c
    out = F.FockVector()
    for a in range(top + 1):
        ops = [_op(gen, i, n)] * a + [_op(gen, j, n)] + [_op(gen, i, n)] * (top - a)
        term = _compose(*ops)(x)
        coeff = gauss_binomial(top, a) * LaurentPoly.const((-1) ** a)
        out = out + term.scale(coeff)
    return out


def _bracket(a, b, x):
    return a(b(x)) - b(a(x))


def relations(n, max_size, t_max=2):
    """The defining relations of the double Hall algebra on the Fock space, including the z_t^± parts."""
    dh2 = Check("relations", "K-conjugation of E and F")
    dh3 = Check("relations", "[E_i, F_j] = δ_ij (K_i - K_i^-1)/(v - v^-1)")
    dh4 = Check("relations", "quantum Serre relations for E")
    dh5 = Check("relations", "quantum Serre relations for F")
    zc = Check("relations", "[z_t^+, z_s^-] = δ_ts t v^t Σ_k v^(2tk)")
    zz = Check("relations", "z^± commute with each other, with K_i, and [E_i, z_t^-] = [z_t^+, F_i] = 0")
    for k in range(max_size + 1):
        for lam in partitions_of(k):
            x = F.FockVector.basis(lam)
            for i in range(n):
                Ki = _op("K", i, n)
                Kinv = _op("Kinv", i, n)
                for j in range(n):
                    a = cartan(i, j, n)
                    Ej, Fj = _op("E", j, n), _op("F", j, n)
                    dh2.record(Ki(Ej(x)) == Ej(Ki(x)).scale(vpow(a)), f"n={n} i={i} j={j} λ={lam}")
                    dh2.record(Ki(Fj(x)) == Fj(Ki(x)).scale(vpow(-a)), f"n={n} i={i} j={j} λ={lam}")
                    lhs = _bracket(_op("E", i, n), Fj, x)
                    if i == j:
                        diff = Ki(x) - Kinv(x)
                        rhs = F.FockVector({mu: c.divexact(vpow(1) - vpow(-1)) for mu, c in diff.terms.items()})
                    else:
                        rhs = F.FockVector()
                    dh3.record(lhs == rhs, f"n={n} i={i} j={j} λ={lam}")
                    if i != j:
                        dh4.record(serre("E", i, j, n, x).is_zero(), f"n={n} i={i} j={j} λ={lam}")
                        dh5.record(serre("F", i, j, n, x).is_zero(), f"n={n} i={i} j={j} λ={lam}")
            if k > 6:
                continue
            for t in range(1, t_max + 1):
                zp = lambda y, t=t: F.act_z(t, "+", y, n)
                zm = lambda y, t=t: F.act_z(t, "-", y, n)
                for s in range(1, t_max + 1):
                    zps = lambda y, s=s: F.act_z(s, "+", y, n)
                    zms = lambda y, s=s: F.act_z(s, "-", y, n)
                    scal = ZERO
                    if s == t:
                        scal = LaurentPoly.const(t) * vpow(t) * sum((vpow(2 * t * k2) for k2 in range(n)), ZERO)
                    zc.record(_bracket(zp, zms, x) == x.scale(scal), f"n={n} t={t} s={s} λ={lam}")
                    zz.record(_bracket(zp, zps, x).is_zero(), f"z+ n={n} t={t} s={s} λ={lam}")
                    zz.record(_bracket(zm, zms, x).is_zero(), f"z- n={n} t={t} s={s} λ={lam}")
                for i in range(n):
                    zz.record(_bracket(_op("E", i, n), zm, x).is_zero(), f"[E_{i}, z_{t}^-] λ={lam}")
                    zz.record(_bracket(zp, _op("F", i, n), x).is_zero(), f"[z_{t}^+, F_{i}] λ={lam}")
                    zz.record(_bracket(_op("E", i, n), zp, x).is_zero(), f"[E_{i}, z_{t}^+] λ={lam}")
                    zz.record(_bracket(_op("F", i, n), zm, x).is_zero(), f"[F_{i}, z_{t}^-] λ={lam}")
                    zz.record(_bracket(_op("K", i, n), zp, x).is_zero(), f"[K_{i}, z_{t}^+] λ={lam}")
    return [dh2, dh3, dh4, dh5, zc, zz]


def gamma(n, max_size):
    """γ_d on semisimple generators and the leading coefficient v^θ(λ)."""
    gen = Check("gamma", "γ_d(ũ_d̄) = v^(-h(d)) ũ_d")
    lead = Check("gamma", "coefficient of ũ_{m_λ^∞} in γ_{d(λ)}(ũ_{m_λ}) is v^θ(λ)")
    kind, line = Cyclic(n), InfiniteLine
    size = min(max_size, 4)
    for lo in range(-2, 1):
        for entries in _small_vectors(size, lo, lo + n + 1):
            d = DimVector(line, entries)
            if d.is_zero():
                continue
            dbar = DimVector(kind, dict(d.items()))
            x = H.HallElement.ut(Multisegment.semisimple(dbar))
            want = H.HallElement.ut(Multisegment.semisimple(d)).scale(vpow(-H.h_form(d, n)))
            gen.record(H.gamma_d(d, x) == want, f"d={d}")
    for k in range(1, min(max_size, 5) + 1):
        for lam in partitions_of(k):
            m = Q.m_of_partition(lam, kind)
            minf = Q.m_of_partition(lam, line)
            out = H.gamma_d(minf.dim(), H.HallElement.ut(m))
            c = out.tilde_terms().get(minf, ZERO)
            lead.record(c == vpow(F.theta(lam, n)), f"λ={lam}")
    return [gen, lead]


def _small_vectors(total, lo, hi):
    """Dicts on [lo, hi] with entries summing to at most `total`."""
    idx = list(range(lo, hi + 1))

    def rec(k, left):
        if k == len(idx):
            yield {}
            return
        for a in range(left + 1):
            for rest in rec(k + 1, left - a):
                out = dict(rest)
                if a:
                    out[idx[k]] = a
                yield out

    yield from rec(0, total)


def fock_triangularity(n, max_size):
    prop53 = Check("fock-triangularity", "ũ_{m_λ^∞}^-·|∅⟩ = |λ⟩")
    cor72 = Check("fock-triangularity", "ũ_{m_λ}^-·|∅⟩ ∈ |λ⟩ + lower terms")
    ts = Check("fock-triangularity", "θ(λ) + σ(λ) = 0")
    barc = Check("fock-triangularity", "bar is an involution, unitriangular")
    canon = Check("fock-triangularity", "b_λ is bar-invariant with corrections in v^-1 Z[v^-1]")
    ladder = Check("fock-triangularity", "ladder vectors are unitriangular")
    hw = Check("fock-triangularity", "|∅⟩ is a highest-weight vector of weight Λ_0")
    vac = F.FockVector.vacuum()
    for k in range(max_size + 1):
        for lam in partitions_of(k):
            x = F.FockVector.basis(lam)
            if k <= 6:
                minf = Q.m_of_partition(lam, InfiniteLine)
                prop53.record(F.act_pbw_inf(minf, "-", vac) == x, f"λ={lam}")
                m = Q.m_of_partition(lam, Cyclic(n))
                y = F.act_hall_n(m, "-", vac)
                cor72.record(y.coeff(lam) == ONE and all(dominates(lam, mu) for mu in y.terms), f"n={n} λ={lam}")
            ts.record(F.theta(lam, n) + F.sigma(lam, n) == 0, f"n={n} λ={lam}")
            b = F.bar_fock(x, n)
            barc.record(F.bar_fock(b, n) == x and b.coeff(lam) == ONE
                        and all(dominates(lam, mu) for mu in b.terms), f"n={n} λ={lam}")
            c = F.canonical_basis(lam, n)
            canon.record(F.bar_fock(c, n) == c and c.coeff(lam) == ONE
                         and all(mu == lam or (dominates(lam, mu) and a.max_deg() < 0) for mu, a in c.terms.items()),
                         f"n={n} λ={lam}")
            if Q.is_n_regular(lam, n):
                try:
                    F.ladder_vector(lam, n)
                    ok = True
                except ArithmeticError:
                    ok = False
                ladder.record(ok, f"n={n} λ={lam}")
    for i in range(n):
        hw.record(F.act_hayashi("K", i, vac, n) == vac.scale(vpow(1 if i == 0 else 0)), f"K_{i}")
        if i:
            hw.record(F.act_hayashi("F", i, vac, n).is_zero(), f"F_{i}")
    hw.record(F.act_hayashi("F", 0, F.act_hayashi("F", 0, vac, n), n).is_zero(), "F_0^2")
    for d in range(1, min(max_size, 5) + 1):
        for beta in _cyclic_vectors(n, d):
            for m in Q.multisegments_of(beta):
                hw.record(F.act_hall_n(m, "+", vac).is_zero(), f"u_{m}^+")
    return [prop53, cor72, ts, barc, canon, ladder, hw]


def _cyclic_vectors(n, total):
    kind = Cyclic(n)

    def rec(i, left):
        if i == n - 1:
            yield {i: left}
            return
        for a in range(left + 1):
            for rest in rec(i + 1, left - a):
                yield {i: a, **rest}

    for e in rec(0, total):
        yield DimVector(kind, e)


def decomposition(n, max_size):
    chk = Check("decomposition", "#partitions of content β = Σ_m p(m)·#n-regular of content β - mδ")
    for d in range(max_size + 1):
        for beta in _cyclic_vectors(n, d) if d else [DimVector(Cyclic(n))]:
            lhs, rhs = F.decomposition_census(beta, n)
            chk.record(lhs == rhs, f"β={beta}: {lhs} vs {rhs}")
            if lhs:
                chk.details.append((beta, lhs, rhs))
    return [chk]


def schiffmann(n, max_size):
    chk = Check("schiffmann", "b_{m_λ}^-·|∅⟩ = b_λ")
    vac = F.FockVector.vacuum()
    for k in range(1, max_size + 1):
        for lam in partitions_of(k):
            m = Q.m_of_partition(lam, Cyclic(n))
            b = H.canonical_basis_hall(m.dim())[m]
            chk.record(F.act_hall_n(b, "-", vac) == F.canonical_basis(lam, n), f"n={n} λ={lam}")
    return [chk]


def run_suite(name, n, max_size, t_max=2):
    if name == "relations":
        return relations(n, max_size, t_max)
    if name == "gamma":
        return gamma(n, max_size)
    if name == "fock-triangularity":
        return fock_triangularity(n, max_size)
    if name == "decomposition":
        return decomposition(n, max_size)
    if name == "schiffmann":
        return schiffmann(n, max_size)
    if name == "all":
        out = []
        for s in SUITES:
            out.extend(run_suite(s, n, max_size, t_max))
        return out
    raise ValueError(f"unknown suite {name}")
