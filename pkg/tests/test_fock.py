import json

import pytest
from hypothesis import given, strategies as st

from fockhall import fock as F
from fockhall import hall as H
from fockhall import quiver as Q
from fockhall import wedge as W
from fockhall.quiver import Cyclic, DimVector, InfiniteLine, Multisegment, dominates, partitions_of
from fockhall.ring import ONE, V, LaurentPoly, vpow

vac = F.FockVector.vacuum()
VINV = vpow(-1)


def ket(*lam, c=ONE):
    return F.FockVector.basis(tuple(lam), c)


def partitions_upto(k):
    return [lam for j in range(k + 1) for lam in partitions_of(j)]


def cyclic_vectors(n, total):
    out = []

    def rec(i, left, acc):
        if i == n - 1:
            out.append(DimVector(Cyclic(n), {**acc, i: left}))
            return
        for a in range(left + 1):
            rec(i + 1, left - a, {**acc, i: a})

    rec(0, total, {})
    return out


# colored boxes

def test_color_table():
    assert F.color_table((4, 2, 2, 1)) == [[0, 1, 2, 3], [-1, 0], [-2, -1], [-3]]


def test_box_profile_examples():
    assert F.box_profile((), 0)["n"] == 1
    assert all(F.box_profile((), i)["n"] == 0 for i in (-2, -1, 1, 2))
    assert F.box_profile((1,), 1)["n"] == 1
    assert F.box_profile((1,), -1)["n"] == 1
    assert F.box_profile((1,), 0) == {"addable": 0, "removable": 1, "n": -1}


def shape_scan(lam):
    """Addable and removable colours by scanning every cell."""
    cells = {(r, c) for r, p in enumerate(lam, start=1) for c in range(1, p + 1)}
    add, rem = [], []
    for r in range(1, len(lam) + 2):
        for c in range(1, (lam[0] if lam else 0) + 2):
            if (r, c) in cells:
                if (r + 1, c) not in cells and (r, c + 1) not in cells:
                    rem.append(c - r)
            elif (r == 1 or (r - 1, c) in cells) and (c == 1 or (r, c - 1) in cells):
                add.append(c - r)
    return add, rem


def test_profiles_match_shape_scan():
    for lam in partitions_upto(8):
        add, rem = shape_scan(lam)
        assert sorted(F.addable(lam)) == sorted(add)
        assert sorted(F.removable(lam)) == sorted(rem)
        # n_i sums to 1 over all colours
        assert sum(F.n_color(lam, i) for i in range(-10, 11)) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_residue_profile_split(n):
    for lam in partitions_upto(6):
        for i in range(-6, 7):
            p = F.box_profile(lam, i, n)
            assert p["n_residue"] == p["n_plus"] + p["n_minus"] + p["n"]


# sl_infinity and Hayashi actions

def test_act_inf_examples():
    assert F.act_inf("F", 0, vac) == ket(1)
    assert F.act_inf("E", 1, vac).is_zero()
    assert F.act_inf("K", 0, ket(1)) == ket(1, c=VINV)


def test_act_hayashi_examples():
    assert F.act_hayashi("F", 0, vac, 2) == ket(1)
    assert F.act_hayashi("F", 1, ket(1), 2) == ket(2) + ket(1, 1, c=VINV)
    assert F.act_hayashi("K", 0, vac, 2) == vac.scale(V)


def test_hayashi_rejects_small_n():
    with pytest.raises(ValueError):
        F.act_hayashi("F", 0, vac, 1)


def test_divided_powers():
    sq = F.act_hayashi("F", 1, F.act_hayashi("F", 1, ket(1), 2), 2)
    half = F.divided_power("F", 1, 2, ket(1), 2)
    assert half.scale(V + VINV) == sq
    assert F.divided_power("F", 0, 1, vac, 2) == ket(1)


# the line: ũ_z^- through Chevalley monomials

def test_segment_from_zero():
    for l in range(1, 6):
        z = Multisegment(InfiniteLine, {(0, l): 1})
        assert F.act_pbw_inf(z, "-", vac) == ket(l)
    assert F.act_pbw_inf(Multisegment(InfiniteLine, {(1, 1): 1}), "-", vac).is_zero()


def test_hook_scalar():
    # ũ_[i,l]^-|∅⟩ = (-v^-1)^(-i) |(i+l, 1^(-i))⟩ for i ≤ 0 ≤ i+l-1
    for i in range(-3, 1):
        for l in range(1 - i, 6):
            lam = (i + l,) + (1,) * (-i)
            want = ket(*lam, c=LaurentPoly.mono(i, (-1) ** (-i)))
            assert F.act_pbw_inf(Multisegment(InfiniteLine, {(i, l): 1}), "-", vac) == want
            # the cyclic route with a period too long to wrap around
            n = l + 2
            got = F.act_hall_n(Multisegment(Cyclic(n), {(i % n, l): 1}), "-", vac)
            assert got == want


def test_line_pbw_on_vacuum_is_a_basis_vector():
    for lam in partitions_upto(6):
        assert F.act_pbw_inf(Q.m_of_partition(lam, InfiniteLine), "-", vac) == F.FockVector.basis(lam)


def line_multisegments(max_dim, lo=-3, hi=3):
    segs = [(i, l) for i in range(lo, hi + 1) for l in range(1, max_dim + 1) if i + l - 1 <= hi]
    out = []

    def rec(k, left, acc):
        if k == len(segs):
            if acc:
                out.append(Multisegment(InfiniteLine, dict(acc)))
            return
        i, l = segs[k]
        for a in range(left // l + 1):
            rec(k + 1, left - a * l, acc + ([(segs[k], a)] if a else []))

    rec(0, max_dim, [])
    return out


def test_two_segments_with_one_top_kill():
    small = [(), (1,), (2,), (1, 1), (2, 1)]
    killed = 0
    for z in line_multisegments(4, -2, 2):
        tops = {}
        for (i, l), a in z.items():
            tops[i] = tops.get(i, 0) + a
        if max(tops.values()) >= 2:
            killed += 1
            for lam in small:
                assert F.act_pbw_inf(z, "-", F.FockVector.basis(lam)).is_zero(), (z, lam)
    assert killed


# the cyclic Hall algebra on Λ^∞

@pytest.mark.parametrize("n", [2, 3])
def test_simple_generators_match_hayashi(n):
    kind = Cyclic(n)
    for lam in partitions_upto(6):
        x = F.FockVector.basis(lam)
        for i in range(n):
            m = Multisegment.semisimple(DimVector.eps(kind, i))
            assert F.act_hall_n(m, "-", x) == F.act_hayashi("F", i, x, n)
            assert F.act_hall_n(m, "+", x) == F.act_hayashi("E", i, x, n)


@pytest.mark.parametrize("n", [2, 3])
def test_cyclic_pbw_on_vacuum_is_triangular(n):
    for lam in partitions_upto(6):
        y = F.act_hall_n(Q.m_of_partition(lam, Cyclic(n)), "-", vac)
        assert y.coeff(lam) == ONE
        assert all(dominates(lam, mu) for mu in y.terms)


@pytest.mark.parametrize("n", [2, 3])
def test_support_below_in_degeneration_order(n):
    for d in range(1, 6):
        for beta in cyclic_vectors(n, d):
            for m in Q.multisegments_of(beta):
                y = F.act_hall_n(m, "-", vac)
                for mu in y.terms:
                    assert Q.deg_leq(Q.m_of_partition(mu, Cyclic(n)), m), (m, mu)


@pytest.mark.parametrize("n", [2, 3])
def test_block_matrix_is_unitriangular(n):
    for d in range(1, 7):
        for beta in cyclic_vectors(n, d):
            order = F.block(beta)
            for lam in order:
                y = F.act_hall_n(Q.m_of_partition(lam, Cyclic(n)), "-", vac)
                assert set(y.terms) <= set(order)
                assert y.coeff(lam) == ONE


@pytest.mark.parametrize("n", [2, 3])
def test_window_widening_is_harmless(n):
    for d in range(1, 5):
        for beta in cyclic_vectors(n, d):
            for m in Q.multisegments_of(beta):
                for lam in [(), (1,), (2, 1), (3,)]:
                    x = F.FockVector.basis(lam)
                    for sign in "+-":
                        assert F.act_hall_n(m, sign, x) == F.act_hall_n(m, sign, x, window=None)


@pytest.mark.parametrize("n", [2, 3])
def test_highest_weight_vacuum(n):
    for d in range(1, 6):
        for beta in cyclic_vectors(n, d):
            for m in Q.multisegments_of(beta):
                assert F.act_hall_n(m, "+", vac).is_zero()
    for i in range(n):
        assert F.act_hayashi("K", i, vac, n) == vac.scale(vpow(1 if i == 0 else 0))
        if i:
            assert F.act_hayashi("F", i, vac, n).is_zero()
    assert F.act_hayashi("F", 0, F.act_hayashi("F", 0, vac, n), n).is_zero()


# z_t^± on Λ^∞

def test_z_examples():
    assert F.act_z(1, "+", vac, 2).is_zero()
    zp = lambda y: F.act_z(1, "+", y, 2)
    zm = lambda y: F.act_z(1, "-", y, 2)
    assert zp(zm(vac)) - zm(zp(vac)) == vac.scale(V + vpow(3))


@pytest.mark.parametrize("n", [2, 3])
def test_z_commutes_with_negative_generators(n):
    for lam in partitions_upto(5):
        x = F.FockVector.basis(lam)
        for i in range(n):
            for t in (1, 2):
                for gen, sign in (("F", "+"), ("E", "-")):
                    a = F.act_hayashi(gen, i, F.act_z(t, sign, x, n), n)
                    b = F.act_z(t, sign, F.act_hayashi(gen, i, x, n), n)
                    assert a == b


@pytest.mark.parametrize("n", [2, 3])
def test_z_matches_central_hall_elements(n):
    # x_t acts as (v^t - v^-t) v^(-tn) z_t on both sides
    for t in (1, 2):
        x = H.x_element(t, n)
        scal = (vpow(t) - vpow(-t)) * vpow(-t * n)
        for lam in partitions_upto(3):
            b = F.FockVector.basis(lam)
            for sign in "+-":
                assert F.act_hall_n(x, sign, b) == F.act_z(t, sign, b, n).scale(scal)


# partition side against wedge side

@pytest.mark.parametrize("n", [2, 3])
def test_kappa_intertwines(n):
    kind = Cyclic(n)
    gens = [("u+", i) for i in range(n)] + [("u-", i) for i in range(n)] + [("K", i, 1) for i in range(n)]
    gens += [("ut" + s, a) for s in "+-" for a in
             [DimVector(kind, {0: 1, 1: 1}), DimVector(kind, {0: 2}), DimVector(kind, {i: 1 for i in range(n)})]]
    for lam in partitions_upto(4):
        x = F.FockVector.basis(lam)
        w = W.WedgeVector.from_partition(lam)
        for g in gens:
            if g[0] in ("u+", "u-"):
                part = F.act_hayashi("E" if g[0] == "u+" else "F", g[1], x, n)
            elif g[0] == "K":
                part = F.act_hayashi("K", g[1], x, n)
            else:
                part = F.act_hall_n(Multisegment.semisimple(g[1]), g[0][2], x)
            assert W.to_fock(W.act_wedge(g, w, n)) == part, (g, lam)


# bar involution and canonical basis

@pytest.mark.parametrize("n", [2, 3])
def test_bar_involution(n):
    assert F.bar_fock(vac, n) == vac
    for lam in partitions_upto(7):
        x = F.FockVector.basis(lam)
        b = F.bar_fock(x, n)
        assert F.bar_fock(b, n) == x
        assert b.coeff(lam) == ONE
        assert all(dominates(lam, mu) for mu in b.terms)


def test_bar_is_semilinear():
    x = ket(2, c=V) + ket(1, 1, c=vpow(3))
    y = ket(2, c=VINV) + ket(1, 1, c=vpow(-3))
    assert F.bar_fock(x, 2) == F.bar_fock(ket(2), 2).scale(VINV) + F.bar_fock(ket(1, 1), 2).scale(vpow(-3))
    assert F.bar_fock(F.bar_fock(y, 2), 2) == y


def test_canonical_examples():
    assert F.canonical_basis((), 2) == vac
    assert F.canonical_basis((2,), 2) == ket(2) + ket(1, 1, c=VINV)
    assert F.canonical_basis((1, 1), 2) == ket(1, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_canonical_basis_properties(n):
    for lam in partitions_upto(7):
        b = F.canonical_basis(lam, n)
        assert F.bar_fock(b, n) == b
        assert b.coeff(lam) == ONE
        for mu, c in b.terms.items():
            if mu != lam:
                assert dominates(lam, mu) and c.max_deg() < 0


def test_ladder_examples():
    assert F.ladder_vector((1,), 2) == ket(1)
    assert F.ladder_vector((2,), 2) == ket(2) + ket(1, 1, c=VINV)


@pytest.mark.parametrize("n", [2, 3])
def test_ladder_vectors_are_unitriangular_and_bar_invariant(n):
    for lam in partitions_upto(7):
        if not Q.is_n_regular(lam, n):
            continue
        x = F.ladder_vector(lam, n)
        assert x.coeff(lam) == ONE
        assert all(dominates(lam, mu) for mu in x.terms)
        assert F.bar_fock(x, n) == x


# statistics

def test_content_and_sigma_examples():
    assert F.content((2,), 2) == DimVector(Cyclic(2), {0: 1, 1: 1})
    assert F.sigma((), 2) == 0


@pytest.mark.parametrize("n", [2, 3])
def test_theta_plus_sigma(n):
    for lam in partitions_upto(7):
        assert F.theta(lam, n) + F.sigma(lam, n) == 0


def test_census_examples():
    kind = Cyclic(2)
    assert F.decomposition_census(DimVector(kind, {0: 1, 1: 1}), 2) == (2, 2)
    assert F.decomposition_census(DimVector(kind), 2) == (1, 1)
    assert F.decomposition_census(DimVector(kind, {0: 1}), 2) == (1, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_census_balances(n):
    for d in range(1, 9):
        for beta in cyclic_vectors(n, d):
            lhs, rhs = F.decomposition_census(beta, n)
            assert lhs == rhs
            assert lhs == sum(1 for lam in partitions_of(d) if F.content(lam, n) == beta)


# serialization

@given(st.dictionaries(st.lists(st.integers(1, 4), max_size=3).map(lambda xs: tuple(sorted(xs, reverse=True))),
                       st.integers(-3, 3), max_size=4))
def test_fock_json_round_trip(d):
    x = F.FockVector({lam: LaurentPoly.mono(e, 2) for lam, e in d.items()})
    assert F.FockVector.from_json(json.dumps(x.to_json())) == x
