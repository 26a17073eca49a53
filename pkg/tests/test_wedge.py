import itertools
import json

import pytest
from hypothesis import given, strategies as st

from fockhall import wedge as W
from fockhall import fock as F
from fockhall.quiver import partitions_of
from fockhall.ring import ONE, V, LaurentPoly, vpow


def lin(f, vec):
    out = {}
    for w, c in vec.items():
        for u, e in f(w).items():
            W._add(out, u, c * e)
    return out


def T(k, n):
    return lambda w: W.hecke_T(w, k, n)


def X(t, n):
    # ω·X_t lowers the t-th index by n
    return lambda w: {w[:t - 1] + (w[t - 1] - n,) + w[t:]: ONE}


def scaled(vec, c):
    return {u: a * c for u, a in vec.items()}


def plus(*vecs):
    out = {}
    for vec in vecs:
        for u, c in vec.items():
            W._add(out, u, c)
    return out


def words(n, r):
    return itertools.product(range(-2 * n, 2 * n + 1), repeat=r)


def partitions_upto(k):
    return [lam for j in range(k + 1) for lam in partitions_of(j)]


# straightening

def test_straighten_examples():
    assert W.straighten((0, 0), 2) == {}
    assert W.straighten((-1, 0), 2) == {(0, -1): -V}
    assert W.straighten((3, 1, -2), 3) == {(3, 1, -2): ONE}


def test_straighten_rejects_small_n():
    with pytest.raises(ValueError):
        W.straighten((0, 1), 1)


@pytest.mark.parametrize("n", [2, 3])
def test_straighten_matches_quotient_space(n):
    for r in (1, 2, 3):
        for w in words(n, r):
            assert W.straighten(w, n) == W.quotient_normal_form(w, n), w


@pytest.mark.parametrize("n", [2, 3])
def test_straighten_output_is_decreasing(n):
    for w in words(n, 3):
        for u in W.straighten(w, n):
            assert all(u[k] > u[k + 1] for k in range(len(u) - 1))
            assert sorted(x % n for x in u) == sorted(x % n for x in w)
            assert sum(u) == sum(w)


@pytest.mark.parametrize("n", [2, 3])
def test_straighten_kills_hecke_images(n):
    for w in words(n, 3):
        for k in (1, 2):
            x = plus({w: ONE}, W.hecke_T(w, k, n))
            assert lin(lambda u: W.straighten(u, n), x) == {}


# the affine Hecke action

@pytest.mark.parametrize("n", [2, 3])
def test_hecke_relations(n):
    for w in words(n, 3):
        v = {w: ONE}
        t1 = lin(T(1, n), v)
        # (T - v²)(T + 1) = 0
        assert plus(lin(T(1, n), t1), scaled(t1, ONE - V * V), scaled(v, -V * V)) == {}
        assert lin(T(1, n), lin(T(2, n), t1)) == lin(T(2, n), lin(T(1, n), lin(T(2, n), v)))
        # Bernstein relation in the right-action convention
        assert lin(T(1, n), lin(X(1, n), t1)) == scaled(lin(X(2, n), v), V * V)
        assert lin(X(3, n), t1) == lin(T(1, n), lin(X(3, n), v))


GENS = [("u+", 0), ("u-", 0), ("u+", 1), ("u-", 1), ("u+", 2), ("u-", 2), ("K", 0, 1), ("K", 1, -1)]


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("r", [2, 3])
def test_bimodule_property(n, r):
    for w in words(n, r):
        v = {w: ONE}
        for g in GENS:
            act = lambda u, g=g: W.act_tensor(g, u, n)
            for k in range(1, r):
                assert lin(act, lin(T(k, n), v)) == lin(T(k, n), lin(act, v)), (g, w, k)
            for t in range(1, r + 1):
                assert lin(act, lin(X(t, n), v)) == lin(X(t, n), lin(act, v)), (g, w, t)


# Ω^{⊗r}

def test_act_tensor_examples():
    assert W.act_tensor(("u-", 0), (0,), 2) == {(1,): ONE}
    assert W.act_tensor(("K", 0, 1), (0,), 2) == {(0,): V}
    assert W.act_tensor(("u+", 0), (0,), 2) == {}
    assert W.act_tensor(("u+", 1), (0,), 2) == {(-1,): ONE}


def test_z_on_two_factors():
    # each shifted factor; K_{±tδ} is trivial on a single ω_s
    assert W.act_tensor(("z+", 1), (0, 1), 2) == {(-2, 1): ONE, (0, -1): ONE}
    assert W.act_tensor(("z-", 2), (0, 1), 3) == {(6, 1): ONE, (0, 7): ONE}


@pytest.mark.parametrize("n", [2, 3])
def test_closed_form_matches_comultiplication(n):
    from fockhall.quiver import Cyclic, DimVector
    kind = Cyclic(n)
    alphas = [DimVector(kind, dict(zip(range(n), e))) for e in itertools.product(range(3), repeat=n)]
    for w in words(n, 3):
        for a in alphas:
            for sign in "+-":
                assert W.ut_coproduct(a, sign, w, n) == W.ut_closed_form(a, sign, w, n)


# κ and charge-0 wedges

def test_kappa_examples():
    assert W.kappa(()) == W.WedgeMonomial(0)
    assert W.kappa(()).padded(3) == (0, -1, -2)
    assert W.kappa((2,)).prefix == (2,)
    assert W.kappa((2,)).padded(3) == (2, -1, -2)


def test_kappa_round_trip():
    for lam in partitions_upto(8):
        assert W.kappa_inv(W.kappa(lam)) == lam


def test_kappa_inv_needs_charge_zero():
    with pytest.raises(ValueError):
        W.kappa_inv(W.WedgeMonomial(1))


def test_monomial_validation():
    with pytest.raises(ValueError):
        W.WedgeMonomial(0, (1, 2))
    with pytest.raises(ValueError):
        W.WedgeMonomial(0, (1, -3))
    # a prefix that merges into the tail is trimmed
    assert W.WedgeMonomial(0, (3, -1, -2)) == W.WedgeMonomial(0, (3,))


@pytest.mark.parametrize("n", [2, 3])
def test_kappa_matches_k_eigenvalues(n):
    for lam in partitions_upto(6):
        x = W.WedgeVector.from_partition(lam)
        for i in range(n):
            want = F.act_hayashi("K", i, F.FockVector.basis(lam), n)
            assert W.to_fock(W.act_wedge(("K", i, 1), x, n)) == want


@pytest.mark.parametrize("n", [2, 3, 4])
def test_k_delta_is_v(n):
    for lam in partitions_upto(8):
        x = W.WedgeVector.from_partition(lam)
        y = x
        for i in range(n):
            y = W.act_wedge(("K", i, 1), y, n)
        assert y == x.scale(V)


def test_act_wedge_examples():
    vac = W.WedgeVector.from_partition(())
    assert W.act_wedge(("u-", 0), vac, 2) == W.WedgeVector.from_partition((1,))
    for i in range(2):
        assert W.act_wedge(("u+", i), vac, 2) == W.WedgeVector(0)


@pytest.mark.parametrize("n", [2, 3])
def test_chevalley_generators_match_hayashi(n):
    for lam in partitions_upto(5):
        x = W.WedgeVector.from_partition(lam)
        for i in range(n):
            for gen, name in ((("u-", i), "F"), (("u+", i), "E")):
                assert W.to_fock(W.act_wedge(gen, x, n)) == F.act_hayashi(name, i, F.FockVector.basis(lam), n)


def test_prefix_independence_is_checked():
    assert W.CHECK_PREFIX
    x = W.WedgeVector.from_partition((3, 1))
    for N in (5, 8, 11):
        fn = lambda word: W.act_tensor(("u-", 1), word, 2)
        assert W._act_fixed_N(fn, W.kappa((3, 1)), N, 2, 1, 0) == W.act_wedge(("u-", 1), x, 2).terms


# Heisenberg operators

def truncated_B(t, sign, lam, n, N=10):
    """B_t^± on κ(λ) by straightening a length-N truncation and discarding
    terms that disturb the frozen last entry."""
    word = W.kappa(lam).padded(N)
    step = -t * n if sign == "+" else t * n
    out = {}
    for k in range(N):
        shifted = word[:k] + (word[k] + step,) + word[k + 1:]
        for u, c in W.straighten(shifted, n).items():
            W._add(out, u, c)
    res = W.WedgeVector(0)
    for u, c in out.items():
        if u[-1] == word[-1] and u[-2] == word[-2]:
            res = res + W.WedgeVector.monomial(W.WedgeMonomial(0, u), c)
    return res


def test_z_minus_on_vacuum():
    vac = W.WedgeVector.from_partition(())
    want = W.WedgeVector.from_partition((2,)) - W.WedgeVector.from_partition((1, 1)).scale(V)
    assert W.heisenberg_z(1, "-", vac, 2) == want
    assert W.heisenberg_B(1, "-", vac, 2) == want
    assert truncated_B(1, "-", (), 2) == want


@pytest.mark.parametrize("n", [2, 3])
def test_B_matches_truncation(n):
    for lam in partitions_upto(3):
        for sign in "+-":
            assert W.heisenberg_B(1, sign, W.WedgeVector.from_partition(lam), n) == truncated_B(1, sign, lam, n, 12)


@pytest.mark.parametrize("n", [2, 3])
def test_B_plus_kills_vacuum(n):
    for m in (-2, 0, 3):
        for t in (1, 2):
            assert W.heisenberg_B(t, "+", W.WedgeVector.monomial(W.WedgeMonomial(m)), n) == W.WedgeVector(m)
            assert W.heisenberg_z(t, "+", W.WedgeVector.monomial(W.WedgeMonomial(m)), n) == W.WedgeVector(m)


@pytest.mark.parametrize("n", [2, 3])
def test_z_against_B(n):
    # z_t^- = B_t^- and z_t^+ = v^t B_t^+ on charge-0 wedges
    for lam in partitions_upto(5):
        x = W.WedgeVector.from_partition(lam)
        for t in (1, 2):
            assert W.heisenberg_z(t, "-", x, n) == W.heisenberg_B(t, "-", x, n)
            assert W.heisenberg_z(t, "+", x, n) == W.heisenberg_B(t, "+", x, n).scale(vpow(t))


def test_B_rejects_t_zero():
    with pytest.raises(ValueError):
        W.heisenberg_B(0, "+", W.WedgeVector.from_partition(()), 2)


def _br(a, b, x):
    return a(b(x)) - b(a(x))


@pytest.mark.parametrize("n", [2, 3])
def test_heisenberg_commutator_on_wedges(n):
    for lam in partitions_upto(4):
        x = W.WedgeVector.from_partition(lam)
        for t in (1, 2):
            for s in (1, 2):
                zp = lambda y, t=t: W.heisenberg_z(t, "+", y, n)
                zm = lambda y, s=s: W.heisenberg_z(s, "-", y, n)
                scal = LaurentPoly.const(t) * vpow(t) * sum((vpow(2 * t * k) for k in range(n)), LaurentPoly()) \
                    if s == t else LaurentPoly()
                assert _br(zp, zm, x) == x.scale(scal)


@pytest.mark.parametrize("n", [2, 3])
def test_z_commutes_with_chevalley_on_wedges(n):
    for lam in partitions_upto(4):
        x = W.WedgeVector.from_partition(lam)
        for t in (1, 2):
            for i in range(n):
                E = lambda y, i=i: W.act_wedge(("u+", i), y, n)
                Fi = lambda y, i=i: W.act_wedge(("u-", i), y, n)
                for sign in "+-":
                    z = lambda y, sign=sign: W.heisenberg_z(t, sign, y, n)
                    assert _br(E, z, x) == W.WedgeVector(0)
                    assert _br(Fi, z, x) == W.WedgeVector(0)
                    assert _br(lambda y: W.act_wedge(("K", i, 1), y, n), z, x) == W.WedgeVector(0)
            z1 = lambda y: W.heisenberg_z(1, "+", y, n)
            z2 = lambda y: W.heisenberg_z(2, "+", y, n)
            assert _br(z1, z2, x) == W.WedgeVector(0)


# serialization

def test_monomial_json():
    w = W.WedgeMonomial(0, (2, -1))
    assert w.to_json() == {"charge": 0, "prefix": [2]}
    assert W.WedgeMonomial.from_json(json.dumps({"charge": 0, "prefix": [2, -1]})) == w


@given(st.lists(st.integers(0, 4), max_size=4).map(lambda xs: tuple(sorted((x for x in xs if x), reverse=True))),
       st.integers(-3, 3))
def test_vector_json_round_trip(lam, e):
    x = W.WedgeVector.from_partition(lam).scale(vpow(e) - ONE + V)
    y = W.WedgeVector.from_json(json.dumps(x.to_json()))
    assert y == x


@pytest.mark.parametrize("n", [2, 3])
def test_shift_operator_commutator(n):
    # [B_t^+, B_s^-] = δ_ts t (1 - v^(2tn)) / (1 - v^(2t))
    for lam in partitions_upto(5):
        x = W.WedgeVector.from_partition(lam)
        for t in (1, 2):
            for s in (1, 2):
                Bp = lambda y: W.heisenberg_B(t, "+", y, n)
                Bm = lambda y: W.heisenberg_B(s, "-", y, n)
                scal = LaurentPoly.const(t) * sum((vpow(2 * t * k) for k in range(n)), LaurentPoly()) \
                    if s == t else LaurentPoly()
                assert _br(Bp, Bm, x) == x.scale(scal)
