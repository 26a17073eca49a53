"""Small finite fields GF(p^k) by lookup tables, subspace enumeration and ranks."""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product


def _factor_prime_power(q):
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def is_prime_power(q):
    try:
        _factor_prime_power(q)
        return True
    except ValueError:
        return False


def prime_powers(count):
    """The first `count` prime powers 2, 3, 4, 5, 7, 8, 9, 11, ..."""
    out, q = [], 2
    while len(out) < count:
        if is_prime_power(q):
            out.append(q)
        q += 1
    return out


def _polymulmod(a, b, mod, p):
    # polynomials as coefficient lists, low to high; mod is monic
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % p
    k = len(mod) - 1
    for d in range(len(res) - 1, k - 1, -1):
        c = res[d]
        if c:
            for j in range(k + 1):
                res[d - k + j] = (res[d - k + j] - c * mod[j]) % p
    return res[:k] + [0] * (k - len(res[:k]))


def _irreducible(p, k):
    """A monic irreducible polynomial of degree k over F_p (coefficients low to high)."""
    if k == 1:
        return [0, 1]
    for tail in product(range(p), repeat=k):
        poly = list(tail) + [1]
        if poly[0] == 0:
            continue
        # no roots and no factor of degree <= k//2: check by brute-force division
        if _has_factor(poly, p, k):
            continue
        return poly
    raise RuntimeError("no irreducible polynomial found")


def _has_factor(poly, p, k):
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            f = list(tail) + [1]
            if _divides(f, poly, p):
                return True
    return False


def _divides(f, g, p):
    g = list(g)
    df = len(f) - 1
    for d in range(len(g) - 1, df - 1, -1):
        c = g[d]
        if c:
            for j in range(df + 1):
                g[d - df + j] = (g[d - df + j] - c * f[j]) % p
    return not any(g[:df])


class GF:
    """The field with q elements; elements are the integers 0..q-1."""

    def __init__(self, q):
        p, k = _factor_prime_power(q)
        self.q, self.p, self.k = q, p, k
        if k == 1:
            self.add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            mod = _irreducible(p, k)
            digits = [self._digits(a) for a in range(q)]
            enc = {tuple(d): a for a, d in enumerate(digits)}
            self.modulus = mod
            self.add = [[enc[tuple((x + y) % p for x, y in zip(digits[a], digits[b]))]
                         for b in range(q)] for a in range(q)]
            self.mul = [[enc[tuple(_polymulmod(digits[a], digits[b], mod, p))]
                         for b in range(q)] for a in range(q)]
        self.neg = [next(b for b in range(q) if self.add[a][b] == 0) for a in range(q)]
        self.inv = [None] + [next(b for b in range(q) if self.mul[a][b] == 1) for a in range(1, q)]
        self.sub = [[self.add[a][self.neg[b]] for b in range(q)] for a in range(q)]

    def _digits(self, a):
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def __repr__(self):
        return f"GF({self.q})"


@lru_cache(maxsize=None)
def field(q):
    return GF(q)


def rank(F, rows):
    """Rank of a matrix (list of rows) over the field F."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rk = 0
    mul, sub, inv = F.mul, F.sub, F.inv
    for c in range(ncols):
        piv = None
        for r in range(rk, len(m)):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        pr = m[rk]
        ic = inv[pr[c]]
        for r in range(len(m)):
            if r != rk and m[r][c]:
                f = mul[m[r][c]][ic]
                row = m[r]
                for j in range(c, ncols):
                    if pr[j]:
                        row[j] = sub[row[j]][mul[f][pr[j]]]
        rk += 1
        if rk == len(m):
            break
    return rk


def matmul(F, a, b):
    """Product of matrices given as row lists (a is r x s, b is s x t)."""
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    t = len(b[0])
    out = []
    add, mul = F.add, F.mul
    for row in a:
        acc = [0] * t
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(t):
                    if bk[j]:
                        acc[j] = add[acc[j]][mul[x][bk[j]]]
        out.append(acc)
    return out


def subspaces(F, N, w):
    """Yield every w-dimensional subspace of F^N as its reduced row echelon basis."""
    q = F.q
    if w == 0:
        yield []
        return
    for pivots in combinations(range(N), w):
        free = []
        for r, pc in enumerate(pivots):
            for c in range(pc + 1, N):
                if c not in pivots:
                    free.append((r, c))
        for vals in product(range(q), repeat=len(free)):
            rows = [[0] * N for _ in range(w)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), x in zip(free, vals):
                rows[r][c] = x
            yield rows


def gaussian_count(N, w, q):
    """Number of w-dimensional subspaces of F_q^N."""
    num, den = 1, 1
    for i in range(w):
        num *= q ** (N - i) - 1
        den *= q ** (i + 1) - 1
    return num // den
