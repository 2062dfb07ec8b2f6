"""Exact integer linear algebra and arithmetic in cyclotomic fields.

Everything works on lists of Python ints, so there is no overflow and no
rounding.  Matrices are lists of rows.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd


def _copy(M):
    return [list(map(int, row)) for row in M]


def bareiss_rank(M) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    A = _copy(M)
    if not A or not A[0]:
        return 0
    m, n = len(A), len(A[0])
    rank, prev = 0, 1
    for col in range(n):
        piv = next((r for r in range(rank, m) if A[r][col] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for r in range(rank + 1, m):
            a = A[r][col]
            A[r] = [(p * A[r][c] - a * A[rank][c]) // prev for c in range(n)]
        prev = p
        rank += 1
        if rank == m:
            break
    return rank


def bareiss_det(M) -> int:
    A = _copy(M)
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for i in range(n - 1):
        if A[i][i] == 0:
            swap = next((r for r in range(i + 1, n) if A[r][i] != 0), None)
            if swap is None:
                return 0
            A[i], A[swap] = A[swap], A[i]
            sign = -sign
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                A[r][c] = (A[r][c] * A[i][i] - A[r][i] * A[i][c]) // prev
        prev = A[i][i]
    return sign * A[n - 1][n - 1]


def hnf_with_transform(M):
    """Row Hermite normal form: returns ``(H, U)`` with ``U @ M == H``.

    ``U`` is unimodular, ``H`` is upper echelon with positive pivots and
    entries above each pivot reduced into ``[0, pivot)``.
    """
    H = _copy(M)
    m = len(H)
    n = len(H[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for col in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(H[i][col]))
            H[r], H[i0] = H[i0], H[r]
            U[r], U[i0] = U[i0], U[r]
            done = True
            for i in range(r + 1, m):
                q = H[i][col] // H[r][col]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                if H[i][col] != 0:
                    done = False
            if done:
                break
        if H[r][col] == 0:
            continue
        if H[r][col] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = H[i][col] // H[r][col]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


def hnf(M):
    return hnf_with_transform(M)[0]


def integer_kernel(M):
    """Basis (as rows) of the integer vectors x with ``M x = 0``."""
    if not M:
        return []
    n = len(M[0])
    T = [[M[r][c] for r in range(len(M))] for c in range(n)]
    H, U = hnf_with_transform(T)
    return [U[i] for i in range(n) if not any(H[i])]


def lattice_basis(generators, dim):
    """HNF basis (nonzero rows) of the lattice spanned by ``generators``."""
    if not generators:
        return []
    H = hnf([list(g) for g in generators])
    return [row for row in H if any(row)][:dim]


def lcm(*xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


# -- cyclotomic fields ----------------------------------------------------

def _poly_divmod(num, den):
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        c = num[-1] // den[-1]
        q[shift] = c
        for i, d in enumerate(den):
            num[i + shift] -= c * d
        while num and num[-1] == 0:
            num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p, rem = _poly_divmod(p, list(cyclotomic_poly(d)))
            assert not any(rem)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def zeta_power(k: int, j: int) -> tuple[int, ...]:
    """Coordinates of zeta_k^j in the power basis 1, zeta, ..., zeta^(phi-1)."""
    P = cyclotomic_poly(k)
    deg = len(P) - 1
    v = [0] * k
    v[j % k] = 1
    _, rem = _poly_divmod(v, list(P))
    rem = rem + [0] * (deg - len(rem))
    return tuple(rem[:deg])


def _mul_matrix(k, elem):
    """Matrix of multiplication by ``elem`` (power-basis coordinates)."""
    P = list(cyclotomic_poly(k))
    deg = len(P) - 1
    cols = []
    for i in range(deg):
        prod = [0] * (deg + i)
        for j, a in enumerate(elem):
            prod[i + j] += a
        _, rem = _poly_divmod(prod, P) if len(prod) > deg else (None, prod)
        rem = list(rem) + [0] * (deg - len(rem))
        cols.append(rem[:deg])
    return [[cols[c][r] for c in range(deg)] for r in range(deg)]


def cyclotomic_rank(rows, k: int) -> int:
    """Rank over Q(zeta_k) of a matrix whose entries are power-basis tuples."""
    if not rows or not rows[0]:
        return 0
    deg = phi(k)
    big = []
    for row in rows:
        blocks = [_mul_matrix(k, entry) for entry in row]
        for r in range(deg):
            big.append([x for b in blocks for x in b[r]])
    q = bareiss_rank(big)
    assert q % deg == 0
    return q // deg


def cyclo_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def cyclo_zero(k):
    return (0,) * phi(k)
