"""Linear congruences A x = b (mod M) over the integers.

Used for every cochain search: the unknowns are exponent numerators of
root-of-unity valued tables. Solved one prime power at a time by a
Smith-style elimination over Z/p^e, then glued with CRT.
"""
import numpy as np


def _factor(M):
    out = []
    p = 2
    while p * p <= M:
        if M % p == 0:
            e = 0
            while M % p == 0:
                M //= p
                e += 1
            out.append((p, e))
        p += 1
    if M > 1:
        out.append((M, 1))
    return out


def _valuation(X, p, e):
    v = np.full(X.shape, e, dtype=np.int64)
    nz = X != 0
    v[nz] = 0
    pk = p
    for k in range(1, e):
        v[nz & (X % pk == 0)] = k
        pk *= p
    return v


def _solve_prime_power(A, b, p, e):
    pe = p ** e
    A = A % pe
    b = b % pe
    m, n = A.shape
    V = np.eye(n, dtype=np.int64)
    pivots = []
    r = 0
    while r < min(m, n):
        sub = A[r:, r:]
        units = np.argwhere(sub % p != 0)
        if len(units):
            i, j = units[0]
            v = 0
        else:
            if not sub.any():
                break
            val = _valuation(sub, p, e)
            i, j = np.unravel_index(np.argmin(val), val.shape)
            v = int(val[i, j])
        i += r
        j += r
        A[[r, i]] = A[[i, r]]
        b[[r, i]] = b[[i, r]]
        A[:, [r, j]] = A[:, [j, r]]
        V[:, [r, j]] = V[:, [j, r]]
        pv = p ** v
        u = int(A[r, r]) // pv
        uinv = pow(u, -1, pe)
        A[r] = (A[r] * uinv) % pe
        b[r] = (b[r] * uinv) % pe
        col = A[:, r] // pv
        col[r] = 0
        A = (A - np.outer(col, A[r])) % pe
        b = (b - col * b[r]) % pe
        row = A[r, :] // pv
        row[r] = 0
        V = (V - np.outer(V[:, r], row)) % pe
        A[r, :] = 0
        A[r, r] = pv
        pivots.append(pv)
        r += 1
    if b[r:].any():
        return None
    y = np.zeros(n, dtype=np.int64)
    for k, pv in enumerate(pivots):
        if b[k] % pv:
            return None
        y[k] = b[k] // pv
    return (V @ y) % pe


def solve_mod(A, b, M):
    """Some x with A x = b (mod M), or None if the system has no solution."""
    b = np.asarray(b, dtype=np.int64)
    A = np.asarray(A, dtype=np.int64).reshape(len(b), -1)
    n = A.shape[1]
    if n == 0:
        return np.zeros(0, dtype=np.int64) if not (b % M).any() else None
    aug = np.concatenate([A % M, (b % M)[:, None]], axis=1)
    aug = aug[aug.any(axis=1)]
    aug = np.unique(aug, axis=0)
    A, b = aug[:, :-1].copy(), aug[:, -1].copy()
    if M == 1:
        return np.zeros(n, dtype=np.int64)
    x = np.zeros(n, dtype=np.int64)
    mod = 1
    for p, e in _factor(M):
        pe = p ** e
        xp = _solve_prime_power(A.copy(), b.copy(), p, e)
        if xp is None:
            return None
        # CRT: x = x (mod mod), x = xp (mod pe)
        t = ((xp - x) % pe) * pow(mod, -1, pe) % pe
        x = x + mod * t
        mod *= pe
    return x % M
