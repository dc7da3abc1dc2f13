"""Sparse square matrices over the v-field."""
from .scalars import ONE, ZERO


class SMat:
    def __init__(self, n, entries=None):
        self.n = n
        self.e = {k: x for k, x in (entries or {}).items() if x != 0}

    @classmethod
    def identity(cls, n):
        return cls(n, {(i, i): ONE for i in range(n)})

    @classmethod
    def diag(cls, values):
        return cls(len(values), {(i, i): x for i, x in enumerate(values)})

    def __matmul__(self, other):
        rows = {}
        for (i, k), x in other.e.items():
            rows.setdefault(i, []).append((k, x))
        out = {}
        for (i, j), x in self.e.items():
            for k, y in rows.get(j, ()):
                out[(i, k)] = out.get((i, k), ZERO) + x * y
        return SMat(self.n, out)

    def __add__(self, other):
        out = dict(self.e)
        for k, x in other.e.items():
            out[k] = out.get(k, ZERO) + x
        return SMat(self.n, out)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c):
        return SMat(self.n, {k: c * x for k, x in self.e.items()})

    def __eq__(self, other):
        return self.n == other.n and not (self - other).e

    def is_zero(self):
        return not self.e

    def kron(self, other):
        m = other.n
        return SMat(self.n * m, {(i * m + k, j * m + l): x * y
                                 for (i, j), x in self.e.items() for (k, l), y in other.e.items()})

    def power(self, k):
        out = SMat.identity(self.n)
        for _ in range(k):
            out = out @ self
        return out

    def trace(self):
        return sum((x for (i, j), x in self.e.items() if i == j), ZERO)

    def rank(self):
        rows = [dict() for _ in range(self.n)]
        for (i, j), x in self.e.items():
            rows[i][j] = x
        rows = [r for r in rows if r]
        rank = 0
        while rows:
            piv = rows.pop()
            if not piv:
                continue
            j = min(piv)
            p = piv[j]
            rank += 1
            nxt = []
            for r in rows:
                if j in r:
                    f = r[j] / p
                    r = {k: r.get(k, ZERO) - f * piv.get(k, ZERO) for k in set(r) | set(piv)}
                    r = {k: x for k, x in r.items() if x != 0}
                if r:
                    nxt.append(r)
            rows = nxt
        return rank


def permutation(n, perm):
    """Matrix sending basis vector j to perm[j]."""
    return SMat(n, {(perm[j], j): ONE for j in range(n)})
