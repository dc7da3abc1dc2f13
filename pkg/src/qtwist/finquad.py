"""Finite abelian groups, quadratic forms with root-of-unity values, and
discriminant forms of even lattices.

A value exp(pi*i*t) is stored as the rational exponent t reduced mod 2.
Tables keep integer numerators over one common denominator so that the
cocycle code can work with numpy integer arrays.
"""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce

import numpy as np


def mod2(t):
    t = Fraction(t)
    return t - 2 * math.floor(t / 2)


def lcm_all(values):
    return reduce(math.lcm, values, 1)


def frac_str(t):
    t = Fraction(t)
    return f"{t.numerator}/{t.denominator}"


def parse_frac(s):
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    return Fraction(str(s).strip())


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(M):
    """Return (D, U, V) with U*M*V = D diagonal, U and V unimodular,
    diagonal entries non-negative and each dividing the next."""
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(X, i, j):
        X[i], X[j] = X[j], X[i]

    def swap_cols(X, i, j):
        for row in X:
            row[i], row[j] = row[j], row[i]

    def add_row(X, src, dst, f):
        # row_dst += f * row_src
        X[dst] = [a + f * b for a, b in zip(X[dst], X[src])]

    def add_col(X, src, dst, f):
        for row in X:
            row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(A, t, i)
            swap_rows(U, t, i)
            swap_cols(A, t, j)
            swap_cols(V, t, j)
            done = True
            for i in range(t + 1, m):
                f = A[i][t] // A[t][t]
                if f:
                    add_row(A, t, i, -f)
                    add_row(U, t, i, -f)
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                f = A[t][j] // A[t][t]
                if f:
                    add_col(A, t, j, -f)
                    add_col(V, t, j, -f)
                if A[t][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]]
            if not bad:
                break
            i, _ = bad[0]
            add_row(A, i, t, 1)
            add_row(U, i, t, 1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return A, U, V


def int_det(M):
    """Exact determinant via fraction-free Gaussian elimination."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return int(det)


def rational_inverse(M):
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            raise ValueError("singular matrix")
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [a / piv for a in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A]


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FinAbGroup:
    """Product of cyclic groups Z/d_1 x ... x Z/d_r.

    The orders need not be in invariant-factor form; `invariant_factors`
    computes that form when it matters. Elements are residue tuples.
    """

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        if any(d < 2 for d in self.factors):
            raise ValueError(f"cyclic factors must be >= 2, got {self.factors}")

    @cached_property
    def order(self):
        return math.prod(self.factors)

    @cached_property
    def elements(self):
        return [tuple(x) for x in itertools.product(*(range(d) for d in self.factors))]

    @cached_property
    def coords(self):
        # element index -> residue vector
        if not self.factors:
            return np.zeros((1, 0), dtype=np.int64)
        return np.array(self.elements, dtype=np.int64)

    @property
    def zero(self):
        return tuple(0 for _ in self.factors)

    @cached_property
    def exponent(self):
        return lcm_all(self.factors)

    def index(self, x):
        i = 0
        for xi, d in zip(x, self.factors):
            i = i * d + (xi % d)
        return i

    def reduce(self, x):
        return tuple(xi % d for xi, d in zip(x, self.factors))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.factors))

    def scale(self, k, x):
        return tuple((k * a) % d for a, d in zip(x, self.factors))

    @cached_property
    def add_table(self):
        if self.order > 4096:
            raise ValueError("addition table only built for groups of order <= 4096")
        X = self.coords
        n = self.order
        if not self.factors:
            return np.zeros((1, 1), dtype=np.int64)
        s = (X[:, None, :] + X[None, :, :]) % np.array(self.factors)
        radix = np.array([math.prod(self.factors[i + 1:]) for i in range(len(self.factors))])
        return (s * radix).sum(axis=2).reshape(n, n)

    @cached_property
    def neg_table(self):
        return np.array([self.index(self.neg(x)) for x in self.elements], dtype=np.int64)

    def element_order(self, x):
        return lcm_all(d // math.gcd(d, a) for a, d in zip(x, self.factors))

    def invariant_factors(self):
        if not self.factors:
            return ()
        D, _, _ = smith_normal_form([[d if i == j else 0 for j in range(len(self.factors))]
                                     for i, d in enumerate(self.factors)])
        return tuple(D[i][i] for i in range(len(D)) if D[i][i] > 1)

    def is_cyclic(self):
        return len(self.invariant_factors()) <= 1

    def generated(self, gens):
        """Sorted element indices of the subgroup generated by gens."""
        seen = {self.index(self.zero)}
        frontier = [self.zero]
        gens = [self.reduce(g) for g in gens]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    i = self.index(y)
                    if i not in seen:
                        seen.add(i)
                        new.append(y)
            frontier = new
        return tuple(sorted(seen))

    def product(self, other):
        return FinAbGroup(self.factors + other.factors)


# ---------------------------------------------------------------------------
# quadratic forms


class QuadForm:
    """Q(x) = exp(pi*i*num[x]/den), num taken mod 2*den."""

    def __init__(self, group, num, den):
        self.group = group
        self.den = int(den)
        self.num = tuple(int(a) % (2 * self.den) for a in num)
        if len(self.num) != group.order:
            raise ValueError("table size does not match group order")
        self._normalize()

    def _normalize(self):
        g = reduce(math.gcd, self.num, 2 * self.den)
        g = math.gcd(g, self.den)
        if g > 1:
            self.den //= g
            self.num = tuple(a // g for a in self.num)

    @classmethod
    def from_exponents(cls, group, exps):
        exps = [Fraction(t) for t in exps]
        den = lcm_all(t.denominator for t in exps)
        return cls(group, [t.numerator * (den // t.denominator) for t in exps], den)

    @classmethod
    def trivial(cls, group=None):
        group = group or FinAbGroup(())
        return cls(group, [0] * group.order, 1)

    def __call__(self, x):
        return self.exponent(x)

    def exponent(self, x):
        i = x if isinstance(x, (int, np.integer)) else self.group.index(x)
        return Fraction(self.num[i], self.den)

    def exponents(self):
        return [Fraction(a, self.den) for a in self.num]

    def __eq__(self, other):
        return (isinstance(other, QuadForm) and self.group.factors == other.group.factors
                and self.exponents() == other.exponents())

    def __hash__(self):
        return hash((self.group.factors, tuple(self.exponents())))

    def __repr__(self):
        return f"QuadForm({self.group.factors}, {[frac_str(t) for t in self.exponents()]})"

    def __mul__(self, other):
        if self.group.factors != other.group.factors:
            raise ValueError("forms live on different groups")
        return QuadForm.from_exponents(self.group, [a + b for a, b in zip(self.exponents(), other.exponents())])

    def power(self, N):
        return QuadForm(self.group, [N * a for a in self.num], self.den)

    def is_trivial(self):
        return not any(self.num)

    def sign_exponent(self, i):
        """0 or 1 if Q(x) = +-1 at element index i, else None."""
        a = self.num[i]
        if a == 0:
            return 0
        if a == self.den:
            return 1
        return None

    def check(self):
        """Raise ValueError unless Q(-x) = Q(x) and the polarization is a bicharacter."""
        G = self.group
        neg = G.neg_table
        for i in range(G.order):
            if self.num[i] != self.num[neg[i]]:
                raise ValueError(f"Q(-x) != Q(x) at {G.elements[i]}")
        b = bicharacter_of(self)
        b.check()
        return True

    def to_json(self):
        return {
            "factors": list(self.group.factors),
            "exponents": {"(" + ",".join(map(str, x)) + ")": frac_str(t)
                          for x, t in zip(self.group.elements, self.exponents())},
        }

    @classmethod
    def from_json(cls, data):
        group = FinAbGroup(tuple(data["factors"]))
        table = {}
        for key, val in data["exponents"].items():
            x = tuple(int(a) for a in key.strip("()").split(",") if a.strip() != "")
            table[group.index(x)] = parse_frac(val)
        if len(table) != group.order:
            raise ValueError("exponent table incomplete")
        return cls.from_exponents(group, [table[i] for i in range(group.order)])


def direct_sum(q1, q2):
    G = q1.group.product(q2.group)
    den = math.lcm(q1.den, q2.den)
    a1 = [a * (den // q1.den) for a in q1.num]
    a2 = [a * (den // q2.den) for a in q2.num]
    return QuadForm(G, [x + y for x in a1 for y in a2], den)


def direct_sum_all(forms):
    return reduce(direct_sum, forms, QuadForm.trivial())


class Bicharacter:
    def __init__(self, group, table, den):
        self.group = group
        self.den = den
        self.table = np.asarray(table, dtype=np.int64) % (2 * den)

    def __call__(self, x, y):
        G = self.group
        return Fraction(int(self.table[G.index(x), G.index(y)]), self.den)

    def is_symmetric(self):
        return bool((self.table == self.table.T).all())

    def is_biadditive(self):
        G = self.group
        if G.order == 1:
            return True
        T = G.add_table
        M = 2 * self.den
        gens = [G.index(tuple(int(i == j) for j in range(len(G.factors)))) for i in range(len(G.factors))]
        for g in gens:
            # b(x+g, y) = b(x, y) + b(g, y), which by induction gives additivity in slot 1
            lhs = self.table[T[:, g], :]
            rhs = self.table + self.table[g][None, :]
            if ((lhs - rhs) % M).any():
                return False
            lhs = self.table[:, T[:, g]]
            rhs = self.table + self.table[:, g][:, None]
            if ((lhs - rhs) % M).any():
                return False
        return True

    def check(self):
        if not self.is_symmetric():
            raise ValueError("bicharacter is not symmetric")
        if not self.is_biadditive():
            raise ValueError("polarization is not biadditive")
        return True

    def is_trivial(self):
        return not self.table.any()


def bicharacter_of(q):
    G = q.group
    t = np.array(q.num, dtype=np.int64)
    T = G.add_table
    return Bicharacter(G, t[T] - t[:, None] - t[None, :], q.den)


# ---------------------------------------------------------------------------
# lattices


class DegenerateLattice(ValueError):
    pass


@dataclass(frozen=True)
class EvenLattice:
    gram: tuple

    def __post_init__(self):
        G = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", G)
        n = len(G)
        if any(len(row) != n for row in G):
            raise ValueError("Gram matrix must be square")
        if any(G[i][j] != G[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")
        if any(G[i][i] % 2 for i in range(n)):
            raise ValueError("lattice is not even")
        if n and int_det(G) == 0:
            raise DegenerateLattice("Gram matrix is degenerate")

    @property
    def rank(self):
        return len(self.gram)

    @cached_property
    def det(self):
        return int_det(self.gram) if self.rank else 1

    @cached_property
    def gram_inverse(self):
        return rational_inverse(self.gram) if self.rank else []

    def norm(self, x):
        G = self.gram
        return sum(Fraction(x[i]) * G[i][j] * Fraction(x[j]) for i in range(self.rank) for j in range(self.rank))

    def is_positive_definite(self):
        # leading principal minors
        return all(int_det([row[:k] for row in self.gram[:k]]) > 0 for k in range(1, self.rank + 1))

    @cached_property
    def _snf(self):
        return smith_normal_form(self.gram)

    @cached_property
    def _nontrivial(self):
        D, _, _ = self._snf
        return [i for i in range(self.rank) if D[i][i] > 1]

    @cached_property
    def discriminant_group(self):
        D, _, _ = self._snf
        return FinAbGroup(tuple(D[i][i] for i in self._nontrivial))

    def element_of(self, x):
        """Group element of the dual-lattice vector x (coordinates in the lattice basis)."""
        y = [sum(Fraction(self.gram[i][j]) * Fraction(x[j]) for j in range(self.rank)) for i in range(self.rank)]
        if any(c.denominator != 1 for c in y):
            raise ValueError(f"{x} is not in the dual lattice")
        _, U, _ = self._snf
        r = [sum(U[i][j] * int(y[j]) for j in range(self.rank)) for i in range(self.rank)]
        return self.discriminant_group.reduce(tuple(r[i] for i in self._nontrivial))

    @cached_property
    def _U_inverse(self):
        _, U, _ = self._snf
        return rational_inverse(U)

    def lift(self, elem):
        """A dual-lattice vector representing elem."""
        r = [0] * self.rank
        for i, a in zip(self._nontrivial, elem):
            r[i] = a
        Ui = self._U_inverse
        y = [sum(Ui[i][j] * r[j] for j in range(self.rank)) for i in range(self.rank)]
        Gi = self.gram_inverse
        return tuple(sum(Gi[i][j] * y[j] for j in range(self.rank)) for i in range(self.rank))

    def to_json(self):
        return {"gram": [list(row) for row in self.gram]}

    @classmethod
    def from_json(cls, data):
        return cls(tuple(tuple(row) for row in data["gram"]))


def discriminant_form(L):
    """(M^dual/M, Q_M) with Q_M(x) = exp(pi*i*(x,x))."""
    G = L.discriminant_group
    exps = [mod2(L.norm(L.lift(x))) for x in G.elements]
    return G, QuadForm.from_exponents(G, exps)


# ---------------------------------------------------------------------------
# forms attached to root data


def quad_form_lie(d, N):
    """Q_g^N on P/Q: exp(N*pi*i*<<lam, lam>>)."""
    from .rootdata import discriminant_group
    G, reps = discriminant_group(d)
    return QuadForm.from_exponents(G, [mod2(N * d.pairing(reps[x], reps[x])) for x in G.elements])
