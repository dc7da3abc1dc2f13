"""Abelian 3-cocycles (omega, c) on finite abelian groups.

Tables hold exponent numerators: omega(a, b, c) = exp(pi*i*omega[a, b, c]/den),
indexed by group element indices. All identities are checked exhaustively.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .finquad import QuadForm, bicharacter_of, frac_str, parse_frac, FinAbGroup
from .modlin import solve_mod

MAX_COCYCLE_ORDER = 128
MAX_SEARCH_ORDER = 16


class EMConstructionError(RuntimeError):
    pass


class NotSuperIsotropic(ValueError):
    pass


class SearchExhausted(RuntimeError):
    """No solution inside the searched cyclotomic group (or the search is too large)."""


def _common(den1, den2):
    return math.lcm(den1, den2)


class AbCocycle:
    def __init__(self, group, omega, c, den):
        self.group = group
        self.den = int(den)
        M = 2 * self.den
        self.omega = np.asarray(omega, dtype=np.int64) % M
        self.c = np.asarray(c, dtype=np.int64) % M

    def rescale(self, den):
        f = den // self.den
        return AbCocycle(self.group, self.omega * f, self.c * f, den)

    def __mul__(self, other):
        den = _common(self.den, other.den)
        a, b = self.rescale(den), other.rescale(den)
        return AbCocycle(self.group, a.omega + b.omega, a.c + b.c, den)

    def inverse(self):
        return AbCocycle(self.group, -self.omega, -self.c, self.den)

    def __eq__(self, other):
        if self.group != other.group:
            return False
        den = _common(self.den, other.den)
        a, b = self.rescale(den), other.rescale(den)
        return (a.omega == b.omega).all() and (a.c == b.c).all()

    def omega_value(self, a, b, c):
        G = self.group
        return Fraction(int(self.omega[G.index(a), G.index(b), G.index(c)]), self.den)

    def c_value(self, a, b):
        G = self.group
        return Fraction(int(self.c[G.index(a), G.index(b)]), self.den)

    def em_trace(self):
        """The quadratic form alpha -> c(alpha, alpha)."""
        return QuadForm(self.group, np.diag(self.c).tolist(), self.den)

    def is_trivial(self):
        return not self.omega.any() and not self.c.any()

    def to_json(self):
        G = self.group
        n = G.order
        key = lambda *xs: "|".join(",".join(map(str, G.elements[i])) for i in xs)
        return {
            "factors": list(G.factors),
            "omega": {key(a, b, c): frac_str(Fraction(int(self.omega[a, b, c]), self.den))
                      for a in range(n) for b in range(n) for c in range(n) if self.omega[a, b, c]},
            "c": {key(a, b): frac_str(Fraction(int(self.c[a, b]), self.den))
                  for a in range(n) for b in range(n) if self.c[a, b]},
        }

    @classmethod
    def from_json(cls, data, verify=False):
        G = FinAbGroup(tuple(data["factors"]))
        n = G.order

        def idx(part):
            return G.index(tuple(int(a) for a in part.split(",") if a != ""))

        entries = [(k, parse_frac(v)) for k, v in data["omega"].items()]
        entries += [(k, parse_frac(v)) for k, v in data["c"].items()]
        den = math.lcm(1, *(t.denominator for _, t in entries))
        omega = np.zeros((n, n, n), dtype=np.int64)
        c = np.zeros((n, n), dtype=np.int64)
        for k, t in ((k, parse_frac(v)) for k, v in data["omega"].items()):
            a, b, cc = (idx(p) for p in k.split("|"))
            omega[a, b, cc] = t.numerator * (den // t.denominator)
        for k, t in ((k, parse_frac(v)) for k, v in data["c"].items()):
            a, b = (idx(p) for p in k.split("|"))
            c[a, b] = t.numerator * (den // t.denominator)
        x = cls(G, omega, c, den)
        if verify and not verify_cocycle(x):
            raise ValueError("table does not satisfy the abelian cocycle identities")
        return x


@dataclass
class Cochain2:
    """k on support x support, support = sorted element indices with 0 first."""

    group: FinAbGroup
    support: tuple
    k: np.ndarray
    den: int

    def value(self, a, b):
        pos = {e: i for i, e in enumerate(self.support)}
        G = self.group
        return Fraction(int(self.k[pos[G.index(a)], pos[G.index(b)]]), self.den)

    def is_normalized(self):
        return not self.k[0, :].any() and not self.k[:, 0].any()


def cocycle_defects(x):
    """Names of the identities that fail ('pentagon', 'hexagon1', 'hexagon2', 'normalized')."""
    G = x.group
    n = G.order
    T = G.add_table
    w, c = x.omega, x.c
    M = 2 * x.den
    bad = []
    if w[:, 0, 0].any() or w[0, 0, :].any():
        bad.append("normalized")
    pent = False
    A2 = np.arange(n)[:, None, None]
    A3 = np.arange(n)[None, :, None]
    A4 = np.arange(n)[None, None, :]
    for a1 in range(n):
        # w(a1+a2,a3,a4) w(a1,a2,a3+a4) = w(a1,a2,a3) w(a1,a2+a3,a4) w(a2,a3,a4)
        lhs = w[T[a1][A2], A3, A4] + w[a1][A2, T[A3, A4]]
        rhs = w[a1][A2, A3] + w[a1][T[A2, A3], A4] + w
        if ((lhs - rhs) % M).any():
            pent = True
            break
    if pent:
        bad.append("pentagon")
    A1 = np.arange(n)[:, None, None]
    A2 = np.arange(n)[None, :, None]
    A3 = np.arange(n)[None, None, :]
    # w(a2,a3,a1) c(a1,a2+a3) w(a1,a2,a3) = c(a1,a3) w(a2,a1,a3) c(a1,a2)
    h1 = (w[A2, A3, A1] + c[A1, T[A2, A3]] + w[A1, A2, A3]
          - c[A1, A3] - w[A2, A1, A3] - c[A1, A2])
    if (h1 % M).any():
        bad.append("hexagon1")
    # w(a3,a1,a2)^-1 c(a1+a2,a3) w(a1,a2,a3)^-1 = c(a1,a3) w(a1,a3,a2)^-1 c(a2,a3)
    h2 = (-w[A3, A1, A2] + c[T[A1, A2], A3] - w[A1, A2, A3]
          - c[A1, A3] + w[A1, A3, A2] - c[A2, A3])
    if (h2 % M).any():
        bad.append("hexagon2")
    return bad


def verify_cocycle(x):
    return not cocycle_defects(x)


def em_inverse(q, check=True):
    """An abelian cocycle whose EM trace c(a, a) is q.

    On each cyclic factor Z/d with Q(e) = exp(pi*i*t): c(a, b) = exp(pi*i*t*a*b) and
    omega(a, b, c) = exp(pi*i*t*d*a*carry(b, c)) on representatives in [0, d).
    Off-diagonal parts of the polarization enter c only, as a bicharacter.
    """
    G = q.group
    n = G.order
    if n > MAX_COCYCLE_ORDER:
        raise ValueError(f"group of order {n} exceeds the cocycle table cap {MAX_COCYCLE_ORDER}")
    den = q.den
    M = 2 * den
    X = G.coords
    r = len(G.factors)
    gens = [G.index(tuple(int(i == j) for j in range(r))) for i in range(r)]
    t = [q.num[g] for g in gens]
    b = bicharacter_of(q).table
    c = np.zeros((n, n), dtype=np.int64)
    omega = np.zeros((n, n, n), dtype=np.int64)
    for i, d in enumerate(G.factors):
        xi = X[:, i]
        c += t[i] * np.outer(xi, xi)
        carry = ((xi[:, None] + xi[None, :]) >= d).astype(np.int64)
        omega += (t[i] * d) * xi[:, None, None] * carry[None, :, :]
        for j in range(i + 1, r):
            c += int(b[gens[i], gens[j]]) * np.outer(xi, X[:, j])
    x = AbCocycle(G, omega % M, c % M, den)
    if check:
        bad = cocycle_defects(x)
        if bad or x.em_trace() != q:
            raise EMConstructionError(f"construction fails for {q}: {bad or 'trace mismatch'}")
    return x


def coboundary(k):
    """(d2 k^-1, c_k) for a 2-cochain defined on the whole group.

    The inverse of d2 k is what makes the pair satisfy the hexagon identities
    in the orientation checked by cocycle_defects.
    """
    G = k.group
    if len(k.support) != G.order:
        raise ValueError("coboundary needs k on all of A x A")
    order = np.argsort(k.support)
    K = k.k[np.ix_(order, order)]
    T = G.add_table
    n = G.order
    A1 = np.arange(n)[:, None, None]
    A2 = np.arange(n)[None, :, None]
    A3 = np.arange(n)[None, None, :]
    omega = K[A1, A2] + K[T[A1, A2], A3] - K[A2, A3] - K[A1, T[A2, A3]]
    c = K - K.T
    return AbCocycle(G, omega, c, k.den)


def _solve_k(x, support, parity=None, use_c=True, refine=None):
    """Find normalized k on I = support with omega = (d2 k)^-1 and, if use_c,
    c(a, b) = (-1)^{p(a)p(b)} k(a, b)/k(b, a). Returns Cochain2 or None."""
    G = x.group
    s = list(support)
    m = len(s)
    pos = {e: i for i, e in enumerate(s)}
    T = G.add_table
    refine = refine or 2 * G.exponent
    den = x.den * refine
    M = 2 * den
    var = {}
    for i in range(1, m):
        for j in range(1, m):
            var[(i, j)] = len(var)
    nv = len(var)
    rows, rhs = [], []

    def term(row, i, j, coeff):
        if i and j:
            row[var[(i, j)]] += coeff

    for ia, a in enumerate(s):
        for ib, b in enumerate(s):
            ab = pos[int(T[a, b])]
            for ic, cc in enumerate(s):
                bc = pos[int(T[b, cc])]
                row = np.zeros(nv, dtype=np.int64)
                term(row, ia, ib, 1)
                term(row, ab, ic, 1)
                term(row, ib, ic, -1)
                term(row, ia, bc, -1)
                rows.append(row)
                rhs.append(int(x.omega[a, b, cc]) * refine)
    if use_c:
        for ia, a in enumerate(s):
            for ib, b in enumerate(s):
                row = np.zeros(nv, dtype=np.int64)
                term(row, ia, ib, 1)
                term(row, ib, ia, -1)
                sign = parity[a] * parity[b] if parity is not None else 0
                rows.append(row)
                rhs.append((int(x.c[a, b]) - sign * x.den) * refine)
    if nv == 0:
        ok = all(v % M == 0 for v in rhs)
        return Cochain2(G, tuple(s), np.zeros((m, m), dtype=np.int64), den) if ok else None
    sol = solve_mod(np.array(rows), np.array(rhs), M)
    if sol is None:
        return None
    K = np.zeros((m, m), dtype=np.int64)
    for (i, j), v in var.items():
        K[i, j] = sol[v]
    return Cochain2(G, tuple(s), K, den)


def _parity_on(q, support):
    p = {}
    for e in support:
        s = q.sign_exponent(e)
        if s is None:
            return None
        p[e] = s
    return p


def is_super_isotropic(q, support):
    p = _parity_on(q, support)
    if p is None:
        return False
    T = q.group.add_table
    return all(p[int(T[a, b])] == (p[a] + p[b]) % 2 for a in support for b in support)


def trivialize_on_isotropic(x, support, parity=None):
    """k on I x I resolving (omega, c) against the super structure (I, p)."""
    q = x.em_trace()
    support = tuple(sorted(support))
    if not is_super_isotropic(q, support):
        raise NotSuperIsotropic("(I, p) is not super isotropic for the EM trace of x")
    forced = _parity_on(q, support)
    if parity is not None and any(parity[e] != forced[e] for e in support):
        raise NotSuperIsotropic("given parity disagrees with Q on I")
    k = _solve_k(x, support, forced)
    if k is None:
        raise SearchExhausted("no trivializing cochain in the searched cyclotomic group")
    return k


def cohomologous(x, y):
    """k with x = y * (d2 k, c_k), or None."""
    diff = x * y.inverse()
    return _solve_k(diff, tuple(range(x.group.order)), None)


def bicharacter_square_root(q):
    """Exponent matrix beta with Q(x) = B(x, x), B(e_i, e_j) = exp(pi*i*beta_ij), or None."""
    G = q.group
    r = len(G.factors)
    pairs = [(i, j) for i in range(r) for j in range(i, r)]
    den = q.den
    # beta_ij = 2 m_ij / gcd(d_i, d_j); unknowns m_ij, work in units of 1/L
    L = den * G.exponent if r else den
    M = 2 * L
    X = G.coords
    rows, rhs = [], []
    for idx in range(G.order):
        x = X[idx]
        row = []
        for i, j in pairs:
            g = math.gcd(G.factors[i], G.factors[j])
            row.append((2 * L // g) * int(x[i]) * int(x[j]))
        rows.append(row)
        rhs.append(q.num[idx] * (L // den))
    if not pairs:
        return {} if not any(rhs) else None
    sol = solve_mod(np.array(rows), np.array(rhs), M)
    if sol is None:
        return None
    out = {}
    for (i, j), m in zip(pairs, sol):
        g = math.gcd(G.factors[i], G.factors[j])
        out[(i, j)] = Fraction(2 * int(m), g) % 2
    return out


def bicharacter_trivialization(q, max_order=MAX_SEARCH_ORDER):
    """k with omega = (d2 k)^-1 for the cocycle em_inverse(q), or None when no such k exists.

    Raises SearchExhausted when the group is beyond max_order, or when a
    bicharacter square root of q exists but no k turned up in the searched range.
    """
    if q.group.order > max_order:
        raise SearchExhausted(f"group order {q.group.order} exceeds search cap {max_order}")
    x = em_inverse(q)
    k = _solve_k(x, tuple(range(q.group.order)), None, use_c=False)
    if k is not None:
        return k
    if bicharacter_square_root(q) is not None:
        raise SearchExhausted("a bicharacter exists but no cochain was found in the search range")
    return None


def appendix_cocycle(n):
    """The explicit Z/2 cocycle with Q(1) = i^n: omega(1,1,1) = (-1)^n, c(1,1) = i^n."""
    G = FinAbGroup((2,))
    den = 2
    omega = np.zeros((2, 2, 2), dtype=np.int64)
    c = np.zeros((2, 2), dtype=np.int64)
    for a in range(2):
        for b in range(2):
            for cc in range(2):
                # exp(pi*i*a*(b + c - [b + c])*n/2)
                omega[a, b, cc] = a * (b + cc - (b + cc) % 2) * n
    c[1, 1] = n
    return AbCocycle(G, omega, c, den)
