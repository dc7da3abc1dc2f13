"""Root systems and weight lattices of simple Lie algebras, exact.

Weights are tuples of Dynkin labels (coefficients on the fundamental
weights, Bourbaki numbering). Roots are integer coefficient tuples on the
simple roots. Two invariant forms are kept: `long` with (a, a) = 2 on long
roots and `short` with <<a, a>> = 2 on short roots.
"""
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .finquad import FinAbGroup, frac_str, lcm_all, rational_inverse

MAX_CLASSICAL_RANK = 8

H_DUAL = {"A": lambda n: n + 1, "B": lambda n: 2 * n - 1, "C": lambda n: n + 1,
          "D": lambda n: 2 * n - 2, "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
          "F": lambda n: 9, "G": lambda n: 4}

MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


class InvalidType(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if f not in "ABCDEFG" or len(f) != 1:
            raise InvalidType(f"unknown family {f!r}")
        if not isinstance(n, int) or n < 1:
            raise InvalidType(f"bad rank {n!r}")
        if f in MIN_RANK and not MIN_RANK[f] <= n <= MAX_CLASSICAL_RANK:
            raise InvalidType(f"{f}{n}: rank must be in {MIN_RANK[f]}..{MAX_CLASSICAL_RANK}")
        if f == "E" and n not in (6, 7, 8):
            raise InvalidType(f"E{n} does not exist")
        if f == "F" and n != 4:
            raise InvalidType(f"F{n} does not exist")
        if f == "G" and n != 2:
            raise InvalidType(f"G{n} does not exist")

    @classmethod
    def parse(cls, s):
        if isinstance(s, LieType):
            return s
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", str(s))
        if not m:
            raise InvalidType(f"cannot parse Lie type {s!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self):
        return f"{self.family}{self.rank}"


def all_types(max_rank=MAX_CLASSICAL_RANK):
    out = []
    for f, lo in MIN_RANK.items():
        out += [LieType(f, n) for n in range(lo, max_rank + 1)]
    out += [LieType("E", n) for n in (6, 7, 8)] + [LieType("F", 4), LieType("G", 2)]
    return out


def _unit(i, dim, c=1):
    v = [Fraction(0)] * dim
    v[i] = Fraction(c)
    return v


def _ambient_simple_roots(t):
    f, n = t.family, t.rank
    h = Fraction(1, 2)
    if f == "A":
        return [[Fraction(int(j == i) - int(j == i + 1)) for j in range(n + 1)] for i in range(n)]
    chain = [[Fraction(int(j == i) - int(j == i + 1)) for j in range(n)] for i in range(n - 1)]
    if f == "B":
        return chain + [_unit(n - 1, n)]
    if f == "C":
        return chain + [_unit(n - 1, n, 2)]
    if f == "D":
        last = _unit(n - 2, n)
        last[n - 1] = Fraction(1)
        return chain + [last]
    if f == "E":
        e8 = [[h, -h, -h, -h, -h, -h, -h, h],
              [1, 1, 0, 0, 0, 0, 0, 0],
              [-1, 1, 0, 0, 0, 0, 0, 0],
              [0, -1, 1, 0, 0, 0, 0, 0],
              [0, 0, -1, 1, 0, 0, 0, 0],
              [0, 0, 0, -1, 1, 0, 0, 0],
              [0, 0, 0, 0, -1, 1, 0, 0],
              [0, 0, 0, 0, 0, -1, 1, 0]]
        return [[Fraction(x) for x in row] for row in e8[:n]]
    if f == "F":
        return [[Fraction(x) for x in row] for row in
                ([0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 0, 1], [h, -h, -h, -h])]
    if f == "G":
        return [[Fraction(x) for x in row] for row in ([1, -1, 0], [-2, 1, 1])]
    raise InvalidType(str(t))


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


class RootDatum:
    """Immutable after construction."""

    def __init__(self, t):
        self.type = t
        self.rank = n = t.rank
        self.simple_roots = tuple(tuple(r) for r in _ambient_simple_roots(t))
        std = [[_dot(a, b) for b in self.simple_roots] for a in self.simple_roots]
        norms = [std[i][i] for i in range(n)]
        long_norm, short_norm = max(norms), min(norms)
        self.lacing = int(long_norm / short_norm)
        self.form_long = tuple(tuple(x * 2 / long_norm for x in row) for row in std)
        self.form_short = tuple(tuple(x * 2 / short_norm for x in row) for row in std)
        M = self.form_short
        self.cartan_matrix = tuple(tuple(int(2 * M[i][j] / M[i][i]) for j in range(n)) for i in range(n))
        # fundamental weights in simple-root coordinates: X M = diag(M_jj / 2)
        Minv = rational_inverse(M)
        self.fundamental_weights = tuple(
            tuple(M[i][i] / 2 * Minv[i][k] for k in range(n)) for i in range(n))
        # <<lam_i, lam_j>>
        self.weight_form = tuple(tuple(M[i][i] / 2 * Minv[i][j] * M[j][j] / 2 for j in range(n))
                                 for i in range(n))
        self.n_g = lcm_all(x.denominator for row in self.weight_form for x in row)
        self.positive_roots = self._positive_roots()
        self.rho_w = tuple(sum((Fraction(r[k]) for r in self.positive_roots), Fraction(0)) / 2
                           for k in range(n))
        self.h_dual = H_DUAL[t.family](n)
        self.dual_involution = tuple(self.dual_weight(self.fundamental(i)).index(1) for i in range(n))

    def __repr__(self):
        return f"RootDatum({self.type})"

    # -- roots ---------------------------------------------------------------

    def _positive_roots(self):
        n = self.rank
        A = self.cartan_matrix
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        roots = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                labels = self.root_labels(beta)
                for i in range(n):
                    r = 0
                    while True:
                        down = tuple(b - (r + 1) * int(k == i) for k, b in enumerate(beta))
                        if down in roots:
                            r += 1
                        else:
                            break
                    if r - labels[i] > 0:
                        up = tuple(b + int(k == i) for k, b in enumerate(beta))
                        if up not in roots:
                            roots.add(up)
                            nxt.append(up)
            layer = nxt
        return tuple(sorted(roots, key=lambda r: (sum(r), r)))

    def root_labels(self, c):
        """Dynkin labels of the root sum_j c_j alpha_j."""
        A = self.cartan_matrix
        return tuple(sum(A[i][j] * c[j] for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def highest_root(self):
        return self.positive_roots[-1]

    @cached_property
    def dim(self):
        return self.rank + 2 * len(self.positive_roots)

    def h_dual_from_roots(self):
        # 1 + (rho, theta^vee) with (theta, theta) = 2 in the long normalization
        theta = self.highest_root
        return 1 + sum(c * self.form_long[j][j] / 2 for j, c in enumerate(theta))

    # -- weights -------------------------------------------------------------

    def fundamental(self, i, k=1):
        return tuple(k * int(j == i) for j in range(self.rank))

    @property
    def zero(self):
        return (0,) * self.rank

    @property
    def rho_labels(self):
        return (1,) * self.rank

    def pairing(self, lam, mu, which="short"):
        W = self.weight_form
        s = sum(Fraction(lam[i]) * W[i][j] * mu[j] for i in range(self.rank) if lam[i]
                for j in range(self.rank) if mu[j])
        s = Fraction(s)
        return s if which == "short" else s / self.lacing

    def root_weight_pairing(self, c, lam, which="short"):
        """<<sum_j c_j alpha_j, lam>>."""
        M = self.form_short
        s = Fraction(sum(c[j] * lam[j] * M[j][j] / 2 for j in range(self.rank)))
        return s if which == "short" else s / self.lacing

    def root_coords(self, lam):
        X = self.fundamental_weights
        return tuple(sum(lam[i] * X[i][k] for i in range(self.rank)) for k in range(self.rank))

    def in_root_lattice(self, lam):
        return all(c.denominator == 1 for c in self.root_coords(lam))

    def add(self, lam, mu, k=1):
        return tuple(a + k * b for a, b in zip(lam, mu))

    def is_dominant(self, lam):
        return all(a >= 0 for a in lam)

    def reflect(self, lam, i):
        A = self.cartan_matrix
        a = lam[i]
        return tuple(lam[k] - a * A[k][i] for k in range(self.rank))

    def dominant_conjugate(self, lam):
        """(dominant weight in the W-orbit of lam, parity of the number of reflections used)."""
        lam = tuple(lam)
        parity = 0
        while True:
            i = next((k for k, a in enumerate(lam) if a < 0), None)
            if i is None:
                return lam, parity
            lam = self.reflect(lam, i)
            parity ^= 1

    def dual_weight(self, lam):
        if not self.is_dominant(lam):
            raise ValueError(f"{lam} is not dominant")
        return self.dominant_conjugate(tuple(-a for a in lam))[0]

    def height(self, lam):
        return sum(lam)

    def dominant_weights(self, max_height):
        """All dominant weights with label sum <= max_height."""
        out = []

        def rec(prefix, left):
            if len(prefix) == self.rank:
                out.append(tuple(prefix))
                return
            for a in range(left + 1):
                rec(prefix + [a], left - a)

        rec([], max_height)
        return out

    # -- P/Q -----------------------------------------------------------------

    @cached_property
    def coset_generators(self):
        """Fundamental weights whose cosets generate P/Q, one per cyclic factor."""
        f, n = self.type.family, self.rank
        if f == "A":
            return (self.fundamental(0),)
        if f == "B":
            return (self.fundamental(n - 1),)
        if f == "C":
            return (self.fundamental(0),)
        if f == "D":
            if n % 2:
                return (self.fundamental(n - 1),)
            return (self.fundamental(0), self.fundamental(n - 1))
        if f == "E" and n == 6:
            return (self.fundamental(5),)
        if f == "E" and n == 7:
            return (self.fundamental(6),)
        return ()

    def weight_order(self, lam):
        return lcm_all(c.denominator for c in self.root_coords(lam))

    @cached_property
    def _coset_table(self):
        """Map: root-coordinate residue key -> group element, plus the group."""
        gens = self.coset_generators
        G = FinAbGroup(tuple(self.weight_order(g) for g in gens))
        table = {}
        for x in G.elements:
            lam = self.zero
            for a, g in zip(x, gens):
                lam = self.add(lam, g, a)
            table[self._coset_key(lam)] = x
        if len(table) != G.order:
            raise AssertionError(f"coset generators of {self.type} are not independent")
        return G, table

    def _coset_key(self, lam):
        return tuple(c - math.floor(c) for c in self.root_coords(lam))

    def coset(self, lam):
        """Element of P/Q (in generator coordinates) containing lam."""
        G, table = self._coset_table
        return table[self._coset_key(lam)]

    @cached_property
    def root_denominator(self):
        return lcm_all(c.denominator for row in self.fundamental_weights for c in row)

    def to_json(self):
        mat = lambda M: [[frac_str(x) for x in row] for row in M]
        return {
            "type": str(self.type),
            "simple_roots": mat(self.simple_roots),
            "cartan_matrix": [list(row) for row in self.cartan_matrix],
            "form_long": mat(self.form_long),
            "form_short": mat(self.form_short),
            "fundamental_weights": mat(self.fundamental_weights),
            "weight_form": mat(self.weight_form),
            "positive_roots": [list(r) for r in self.positive_roots],
            "rho_w": [frac_str(x) for x in self.rho_w],
            "h_dual": self.h_dual,
            "lacing": self.lacing,
            "n_g": self.n_g,
            "dual_involution": list(self.dual_involution),
        }


@lru_cache(maxsize=None)
def _build(t):
    return RootDatum(t)


def build_root_datum(t):
    return _build(LieType.parse(t))


def pairing(d, lam, mu, which="short"):
    return d.pairing(lam, mu, which)


def dual_weight(d, lam):
    return d.dual_weight(lam)


def discriminant_group(d):
    """(P/Q, {element: minimal-norm dominant representative})."""
    G, _ = d._coset_table
    reps = {}
    for lam in d.dominant_weights(2):
        x = d.coset(lam)
        key = (d.pairing(lam, lam), lam)
        if x not in reps or key < reps[x][0]:
            reps[x] = (key, lam)
    if len(reps) != G.order:
        raise AssertionError(f"missing coset representatives for {d.type}")
    return G, {x: reps[x][1] for x in G.elements}


def even_root_pairing(d):
    M = d.form_short
    return all(M[i][j] % 2 == 0 for i in range(d.rank) for j in range(d.rank))
