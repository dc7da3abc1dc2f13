"""Finite-dimensional representations, conformal weights and graded dimensions."""
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .finquad import frac_str, parse_frac, rational_inverse

DIM_CAP = 10 ** 5
TENSOR_CAP = 10 ** 6


class CapExceeded(ValueError):
    pass


class IndefiniteLattice(ValueError):
    pass


def _check_dominant(d, lam):
    if len(lam) != d.rank or not d.is_dominant(lam):
        raise ValueError(f"{lam} is not a dominant weight of {d.type}")


def weyl_dim(d, lam):
    _check_dominant(d, lam)
    lr = d.add(lam, d.rho_labels)
    num = den = Fraction(1)
    for c in d.positive_roots:
        num *= d.root_weight_pairing(c, lr)
        den *= d.root_weight_pairing(c, d.rho_labels)
    out = num / den
    assert out.denominator == 1
    return int(out)


def _root_label_vectors(d):
    return [d.root_labels(c) for c in d.positive_roots]


def weyl_orbit(d, lam):
    seen = {tuple(lam)}
    stack = [tuple(lam)]
    while stack:
        mu = stack.pop()
        for i in range(d.rank):
            if mu[i]:
                nu = d.reflect(mu, i)
                if nu not in seen:
                    seen.add(nu)
                    stack.append(nu)
    return seen


@dataclass
class IrrepInfo:
    highest: tuple
    dim: int
    dominant: dict  # dominant weight -> multiplicity
    multiplicities: dict  # every weight -> multiplicity


def dominant_multiplicities(d, lam, cap=DIM_CAP):
    """Freudenthal's recursion on dominant weights; other weights by W-symmetry."""
    _check_dominant(d, lam)
    dim = weyl_dim(d, lam)
    if dim > cap:
        raise CapExceeded(f"dim L{lam} = {dim} exceeds cap {cap}")
    roots = _root_label_vectors(d)
    # dominant weights below lam, by depth
    levels = [[tuple(lam)]]
    seen = {tuple(lam)}
    while levels[-1]:
        nxt = []
        for mu in levels[-1]:
            for a in roots:
                nu = tuple(m - x for m, x in zip(mu, a))
                if d.is_dominant(nu) and nu not in seen:
                    seen.add(nu)
                    nxt.append(nu)
        levels.append(nxt)
    order = sorted(seen, key=lambda mu: sum(d.root_coords(d.add(lam, mu, -1))))
    ip = lambda x, y: d.pairing(x, y)
    lr = d.add(lam, d.rho_labels)
    top = ip(lr, lr)
    mult = {}

    def m(nu):
        return mult.get(d.dominant_conjugate(nu)[0], 0)

    for mu in order:
        if mu == tuple(lam):
            mult[mu] = 1
            continue
        s = Fraction(0)
        for a in roots:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                mm = m(nu)
                if not mm:
                    break
                s += mm * ip(nu, a)
                k += 1
        mr = d.add(mu, d.rho_labels)
        val = 2 * s / (top - ip(mr, mr))
        assert val.denominator == 1
        if val:
            mult[mu] = int(val)
    return mult


def weight_multiplicities(d, lam, cap=DIM_CAP):
    dom = dominant_multiplicities(d, lam, cap)
    full = {}
    for mu, k in dom.items():
        for nu in weyl_orbit(d, mu):
            full[nu] = k
    return IrrepInfo(tuple(lam), weyl_dim(d, lam), dom, full)


def decompose_character(d, char):
    """Split a W-invariant character {weight: mult} into irreducibles: Counter of highest weights."""
    rest = {mu: k for mu, k in char.items() if k}
    out = Counter()
    while rest:
        # a maximal dominant weight (largest height in root coordinates)
        lam = max((mu for mu in rest if d.is_dominant(mu)),
                  key=lambda mu: (sum(d.root_coords(mu)), mu))
        k = rest[lam]
        if k < 0:
            raise ValueError("character is not a nonnegative combination of irreducibles")
        out[lam] += k
        for nu, m in weight_multiplicities(d, lam).multiplicities.items():
            v = rest.get(nu, 0) - k * m
            if v:
                rest[nu] = v
            else:
                rest.pop(nu, None)
    return out


def tensor_decompose(d, lam, mu, cap=TENSOR_CAP):
    """Klimyk: L(lam) (x) L(mu) as a Counter of highest weights."""
    _check_dominant(d, lam)
    _check_dominant(d, mu)
    if weyl_dim(d, lam) * weyl_dim(d, mu) > cap:
        raise CapExceeded("tensor product exceeds the dimension cap")
    if weyl_dim(d, mu) > weyl_dim(d, lam):
        lam, mu = mu, lam
    out = Counter()
    lr = d.add(lam, d.rho_labels)
    for nu, k in weight_multiplicities(d, mu).multiplicities.items():
        w, parity = d.dominant_conjugate(d.add(lr, nu))
        if 0 in w:
            continue
        out[tuple(a - 1 for a in w)] += -k if parity else k
    return Counter({w: k for w, k in out.items() if k})


def square_parts(d, lam):
    """(S^2 L(lam), Lambda^2 L(lam)) as Counters of highest weights."""
    mult = weight_multiplicities(d, lam).multiplicities
    sq = Counter()
    for a, ka in mult.items():
        for b, kb in mult.items():
            sq[d.add(a, b)] += ka * kb
    adams = Counter()
    for a, ka in mult.items():
        adams[tuple(2 * x for x in a)] += ka
    sym = {w: (sq[w] + adams[w]) // 2 for w in sq}
    alt = {w: (sq[w] - adams[w]) // 2 for w in sq}
    return decompose_character(d, sym), decompose_character(d, alt)


def casimir(d, lam):
    """<<lam + 2 rho, lam>> in the short-root normalization."""
    return d.pairing(d.add(lam, d.rho_labels, 2), lam)


def conformal_weight_pair(d, lam, N):
    """Delta_k(lam) + Delta_k'(lam*) when 1/(r(k+h)) = rho + N and 1/(r(k'+h)) = -rho."""
    _check_dominant(d, lam)
    return N * casimir(d, lam) / 2


def coordinate_ring_truncation(d, height_cutoff):
    out = []
    for lam in sorted(d.dominant_weights(height_cutoff), key=lambda w: (sum(w), tuple(-a for a in w))):
        n = weyl_dim(d, lam)
        out.append((lam, d.dual_weight(lam), n * n))
    return out


class GradedSeries:
    """Finite sum of coeff * q^exp with exact rational exponents."""

    def __init__(self, terms=None):
        self.terms = {}
        for e, c in (terms or {}).items():
            if c:
                self.terms[Fraction(e)] = self.terms.get(Fraction(e), 0) + c

    @classmethod
    def constant(cls, c):
        return cls({Fraction(0): c})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return GradedSeries(out)

    def __mul__(self, other):
        if not isinstance(other, GradedSeries):
            return GradedSeries({e: c * other for e, c in self.terms.items()})
        out = defaultdict(int)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] += c1 * c2
        return GradedSeries(out)

    __rmul__ = __mul__

    def shift(self, delta):
        return GradedSeries({e + delta: c for e, c in self.terms.items()})

    def truncate(self, cutoff):
        return GradedSeries({e: c for e, c in self.terms.items() if e <= cutoff})

    def coeff(self, e):
        return self.terms.get(Fraction(e), 0)

    def exponents(self):
        return sorted(self.terms)

    def __eq__(self, other):
        return isinstance(other, GradedSeries) and self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"{c}q^{frac_str(e)}" for e, c in sorted(self.terms.items())) or "0"

    def to_json(self):
        return [{"exp": frac_str(e), "coeff": c} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data):
        return cls({parse_frac(t["exp"]): t["coeff"] for t in data})


def eta_power_series(dim_g, cutoff):
    """prod_{n>=1} (1 - q^n)^(-dim_g) up to q^cutoff (integer cutoff)."""
    cutoff = int(math.floor(cutoff))
    coeffs = [1] + [0] * cutoff
    for n in range(1, cutoff + 1):
        # multiply by (1 - q^n)^(-1), dim_g times
        for _ in range(dim_g):
            for i in range(n, cutoff + 1):
                coeffs[i] += coeffs[i - n]
    return GradedSeries({i: c for i, c in enumerate(coeffs)})


def weyl_module_graded_dim(d, lam, q_cutoff):
    return eta_power_series(d.dim, q_cutoff) * weyl_dim(d, lam)


def theta_series(L, coset, cutoff):
    """Sum of q^{(x,x)/2} over x in coset + M with (x,x)/2 <= cutoff."""
    cutoff = Fraction(cutoff)
    r = L.rank
    if r == 0:
        return GradedSeries.constant(1)
    if not L.is_positive_definite():
        raise IndefiniteLattice("theta series needs a positive definite lattice")
    G = [[Fraction(x) for x in row] for row in L.gram]
    Ginv = rational_inverse(G)
    mu = [Fraction(c) for c in coset]
    # x_i^2 <= (x, x) * Ginv_ii
    bounds = []
    for i in range(r):
        b = math.isqrt(int(math.ceil(2 * cutoff * Ginv[i][i]))) + 1
        bounds.append(range(math.floor(-b - mu[i]), math.ceil(b - mu[i]) + 1))
    out = defaultdict(int)

    def rec(prefix):
        if len(prefix) == r:
            x = [mu[i] + prefix[i] for i in range(r)]
            e = sum(x[i] * G[i][j] * x[j] for i in range(r) for j in range(r)) / 2
            if e <= cutoff:
                out[e] += 1
            return
        for a in bounds[len(prefix)]:
            rec(prefix + [a])

    rec([])
    return GradedSeries(out)
