"""Subgroups, super isotropic subspaces (I, p) and the algebra object S(I)."""
import os
from dataclasses import dataclass, field

import numpy as np

from .abcoh import Cochain2, trivialize_on_isotropic

DEFAULT_MAX_GROUP = 512


class GroupTooLarge(ValueError):
    pass


def max_group_order():
    return int(os.environ.get("QTWIST_MAX_GROUP", DEFAULT_MAX_GROUP))


@dataclass(frozen=True)
class Subgroup:
    group: object
    elements: tuple  # sorted element indices, 0 first
    generators: tuple  # element tuples

    @property
    def order(self):
        return len(self.elements)

    def contains(self, x):
        return self.group.index(x) in set(self.elements)

    def is_cyclic(self):
        G = self.group
        n = self.order
        return any(G.element_order(G.elements[i]) == n for i in self.elements)


def enumerate_subgroups(A):
    """Every subgroup of A, each once, ordered by size then element set."""
    if A.order > max_group_order():
        raise GroupTooLarge(f"|A| = {A.order} exceeds the cap {max_group_order()}")
    T = A.add_table
    trivial = (0,)
    found = {trivial: ()}
    frontier = [trivial]
    while frontier:
        new = []
        for H in frontier:
            Hset = set(H)
            for g in range(A.order):
                if g in Hset:
                    continue
                # <H, g> = union of cosets H + kg
                elems = set(H)
                coset = list(H)
                while True:
                    coset = [int(T[h, g]) for h in coset]
                    if coset[0] in elems:
                        break
                    elems.update(coset)
                key = tuple(sorted(elems))
                if key not in found:
                    found[key] = found[H] + (A.elements[g],)
                    new.append(key)
        frontier = new
    keys = sorted(found, key=lambda k: (len(k), k))
    return [Subgroup(A, k, found[k]) for k in keys]


@dataclass(frozen=True)
class SuperIsotropic:
    q: object  # ambient QuadForm
    subgroup: Subgroup
    parity: tuple  # parity of each element of subgroup.elements, same order

    @property
    def is_isotropic(self):
        return not any(self.parity)

    def parity_map(self):
        return dict(zip(self.subgroup.elements, self.parity))

    def to_json(self):
        G = self.q.group
        gens = self.subgroup.generators
        return {
            "generators": [list(g) for g in gens],
            "parity": [self.parity_map()[G.index(g)] for g in gens],
        }


def forced_parity(q, elements):
    """p(a) with Q(a) = (-1)^p(a) on the given indices, or None if some Q(a) is not +-1."""
    p = []
    for i in elements:
        s = q.sign_exponent(i)
        if s is None:
            return None
        p.append(s)
    return tuple(p)


def parity_is_additive(q, elements, parity):
    T = q.group.add_table
    p = dict(zip(elements, parity))
    return all(p[int(T[a, b])] == (p[a] + p[b]) % 2 for a in elements for b in elements)


def classify_subgroup(q, H):
    """'isotropic', 'super', 'not-additive' (Q in +-1 but p fails), or 'none'."""
    p = forced_parity(q, H.elements)
    if p is None:
        return "none"
    if not parity_is_additive(q, H.elements, p):
        return "not-additive"
    return "super" if any(p) else "isotropic"


def super_isotropic_subspaces(q):
    out = []
    for H in enumerate_subgroups(q.group):
        p = forced_parity(q, H.elements)
        if p is not None and parity_is_additive(q, H.elements, p):
            out.append(SuperIsotropic(q, H, p))
    return out


@dataclass
class AlgebraObject:
    """S(I) = sum of delta_a over a in I, with product delta_a delta_b = k(a, b) delta_{a+b}."""

    si: SuperIsotropic
    k: Cochain2
    unit: int = 0
    even: tuple = field(init=False)
    odd: tuple = field(init=False)

    def __post_init__(self):
        pm = self.si.parity_map()
        self.even = tuple(a for a in self.si.subgroup.elements if pm[a] == 0)
        self.odd = tuple(a for a in self.si.subgroup.elements if pm[a] == 1)

    @property
    def dim(self):
        return self.si.subgroup.order


def build_S(si, x):
    k = trivialize_on_isotropic(x, si.subgroup.elements, si.parity_map())
    return AlgebraObject(si, k)


def supercommutative_failures(S, x):
    """Names of the axioms among SCA1-3 that fail."""
    k = S.k
    G = x.group
    T = G.add_table
    s = list(k.support)
    pos = {e: i for i, e in enumerate(s)}
    den = np.lcm(k.den, x.den)
    fk, fx = den // k.den, den // x.den
    M = 2 * den
    K = k.k * fk
    pm = S.si.parity_map()
    bad = []
    z = pos[0]
    if (K[z, :] % M).any() or (K[:, z] % M).any():
        bad.append("SCA1")
    sca2 = sca3 = False
    for a in s:
        for b in s:
            ab = int(T[a, b])
            for c in s:
                bc = int(T[b, c])
                # (d_a d_b) d_c = omega(a, b, c) d_a (d_b d_c)
                lhs = K[pos[a], pos[b]] + K[pos[ab], pos[c]]
                rhs = int(x.omega[a, b, c]) * fx + K[pos[b], pos[c]] + K[pos[a], pos[bc]]
                if (lhs - rhs) % M:
                    sca2 = True
            lhs = int(x.c[a, b]) * fx + K[pos[b], pos[a]]
            rhs = pm[a] * pm[b] * den + K[pos[a], pos[b]]
            if (lhs - rhs) % M:
                sca3 = True
    if sca2:
        bad.append("SCA2")
    if sca3:
        bad.append("SCA3")
    return bad


def verify_supercommutative(S, x):
    return not supercommutative_failures(S, x)
