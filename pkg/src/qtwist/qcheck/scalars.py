"""Exact scalars: rational functions in v with q = v^2, and formal phases.

The sl2 checks only ever need q^{1/2}, so v^2 = q covers every f entry.
"""
from dataclasses import dataclass
from fractions import Fraction

from sympy import ZZ
from sympy.polys.fields import field

FIELD, v = field("v", ZZ)
ONE = FIELD.one
ZERO = FIELD.zero
q = v ** 2


def vpow(k):
    return v ** int(k)


def qpow(e):
    """q^e for e in (1/2)Z."""
    e = Fraction(e)
    if (2 * e).denominator != 1:
        raise ValueError(f"q^{e} needs a finer root of q")
    return v ** int(2 * e)


def qint(n, d=1):
    """[n] at base q^d: (q^{dn} - q^{-dn}) / (q^d - q^{-d})."""
    b = q ** d
    return (b ** n - b ** -n) / (b - b ** -1)


def qfact(n, d=1):
    out = ONE
    for k in range(1, n + 1):
        out *= qint(k, d)
    return out


def qbinom(n, k, d=1):
    return qfact(n, d) / (qfact(k, d) * qfact(n - k, d))


def is_laurent_poly(x):
    return len(x.denom.terms()) == 1


def value_at_one(x):
    """Evaluate at v = 1 (the classical limit)."""
    num = sum(int(c) for c in x.numer.coeffs())
    den = sum(int(c) for c in x.denom.coeffs())
    return Fraction(num, den)


def negate_q(x):
    """x(q) -> x(-q) for x written in even powers of v."""
    def flip(p):
        out = FIELD.ring.zero
        for (e,), c in p.terms():
            if e % 2:
                raise ValueError("negate_q needs an expression in integral powers of q")
            out += (-1) ** (e // 2) * c * FIELD.ring.gens[0] ** e
        return out
    return FIELD(flip(x.numer)) / FIELD(flip(x.denom))


@dataclass(frozen=True)
class Phase:
    """exp(pi*i*(a*rho + b)) with rho formal; b is kept mod 2."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b) % 2)

    @classmethod
    def const(cls, b):
        return cls(0, b)

    @classmethod
    def q_power(cls, e, sign=1):
        """sign * q^e with q = exp(pi*i*rho)."""
        return cls(e, 0 if sign > 0 else 1)

    def __mul__(self, other):
        return Phase(self.a + other.a, self.b + other.b)

    def inverse(self):
        return Phase(-self.a, -self.b)

    def shift_rho(self, N):
        """Same expression with rho replaced by rho + N."""
        return Phase(self.a, self.b + N * self.a)

    def is_one(self):
        return self.a == 0 and self.b == 0

    def __str__(self):
        return f"exp(pi*i*({self.a}*rho + {self.b}))"
