"""Truncated U_q(sl2) in the PBW basis F^a K^m E^c, and the quasi R-matrix Theta.

Elements are dicts {(a, m, c): coeff}; elements of U (x) U are dicts
{((a, m, c), (b, n, e)): coeff}.
"""
from functools import lru_cache

from .scalars import ONE, ZERO, q, qint

E = {(0, 0, 1): ONE}
F = {(1, 0, 0): ONE}
K = {(0, 1, 0): ONE}
K_INV = {(0, -1, 0): ONE}
UNIT = {(0, 0, 0): ONE}


def _acc(out, key, x):
    y = out.get(key, ZERO) + x
    if y == 0:
        out.pop(key, None)
    else:
        out[key] = y


@lru_cache(maxsize=None)
def _straighten(c, b):
    """E^c F^b as a tuple of ((x, y, z), coeff) for F^x K^y E^z."""
    if c == 0 or b == 0:
        return (((b, 0, c), ONE),)
    out = {}
    # E^c F^b = E^{c-1} F^b E + [b]/(q - q^-1) E^{c-1} F^{b-1} (q^{1-b} K - q^{b-1} K^{-1})
    for (x, y, z), s in _straighten(c - 1, b):
        _acc(out, (x, y, z + 1), s)
    f = qint(b) / (q - q ** -1)
    for (x, y, z), s in _straighten(c - 1, b - 1):
        # E^z K^{+-1} = q^{-+2z} K^{+-1} E^z
        _acc(out, (x, y + 1, z), s * f * q ** (1 - b) * q ** (-2 * z))
        _acc(out, (x, y - 1, z), -s * f * q ** (b - 1) * q ** (2 * z))
    return tuple(out.items())


def mono_mul(m1, m2):
    a, m, c = m1
    b, n, e = m2
    out = {}
    for (x, y, z), s in _straighten(c, b):
        # F^a K^m F^x K^y E^z K^n E^e
        coeff = s * q ** (-2 * m * x - 2 * n * z)
        _acc(out, (a + x, m + y + n, z + e), coeff)
    return out


def mul(u, w):
    out = {}
    for m1, x in u.items():
        for m2, y in w.items():
            for key, s in mono_mul(m1, m2).items():
                _acc(out, key, x * y * s)
    return out


def add(*terms):
    out = {}
    for t in terms:
        for k, x in t.items():
            _acc(out, k, x)
    return out


def scale(u, c):
    return {k: c * x for k, x in u.items() if c * x != 0}


def power(u, n):
    out = UNIT
    for _ in range(n):
        out = mul(out, u)
    return out


def mono(a, m, c, coeff=ONE):
    return {(a, m, c): coeff}


# -- tensor squares ----------------------------------------------------------


def tensor(u, w):
    return {(k1, k2): x * y for k1, x in u.items() for k2, y in w.items()}


def tmul(X, Y):
    out = {}
    for (a1, a2), x in X.items():
        for (b1, b2), y in Y.items():
            left = mono_mul(a1, b1)
            right = mono_mul(a2, b2)
            for k1, s in left.items():
                for k2, t in right.items():
                    _acc(out, (k1, k2), x * y * s * t)
    return out


def tadd(*terms):
    return add(*terms)


def swap(X):
    """P21: x (x) y -> y (x) x."""
    return {(k2, k1): x for (k1, k2), x in X.items()}


def coproduct(gen):
    if gen == "E":
        return tadd(tensor(E, UNIT), tensor(K, E))
    if gen == "F":
        return tadd(tensor(F, K_INV), tensor(UNIT, F))
    if gen == "K":
        return tensor(K, K)
    if gen == "K_INV":
        return tensor(K_INV, K_INV)
    raise ValueError(gen)


def coproduct_tau(gen):
    """(tau (x) tau) Delta tau^{-1} with tau(K) = K^{-1}."""
    if gen == "E":
        return tadd(tensor(E, UNIT), tensor(K_INV, E))
    if gen == "F":
        return tadd(tensor(F, K), tensor(UNIT, F))
    if gen == "K":
        return tensor(K, K)
    if gen == "K_INV":
        return tensor(K_INV, K_INV)
    raise ValueError(gen)


def coproduct_of(u):
    """Delta extended multiplicatively to an arbitrary element."""
    out = {}
    for (a, m, c), x in u.items():
        term = {(((0, 0, 0), (0, 0, 0))): x}
        for _ in range(a):
            term = tmul(term, coproduct("F"))
        Km = coproduct("K" if m >= 0 else "K_INV")
        for _ in range(abs(m)):
            term = tmul(term, Km)
        for _ in range(c):
            term = tmul(term, coproduct("E"))
        out = tadd(out, term)
    return out


# -- pairing -----------------------------------------------------------------

FE_PAIRING = -1 / (q - q ** -1)


def _pair_mono(y, x):
    """(F^a K^s, E^c K^t), y = (a, s, 0), x = (0, t, c).

    (K^s, K^t) = q^{-2st}; (F, E) = -1/(q - q^-1); (y, x x') = (Delta y, x' (x) x)
    peels one E at a time.
    """
    a, s, _ = y
    _, t, c = x
    if a != c:
        return ZERO
    base = q ** (-2 * s * t)
    if c == 0:
        return base
    if c == 1:
        return base * FE_PAIRING
    return base * _pair_F_E(a)


@lru_cache(maxsize=None)
def _pair_F_E(n):
    if n == 0:
        return ONE
    if n == 1:
        return FE_PAIRING
    # (F^n, E^{n-1} E) = (Delta F^n, E (x) E^{n-1})
    total = ZERO
    for (y1, y2), x in coproduct_of(mono(n, 0, 0)).items():
        if y1[2] or y2[2]:
            continue
        p1 = _pair_mono(y1, (0, 0, 1))
        if p1 == 0:
            continue
        total += x * p1 * _pair_mono(y2, (0, 0, n - 1))
    return total


def pairing_F_E(n):
    """(F^n, E^n) from the Hopf pairing rules."""
    return _pair_F_E(n)


def theta_coefficients(D):
    return [1 / pairing_F_E(n) for n in range(D + 1)]


def theta_sl2(D, coeffs=None):
    """[Theta_0, ..., Theta_D], Theta_n = c_n F^n (x) E^n."""
    cs = theta_coefficients(D)
    for n, c in (coeffs or {}).items():
        cs[n] = c
    return [{((n, 0, 0), (0, 0, n)): cs[n]} for n in range(D + 1)]


def second_weight(key):
    (_, _, _), (b, _, e) = key
    return e - b


def _by_weight(X, wmax):
    return {k: x for k, x in X.items() if second_weight(k) <= wmax}


def intertwining_defect(D, coeffs=None, gens=("E", "F", "K", "K_INV")):
    """Terms of Delta(u) Theta - Theta Delta^tau(u) in second-factor weight <= D.

    Theta is built to degree D + 1 so every compared weight is complete.
    """
    theta = tadd(*theta_sl2(D + 1, coeffs))
    out = {}
    for g in gens:
        diff = tadd(tmul(coproduct(g), theta), scale(tmul(theta, coproduct_tau(g)), -ONE))
        diff = _by_weight(diff, D)
        if diff:
            out[g] = diff
    return out


def verify_theta_intertwines(D, coeffs=None):
    if D > 16:
        raise ValueError("degree cap is 16")
    return not intertwining_defect(D, coeffs)


def solve_theta(D):
    """Solve Gamma_n = x_n F^n (x) E^n from the E-equation degree by degree, Gamma_0 = 1 (x) 1."""
    xs = [ONE]
    dE, dtE = coproduct("E"), coproduct_tau("E")
    for n in range(1, D + 1):
        mon = {((n, 0, 0), (0, 0, n)): ONE}
        prev = {((n - 1, 0, 0), (0, 0, n - 1)): xs[-1]}
        A = _weight_eq(tadd(tmul(dE, mon), scale(tmul(mon, dtE), -ONE)), n)
        B = _weight_eq(tadd(tmul(dE, prev), scale(tmul(prev, dtE), -ONE)), n)
        key = next(iter(A))
        x = -B.get(key, ZERO) / A[key]
        if tadd(scale(A, x), B):
            raise ArithmeticError(f"degree {n} equation has no solution")
        xs.append(x)
    return xs


def _weight_eq(X, w):
    return {k: x for k, x in X.items() if second_weight(k) == w}


def omega_auto(u):
    """The algebra automorphism E -> F, F -> E, K -> K^{-1}."""
    out = {}
    for (a, m, c), x in u.items():
        term = scale(mul(mul(power(E, a), mono(0, -m, 0)), power(F, c)), x)
        out = add(out, term)
    return out


def omega_invariance_check(D):
    for th in theta_sl2(D):
        lhs = {}
        for (k1, k2), x in th.items():
            lhs = tadd(lhs, scale(tensor(omega_auto(mono(*k1)), omega_auto(mono(*k2))), x))
        if tadd(lhs, scale(swap(th), -ONE)):
            return False
    return True
