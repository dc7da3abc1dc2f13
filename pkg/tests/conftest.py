import itertools
import math
from fractions import Fraction

from hypothesis import strategies as st

from qtwist.finquad import FinAbGroup, QuadForm, mod2

# criterion number -> (passed, seconds, detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, secs, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({secs:.2f} s) {detail}")


def form_from_coefficients(factors, diag, cross):
    """Q(x) = exp(pi*i*(sum t_i x_i^2 + sum_{i<j} b_ij x_i x_j)).

    diag[i] = a means t_i = a/d_i (a even when d_i is odd); cross[(i, j)] = c means
    b_ij = 2c/gcd(d_i, d_j). Both choices make Q well defined on Z/d_1 x ... x Z/d_r.
    """
    G = FinAbGroup(tuple(factors))
    ts = [Fraction(a, d) for a, d in zip(diag, factors)]
    bs = {k: Fraction(2 * c, math.gcd(factors[k[0]], factors[k[1]])) for k, c in cross.items()}
    exps = []
    for x in G.elements:
        e = sum(t * a * a for t, a in zip(ts, x))
        e += sum(b * x[i] * x[j] for (i, j), b in bs.items())
        exps.append(mod2(e))
    return QuadForm.from_exponents(G, exps)


@st.composite
def small_forms(draw, max_order=16, max_factors=2):
    factors = []
    order = 1
    for _ in range(draw(st.integers(1, max_factors))):
        d = draw(st.sampled_from([2, 3, 4, 6, 8]))
        if order * d > max_order:
            break
        factors.append(d)
        order *= d
    if not factors:
        factors = [2]
    diag = []
    for d in factors:
        a = draw(st.integers(0, 2 * d - 1))
        diag.append(a if d % 2 == 0 else 2 * (a % d))
    cross = {(i, j): draw(st.integers(0, 7))
             for i in range(len(factors)) for j in range(i + 1, len(factors))}
    return form_from_coefficients(factors, diag, cross)


def isomorphic_forms(q1, q2):
    """Exhaustive search for a group isomorphism carrying q1 to q2 (small groups only)."""
    G1, G2 = q1.group, q2.group
    if G1.order != G2.order:
        return False
    if sorted(q1.exponents()) != sorted(q2.exponents()):
        return False
    r = len(G1.factors)
    gens = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    candidates = [[y for y in G2.elements if G2.element_order(y) == d] for d in G1.factors]
    for images in itertools.product(*candidates):
        def f(x):
            out = G2.zero
            for a, y in zip(x, images):
                out = G2.add(out, G2.scale(a, y))
            return out
        imgs = [f(x) for x in G1.elements]
        if len(set(imgs)) != G1.order:
            continue
        if all(q1.exponent(x) == q2.exponent(y) for x, y in zip(G1.elements, imgs)):
            return True
    return False
