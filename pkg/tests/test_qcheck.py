from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qtwist.abcoh import appendix_cocycle
from qtwist.qcheck import pbw, rmatrix
from qtwist.qcheck.appendix import (appendix_suite, k_invariance, odd_orthogonal,
                                    serre_sign_invariant)
from qtwist.qcheck.matrix import SMat
from qtwist.qcheck.phases import (UnsupportedFamily, f_rho_periodicity, twist_identity_check,
                                  twist_identity_report)
from qtwist.qcheck.scalars import (ONE, ZERO, Phase, is_laurent_poly, negate_q, q, qint, v,
                                   value_at_one)
from qtwist.qcheck.suites import SUITES, run_suite
from qtwist.rootdata import all_types, build_root_datum


def _qint_sum(n):
    # q^{n-1} + q^{n-3} + ... + q^{1-n}
    return sum((q ** (n - 1 - 2 * j) for j in range(n)), ZERO)


def _qfact(n):
    out = ONE
    for k in range(1, n + 1):
        out *= qint(k)
    return out


# -- scalars -----------------------------------------------------------------


def test_qint_examples():
    assert qint(1) == ONE
    assert qint(2) == q + q ** -1
    assert qint(0) == ZERO


@pytest.mark.parametrize("n", range(0, 13))
def test_qint_sign_law(n):
    x = qint(n)
    assert x == _qint_sum(n)
    assert is_laurent_poly(x) and value_at_one(x) == n
    assert negate_q(x) == (-1) ** (n + 1) * x


phases = st.builds(Phase, st.fractions(-4, 4, max_denominator=6), st.fractions(-4, 4, max_denominator=6))


@settings(max_examples=60, deadline=None)
@given(phases, phases, phases)
def test_phase_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a * a.inverse()).is_one()
    assert a.inverse() == Phase(-a.a, -a.b)


@settings(max_examples=60, deadline=None)
@given(st.fractions(-4, 4, max_denominator=6), st.fractions(-4, 4, max_denominator=6))
def test_phase_is_one(a, b):
    assert Phase(a, b).is_one() == (a == 0 and b % 2 == 0)


# -- PBW algebra ---------------------------------------------------------------


def test_defining_relations():
    assert pbw.mul(pbw.K, pbw.E) == pbw.scale(pbw.mul(pbw.E, pbw.K), q ** 2)
    assert pbw.mul(pbw.K, pbw.F) == pbw.scale(pbw.mul(pbw.F, pbw.K), q ** -2)
    comm = pbw.add(pbw.mul(pbw.E, pbw.F), pbw.scale(pbw.mul(pbw.F, pbw.E), -ONE))
    rhs = pbw.scale(pbw.add(pbw.K, pbw.scale(pbw.K_INV, -ONE)), 1 / (q - q ** -1))
    assert comm == rhs


monos = st.tuples(st.integers(0, 2), st.integers(-2, 2), st.integers(0, 2))


@settings(max_examples=30, deadline=None)
@given(monos, monos, monos)
def test_pbw_associativity(a, b, c):
    x, y, z = pbw.mono(*a), pbw.mono(*b), pbw.mono(*c)
    assert pbw.mul(pbw.mul(x, y), z) == pbw.mul(x, pbw.mul(y, z))


@settings(max_examples=20, deadline=None)
@given(monos, monos)
def test_coproduct_is_multiplicative(a, b):
    x, y = pbw.mono(*a), pbw.mono(*b)
    assert pbw.coproduct_of(pbw.mul(x, y)) == pbw.tmul(pbw.coproduct_of(x), pbw.coproduct_of(y))


def test_theta_coefficients():
    cs = pbw.theta_coefficients(8)
    assert cs[0] == ONE
    assert cs[1] == -(q - q ** -1)
    for n in range(9):
        assert cs[n] == (-1) ** n * q ** (-n * (n - 1) // 2) * (q - q ** -1) ** n / _qfact(n)


def test_theta_intertwines():
    assert pbw.verify_theta_intertwines(2)
    assert pbw.verify_theta_intertwines(8)
    cs = pbw.theta_coefficients(2)
    assert not pbw.verify_theta_intertwines(2, {1: -cs[1]})
    with pytest.raises(ValueError):
        pbw.verify_theta_intertwines(17)


def test_theta_uniqueness():
    assert pbw.solve_theta(8) == pbw.theta_coefficients(8)


def test_omega_invariance():
    assert pbw.omega_invariance_check(8)
    th = pbw.theta_sl2(1)
    assert th[0] == {((0, 0, 0), (0, 0, 0)): ONE}


# -- R-matrix --------------------------------------------------------------------


@pytest.mark.parametrize("m", range(0, 8))
def test_modules(m):
    M = rmatrix.module_L(m)
    assert M.relations_hold()
    assert [M.weight(j) for j in range(M.dim)] == list(range(m, -m - 1, -2))


def test_module_cap():
    with pytest.raises(ValueError):
        rmatrix.module_L(8)


def test_R_on_highest_vectors():
    M = rmatrix.module_L(1)
    R = rmatrix.rmatrix_action(M, M)
    assert R.e.get((0, 0)) == v


@pytest.mark.parametrize("a,b", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
def test_R1(a, b):
    assert rmatrix.check_R1(rmatrix.module_L(a), rmatrix.module_L(b))


@pytest.mark.parametrize("m", [1, 2])
def test_yang_baxter(m):
    assert rmatrix.yang_baxter(rmatrix.module_L(m))


def test_braiding_eigenvalues():
    assert rmatrix.braiding_eigencheck_sl2()
    _, eig = rmatrix.braiding_eigenvalues_sl2()
    assert dict(eig) == {v: 3, -v ** -3: 1}


def test_flipped_theta_breaks_R1():
    M = rmatrix.module_L(1)
    cs = pbw.theta_coefficients(1)
    T = rmatrix.theta_matrix(M, M, {1: -cs[1]})
    R = rmatrix.f_matrix(M, M, inverse=True) @ rmatrix.unipotent_inverse(T)
    E = rmatrix.act2(pbw.coproduct("E"), M, M)
    E_op = rmatrix.act2(pbw.swap(pbw.coproduct("E")), M, M)
    assert not R @ E == E_op @ R


def test_f_transform():
    M1, M2 = rmatrix.module_L(1), rmatrix.module_L(1)
    N1, N2 = rmatrix.module_L(2), rmatrix.module_L(2)
    assert rmatrix.f_transform_check(0, [(M1, M2)])
    assert rmatrix.f_transform_check(1, [(M1, M2)])
    assert rmatrix.f_transform_check(2, [(N1, N2)])
    assert rmatrix.f_transform_check(8)


def test_matrix_algebra():
    A = SMat(2, {(0, 1): q, (1, 0): ONE})
    I = SMat.identity(2)
    assert A @ I == A
    assert (A @ A) == SMat.diag([q, q])
    assert A.rank() == 2
    assert A.kron(I).n == 4


# -- phases ------------------------------------------------------------------------


@pytest.mark.parametrize("t", [f"A{n}" for n in range(1, 9)] + [f"C{n}" for n in range(2, 9)]
                         + [f"D{n}" for n in range(4, 9)])
@pytest.mark.parametrize("N", range(4))
def test_twist_identities(t, N):
    assert twist_identity_check(t, N)


def test_twist_identity_an_symmetric_part():
    for n in range(2, 9):
        rows = {r["constituent"]: r for r in twist_identity_report(f"A{n - 1}", 1)}
        # exp(pi*i*(1 - 1/n)) * exp(pi*i*rho*(1 - 1/n)) = exp(pi*i*(rho + 1)*(1 - 1/n))
        want = Phase(1 - Fraction(1, n), 0)
        assert rows["X_s"]["listed"] == str(want)
        assert rows["X_s"]["twist_identity"]


def test_twist_identity_cn_trivial_part():
    for n in range(2, 9):
        rows = {r["constituent"]: r for r in twist_identity_report(f"C{n}", 1)}
        assert rows["X_1"]["listed"] == str(Phase(-(1 + 2 * n), 1))
        assert rows["X_1"]["twist_identity"]


def test_twist_identity_unsupported_family():
    with pytest.raises(UnsupportedFamily):
        twist_identity_check("B3", 1)


@pytest.mark.parametrize("t", [str(t) for t in all_types()])
def test_f_rho_periodicity(t):
    d = build_root_datum(t)
    for N in range(4):
        assert f_rho_periodicity(d, N)


def test_f_rho_false_period():
    assert f_rho_periodicity(build_root_datum("A1"), 1)
    assert build_root_datum("A1").n_g * 2 == 4
    assert not f_rho_periodicity(build_root_datum("A2"), 1, n_g=1)


# -- so_{2n+1} --------------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 9))
def test_serre_signs(n):
    assert serre_sign_invariant(odd_orthogonal(n))


@pytest.mark.parametrize("t", ["A2", "A3", "C3", "D4", "G2"])
def test_serre_signs_fail_elsewhere(t):
    assert not serre_sign_invariant(build_root_datum(t))


def test_so_odd_cocycle_values():
    x2 = appendix_cocycle(2)
    assert x2.omega_value((1,), (1,), (1,)) == 0
    assert x2.c_value((1,), (1,)) == 1
    assert appendix_cocycle(3).c_value((1,), (1,)) == Fraction(3, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_k_invariance(n):
    r = k_invariance(n, height=4)
    assert r["invariant"] and r["special_values"]


def test_appendix_suite_small():
    assert all(c["passed"] for c in appendix_suite(3))
    with pytest.raises(ValueError):
        appendix_suite(9)


@pytest.mark.parametrize("name", [s for s in SUITES if s != "appendix"])
def test_named_suites(name):
    report = run_suite(name, degree=4)
    assert report["passed"], [c for c in report["checks"] if not c["passed"]]


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")
