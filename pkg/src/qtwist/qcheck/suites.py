"""Named verification suites, each a list of {"name", "passed", ...} records."""
from fractions import Fraction

from ..rootdata import LieType, all_types, build_root_datum
from . import pbw, rmatrix
from .appendix import appendix_suite
from .phases import f_rho_periodicity, twist_identity_check
from .scalars import ONE, Phase, is_laurent_poly, negate_q, q, qint, v, value_at_one

SUITES = ("qint", "theta", "rmatrix", "phases", "appendix")


def _c(name, passed, detail=None):
    out = {"name": name, "passed": bool(passed)}
    if detail is not None:
        out["detail"] = detail
    return out


def qint_suite(n_max=12):
    checks = [_c("qint(1) = 1", qint(1) == ONE), _c("qint(2) = q + q^-1", qint(2) == q + q ** -1)]
    for n in range(n_max + 1):
        x = qint(n)
        checks.append(_c(f"qint({n}) Laurent with classical limit {n}",
                         is_laurent_poly(x) and value_at_one(x) == n))
        checks.append(_c(f"qint({n}) at -q = (-1)^{n + 1} qint({n})",
                         negate_q(x) == (-1) ** (n + 1) * x))
    return checks


def theta_suite(D=8):
    cs = pbw.theta_coefficients(D)
    checks = [_c("c_0 = 1", cs[0] == ONE), _c("c_1 = -(q - q^-1)", cs[1] == -(q - q ** -1))]
    closed = all(cs[n] == (-1) ** n * q ** (-n * (n - 1) // 2) * (q - q ** -1) ** n / _qfact(n)
                 for n in range(D + 1))
    checks.append(_c("c_n closed form", closed))
    checks.append(_c("intertwining D=2", pbw.verify_theta_intertwines(2)))
    checks.append(_c(f"intertwining D={D}", pbw.verify_theta_intertwines(D)))
    checks.append(_c("flipped c_1 detected", not pbw.verify_theta_intertwines(2, {1: -cs[1]})))
    checks.append(_c("uniqueness from E-equation", pbw.solve_theta(D) == cs))
    checks.append(_c("omega invariance", pbw.omega_invariance_check(D)))
    return checks


def _qfact(n):
    out = ONE
    for k in range(1, n + 1):
        out *= qint(k)
    return out


def rmatrix_suite(D=8):
    L = [rmatrix.module_L(m) for m in range(rmatrix.MAX_MODULE_DIM)]
    checks = [_c("module relations", all(M.relations_hold() for M in L))]
    R = rmatrix.rmatrix_action(L[1], L[1])
    checks.append(_c("R on highest (x) highest = v", R.e.get((0, 0)) == v))
    pairs = [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)]
    checks.append(_c("R1", all(rmatrix.check_R1(L[a], L[b]) for a, b in pairs)))
    checks.append(_c("Yang-Baxter L(1)", rmatrix.yang_baxter(L[1])))
    checks.append(_c("Yang-Baxter L(2)", rmatrix.yang_baxter(L[2])))
    checks.append(_c("braiding eigenvalues v, -v^-3", rmatrix.braiding_eigencheck_sl2()))
    checks.append(_c(f"f transform n<={D}", rmatrix.f_transform_check(D)))
    return checks


def phases_suite(N_max=3):
    a, b = Phase(Fraction(1, 3), Fraction(1, 2)), Phase(-2, Fraction(3, 2))
    checks = [
        _c("phase product commutes", a * b == b * a),
        _c("phase inverse", (a * a.inverse()).is_one()),
        _c("phase equality mod 2", Phase(1, 3) == Phase(1, 1)),
        _c("rho is formal", not Phase(2, 0).is_one()),
    ]
    for t in all_types():
        if t.family in "ACD":
            for N in range(N_max + 1):
                checks.append(_c(f"twist identity {t} N={N}", twist_identity_check(t, N)))
    for t in all_types():
        d = build_root_datum(t)
        checks.append(_c(f"f_rho periodicity {t}", all(f_rho_periodicity(d, N) for N in range(N_max + 1))))
    checks.append(_c("false period for A2 rejected",
                     not f_rho_periodicity(build_root_datum("A2"), 1, n_g=1)))
    return checks


def run_suite(name, degree=8, n_max=8):
    if name == "qint":
        checks = qint_suite()
    elif name == "theta":
        checks = theta_suite(degree)
    elif name == "rmatrix":
        checks = rmatrix_suite(degree)
    elif name == "phases":
        checks = phases_suite()
    elif name == "appendix":
        checks = appendix_suite(n_max)
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return {"suite": name, "passed": all(c["passed"] for c in checks), "checks": checks}
