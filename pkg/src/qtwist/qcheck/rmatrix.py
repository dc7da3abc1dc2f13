"""sl2 modules L(m), the R-matrix R = (Theta f)^{-1} and its identities."""
from dataclasses import dataclass

from . import pbw
from .matrix import SMat, permutation
from .scalars import ONE, ZERO, q, qint, v

MAX_MODULE_DIM = 8


@dataclass
class ModuleRep:
    """L(m) with basis v_0..v_m; v_j has weight (m - 2j) lambda_1."""

    m: int
    E: SMat
    F: SMat
    K: SMat
    K_inv: SMat

    @property
    def dim(self):
        return self.m + 1

    def weight(self, j):
        return self.m - 2 * j

    def relations_hold(self):
        KE = self.K @ self.E
        EK = self.E @ self.K
        KF = self.K @ self.F
        FK = self.F @ self.K
        comm = self.E @ self.F - self.F @ self.E
        rhs = (self.K - self.K_inv).scale(1 / (q - q ** -1))
        return (KE == EK.scale(q ** 2) and KF == FK.scale(q ** -2) and comm == rhs
                and self.K @ self.K_inv == SMat.identity(self.dim))


def module_L(m):
    if m + 1 > MAX_MODULE_DIM:
        raise ValueError(f"module dimension is capped at {MAX_MODULE_DIM}")
    n = m + 1
    E = SMat(n, {(j - 1, j): qint(m - j + 1) for j in range(1, n)})
    F = SMat(n, {(j + 1, j): qint(j + 1) for j in range(n - 1)})
    K = SMat.diag([q ** (m - 2 * j) for j in range(n)])
    K_inv = SMat.diag([q ** (2 * j - m) for j in range(n)])
    return ModuleRep(m, E, F, K, K_inv)


def act(u, M):
    """Matrix of a PBW element on a module."""
    out = SMat(M.dim)
    for (a, m, c), x in u.items():
        Km = M.K.power(m) if m >= 0 else M.K_inv.power(-m)
        out = out + (M.F.power(a) @ Km @ M.E.power(c)).scale(x)
    return out


def act2(X, M1, M2):
    out = SMat(M1.dim * M2.dim)
    for (k1, k2), x in X.items():
        out = out + act(pbw.mono(*k1), M1).kron(act(pbw.mono(*k2), M2)).scale(x)
    return out


def f_matrix(M1, M2, inverse=False):
    """f on weight vectors of weights a, b (units of lambda_1): v^{-ab}, q = v^2."""
    s = 1 if inverse else -1
    return SMat.diag([v ** (s * M1.weight(i) * M2.weight(j))
                      for i in range(M1.dim) for j in range(M2.dim)])


def theta_matrix(M1, M2, coeffs=None):
    D = min(M1.m, M2.m)
    return act2(pbw.tadd(*pbw.theta_sl2(D, coeffs)), M1, M2)


def unipotent_inverse(T):
    n = T.n
    N = T - SMat.identity(n)
    out = SMat.identity(n)
    term = SMat.identity(n)
    for k in range(1, n + 1):
        term = (term @ N).scale(-ONE)
        if term.is_zero():
            return out
        out = out + term
    raise AssertionError("Theta is not unipotent on this module")


def rmatrix_action(M1, M2):
    """R = (Theta f)^{-1} = f^{-1} Theta^{-1} on M1 (x) M2."""
    return f_matrix(M1, M2, inverse=True) @ unipotent_inverse(theta_matrix(M1, M2))


def flip(M1, M2):
    n1, n2 = M1.dim, M2.dim
    return permutation(n1 * n2, {i * n2 + j: j * n1 + i for i in range(n1) for j in range(n2)})


def _coproduct_matrix(gen, M1, M2, op=False):
    X = pbw.coproduct(gen)
    if op:
        X = pbw.swap(X)
    return act2(X, M1, M2)


def check_R1(M1, M2):
    """R Delta(x) R^{-1} = Delta^op(x) for x in E, F, K, as R Delta(x) = Delta^op(x) R."""
    R = rmatrix_action(M1, M2)
    return all(R @ _coproduct_matrix(g, M1, M2) == _coproduct_matrix(g, M1, M2, op=True) @ R
               for g in ("E", "F", "K"))


def yang_baxter(M):
    R = rmatrix_action(M, M)
    I = SMat.identity(M.dim)
    R12 = R.kron(I)
    R23 = I.kron(R)
    n = M.dim
    # swap of the last two factors
    P23 = permutation(n ** 3, {(i * n + j) * n + k: (i * n + k) * n + j
                               for i in range(n) for j in range(n) for k in range(n)})
    R13 = P23 @ R12 @ P23
    return R12 @ R13 @ R23 == R23 @ R13 @ R12


def braiding_eigenvalues_sl2():
    """(P R on L(1)(x)L(1), expected eigenvalue, multiplicity) pairs as a report."""
    M = module_L(1)
    B = flip(M, M) @ rmatrix_action(M, M)
    I = SMat.identity(4)
    out = []
    for lam in (v, -v ** -3):
        kernel_dim = 4 - (B - I.scale(lam)).rank()
        out.append((lam, kernel_dim))
    return B, out


def braiding_eigencheck_sl2():
    """Eigenvalues of P R on L(1)(x)L(1) are v (3 times) and -v^{-3} (once)."""
    from ..repcalc import tensor_decompose, weyl_dim
    from ..rootdata import build_root_datum
    d = build_root_datum("A1")
    parts = tensor_decompose(d, (1,), (1,))
    dims = {w: weyl_dim(d, w) for w in parts}
    B, eig = braiding_eigenvalues_sl2()
    (_, sym), (_, alt) = eig
    I = SMat.identity(4)
    minimal = (B - I.scale(v)) @ (B + I.scale(v ** -3))
    return minimal.is_zero() and sym == dims[(2,)] and alt == dims[(0,)] and sym + alt == 4


def f_transform_check(D, modules=None):
    """f^{-1} (F^n (x) E^n) f = F^n K^n (x) K^{-n} E^n for n <= D."""
    if modules is None:
        top = min(D, MAX_MODULE_DIM - 1)
        modules = [(module_L(a), module_L(b)) for a in range(1, top + 1) for b in (a, max(1, a - 1))]
    for M1, M2 in modules:
        f = f_matrix(M1, M2)
        f_inv = f_matrix(M1, M2, inverse=True)
        for n in range(0, D + 1):
            lhs = f_inv @ act(pbw.mono(n, 0, 0), M1).kron(act(pbw.mono(0, 0, n), M2)) @ f
            rhs = act(pbw.mono(n, n, 0), M1).kron(act(pbw.mono(0, -n, n), M2))
            if not lhs == rhs:
                return False
    return True
