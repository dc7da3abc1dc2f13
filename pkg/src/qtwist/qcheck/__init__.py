"""Exact checks on the quantum-group side: U_q(sl2), R-matrices, twist identities."""
from .appendix import appendix_suite
from .matrix import SMat
from .pbw import omega_invariance_check, solve_theta, theta_sl2, verify_theta_intertwines
from .phases import f_rho_periodicity, twist_identity_check, twist_identity_report
from .rmatrix import (ModuleRep, braiding_eigencheck_sl2, check_R1, f_transform_check, module_L,
                      rmatrix_action, yang_baxter)
from .scalars import FIELD, Phase, q, qint, v
from .suites import SUITES, run_suite
