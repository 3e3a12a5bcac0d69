"""Relations among the zeros of zeta functions of curves over finite fields.

Point counts of y^2 = f(x)(x - t) give L-polynomials; their inverse roots
are certified numerically, their splitting-field Galois groups are certified
maximal via Frobenius cycle types, and additive or multiplicative relations
among them are detected by lattice reduction and then proven or refuted
exactly.
"""

from .constructions import (assemble_from_traces, fermat_relation_system, fermat_verify_kernel, gauss_sum,
                            honda_tate_d1, honda_tate_d3)
from .errors import WeilrelError
from .galois import maximality_certificate, tuple_certificate
from .relations import (detect_additive, detect_multiplicative, independence_report, verify_additive_exact,
                        verify_multiplicative_exact)
from .weil import QSymplecticPoly, certified_roots, is_q_symplectic, rh_check
from .zeta import CurveSpec, curve_count, lpolynomial

__version__ = "0.1.0"

__all__ = [
    "CurveSpec",
    "QSymplecticPoly",
    "WeilrelError",
    "assemble_from_traces",
    "certified_roots",
    "curve_count",
    "detect_additive",
    "detect_multiplicative",
    "fermat_relation_system",
    "fermat_verify_kernel",
    "gauss_sum",
    "honda_tate_d1",
    "honda_tate_d3",
    "independence_report",
    "is_q_symplectic",
    "lpolynomial",
    "maximality_certificate",
    "rh_check",
    "tuple_certificate",
    "verify_additive_exact",
    "verify_multiplicative_exact",
]
