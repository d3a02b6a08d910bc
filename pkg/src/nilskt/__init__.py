"""Strong Kahler-with-torsion geometry on 6-dimensional nilpotent Lie algebras.

Exact (Gaussian-rational) or floating-point exterior calculus on invariant
forms, Hermitian and SKT tests, the five-parameter family of complex
structures and its real classification, the Iwasawa moduli, and invariant
curvature.
"""
from .complex_structures import ComplexStructure, RealLieAlgebra
from .forms import Coframe, Form, apply_J, box, conjugate, exterior_d, wedge
from .hermitian import HermitianForm, lee_form, skt_status
from .scalars import GaussianRational, I
from .skt_family import SktParams, build_family, classify_real, skt2_residual

__version__ = "0.1.0"

__all__ = [
    "Coframe", "Form", "wedge", "exterior_d", "conjugate", "apply_J", "box",
    "RealLieAlgebra", "ComplexStructure", "HermitianForm", "skt_status", "lee_form",
    "SktParams", "build_family", "skt2_residual", "classify_real", "GaussianRational", "I",
]
