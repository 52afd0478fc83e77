"""Homological invariants of graded monomial algebras: annihilator chains,
Betti tables, K2 certification, Yoneda algebras and bar-complex Tor."""

__version__ = "0.1.0"

from .algebra import GradedAlgebraData, parse_algebra, export_algebra, monomial_algebra
from .bar import BarComplex, BarTensor, k2_low_degree_test, tor_dimensions
from .chains import Chain, betti_table, check_k2, classify, enumerate_chains, min_left_annihilators
from .linalg import Field
from .presentation import MonomialPresentation, hilbert_coefficients, normal_words, parse_presentation
from .yoneda import build_ext_algebra, ext_hilbert

__all__ = [
    "BarComplex",
    "BarTensor",
    "Chain",
    "Field",
    "GradedAlgebraData",
    "MonomialPresentation",
    "betti_table",
    "build_ext_algebra",
    "check_k2",
    "classify",
    "enumerate_chains",
    "export_algebra",
    "ext_hilbert",
    "hilbert_coefficients",
    "k2_low_degree_test",
    "min_left_annihilators",
    "monomial_algebra",
    "normal_words",
    "parse_algebra",
    "parse_presentation",
    "tor_dimensions",
]
