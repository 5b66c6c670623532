"""Finite real spectral triples: KO-dimension signs, products, real structures
and inner fluctuations."""

from .algebra import (AlgebraFactor, Field, Representation, StructuredAlgebra, center_basis,
                      defining_representation, diagonal_center, scalar_representation,
                      standard_basis, tensor_representations)
from .catalog import (base_triple, matrix_triple, one_point, search_real_structure,
                      two_point)
from .fluctuation import (OneForm, finite_fluct_components, fluctuate, j_compatible_split,
                          one_form, spectral_action)
from .io import load_triple, save_triple
from .ko import EXTENDED_KO_TABLE, KO_TABLE, KOLabel, SignTriple, parse_label, sign_table
from .linalg import (DEFAULT_TOL, Antiunitary, Tolerance, antiunitary_square,
                     conjugate_by_antiunitary, eigenvalues_hermitian, is_hermitian, tensor)
from .product import alt_even_even_dirac, j_beta, product, toggle
from .triple import (AxiomReport, RealSpectralTriple, infer_ko, j_fixed_subalgebra,
                     opposite_action, verify)

__version__ = "0.1.0"

__all__ = [
    "AlgebraFactor", "Field", "Representation", "StructuredAlgebra", "center_basis",
    "defining_representation", "diagonal_center", "scalar_representation", "standard_basis",
    "tensor_representations",
    "base_triple", "matrix_triple", "one_point", "search_real_structure", "two_point",
    "OneForm", "finite_fluct_components", "fluctuate", "j_compatible_split", "one_form",
    "spectral_action",
    "load_triple", "save_triple",
    "EXTENDED_KO_TABLE", "KO_TABLE", "KOLabel", "SignTriple", "parse_label", "sign_table",
    "DEFAULT_TOL", "Antiunitary", "Tolerance", "antiunitary_square", "conjugate_by_antiunitary",
    "eigenvalues_hermitian", "is_hermitian", "tensor",
    "alt_even_even_dirac", "j_beta", "product", "toggle",
    "AxiomReport", "RealSpectralTriple", "infer_ko", "j_fixed_subalgebra", "opposite_action",
    "verify",
]
