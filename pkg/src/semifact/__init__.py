"""Factorization invariants of finitely generated reduced commutative semigroups."""
from .core import (
    AmbientSpec,
    Element,
    Factorization,
    FactorizationSet,
    SemigroupPresentation,
    contains,
    denumerant_table,
    factorizations,
    load_semigroup,
    parse_semigroup,
    validate,
)
from .errors import SemigroupError
from .invariants import (
    apery_set,
    catenary_degree,
    delta_of_element,
    delta_of_semigroup,
    distance,
    length_set,
    max_length,
    max_length_restricted,
    min_length,
    omega,
    omega_bounded,
    scan,
)
from .quasipoly import (
    QuasiPolynomial,
    TranslatedCone,
    cone_coordinates,
    cone_fit,
    fit_fixed,
    fit_search,
    qp_eval,
    ray_fit,
)

__version__ = "0.1.0"
