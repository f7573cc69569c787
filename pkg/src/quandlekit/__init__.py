"""Finite quandles, link quandles and their decision procedures."""

from .core import (
    FiniteQuandle,
    Permutation,
    components,
    count_homs,
    dihedral_quandle,
    enumerate_homs,
    find_violations,
    homogeneous_representation,
    inner_group,
    is_abelian,
    is_n_quandle,
    isomorphic,
    subquandle_closure,
    symmetry,
    trivial_quandle,
    validate,
)
from .errors import QuandleError
from .links import fundamental_n_quandle, fundamental_quandle, parse_link, parse_pd, peripheral_data
from .presentations import parse_presentation
from .realize import realize_n_quandle
from .toddcoxeter import todd_coxeter

__version__ = "0.1.0"
