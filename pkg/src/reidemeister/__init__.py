"""Twisted conjugacy classes and Reidemeister numbers at desk scale."""
from __future__ import annotations

__version__ = "0.1.0"

from .chars import (
    character_table,
    dual_action,
    induced_trivial_character,
    isogredience_count,
    tbft_check,
    twisted_coinvariants_dimension,
    twisted_inner_character,
)
from .dynamics import gauss_congruence_check, moebius, periodic_point_accounting, reidemeister_sequence
from .group import (
    Automorphism,
    FiniteGroup,
    GroupHom,
    Subgroup,
    build_from_permutations,
    build_from_table,
    center,
    conjugacy_classes,
    enumerate_automorphisms,
    inner_automorphism,
    quotient_with_induced,
)
from .lattice import (
    INFINITY,
    IntMatrix,
    finite_quotient_reidemeister,
    fixed_dual_characters,
    heisenberg_reidemeister,
    reidemeister_number_lattice,
    separability_witness,
    smith_normal_form,
    spectrum_search,
)
from .twisted import (
    check_bounds,
    fixed_subgroup,
    landau_bound_check,
    quotient_monotonicity_check,
    reidemeister_burnside_oracle,
    reidemeister_partition,
    shift_class_check,
    twisted_stabilizer,
)

__all__ = [
    "__version__",
    "gauss_congruence_check",
    "moebius",
    "periodic_point_accounting",
    "reidemeister_sequence",
    "character_table",
    "dual_action",
    "induced_trivial_character",
    "isogredience_count",
    "tbft_check",
    "twisted_coinvariants_dimension",
    "twisted_inner_character",
    "Automorphism",
    "FiniteGroup",
    "GroupHom",
    "Subgroup",
    "build_from_permutations",
    "build_from_table",
    "center",
    "conjugacy_classes",
    "enumerate_automorphisms",
    "inner_automorphism",
    "quotient_with_induced",
    "INFINITY",
    "IntMatrix",
    "finite_quotient_reidemeister",
    "fixed_dual_characters",
    "heisenberg_reidemeister",
    "reidemeister_number_lattice",
    "separability_witness",
    "smith_normal_form",
    "spectrum_search",
    "check_bounds",
    "fixed_subgroup",
    "landau_bound_check",
    "quotient_monotonicity_check",
    "reidemeister_burnside_oracle",
    "reidemeister_partition",
    "shift_class_check",
    "twisted_stabilizer",
]
