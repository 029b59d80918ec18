"""Computational toolkit for 2-nilpotent groups and their actions."""

__version__ = "0.1.0"

from .groups import FiniteGroup, GroupHom, commutator, enumerate_group, hom, lower_central_series, nilpotency_class
from .automorphisms import aut_group, central_auts, inner_auts, lemma_check
from .actions import DerivedAction, action_from_hom, check_acting_morphism, semidirect, validate_group_action, validate_nil2_action
from .abelian import FgAbelianGroup, AbelianHom, colimit, pushout, smith_normal_form
from .freenil2 import FreeNil2Group, flat, lacc_counterexample, structure_report
from .weakrep import build_T, tau, tau_injectivity_check

__all__ = [
    "__version__",
    "FiniteGroup", "GroupHom", "commutator", "enumerate_group", "hom", "lower_central_series", "nilpotency_class",
    "aut_group", "central_auts", "inner_auts", "lemma_check",
    "DerivedAction", "action_from_hom", "check_acting_morphism", "semidirect", "validate_group_action", "validate_nil2_action",
    "FgAbelianGroup", "AbelianHom", "colimit", "pushout", "smith_normal_form",
    "FreeNil2Group", "flat", "lacc_counterexample", "structure_report",
    "build_T", "tau", "tau_injectivity_check",
]
