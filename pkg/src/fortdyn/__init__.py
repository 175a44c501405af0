"""Orbit closures, heights and indicator sequences of finite and Fort transformation semigroups."""

from fortdyn.constructors import (
    enumerate_step_sequences,
    realize_finite_height_perm,
    realize_group_sequence,
    realize_selfmap_sequence,
    reduce_to_finite,
    valid_step_sequence,
)
from fortdyn.core_action import (
    FiniteDynSystem,
    Kind,
    all_orbit_closures,
    height_via_chains,
    height_via_closures,
    invariant_subsets,
    orbit,
    validate_system,
)
from fortdyn.indicator import (
    ClosurePoset,
    IndicatorSequence,
    classify_group_topology,
    closure_poset,
    enumerate_opens,
    find_isomorphism,
    indicator_sequence,
    make_group_canonical_space,
    poset_from_covers,
    poset_isomorphic,
)
from fortdyn.symbolic_fort import (
    B,
    ClosureSet,
    Fixed,
    Line,
    LinePoint,
    SymbolicFortSystem,
    closure_contains,
    symbolic_all_closures,
    symbolic_orbit_closure,
)

__version__ = "0.1.0"
