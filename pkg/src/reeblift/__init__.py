"""Cubic realizations of posets along projection towers, pre-Reeb graphs and
their augmented versions, with exhaustive checks for the weak-order deletion
towers of types A and B."""

from .errors import ReebLiftError
from .lifts import (
    build_tower,
    decompose,
    dimension_certificate,
    extend_cubic,
    extend_order_embedding,
    minimal_heights,
    uniqueness_check,
)
from .poset import (
    Digraph,
    Poset,
    boolean_lattice,
    build_poset,
    find_subposet_isomorphic,
    is_acyclic,
    is_cubic_realization,
    is_order_embedding,
    is_total_order,
    leq,
    reachability_poset,
)
from .reeb import augmented_pre_reeb, augmented_reeb_poset, classify_covers, horizontal_classes, pre_reeb, reeb_poset
from .towers import bottom_section, deletion_A, deletion_B, fiber, top_section, validate_cylindrical
from .weak import covers_A, covers_B, inv_A, inv_B, perms, signed_perms, weak_leq_by_inversions, weak_poset_A, weak_poset_B

__version__ = "0.1.0"
