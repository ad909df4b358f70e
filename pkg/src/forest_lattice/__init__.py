"""Lattices of binary leaf-labeled forests below a tree.

Enumerates the interval below a tree as admissible partitions, labels its
covers from a nice vertex order, verifies the EL, S_n EL and LL properties and
computes the characteristic polynomial by Möbius sums, levels and exponents.
"""

from .charpoly import (
    FactoredPoly,
    IntPolynomial,
    charpoly_exponents,
    charpoly_levels,
    charpoly_mobius,
    expand,
)
from .errors import (
    BoundExceededError,
    ConsistencyError,
    ForestLatticeError,
    InvalidOrderError,
    InvalidPartitionError,
    InvalidTreeError,
    NotACoverError,
    NotDominatedError,
    TreeSyntaxError,
    UnknownLabelError,
)
from .lattice import (
    CheckResult,
    LatticeModel,
    atoms,
    check_semimodular,
    enumerate_interval,
    mobius,
    to_dot,
    verify_lattice,
)
from .levels import LevelSets, check_left_modular, check_level_condition, levels
from .partitions import (
    Partition,
    gamma_of_partition,
    is_admissible,
    join_adm,
    leq_general,
    meet_adm,
    parse_partition,
    pi_of_forest,
    refines,
)
from .shelling import (
    MChain,
    chain_label,
    edge_label,
    m_chain,
    min_cover,
    verify_el_labeling,
    verify_sn_labeling,
)
from .trees import (
    Forest,
    NiceOrder,
    Tree,
    all_trees,
    canonical_nice_order,
    nice_orders,
    parse_forest,
    parse_tree,
    validate_nice_order,
)

__version__ = "0.1.0"
