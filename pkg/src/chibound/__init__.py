"""Tools around the χ ≤ 2ω bound for (P3∪P2, house)-free graphs."""

from chibound.colorer import ProofTrace, bounded_coloring, reduce_dominated
from chibound.decomposition import (
    AuditReport,
    NSPartition,
    check_unconditional,
    counterexample_audit,
    good_subgraph_check,
    partition_by_anchor,
)
from chibound.generators import ClassSpec, named_graph, random_class_member, tightness_family
from chibound.graph import (
    Graph,
    complement,
    disjoint_union,
    expansion,
    induced_subgraph,
    join,
    mycielski,
    neighborhood,
)
from chibound.invariants import (
    BudgetExceeded,
    Coloring,
    SolveBudget,
    chromatic_number,
    clique_number,
    greedy_coloring,
    independence_number,
    is_perfect_small,
    is_proper_coloring,
)
from chibound.patterns import Anchor2K2, Embedding, PatternSpec, find_all_2k2, find_induced, is_free, pattern

__version__ = "0.1.0"
