"""Multi-objective pyramid optimizer, baselines, benchmarks and harness."""

from .core import (
    BudgetExhausted,
    EvaluationGateway,
    ObjectiveNormalizer,
    dominates,
    make_weight_vector,
    random_genotype,
    scalarize,
)
from .engine import (
    ElitistArchive,
    MoP3,
    Pyramid,
    PyramidLevel,
    fihc,
    mo_p3_iteration,
    optimal_mix,
    random_weight_vector,
    run_mo_p3,
    smart_weight_vector,
)
from .linkage import (
    LinkageTree,
    build_dsm,
    build_linkage_tree,
    distance_matrix,
    format_linkage_tree,
    pairwise_distance,
)
from .metrics import Front, gd, igd, merge_pseudo_optimal, read_front, write_front

__version__ = "0.1.0"
