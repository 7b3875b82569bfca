"""Bowtie-graph machinery for monochromatic ((r-2)k+3, k)-configurations
in coloured complete linear r-graphs."""

from .bowtie import BowtieGraph, build_bowtie_graph, check_bowtie_invariants, classify_b_triangles, triangle_to_c3
from .colouring import Colouring, class_stats, colour, goodman_check, select_class
from .components import Anchor, ComponentReport, components, select_anchor
from .extraction import (
    ExtractionState,
    inductive_check,
    induction_step,
    nice_count_check,
    pathwalk_extract,
    run_induction,
)
from .generators import (
    GeneratorSpec,
    affine_plane,
    bose_sts,
    fano,
    generate,
    projective_plane,
    random_partial,
    skolem_sts,
    validate_complete,
)
from .hypergraph import Configuration, LinearRGraph, build, classify_triple, is_complete, span
from .oracle import OracleQuery, oracle_search, verify_configuration

__version__ = "0.1.0"

__all__ = [
    "Anchor",
    "BowtieGraph",
    "Colouring",
    "ComponentReport",
    "Configuration",
    "ExtractionState",
    "GeneratorSpec",
    "LinearRGraph",
    "OracleQuery",
    "affine_plane",
    "bose_sts",
    "build",
    "build_bowtie_graph",
    "check_bowtie_invariants",
    "class_stats",
    "classify_b_triangles",
    "classify_triple",
    "colour",
    "components",
    "generate",
    "fano",
    "goodman_check",
    "induction_step",
    "inductive_check",
    "is_complete",
    "nice_count_check",
    "oracle_search",
    "pathwalk_extract",
    "projective_plane",
    "random_partial",
    "run_induction",
    "select_anchor",
    "select_class",
    "skolem_sts",
    "span",
    "triangle_to_c3",
    "validate_complete",
    "verify_configuration",
]
