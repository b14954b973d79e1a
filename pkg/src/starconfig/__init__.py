"""Exact computational topology for configuration spaces of star graphs."""

from .config_complex import (
    CellularMap,
    ConfigComplex,
    EdgeState,
    Move,
    ParticleState,
    ResourceLimitError,
    StarGraph,
    SubcomplexMask,
    betti,
    build_complex,
    cover_intersection,
    cover_subcomplex,
    cycle_basis,
    ghrist_rank,
    insert_state,
    insertion_map,
    permutation_map,
    relabel_state,
)
from .fio import (
    FioMorphism,
    MorphismCount,
    act,
    compose,
    count_morphisms,
    decompose,
    elementary_insertion,
    enumerate_morphisms,
    recompose,
)
from .homology import (
    HomologyResult,
    SimplicialComplex,
    SmithForm,
    SparseIntMatrix,
    homology_of_chain,
    rank_mod_p,
    rank_z,
    smith_normal_form,
)
from .nerve import (
    CechComplex,
    NerveComplex,
    StarCoverElement,
    nerve,
    nerve_matches_cover,
    pseudo_nerve,
    star_cover,
    star_cover_nerve,
    star_intersection,
    transpose,
)
from .spectral import (
    E1Page,
    GenerationReport,
    e1_page,
    e2_01,
    e2_row0,
    generation_check,
    generation_degree_table,
    presentation_evidence,
)

__version__ = "0.1.0"

__all__ = [
    "CellularMap", "ConfigComplex", "EdgeState", "Move", "ParticleState",
    "ResourceLimitError", "StarGraph", "SubcomplexMask", "betti",
    "build_complex", "cover_intersection", "cover_subcomplex", "cycle_basis",
    "ghrist_rank", "insert_state", "insertion_map", "permutation_map",
    "relabel_state",
    "FioMorphism", "MorphismCount", "act", "compose", "count_morphisms",
    "decompose", "elementary_insertion", "enumerate_morphisms", "recompose",
    "HomologyResult", "SimplicialComplex", "SmithForm", "SparseIntMatrix",
    "homology_of_chain", "rank_mod_p", "rank_z", "smith_normal_form",
    "CechComplex", "NerveComplex", "StarCoverElement", "nerve",
    "nerve_matches_cover", "pseudo_nerve", "star_cover", "star_cover_nerve",
    "star_intersection", "transpose",
    "E1Page", "GenerationReport", "e1_page", "e2_01", "e2_row0",
    "generation_check", "generation_degree_table", "presentation_evidence",
    "__version__",
]
