"""Array model - effective Hamiltonian, collective modes, degenerate reduction."""

from arrayeit.model.array import ArrayConfig, build_effective_hamiltonian
from arrayeit.model.collective import (
    CollectiveDecomposition,
    collective_transform,
    coupling_strengths,
    decompose,
    decompose_reduced,
    secular_roots,
)
from arrayeit.model.degenerate import DegenerateReduction, cluster_frequencies, merge_emitters, reduce_degenerate
from arrayeit.model.multilevel import (
    MultiLevelModel,
    build_multilevel_hamiltonian,
    map_to_multilevel,
    mapping_residual,
    spectrum_mismatch,
)

__all__ = [
    "ArrayConfig",
    "build_effective_hamiltonian",
    "CollectiveDecomposition",
    "collective_transform",
    "coupling_strengths",
    "decompose",
    "decompose_reduced",
    "secular_roots",
    "DegenerateReduction",
    "cluster_frequencies",
    "reduce_degenerate",
    "merge_emitters",
    "MultiLevelModel",
    "build_multilevel_hamiltonian",
    "map_to_multilevel",
    "mapping_residual",
    "spectrum_mismatch",
]
