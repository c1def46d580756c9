"""Corrected QUBO encodings, penalty-weight rules and solution codecs."""

from __future__ import annotations

from ..problems import (
    BinPackingInstance,
    CliqueInstance,
    ColoringInstance,
    DegreeMstInstance,
    FesInstance,
    FvsInstance,
    GraphPartitionInstance,
    N3dmInstance,
    NumberPartitionInstance,
    SteinerInstance,
    SubsetSumInstance,
)
from .base import (
    EncodedModel,
    PenaltyWeights,
    canonical_encode,
    decode,
    default_weights,
    expected_energy,
    validate_weights,
)
from .feedback import build_fes, height_order
from .graphs import build_clique, build_coloring, build_graph_partition, build_two_coloring, log_size_coefficients
from .numeric import build_bin_packing, build_n3dm, build_number_partition, build_subset_sum
from .trees import build_degree_mst, build_fvs, build_steiner

BUILDERS = {
    CliqueInstance: build_clique,
    ColoringInstance: build_coloring,
    DegreeMstInstance: build_degree_mst,
    SteinerInstance: build_steiner,
    FvsInstance: build_fvs,
    FesInstance: build_fes,
    BinPackingInstance: build_bin_packing,
    NumberPartitionInstance: build_number_partition,
    GraphPartitionInstance: build_graph_partition,
    SubsetSumInstance: build_subset_sum,
    N3dmInstance: build_n3dm,
}


def build(inst, weights: PenaltyWeights | None = None, **options) -> EncodedModel:
    """Corrected model for any supported instance; ``weights=None`` picks the defaults."""
    builder = BUILDERS.get(type(inst))
    if builder is None:
        raise TypeError(f"no builder for {type(inst).__name__}")
    if builder is build_subset_sum:
        options.pop("strict", None)
        return builder(inst, **options)
    return builder(inst, weights, **options)


__all__ = [
    "BUILDERS",
    "EncodedModel",
    "PenaltyWeights",
    "build",
    "build_bin_packing",
    "build_clique",
    "build_coloring",
    "build_degree_mst",
    "build_fes",
    "build_fvs",
    "build_graph_partition",
    "build_n3dm",
    "build_number_partition",
    "build_steiner",
    "build_subset_sum",
    "build_two_coloring",
    "canonical_encode",
    "decode",
    "default_weights",
    "expected_energy",
    "height_order",
    "log_size_coefficients",
    "validate_weights",
]
