"""Regenerate the example instance documents in instances/."""

from pathlib import Path

from qubomap.lucas import clique_example_graph, complete_graph, fes_example_digraph, mst_example_graph
from qubomap.problems import (
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
from qubomap.serialization import render_instance

INSTANCES = {
    "clique.json": CliqueInstance(clique_example_graph()),
    "coloring_k5.json": ColoringInstance(complete_graph(5), 2),
    "coloring_triangle.json": ColoringInstance(complete_graph(3), 3),
    "degree_mst.json": DegreeMstInstance(mst_example_graph(), 2),
    "steiner.json": SteinerInstance(mst_example_graph(), frozenset({0, 4})),
    "fvs_triangle.json": FvsInstance(complete_graph(3)),
    "fes.json": FesInstance(fes_example_digraph()),
    "bin_packing.json": BinPackingInstance((2, 2, 3), 4, 2),
    "number_partition.json": NumberPartitionInstance((1, 2, 3, 4), 2),
    "graph_partition.json": GraphPartitionInstance(complete_graph(4), 2),
    "subset_sum.json": SubsetSumInstance((1, 2, 3), 3),
    "n3dm.json": N3dmInstance((1, 2), (2, 1), (3, 3), 6),
}


def main() -> None:
    out = Path(__file__).resolve().parent.parent / "instances"
    out.mkdir(exist_ok=True)
    for name, inst in INSTANCES.items():
        (out / name).write_text(render_instance(inst))
        print(f"wrote {out / name}")


if __name__ == "__main__":
    main()
