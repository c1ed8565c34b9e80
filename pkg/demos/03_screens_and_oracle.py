"""Unsolvability screens versus exhaustive ground truth.

The screens prove unsolvability from the bare grid: isolated nodes, odd
magnitude totals, starved or overloaded nodes, incompatible neighbors. They
are sound but not complete: the last example passes every screen and still
has no solution, which only the exhaustive enumerator (or the propagation
engine's feasibility analysis) can tell.
"""

from gridlink import NumberedGrid, enumerate_solutions, node, min_solvable_k, screen

examples = [
    ("isolated nodes", NumberedGrid(1, [node(0, 0, 1), node(5, 3, 1)])),
    ("odd magnitude total", NumberedGrid(1, [node(0, 0, 1), node(1, 0, 1), node(2, 0, 1)])),
    ("pair needing three strands", NumberedGrid(2, [node(0, 0, 3), node(1, 0, 3)])),
    ("magnitude-8 node with a magnitude-1 neighbor", NumberedGrid(2, [
        node(1, 1, 8), node(1, 0, 3), node(0, 1, 2), node(2, 1, 2), node(1, 2, 1),
        node(3, 0, 2),
    ])),
    ("two pairs that can only seal themselves off", NumberedGrid(1, [
        node(0, 0, 1), node(1, 0, 1), node(5, 5, 1), node(6, 5, 1),
    ])),
]

for name, grid in examples:
    report = screen(grid)
    sols = enumerate_solutions(grid)
    print(f"{name}:")
    print(f"  screen verdict: {report.verdict.value}")
    for v in report.violations:
        where = "whole grid" if v.witness is None else f"node {v.witness}"
        print(f"    condition {v.condition} ({where}): {v.message}")
    print(f"  exhaustive solution count: {len(sols)}")
    print()

print("Raising the bound can rescue a grid: the three-strand pair becomes")
pair = NumberedGrid(2, [node(0, 0, 3), node(1, 0, 3)])
print(f"solvable once k reaches {min_solvable_k(pair, 4)}.")
