"""Feasible configurations and guaranteed connections, step by step.

Walks the tutorial grid: the corner node has exactly one feasible
configuration, so all of it is guaranteed; applying it leaves the
magnitude-5 center node with four feasible configurations that still agree
on one top and one right connection.
"""

from pathlib import Path

from gridlink import (
    Coordinate,
    PuzzleState,
    apply_builder,
    enumerate_feasible,
    enumerate_phi_k,
    omega_star,
    parse_puzzle,
    render_board,
)

grid = parse_puzzle((Path(__file__).parent.parent / "fixtures" / "tutorial.puzzle").read_text())
state = PuzzleState.empty(grid)
print(render_board(state))

p = grid.node_at(Coordinate(0, 0))
print(f"corner node at {p.coord}, magnitude {p.magnitude}:")
print("  all configurations:     ", " ".join(w.digits() for w in enumerate_phi_k(2, grid.k)))
feasible = enumerate_feasible(state, p)
print("  feasible ones here:     ", " ".join(w.digits() for w in feasible))
print("  guaranteed connections: ", omega_star(state, p))
print()
print("Only one configuration survives: one connection up, one right.")
print("Configurations that point at missing neighbors die on capacity;")
print("doubling up on either neighbor would complete a region and cut it off.")
print()

state = apply_builder(state, p, omega_star(state, p))
print(render_board(state))

q = grid.node_at(Coordinate(2, 1))
feasible = enumerate_feasible(state, q)
print(f"center node at {q.coord}, residual {state.residual(q)}:")
print(f"  {len(enumerate_phi_k(state.residual(q), grid.k))} configurations a priori,"
      f" {len(feasible)} feasible: {' '.join(w.digits() for w in feasible)}")
print(f"  all of them still share: {omega_star(state, q)}")
print()
print("So one top and one right connection at the center node appear in")
print("every completion, even though its configuration is far from decided.")
