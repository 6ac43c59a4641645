"""Walk-through: coloring invariants of knotted trivalent graph diagrams.

Run with:  python3 demos/04_ktg_invariants.py
"""

from prismhom import (apply_move, conj_symmetric, enumerate_colorings, invariant,
                      load_fixture_diagram, move_fixture_pairs, represented_cycle)

S3 = conj_symmetric(3)

print("=== coloring counts over the six-element conjugation qualgebra ===")
for name in ("unknot", "theta", "trefoil", "handcuff_flat"):
    D = load_fixture_diagram(name)
    cols = enumerate_colorings(D, S3)
    print(f"  {name:<14} arcs={len(D.arcs)} crossings={len(D.crossings)} "
          f"colorings={len(cols)}")
print()

print("=== a colored trefoil represents a degree-2 cycle ===")
trefoil = load_fixture_diagram("trefoil")
colors = [c for c in enumerate_colorings(trefoil, S3) if len(set(c.values())) == 3][0]
print("coloring by three distinct transpositions:",
      {k: S3.names[v] for k, v in sorted(colors.items())})
z = represented_cycle(trefoil, colors, S3)
print("cycle:", " ".join(f"{cf:+d}*{g.pretty(S3.names)}" for g, cf in sorted(z.items())))
print()

print("=== the invariant is blind to diagram moves ===")
before = invariant(load_fixture_diagram("handcuff_flat"), S3)
after = invariant(load_fixture_diagram("handcuff_knotted"), S3)
print("flat handcuff:   ", before.coloring_count, "colorings")
print("knotted handcuff:", after.coloring_count, "colorings (four crossings)")
print("equal invariants:", before == after)
print()

print("=== every packaged move fixture preserves the invariant ===")
for entry in move_fixture_pairs():
    got, fwd = apply_move(entry["before"], entry["move"], entry["site"], S3)
    same = invariant(entry["before"], S3) == invariant(entry["after"], S3)
    print(f"  move {entry['move']:<3} rewrite reproduces fixture: {got == entry['after']}, "
          f"invariant preserved: {same}")
