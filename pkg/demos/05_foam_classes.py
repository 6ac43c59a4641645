"""Walk-through: degree-3 classes of foam chain presentations.

A closed colored 2-foam is presented by its list of generalized crossings,
each one of the four degree-3 prism shapes with a sign.  Classes live in
the degree-3 homology of the normalized extended complex, where chains
with adjacent equal cube directions are collapsed.

Run with:  python3 demos/05_foam_classes.py
"""

from prismhom import build_complex, conj_cyclic, foam_invariant

Z3 = conj_cyclic(3)

print("=== the normalized extended complex over three elements ===")
K = build_complex(Z3, 4, mode="normalized")
print("generator counts, degrees 1..4:",
      [K.generator_count(n) for n in range(1, 5)])
print("degree-3 homology:", K.homology(3))
if K.warnings:
    unresolved = [w for w in K.warnings if w["reason"] != "not_a_group"]
    print(f"twist cells without a resolvable boundary: {len(unresolved)} "
          "(documented, omitted)")
print()

print("=== basic classes ===")
print("empty presentation: ", foam_invariant([], Z3))
pair = [(1, (1, 1, 1), (0, 1, 2)), (-1, (1, 1, 1), (0, 1, 2))]
print("cancelling pair:    ", foam_invariant(pair, Z3))
a, b, c = 1, 2, 0
bounding = [(1, (1, 1, 1), (a, b, c)),
            (1, (1, 2), (a, c, Z3.act(b, c))),
            (-1, (1, 2), (a, b, c))]
print("twist-cell boundary:", foam_invariant(bounding, Z3))
print()

print("=== a presentation with a nonzero class ===")
# a single seam crossing (0,1)|0: its boundary collapses into the quotient,
# and its class generates torsion in degree 3
single = [(1, (2, 1), (0, 1, 0))]
coords = foam_invariant(single, Z3)
print("single seam crossing (0,1)|0:", coords, "nonzero:", any(coords))
print()

print("=== shifting by a twist-cell boundary never moves the class ===")
base = foam_invariant(single, Z3)
shifted = foam_invariant(single + bounding, Z3)
print("equal classes:", base == shifted)
