"""Walk-through: finite two-operation structures and their seven axioms.

Run with:  python3 demos/01_structures_and_axioms.py
"""

from prismhom import (check_axioms, classify, conj_cyclic, conj_symmetric,
                      mul_mod_shalgebra)
from prismhom.algebra import AXIOM_EQUATIONS, AXIOM_NAMES

print("=== the conjugation qualgebra of the symmetric group on 3 letters ===")
S3 = conj_symmetric(3)
print("carrier:", ", ".join(S3.names))
print("example products:  102 . 021 =", S3.names[S3.mul(2, 1)])
print("example actions:   102 < 021 =", S3.names[S3.act(2, 1)],
      " (conjugation moves one transposition to another)")
print()
print("axiom check:")
for name in AXIOM_NAMES:
    print(f"  {name:<4} {AXIOM_EQUATIONS[name]:<42} "
          f"{'holds' if S3.report.ok(name) else 'fails'}")
print("classification:", classify(S3.dot, S3.tri))
print()

print("=== a structure that stops being a quandle ===")
# multiplication = xor, action = constant zero: idempotence breaks at a=1
report = check_axioms([[0, 1], [1, 0]], [[0, 0], [0, 0]])
for name in ("III", "II", "I", "T"):
    status = report.statuses[name]
    state = "holds" if status.ok else f"fails at {status.witness}"
    print(f"  {name:<4} {state}")
print()

print("=== a non-group example: projection action over multiplication mod 4 ===")
P = mul_mod_shalgebra(4)
print("unit:", P.unit, " group?", P.is_group, " qualgebra?", P.is_qualgebra)
print()

print("=== the twisted-commutativity implication ===")
# wherever the exponential law and twisted commutativity both hold,
# self-distributivity follows; conjugation structures illustrate it
for S in (conj_cyclic(3), S3):
    assert S.report.all_ok(("IY", "T")) and S.report.ok("III")
print("checked on the cyclic and symmetric conjugation structures")
