"""Degree class groups and polarization twisting.

Moving a polarization by vertical divisors changes its degree vector by
integer combinations of the linking-matrix rows; the quotient of all
degree vectors by that lattice is the degree class group.  A degree
vector is balanced when it sits inside every subcurve's window; the
twist search walks a class until it finds a balanced representative and
certifies the move.
"""

import curvestab as cs

f2 = cs.CurveModel(
    components=(cs.Component("C1", 1), cs.Component("C2", 1)),
    nodes=(("C1", "C2"),))
banana = cs.CurveModel(
    components=(cs.Component("C1", 0), cs.Component("C2", 0)),
    nodes=(("C1", "C2"),) * 3)

for name, curve in (("two components, one node", f2), ("banana (three nodes)", banana)):
    lm = cs.linking_matrix(curve)
    group = cs.degree_class_group(curve)
    print(f"== {name}")
    print(f"   linking matrix rows {lm.rows}")
    print(f"   invariant factors {group.invariant_factors}"
          "  (0 = a free summand, k = a torsion part of order k)")

print("\n== balancing (13, 7) on the two-component curve")
rep = cs.is_balanced(f2, {"C1": 13, "C2": 7})
print(f"   balanced: {rep.ok}")
for failure in rep.failures:
    kind, sub, value, lo, hi = failure
    print(f"   {sorted(sub)} carries {value}, outside [{lo}, {hi}]")
res = cs.find_twist(f2, {"C1": 13, "C2": 7})
print(f"   twist: {res.vector} via coefficients {res.coefficients}")

print("\n== a longer walk on the banana: (25, -5) has total degree 20")
res = cs.find_twist(banana, {"C1": 25, "C2": -5})
print(f"   twist: {res.vector} via coefficients {res.coefficients}")
print("   (five steps along the row (-3, 3): classes move in jumps of three)")

print("\n== classes are genuinely distinct: (11, 9) cannot reach (10, 10)")
res = cs.find_twist(banana, {"C1": 11, "C2": 9})
print(f"   twist of (11, 9): {res.vector}  (already balanced, stays put)")

print("\n== exhausted search returns None")
skinny = cs.CurveModel(
    components=(cs.Component("C1", 0), cs.Component("C2", 0)),
    nodes=(("C1", "C2"),) * 5)
out = cs.find_twist(skinny, {"C1": 7, "C2": -6})
print(f"   five-node banana, vector (7, -6) of total degree 1: {out}")
