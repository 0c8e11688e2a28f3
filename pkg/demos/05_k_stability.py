"""K-stability of polarized unmarked nodal curves.

Each proper subcurve drives a two-weight degeneration whose invariant
has a closed form; the polarized curve is K-stable exactly when the
polarization is proportional to the dualizing sheaf, and that in turn is
equivalent to every subcurve's scale-free margin vanishing.
"""

import curvestab as cs

f2 = cs.CurveModel(
    components=(cs.Component("C1", 1), cs.Component("C2", 1)),
    nodes=(("C1", "C2"),))

for degrees in ({"C1": 10, "C2": 10}, {"C1": 11, "C2": 9}):
    p = cs.Polarization(degrees)
    rep = cs.k_stable(f2, p)
    print(f"== degrees {degrees}: {rep.verdict} (proportional: {rep.proportional})")
    for entry in rep.entries:
        print(f"   toward {sorted(entry.subcurve)}: invariant {entry.value},"
              f" margin {entry.margin}")
    if rep.witness is not None:
        print(f"   witness {sorted(rep.witness)}: {rep.reason}")
    print()

print("== the invariant is a rescaling of the two-weight closed form")
p = cs.Polarization({"C1": 13, "C2": 7})
g = cs.arithmetic_genus(f2)
m1 = p.total + 1 - g
for sub in cs.subcurves(f2):
    df = cs.df_two_weight(f2, p, sub)
    closed = cs.two_weight_closed_form(f2, p, sub)
    print(f"   {sorted(sub)}: invariant {df}, closed form {closed},"
          f" ratio {df / closed if closed else 'n/a'} (always -(m+1)/(2 deg))")

print("\n== a dualizing-degree-zero component rules K-stability out")
c = cs.CurveModel(
    components=(cs.Component("C", 2), cs.Component("P", 0)),
    nodes=(("C", "P"), ("C", "P")))
rep = cs.k_stable(c, cs.Polarization({"C": 10, "P": 2}))
print(f"   verdict {rep.verdict}: {rep.reason}")
