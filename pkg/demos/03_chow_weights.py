"""Chow weights of one-parameter subgroups.

The weight of the limit cycle is the degree-normalized weight sum minus
the total multiplicity read off the Newton polygons; marked points shift
it by their weights.  The two-weight construction (weight one on the
span of a subcurve, zero elsewhere) admits a closed form, and the datum
route must reproduce it exactly: the sign of that number is the slope
margin of the subcurve.
"""

from fractions import Fraction

import curvestab as cs

f2 = cs.CurveModel(
    components=(cs.Component("C1", 1), cs.Component("C2", 1)),
    nodes=(("C1", "C2"),))
f4 = cs.CurveModel(
    components=(cs.Component("C1", 1), cs.Component("P", 0)),
    nodes=(("C1", "P"),),
    sites=(cs.MarkSite("p1", "P"), cs.MarkSite("p2", "P")),
    marks=(cs.Mark("x1", "p1", Fraction(1)), cs.Mark("x2", "p2", Fraction(1))))

print("== a single point singled out by the weights (degree 12, genus 2)")
rho = tuple([1] + [0] * 10)
simple = tuple([0] * 10 + [1])
irr = cs.CurveModel(components=(cs.Component("C", 2),))
regular = cs.OnePSDatum(
    m=10, rho=rho, hbar={"C": 10},
    profiles=(cs.PointProfile(id="q0", component="C", vanish=tuple([0] + [1] * 10)),)
    + tuple(cs.PointProfile(id=f"t{j}", component="C", vanish=simple) for j in range(11)))
print("   regular point:", cs.mumford_weight(regular, irr, cs.Polarization({"C": 12})))

node_profiles = []
for cid in ("C1", "C2"):
    node_profiles.append(cs.PointProfile(
        id=f"q_{cid}", component=cid, kind="node-branch:C1~C2#0",
        vanish=tuple([0] + [1] * 10)))
    node_profiles.extend(cs.PointProfile(id=f"t{j}_{cid}", component=cid, vanish=simple)
                         for j in range(5))
node = cs.OnePSDatum(m=10, rho=rho, hbar={"C1": 10, "C2": 10}, profiles=tuple(node_profiles))
print("   node:         ", cs.mumford_weight(node, f2, cs.Polarization({"C1": 6, "C2": 6})))

print("\n== the two-weight subgroup toward each subcurve of F2 at (10, 10)")
p = cs.Polarization({"C1": 10, "C2": 10})
for sub in cs.subcurves(f2):
    datum = cs.two_weight_datum(f2, p, sub)
    rep = cs.chow_report(datum, f2, p)
    closed = cs.two_weight_closed_form(f2, p, sub)
    print(f"   toward {sorted(sub)}: weight {rep.total} (closed form {closed},"
          f" multiplicity {rep.multiplicity})")

print("\n== the marked fixture at its boundary polarization (11, 9)")
p49 = cs.Polarization({"C1": 11, "P": 9})
datum = cs.two_weight_datum(f4, p49, {"P"})
rep = cs.chow_report(datum, f4, p49)
print(f"   cycle part {rep.omega}, mark part {rep.mu}, total {rep.total}: the boundary")

print("\n== the linear surrogate built from the component bounds")
plain, weighted = cs.chow_weight_lower_bound(datum, f4, p49)
print(f"   surrogate {weighted} equals the true weight on two-weight data")
shifted = cs.shifted_weights(datum)
print(f"   shifted weights sum to {sum(shifted.values)}"
      f" ({len(shifted.unassigned)} indices defaulted)")

print("\n== the printed window estimate is logged against the exact area")
for profile in datum.profiles[:3]:
    h = datum.hbar[profile.component]
    tb = cs.trapezoid_bound(profile, datum.rho, h, 0, h)
    flag = "holds" if tb.ok else "exceeded"
    print(f"   {profile.id}: estimate {tb.rhs}, exact {tb.exact} ({flag})")
