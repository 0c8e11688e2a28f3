"""Slope stability walkthrough.

Two reference configurations:

* F2 - two genus-one components joined at a node (genus 2, no marks);
* F4 - a genus-one component joined to a line carrying two weight-one
  marked points (genus 1, total weight 2).

For each proper subcurve the polarization degree must land inside a
window built from the weighted dualizing degrees: strictly inside for
every subcurve means Stable, touching an endpoint somewhere means
StrictlySemistable, outside anywhere means Unstable.
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

print("== the degree windows of F2 at total degree 20")
p = cs.Polarization({"C1": 10, "C2": 10})
for sub in cs.subcurves(f2):
    w = cs.extremes(f2, p, sub)
    print(f"   {sorted(sub)}: degree must lie in [{w.lower}, {w.upper}]")

print("\n== verdicts as the degree vector moves")
for degrees in ({"C1": 10, "C2": 10}, {"C1": 11, "C2": 9}, {"C1": 13, "C2": 7}):
    verdict = cs.slope_check_interval(f2, cs.Polarization(degrees))
    line = f"   d = {degrees}: {verdict.status}"
    if verdict.witnesses:
        w = verdict.witnesses[0]
        line += f"   (first witness {sorted(w.subcurve)}: {w.value} vs [{w.lower}, {w.upper}])"
    print(line)

print("\n== the marked fixture sits exactly on the boundary at (11, 9)")
p49 = cs.Polarization({"C1": 11, "P": 9})
verdict = cs.slope_check_interval(f4, p49)
print(f"   status: {verdict.status}")
for w in verdict.witnesses:
    print(f"   {sorted(w.subcurve)} {w.kind} the {w.side} bound at {w.value}")

print("\n== the section-count form of the same test agrees window by window")
report = cs.equivalence_report(f4, p49)
print(f"   regime: {report.regime}; disagreements: {len(report.disagreements)}")
print(f"   interval verdict {report.interval_status}, section-count verdict {report.h0_status}")

print("\n== boundary orbits: who attains the lower bound, and through what")
rep = cs.is_extremal(f4, p49)
print(f"   extremal: {rep.extremal}")
for sub, nodes in rep.witnesses:
    print(f"   {sorted(sub)} attains its lower bound but links through {nodes},"
          " none of which is a degree-one line")

print("\n== intrinsic classification and stabilization")
chain = cs.CurveModel(
    components=(cs.Component("C1", 1), cs.Component("E", 0), cs.Component("C2", 1)),
    nodes=(("C1", "E"), ("E", "C2")))
cls = cs.classify_weighted(chain)
print(f"   bridge curve classifies {cls.status} with exceptional components {list(cls.exceptional)}")
st = cs.stabilize(chain)
print(f"   after contraction: components {list(st.component_ids)}, nodes {list(st.nodes)},"
      f" genus {cs.arithmetic_genus(st)} (unchanged)")
