"""Newton polygons and the lattice-count oracle.

A finite set of lattice points (vanishing order, weight) spans an
upper-right region; the polygon is what is left of the strip below it.
Twice its area is a local multiplicity.  The area is computed twice and
the two routes must agree: once by the shoelace formula on the envelope
vertices, once through the quadratic growth of lattice-point counts in
dilates of the polygon.
"""

import curvestab as cs

examples = [
    ("unit step", cs.GammaSet(points=((0, 1), (1, 0)), width=1)),
    ("three points", cs.GammaSet(points=((0, 2), (1, 1), (3, 0)), width=3)),
    ("steep drop", cs.GammaSet(points=((0, 3), (1, 1), (2, 0)), width=2)),
    ("origin present", cs.GammaSet(points=((0, 0), (2, 2)), width=4)),
]

for name, gamma in examples:
    poly = cs.polygon_from_points(gamma)
    print(f"== {name}: points {gamma.points}, width {gamma.width}")
    print(f"   vertices {[(str(x), str(y)) for x, y in poly.vertices]}")
    print(f"   area {poly.area}")
    counts = [cs.lattice_count_oracle(gamma, k) for k in range(gamma.width, gamma.width + 5)]
    diffs = [counts[i + 2] - 2 * counts[i + 1] + counts[i] for i in range(len(counts) - 2)]
    print(f"   dilate counts {counts}, second differences {diffs} (= twice the area)")
    print()

print("== per-point multiplicities from vanishing-order profiles")
smooth = cs.PointProfile(id="q", component="C", vanish=(0, 1))
print(f"   smooth point with a simple drop: {cs.point_multiplicity(smooth, (1, 0), 1)}")
print("   a node contributes this through both branches:",
      sum(cs.point_multiplicity(cs.PointProfile(id=f'q{i}', component='C', vanish=(0, 1)),
                                (1, 0), 1) for i in range(2)))
flat = cs.PointProfile(id="f", component="C", vanish=(5, 5, 5))
print("   constant profile of width 5 under weight 2 (a pure rectangle):",
      cs.point_multiplicity(flat, (2, 2, 2, 0), 2))
