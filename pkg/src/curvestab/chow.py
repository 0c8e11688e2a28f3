"""Chow weights of one-parameter subgroups acting on an embedded curve.

A diagonalized one-parameter subgroup is described combinatorially: the
top index of the projective space, the non-increasing integer weights
(last one zero), each component's top nonvanishing section index, the
vanishing-order profiles at the support points on the normalization, and
for each marked point the largest index whose section does not vanish
there.

The weight of the limit cycle is the classical multiplicity formula:
``2 deg / (m+1)`` times the weight sum, minus the total Hilbert-Samuel
multiplicity read off the Newton polygons.  Marked points contribute the
weight-sum average minus the weight at their top nonvanishing index; a
mark without a recorded index is in generic position and contributes only
the average.

The two-weight construction realizes the subgroup that degenerates the
curve toward a chosen proper subcurve: weight one on the span of the
subcurve, weight zero on a complement.  Its total multiplicity is twice
the subcurve degree plus its linking nodes, and its full weight has the
exact closed form used by the slope criterion, which is recomputed here
independently so the two routes can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .curve import (
    CurveModel,
    Polarization,
    Subcurve,
    arithmetic_genus,
    linking_nodes,
)
from .newton import PointProfile, total_multiplicity
from .slope import _check_polarization


@dataclass(frozen=True)
class OnePSDatum:
    """Combinatorial data of a diagonalized one-parameter subgroup."""

    m: int
    rho: tuple[int, ...]
    hbar: dict[str, int]
    profiles: tuple[PointProfile, ...] = ()
    imax: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(int(v) for v in self.rho))
        object.__setattr__(self, "hbar", {k: int(v) for k, v in self.hbar.items()})
        object.__setattr__(self, "profiles", tuple(self.profiles))
        object.__setattr__(self, "imax", {k: int(v) for k, v in self.imax.items()})

    @property
    def weight_sum(self) -> int:
        return sum(self.rho)


@dataclass(frozen=True)
class ChowWeights:
    omega: Fraction       # cycle part
    mu: Fraction          # marked-point part
    total: Fraction       # omega + mu
    multiplicity: Fraction


def validate_datum(
    datum: OnePSDatum,
    curve: Optional[CurveModel] = None,
    pol: Optional[Polarization] = None,
) -> list[str]:
    """All consistency problems of a datum, empty when sound.

    With a curve the component and mark references are checked; with a
    polarization the per-component profile widths must sum to the
    component degree (each section cuts the component in its degree)."""
    problems = []
    if len(datum.rho) != datum.m + 1:
        problems.append(f"rho has {len(datum.rho)} entries, expected m+1 = {datum.m + 1}")
    if any(datum.rho[i] < datum.rho[i + 1] for i in range(len(datum.rho) - 1)):
        problems.append("rho not sorted")
    if datum.rho and datum.rho[-1] != 0:
        problems.append("rho not normalized: last weight must be 0")
    for cid, h in datum.hbar.items():
        if not (0 <= h <= datum.m):
            problems.append(f"top index {h} of component {cid!r} out of range")
    known_marks = set()
    if curve is not None:
        for cid in curve.component_ids:
            if cid not in datum.hbar:
                problems.append(f"component {cid!r} missing from hbar")
        known_marks = {m.id for m in curve.marks}
    for p in datum.profiles:
        if p.component not in datum.hbar:
            problems.append(f"profile {p.id!r} on component {p.component!r} without top index")
            continue
        h = datum.hbar[p.component]
        if len(p.vanish) != h + 1:
            problems.append(
                f"profile {p.id!r}: vanish list has {len(p.vanish)} entries, expected {h + 1}")
        if any(v < 0 for v in p.vanish):
            problems.append(f"profile {p.id!r}: negative vanishing order")
    for mid, i in datum.imax.items():
        if curve is not None and mid not in known_marks:
            problems.append(f"imax names unknown mark {mid!r}")
        if not (0 <= i <= datum.m):
            problems.append(f"imax of mark {mid!r} out of range")
        elif curve is not None and mid in known_marks:
            cid = curve.mark_component(next(m for m in curve.marks if m.id == mid))
            if cid in datum.hbar and i > datum.hbar[cid]:
                problems.append(f"imax of mark {mid!r} exceeds its component's top index")
    if pol is not None and curve is not None and not problems:
        per = {cid: 0 for cid in curve.component_ids}
        for p in datum.profiles:
            per[p.component] += p.width
        for cid, total in per.items():
            if total != pol.of(cid):
                problems.append(
                    f"component {cid!r}: profile widths sum to {total}, degree is {pol.of(cid)}")
    return problems


def _require_valid(datum, curve=None, pol=None):
    problems = validate_datum(datum, curve, pol)
    if problems:
        raise ValueError("inconsistent datum: " + "; ".join(problems))


# ---------------------------------------------------------------------------
# the weights


def mumford_weight(datum: OnePSDatum, curve: CurveModel, pol: Polarization) -> Fraction:
    """Weight of the limit cycle: degree-normalized weight sum minus the
    total multiplicity of the subgroup's ideal."""
    _check_polarization(curve, pol)
    _require_valid(datum, curve, pol)
    return Fraction(2 * pol.total, datum.m + 1) * datum.weight_sum - total_multiplicity(datum)


def marked_weight(datum: OnePSDatum, curve: CurveModel, require_imax: bool = False) -> Fraction:
    """Weight contributed by the marked points.

    Each mark adds its weight times (average weight minus the weight at
    its top nonvanishing index).  Marks without a recorded index default
    to the last index, i.e. weight zero, which is the generic position;
    pass ``require_imax`` to treat a missing entry as an error instead.
    """
    _require_valid(datum)
    avg = Fraction(datum.weight_sum, datum.m + 1)
    total = Fraction(0)
    for mark in curve.marks:
        if mark.id in datum.imax:
            idx = datum.imax[mark.id]
        elif require_imax:
            raise ValueError(f"missing imax for mark {mark.id!r}")
        else:
            idx = datum.m
        total += mark.weight * (avg - datum.rho[idx])
    return total


def chow_weight(datum: OnePSDatum, curve: CurveModel, pol: Polarization) -> Fraction:
    """Full weight: cycle part plus marked-point part."""
    return mumford_weight(datum, curve, pol) + marked_weight(datum, curve)


def chow_report(datum: OnePSDatum, curve: CurveModel, pol: Polarization) -> ChowWeights:
    omega = mumford_weight(datum, curve, pol)
    mu = marked_weight(datum, curve)
    return ChowWeights(omega=omega, mu=mu, total=omega + mu,
                       multiplicity=total_multiplicity(datum))


# ---------------------------------------------------------------------------
# the two-weight construction


def _two_weight_shape(curve: CurveModel, pol: Polarization, cids) -> tuple[Subcurve, int, int]:
    """Span dimensions of the two-weight construction, after checking it
    is realizable: the subcurve proper, both spans positive, at least one
    zero weight left over, and every outside component of degree at least
    its share of the linking nodes."""
    sub = frozenset(cids)
    if not sub or sub == curve.full_subcurve():
        raise ValueError("subcurve must be proper and nonempty")
    g = arithmetic_genus(curve)
    g_sub = arithmetic_genus(curve, sub)
    m = pol.total - g            # m + 1 = deg + 1 - g
    m0 = pol.deg(sub) - g_sub    # m0 + 1 = deg_Y + 1 - g_Y
    feasible = m0 >= 0 and m - m0 >= 1
    if feasible:
        for cid in curve.component_ids:
            if cid in sub:
                continue
            nodes_here = sum(1 for a, b in curve.nodes
                             if (a in sub) != (b in sub) and cid in (a, b))
            if pol.of(cid) < nodes_here:
                feasible = False
                break
    if not feasible:
        raise ValueError("degree too small for the two-weight construction")
    return sub, m, m0


def two_weight_datum(curve: CurveModel, pol: Polarization, cids) -> OnePSDatum:
    """Subgroup acting with weight one on the span of a proper subcurve
    and weight zero on a complement.

    Components inside the subcurve are compressed into one constant
    profile carrying the whole rectangle term; each linking node
    contributes the unit-triangle profile on its outside branch; outside
    components are padded with generic simple zeros so that profile widths
    add up to component degrees.  Total multiplicity comes out exactly as
    twice the subcurve degree plus its linking nodes.
    """
    _check_polarization(curve, pol)
    sub, m, m0 = _two_weight_shape(curve, pol, cids)
    rho = tuple([1] * (m0 + 1) + [0] * (m - m0))
    hbar = {cid: (m0 if cid in sub else m) for cid in curve.component_ids}

    inside_vanish: dict[int, tuple[int, ...]] = {}
    profiles: list[PointProfile] = []
    for cid in sorted(sub):
        d_a = pol.of(cid)
        if d_a not in inside_vanish:
            inside_vanish[d_a] = tuple([d_a] * (m0 + 1))
        profiles.append(PointProfile(
            id=f"span_{cid}", component=cid, kind="smooth",
            vanish=inside_vanish[d_a]))

    branch_vanish = tuple([0] * (m0 + 1) + [1] * (m - m0))  # unit triangle
    fill_vanish = tuple([0] * m + [1])                       # generic simple zero
    outside_widths = {cid: 0 for cid in curve.component_ids if cid not in sub}
    link_idx = 0
    for a, b in curve.nodes:
        if (a in sub) == (b in sub):
            continue
        outside = b if a in sub else a
        profiles.append(PointProfile(
            id=f"link{link_idx}_{outside}", component=outside,
            kind=f"node-branch:{a}~{b}#{link_idx}", vanish=branch_vanish))
        outside_widths[outside] += 1
        link_idx += 1
    for cid in sorted(outside_widths):
        for j in range(pol.of(cid) - outside_widths[cid]):
            profiles.append(PointProfile(
                id=f"fill{j}_{cid}", component=cid, kind="smooth", vanish=fill_vanish))

    imax = {}
    for mark in curve.marks:
        imax[mark.id] = m0 if curve.mark_component(mark) in sub else m
    return OnePSDatum(m=m, rho=rho, hbar=hbar, profiles=tuple(profiles), imax=imax)


def two_weight_closed_form(curve: CurveModel, pol: Polarization, cids) -> Fraction:
    """Exact full weight of the two-weight subgroup, computed without any
    polygon machinery: twice the span dimension times the slope gap
    between the whole curve and the subcurve."""
    _check_polarization(curve, pol)
    sub, m, m0 = _two_weight_shape(curve, pol, cids)
    m1 = m + 1
    m01 = m0 + 1
    half_all = curve.total_weight() / 2
    half_here = sum((mk.weight for mk in curve.marks_on(sub)), Fraction(0)) / 2
    ell = linking_nodes(curve, sub)
    return 2 * m01 * (
        (pol.total + half_all) / m1
        - (pol.deg(sub) + Fraction(ell, 2) + half_here) / m01
    )
