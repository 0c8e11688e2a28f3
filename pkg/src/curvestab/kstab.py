"""K-stability of polarized unmarked nodal curves.

The test configurations scanned here are the two-weight degenerations
toward proper subcurves.  For such a configuration the Donaldson-Futaki
invariant has a closed form: ``(g - 1) / deg`` times the subcurve's slope
deficit (its share of the total degree by dualizing-degree proportion,
minus its actual degree, minus half its linking nodes).

K-stability itself is insensitive to replacing the polarization by a
multiple, and under that scaling the half-linking-node term becomes
negligible against the slope deficit; the scale-free obstruction is
therefore the *margin* (the deficit without the half-node term).  A
polarized curve is K-stable exactly when the polarization is numerically
proportional to the dualizing sheaf, which is equivalent to every margin
vanishing; the verdict here tests proportionality by exact integer
cross-multiplication and cross-checks it against the sign scans.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curve import (
    ENUMERATION_CAP,
    CurveModel,
    Polarization,
    Subcurve,
    arithmetic_genus,
    linking_nodes,
    omega_degree,
    subcurves,
)
from .slope import _check_polarization


@dataclass(frozen=True)
class DFEntry:
    subcurve: Subcurve
    value: Fraction      # invariant of the two-weight configuration
    margin: Fraction     # scale-free slope deficit


@dataclass(frozen=True)
class DFReport:
    verdict: str  # "KStable" | "NotKStable"
    proportional: bool
    entries: tuple[DFEntry, ...]
    witness: Optional[Subcurve] = None
    reason: Optional[str] = None


def _require_scope(curve: CurveModel) -> int:
    if curve.marks:
        raise ValueError("K-stability criterion requires an unmarked curve")
    g = arithmetic_genus(curve)
    if g < 2:
        raise ValueError("dualizing sheaf not positive")
    return g


def slope_margin(curve: CurveModel, pol: Polarization, cids) -> Fraction:
    """Scale-free slope deficit of a proper subcurve: its
    dualizing-degree share of the total degree minus its degree."""
    sub = frozenset(cids)
    ratio = omega_degree(curve, sub) / omega_degree(curve)
    return ratio * pol.total - pol.deg(sub)


def df_two_weight(curve: CurveModel, pol: Polarization, cids) -> Fraction:
    """Donaldson-Futaki invariant of the two-weight configuration
    degenerating toward a proper subcurve."""
    _check_polarization(curve, pol)
    g = _require_scope(curve)
    sub = frozenset(cids)
    if not sub or sub == curve.full_subcurve():
        raise ValueError("subcurve must be proper and nonempty")
    ell = linking_nodes(curve, sub)
    return Fraction(g - 1, pol.total) * (slope_margin(curve, pol, sub) - Fraction(ell, 2))


def is_proportional(curve: CurveModel, pol: Polarization) -> tuple[bool, Optional[str]]:
    """Exact integer test that the polarization is numerically a multiple
    of the dualizing sheaf; returns the first offending component.

    A component of dualizing degree zero can never be proportional to an
    ample degree and is reported in preference to mere ratio mismatches.
    """
    total_omega = 2 * arithmetic_genus(curve) - 2
    full = curve.full_subcurve()
    omegas = {}
    for cid in curve.component_ids:
        ell = 0 if len(full) == 1 else linking_nodes(curve, {cid})
        omegas[cid] = 2 * curve.genus_of(cid) - 2 + ell
        if omegas[cid] == 0:
            return False, cid
    for cid in curve.component_ids:
        if pol.of(cid) * total_omega != pol.total * omegas[cid]:
            return False, cid
    return True, None


def k_stable(curve: CurveModel, pol: Polarization, cap: int = ENUMERATION_CAP) -> DFReport:
    """K-stability verdict with the full two-weight scan attached.

    Proportionality decides; the invariant of every two-weight
    configuration and its scale-free margin are reported, and on failure
    the witness is the first positive-invariant subcurve if one exists,
    otherwise the first positive-margin subcurve (a subcurve whose
    invariant turns positive after scaling the polarization), otherwise
    the offending component itself.
    """
    _check_polarization(curve, pol)
    g = _require_scope(curve)
    proportional, offender = is_proportional(curve, pol)
    entries = []
    df_witness = margin_witness = None
    for sub in subcurves(curve, proper_only=True, cap=cap):
        margin = slope_margin(curve, pol, sub)
        ell = linking_nodes(curve, sub)
        value = Fraction(g - 1, pol.total) * (margin - Fraction(ell, 2))
        entries.append(DFEntry(subcurve=sub, value=value, margin=margin))
        if value > 0 and df_witness is None:
            df_witness = sub
        if margin > 0 and margin_witness is None:
            margin_witness = sub
    if proportional:
        return DFReport("KStable", True, tuple(entries))
    offender_omega = 2 * curve.genus_of(offender) - 2 + (
        0 if len(curve.full_subcurve()) == 1 else linking_nodes(curve, {offender}))
    if offender_omega == 0:
        reason = f"dualizing-degree-zero component {offender!r}"
    else:
        reason = f"component {offender!r} breaks proportionality"
    witness = df_witness or margin_witness or frozenset({offender})
    return DFReport("NotKStable", False, tuple(entries), witness=witness, reason=reason)
