"""Behrend-function evaluation and the constancy falsifier.

The value at a point is the Euler obstruction of the signed support cycle
of the normal cone.  The falsifier checks, component by component, the
necessary conditions a constant Behrend function imposes: generic
reducedness, a reduced dominating cone, tangent dimension matching the
component dimension, and a single dimension parity across components.
Violations are certificates of non-constancy; anything resting on an
uncertified prime is reported as inconclusive rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cones import cone_components
from .errors import PointNotOnVarietyError, PrimalityUndecidedError
from .euler import eu_point
from .ideals import (
    IdealPresentation,
    PrimeComponent,
    contains_ideal,
    dimension,
    generic_tangent_dimension,
    intersect,
    is_point_on,
    minimal_primes,
)
from .poly import Polynomial


@dataclass(frozen=True)
class BehrendEvaluation:
    point: tuple
    value: int
    breakdown: tuple   # (ConeComponent, eu_value, signed contribution)
    dominant_total: int
    contracted_total: int

    def to_json_dict(self) -> dict:
        return {
            "point": [str(c) for c in self.point],
            "value": self.value,
            "split": {"dominant": self.dominant_total,
                      "contracted": self.contracted_total},
            "contributions": [{
                "component": comp.to_json_dict(),
                "eu": eu,
                "signed": signed,
            } for comp, eu, signed in self.breakdown],
        }


def behrend_value(J: IdealPresentation, point, seed: int = 0) -> BehrendEvaluation:
    """Behrend value at a rational point of V(J).

    Sums (-1)^(dim image) * multiplicity * Eu(image)(point) over the cone
    components whose image contains the point, and records the split into
    dominating and contracted contributions.
    """
    point = tuple(J.ring.coeff(c) for c in point)
    if not is_point_on(J, point):
        raise PointNotOnVarietyError("Behrend value requested off the scheme")
    breakdown = []
    total = dom = con = 0
    for comp in cone_components(J):
        if not is_point_on(comp.image, point):
            continue
        if comp.primality != "certified":
            raise PrimalityUndecidedError(
                "a contributing cone component has uncertified primality")
        verdict = eu_point(comp.image, point, primality="certified", seed=seed)
        signed = (-1) ** comp.image_dimension * comp.multiplicity * verdict.value
        breakdown.append((comp, verdict.value, signed))
        total += signed
        if comp.dominates:
            dom += signed
        else:
            con += signed
    return BehrendEvaluation(point, total, tuple(breakdown), dom, con)


def component_open_set_guard(J: IdealPresentation, Z) -> IdealPresentation:
    """Ideal cutting out the union of the components other than Z.

    A point lies in the open set "away from the other components" exactly
    when some generator of the guard is nonzero there.  With a single
    component the guard is the unit ideal (the open set is everything).
    """
    Z = Z.prime if isinstance(Z, PrimeComponent) else Z
    others = [c.prime for c in minimal_primes(J)
              if c.prime.signature() != Z.signature()]
    if not contains_ideal(Z, J):
        raise ValueError("Z is not a component of the ideal")
    guard = None
    for other in others:
        guard = other if guard is None else intersect(guard, other)
    if guard is None:
        return IdealPresentation(J.ring, (Polynomial.one(J.ring),))
    return guard


def dominating_cone_multiplicity(J: IdealPresentation, Z) -> int:
    """Total multiplicity of the cone components of Z that dominate Z.

    Z is taken with its reduced structure: the cone is computed from the
    component's own prime, not from J.
    """
    Z = Z.prime if isinstance(Z, PrimeComponent) else Z
    if not contains_ideal(Z, J):
        raise ValueError("Z is not a component of the ideal")
    m = 0
    undecided = False
    for comp in cone_components(Z):
        if comp.dominates:
            if comp.primality != "certified":
                undecided = True
            m += comp.multiplicity
    if undecided:
        raise PrimalityUndecidedError(
            "dominating cone component with uncertified primality")
    if m < 1:
        raise ArithmeticError("no dominating cone component found")
    return m


@dataclass(frozen=True)
class ComponentReport:
    component: PrimeComponent
    generically_reduced: bool
    dim_Z: int
    generic_tangent_dim: int
    sign_dim: int
    sign_tangent: int
    dominating_cone_mult: int
    verdict: str        # "pass" or "violation"
    reasons: tuple

    def to_json_dict(self) -> dict:
        return {
            "component": self.component.to_json_dict(),
            "generically_reduced": self.generically_reduced,
            "dim_Z": self.dim_Z,
            "generic_tangent_dim": self.generic_tangent_dim,
            "sign_dim": self.sign_dim,
            "sign_tangent": self.sign_tangent,
            "dominating_cone_mult": self.dominating_cone_mult,
            "verdict": self.verdict,
            "reasons": list(self.reasons),
        }


@dataclass(frozen=True)
class ConstancyCertificate:
    sign: int
    sign_inferred: bool
    reports: tuple
    overall: str        # "necessary conditions hold" |
                        # "Behrend function is NOT constant" | "inconclusive"
    witnesses: tuple

    def to_json_dict(self) -> dict:
        return {
            "sign": self.sign,
            "sign_inferred": self.sign_inferred,
            "components": [r.to_json_dict() for r in self.reports],
            "overall": self.overall,
            "witnesses": list(self.witnesses),
        }


def constancy_falsifier(J: IdealPresentation,
                        sign: int | None = None) -> ConstancyCertificate:
    """Check the necessary conditions for a constant Behrend function.

    Each component must be generically reduced with a reduced dominating
    cone, its generic tangent dimension must equal its dimension, and all
    components must share the dimension parity of the target sign.  The
    sign is inferred from the first component when not supplied.  These
    conditions are necessary, not sufficient: "necessary conditions hold"
    is not a constancy proof (behrend_value can still refute pointwise).
    """
    comps = minimal_primes(J)
    if not comps:
        return ConstancyCertificate(sign or 1, sign is None, (),
                                    "necessary conditions hold", ())
    inferred = sign is None
    target = (-1) ** comps[0].dimension if inferred else sign
    if target not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    reference_certified = (not inferred) or comps[0].primality == "certified"

    reports = []
    witnesses = []
    definite = False
    shaky = any(c.primality != "certified" for c in comps)
    for c in comps:
        reasons = []
        gen_red = c.multiplicity == 1
        if not gen_red:
            reasons.append(
                f"component is not generically reduced "
                f"(multiplicity {c.multiplicity})")
        try:
            m = dominating_cone_multiplicity(J, c.prime)
        except PrimalityUndecidedError:
            m = 0  # sentinel: computed values are always >= 1
            shaky = True
        if m > 1:
            reasons.append(f"dominating cone multiplicity is {m}, not 1")
        gtd = generic_tangent_dimension(J, c.prime)
        if gtd != c.dimension:
            reasons.append(
                f"generic tangent dimension {gtd} differs from the "
                f"component dimension {c.dimension}")
        sign_dim = (-1) ** c.dimension
        sign_violation = sign_dim != target
        if sign_violation:
            reasons.append(
                f"dimension parity sign {sign_dim:+d} differs from the "
                f"target sign {target:+d}")
        verdict = "violation" if reasons else "pass"
        report = ComponentReport(
            component=c,
            generically_reduced=gen_red,
            dim_Z=c.dimension,
            generic_tangent_dim=gtd,
            sign_dim=sign_dim,
            sign_tangent=(-1) ** gtd,
            dominating_cone_mult=m,
            verdict=verdict,
            reasons=tuple(reasons),
        )
        reports.append(report)
        if reasons:
            for r in reasons:
                witnesses.append({
                    "component": [g.to_text() for g in c.prime.gb()],
                    "reason": r,
                })
            if c.primality == "certified":
                non_sign = [r for r in reasons if "target sign" not in r]
                if non_sign or reference_certified:
                    definite = True

    if definite:
        overall = "Behrend function is NOT constant"
    elif witnesses or shaky:
        overall = "inconclusive"
    else:
        overall = "necessary conditions hold"
    return ConstancyCertificate(target, inferred, tuple(reports), overall,
                                tuple(witnesses))


def smooth_general_value(J: IdealPresentation, Z) -> int:
    """Generic Behrend value along a generically reduced component Z."""
    if isinstance(Z, PrimeComponent):
        if Z.multiplicity != 1:
            raise ValueError("component is not generically reduced")
        zdim = Z.dimension
        zprime = Z.prime
    else:
        zprime = Z
        zdim = dimension(zprime)
    return (-1) ** zdim * dominating_cone_multiplicity(J, zprime)
