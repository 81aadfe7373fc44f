"""Rule-based local Euler obstruction at rational points.

Covered cases: points off the variety, nonsingular points, points on
integral curves (Hilbert-Samuel multiplicity), and vertices of cones over
smooth projective curves.  Anything else raises EuUnsupportedError: a wrong
value here would silently corrupt every Behrend evaluation downstream.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import (
    BoundExceededError,
    DegenerateDrawError,
    EuUnsupportedError,
    PointNotOnVarietyError,
    PrimalityUndecidedError,
)
from .ideals import (
    IdealPresentation,
    _certify_prime,
    colength,
    dimension,
    graded_degree_data,
    hilbert_polynomial_value,
    is_point_on,
    jacobian,
    tangent_dimension_at_point,
)
from .poly import Polynomial


@dataclass(frozen=True)
class EuVerdict:
    value: int | None
    rule: str        # outside | nonsingular | curve-multiplicity |
                     # plane-cone | aluffi-cone | unsupported
    primality: str   # certified | assumed

    def to_json_dict(self) -> dict:
        return {"value": self.value, "rule": self.rule,
                "primality": self.primality}


def _translate_to_origin(V: IdealPresentation, point) -> IdealPresentation:
    point = tuple(V.ring.coeff(c) for c in point)
    if all(c == 0 for c in point):
        return V
    return IdealPresentation(V.ring, [g.translate(point) for g in V.generators])


def _maximal_ideal_power(rng, k: int) -> list:
    out = []
    for combo in itertools.combinations_with_replacement(range(rng.arity), k):
        mono = [0] * rng.arity
        for i in combo:
            mono[i] += 1
        out.append(Polynomial.from_monomial(rng, tuple(mono)))
    return out


def _origin_colength(I: IdealPresentation, k: int) -> int:
    return colength(I.with_extra(_maximal_ideal_power(I.ring, k)))


def _tangent_cone_degree(J0: IdealPresentation, cap: int = 40) -> int:
    """Multiplicity at the origin via stabilized Hilbert-Samuel differences."""
    lengths = [0, _origin_colength(J0, 1)]
    diffs = []
    for k in range(2, cap):
        lengths.append(_origin_colength(J0, k))
        diffs.append(lengths[-1] - lengths[-2])
        if len(diffs) >= 3 and diffs[-1] == diffs[-2] == diffs[-3]:
            return diffs[-1]
    raise BoundExceededError("Hilbert-Samuel differences did not stabilize")


def _hyperplane_section_length(J0: IdealPresentation, line: Polynomial,
                               cap: int = 40) -> int | None:
    """Colength at the origin of J0 + (line); None if it never stabilizes."""
    K = J0.with_extra((line,))
    prev = _origin_colength(K, 1)
    for N in range(2, cap):
        cur = _origin_colength(K, N)
        if cur == prev:
            return cur
        prev = cur
    return None


def curve_multiplicity(V: IdealPresentation, point, seed: int = 0,
                       max_draws: int = 5) -> int:
    """Multiplicity of an integral curve at a point on it.

    Two independent computations must agree: the degree of the tangent cone
    (stabilized Hilbert-Samuel differences) and the local intersection
    length with a random hyperplane through the point.  Degenerate draws
    are retried with fresh coefficients.
    """
    if dimension(V) != 1:
        raise ValueError("curve multiplicity requested on a non-curve")
    point = tuple(V.ring.coeff(c) for c in point)
    if not is_point_on(V, point):
        raise PointNotOnVarietyError("point is not on the curve")
    J0 = _translate_to_origin(V, point)
    expected = _tangent_cone_degree(J0)
    rng = random.Random(seed)
    for _ in range(max_draws):
        coeffs = [rng.randint(-9, 9) for _ in range(V.ring.arity)]
        if all(c == 0 for c in coeffs):
            continue
        line = Polynomial(V.ring, {
            tuple(1 if j == i else 0 for j in range(V.ring.arity)):
            V.ring.coeff(c)
            for i, c in enumerate(coeffs) if c != 0})
        got = _hyperplane_section_length(J0, line)
        if got == expected:
            return expected
    raise DegenerateDrawError(
        "hyperplane sections kept disagreeing with the tangent-cone degree")


def _poly_minors(rows, size: int) -> list:
    """All size x size minors of a polynomial matrix."""

    def det(sub) -> Polynomial:
        if len(sub) == 1:
            return sub[0][0]
        total = None
        for j in range(len(sub)):
            minor = [row[:j] + row[j + 1:] for row in sub[1:]]
            piece = sub[0][j] * det(minor)
            if j % 2:
                piece = -piece
            total = piece if total is None else total + piece
        return total

    out = []
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    for ri in itertools.combinations(range(nrows), size):
        for ci in itertools.combinations(range(ncols), size):
            sub = [[rows[r][c] for c in ci] for r in ri]
            out.append(det(sub))
    return out


def cone_over_curve_data(V: IdealPresentation, vertex):
    """(degree, genus) when V is the cone over a smooth projective curve
    with the given vertex; None otherwise.

    The cone test is homogeneity of the reduced basis after moving the
    vertex to the origin; smoothness of the projectivization is the
    Jacobian criterion (singular locus at most the vertex); the genus is
    read off the Hilbert polynomial, valid because smoothness was
    certified first.
    """
    n = V.ring.arity
    if n < 3:
        return None
    J0 = _translate_to_origin(V, vertex)
    gb = J0.gb()
    if not all(g.is_homogeneous() for g in gb):
        return None
    if dimension(J0) != 2:
        return None
    rows = jacobian(IdealPresentation(J0.ring, gb))
    if len(rows) < n - 2:
        return None
    minors = [m for m in _poly_minors(rows, n - 2) if not m.is_zero()]
    sing = J0.with_extra(minors)
    if dimension(sing) > 0:
        return None
    Q, _ = graded_degree_data(J0)
    degree = sum(Q)
    hp0 = hilbert_polynomial_value(J0, 0)
    if hp0.denominator != 1:
        raise ArithmeticError("Hilbert polynomial value is not an integer")
    genus = 1 - int(hp0)
    return degree, genus


def eu_point(V: IdealPresentation, point, primality: str = "check",
             seed: int = 0) -> EuVerdict:
    """Local Euler obstruction of the integral variety V at a point.

    primality: "check" certifies V prime first (reducible input is a
    ValueError, uncertifiable input raises PrimalityUndecidedError);
    "certified"/"assumed" trust the caller and are recorded in the verdict.
    """
    if primality == "check":
        verdict = _certify_prime(V)
        if verdict[0] == "split":
            raise ValueError("variety is reducible; Euler obstruction "
                             "needs an integral variety")
        if verdict[0] != "prime":
            raise PrimalityUndecidedError(
                "could not certify the variety prime; pass an explicit "
                "assumption to proceed")
        status = "certified"
    elif primality in ("certified", "assumed"):
        status = primality
    else:
        raise ValueError(f"unknown primality mode: {primality!r}")

    point = tuple(V.ring.coeff(c) for c in point)
    if not is_point_on(V, point):
        return EuVerdict(0, "outside", status)
    d = dimension(V)
    if tangent_dimension_at_point(V, point) == d:
        return EuVerdict(1, "nonsingular", status)
    if d == 1:
        return EuVerdict(curve_multiplicity(V, point, seed=seed),
                         "curve-multiplicity", status)
    if d == 2:
        data = cone_over_curve_data(V, point)
        if data is not None:
            degree, genus = data
            if V.ring.arity == 3:
                return EuVerdict(degree * (2 - degree), "plane-cone", status)
            return EuVerdict(2 - 2 * genus - degree, "aluffi-cone", status)
    raise EuUnsupportedError(
        "no implemented Euler-obstruction rule applies at this point",
        EuVerdict(None, "unsupported", status))


@dataclass(frozen=True)
class ConstructibleEvaluation:
    cycle: object
    point: tuple
    value: int
    per_term: tuple  # (prime, coefficient, EuVerdict)

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "terms": [{"prime": [g.to_text() for g in prime.gb()],
                       "coeff": coeff,
                       "eu": verdict.to_json_dict()}
                      for prime, coeff, verdict in self.per_term],
        }


def eu_cycle(cycle, point, primality: str = "check",
             seed: int = 0) -> ConstructibleEvaluation:
    """Z-linear extension of eu_point over a cycle's terms.

    Any unsupported term whose support contains the point aborts the whole
    evaluation; partial sums are never reported.
    """
    per_term = []
    total = 0
    for term in cycle.terms:
        verdict = eu_point(term.prime, point, primality=primality, seed=seed)
        per_term.append((term.prime, term.coefficient, verdict))
        total += term.coefficient * verdict.value
    point = tuple(point)
    return ConstructibleEvaluation(cycle, point, total, tuple(per_term))
