"""Tests for Behrend-function values and the constancy falsifier."""

import pytest

from conesign import (
    PointNotOnVarietyError,
    PrimalityUndecidedError,
    behrend_value,
    component_open_set_guard,
    constancy_falsifier,
    contains_ideal,
    dimension,
    dominating_cone_multiplicity,
    eu_point,
    ideal,
    is_point_on,
    minimal_primes,
    ring,
    smooth_general_value,
)

R1 = ring("x")
R2 = ring("x, y")
R3 = ring("x, y, z")
R4 = ring("x, y, z, w")

# smooth connected schemes of dimensions 0 through 3
SMOOTH = [
    (ideal(R2, "x, y"), [(0, 0)], 0),
    (ideal(R2, "y - x^2"), [(0, 0), (2, 4), (-1, 1)], 1),
    (ideal(R3, "x^2 + y^2 + z^2 - 1"), [(1, 0, 0), (0, 0, -1)], 2),
    (ideal(R3, "z"), [(0, 0, 0), (5, -2, 0)], 2),
    (ideal(R4, "w - x^2 - y^2 - z^2"), [(0, 0, 0, 0), (1, 1, 1, 3)], 3),
]


def same_ideal(A, B):
    return contains_ideal(A, B) and contains_ideal(B, A)


# ------------------------------------------------------------ point values


def test_double_point_line_values():
    J = ideal(R2, "y^2, x*y")
    assert behrend_value(J, (0, 0)).value == 1
    for p in [(1, 0), (-1, 0), (2, 0), (5, 0), (-3, 0)]:
        assert behrend_value(J, p).value == -1


def test_three_axes_values():
    J = ideal(R3, "xy, xz, yz")
    assert behrend_value(J, (0, 0, 0)).value == -1
    assert behrend_value(J, (1, 0, 0)).value == -1
    assert behrend_value(J, (0, -2, 0)).value == -1


def test_smooth_schemes_take_dimension_parity_values():
    for J, points, d in SMOOTH:
        assert dimension(J) == d
        for p in points:
            assert behrend_value(J, p).value == (-1) ** d


def test_value_off_the_scheme_is_an_error():
    with pytest.raises(PointNotOnVarietyError):
        behrend_value(ideal(R2, "y^2, x*y"), (0, 1))


def test_uncertified_component_primality_is_an_error():
    tc = ideal(R3, "y - x^2, z - x^3")
    with pytest.raises(PrimalityUndecidedError):
        behrend_value(tc, (1, 1, 1))


# -------------------------------------------------------- split integrity


def test_split_on_double_point_line():
    J = ideal(R2, "y^2, x*y")
    ev = behrend_value(J, (0, 0))
    # irreducible support of dimension 1 with a multiplicity-1 dominating cone
    assert ev.dominant_total == (-1) ** 1 * eu_point(
        ideal(R2, "y"), (0, 0)
    ).value * 1
    assert ev.contracted_total == 2
    assert ev.value == ev.dominant_total + ev.contracted_total

    away = behrend_value(J, (1, 0))
    assert away.dominant_total == -1
    assert away.contracted_total == 0


def test_split_on_three_axes():
    # reducible scheme: no cone component maps onto the whole of it, so
    # everything lands in the contracted bucket
    ev = behrend_value(ideal(R3, "xy, xz, yz"), (0, 0, 0))
    assert ev.dominant_total == 0
    assert ev.contracted_total == -1


def test_split_covers_every_contribution():
    for J, points, _ in SMOOTH:
        for p in points:
            ev = behrend_value(J, p)
            assert ev.value == ev.dominant_total + ev.contracted_total
            assert ev.value == sum(signed for _, _, signed in ev.breakdown)


def test_evaluation_json_shape():
    doc = behrend_value(ideal(R2, "y^2, x*y"), (0, 0)).to_json_dict()
    assert doc["value"] == 1
    assert doc["split"] == {"dominant": -1, "contracted": 2}
    assert len(doc["contributions"]) == 2


# --------------------------------------------------------------- the guard


def test_guard_for_one_of_two_lines():
    guard = component_open_set_guard(ideal(R2, "x*y"), ideal(R2, "x"))
    assert same_ideal(guard, ideal(R2, "y"))


def test_guard_with_a_single_component_is_unit():
    guard = component_open_set_guard(ideal(R2, "y - x^2"), ideal(R2, "y - x^2"))
    assert guard.is_unit_ideal()


def test_guard_on_three_axes():
    guard = component_open_set_guard(ideal(R3, "xy, xz, yz"), ideal(R3, "y, z"))
    assert same_ideal(guard, ideal(R3, "x, y*z"))
    # the guard vanishes exactly on the union of the other two axes
    assert is_point_on(guard, (0, 3, 0))
    assert is_point_on(guard, (0, 0, 3))
    assert not is_point_on(guard, (3, 0, 0))


def test_guard_rejects_non_components():
    with pytest.raises(ValueError):
        component_open_set_guard(ideal(R2, "x*y"), ideal(R2, "x - 1"))


# ------------------------------------------- dominating cone multiplicity


def test_dominating_multiplicity_of_smooth_components():
    assert dominating_cone_multiplicity(ideal(R2, "x, y"), ideal(R2, "x, y")) == 1
    assert dominating_cone_multiplicity(ideal(R2, "y"), ideal(R2, "y")) == 1
    sphere = ideal(R3, "x^2 + y^2 + z^2 - 1")
    assert dominating_cone_multiplicity(sphere, sphere) == 1


def test_fat_point_is_caught_upstream_not_here():
    # the cone is taken of the reduced component, so m stays 1; the
    # multiplicity-2 flag lives on the component record instead
    J = ideal(R1, "x^2")
    comp = minimal_primes(J)[0]
    assert comp.multiplicity == 2
    assert dominating_cone_multiplicity(J, comp) == 1


def test_dominating_multiplicity_along_the_axis():
    assert dominating_cone_multiplicity(
        ideal(R2, "y^2, x*y"), ideal(R2, "y")
    ) == 1


def test_dominating_multiplicity_rejects_non_components():
    with pytest.raises(ValueError):
        dominating_cone_multiplicity(ideal(R2, "x*y"), ideal(R2, "x - 1"))


# ------------------------------------------------------------- falsifier


def test_falsifier_passes_three_axes_with_odd_sign():
    cert = constancy_falsifier(ideal(R3, "xy, xz, yz"), sign=-1)
    assert cert.overall == "necessary conditions hold"
    assert cert.sign == -1
    assert not cert.sign_inferred
    assert len(cert.reports) == 3
    assert all(r.verdict == "pass" for r in cert.reports)
    assert cert.witnesses == ()


def test_falsifier_catches_mixed_parity_components():
    # plane union line: dimensions 2 and 1 cannot share a sign
    cert = constancy_falsifier(ideal(R3, "x*y, x*z"))
    assert cert.overall == "Behrend function is NOT constant"
    assert [r.verdict for r in cert.reports] == ["pass", "violation"]
    assert any("parity" in w["reason"] for w in cert.witnesses)


def test_falsifier_catches_non_reduced_components():
    cert = constancy_falsifier(ideal(R1, "x^2"))
    assert cert.overall == "Behrend function is NOT constant"
    assert any("generically reduced" in w["reason"] for w in cert.witnesses)


def test_falsifier_necessary_is_not_sufficient():
    # every necessary condition holds here, yet the pointwise values differ
    J = ideal(R2, "y^2, x*y")
    cert = constancy_falsifier(J)
    assert cert.overall == "necessary conditions hold"
    assert behrend_value(J, (0, 0)).value != behrend_value(J, (1, 0)).value


def test_falsifier_passes_smooth_corpus():
    for J, _, d in SMOOTH:
        cert = constancy_falsifier(J)
        assert cert.overall == "necessary conditions hold"
        assert cert.sign == (-1) ** d
        assert cert.sign_inferred


def test_falsifier_explicit_sign_mismatch_on_a_smooth_line():
    cert = constancy_falsifier(ideal(R2, "y"), sign=1)
    assert cert.overall == "Behrend function is NOT constant"
    assert cert.sign == 1


def test_falsifier_rejects_bad_signs():
    with pytest.raises(ValueError):
        constancy_falsifier(ideal(R2, "y"), sign=2)


def test_falsifier_inconclusive_on_uncertified_primality():
    cert = constancy_falsifier(ideal(R3, "y - x^2, z - x^3"))
    assert cert.overall == "inconclusive"
    assert cert.sign_inferred


def test_certificate_json_schema():
    doc = constancy_falsifier(ideal(R3, "xy, xz, yz"), sign=-1).to_json_dict()
    assert set(doc) == {
        "sign", "sign_inferred", "components", "overall", "witnesses",
    }
    assert doc["sign"] == -1
    assert doc["overall"] == "necessary conditions hold"
    for comp in doc["components"]:
        assert comp["verdict"] == "pass"
        assert comp["reasons"] == []
        assert comp["dominating_cone_mult"] == 1


# ----------------------------------------------------- generic route check


def test_smooth_general_values():
    parabola = ideal(R2, "y - x^2")
    assert smooth_general_value(parabola, parabola) == -1
    sphere = ideal(R3, "x^2 + y^2 + z^2 - 1")
    assert smooth_general_value(sphere, sphere) == 1
    assert smooth_general_value(ideal(R2, "y^2, x*y"), ideal(R2, "y")) == -1


def test_smooth_general_value_rejects_fat_components():
    J = ideal(R1, "x^2")
    with pytest.raises(ValueError):
        smooth_general_value(J, minimal_primes(J)[0])


def test_two_routes_agree_at_sampled_points():
    cases = [
        (ideal(R2, "y^2, x*y"), ideal(R2, "y"), [(1, 0), (-2, 0)]),
        (ideal(R3, "xy, xz, yz"), ideal(R3, "y, z"), [(1, 0, 0), (4, 0, 0)]),
        (ideal(R2, "x*y"), ideal(R2, "x"), [(0, 1), (0, -3)]),
    ]
    for J, Z, points in cases:
        guard = component_open_set_guard(J, Z)
        general = smooth_general_value(J, Z)
        for p in points:
            assert is_point_on(Z, p)
            assert not is_point_on(guard, p)
            assert behrend_value(J, p).value == general


def test_two_routes_agree_on_smooth_corpus():
    for J, points, _ in SMOOTH:
        (comp,) = minimal_primes(J)
        general = smooth_general_value(J, comp)
        for p in points:
            assert behrend_value(J, p).value == general


# -------------------------------------------------- embedding invariance


def test_value_survives_redundant_generators():
    cases = [
        (ideal(R2, "y^2, x*y"),
         ideal(R2, "y^2, x*y, x^2*y, y^3"),
         [(0, 0), (1, 0)]),
        (ideal(R3, "xy, xz, yz"),
         ideal(R3, "xy, xz, yz, x*y*z, x^2*y + x*z^2"),
         [(0, 0, 0), (1, 0, 0)]),
        (ideal(R2, "y - x^2"),
         ideal(R2, "y - x^2, x*y - x^3"),
         [(0, 0), (2, 4)]),
    ]
    for J, padded, points in cases:
        assert same_ideal(J, padded)
        for p in points:
            assert behrend_value(J, p).value == behrend_value(padded, p).value


def test_value_survives_an_extra_ambient_coordinate():
    R2w = ring("x, y, w")
    R3w = ring("x, y, z, w")
    cases = [
        (ideal(R2, "y^2, x*y"), ideal(R2w, "y^2, x*y, w"),
         [(0, 0), (1, 0)]),
        (ideal(R3, "xy, xz, yz"), ideal(R3w, "xy, xz, yz, w"),
         [(0, 0, 0), (1, 0, 0)]),
        # lifted cone primes must stay within the certifiable classes
        (ideal(R2, "x*y"), ideal(R2w, "x*y, w"),
         [(0, 0), (0, 1)]),
    ]
    for J, lifted, points in cases:
        for p in points:
            assert (
                behrend_value(J, p).value
                == behrend_value(lifted, p + (0,)).value
            )
