import pytest

from conesign import (
    cone_components,
    contains_ideal,
    dimension,
    eliminate,
    ideal,
    normal_cone_ideal,
    parse_polynomial,
    radical_contains,
    rees_ideal,
    ring,
    signed_support_cycle,
    transplant,
)

R1 = ring("x")
R2 = ring("x, y")
R3 = ring("x, y, z")

CORPUS = [
    ideal(R1, "x"),
    ideal(R2, "x"),
    ideal(R2, "x, y"),
    ideal(R2, "y^2, x*y"),
    ideal(R2, "y - x^2"),
    ideal(R3, "xy, xz, yz"),
    ideal(R3, "x, y"),
]


def substitute_cone_vars(f, J, cone_names):
    """Evaluate a cone polynomial after e_i -> t*g_i, as a check oracle."""
    ext = f.ring
    base = J.ring
    Rt = base.extend(["t"])
    t = parse_polynomial("t", Rt)
    images = {}
    for name, g in zip(cone_names, [p for p in J.gb() if not p.is_zero()]):
        images[name] = t * transplant(g, Rt)
    from conesign.poly import Polynomial

    total = Polynomial.zero(Rt)
    for mono, coeff in f.terms.items():
        term = Polynomial.constant(Rt, coeff)
        for var, e in zip(ext.variables, mono):
            if e == 0:
                continue
            factor = images.get(var)
            if factor is None:
                factor = parse_polynomial(var, Rt)
            for _ in range(e):
                term = term * factor
        total = total + term
    return total


def test_rees_of_principal_ideal_is_zero():
    reese, names = rees_ideal(ideal(R1, "x"))
    assert tuple(names) == ("e1",)
    assert reese.is_zero_ideal()


def test_rees_of_two_variables_is_koszul():
    J = ideal(R2, "x, y")
    reese, names = rees_ideal(J)
    gb = [g.to_text() for g in reese.gb()]
    assert len(gb) == 1
    # the lone generator is the Koszul relation between the two cone
    # coordinates; the substitution oracle must kill it
    assert substitute_cone_vars(reese.gb()[0], J, names).is_zero()
    vars_used = reese.gb()[0].support_variables()
    assert set(names) <= {reese.ring.variables[i] for i in vars_used}


def test_rees_three_axes_contains_graph_relations():
    J = ideal(R3, "xy, xz, yz")
    reese, names = rees_ideal(J)
    gens = {g.to_text() for g in J.gb()}
    assert gens == {"x*y", "x*z", "y*z"}
    order = [g.to_text() for g in J.gb()]
    e = {order[i]: names[i] for i in range(3)}
    # cross relations e_i*g_j - e_j*g_i for the generator pairs
    for a, b in [("x*y", "x*z"), ("x*y", "y*z"), ("x*z", "y*z")]:
        rel = parse_polynomial(f"{e[a]}*({b}) - {e[b]}*({a})", reese.ring)
        assert substitute_cone_vars(rel, J, names).is_zero()
        assert reese.contains(rel)
    # linear syzygy relations, e.g. z*e(xy) - y*e(xz)
    rel = parse_polynomial(f"z*{e['x*y']} - y*{e['x*z']}", reese.ring)
    assert substitute_cone_vars(rel, J, names).is_zero()
    assert reese.contains(rel)


@pytest.mark.parametrize("J", CORPUS, ids=lambda J: ",".join(J.generator_texts()))
def test_rees_generators_vanish_under_substitution(J):
    reese, names = rees_ideal(J)
    for g in reese.generators:
        assert substitute_cone_vars(g, J, names).is_zero()


def test_normal_cone_of_smooth_hypersurface_is_a_line_bundle():
    J = ideal(R2, "x")
    cone, names = normal_cone_ideal(J)
    assert tuple(names) == ("e1",)
    assert [g.to_text() for g in cone.gb()] == ["x"]


def test_normal_cone_of_zero_ideal_is_the_whole_space():
    J = ideal(R2, "0")
    cone, names = normal_cone_ideal(J)
    assert tuple(names) == ()
    assert cone.is_zero_ideal()


def test_normal_cone_zero_section_pullback():
    # restricting the cone to the zero section recovers V(J), up to radical
    for J in CORPUS:
        cone, names = normal_cone_ideal(J)
        if not names:
            continue
        restricted = cone.with_extra(
            [parse_polynomial(n, cone.ring) for n in names]
        )
        shadow = eliminate(restricted, names)
        # shadow and J cut out the same set
        for g in J.generators:
            assert radical_contains(shadow, transplant(g, shadow.ring))
        for g in shadow.generators:
            assert radical_contains(J, transplant(g, J.ring))


def test_cone_components_embedded_point_pair():
    comps = cone_components(ideal(R2, "y^2, x*y"))
    assert len(comps) == 2
    data = sorted(
        (c.multiplicity, sorted(g.to_text() for g in c.image.gb()), c.image_dimension, c.dominates)
        for c in comps
    )
    assert data == [
        (1, ["y"], 1, True),
        (2, ["x", "y"], 0, False),
    ]
    for c in comps:
        assert c.primality == "certified"


def test_cone_components_three_axes():
    comps = cone_components(ideal(R3, "xy, xz, yz"))
    assert len(comps) == 4
    mults = sorted(c.multiplicity for c in comps)
    assert mults == [1, 1, 1, 2]
    images = sorted(
        (c.multiplicity, tuple(sorted(g.to_text() for g in c.image.gb())))
        for c in comps
    )
    assert images == [
        (1, ("x", "y")),
        (1, ("x", "z")),
        (1, ("y", "z")),
        (2, ("x", "y", "z")),
    ]
    dims = sorted((c.multiplicity, c.image_dimension) for c in comps)
    assert dims == [(1, 1), (1, 1), (1, 1), (2, 0)]
    assert all(not c.dominates for c in comps)


def test_cone_components_smooth_line():
    comps = cone_components(ideal(R2, "x"))
    assert len(comps) == 1
    c = comps[0]
    assert c.multiplicity == 1
    assert [g.to_text() for g in c.image.gb()] == ["x"]
    assert c.image_dimension == 1 and c.dominates


@pytest.mark.parametrize("J", CORPUS, ids=lambda J: ",".join(J.generator_texts()))
def test_cone_is_equidimensional_of_ambient_dimension(J):
    n = J.ring.arity
    for c in cone_components(J):
        assert dimension(c.cone_prime) == n


@pytest.mark.parametrize("J", CORPUS, ids=lambda J: ",".join(J.generator_texts()))
def test_cone_images_contain_the_ideal_and_dominate_consistently(J):
    for c in cone_components(J):
        assert contains_ideal(c.image, J)
        is_dominant = all(radical_contains(J, g) for g in c.image.generators)
        assert c.dominates == is_dominant


def test_cycle_embedded_point_pair():
    cycle = signed_support_cycle(ideal(R2, "y^2, x*y"))
    terms = sorted(
        (t.coefficient, tuple(sorted(g.to_text() for g in t.prime.gb())))
        for t in cycle.terms
    )
    assert terms == [(-1, ("y",)), (2, ("x", "y"))]


def test_cycle_three_axes():
    cycle = signed_support_cycle(ideal(R3, "xy, xz, yz"))
    terms = sorted(
        (t.coefficient, tuple(sorted(g.to_text() for g in t.prime.gb())))
        for t in cycle.terms
    )
    assert terms == [
        (-1, ("x", "y")),
        (-1, ("x", "z")),
        (-1, ("y", "z")),
        (2, ("x", "y", "z")),
    ]


def test_cycle_of_smooth_scheme_is_signed_fundamental_class():
    for J, d in [
        (ideal(R2, "x"), 1),
        (ideal(R3, "x, y"), 1),
        (ideal(R2, "y - x^2"), 1),
        (ideal(R3, "x"), 2),
    ]:
        cycle = signed_support_cycle(J)
        assert len(cycle.terms) == 1
        t = cycle.terms[0]
        assert t.coefficient == (-1) ** d
        assert t.prime.signature() == ideal(J.ring, ", ".join(J.generator_texts())).signature()


@pytest.mark.parametrize("J", CORPUS, ids=lambda J: ",".join(J.generator_texts()))
def test_cycle_coefficients_match_component_sums(J):
    comps = cone_components(J)
    cycle = signed_support_cycle(J)
    for t in cycle.terms:
        expected = sum(
            (-1) ** c.image_dimension * c.multiplicity
            for c in comps
            if c.image.signature() == t.prime.signature()
        )
        assert t.coefficient == expected
    # every distinct image appears exactly once
    assert len({t.prime.signature() for t in cycle.terms}) == len(cycle.terms)


def test_cycle_terms_have_nonzero_coefficients():
    for J in CORPUS:
        for t in signed_support_cycle(J).terms:
            assert t.coefficient != 0


def test_component_json_shape():
    comp = cone_components(ideal(R2, "y^2, x*y"))[0]
    d = comp.to_json_dict()
    assert set(d) == {
        "cone_prime",
        "multiplicity",
        "image",
        "image_dim",
        "dominates",
        "primality_status",
    }
    cyc = signed_support_cycle(ideal(R2, "y^2, x*y")).to_json_dict()
    assert set(cyc) == {"terms"}
    assert all(set(t) == {"prime", "coeff"} for t in cyc["terms"])
