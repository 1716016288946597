import random
from fractions import Fraction

import pytest

from coxcov.groups import (CatalogueError, build_group, canonical_code,
                           mat_mul, mat_transpose, mat_vec)
from coxcov.poly import Poly

CATALOGUE = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "I2(4)", "I2(5)",
             "G2", "I2(7)", "I2(8)", "F4", "H3"]

DEGREE_TABLE = {
    "A1": (2,), "A2": (2, 3), "A3": (2, 3, 4), "A4": (2, 3, 4, 5),
    "B2": (2, 4), "B3": (2, 4, 6), "B4": (2, 4, 6, 8),
    "I2(4)": (2, 4), "I2(5)": (2, 5), "G2": (2, 6), "I2(7)": (2, 7),
    "I2(8)": (2, 8), "F4": (2, 6, 8, 12), "H3": (2, 6, 10),
}


@pytest.mark.parametrize("code", CATALOGUE)
def test_orders_and_reflections(code, group_of):
    g = group_of(code)
    order = 1
    for d in DEGREE_TABLE[code]:
        order *= d
    assert g.degrees == DEGREE_TABLE[code]
    assert g.order == order == len(g.elements)
    assert g.n_reflections == sum(d - 1 for d in g.degrees)
    assert len(g.positive_roots) == g.n_reflections


def test_a2_closure_oracle(group_of):
    g = group_of("A2")
    assert g.order == 6 and g.n_reflections == 3
    assert g.degrees == (2, 3)


def test_h3_f4_degrees(group_of):
    assert group_of("H3").degrees == (2, 6, 10)
    assert group_of("F4").degrees == (2, 6, 8, 12)


@pytest.mark.parametrize("code,sizes", [
    ("A2", (3,)), ("B2", (2, 2)), ("B3", (3, 6)), ("B4", (4, 12)),
    ("G2", (3, 3)), ("I2(8)", (4, 4)), ("F4", (12, 12)), ("H3", (15,)),
])
def test_reflection_class_sizes(code, sizes, group_of):
    g = group_of(code)
    assert tuple(sorted(g.reflection_class_sizes())) == tuple(sorted(sizes))


def test_reflection_classes_conjugation_oracle(group_of):
    # brute-force conjugation orbits over the full group
    for code in ["A2", "B2", "F4"]:
        g = group_of(code)
        refl_elts = {idx for idx, _ in g.reflections}
        refl_of = {idx: k for k, (idx, _) in enumerate(g.reflections)}
        seen = set()
        orbits = []
        for idx, _ in g.reflections:
            if idx in seen:
                continue
            orbit = set()
            for w in range(g.order):
                c = g.mul(g.mul(w, idx), g.inv(w))
                assert c in refl_elts
                orbit.add(c)
            seen |= orbit
            orbits.append(orbit)
        assert sorted(len(o) for o in orbits) == \
            sorted(g.reflection_class_sizes())


@pytest.mark.parametrize("code", CATALOGUE)
def test_elements_orthogonal(code, group_of):
    g = group_of(code)
    for w in g.elements[:25]:
        wt = mat_transpose(w)
        assert mat_mul(mat_mul(wt, g.gram, g.field), w, g.field) == g.gram


def test_reflections_negate_roots(group_of):
    for code in ["B3", "G2", "H3"]:
        g = group_of(code)
        for eidx, alpha in g.reflections:
            img = mat_vec(g.elements[eidx], alpha, g.field)
            assert img == tuple(-c for c in alpha)


def test_action_examples(group_of):
    g1 = group_of("A1")
    s = g1.simple_indices[0]
    x = Poly.variable(0, 1)
    assert g1.act_poly(s, x) == -x
    assert g1.act_poly(g1.identity_index, x * x) == x * x
    # B2: reflection in x - y swaps the coordinates
    g2 = group_of("B2")
    srefl = next(k for k, (idx, a) in enumerate(g2.reflections)
                 if a in ((Fraction(1), Fraction(-1)),
                          (Fraction(-1), Fraction(1))))
    eidx = g2.reflections[srefl][0]
    p = Poly.monomial((2, 1), 1)
    assert g2.act_poly(eidx, p) == Poly.monomial((1, 2), 1)


def _act_oracle(g, widx, p):
    """Independent substitution oracle: expand each monomial by hand."""
    winv = g.elements[g.inverse_idx[widx]]
    out = Poly.zero(g.rank, g.field)
    for e, c in p.terms.items():
        term = Poly.constant(c, g.rank, g.field)
        for i, k in enumerate(e):
            form = Poly.linear_form(winv[i], g.field)
            for _ in range(k):
                term = term * form
        out = out + term
    return out


def test_action_is_group_action_fuzz(group_of):
    rng = random.Random(23)
    for code in ["A2", "B2", "G2", "B3"]:
        g = group_of(code)
        for _ in range(50):
            v = rng.randrange(g.order)
            w = rng.randrange(g.order)
            e = tuple(rng.randrange(3) for _ in range(g.rank))
            p = Poly.monomial(e, Fraction(rng.randrange(1, 5)), g.field)
            assert g.act_poly(g.mul(v, w), p) == \
                g.act_poly(v, g.act_poly(w, p))
            assert g.act_poly(w, p) == _act_oracle(g, w, p)


def test_basic_invariants_properties(group_of):
    for code in ["A1", "A2", "B2", "G2", "B3", "I2(5)", "H3"]:
        g = group_of(code)
        psis = g.basic_invariants()
        assert [p.degree() for p in psis] == list(g.degrees)
        assert psis[0] == g.gram_quadratic()
        for psi in psis:
            for widx in g.simple_indices:
                assert g.act_poly(widx, psi) == psi


def test_basic_invariant_examples(group_of):
    assert group_of("A1").basic_invariants()[0] == Poly.monomial((2,), 1)
    b2 = group_of("B2").basic_invariants()
    assert b2[0] == Poly.monomial((2, 0), 1) + Poly.monomial((0, 2), 1)
    assert b2[1] == Poly.monomial((4, 0), 1) + Poly.monomial((0, 4), 1)


def test_jacobian_delta(group_of):
    g = group_of("A1")
    assert g.jacobian_delta() == Poly.monomial((1,), 2)
    for code in ["B2", "A3", "G2", "H3"]:
        g = group_of(code)
        delta = g.jacobian_delta()
        assert delta.degree() == g.n_reflections
        for widx in g.simple_indices:
            det = g.det(widx)
            assert g.act_poly(widx, delta) == delta.scale(det)


def test_reynolds_examples(group_of):
    g1 = group_of("A1")
    assert g1.reynolds(Poly.variable(0, 1)).is_zero()
    x2 = Poly.monomial((2,), 1)
    assert g1.reynolds(x2) == x2
    g2 = group_of("B2")
    got = g2.reynolds(Poly.monomial((4, 0), 1))
    want = (Poly.monomial((4, 0), Fraction(1, 2)) +
            Poly.monomial((0, 4), Fraction(1, 2)))
    assert got == want


def test_reynolds_orbit_sum_oracle(group_of):
    g = group_of("B2")
    p = Poly.monomial((3, 1), 1)
    total = Poly.zero(2, g.field)
    for w in range(g.order):
        total = total + g.act_poly(w, p)
    assert g.reynolds(p) == total.scale(Fraction(1, g.order))


def test_d4_rejected():
    with pytest.raises(CatalogueError, match="repeated degrees"):
        build_group("D4")


def test_h4_needs_allow_long():
    with pytest.raises(CatalogueError, match="opt-in"):
        build_group("H4")


def test_canonical_aliases():
    assert canonical_code("i2(6)") == "G2"
    assert canonical_code("I2(3)") == "A2"
    assert canonical_code("b3") == "B3"


def test_conjugacy_class_sizes(group_of):
    for code in ["A2", "B2", "G2"]:
        g = group_of(code)
        classes = g.conjugacy_classes()
        assert sum(len(members) for _, members in classes) == g.order


def test_characters(group_of):
    g = group_of("B2")
    triv = g.character("trivial")
    sgn = g.character("sign")
    refl = g.character("reflection")
    assert all(v == g.field.one for v in triv.values)
    assert refl.at(g.identity_index) == g.rank
    # sign is multiplicative on reflections
    for idx, _ in g.reflections:
        assert sgn.at(idx) == -g.field.one
