import random
from fractions import Fraction

import pytest

from coxcov.differentials import (DunklParams, de_rham,
                                  delta_d_check, delta_d_eigenvalue,
                                  differential_identity_suite, dunkl,
                                  koszul_delta, nabla_s, random_weil)
from coxcov.poly import Poly
from coxcov.weil import B_QUOTIENT, Weil


def test_de_rham_examples(stack_of):
    g = stack_of("A1").group
    d = de_rham(g, Weil.from_poly(Poly.monomial((2,), 1)))
    assert d == Weil(1, g.field, {0b1: Poly.monomial((1,), 2)})
    assert de_rham(g, Weil.from_poly(Poly.constant(5, 1))).is_zero()
    g2 = stack_of("B2").group
    dd = de_rham(g2, de_rham(g2, Weil.from_poly(Poly.monomial((1, 1), 1))))
    assert dd.is_zero()


def test_de_rham_rejects_quotient(stack_of):
    g = stack_of("A1").group
    w = Weil.one(1, g.field, B_QUOTIENT)
    with pytest.raises(ValueError):
        de_rham(g, w)


def test_koszul_examples(stack_of):
    g = stack_of("A1").group
    assert koszul_delta(g, Weil.vector([1])) == \
        Weil.from_poly(Poly.variable(0, 1))
    assert koszul_delta(g, Weil.from_poly(Poly.monomial((2,), 3))).is_zero()
    g2 = stack_of("B2").group
    got = koszul_delta(g2, Weil(2, g2.field, {0b11: Poly.constant(1, 2)}))
    want = Weil(2, g2.field, {0b10: Poly.variable(0, 2)}) - \
        Weil(2, g2.field, {0b01: Poly.variable(1, 2)})
    assert got == want


def test_koszul_descends(stack_of):
    rng = random.Random(31)
    for code in ["A2", "B2"]:
        st = stack_of(code)
        for _ in range(20):
            w = random_weil(st.group, rng)
            lhs = st.cb.nf_weil(koszul_delta(st.group, w))
            rhs = koszul_delta(st.group, st.cb.nf_weil(w), st.cb)
            assert lhs == rhs


def test_nabla_examples(stack_of):
    g = stack_of("A1").group
    n = nabla_s(g, 0, Weil.from_poly(Poly.variable(0, 1)))
    assert n == Weil(1, g.field, {0b1: Poly.constant(2, 1)})
    assert nabla_s(g, 0, Weil.vector([1])).is_zero()
    # kills invariants
    psi = g.basic_invariants()[0]
    assert nabla_s(g, 0, Weil.from_poly(psi)).is_zero()


def test_nabla_kills_invariant_weil(stack_of):
    for code in ["B2", "G2"]:
        st = stack_of(code)
        g = st.group
        psi = g.basic_invariants()[1]
        w = Weil.from_poly(psi)
        for k in range(len(g.reflections)):
            assert nabla_s(g, k, w).is_zero()


def test_nabla_root_scaling_invariance(stack_of):
    rng = random.Random(41)
    for code in ["B2", "G2"]:
        st = stack_of(code)
        g = st.group
        for _ in range(15):
            w = random_weil(g, rng)
            k = rng.randrange(len(g.reflections))
            alpha = g.reflections[k][1]
            scaled = tuple(c * 3 for c in alpha)
            assert nabla_s(g, k, w) == nabla_s(g, k, w, alpha=scaled)


def test_nabla_twisted_leibniz(stack_of):
    # graded form of the twisted rule: with the alpha-wedge on the left,
    # nabla(ab) = nabla(a) b + (-1)^{ext a} (s a) nabla(b) on elements of
    # homogeneous exterior degree
    from coxcov.weil import wedge_mul
    rng = random.Random(43)
    st = stack_of("B2")
    g = st.group
    for _ in range(30):
        ext_a = rng.randrange(3)
        mask_a = (1 << ext_a) - 1
        a = Weil(2, g.field, {mask_a: Poly.monomial(
            (rng.randrange(3), rng.randrange(3)), rng.randrange(1, 4))})
        b = random_weil(g, rng, max_poly_degree=2, n_terms=2)
        k = rng.randrange(len(g.reflections))
        eidx = g.reflections[k][0]
        lhs = nabla_s(g, k, wedge_mul(a, b))
        second = wedge_mul(g.act_weil(eidx, a), nabla_s(g, k, b))
        if ext_a % 2:
            second = -second
        rhs = wedge_mul(nabla_s(g, k, a), b) + second
        assert lhs == rhs


def test_dunkl_examples(stack_of):
    st = stack_of("A1")
    params = DunklParams.constant(st.group)
    d = dunkl(params, Weil.from_poly(Poly.variable(0, 1)))
    assert d == Weil(1, st.group.field, {0b1: Poly.constant(2, 1)})
    # D_c kills p_i (invariant in B)
    for code in ["A2", "B2"]:
        s2 = stack_of(code)
        params2 = DunklParams.constant(s2.group)
        for i in range(1, s2.group.rank + 1):
            assert dunkl(params2, s2.p(i), s2.cb).is_zero()


def test_dunkl_conjugation_invariance(stack_of):
    rng = random.Random(47)
    st = stack_of("B2")
    g = st.group
    params = DunklParams.constant(g)
    for _ in range(10):
        w = random_weil(g, rng)
        widx = rng.randrange(g.order)
        lhs = g.act_weil(g.inv(widx), dunkl(params, g.act_weil(widx, w)))
        assert lhs == dunkl(params, w)


def test_square_zero_suite(stack_of):
    for code in ["A1", "A2", "B2", "G2"]:
        st = stack_of(code)
        details = differential_identity_suite(st.group, st.cb, seed=5,
                                              n_samples=12, n_cfg=3)
        assert details["samples"] == 12


def test_delta_d_eigenvalues(stack_of):
    for code in ["A1", "B2", "G2"]:
        st = stack_of(code)
        g = st.group
        params = DunklParams.constant(g)
        assert delta_d_eigenvalue(params, g.character("trivial")) == 0
        assert delta_d_eigenvalue(params, g.character("sign")) == \
            2 * g.n_reflections
        assert delta_d_eigenvalue(params, g.character("reflection")) == \
            Fraction(2 * g.n_reflections, g.rank)


def test_delta_d_check_reflection(stack_of):
    st = stack_of("B2")
    g = st.group
    params = DunklParams.constant(g)
    gamma = delta_d_check(params, g.character("reflection"),
                          Poly.variable(0, 2))
    assert gamma == Fraction(2 * g.n_reflections, g.rank)
    # sign representation: generated by the Jacobian
    gamma2 = delta_d_check(params, g.character("sign"), g.jacobian_delta())
    assert gamma2 == 2 * g.n_reflections


def test_delta_d_check_rejects_non_isotypic(stack_of):
    st = stack_of("B2")
    params = DunklParams.constant(st.group)
    # x + x^2 is not isotypic-generating
    bad = Poly.variable(0, 2) + Poly.monomial((2, 0), 1)
    with pytest.raises(ValueError, match="isotypic"):
        delta_d_check(params, st.group.character("reflection"), bad)


def test_de_rham_basis_independence(stack_of):
    """B2 in standard coordinates vs the I2(4) Cartan-basis realization:
    d commutes with the change of coordinates."""
    from coxcov.weil import wedge_mul
    b2 = stack_of("B2").group
    i24 = stack_of("I2(4)").group
    # T: V_I24 -> V_B2, b1 -> e1, b2 -> e2 - e1 (checks Gram pullback)
    cols = [(Fraction(1), Fraction(0)), (Fraction(-1), Fraction(1))]
    for i in range(2):
        for j in range(2):
            dot = sum(cols[i][k] * cols[j][k] for k in range(2))
            assert dot == i24.gram[i][j]
    tinv = [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]]

    def push_poly(p):
        # (push p)(x) = p(T^{-1} x): substitute y_i by row i of T^{-1}
        forms = [Poly.linear_form(tinv[i]) for i in range(2)]
        return p.substitute(forms)

    def push_weil(w):
        # exterior image of b_j is T(b_j) in B2 coordinates
        out = Weil.zero(2, b2.field)
        for mask, p in w.terms.items():
            img = Weil.from_poly(push_poly(p))
            for i in range(2):
                if mask & (1 << i):
                    img = wedge_mul(img, Weil.vector(cols[i]))
            out = out + img
        return out

    rng = random.Random(53)
    for _ in range(10):
        w = random_weil(i24, rng, max_poly_degree=2, n_terms=2)
        lhs = push_weil(de_rham(i24, w))
        rhs = de_rham(b2, push_weil(w))
        assert lhs == rhs
