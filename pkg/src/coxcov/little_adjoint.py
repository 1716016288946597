"""The two-reflection-class theory: semidirect splitting W = W_p x| H,
the module Vbar = (A^H)_+ / ((A^H)_+)^2, its summand U carrying the
reflection representation of W_p, the invariants phi_i of K[U], the maps
g_i and v_i, and the graded-freeness suite for Hom_W(U, B).

Orientation: ``use_class`` picks which reflection class generates the
normal subgroup H.  For the dihedral groups both orientations are run;
the roles are symmetric there.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .coinvariants import CoinvariantBasis, _pairing, monomials_of_degree
from .covariants import (CovariantMap, CovariantStack, TargetSpace, form_e,
                         map_vec)
from .differentials import dunkl, koszul_delta
from .fields import Scalar, scalar_inverse
from .groups import ReflectionGroup, _jacobian_det, _poly_det
from .linalg import SparseSolver, invert_field_matrix
from .molien import GradedSeries, graded_multiplicity_series
from .poly import Poly
from .reports import FAIL, PASS, CheckRecord, scalar_str
from .weil import Weil

_H_DEGREE_TABLE = {
    # (code, role-class size profile is implied): degrees of A^H generators
    "B2": {0: (2, 2), 1: (2, 2)},
    "B3": {"coord": (2, 2, 2), "diag": (2, 3, 4)},
    "B4": {"coord": (2, 2, 2, 2), "diag": (2, 4, 4, 6)},
    "I2(4)": {0: (2, 2), 1: (2, 2)},
    "G2": {0: (2, 3), 1: (2, 3)},
    "I2(8)": {0: (2, 4), 1: (2, 4)},
    "F4": {0: (2, 4, 4, 6), 1: (2, 4, 4, 6)},
}


def twisted_pairing(group: ReflectionGroup, p: Poly, q: Poly) -> Scalar:
    """W-invariant apolar pairing <p, q>_G = plain pairing of p(G^{-1}x), q."""
    forms = [Poly.linear_form(group.gram_inv[i], group.field)
             for i in range(group.rank)]
    return _pairing(p.substitute(forms), q)


@dataclass
class SplitGroupData:
    group: ReflectionGroup
    use_class: int                 # reflection class generating H
    h_elements: list
    h_set: set
    wp_elements: list
    wp_set: set
    r_ell: int
    r_p: int
    quotient: dict                 # elt_idx -> W_p representative elt_idx

    @property
    def p_class(self) -> int:
        return 1 - self.use_class


def _subgroup_closure(group: ReflectionGroup, gen_indices):
    seen = {group.identity_index}
    out = [group.identity_index]
    frontier = [group.identity_index]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gen_indices:
                m = group.mul(w, g)
                if m not in seen:
                    seen.add(m)
                    out.append(m)
                    nxt.append(m)
        frontier = nxt
    return sorted(out)


def split_group(group: ReflectionGroup, use_class: int | None = None) -> SplitGroupData:
    if len(group.reflection_classes) != 2:
        raise ValueError("no length classes: group has a single reflection class")
    if use_class is None:
        use_class = group.class_ell
    other = 1 - use_class
    h_gens = [group.reflections[k][0]
              for k in group.reflection_classes[use_class]]
    h_elements = _subgroup_closure(group, h_gens)
    h_set = set(h_elements)
    simple_refl = []
    for si, root in zip(group.simple_indices, group.simple_roots):
        k = next(k for k, (eidx, _) in enumerate(group.reflections)
                 if eidx == si)
        simple_refl.append((si, group.refl_class_of[k]))
    wp_gens = [si for si, cls in simple_refl if cls == other]
    r_p = len(wp_gens)
    r_ell = group.rank - r_p
    wp_elements = _subgroup_closure(group, wp_gens)
    wp_set = set(wp_elements)
    assert len(h_elements) * len(wp_elements) == group.order, \
        "order identity |W| = |H| |W_p| fails"
    assert h_set & wp_set == {group.identity_index}
    # normality of H
    for g in group.simple_indices:
        for h in h_gens:
            assert group.conjugate(g, h) in h_set, "H not normal"
    quotient = {}
    for w in range(group.order):
        wp = next(x for x in wp_elements
                  if group.mul(group.inv(x), w) in h_set)
        quotient[w] = wp
    return SplitGroupData(group, use_class, h_elements, h_set,
                          wp_elements, wp_set, r_ell, r_p, quotient)


def _expected_h_degrees(split: SplitGroupData):
    code = split.group.code
    table = _H_DEGREE_TABLE.get(code)
    if table is None:
        raise ValueError(f"little adjoint not catalogued for {code}")
    if code in ("B3", "B4"):
        # primary orientation: coordinate reflections (class of size rank)
        size = len(split.group.reflection_classes[split.use_class])
        key = "coord" if size == split.group.rank else "diag"
        return table[key]
    return table[split.use_class]


def subgroup_invariants(split: SplitGroupData):
    """Homogeneous generators of A^H, Reynolds-averaged from deterministic
    seeds, with exact Jacobian certification."""
    group = split.group
    degrees = _expected_h_degrees(split)
    assert len(degrees) == group.rank
    prod = 1
    for d in degrees:
        prod *= d
    assert prod == len(split.h_elements), "H degree table inconsistent"
    psibars = []
    for d in sorted(set(degrees)):
        needed = degrees.count(d)
        found = 0
        for m in monomials_of_degree(group.rank, d):
            if found == needed:
                break
            cand = group.reynolds(Poly.monomial(m, 1, group.field),
                                  split.h_elements)
            if cand.is_zero():
                continue
            cand = cand.content_normalized()
            if _jacobian_rank(psibars + [cand], group) == len(psibars) + 1:
                psibars.append(cand)
                found += 1
        assert found == needed, f"could not find degree-{d} H-invariants"
    psibars.sort(key=lambda p: p.degree())
    assert not _jacobian_det(psibars, group.field).is_zero()
    return psibars


def _jacobian_rank(polys, group: ReflectionGroup) -> int:
    k = len(polys)
    if k == 0:
        return 0
    jac = [[polys[j].partial(i) for j in range(k)] for i in range(group.rank)]
    for rows in combinations(range(group.rank), k):
        sub = [[jac[i][j] for j in range(k)] for i in rows]
        if not _poly_det(sub, k, group.field).is_zero():
            return k
    return k - 1  # rank defect (only full-vs-not matters to callers)


@dataclass
class UbarDecomposition:
    split: SplitGroupData
    psibars: list
    vbar_basis: list        # W-stable complement representatives, by degree
    u_basis: list           # basis of the W_p-reflection summand U
    inv_basis: list         # basis of Vbar^W
    u_degree: int           # common polynomial degree of U

    def u_action_matrix(self, w_idx: int):
        """Matrix of w on U in the chosen basis (columns = images)."""
        group = self.split.group
        solver = SparseSolver()
        for y in self.u_basis:
            solver.add(dict(y.terms))
        cols = []
        for y in self.u_basis:
            img = group.act_poly(w_idx, y)
            sol = solver.solve(dict(img.terms))
            assert sol is not None, "U not W-stable"
            cols.append([sol.get(i, group.field.zero)
                         for i in range(len(self.u_basis))])
        return tuple(tuple(cols[j][i] for j in range(len(cols)))
                     for i in range(len(cols)))


def ubar_decomposition(split: SplitGroupData, psibars) -> UbarDecomposition:
    group = split.group
    field = group.field
    vbar = []
    for d in sorted(set(p.degree() for p in psibars)):
        gens_d = [p for p in psibars if p.degree() == d]
        # (J_H^2)_d: products of >= 2 positive-degree psibar monomials
        j2 = []
        for k in range(len(psibars)):
            for l in range(k, len(psibars)):
                rest = d - psibars[k].degree() - psibars[l].degree()
                if rest < 0:
                    continue
                for m in _psibar_monomials(psibars, rest):
                    j2.append(psibars[k] * psibars[l] * m)
        # orthogonal complement of (J_H^2)_d inside (A^H)_d w.r.t. the
        # invariant pairing, expressed in the span of {gens_d} + J^2
        space = gens_d + j2
        space_solver = SparseSolver()
        basis = []
        for q in space:
            if space_solver.add(dict(q.terms)):
                basis.append(q)
        j2_reduced = []
        seen = SparseSolver()
        for q in j2:
            if seen.add(dict(q.terms)):
                j2_reduced.append(q)
        assert len(basis) - len(j2_reduced) == len(gens_d), \
            "Vbar dimension mismatch"
        # solve <v, z>_G = 0 for v in span(basis), z in j2_reduced
        coeff_rows = []
        for z in j2_reduced:
            coeff_rows.append([twisted_pairing(group, b, z) for b in basis])
        null = _nullspace(coeff_rows, len(basis), field)
        assert len(null) == len(gens_d)
        for vec in null:
            v = Poly.zero(group.rank, field)
            for c, b in zip(vec, basis):
                if c:
                    v = v + b.scale(c)
            vbar.append(v.content_normalized())
    # split off invariants; U = kernel of the Reynolds projection
    inv_basis = []
    u_basis = []
    inv_rank = SparseSolver()
    u_rank = SparseSolver()
    for v in vbar:
        av = group.reynolds(v)
        if not av.is_zero() and inv_rank.add(dict(av.terms)):
            inv_basis.append(av.content_normalized())
        ker = v - av
        if not ker.is_zero() and u_rank.add(dict(ker.terms)):
            u_basis.append(ker.content_normalized())
    assert len(inv_basis) + len(u_basis) == len(vbar), "Vbar split defect"
    u_degs = {y.degree() for y in u_basis}
    assert len(u_degs) == 1, "U not homogeneous"
    return UbarDecomposition(split, psibars, vbar, u_basis, inv_basis,
                             u_degs.pop())


def _psibar_monomials(psibars, degree):
    """All psibar-monomials (as polynomials) of the given total degree."""
    out = []

    def rec(i, d, acc):
        if d == 0:
            out.append(acc)
            return
        if i == len(psibars):
            return
        rec(i + 1, d, acc)
        if psibars[i].degree() <= d:
            rec(i, d - psibars[i].degree(), acc * psibars[i])

    rec(0, degree, Poly.constant(1, psibars[0].nv, psibars[0].field))
    return out


def _nullspace(rows, ncols, field):
    """Nullspace basis of a small dense system, deterministic."""
    solver = SparseSolver()
    for row in rows:
        solver.add({j: v for j, v in enumerate(row) if v})
    pivots = set(solver.pivots.keys())
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for fj in free:
        vec = [field.zero] * ncols
        vec[fj] = field.one
        # back-substitute: for each pivot row, solve pivot coordinate
        for pivot, idx in sorted(solver.pivots.items(), reverse=True):
            _, rvec, _ = solver.rows[idx]
            s = field.zero
            for j, c in rvec.items():
                if j != pivot:
                    s = s + c * vec[j]
            vec[pivot] = -s
        out.append(vec)
    return out


# ---------------------------------------------------------------------------
# K[U], the invariants phi_i, and the maps g_i, v_i
# ---------------------------------------------------------------------------

@dataclass
class TildeInvariants:
    dec: UbarDecomposition
    phis_y: list            # invariants in the y-variables (K[U])
    phis: list              # the same, expanded into A


def _expand_y(dec: UbarDecomposition, py: Poly) -> Poly:
    """Expand a polynomial in the y-variables into A."""
    group = dec.split.group
    out = Poly.zero(group.rank, group.field)
    for e, c in py.terms.items():
        term = Poly.constant(c, group.rank, group.field)
        for i, k in enumerate(e):
            for _ in range(k):
                term = term * dec.u_basis[i]
        out = out + term
    return out


def tilde_invariants(dec: UbarDecomposition, cb: CoinvariantBasis) -> TildeInvariants:
    group = dec.split.group
    field = group.field
    s = len(dec.u_basis)
    # induced action matrices of W on the y-variables (the image group)
    mats = {}
    for w in range(group.order):
        m = dec.u_action_matrix(dec.split.quotient[w])
        mats[m] = True
    action_group = list(mats.keys())
    assert len(action_group) == len(dec.split.wp_elements), \
        "U action does not factor through W_p"
    # basic invariants of the induced reflection action on K[U]
    phis_y = []
    for dy in range(2, s + 2):
        found = False
        for m in monomials_of_degree(s, dy):
            seed = Poly.monomial(m, 1, field)
            total = Poly.zero(s, field)
            for mat in action_group:
                # y_j -> sum_i mat[i][j] y_i, the induced ring map on K[U]
                forms = [Poly.linear_form([mat[i][j] for i in range(s)], field)
                         for j in range(s)]
                total = total + seed.substitute(forms)
            cand = total.scale(Fraction(1, len(action_group)))
            if cand.is_zero():
                continue
            cand = cand.content_normalized()
            if _jacobian_rank_y(phis_y + [cand], s, field) == len(phis_y) + 1:
                phis_y.append(cand)
                found = True
                break
        assert found, f"no K[U]^W invariant found in y-degree {dy}"
    phis = [_expand_y(dec, p).content_normalized() for p in phis_y]
    return TildeInvariants(dec, phis_y, phis)


def _jacobian_rank_y(polys, nv, field) -> int:
    k = len(polys)
    if k == 0:
        return 0
    jac = [[polys[j].partial(i) for j in range(k)] for i in range(nv)]
    for rows in combinations(range(nv), k):
        sub = [[jac[i][j] for j in range(k)] for i in rows]
        if not _poly_det(sub, k, field).is_zero():
            return k
    return k - 1


def u_target_space(stack: CovariantStack, dec: UbarDecomposition) -> TargetSpace:
    group = stack.group
    s = len(dec.u_basis)
    gram = [[twisted_pairing(group, a, b) for b in dec.u_basis]
            for a in dec.u_basis]
    gram_inv = invert_field_matrix(gram, group.field)
    action_cache = {}

    def action(widx):
        got = action_cache.get(widx)
        if got is None:
            got = dec.u_action_matrix(widx)
            action_cache[widx] = got
        return got

    return TargetSpace("U", s, tuple(tuple(r) for r in gram),
                       tuple(tuple(r) for r in gram_inv), action)


def make_g(stack: CovariantStack, dec: UbarDecomposition,
           tilde: TildeInvariants, uspace: TargetSpace, i: int) -> CovariantMap:
    """g_i(u) = pi(directional derivative of phi_i along u); the value at the
    basis vector y_k expands the direction through the invariant form, i.e.
    contracts the coordinate partials with the U-Gram matrix (identity when
    the basis is orthonormal)."""
    field = stack.group.field
    partials = [_expand_y(dec, tilde.phis_y[i - 1].partial(j))
                for j in range(uspace.dim)]
    comps = []
    for k in range(uspace.dim):
        total = Poly.zero(stack.group.rank, field)
        for j in range(uspace.dim):
            gkj = uspace.gram[k][j]
            if gkj and partials[j]:
                total = total + partials[j].scale(gkj)
        comps.append(stack.cb.nf_weil(Weil.from_poly(total)))
    return CovariantMap(stack, uspace, tuple(comps), f"g_{i}")


def make_v(stack: CovariantStack, dec: UbarDecomposition, g: CovariantMap,
           uspace: TargetSpace) -> CovariantMap:
    group = stack.group
    p_class = dec.split.p_class
    subset = list(group.reflection_classes[p_class])
    t_p = len(subset)
    scale = group.field.coerce(Fraction(uspace.dim, 2 * t_p))
    params = stack.params
    comps = tuple(dunkl(params, c, stack.cb, refl_subset=subset).scale(scale)
                  for c in g.comps)
    return CovariantMap(stack, uspace, comps, g.name.replace("g", "v"))


# ---------------------------------------------------------------------------
# the verification suite
# ---------------------------------------------------------------------------

def _wp_reflection_character(split: SplitGroupData):
    """Character of the reflection representation of W_p pulled back to W."""
    group = split.group
    field = group.field
    other = split.p_class
    basis = []
    for si, root in zip(group.simple_indices, group.simple_roots):
        k = next(k for k, (eidx, _) in enumerate(group.reflections)
                 if eidx == si)
        if group.refl_class_of[k] == other:
            basis.append(root)
    solver = SparseSolver()
    for v in basis:
        solver.add({i: c for i, c in enumerate(v) if c})

    def matrix_at(widx):
        wp = split.quotient[widx]
        w = group.elements[wp]
        cols = []
        for v in basis:
            img = tuple(sum((w[i][j] * v[j] for j in range(group.rank)),
                            field.zero) for i in range(group.rank))
            sol = solver.solve({i: c for i, c in enumerate(img) if c})
            assert sol is not None, "V_p not W_p-stable"
            cols.append([sol.get(t, field.zero) for t in range(len(basis))])
        return tuple(tuple(cols[j][i] for j in range(len(basis)))
                     for i in range(len(basis)))

    return group.character_from_action(matrix_at, name="refl_Wp"), matrix_at


def hilbert_quotient(y_degrees, nvars):
    """Coefficients of prod (1-t^{d}) / (1-t)^nvars for the H-tilde grading."""
    from .coinvariants import hilbert_coinvariants
    return hilbert_coinvariants(tuple(y_degrees), nvars)


def little_adjoint_suite(stack: CovariantStack,
                         use_class: int | None = None,
                         label: str = "little-adjoint") -> CheckRecord:
    t0 = time.time()
    group = stack.group
    cb = stack.cb
    field = group.field
    r = group.rank
    failures = []
    details: dict = {}
    if len(group.reflection_classes) != 2:
        return CheckRecord(label, group.code, FAIL,
                           {"witness": ["no length classes"]},
                           time.time() - t0)

    split = split_group(group, use_class)
    details["orientation"] = split.use_class
    details["orders"] = {"W": group.order, "H": len(split.h_elements),
                         "W_p": len(split.wp_elements)}
    details["r_ell"] = split.r_ell
    details["r_p"] = split.r_p

    psibars = subgroup_invariants(split)
    details["h_invariant_degrees"] = [p.degree() for p in psibars]

    dec = ubar_decomposition(split, psibars)
    s = len(dec.u_basis)
    if s != split.r_p:
        failures.append(f"dim U = {s} != r_p")
    if len(dec.inv_basis) != split.r_ell:
        failures.append(f"dim Vbar^W = {len(dec.inv_basis)} != r_ell")
    d_n = group.degrees[-1]
    q_poly = d_n // 2 - (split.r_p - 1) * split.r_ell
    if dec.u_degree != q_poly:
        failures.append(
            f"U degree {dec.u_degree} != d_n/2 - (r_p-1) r_ell = {q_poly}")
    details["u_degree"] = dec.u_degree

    # U carries the reflection representation of W_p: compare characters
    uspace = u_target_space(stack, dec)
    chi_u = uspace.character(group)
    chi_wp, _ = _wp_reflection_character(split)
    if chi_u.values != chi_wp.values:
        failures.append("character of U != reflection character of W_p")

    tilde = tilde_invariants(dec, cb)
    phi_degrees = [p.degree() for p in tilde.phis]
    details["phi_degrees"] = phi_degrees
    for i, phi in enumerate(tilde.phis, start=1):
        if phi.degree() != (i + 1) * q_poly:
            failures.append(f"phi_{i} degree {phi.degree()} != (i+1)q")
        if not cb.in_j(phi):
            failures.append(f"phi_{i} not in J")
    if phi_degrees and phi_degrees[-1] != d_n:
        failures.append(
            f"top phi degree {phi_degrees[-1]} != d_n = {d_n} (doubled 2 d_n)")

    # J-tilde = (phi_1, ..., phi_{r_p}) inside K[U], degree by degree
    top_y = max((i + 1) for i in range(1, s + 1))
    for k in range(1, top_y + 1):
        ymonos = monomials_of_degree(s, k)
        expans = [_expand_y(dec, Poly.monomial(m, 1, field)) for m in ymonos]
        # rank of A-degree-kq expansions inside H
        rk_solver = SparseSolver()
        rank_h = 0
        for q in expans:
            nf = cb.nf_poly(q)
            if nf and rk_solver.add(dict(nf.terms)):
                rank_h += 1
        dim_jcap = len(ymonos) - rank_h
        # the phi-ideal in y-coordinates
        ideal_solver = SparseSolver()
        dim_ideal = 0
        for i, phiy in enumerate(tilde.phis_y, start=1):
            rest = k - (i + 1)
            if rest < 0:
                continue
            for m in monomials_of_degree(s, rest):
                qy = phiy * Poly.monomial(m, 1, field)
                if ideal_solver.add(dict(qy.terms)):
                    dim_ideal += 1
        if dim_ideal != dim_jcap:
            failures.append(
                f"J-tilde mismatch in y-degree {k}: ideal {dim_ideal} vs "
                f"J cap A-tilde {dim_jcap}")
        # independence of the y-monomial expansions (K[U] is polynomial)
        ind = SparseSolver()
        for q in expans:
            if not ind.add(dict(q.terms)):
                failures.append(f"K[U] not free in y-degree {k}")
                break

    # H-tilde embeds in H with the correct graded dimensions
    y_degs = tuple(i + 1 for i in range(1, s + 1))
    htilde = hilbert_quotient(y_degs, s)
    for k, dim_k in enumerate(htilde):
        ymonos = monomials_of_degree(s, k)
        rk_solver = SparseSolver()
        rank_h = 0
        for m in ymonos:
            nf = cb.nf_poly(_expand_y(dec, Poly.monomial(m, 1, field)))
            if nf and rk_solver.add(dict(nf.terms)):
                rank_h += 1
        if rank_h != dim_k:
            failures.append(
                f"H-tilde -> H rank {rank_h} != dim {dim_k} in y-degree {k}")

    # the maps g_i, v_i
    gs = [make_g(stack, dec, tilde, uspace, i) for i in range(1, s + 1)]
    vs = [make_v(stack, dec, g, uspace) for g in gs]
    for i, (gmap, vmap) in enumerate(zip(gs, vs), start=1):
        if gmap.total_degree() != 2 * i * q_poly:
            failures.append(f"deg g_{i} != 2 i q")
        if not gmap.is_equivariant():
            failures.append(f"g_{i} not equivariant")
        if not vmap.is_equivariant():
            failures.append(f"v_{i} not equivariant")
        dv = tuple(koszul_delta(group, c, cb) for c in vmap.comps)
        if dv != gmap.comps:
            failures.append(f"delta v_{i} != g_{i}")
        dg = tuple(koszul_delta(group, c, cb) for c in gmap.comps)
        if not all(x.is_zero() for x in dg):
            failures.append(f"delta g_{i} != 0")

    # E-orthogonality and the m-constants pattern
    m_table = {}
    for i in range(1, s + 1):
        for j in range(i, s + 1):
            if not form_e(gs[i - 1], gs[j - 1]).is_zero():
                failures.append(f"E(g_{i},g_{j}) != 0")
            if not form_e(vs[i - 1], vs[j - 1]).is_zero():
                failures.append(f"E(v_{i},v_{j}) != 0")
    evg = {}
    for i in range(1, s + 1):
        for j in range(1, s + 1):
            e = form_e(vs[i - 1], gs[j - 1])
            evg[(i, j)] = e
    for i in range(1, s + 1):
        for j in range(1, s + 1):
            e = evg[(i, j)]
            if evg[(j, i)] != e:
                failures.append(f"E(v_{i},g_{j}) != E(v_{j},g_{i})")
            target = (i + j) * q_poly
            admissible = next((t + 1 for t, d in enumerate(group.degrees)
                               if d == target), None)
            if admissible is None:
                if not e.is_zero():
                    failures.append(f"E(v_{i},g_{j}) != 0 off the pattern")
                continue
            sol = stack.express_in_p_basis(e)
            want = 1 << (admissible - 1)
            if sol is None or set(sol.keys()) != {want}:
                failures.append(
                    f"E(v_{i},g_{j}) not a nonzero multiple of p_{admissible}")
                continue
            m_table[(i, j)] = sol[want]
    details["m_constants"] = {f"{i},{j}": scalar_str(v)
                              for (i, j), v in sorted(m_table.items())}

    # graded freeness of Hom_W(U, B): find the exterior subalgebra
    molien = graded_multiplicity_series(group, chi_u)
    if molien.total() != split.r_p * 2 ** r:
        failures.append("ungraded dim Hom_W(U,B) != r_p 2^r")
    candidates = [tuple(range(1, r))] + [
        c for c in combinations(range(1, r + 1), r - 1)
        if c != tuple(range(1, r))]
    free_subset = None
    for cand in candidates:
        series = GradedSeries.zero()
        for nsub in range(1 << len(cand)):
            mask = 0
            for t, idx in enumerate(cand):
                if nsub & (1 << t):
                    mask |= 1 << (idx - 1)
            dsub = sum(2 * group.degrees[idx - 1] - 1
                       for t, idx in enumerate(cand) if nsub & (1 << t))
            for i in range(1, s + 1):
                series = series + GradedSeries.monomial(dsub + 2 * i * q_poly)
                series = series + GradedSeries.monomial(dsub + 2 * i * q_poly - 1)
        if series == molien:
            free_subset = cand
            break
    if free_subset is None:
        failures.append("no (r-1)-subset of the p_i gives a free-basis series")
    else:
        by_degree: dict[int, list] = {}
        for nsub in range(1 << len(free_subset)):
            mask = 0
            for t, idx in enumerate(free_subset):
                if nsub & (1 << t):
                    mask |= 1 << (idx - 1)
            pprod = stack.p_product(mask)
            for gen in gs + vs:
                el = gen.mul_weil(pprod)
                if el.is_zero():
                    failures.append(f"free-basis element vanished (mask {mask})")
                    continue
                by_degree.setdefault(el.total_degree(), []).append(el)
        for d, els in sorted(by_degree.items()):
            solver = SparseSolver()
            for el in els:
                if not solver.add(map_vec(el.comps)):
                    failures.append(f"little-adjoint rank defect in degree {d}")
                    break
            if molien[d] != len(els):
                failures.append(
                    f"degree {d}: {len(els)} elements vs Molien {molien[d]}")
        details["free_subalgebra"] = [f"p_{i}" for i in free_subset]

    # multiplication by the top p: the analogue of the structure formulas
    p_top = stack.p(r)
    for i in range(1, s + 1):
        res_g = gs[i - 1].mul_weil(p_top)
        res_v = vs[i - 1].mul_weil(p_top)
        for j in range(1, s + 1):
            if j == i:
                continue
            m_j = m_table.get((j, s - j + 1))
            if m_j is None:
                continue
            coeff = evg[(s - j + 1, i)]       # E(g_i, v_{s-j+1})
            if coeff.is_zero():
                continue
            minv = scalar_inverse(m_j)
            res_g = res_g + gs[j - 1].mul_weil(coeff.scale(minv))
            res_v = res_v + vs[j - 1].mul_weil(coeff.scale(minv))
        if not res_g.is_zero():
            failures.append(f"p_r g_{i} structure residual nonzero")
        if not res_v.is_zero():
            failures.append(f"p_r v_{i} structure residual nonzero")

    if failures:
        details["witness"] = failures
    return CheckRecord(label, group.code, FAIL if failures else PASS,
                       details, time.time() - t0)
