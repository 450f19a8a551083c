import pytest

from scattered_lab.errors import AllScalar, NoTransversals, NotAField, NotScattered
from scattered_lab.linearized import LinearizedPoly
from scattered_lab.scatter import linear_set, subspace_membership
from scattered_lab.stabilizer import (
    Mat2,
    MatrixField,
    compute_stabilizer,
    diagonalize,
    transversal_points,
    verify_field,
)


def test_pseudoregulus_exact_set(tower):
    T = tower(5, 1, 4)
    for s in (1, 3):
        Mf = compute_stabilizer(LinearizedPoly.monomial(T, s))
        assert Mf.verified and Mf.t == 4
        predicted = {(al, 0, 0, T.frob_code(al, s)) for al in range(1, 625)}
        predicted.add((0, 0, 0, 0))
        assert Mf.element_set() == frozenset(predicted)


def test_lp_dichotomy(tower):
    from scattered_lab.families import find_lp_delta, make_lp

    T4 = tower(5, 1, 4)
    Mf = compute_stabilizer(make_lp(T4, 1, find_lp_delta(T4)).poly)
    assert Mf.t == 2 and Mf.group_order == 24
    diag = diagonalize(Mf)
    assert diag.P.is_identity() and diag.s == 1
    T5 = tower(5, 1, 5)
    Mf5 = compute_stabilizer(make_lp(T5, 1, find_lp_delta(T5)).poly)
    assert Mf5.t == 1 and Mf5.group_order == 4


def test_soundness_exhaustive(tower):
    # every returned matrix maps every point of U_f back into U_f
    T = tower(3, 1, 3)
    f = LinearizedPoly.monomial(T, 1)
    Mf = compute_stabilizer(f)
    for m in Mf.elements:
        for xc in range(27):
            pt = m.apply((xc, f.evaluate_code(xc)))
            assert subspace_membership(f, pt)


def test_completeness_random_audit(tower):
    T = tower(5, 1, 4)
    f = LinearizedPoly.monomial(T, 1)
    Mf = compute_stabilizer(f)
    eset = Mf.element_set()
    rng = T.rng("completeness")
    audited = 0
    while audited < 1000:
        m = Mat2(T, rng.randrange(625), rng.randrange(625),
                 rng.randrange(625), rng.randrange(625))
        if m.det() == 0 or m.entries() in eset:
            continue
        violated = any(
            not subspace_membership(f, m.apply((xc, f.evaluate_code(xc))))
            for xc in range(1, 625))
        assert violated
        audited += 1


def test_not_scattered_raises_and_unverified_path(tower):
    T = tower(5, 1, 4)
    f = LinearizedPoly.identity(T)
    with pytest.raises(NotScattered):
        compute_stabilizer(f)
    # the solution space of f = x is huge (3 en-dimensional); it comes back
    # as an unenumerated kernel basis
    raw = compute_stabilizer(f, check_scattered=False)
    assert not raw.verified and not raw.scattered_input
    assert not raw.enumerated and raw.solution_dim == 3 * T.en
    # a small non-scattered example enumerates fully and contains singular
    # nonzero solutions, so it cannot be a field
    T3 = tower(3, 1, 3)
    raw3 = compute_stabilizer(LinearizedPoly.identity(T3), check_scattered=False)
    assert raw3.enumerated and not raw3.verified
    assert any(not m.is_zero() and m.det() == 0 for m in raw3.elements)


def test_order_q_to_t_divides_n(tower):
    from scattered_lab.families import catalog

    for key in ((3, 1, 4), (5, 1, 4)):
        T = tower(*key)
        for inst in catalog(T):
            Mf = compute_stabilizer(inst.poly)
            assert Mf.order == T.q**Mf.t
            assert T.n % Mf.t == 0
            assert Mf.group_order == inst.predicted_order


def test_non_pseudoregulus_has_proper_subfield(tower):
    from scattered_lab.families import catalog

    T = tower(5, 1, 6)
    for inst in catalog(T):
        Mf = compute_stabilizer(inst.poly)
        if inst.family_id != 1:
            assert Mf.t < T.n


def test_verify_field_on_manual_sets(tower):
    T = tower(5, 1, 4)
    # the scalar field {d I : d in F_q} with zero
    elems = [Mat2.scalar(T, c) for c in T.subfield_elements(1)]
    Mf = MatrixField(T, None, tuple(elems), (Mat2.identity(T),))
    t, gen = verify_field(Mf)
    assert t == 1 and gen.power(4).is_identity()
    # a broken set: drop one element
    broken = MatrixField(T, None, tuple(elems[:-2] + [elems[-1]]), (Mat2.identity(T),))
    with pytest.raises(NotAField):
        verify_field(broken)
    # a set with a singular nonzero element
    bad = MatrixField(T, None, tuple(elems + [Mat2(T, 1, 1, 1, 1)]), (Mat2.identity(T),))
    with pytest.raises(NotAField):
        verify_field(bad)


def test_diagonalize_pseudoregulus_is_identity(tower):
    T = tower(5, 1, 4)
    Mf = compute_stabilizer(LinearizedPoly.monomial(T, 1))
    diag = diagonalize(Mf)
    assert diag.P.is_identity()
    assert diag.s == 1 and diag.t == 4
    assert diag.eigen_points == ((1, 0), (0, 1))


def test_diagonalize_conjugates_everything(tower):
    from scattered_lab.families import find_psi_h, make_psi, psi_theta

    T = tower(5, 1, 6)
    h = find_psi_h(T, 3)
    Mf = compute_stabilizer(make_psi(T, h, 3, 1).poly)
    diag = diagonalize(Mf)
    Pinv = diag.P.inverse()
    for m in Mf.elements:
        c = diag.P * m * Pinv
        assert c.b == 0 and c.c == 0
    # the diagonal pairs are Frobenius-linked with exponent s
    for x, y in diag.diag_pairs:
        assert T.frob_code(x, diag.s) == y
    theta = psi_theta(T, h, 3, 1)
    assert set(diag.eigen_points) == {(1, theta), (1, T.neg_code(theta))}


def test_diagonalize_char2(tower):
    # Lunardon-Polverino over F_4 with n = 4 exercises the char-2 quadratic path
    from scattered_lab.families import find_lp_delta, make_lp

    T = tower(2, 2, 4)
    lp = make_lp(T, 1, find_lp_delta(T))
    Mf = compute_stabilizer(lp.poly)
    assert Mf.t == 2 and Mf.group_order == 15
    diag = diagonalize(Mf)
    for x, y in diag.diag_pairs:
        assert T.frob_code(x, diag.s) == y


def test_diagonalize_all_scalar_raises(tower):
    T = tower(5, 1, 5)
    from scattered_lab.families import find_lp_delta, make_lp

    Mf = compute_stabilizer(make_lp(T, 1, find_lp_delta(T)).poly)
    with pytest.raises(AllScalar):
        diagonalize(Mf)


def test_transversal_points(tower):
    T = tower(5, 1, 4)
    X, Y = transversal_points(LinearizedPoly.monomial(T, 1))
    assert {X, Y} == {(1, 0), (0, 1)}
    # never on the linear set
    for f in (LinearizedPoly.monomial(T, 1), LinearizedPoly(T, [0, 1, 0, T.gen_code])):
        X, Y = transversal_points(f)
        L = linear_set(f)
        for pt in (X, Y):
            if pt[0] == 1:
                assert not L.contains_slope(pt[1])
    from scattered_lab.families import find_lp_delta, make_lp

    T5 = tower(5, 1, 5)
    with pytest.raises(NoTransversals):
        transversal_points(make_lp(T5, 1, find_lp_delta(T5)).poly)


def test_scalars_always_present(tower):
    # every stabilizer contains the q - 1 scalar maps over F_q
    from scattered_lab.families import catalog

    T = tower(5, 1, 4)
    for inst in catalog(T):
        Mf = compute_stabilizer(inst.poly)
        for c in T.subfield_elements(1)[:-1]:
            assert Mf.contains(Mat2.scalar(T, c))


def test_mat2_algebra(tower):
    T = tower(5, 1, 4)
    rng = T.rng("mat2")
    for _ in range(20):
        m = Mat2(T, *(rng.randrange(625) for _ in range(4)))
        if m.det() == 0:
            continue
        assert (m * m.inverse()).is_identity()
        assert m.power(3) == m * m * m
        pt = (rng.randrange(625), rng.randrange(625))
        via = m.apply(pt)
        back = m.inverse().apply(via)
        assert back == pt
