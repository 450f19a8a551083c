import pytest
from hypothesis import given, settings, strategies as st

from scattered_lab.errors import BadElement, DegreeTooLarge, NonPrime, NotADivisor
from scattered_lab.field_tower import FieldSpec, field_from_json, make_field

from oracles import (
    irreducible_by_trial_division,
    order_by_walk,
    repeated_power,
    repeated_q_power,
)


def test_gf4_modulus_is_the_unique_irreducible_quadratic():
    T = make_field(2, 1, 2)
    assert T.modulus == (1, 1, 1)
    assert T.size == 4


def test_modulus_irreducibility_by_trial_division(tower):
    # the chosen modulus must be irreducible, certified by the naive oracle
    T = tower(5, 1, 4)
    assert irreducible_by_trial_division(list(T.modulus), 5)
    assert T.size == 625


def test_modulus_irreducibility_e2(tower):
    T = tower(3, 2, 3)
    assert T.q == 9 and T.size == 729
    assert irreducible_by_trial_division(list(T.modulus), 3)


def test_modulus_is_lex_first(tower):
    # nothing below the chosen candidate index may be irreducible
    T = tower(5, 1, 4)
    chosen = sum(c * 5**i for i, c in enumerate(T.modulus[:-1]))
    for v in range(chosen):
        coeffs = []
        w = v
        for _ in range(4):
            coeffs.append(w % 5)
            w //= 5
        coeffs.append(1)
        assert not irreducible_by_trial_division(coeffs, 5)


def test_determinism_and_json_roundtrip(tower):
    T = tower(5, 1, 4)
    T2 = make_field(5, 1, 4)
    assert T.spec() == T2.spec()
    T3 = field_from_json(T.spec().to_json())
    assert T3.spec() == T.spec()


def test_construction_errors():
    with pytest.raises(NonPrime):
        make_field(6, 1, 2)
    with pytest.raises(DegreeTooLarge):
        make_field(2, 1, 50)
    with pytest.raises(DegreeTooLarge):
        make_field(5, 1, 1)
    with pytest.raises(BadElement):
        make_field(2, 1, 2, modulus=[1, 0, 1])  # x^2 + 1 = (x+1)^2


def test_frobenius_examples(tower):
    T = tower(5, 1, 4)
    g = T.gen_code
    assert T.frob_code(g, 0) == g
    # subfield elements are fixed pointwise
    for c in T.subfield_elements(1):
        for k in range(4):
            assert T.frob_code(c, k) == c
    # x = g, k = 2 -> g^25, against the repeated-5th-powering oracle
    assert T.frob_code(g, 2) == repeated_q_power(T, g, 2)
    assert T.frob_code(g, 2) == T.pow_code(g, 25)


def test_frobenius_order_and_additivity(tower):
    T = tower(5, 1, 4)
    rng = T.rng("frobtest")
    for _ in range(50):
        a, b = rng.randrange(625), rng.randrange(625)
        assert T.frob_code(a, T.n) == a
        for k in range(T.n):
            assert T.frob_code(T.add_code(a, b), k) == \
                T.add_code(T.frob_code(a, k), T.frob_code(b, k))


def test_rel_norm_examples(tower):
    T = tower(5, 1, 4)
    g = T.gen_code
    assert T.rel_norm_code(1, 2) == 1
    assert T.rel_norm_code(0, 1) == 0
    # N_{q^4/q}(g) = g^156 by the direct exponentiation oracle
    assert T.rel_norm_code(g, 1) == repeated_power(T, g, 156)
    with pytest.raises(NotADivisor):
        T.rel_norm_code(g, 3)


def test_norm_multiplicative_and_lands_in_subfield(tower):
    T = tower(5, 1, 4)
    rng = T.rng("normtest")
    for t in (1, 2, 4):
        for _ in range(30):
            a, b = rng.randrange(1, 625), rng.randrange(1, 625)
            na, nb = T.rel_norm_code(a, t), T.rel_norm_code(b, t)
            assert T.rel_norm_code(T.mul_code(a, b), t) == T.mul_code(na, nb)
            assert T.subfield_member_code(na, t)


def test_subfield_membership(tower):
    T = tower(5, 1, 4)
    g = T.gen_code
    for t in (1, 2, 4):
        assert T.subfield_member_code(0, t)
        assert T.subfield_member_code(1, t)
    assert not T.subfield_member_code(g, 1)
    assert not T.subfield_member_code(g, 2)
    # g^26 lies in F_25: verified by the x^25 = x oracle
    x = T.pow_code(g, 26)
    assert repeated_power(T, x, 25) == x
    assert T.subfield_member_code(x, 2)


def test_subfield_sizes(tower):
    for (p, e, n) in ((5, 1, 4), (3, 2, 3)):
        T = tower(p, e, n)
        for t in range(1, n + 1):
            if n % t:
                continue
            members = [c for c in range(T.size) if T.subfield_member_code(c, t)]
            assert len(members) == T.q**t
            assert sorted(T.subfield_elements(t)) == members


def test_subfield_primitive_orders(tower):
    T = tower(5, 1, 4)
    assert T.subfield_primitive_code(4) == T.gen_code
    assert order_by_walk(T, T.subfield_primitive_code(1)) == 4
    assert order_by_walk(T, T.subfield_primitive_code(2)) == 24
    for t in (1, 2, 4):
        assert T.order_of(T.subfield_primitive_code(t)) == T.q**t - 1


def test_generator_is_primitive(tower):
    T = tower(5, 1, 4)
    assert T.order_of(T.gen_code) == 624
    T9 = tower(3, 2, 3)
    assert T9.order_of(T9.gen_code) == 728


@settings(max_examples=60, deadline=None)
@given(a=st.integers(0, 624), b=st.integers(0, 624), c=st.integers(0, 624))
def test_field_axioms(a, b, c):
    T = make_field(5, 1, 4)
    assert T.add_code(a, b) == T.add_code(b, a)
    assert T.mul_code(a, b) == T.mul_code(b, a)
    assert T.add_code(T.add_code(a, b), c) == T.add_code(a, T.add_code(b, c))
    assert T.mul_code(T.mul_code(a, b), c) == T.mul_code(a, T.mul_code(b, c))
    assert T.mul_code(a, T.add_code(b, c)) == \
        T.add_code(T.mul_code(a, b), T.mul_code(a, c))
    if a:
        assert T.mul_code(a, T.inv_code(a)) == 1


def test_element_operator_sugar(tower):
    T = tower(5, 1, 4)
    g = T.gen
    assert (g + 1 - 1) == g
    assert (g * g) == g**2
    assert (g / g) == T.one
    assert (-g) + g == T.zero
    assert g.frob(1) == g**5
    assert g.norm(1).in_subfield(1)
    assert hash(g) == hash(T.el(T.gen_code))


def test_element_parsing_and_formatting(tower):
    T = tower(5, 1, 4)
    assert T.parse_element("0") == 0
    assert T.parse_element("1") == 1
    assert T.parse_element("g") == T.gen_code
    assert T.parse_element("g^10") == T.pow_code(T.gen_code, 10)
    assert T.parse_element(7) == 2
    assert T.parse_element([1, 2, 0, 3]) == 1 + 2 * 5 + 3 * 125
    assert T.format_code(0) == "0"
    k = 123
    assert T.format_code(T.pow_code(T.gen_code, k)) == f"g^{k}"
    with pytest.raises(BadElement):
        T.parse_element("h^2")
    with pytest.raises(BadElement):
        T.parse_element([1, 2])


def test_no_table_fallback_agrees(tower):
    T = tower(5, 1, 4)
    Tn = make_field(5, 1, 4, table_bound=0)
    assert not Tn.has_tables
    rng = T.rng("fallback")
    for _ in range(100):
        a, b = rng.randrange(625), rng.randrange(625)
        assert Tn.mul_code(a, b) == T.mul_code(a, b)
        if a:
            assert Tn.inv_code(a) == T.inv_code(a)
            assert Tn.dlog(a) == T.dlog(a)
        assert Tn.frob_code(a, 3) == T.frob_code(a, 3)
    assert Tn.sqrt_code(T.mul_code(17, 17)) in (17, Tn.neg_code(17))


def test_quadratic_solver_odd_and_even_char(tower):
    T = tower(5, 1, 4)
    rng = T.rng("quad")
    for _ in range(40):
        r1, r2 = rng.randrange(625), rng.randrange(625)
        b = T.neg_code(T.add_code(r1, r2))
        c = T.mul_code(r1, r2)
        assert set(T.solve_quadratic(b, c)) == {r1, r2}
    T2 = tower(2, 2, 4)
    rng = T2.rng("quad2")
    for _ in range(40):
        b, c = rng.randrange(256), rng.randrange(256)
        for r in T2.solve_quadratic(b, c):
            val = T2.add_code(T2.add_code(T2.mul_code(r, r), T2.mul_code(b, r)), c)
            assert val == 0


def test_spec_dataclass_roundtrip():
    spec = FieldSpec(5, 1, 4, (2, 0, 0, 0, 1), 6, 0)
    doc = spec.to_json()
    assert doc["p"] == 5 and doc["modulus"] == [2, 0, 0, 0, 1]
