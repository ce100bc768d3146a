import random
from itertools import product

import pytest

from incalg import (
    ClassificationError,
    FIElement,
    GateError,
    InfiniteFieldError,
    LinearMap,
    ParseError,
    PartitionEndo,
    PreserverSpec,
    XorEndo,
    basis_element,
    build_preserver,
    builtin_poset,
    classify,
    extract_radical_map,
    extract_subset_map,
    format_linear_map,
    format_preserver_spec,
    is_jordan_endo,
    is_strong,
    parse_element,
    parse_linear_map,
    parse_preserver_spec,
    preserves_idempotents,
    preserves_inverses,
    preserves_invertibility,
    random_preserver_spec,
)
from incalg.preservers import (
    find_jordan_counterexample,
    find_nonpreserved_unit,
    find_strongness_counterexample,
    spanning_idempotents,
)

from conftest import F2, F3, F5, Q

CHAIN2 = builtin_poset("chain:2")
CHAIN3 = builtin_poset("chain:3")
ANTI2 = builtin_poset("antichain:2")
ANTI3 = builtin_poset("antichain:3")


def zero_psi(poset, field):
    return LinearMap.zero(poset, field)


def radical_projection(poset, field):
    n, d = poset.n, poset.dimension
    rows = [[1 if (i == j and i >= n) else 0 for j in range(d)] for i in range(d)]
    return LinearMap.from_rows(poset, field, rows)


def char2_counterexample_map():
    """The inverse-preserving, non-Jordan map on the 3-chain over F_2."""
    e = {pair: basis_element(CHAIN3, F2, *pair) for pair in CHAIN3.basis_pairs}
    return LinearMap.from_basis_images(CHAIN3, F2, {
        ("1", "1"): e[("1", "1")],
        ("2", "2"): e[("1", "1")] + e[("2", "2")],
        ("3", "3"): e[("1", "1")] + e[("3", "3")],
        ("1", "2"): e[("1", "2")],
        ("1", "3"): FIElement.zero(CHAIN3, F2),
        ("2", "3"): FIElement.zero(CHAIN3, F2),
    })


def test_apply_identity_and_zero():
    a = parse_element("1*e[1] + 2*e[2] + 1*e[1,2]", CHAIN2, F3)
    assert LinearMap.identity(CHAIN2, F3).apply(a) == a
    assert LinearMap.zero(CHAIN2, F3).apply(a) == FIElement.zero(CHAIN2, F3)


def test_char2_map_diagonal_images():
    phi = char2_counterexample_map()
    e_2 = basis_element(CHAIN3, F2, "2", "2")
    assert phi.apply(e_2) == parse_element("e[1] + e[2]", CHAIN3, F2)
    assert phi.is_unital()
    e_12 = basis_element(CHAIN3, F2, "1", "2")
    assert phi.apply(e_12) == e_12


def test_build_identity_spec_gives_identity_map():
    endo = PartitionEndo(CHAIN2.elements, (0b01, 0b10))
    spec = PreserverSpec(CHAIN2, F3, endo, radical_projection(CHAIN2, F3))
    assert build_preserver(spec) == LinearMap.identity(CHAIN2, F3)


def test_build_diagonal_truncation():
    endo = PartitionEndo(CHAIN2.elements, (0b01, 0b10))
    spec = PreserverSpec(CHAIN2, F3, endo, zero_psi(CHAIN2, F3))
    phi = build_preserver(spec)
    a = parse_element("1*e[1] + 2*e[2] + 1*e[1,2]", CHAIN2, F3)
    assert phi.apply(a) == a.decompose()[0]
    assert is_strong(phi)


def test_build_z2_antichain_example():
    # diagonal action alpha -> (a_xx + a_yy + a_zz) e_x + a_yy e_y + a_zz e_z
    endo = XorEndo(ANTI3.elements, (0b001, 0b011, 0b101))
    spec = PreserverSpec(ANTI3, F2, endo, zero_psi(ANTI3, F2))
    phi = build_preserver(spec)
    assert phi.apply(basis_element(ANTI3, F2, "1", "1")) == parse_element("e[1]", ANTI3, F2)
    assert phi.apply(basis_element(ANTI3, F2, "2", "2")) == parse_element(
        "e[1] + e[2]", ANTI3, F2)
    assert phi.apply(basis_element(ANTI3, F2, "3", "3")) == parse_element(
        "e[1] + e[3]", ANTI3, F2)
    assert phi.is_unital()
    assert is_strong(phi)


def test_spec_validation():
    endo = PartitionEndo(CHAIN2.elements, (0b01, 0b10))
    with pytest.raises(Exception, match="annihilate delta"):
        PreserverSpec(CHAIN2, F3, endo, LinearMap.from_rows(
            CHAIN2, F3, [[0, 0, 0], [0, 0, 0], [1, 0, 0]]))
    with pytest.raises(Exception, match="diagonal-output rows"):
        PreserverSpec(CHAIN2, F3, endo, LinearMap.identity(CHAIN2, F3))
    with pytest.raises(Exception, match="GF\\(2\\)-matrix form"):
        PreserverSpec(CHAIN2, F2, endo, zero_psi(CHAIN2, F2))
    xor = XorEndo(CHAIN2.elements, (0b01, 0b10))
    with pytest.raises(Exception, match="partition form"):
        PreserverSpec(CHAIN2, F3, xor, zero_psi(CHAIN2, F3))


def test_extract_subset_map_identity():
    table = extract_subset_map(LinearMap.identity(CHAIN2, F3))
    assert table.table == (0b00, 0b01, 0b10, 0b11)


def test_extract_subset_map_rejects_scaling():
    phi = LinearMap.identity(CHAIN2, F3).scale(F3.scalar(2))
    with pytest.raises(ClassificationError, match="from-vf-to-lb") as err:
        extract_subset_map(phi)
    assert "diagonal value 2" in str(err.value)


def test_extract_radical_map():
    assert extract_radical_map(LinearMap.identity(CHAIN2, F3)) == radical_projection(CHAIN2, F3)
    endo = PartitionEndo(CHAIN2.elements, (0b01, 0b10))
    truncation = build_preserver(PreserverSpec(CHAIN2, F3, endo, zero_psi(CHAIN2, F3)))
    assert extract_radical_map(truncation) == zero_psi(CHAIN2, F3)
    phi = char2_counterexample_map()
    psi = extract_radical_map(phi)
    e_12 = basis_element(CHAIN3, F2, "1", "2")
    assert psi.apply(e_12) == e_12
    assert psi.apply(basis_element(CHAIN3, F2, "1", "3")).is_zero()
    assert psi.apply(basis_element(CHAIN3, F2, "2", "3")).is_zero()
    for x in CHAIN3.elements:
        assert psi.apply(basis_element(CHAIN3, F2, x, x)).is_zero()


def test_is_unital():
    assert LinearMap.identity(CHAIN2, F3).is_unital()
    assert not LinearMap.identity(CHAIN2, F5).scale(F5.scalar(2)).is_unital()
    assert char2_counterexample_map().is_unital()


def test_preserves_invertibility_basic():
    assert preserves_invertibility(LinearMap.identity(CHAIN2, F3))
    endo = PartitionEndo(CHAIN2.elements, (0b01, 0b10))
    truncation = build_preserver(PreserverSpec(CHAIN2, F3, endo, zero_psi(CHAIN2, F3)))
    assert preserves_invertibility(truncation)


def test_swap_of_diagonal_and_radical_coordinates_is_not_a_preserver():
    # e_1 <-> e_12, identity elsewhere: a diagonal row reads a radical input
    phi = LinearMap.from_rows(CHAIN2, F3, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
    witness = find_nonpreserved_unit(phi)
    assert witness is not None
    assert witness.is_unit()
    assert not phi.apply(witness).is_unit()


def test_nonpreserved_unit_witness_from_diagonal_scan():
    # diagonal row (2, 2) kills the unit diag(1, 2) over F_3
    phi = LinearMap.from_rows(ANTI2, F3, [[2, 2], [0, 1]])
    witness = find_nonpreserved_unit(phi)
    assert witness is not None
    assert witness.is_unit() and not phi.apply(witness).is_unit()


def test_preserves_invertibility_rejects_rationals():
    with pytest.raises(InfiniteFieldError):
        preserves_invertibility(LinearMap.identity(CHAIN2, Q))


def test_strongness_examples():
    endo = PartitionEndo(CHAIN2.elements, (0b01, 0b10))
    truncation = build_preserver(PreserverSpec(CHAIN2, F3, endo, zero_psi(CHAIN2, F3)))
    assert is_strong(truncation)

    collapse = PartitionEndo(ANTI2.elements, (0b11, 0b00))
    phi = build_preserver(PreserverSpec(ANTI2, F3, collapse, zero_psi(ANTI2, F3)))
    counterexample = find_strongness_counterexample(phi)
    assert counterexample is not None
    assert not counterexample.is_unit()
    assert phi.apply(counterexample).is_unit()
    # phi(e_1) = delta: the non-unit e_1 hits a unit
    assert phi.apply(basis_element(ANTI2, F3, "1", "1")) == FIElement.delta(ANTI2, F3)


def test_is_strong_requires_a_unital_preserver():
    with pytest.raises(ValueError):
        is_strong(LinearMap.zero(CHAIN2, F3))


def test_preserves_inverses_examples():
    assert preserves_inverses(LinearMap.identity(CHAIN2, F3))
    assert preserves_inverses(char2_counterexample_map())
    endo = PartitionEndo(CHAIN2.elements, (0b01, 0b10))
    truncation = build_preserver(PreserverSpec(CHAIN2, F3, endo, zero_psi(CHAIN2, F3)))
    assert preserves_inverses(truncation)


def test_jordan_examples():
    assert is_jordan_endo(LinearMap.identity(CHAIN2, F3))
    # reversal onto the dual chain: an anti-automorphism, hence Jordan
    reversal = LinearMap.from_rows(CHAIN2, F3, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    assert is_jordan_endo(reversal)
    phi = char2_counterexample_map()
    assert not is_jordan_endo(phi)
    a, b = find_jordan_counterexample(phi)
    assert a == basis_element(CHAIN3, F2, "2", "2")
    assert b == basis_element(CHAIN3, F2, "1", "2")


def test_reversal_map_is_an_anti_endomorphism():
    reversal = LinearMap.from_rows(CHAIN2, F3, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    for vals_a in product(range(3), repeat=3):
        for vals_b in product(range(3), repeat=3):
            a = FIElement.from_vector(CHAIN2, F3, vals_a)
            b = FIElement.from_vector(CHAIN2, F3, vals_b)
            assert reversal.apply(a * b) == reversal.apply(b) * reversal.apply(a)


def test_preserves_idempotents():
    assert preserves_idempotents(LinearMap.identity(CHAIN2, F3))
    endo = PartitionEndo(CHAIN2.elements, (0b01, 0b10))
    truncation = build_preserver(PreserverSpec(CHAIN2, F3, endo, zero_psi(CHAIN2, F3)))
    e = basis_element(CHAIN2, F3, "1", "1") + basis_element(CHAIN2, F3, "1", "2")
    assert truncation.apply(e) == basis_element(CHAIN2, F3, "1", "1")
    assert preserves_idempotents(truncation)
    with pytest.raises(InfiniteFieldError):
        preserves_idempotents(LinearMap.identity(CHAIN2, Q))


def test_spanning_family_members_are_idempotent():
    for field in (F2, F3, Q):
        for e in spanning_idempotents(CHAIN3, field):
            assert e.is_idempotent()


def test_round_trip_exhaustive_tiny_and_randomized():
    from incalg import enumerate_specs

    for poset, field in ((CHAIN2, F2), (CHAIN2, F3), (ANTI2, F2), (ANTI2, F3)):
        for spec in enumerate_specs(poset, field):
            assert classify(build_preserver(spec)) == spec
    rng = random.Random(2024)
    for _ in range(25):
        poset = random.Random(rng.random()).choice([CHAIN2, CHAIN3, ANTI3])
        field = random.Random(rng.random()).choice([F2, F3, F5, Q])
        spec = random_preserver_spec(poset, field, rng)
        assert classify(build_preserver(spec)) == spec


def test_built_preservers_pass_the_oracle_and_laws():
    rng = random.Random(99)
    delta3 = FIElement.delta(CHAIN2, F3)
    for _ in range(20):
        spec = random_preserver_spec(CHAIN2, F3, rng)
        phi = build_preserver(spec)
        assert phi.is_unital()
        assert preserves_invertibility(phi)
        # radical maps into the radical, diagonals only feed diagonals
        assert phi.apply(basis_element(CHAIN2, F3, "1", "2")).decompose()[0].is_zero()
        for vals in product(range(3), repeat=3):
            a = FIElement.from_vector(CHAIN2, F3, vals)
            assert phi.apply(a).diagonal() == phi.apply(a.decompose()[0]).diagonal()
    del delta3


def test_extracted_endo_structure_matches_field_regime():
    rng = random.Random(5)
    for _ in range(10):
        spec = random_preserver_spec(CHAIN2, F3, rng)
        table = extract_subset_map(build_preserver(spec))
        from incalg import is_boolean_endo, is_separating

        assert is_separating(table)
        assert is_boolean_endo(table)
    for _ in range(10):
        spec = random_preserver_spec(CHAIN2, F2, rng)
        table = extract_subset_map(build_preserver(spec))
        full = 0b11
        assert table.table[full] == full
        for a in range(4):
            for b in range(4):
                assert table.table[a ^ b] == table.table[a] ^ table.table[b]


def test_gate_errors():
    big = builtin_poset("chain:7")
    with pytest.raises(GateError):
        preserves_invertibility(LinearMap.identity(big, F3))
    five = builtin_poset("chain:5")
    with pytest.raises(GateError):
        preserves_inverses(LinearMap.identity(five, F3))


def test_linear_map_file_round_trip(tmp_path):
    phi = char2_counterexample_map()
    text = format_linear_map(phi)
    assert parse_linear_map(text) == phi
    # cross-checks against explicit poset/field
    assert parse_linear_map(text, poset=CHAIN3, field=F2) == phi
    with pytest.raises(ParseError, match="different field"):
        parse_linear_map(text, field=F3)
    with pytest.raises(ParseError, match="different poset"):
        parse_linear_map(text, poset=CHAIN2)


def test_linear_map_file_errors():
    bad_rows = "map\nfield: Fp 3\nposet: chain:2\n1 0\n0 1\n"
    with pytest.raises(ParseError, match="expected 3 entries"):
        parse_linear_map(bad_rows)
    missing = "map\nfield: Fp 3\nposet: chain:2\n1 0 0\n0 1 0\n"
    with pytest.raises(ParseError, match="expected 3 matrix rows"):
        parse_linear_map(missing)


def test_spec_file_round_trip():
    endo = PartitionEndo(CHAIN2.elements, (0b10, 0b01))
    psi = LinearMap.from_rows(CHAIN2, F3, [[0, 0, 0], [0, 0, 0], [1, 2, 2]])
    spec = PreserverSpec(CHAIN2, F3, endo, psi)
    text = format_preserver_spec(spec)
    assert parse_preserver_spec(text) == spec
    xspec = PreserverSpec(CHAIN2, F2, XorEndo(CHAIN2.elements, (0b11, 0b00)),
                          LinearMap.from_rows(CHAIN2, F2, [[0] * 3, [0] * 3, [1, 1, 1]]))
    assert parse_preserver_spec(format_preserver_spec(xspec)) == xspec


def test_spec_file_round_trip_with_empty_psi_block():
    endo = PartitionEndo(ANTI2.elements, (0b10, 0b01))
    spec = PreserverSpec(ANTI2, F3, endo, LinearMap.zero(ANTI2, F3))
    text = format_preserver_spec(spec)
    assert text.endswith("psi:\n")
    assert parse_preserver_spec(text) == spec


def test_unital_inverse_preservers_over_f5_preserve_idempotents():
    reversal = LinearMap.from_rows(CHAIN2, F5, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    truncation = LinearMap.from_rows(CHAIN2, F5, [[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    for phi in (LinearMap.identity(CHAIN2, F5), reversal, truncation):
        assert preserves_inverses(phi)
        assert preserves_idempotents(phi)


def test_spec_file_rejects_psi_not_annihilating_delta():
    text = ("preserver-spec\nfield: Fp 3\nposet: chain:2\n"
            "lambda: 1->{1} 2->{2}\npsi:\n1 0 0\n")
    with pytest.raises(ParseError, match="annihilate delta"):
        parse_preserver_spec(text)
