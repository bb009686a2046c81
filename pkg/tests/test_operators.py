import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slnet import (MalformedOperatorError, NotSemilatticeError, OperatorTable,
                   SchemaError, and_operator, extend_with_neutral,
                   find_absorbent, find_neutral, fold, max_operator,
                   min_operator, operator_from_json, or_operator,
                   semilattice_to_lattice, validate_operator)

XOR = OperatorTable(2, ((0, 1), (1, 0)), name="XOR")
# x op y = x*x*y mod 3: associative and idempotent, not commutative
SQUARE_MUL = OperatorTable(
    3, tuple(tuple((x * x * y) % 3 for y in range(3)) for x in range(3)),
    name="x^2y")
# x op y = 2x + 2y mod 3: commutative and idempotent, not associative
DOUBLE_SUM = OperatorTable(
    3, tuple(tuple((2 * x + 2 * y) % 3 for y in range(3)) for x in range(3)),
    name="2x+2y")
# two incomparable elements over a bottom: a semilattice with no neutral
FLAT3 = OperatorTable(
    3, ((0, 0, 0), (0, 1, 0), (0, 0, 2)), name="flat3")

SEMILATTICES = [and_operator(), or_operator(), min_operator(3), max_operator(4),
                FLAT3, min_operator(1)]


def test_malformed_tables_rejected():
    with pytest.raises(MalformedOperatorError):
        OperatorTable(2, ((0, 1),))                   # missing row
    with pytest.raises(MalformedOperatorError):
        OperatorTable(2, ((0, 1), (1,)))              # ragged
    with pytest.raises(MalformedOperatorError):
        OperatorTable(2, ((0, 1), (1, 2)))            # entry out of range
    with pytest.raises(MalformedOperatorError):
        OperatorTable(0, ())


def test_min_satisfies_all_axioms():
    report = validate_operator(min_operator(3))
    assert report.all_hold
    assert report.witnesses == {}


def test_xor_fails_idempotence_only():
    report = validate_operator(XOR)
    assert report.commutative and report.associative and not report.idempotent
    (x,) = report.witnesses["idempotent"]
    assert x == 1
    assert XOR(x, x) != x


def test_square_mul_fails_commutativity_only():
    report = validate_operator(SQUARE_MUL)
    assert report.associative and report.idempotent and not report.commutative
    x, y = report.witnesses["commutative"]
    assert SQUARE_MUL(x, y) != SQUARE_MUL(y, x)


def test_double_sum_fails_associativity_only():
    report = validate_operator(DOUBLE_SUM)
    assert report.commutative and report.idempotent and not report.associative
    x, y, z = report.witnesses["associative"]
    assert DOUBLE_SUM(x, DOUBLE_SUM(y, z)) != DOUBLE_SUM(DOUBLE_SUM(x, y), z)


def test_witness_iff_flag_false():
    for op in SEMILATTICES + [XOR, SQUARE_MUL, DOUBLE_SUM]:
        report = validate_operator(op)
        for axiom in ("commutative", "associative", "idempotent"):
            assert (axiom in report.witnesses) == (not getattr(report, axiom))


def test_fold_examples():
    assert fold(min_operator(3), [2, 1, 2]) == 1
    assert fold(and_operator(), [1, 1, 1]) == 1
    for op in SEMILATTICES:
        for x in range(op.size):
            assert fold(op, [x]) == x


def test_fold_empty_rejected():
    with pytest.raises(ValueError):
        fold(min_operator(2), [])


def test_fold_right_nested_for_noncommutative():
    # x op (y op z) with op = x^2 y: 1 op (2 op 0) = 1 op 0 = 0
    assert fold(SQUARE_MUL, [1, 2, 0]) == SQUARE_MUL(1, SQUARE_MUL(2, 0))


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_fold_order_and_multiplicity_invariant(data):
    op = data.draw(st.sampled_from(SEMILATTICES))
    values = data.draw(st.lists(st.integers(0, op.size - 1), min_size=1,
                                max_size=6))
    expected = fold(op, values)
    shuffled = values[:]
    random.Random(data.draw(st.integers(0, 999))).shuffle(shuffled)
    assert fold(op, shuffled) == expected
    assert fold(op, sorted(set(values))) == expected


def test_find_neutral_builtins():
    assert find_neutral(min_operator(4)) == 3
    assert find_neutral(max_operator(4)) == 0
    assert find_neutral(and_operator()) == 1
    assert find_neutral(or_operator()) == 0


def test_find_neutral_absent():
    # verified by exhaustion: no e has e op x == x for all three x
    assert validate_operator(FLAT3).all_hold
    assert find_neutral(FLAT3) is None


def test_find_absorbent():
    assert find_absorbent(max_operator(5)) == 4
    assert find_absorbent(min_operator(5)) == 0
    assert find_absorbent(or_operator()) == 1
    assert find_absorbent(min_operator(1)) == 0
    assert find_absorbent(FLAT3) == 0


def test_find_absorbent_is_fixed_point():
    for op in SEMILATTICES:
        theta = find_absorbent(op)
        assert op(theta, theta) == theta
        assert all(op(x, theta) == theta for x in range(op.size))


def test_find_absorbent_detects_non_semilattice():
    with pytest.raises(NotSemilatticeError):
        find_absorbent(XOR)


def test_extend_with_neutral():
    for op in SEMILATTICES + [min_operator(5), max_operator(5)]:
        ext = extend_with_neutral(op)
        assert ext.size == op.size + 1
        assert validate_operator(ext).all_hold
        assert find_neutral(ext) == op.size
        for x in range(op.size):
            for y in range(op.size):
                assert ext(x, y) == op(x, y)


def test_extend_demotes_old_neutral():
    ext = extend_with_neutral(and_operator())
    assert find_neutral(ext) == 2
    assert ext(2, 1) == 1 and ext(1, 1) == 1


def test_extend_singleton_gives_two_chain():
    ext = extend_with_neutral(min_operator(1))
    assert ext.table == and_operator().table


def test_lattice_from_and_is_three_chain():
    meet, join = semilattice_to_lattice(and_operator())
    assert meet.size == join.size == 3
    assert meet.table == tuple(tuple(min(x, y) for y in range(3))
                               for x in range(3))
    assert join.table == tuple(tuple(max(x, y) for y in range(3))
                               for x in range(3))


def test_lattice_from_min3_is_four_chain():
    meet, join = semilattice_to_lattice(min_operator(3))
    assert meet.table == min_operator(4).table
    assert join.table == max_operator(4).table


def test_lattice_from_singleton_is_boolean():
    meet, join = semilattice_to_lattice(min_operator(1))
    assert meet.size == 2
    assert meet.table == and_operator().table
    assert join.table == or_operator().table


def test_lattice_absorption_and_axioms():
    for op in SEMILATTICES:
        meet, join = semilattice_to_lattice(op)
        assert validate_operator(meet).all_hold
        assert validate_operator(join).all_hold
        for x in range(meet.size):
            for y in range(meet.size):
                assert meet(x, join(x, y)) == x
                assert join(x, meet(x, y)) == x


def test_lattice_rejects_non_semilattice():
    with pytest.raises(NotSemilatticeError):
        semilattice_to_lattice(XOR)


def test_operator_json_builtins():
    op = operator_from_json({"M": 3, "kind": "min"})
    assert op.table == min_operator(3).table
    op = operator_from_json({"M": 2, "kind": "and", "labels": ["off", "on"]})
    assert op.labels == ("off", "on")


def test_operator_json_table_kind():
    op = operator_from_json({"M": 2, "kind": "table", "table": [[0, 1], [1, 0]]})
    assert op.table == XOR.table


@pytest.mark.parametrize("obj", [
    {"M": 2, "kind": "min", "table": [[0, 0], [0, 1]]},  # table forbidden
    {"M": 2, "kind": "table"},                           # table required
    {"M": 3, "kind": "and"},                             # and needs M=2
    {"M": 2, "kind": "nope"},
    {"kind": "min"},                                     # M required
    {"M": 2, "kind": "table", "table": [[0, 1], [1]]},   # ragged
    {"M": 2, "kind": "min", "labels": ["just one"]},
    {"M": 2, "kind": "min", "extra": 1},
    [1, 2],
])
def test_operator_json_rejects(obj):
    with pytest.raises(SchemaError):
        operator_from_json(obj)
