import pytest
from hypothesis import given
from hypothesis import strategies as st

from rnacompat.series import support_bound
from rnacompat.structure import (
    STANDARD_CLASSES,
    SecondaryStructure,
    StructureClass,
    dot_bracket_decode,
    dot_bracket_encode,
    enumerate_counts,
    is_valid,
    iter_structures,
    read_dot_bracket,
    stacks,
    validate,
)


def S(n, *arcs):
    return SecondaryStructure(n, frozenset(arcs))


def kinds(violations):
    return sorted(v.kind for v in violations)


@st.composite
def dot_brackets(draw, max_len=40):
    """Balanced strings over '.', '(', ')' built by a random walk."""
    n = draw(st.integers(0, max_len))
    out, depth = [], 0
    for pos in range(n):
        remaining = n - pos
        choices = ["."]
        if depth + 1 <= remaining - 1:
            choices.append("(")
        if depth > 0:
            choices.append(")")
        if depth >= remaining:
            choices = [")"]
        ch = draw(st.sampled_from(choices))
        depth += {"(": 1, ")": -1, ".": 0}[ch]
        out.append(ch)
    assert depth == 0
    return "".join(out)


class TestValidate:
    def test_single_one_arc_allowed_for_lambda_1(self):
        assert validate(S(2, (1, 2)), StructureClass(1, 1)) == []

    def test_lone_arc_is_short_stack(self):
        v = validate(S(3, (1, 3)), StructureClass(2, 2))
        assert kinds(v) == ["stack-length"]

    def test_crossing(self):
        v = validate(S(4, (1, 3), (2, 4)), StructureClass(2, 1))
        assert kinds(v) == ["crossing"]

    def test_two_stack_with_inner_one_arc(self):
        assert validate(S(4, (1, 4), (2, 3)), StructureClass(1, 2)) == []

    def test_shared_endpoint(self):
        v = validate(S(5, (1, 3), (3, 5)), StructureClass(1, 1))
        assert "shared-endpoint" in kinds(v)

    def test_arc_length(self):
        v = validate(S(5, (2, 3)), StructureClass(2, 1))
        assert kinds(v) == ["arc-length"]

    def test_reports_every_violation(self):
        # (1,3),(2,4) cross; (2,4) has length 2 < 3; both are lone arcs
        v = validate(S(4, (1, 3), (2, 4)), StructureClass(3, 2))
        assert kinds(v) == ["arc-length", "arc-length", "crossing", "stack-length", "stack-length"]

    @pytest.mark.parametrize("arc", [(2, 2), (3, 1), (0, 2), (1, 6)])
    def test_malformed_arcs_rejected(self, arc):
        with pytest.raises(ValueError):
            S(5, arc)

    def test_empty_structure_valid_everywhere(self):
        for c in STANDARD_CLASSES:
            assert is_valid(S(0), c)
            assert is_valid(S(7), c)


def test_stacks_maximal():
    s = dot_bracket_decode("((..))(((...)))")
    assert [(st.start, st.length) for st in stacks(s)] == [((1, 6), 2), ((7, 15), 3)]


def test_stack_split_by_bulge():
    s = dot_bracket_decode("((.((...)).))")
    assert sorted(st.length for st in stacks(s)) == [2, 2]


class TestEnumerate:
    def test_n2_lambda1(self):
        assert enumerate_counts(StructureClass(1, 1), 2) == {0: 1, 1: 1}

    def test_n5_lambda2_single_arc(self):
        assert enumerate_counts(StructureClass(2, 1), 5)[1] == 6

    def test_n4_r2(self):
        assert enumerate_counts(StructureClass(1, 2), 4) == {0: 1, 2: 1}

    def test_n4_lambda2_r2_only_empty(self):
        assert enumerate_counts(StructureClass(2, 2), 4) == {0: 1}

    def test_n0(self):
        assert enumerate_counts(StructureClass(3, 2), 0) == {0: 1}

    def test_motzkin_numbers(self):
        # lambda = 1, r = 1: all noncrossing partial matchings
        motzkin = [1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]
        assert [sum(enumerate_counts(StructureClass(1, 1), n).values()) for n in range(11)] == motzkin

    def test_cap(self):
        with pytest.raises(ValueError):
            enumerate_counts(StructureClass(1, 1), 15)

    def test_enumerated_structures_validate(self):
        for c in STANDARD_CLASSES:
            for s in iter_structures(c, 10):
                assert validate(s, c) == []

    def test_monotone_under_tightening(self):
        counts = {(c.lam, c.r): [enumerate_counts(c, n) for n in range(13)] for c in STANDARD_CLASSES}
        for (lam, r), rows in counts.items():
            for (lam2, r2), rows2 in counts.items():
                if lam2 >= lam and r2 >= r:
                    for a, b in zip(rows, rows2):
                        assert all(a.get(l, 0) >= b.get(l, 0) for l in set(a) | set(b))

    def test_support_bound(self):
        for c in STANDARD_CLASSES:
            for n in range(13):
                assert max(enumerate_counts(c, n)) <= support_bound(c.lam, n)


class TestDotBracket:
    def test_encode(self):
        assert dot_bracket_encode(S(3, (1, 3))) == "(.)"

    def test_decode_unpaired(self):
        assert dot_bracket_decode("....") == S(4)

    def test_decode_stack(self):
        assert dot_bracket_decode("((..))") == S(6, (1, 6), (2, 5))

    @pytest.mark.parametrize("text", ["(()", "())", ")(", "((.x))"])
    def test_decode_errors(self, text):
        with pytest.raises(ValueError):
            dot_bracket_decode(text)

    def test_encode_rejects_crossing(self):
        with pytest.raises(ValueError):
            dot_bracket_encode(S(4, (1, 3), (2, 4)))

    def test_read_lines(self):
        assert read_dot_bracket(["(.)\n", "\n", "...\n"]) == [S(3, (1, 3)), S(3)]

    @given(dot_brackets())
    def test_round_trip_text(self, text):
        assert dot_bracket_encode(dot_bracket_decode(text)) == text

    @given(dot_brackets())
    def test_round_trip_structure(self, text):
        s = dot_bracket_decode(text)
        assert dot_bracket_decode(dot_bracket_encode(s)) == s
