from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regdist.grammar import SequenceSyntaxError, format_sequence, parse_sequence
from regdist.seqcore import ParamSequence


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1", ParamSequence(1, 0, 0, 0)),
        ("2^(1*j)", ParamSequence(1, 1, 0, 0)),
        ("2^(0.5*j)*(1+j)^-1", ParamSequence(1, F(1, 2), -1, 0)),
        ("3*(1+j)^-1/2*ln(e+j)^2", ParamSequence(3, 0, F(-1, 2), 2)),
        ("(1+j)^(-3/2)", ParamSequence(1, 0, F(-3, 2), 0)),
        ("ln(e+j)^-1", ParamSequence(1, 0, 0, -1)),
        ("1/4 * 2^(-2*j) * (1+j)^2", ParamSequence(F(1, 4), -2, 2, 0)),
    ],
)
def test_parse_examples(text, expected):
    assert parse_sequence(text) == expected


@pytest.mark.parametrize(
    "text",
    ["2^(j)*(1+j)", "", "2^(1*j)*2^(1*j)", "(1+j)^1*2^(1*j)", "2^(1*k)", "(1+j)^", "x", "2^(1*j)*"],
)
def test_syntax_errors(text):
    with pytest.raises(SequenceSyntaxError):
        parse_sequence(text)


def test_syntax_error_position():
    with pytest.raises(SequenceSyntaxError) as info:
        parse_sequence("2^(j)*(1+j)")
    assert info.value.pos == 3


def test_nonpositive_scale():
    with pytest.raises(ValueError):
        parse_sequence("-2*2^(1*j)")
    with pytest.raises(ValueError):
        parse_sequence("0")


def test_format_examples():
    assert format_sequence(ParamSequence()) == "1"
    assert format_sequence(ParamSequence(1, 1, 0, 0)) == "2^(1*j)"
    assert format_sequence(ParamSequence(2, F(1, 2), -1, F(3, 4))) == "2*2^(1/2*j)*(1+j)^-1*ln(e+j)^3/4"


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=50)
pos = st.fractions(min_value=F(1, 1000), max_value=1000, max_denominator=1000)


@settings(max_examples=1000, deadline=None)
@given(st.builds(ParamSequence, pos, fracs, fracs, fracs))
def test_round_trip(seq):
    assert parse_sequence(format_sequence(seq)) == seq
