import pytest

from pappa import tangle
from pappa.pf import PFElement, jw_rep
from pappa.scalars import make_context, sqrt_n


@pytest.mark.parametrize("N,sign", [(2, 1), (2, -1), (3, 1)])
def test_circle_corpus_matches_oracle(N, sign):
    ctx = make_context(N, sign)
    count = 0
    for labels in tangle.circle_corpus(ctx, max_labels=3):
        word = tangle.circle_word(ctx, labels)
        assert tangle.evaluate_closed(word) == tangle.closed_loop_oracle(ctx, labels), labels
        count += 1
    assert count > 20


@pytest.mark.parametrize("N", [2, 3, 4])
def test_empty_loop_is_sqrt_n(N):
    ctx = make_context(N)
    assert tangle.evaluate_closed(tangle.circle_word(ctx, ())) == sqrt_n(ctx)


def test_isotopy_pairs_n2():
    ctx = make_context(2, -1)
    pairs = tangle.isotopy_pairs(ctx)
    assert len(pairs) >= 20
    assert len({name for name, _, _ in pairs}) == len(pairs)
    for name, a, b in pairs:
        assert tangle.evaluate_tangle(a).equals(tangle.evaluate_tangle(b)), name


def test_parse_and_roundtrip():
    text = "N=3\nin=0\ncup@1  # a cup\nc^1@1\nc^-1@2\ncap@1\n"
    word = tangle.parse_tangle(text)
    assert word.closed and word.ctx.N == 3
    again = tangle.parse_tangle(word.to_text())
    assert tangle.evaluate_tangle(word).equals(tangle.evaluate_tangle(again))


def test_open_tangle_gives_box_element():
    ctx = make_context(2)
    word = tangle.parse_tangle("in=2\nout=2\nc^1@1\n", ctx=ctx)
    val = tangle.evaluate_tangle(word)
    assert not val.closed
    assert val.element.m == 2
    assert val.operator.equals(jw_rep(val.element))
    assert val.element == PFElement.generator(ctx, 2, 1)


@pytest.mark.parametrize("text,line,column", [
    ("N=2\n  bogus\n", 2, 3),
    ("N=2\ncup@1\nN=3\n", 3, 1),
    ("N=2\ncap@1\n", 2, 5),
    ("N=2\ncup@4\n", 2, 5),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(tangle.TangleError) as info:
        tangle.parse_tangle(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


@pytest.mark.parametrize("text", ["cup@1\n", "N=1\n", "N=2\nout=2\ncup@1\ncap@1\n", "N=2\nin=-1\n"])
def test_parse_errors_without_position(text):
    with pytest.raises(tangle.TangleError):
        tangle.parse_tangle(text)


def test_header_conflicts_with_context():
    with pytest.raises(tangle.TangleError):
        tangle.parse_tangle("N=3\n", ctx=make_context(2))
