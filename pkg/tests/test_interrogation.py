import itertools
import random

import pytest
from hypothesis import given, strategies as st

from faultdiag import (
    AlwaysNo,
    AlwaysYes,
    Answer,
    Predicate,
    PredicateKind,
    ProcessorType,
    Scripted,
    ScriptExhausted,
    SeededRandom,
    Transcript,
    World,
    ngp,
    parse_world,
    predicate_truth,
    respond,
)

TYPES = list(ProcessorType)


def test_predicate_truth_examples():
    w = parse_world("KVN")
    assert predicate_truth(w, Predicate(PredicateKind.IS_NORMAL, 2))
    assert predicate_truth(w, Predicate(PredicateKind.IS_RELIABLE, 1))
    assert not predicate_truth(w, Predicate(PredicateKind.IS_KNIGHT, 1))


def test_predicate_target_out_of_range():
    with pytest.raises(IndexError):
        predicate_truth(parse_world("KV"), Predicate(PredicateKind.IS_KNIGHT, 2))


def test_knight_true_predicate_yes():
    w = parse_world("KN")
    assert respond(w, AlwaysNo(), Transcript(), 0, ngp(PredicateKind.IS_NORMAL, 1)) is Answer.YES


def test_knave_false_predicate_no():
    w = parse_world("VK")
    assert respond(w, AlwaysYes(), Transcript(), 0, ngp(PredicateKind.IS_NORMAL, 1)) is Answer.NO


def test_normal_follows_script():
    w = parse_world("NN")
    t = Transcript()
    assert respond(w, Scripted(["no"]), t, 0, ngp(PredicateKind.IS_NORMAL, 1)) is Answer.NO


def test_script_exhausted():
    w = parse_world("NK")
    s = Scripted([Answer.YES])
    t = Transcript()
    respond(w, s, t, 0, ngp(PredicateKind.IS_KNIGHT, 1))
    with pytest.raises(ScriptExhausted):
        respond(w, s, t, 0, ngp(PredicateKind.IS_KNIGHT, 1))


def test_respondent_out_of_range():
    with pytest.raises(IndexError):
        respond(parse_world("K"), AlwaysYes(), Transcript(), 3, ngp(PredicateKind.IS_KNIGHT, 0))


def test_ngp_soundness_exhaustive():
    """Reliable respondents answer Yes exactly when the predicate holds."""
    for kind, target_type, resp_type in itertools.product(
        PredicateKind, TYPES, (ProcessorType.KNIGHT, ProcessorType.KNAVE)
    ):
        w = World((resp_type, target_type))
        truth = predicate_truth(w, Predicate(kind, 1))
        answer = respond(w, AlwaysYes(), Transcript(), 0, ngp(kind, 1))
        assert (answer is Answer.YES) == truth, (kind, target_type, resp_type)


@pytest.mark.parametrize("resp", ["K", "V"])
def test_self_directed_question(resp):
    w = parse_world(resp)
    a = respond(w, AlwaysYes(), Transcript(), 0, ngp(PredicateKind.IS_KNIGHT, 0))
    assert (a is Answer.YES) == (resp == "K")


def test_transcript_grows_by_one():
    w = parse_world("KVN")
    t = Transcript()
    for k, (r, target) in enumerate([(0, 1), (1, 2), (2, 0), (0, 0)]):
        respond(w, AlwaysYes(), t, r, ngp(PredicateKind.IS_RELIABLE, target))
        assert t.question_count == k + 1
        assert [e.i for e in t.entries] == list(range(k + 1))


def test_question_render():
    q = ngp(PredicateKind.IS_NORMAL, 4)
    assert q.render() == "Is it true that processor 4 is Normal if and only if you are a Knight?"


@given(
    st.text(alphabet="KVN", min_size=2, max_size=8),
    st.text(alphabet="KVN", min_size=2, max_size=8),
    st.integers(0, 2**32),
    st.lists(st.tuples(st.integers(0, 7), st.sampled_from(list(PredicateKind)), st.integers(0, 7)), max_size=12),
)
def test_strategy_isolation(a, b, seed, asks):
    """A Normal's answers do not depend on the types of other processors."""
    n = min(len(a), len(b))
    # Same positions are Normal in both worlds; everything else may differ.
    wa = parse_world("".join("N" if a[i] == "N" else a[i] for i in range(n)))
    wb = parse_world("".join("N" if a[i] == "N" else ("V" if b[i] == "N" else b[i]) for i in range(n)))
    asks = [(r % n, k, t % n) for r, k, t in asks if wa[r % n] is ProcessorType.NORMAL]
    for strategy_factory in (SeededRandom, AlwaysYes, AlwaysNo):
        out = []
        for w in (wa, wb):
            s, t, rng = strategy_factory(), Transcript(), random.Random(seed)
            out.append([respond(w, s, t, r, ngp(k, tgt), rng) for r, k, tgt in asks])
        assert out[0] == out[1]
