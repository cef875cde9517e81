"""Self-referential yes/no questions and how each processor type answers them.

Every question has the form "Is it true that P if and only if you are a
Knight?".  A Knight answers the biconditional truthfully and a Knave negates
it, so both end up answering "Yes" exactly when P holds.  Normals answer
according to a pluggable :class:`NormalStrategy`.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Protocol, Sequence

from .world import ProcessorType, World


class ScriptExhausted(RuntimeError):
    """A scripted Normal strategy ran out of answers."""


class PredicateKind(enum.Enum):
    IS_NORMAL = "is_normal"
    IS_KNIGHT = "is_knight"
    IS_RELIABLE = "is_reliable"


class Answer(enum.Enum):
    YES = "yes"
    NO = "no"

    @classmethod
    def of(cls, flag: bool) -> Answer:
        return cls.YES if flag else cls.NO

    def __bool__(self) -> bool:
        return self is Answer.YES


@dataclass(frozen=True)
class Predicate:
    kind: PredicateKind
    target: int

    def describe(self) -> str:
        what = {
            PredicateKind.IS_NORMAL: "is Normal",
            PredicateKind.IS_KNIGHT: "is a Knight",
            PredicateKind.IS_RELIABLE: "is a Knight or a Knave",
        }[self.kind]
        return f"processor {self.target} {what}"


@dataclass(frozen=True)
class Question:
    predicate: Predicate

    def render(self) -> str:
        return f"Is it true that {self.predicate.describe()} if and only if you are a Knight?"


def ngp(kind: PredicateKind, target: int) -> Question:
    return Question(Predicate(kind, target))


@dataclass(frozen=True)
class Entry:
    i: int
    respondent: int
    question: Question
    answer: Answer


@dataclass
class Transcript:
    entries: list[Entry] = field(default_factory=list)

    @property
    def question_count(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def record(self, respondent: int, question: Question, answer: Answer) -> Entry:
        entry = Entry(len(self.entries), respondent, question, answer)
        self.entries.append(entry)
        return entry


class NormalStrategy(Protocol):
    """Answer policy for Normal respondents.

    Strategies see the transcript and the question but never the world.
    """

    def answer(
        self,
        transcript: Transcript,
        respondent: int,
        question: Question,
        rng: random.Random,
    ) -> Answer: ...


class AlwaysYes:
    def answer(self, transcript, respondent, question, rng):
        return Answer.YES


class AlwaysNo:
    def answer(self, transcript, respondent, question, rng):
        return Answer.NO


class Scripted:
    """Consume one global script of answers, in order, across all Normals."""

    def __init__(self, script: Sequence[Answer | str | bool]):
        self.script = [coerce_answer(a) for a in script]
        self.position = 0

    @property
    def exhausted(self) -> bool:
        return self.position >= len(self.script)

    def answer(self, transcript, respondent, question, rng):
        if self.exhausted:
            raise ScriptExhausted(
                f"script of {len(self.script)} answers exhausted at question {len(transcript)}"
            )
        a = self.script[self.position]
        self.position += 1
        return a


class SeededRandom:
    """Fair coin flips drawn from the session's generator."""

    def answer(self, transcript, respondent, question, rng):
        return Answer.of(rng.random() < 0.5)


class Branching:
    """Replay a fixed prefix of answers, then answer Yes and remember it.

    Used by the branch explorer: after a run, :attr:`taken` holds the full
    answer path and every Yes taken past the prefix is an unexplored fork.
    """

    def __init__(self, prefix: Sequence[Answer] = ()):
        self.prefix = list(prefix)
        self.taken: list[Answer] = []

    def answer(self, transcript, respondent, question, rng):
        k = len(self.taken)
        a = self.prefix[k] if k < len(self.prefix) else Answer.YES
        self.taken.append(a)
        return a


def coerce_answer(value: Answer | str | bool) -> Answer:
    if isinstance(value, Answer):
        return value
    if isinstance(value, bool):
        return Answer.of(value)
    v = str(value).strip().lower()
    if v in ("yes", "y"):
        return Answer.YES
    if v in ("no", "n"):
        return Answer.NO
    raise ValueError(f"not an answer: {value!r}")


def predicate_truth(world: World, predicate: Predicate) -> bool:
    if not 0 <= predicate.target < len(world):
        raise IndexError(f"target {predicate.target} out of range for n={len(world)}")
    t = world[predicate.target]
    if predicate.kind is PredicateKind.IS_NORMAL:
        return t is ProcessorType.NORMAL
    if predicate.kind is PredicateKind.IS_KNIGHT:
        return t is ProcessorType.KNIGHT
    return t.reliable


def respond(
    world: World,
    strategy: NormalStrategy,
    transcript: Transcript,
    respondent: int,
    question: Question,
    rng: random.Random | None = None,
) -> Answer:
    """Have ``respondent`` answer ``question`` and append it to ``transcript``."""
    if not 0 <= respondent < len(world):
        raise IndexError(f"respondent {respondent} out of range for n={len(world)}")
    truth = predicate_truth(world, question.predicate)
    kind = world[respondent]
    if kind is ProcessorType.NORMAL:
        answer = strategy.answer(transcript, respondent, question, rng)
    else:
        statement = truth == (kind is ProcessorType.KNIGHT)
        answer = Answer.of(statement if kind is ProcessorType.KNIGHT else not statement)
    transcript.record(respondent, question, answer)
    return answer
