"""Adaptive diagnosis algorithms.

Three strategies are provided:

* :func:`line_scan` / :func:`find_all_knights` -- walk a line of processors
  asking each whether the next one is Normal; the survivor at the end of the
  line is reliable (n - 1 questions), and it then classifies everyone
  (n more questions).
* :func:`find_reliable_pairing` -- a pairing tournament that keeps Normals in
  the minority after every round and finds a reliable processor in at most
  n - popcount(n) questions.
* :func:`identify_normals` -- finds every Normal in fewer than 3n/2 questions.

All of them assume strictly fewer than half the processors are Normal.  That
precondition is not checked: the algorithms cannot observe types, so when it
fails their output is simply not guaranteed.  :class:`PreconditionViolation`
is raised only when a run reaches a state that is impossible under the
precondition (for instance, every candidate was eliminated).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .interrogation import (
    Answer,
    NormalStrategy,
    PredicateKind,
    Transcript,
    ngp,
    respond,
)
from .world import ProcessorType, World


class PreconditionViolation(RuntimeError):
    """The run reached a state that cannot occur when Normals are a minority."""


@dataclass
class Session:
    world: World
    strategy: NormalStrategy
    transcript: Transcript = field(default_factory=Transcript)
    rng: random.Random = field(default_factory=lambda: random.Random(0))

    @property
    def questions(self) -> int:
        return self.transcript.question_count

    def ask(self, respondent: int, kind: PredicateKind, target: int) -> Answer:
        return respond(self.world, self.strategy, self.transcript, respondent, ngp(kind, target), self.rng)


# ---------------------------------------------------------------------------
# Line scan and Knight finding


@dataclass(frozen=True)
class ScanResult:
    trusted: int
    questions: int


@dataclass(frozen=True)
class KnightReport:
    trusted: int
    knights: frozenset[int]
    phase1_questions: int
    total_questions: int


def line_scan(session: Session, trace: list[tuple[int, int]] | None = None) -> ScanResult:
    """Find a Knight or Knave by walking the line of processors in index order.

    Position ``i`` is asked whether position ``i + 1`` is Normal.  "No" moves
    the cursor forward; "Yes" removes both (at least one of them is Normal)
    and steps back one place.  The last processor in line is reliable.

    If ``trace`` is given, ``(live line length, cursor)`` is appended before
    every question.
    """
    start = session.questions
    line = list(range(len(session.world)))
    i = 0
    while i < len(line) - 1:
        if trace is not None:
            trace.append((len(line), i))
        if session.ask(line[i], PredicateKind.IS_NORMAL, line[i + 1]):
            del line[i : i + 2]
            if i > 0:
                i -= 1
            if not line:
                raise PreconditionViolation("line emptied: Normals were not a minority")
        else:
            i += 1
    return ScanResult(line[-1], session.questions - start)


def classify_all(
    session: Session,
    trusted: int,
    targets: Iterable[int],
    kind: PredicateKind,
) -> set[int]:
    """Ask ``trusted`` about each target; return those for which it says Yes."""
    return {t for t in targets if session.ask(trusted, kind, t)}


def find_all_knights(session: Session) -> KnightReport:
    start = session.questions
    scan = line_scan(session)
    knights = classify_all(session, scan.trusted, range(len(session.world)), PredicateKind.IS_KNIGHT)
    return KnightReport(
        trusted=scan.trusted,
        knights=frozenset(knights),
        phase1_questions=scan.questions,
        total_questions=session.questions - start,
    )


# ---------------------------------------------------------------------------
# Pairing tournament


@dataclass(frozen=True)
class RoundAudit:
    """Ground-truth bookkeeping for one pairing round (not visible to the algorithm)."""

    reliable_before: int
    normal_before: int
    rr: int
    rn: int
    nr: int
    nn: int
    unpaired_type: ProcessorType | None
    reliable_after_step2: int
    normal_after_step2: int
    reliable_after_step3: int
    normal_after_step3: int
    kept_unpaired: bool

    def violations(self) -> list[str]:
        out = []
        if self.reliable_after_step2 < self.rr:
            out.append("r2 >= #(R,R)")
        if self.normal_after_step2 > self.nn:
            out.append("n2 <= #(N,N)")
        if self.reliable_before > self.normal_before and not (
            self.reliable_after_step3 > self.normal_after_step3
        ):
            out.append("majority preserved")
        if self.unpaired_type is not None and (self.reliable_after_step3 + self.normal_after_step3) % 2 != 1:
            out.append("odd survivors after step 3")
        return out


@dataclass(frozen=True)
class PairingReport:
    trusted: int
    questions: int
    rounds: tuple[RoundAudit, ...]


def pairing_round(session: Session, survivors: Sequence[int]) -> tuple[list[int], RoundAudit]:
    """One round: pair consecutive survivors, ask each first about the second.

    Yes keeps the second member, No drops both.  A leftover unpaired survivor
    is kept only if that makes the survivor count odd.
    """
    if not survivors:
        raise ValueError("pairing_round needs at least one survivor")
    world = session.world
    rel = [world[p].reliable for p in survivors]

    counts = {(True, True): 0, (True, False): 0, (False, True): 0, (False, False): 0}
    kept = []
    for k in range(0, len(survivors) - 1, 2):
        first, second = survivors[k], survivors[k + 1]
        counts[rel[k], rel[k + 1]] += 1
        if session.ask(first, PredicateKind.IS_RELIABLE, second):
            kept.append(second)

    r2 = sum(world[p].reliable for p in kept)
    n2 = len(kept) - r2
    unpaired = survivors[-1] if len(survivors) % 2 else None
    keep_unpaired = unpaired is not None and len(kept) % 2 == 0
    if keep_unpaired:
        kept.append(unpaired)
    r3 = sum(world[p].reliable for p in kept)

    audit = RoundAudit(
        reliable_before=sum(rel),
        normal_before=len(rel) - sum(rel),
        rr=counts[True, True],
        rn=counts[True, False],
        nr=counts[False, True],
        nn=counts[False, False],
        unpaired_type=None if unpaired is None else world[unpaired],
        reliable_after_step2=r2,
        normal_after_step2=n2,
        reliable_after_step3=r3,
        normal_after_step3=len(kept) - r3,
        kept_unpaired=keep_unpaired,
    )
    return kept, audit


def find_reliable_pairing(session: Session) -> PairingReport:
    start = session.questions
    survivors = list(range(len(session.world)))
    rounds = []
    while len(survivors) > 1:
        survivors, audit = pairing_round(session, survivors)
        rounds.append(audit)
        if not survivors:
            raise PreconditionViolation("no survivors: Normals were not a minority")
    return PairingReport(survivors[0], session.questions - start, tuple(rounds))


# ---------------------------------------------------------------------------
# Identifying the Normals

CASE_A = "CaseA"
CASE_B = "CaseB"


@dataclass(frozen=True)
class CaseRecord:
    """One probe of a candidate X.

    ``members``, ``budget`` and ``questions`` describe the call that made the
    probe; ``questions`` counts everything that call asked, recursion included.
    """

    x: int
    yes_set: tuple[int, ...]
    no_set: tuple[int, ...]
    stopped_in: str
    z: int | None
    members: int
    budget: int
    questions: int

    def violations(self) -> list[str]:
        out = []
        if self.stopped_in == CASE_A:
            if len(self.no_set) != self.budget:
                out.append("CaseA: |D| = budget")
            if self.questions > self.members + self.budget:
                out.append("CaseA: questions <= n + budget")
        elif len(self.yes_set) != len(self.no_set) + 1:
            out.append("CaseB: |C| = |D| + 1")
        return out


@dataclass(frozen=True)
class NormalReport:
    normals: frozenset[int]
    total_questions: int
    case_trace: tuple[CaseRecord, ...]


def default_budget(n: int) -> int:
    """Largest Normal count compatible with a strict minority of ``n``."""
    return math.ceil(n / 2) - 1


def identify_normals(
    session: Session,
    members: Iterable[int] | None = None,
    normal_budget: int | None = None,
) -> NormalReport:
    """Return exactly the Normals among ``members``.

    ``normal_budget`` is a known upper bound on the number of Normals among
    the members and must be below half their count; it defaults to the
    largest such value.  Members default to the whole world.
    """
    if members is None:
        members = range(len(session.world))
    members = sorted(set(members))
    if normal_budget is None:
        normal_budget = default_budget(len(members))
    if normal_budget < 0 or (normal_budget > 0 and 2 * normal_budget >= len(members)):
        raise ValueError(f"normal_budget={normal_budget} must be below half of {len(members)} members")
    trace: list[CaseRecord] = []
    start = session.questions
    normals = _identify(session, members, normal_budget, trace)
    return NormalReport(frozenset(normals), session.questions - start, tuple(trace))


def _identify(session: Session, members: list[int], budget: int, trace: list[CaseRecord]) -> set[int]:
    if budget <= 0 or not members:
        return set()
    start = session.questions
    x, others = members[0], members[1:]
    yes: list[int] = []
    no: list[int] = []
    stopped = None
    for p in others:
        (yes if session.ask(p, PredicateKind.IS_NORMAL, x) else no).append(p)
        if len(no) == budget:
            stopped = CASE_A
            break
        if len(yes) > len(no):
            stopped = CASE_B
            break
    if stopped is None:
        # unreachable while budget < len(members) / 2
        raise PreconditionViolation("neither stopping condition reached")

    if stopped == CASE_A:
        # X is reliable and every Yes-answerer is Normal.
        normals = set(yes)
        rest = [p for p in others if p not in normals]
        normals |= {p for p in rest if not session.ask(x, PredicateKind.IS_RELIABLE, p)}
        trace.append(CaseRecord(x, tuple(yes), tuple(no), CASE_A, None, len(members), budget,
                                session.questions - start))
        return normals

    # At least half of C + D + {X} is Normal, so the remainder keeps a reliable majority.
    removed = set(yes) | set(no) | {x}
    rest = [p for p in members if p not in removed]
    if not rest:
        raise PreconditionViolation("nothing left to recurse on: Normals were not a minority")
    sub_budget = max(0, min(budget - (len(no) + 1), default_budget(len(rest))))
    normals = _identify(session, rest, sub_budget, trace)
    z = next((p for p in rest if p not in normals), None)
    if z is None:
        raise PreconditionViolation("no reliable processor left to consult")
    if session.ask(z, PredicateKind.IS_NORMAL, x):
        normals |= {x} | set(no)
        normals |= {c for c in yes if session.ask(z, PredicateKind.IS_NORMAL, c)}
    else:
        normals |= set(yes)
        normals |= {d for d in no if session.ask(z, PredicateKind.IS_NORMAL, d)}
    trace.append(CaseRecord(x, tuple(yes), tuple(no), CASE_B, z, len(members), budget,
                            session.questions - start))
    return normals
