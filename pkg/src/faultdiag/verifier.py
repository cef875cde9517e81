"""Question bounds and exhaustive verification over all Normal behaviours.

Normals may answer anything, so every guarantee is checked against every
possible answer sequence: the explorer reruns the production algorithm with a
:class:`~faultdiag.interrogation.Branching` strategy, forking at each question
put to a Normal, until every leaf of the answer tree has been visited.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

from .diagnosis import (
    PreconditionViolation,
    Session,
    default_budget,
    find_all_knights,
    find_reliable_pairing,
    identify_normals,
    line_scan,
)
from .interrogation import Answer, Branching, NormalStrategy, Scripted, Transcript
from .world import ProcessorType, World, census, serialize_world

ALGORITHMS = ("line_scan", "find_all_knights", "find_reliable_pairing", "identify_normals")


def popcount(n: int) -> int:
    if n < 1:
        raise ValueError("popcount is defined here for n >= 1")
    return bin(n).count("1")


def question_bound(algorithm: str, n: int) -> int:
    """Worst-case number of questions ``algorithm`` may ask on ``n`` processors."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if algorithm == "line_scan":
        return n - 1
    if algorithm == "find_all_knights":
        return 2 * n - 1
    if algorithm == "find_reliable_pairing":
        return n - popcount(n)
    if algorithm == "identify_normals":
        # largest integer strictly below 3n/2
        return math.ceil(3 * n / 2) - 1
    raise ValueError(f"unknown algorithm {algorithm!r}")


def enumerate_worlds(n: int, require_majority: bool = True) -> list[World]:
    kinds = (ProcessorType.KNIGHT, ProcessorType.KNAVE, ProcessorType.NORMAL)
    worlds = [World(types) for types in itertools.product(kinds, repeat=n)]
    if require_majority:
        worlds = [w for w in worlds if census(w).majority_ok]
    return worlds


def run_algorithm(algorithm: str, session: Session, budget: int | None = None) -> tuple[Any, int]:
    """Run ``algorithm`` on ``session``; return its report and question count."""
    if algorithm == "line_scan":
        trace: list[tuple[int, int]] = []
        result = line_scan(session, trace=trace)
        return (result, trace), result.questions
    if algorithm == "find_all_knights":
        report = find_all_knights(session)
        return report, report.total_questions
    if algorithm == "find_reliable_pairing":
        report = find_reliable_pairing(session)
        return report, report.questions
    if algorithm == "identify_normals":
        report = identify_normals(session, normal_budget=budget)
        return report, report.total_questions
    raise ValueError(f"unknown algorithm {algorithm!r}")


@dataclass
class BranchOutcome:
    result: Any
    questions: int
    branch_id: tuple[Answer, ...]
    transcript: Transcript
    error: str | None = None

    @property
    def branch_label(self) -> str:
        return "".join("Y" if a is Answer.YES else "N" for a in self.branch_id)


def _run_once(world: World, algorithm: str, strategy: NormalStrategy, budget: int | None):
    session = Session(world, strategy)
    try:
        result, questions = run_algorithm(algorithm, session, budget)
        error = None
    except PreconditionViolation as exc:
        result, questions, error = None, session.questions, str(exc)
    return result, questions, session.transcript, error


def explore_branches(world: World, algorithm: str, budget: int | None = None) -> list[BranchOutcome]:
    """Run ``algorithm`` once per distinct sequence of Normal answers.

    Leaves are returned depth-first with Yes explored before No.
    """
    outcomes = []
    stack: list[tuple[Answer, ...]] = [()]
    while stack:
        prefix = stack.pop()
        strategy = Branching(prefix)
        result, questions, transcript, error = _run_once(world, algorithm, strategy, budget)
        path = tuple(strategy.taken)
        outcomes.append(BranchOutcome(result, questions, path, transcript, error))
        # Every answer past the prefix was a default Yes; its No sibling is unexplored.
        for k in range(len(prefix), len(path)):
            stack.append(path[:k] + (Answer.NO,))
    return outcomes


def replay(world: World, algorithm: str, branch_id: Sequence[Answer], budget: int | None = None) -> BranchOutcome:
    """Rerun one branch; raises if the branch asks Normals more questions than recorded."""
    strategy = Scripted(branch_id)
    result, questions, transcript, error = _run_once(world, algorithm, strategy, budget)
    if not strategy.exhausted:
        raise ValueError("branch_id is longer than the path it replays")
    return BranchOutcome(result, questions, tuple(branch_id), transcript, error)


# ---------------------------------------------------------------------------
# Claims


def check_outcome(world: World, algorithm: str, outcome: BranchOutcome, budget: int | None = None) -> list[str]:
    """Return the list of claims this branch violates (empty when all hold)."""
    n = len(world)
    normals = world.normals
    bound = question_bound(algorithm, n)
    if outcome.error is not None:
        return [f"no precondition violation ({outcome.error})"]
    bad = []
    normal_directed = sum(1 for e in outcome.transcript.entries if e.respondent in normals)
    if len(outcome.branch_id) != normal_directed:
        bad.append("branch_id length = Normal-directed questions")
    if outcome.questions != outcome.transcript.question_count:
        bad.append("reported questions = transcript length")
    if outcome.questions > bound:
        bad.append(f"questions <= {bound}")

    if algorithm == "line_scan":
        scan, trace = outcome.result
        if not world[scan.trusted].reliable:
            bad.append("line_scan returns a reliable processor")
        potentials = [length - 1 - cursor for length, cursor in trace] + [0]
        for entry, before, after in zip(outcome.transcript.entries, potentials, potentials[1:]):
            drop = before - after
            if drop < 1 or (entry.answer is Answer.NO and drop != 1):
                bad.append(f"line potential drop at question {entry.i}")
                break
    elif algorithm == "find_all_knights":
        report = outcome.result
        if set(report.knights) != world.knights:
            bad.append("knights = true Knight set")
        if report.phase1_questions > n - 1:
            bad.append(f"phase 1 questions <= {n - 1}")
    elif algorithm == "find_reliable_pairing":
        report = outcome.result
        if not world[report.trusted].reliable:
            bad.append("pairing returns a reliable processor")
        for k, audit in enumerate(report.rounds):
            bad.extend(f"round {k}: {v}" for v in audit.violations())
    elif algorithm == "identify_normals":
        report = outcome.result
        if set(report.normals) != normals:
            bad.append("normals = true Normal set")
        for record in report.case_trace:
            bad.extend(f"case x={record.x}: {v}" for v in record.violations())
    return bad


@dataclass(frozen=True)
class Failure:
    world: str
    algorithm: str
    branch_id: str
    claim: str


@dataclass
class VerificationReport:
    n_range: tuple[int, int]
    worlds_checked: int = 0
    branches_checked: int = 0
    failures: list[Failure] = field(default_factory=list)
    case_a_calls: int = 0
    rounds_audited: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: VerificationReport) -> VerificationReport:
        return VerificationReport(
            (min(self.n_range[0], other.n_range[0]), max(self.n_range[1], other.n_range[1])),
            self.worlds_checked + other.worlds_checked,
            self.branches_checked + other.branches_checked,
            self.failures + other.failures,
            self.case_a_calls + other.case_a_calls,
            self.rounds_audited + other.rounds_audited,
        )

    def to_dict(self) -> dict:
        return {
            "n_range": list(self.n_range),
            "worlds_checked": self.worlds_checked,
            "branches_checked": self.branches_checked,
            "rounds_audited": self.rounds_audited,
            "case_a_calls": self.case_a_calls,
            "passed": self.passed,
            "failures": [
                {"world": f.world, "algorithm": f.algorithm, "branch_id": f.branch_id, "claim": f.claim}
                for f in self.failures
            ],
        }


def _verification_runs(world: World) -> list[tuple[str, str, int | None]]:
    """(label, algorithm, budget) triples checked for every world."""
    true_count = len(world.normals)
    return [
        ("line_scan", "line_scan", None),
        ("find_all_knights", "find_all_knights", None),
        ("find_reliable_pairing", "find_reliable_pairing", None),
        (f"identify_normals[budget={true_count}]", "identify_normals", true_count),
        (f"identify_normals[budget={default_budget(len(world))}]", "identify_normals", None),
    ]


def verify_world(world: World) -> VerificationReport:
    n = len(world)
    report = VerificationReport((n, n), worlds_checked=1)
    label_world = serialize_world(world)
    for label, algorithm, budget in _verification_runs(world):
        outcomes = explore_branches(world, algorithm, budget)
        report.branches_checked += len(outcomes)
        if len({o.branch_id for o in outcomes}) != len(outcomes):
            report.failures.append(Failure(label_world, label, "", "branch ids are distinct"))
        for outcome in outcomes:
            for claim in check_outcome(world, algorithm, outcome, budget):
                report.failures.append(Failure(label_world, label, outcome.branch_label, claim))
            if outcome.error is not None:
                continue
            if algorithm == "find_reliable_pairing":
                report.rounds_audited += len(outcome.result.rounds)
            elif algorithm == "identify_normals":
                report.case_a_calls += sum(r.stopped_in == "CaseA" for r in outcome.result.case_trace)
    return report


def _verify_chunk(world_strings: list[str]) -> VerificationReport:
    from .world import parse_world

    total = None
    for s in world_strings:
        r = verify_world(parse_world(s))
        total = r if total is None else total.merge(r)
    return total


def exhaustive_check(n_max: int = 7, n_min: int = 1, workers: int | None = None) -> VerificationReport:
    """Check every claim on every majority-ok world with ``n_min <= n <= n_max``.

    ``workers > 1`` spreads worlds over processes; the merged report is the
    same either way apart from failure order, which is sorted.
    """
    if n_max < 1 or n_min < 1 or n_min > n_max:
        raise ValueError("need 1 <= n_min <= n_max")
    worlds = [serialize_world(w) for n in range(n_min, n_max + 1) for w in enumerate_worlds(n)]
    if workers and workers > 1:
        chunks = [worlds[k::workers * 4] for k in range(workers * 4)]
        with ProcessPoolExecutor(workers) as pool:
            parts = [p for p in pool.map(_verify_chunk, [c for c in chunks if c]) if p is not None]
    else:
        parts = [_verify_chunk(worlds)]
    report = VerificationReport((n_min, n_max))
    for part in parts:
        report = report.merge(part)
    report.n_range = (n_min, n_max)
    report.failures.sort(key=lambda f: (len(f.world), f.world, f.algorithm, f.branch_id, f.claim))
    return report

