"""Adaptive fault diagnosis with self-referential yes/no questions.

Processors are Knights (always truthful), Knaves (always lying) or Normals
(arbitrary).  Asking "Is it true that P if and only if you are a Knight?"
gets the truth of P from Knights and Knaves alike, which lets a minority of
Normals be isolated.
"""

from .diagnosis import (
    CaseRecord,
    KnightReport,
    NormalReport,
    PairingReport,
    PreconditionViolation,
    RoundAudit,
    ScanResult,
    Session,
    classify_all,
    default_budget,
    find_all_knights,
    find_reliable_pairing,
    identify_normals,
    line_scan,
    pairing_round,
)
from .interrogation import (
    AlwaysNo,
    AlwaysYes,
    Answer,
    Branching,
    Predicate,
    PredicateKind,
    Question,
    Scripted,
    ScriptExhausted,
    SeededRandom,
    Transcript,
    ngp,
    predicate_truth,
    respond,
)
from .verifier import (
    enumerate_worlds,
    exhaustive_check,
    explore_branches,
    popcount,
    question_bound,
    replay,
)
from .world import Census, ParseError, ProcessorType, World, census, parse_world, serialize_world

__version__ = "0.1.0"
