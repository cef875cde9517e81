"""Scenario runner and command line interface.

Subcommands::

    faultdiag simulate --world KKVN --algorithm find_all_knights --strategy always_no
    faultdiag trace    --world KKVN --algorithm identify_normals --strategy seeded_random --seed 3
    faultdiag verify   --n-max 7
    faultdiag sweep    --n-from 2 --n-to 20 --algorithm find_reliable_pairing --trials 100 --seed 1

Relative ``--out`` paths are resolved against ``$FAULTDIAG_OUT_DIR`` when set.
Exit codes: 0 success, 1 verification failure or impossible run, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .diagnosis import KnightReport, NormalReport, PairingReport, PreconditionViolation, ScanResult, Session
from .interrogation import AlwaysNo, AlwaysYes, ScriptExhausted, Scripted, SeededRandom, Transcript, coerce_answer
from .verifier import ALGORITHMS, exhaustive_check, question_bound, run_algorithm
from .world import ParseError, World, census, parse_world, serialize_world

STRATEGIES = ("always_yes", "always_no", "scripted", "seeded_random")
OUT_DIR_ENV = "FAULTDIAG_OUT_DIR"


class MajorityWarning(UserWarning):
    """The world has at least as many Normals as reliable processors."""


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    world: str
    algorithm: str
    strategy: str = "always_yes"
    script: tuple[str, ...] | None = None
    seed: int | None = None
    normal_budget: int | None = None

    def validate(self) -> World:
        world = parse_world(self.world)
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"unknown strategy {self.strategy!r}; choose from {', '.join(STRATEGIES)}")
        if self.strategy == "scripted" and self.script is None:
            raise ConfigError("strategy 'scripted' requires a script")
        if self.strategy == "seeded_random" and self.seed is None:
            raise ConfigError("strategy 'seeded_random' requires a seed")
        return world


@dataclass(frozen=True)
class RunSummary:
    n: int
    algorithm: str
    questions_used: int
    bound: int
    within_bound: bool
    result: dict
    majority_ok: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "algorithm": self.algorithm,
            "questions_used": self.questions_used,
            "bound": self.bound,
            "within_bound": self.within_bound,
            "result": self.result,
            "majority_ok": self.majority_ok,
        }


def _make_strategy(config: ScenarioConfig):
    if config.strategy == "always_yes":
        return AlwaysYes()
    if config.strategy == "always_no":
        return AlwaysNo()
    if config.strategy == "scripted":
        return Scripted([coerce_answer(a) for a in config.script])
    return SeededRandom()


def result_dict(report: Any) -> dict:
    if isinstance(report, tuple):  # line_scan returns (ScanResult, trace)
        report = report[0]
    if isinstance(report, (ScanResult, PairingReport)):
        return {"trusted": report.trusted}
    if isinstance(report, KnightReport):
        return {"trusted": report.trusted, "knights": sorted(report.knights)}
    if isinstance(report, NormalReport):
        return {"normals": sorted(report.normals)}
    raise TypeError(f"unexpected report {type(report).__name__}")


def run_scenario(config: ScenarioConfig) -> tuple[Transcript, RunSummary]:
    """Run one scenario.  Deterministic in ``config`` (including its seed)."""
    world = config.validate()
    c = census(world)
    if not c.majority_ok:
        warnings.warn(
            f"world {config.world} has {c.normals} Normals out of {c.n}; guarantees do not apply",
            MajorityWarning,
            stacklevel=2,
        )
    session = Session(world, _make_strategy(config), rng=random.Random(config.seed or 0))
    report, questions = run_algorithm(config.algorithm, session, config.normal_budget)
    bound = question_bound(config.algorithm, len(world))
    summary = RunSummary(
        n=len(world),
        algorithm=config.algorithm,
        questions_used=questions,
        bound=bound,
        within_bound=questions <= bound,
        result=result_dict(report),
        majority_ok=c.majority_ok,
    )
    return session.transcript, summary


def transcript_to_dict(world: str, algorithm: str, transcript: Transcript, summary: RunSummary) -> dict:
    return {
        "world": world,
        "algorithm": algorithm,
        "entries": [
            {
                "i": e.i,
                "respondent": e.respondent,
                "predicate": {"kind": e.question.predicate.kind.value, "target": e.question.predicate.target},
                "answer": e.answer.value,
            }
            for e in transcript.entries
        ],
        "result": summary.result,
        "questions": transcript.question_count,
        "summary": summary.to_dict(),
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def sample_majority_world(n: int, rng: random.Random) -> World:
    """Uniform over the worlds of size ``n`` whose Normals are a strict minority."""
    letters = "KVN"
    while True:
        text = "".join(rng.choice(letters) for _ in range(n))
        if 2 * text.count("N") < n:
            return parse_world(text)


SWEEP_COLUMNS = ("n", "algorithm", "seed", "questions", "bound", "within_bound", "majority_ok", "result")


def _result_cell(result: dict) -> str:
    parts = []
    for key, value in result.items():
        parts.append(f"{key}=" + (";".join(map(str, value)) if isinstance(value, list) else str(value)))
    return " ".join(parts)


def sweep(n_from: int, n_to: int, algorithm: str, trials: int, seed: int) -> list[dict]:
    """Random majority-ok worlds answered by seeded random Normals."""
    master = random.Random(seed)
    rows = []
    for n in range(n_from, n_to + 1):
        for _ in range(trials):
            world = sample_majority_world(n, master)
            trial_seed = master.getrandbits(64)
            config = ScenarioConfig(serialize_world(world), algorithm, "seeded_random", seed=trial_seed)
            _, summary = run_scenario(config)
            rows.append({
                "n": n,
                "algorithm": algorithm,
                "seed": trial_seed,
                "questions": summary.questions_used,
                "bound": summary.bound,
                "within_bound": summary.within_bound,
                "majority_ok": summary.majority_ok,
                "result": _result_cell(summary.result),
            })
    return rows


def rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def format_trace(config: ScenarioConfig, transcript: Transcript, summary: RunSummary) -> str:
    world = parse_world(config.world)
    lines = [f"world {config.world} (n={summary.n}), algorithm {config.algorithm}, strategy {config.strategy}"]
    for e in transcript.entries:
        who = world[e.respondent].value
        lines.append(f"  Q{e.i + 1:<3} ask {e.respondent} ({who}): {e.question.render()} -> {e.answer.value}")
    lines.append(
        f"result {summary.result}; {summary.questions_used} questions (bound {summary.bound}, "
        f"{'within' if summary.within_bound else 'EXCEEDS'} bound)"
    )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# CLI


def _resolve_out(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(text: str, out: str | None) -> None:
    target = _resolve_out(out)
    if target is None:
        sys.stdout.write(text)
    else:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text)


def _add_scenario_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--world", required=True, help="processor types as a K/V/N string")
    p.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    p.add_argument("--strategy", default="always_yes", choices=STRATEGIES)
    p.add_argument("--script", help="comma separated yes/no answers for the scripted strategy")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, dest="normal_budget", help="Normal budget for identify_normals")
    p.add_argument("--out")


def _config_from_args(args) -> ScenarioConfig:
    script = tuple(s for s in args.script.split(",") if s) if args.script is not None else None
    return ScenarioConfig(args.world, args.algorithm, args.strategy, script, args.seed, args.normal_budget)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="faultdiag", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    _add_scenario_args(sub.add_parser("simulate", help="run one scenario, print transcript JSON"))
    _add_scenario_args(sub.add_parser("trace", help="run one scenario, print a per-question log"))

    v = sub.add_parser("verify", help="exhaustively check every claim up to --n-max")
    v.add_argument("--n-max", type=int, default=7)
    v.add_argument("--n-min", type=int, default=1)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--out")

    s = sub.add_parser("sweep", help="random worlds and Normals, one CSV row per trial")
    s.add_argument("--n-from", type=int, required=True)
    s.add_argument("--n-to", type=int, required=True)
    s.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command in ("simulate", "trace"):
            config = _config_from_args(args)
            transcript, summary = run_scenario(config)
            if args.command == "simulate":
                _emit(dumps(transcript_to_dict(config.world, config.algorithm, transcript, summary)), args.out)
            else:
                _emit(format_trace(config, transcript, summary), args.out)
            return 0
        if args.command == "verify":
            if args.n_max < 1 or args.n_min < 1 or args.n_min > args.n_max:
                raise ConfigError("need 1 <= --n-min <= --n-max")
            report = exhaustive_check(args.n_max, args.n_min, workers=args.workers)
            _emit(dumps(report.to_dict()), args.out)
            return 0 if report.passed else 1
        if args.command == "sweep":
            if args.n_from < 1 or args.n_from > args.n_to or args.trials < 0:
                raise ConfigError("need 1 <= --n-from <= --n-to and --trials >= 0")
            rows = sweep(args.n_from, args.n_to, args.algorithm, args.trials, args.seed)
            _emit(rows_to_csv(rows), args.out)
            return 0
    except (ParseError, ConfigError, ValueError) as exc:
        print(f"faultdiag: error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionViolation, ScriptExhausted) as exc:
        print(f"faultdiag: run aborted: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
