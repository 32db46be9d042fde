"""Command line front end: solve puzzle files, check the bundled corpus,
and run strategy simulations.

Exit codes are part of the interface so shell scripts can assert verdicts:
0 for a unique resolution (unique world or unique guilt set), 2 for
multiple resolutions, 3 for an inconsistent puzzle, and 1 for parse, usage
or I/O errors. `simulate` exits 0 only when every trial succeeds.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from importlib import resources
from pathlib import Path

from .dsl import ParseError, parse
from .interrogation import (
    AnswerValue,
    Island,
    KnowledgeWorld,
    Knowledge,
    PreconditionError,
    StrategyResult,
    describe_question,
    generate_knowledge_world,
    run_ask_all_about_others,
    run_classify_islands,
    run_count_known,
    run_count_unknown,
    run_neil,
    run_secret_attribute,
    strategy_solve_liars,
    strategy_solve_mixed,
    strategy_solve_truthtellers,
)
from .solver import SearchSpaceError, SolveReport, Verdict, solve

DEFAULT_SEED = 1729
SEED_ENV_VAR = "ISLANDER_SEED"
_ADVERSARY_SALT = 0x5DEECE66D

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MULTIPLE = 2
EXIT_INCONSISTENT = 3

_VERDICT_EXIT = {
    Verdict.UNIQUE_WORLD: EXIT_OK,
    Verdict.UNIQUE_GUILT: EXIT_OK,
    Verdict.MULTIPLE: EXIT_MULTIPLE,
    Verdict.INCONSISTENT: EXIT_INCONSISTENT,
}

STRATEGIES = (
    "classify_islands",
    "ask_all_about_others",
    "count_known",
    "count_unknown",
    "solve_truthtellers",
    "solve_liars",
    "solve_mixed",
    "neil",
    "secret_attribute",
)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"islander: {SEED_ENV_VAR} must be an integer, got {raw!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="islander",
        description="Solve guilt puzzles and simulate detective questioning strategies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a .puz file and print the report")
    p_solve.add_argument("file", help="puzzle file to solve")
    p_solve.add_argument("--json", action="store_true", help="machine-readable output")

    p_corpus = sub.add_parser("corpus", help="solve the bundled corpus against expectations")
    p_corpus.add_argument("--json", action="store_true", help="machine-readable output")
    p_corpus.add_argument("--dir", default=None, help="corpus directory override")

    p_sim = sub.add_parser("simulate", help="run a strategy over randomized worlds")
    p_sim.add_argument("--strategy", required=True, choices=STRATEGIES)
    p_sim.add_argument("--island", default="mixed", choices=("tt", "liars", "mixed"))
    p_sim.add_argument("--n", type=int, default=5, help="number of persons per world")
    p_sim.add_argument("--criminals", default="1", help="criminal count, e.g. 2 or 1-3")
    p_sim.add_argument("--trials", type=int, default=100)
    p_sim.add_argument("--seed", type=int, default=None,
                       help=f"base seed (default {DEFAULT_SEED}, or ${SEED_ENV_VAR})")
    p_sim.add_argument("--knowledge-density", type=float, default=0.0)
    p_sim.add_argument("--count-public", action="store_true",
                       help="make the criminal count public knowledge")
    p_sim.add_argument("--mode", default="robust", choices=("robust", "paper-literal"),
                       help="variant of the liars strategy")
    p_sim.add_argument("--json", action="store_true", help="machine-readable output")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_ERROR
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "corpus":
            return _cmd_corpus(args)
        return _cmd_simulate(args)
    except SystemExit as exc:
        if exc.code not in (0, None) and isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return EXIT_ERROR
        return EXIT_OK if exc.code in (0, None) else int(exc.code)


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def _report_lines(report: SolveReport) -> list[str]:
    def names(values) -> str:
        return ", ".join(values) if values else "(none)"

    lines = [
        f"verdict: {report.verdict.value}",
        f"consistent worlds: {report.world_count}",
        f"forced guilty: {names(report.forced_guilty)}",
        f"forced innocent: {names(report.forced_innocent)}",
        "forced types: " + (
            ", ".join(f"{p}={t.value}" for p, t in report.forced_types.items()) or "(none)"
        ),
        f"unresolved: {names(report.unresolved)}",
    ]
    if report.warnings:
        lines.append("warnings:")
        lines.extend(f"  - {w}" for w in report.warnings)
    return lines


def _cmd_solve(args) -> int:
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"islander: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        puzzle = parse(text)
    except ParseError as exc:
        print(f"{path}:{exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        report = solve(puzzle)
    except SearchSpaceError as exc:
        print(f"islander: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        print(json.dumps(report.to_json_dict(), indent=2))
    else:
        print("\n".join(_report_lines(report)))
    return _VERDICT_EXIT[report.verdict]


# ---------------------------------------------------------------------------
# corpus
# ---------------------------------------------------------------------------

def _corpus_entries(directory) -> list:
    return sorted((e for e in directory.iterdir() if e.name.endswith(".puz")),
                  key=lambda e: e.name)


def _cmd_corpus(args) -> int:
    directory = Path(args.dir) if args.dir else resources.files("islander") / "corpus"
    results = []
    for entry in _corpus_entries(directory):
        name = entry.name[: -len(".puz")]
        detail = ""
        passed = False
        try:
            report = solve(parse(entry.read_text(encoding="utf-8")))
            expected_name = f"{name}.expected.json"
            expected_entry = directory / expected_name
            try:
                expected = json.loads(expected_entry.read_text(encoding="utf-8"))
            except (OSError, FileNotFoundError):
                detail = f"missing expectation file {expected_name}"
            except json.JSONDecodeError as exc:
                detail = f"unreadable expectation file {expected_name}: {exc}"
            else:
                actual = report.to_json_dict()
                if actual == expected:
                    passed = True
                else:
                    diffs = [
                        key for key in sorted(set(expected) | set(actual))
                        if expected.get(key) != actual.get(key)
                    ]
                    detail = "mismatch in " + ", ".join(diffs)
        except ParseError as exc:
            detail = f"parse error: {exc}"
        except SearchSpaceError as exc:
            detail = str(exc)
        results.append({"name": name, "passed": passed, "detail": detail})

    all_passed = bool(results) and all(r["passed"] for r in results)
    if args.json:
        print(json.dumps({"results": results, "all_passed": all_passed}, indent=2))
    else:
        if not results:
            print("no .puz files found")
        width = max((len(r["name"]) for r in results), default=0)
        for r in results:
            status = "PASS" if r["passed"] else f"FAIL  {r['detail']}"
            print(f"{r['name']:<{width}}  {status}")
    return EXIT_OK if all_passed else EXIT_ERROR


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------

def _parse_criminals(raw: str, n: int):
    try:
        if "-" in raw:
            low_s, high_s = raw.split("-", 1)
            low, high = int(low_s), int(high_s)
        else:
            low = high = int(raw)
    except ValueError:
        raise SystemExit(f"islander: bad --criminals value {raw!r} (want e.g. 2 or 1-3)")
    if not 1 <= low <= high <= n:
        raise SystemExit(f"islander: criminal range {raw!r} is infeasible for n={n}")
    return low if low == high else (low, high)


def _known_criminals(kw: KnowledgeWorld) -> frozenset[str]:
    return frozenset(
        q for (p, q), entry in kw.knowledge.items() if entry is Knowledge.KNOWS_GUILTY
    )


def _run_strategy(name: str, kw: KnowledgeWorld, rng: random.Random, mode: str):
    """Returns (success, accused, questions, transcript)."""
    if name == "classify_islands":
        tt, liars, transcript = run_classify_islands(kw, rng)
        actual_tt = frozenset(p for p in kw.persons if kw.island_of(p) is Island.TRUTH_TELLERS)
        return tt == actual_tt, tt, len(transcript), transcript
    if name == "ask_all_about_others":
        result = run_ask_all_about_others(kw, rng)
        ok = result.accused <= kw.guilty and result.accused >= _known_criminals(kw)
        return ok, result.accused, result.questions_asked, list(result.transcript)

    runners = {
        "count_known": run_count_known,
        "count_unknown": run_count_unknown,
        "solve_truthtellers": strategy_solve_truthtellers,
        "solve_mixed": strategy_solve_mixed,
        "neil": run_neil,
        "secret_attribute": run_secret_attribute,
    }
    if name == "solve_liars":
        result: StrategyResult = strategy_solve_liars(kw, rng, mode=mode)
    else:
        result = runners[name](kw, rng)
    ok = result.accused == kw.guilty
    return ok, result.accused, result.questions_asked, list(result.transcript)


def _transcript_json(transcript) -> list[dict]:
    rows = []
    for answer in transcript:
        row = {
            "person": answer.person,
            "question": describe_question(answer.question),
            "answer": answer.value.value,
        }
        if answer.value is AnswerValue.TOKEN:
            row["token"] = answer.token
        rows.append(row)
    return rows


def _cmd_simulate(args) -> int:
    if args.mode != "robust" and args.strategy != "solve_liars":
        print("islander: --mode applies only to the solve_liars strategy", file=sys.stderr)
        return EXIT_ERROR
    if args.trials < 1:
        print("islander: --trials must be at least 1", file=sys.stderr)
        return EXIT_ERROR
    seed = args.seed if args.seed is not None else _default_seed()
    criminals = _parse_criminals(args.criminals, args.n)

    master = random.Random(seed)
    trial_seeds = [master.randrange(2 ** 63) for _ in range(args.trials)]

    successes = 0
    failures = []
    question_counts = []
    for trial, world_seed in enumerate(trial_seeds):
        try:
            kw = generate_knowledge_world(
                n=args.n,
                island=args.island,
                criminals=criminals,
                density=args.knowledge_density,
                count_public=args.count_public,
                secret=args.strategy == "secret_attribute",
                seed=world_seed,
            )
            rng = random.Random(world_seed ^ _ADVERSARY_SALT)
            ok, accused, questions, transcript = _run_strategy(
                args.strategy, kw, rng, args.mode
            )
        except PreconditionError as exc:
            print(f"islander: precondition refused: {exc}", file=sys.stderr)
            return EXIT_ERROR
        question_counts.append(questions)
        if ok:
            successes += 1
        else:
            failures.append({
                "trial": trial,
                "world_seed": world_seed,
                "expected": sorted(kw.guilty),
                "accused": sorted(accused),
                "transcript": _transcript_json(transcript),
            })

    stats = {
        "min": min(question_counts),
        "max": max(question_counts),
        "mean": round(sum(question_counts) / len(question_counts), 4),
    }
    if args.json:
        payload = {
            "strategy": args.strategy,
            "island": args.island,
            "n": args.n,
            "criminals": args.criminals,
            "trials": args.trials,
            "seed": seed,
            "knowledge_density": args.knowledge_density,
            "count_public": args.count_public,
            "mode": args.mode,
            "successes": successes,
            "failures": failures,
            "question_stats": stats,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"strategy: {args.strategy} (island {args.island}, n {args.n}, "
              f"criminals {args.criminals}, seed {seed})")
        print(f"trials: {args.trials}  successes: {successes}")
        print(f"questions per trial: min {stats['min']}, mean {stats['mean']}, "
              f"max {stats['max']}")
        for f in failures[:10]:
            print(f"trial {f['trial']} (world seed {f['world_seed']}): "
                  f"expected {', '.join(f['expected'])}; accused "
                  f"{', '.join(f['accused']) or '(nobody)'}")
        if len(failures) > 10:
            print(f"... and {len(failures) - 10} more failures")
    return EXIT_OK if successes == args.trials else EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
