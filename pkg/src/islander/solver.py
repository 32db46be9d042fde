"""Exhaustive world enumeration and forced-conclusion reports.

The solver walks every candidate assignment of types, guilt and free atoms,
keeps the worlds where all constraints hold, and reports the facts that are
identical across every surviving world. Facts are forced or they are not;
there are no preference heuristics. Enumeration order is fixed (types in
declaration order, guilt sets by ascending bitmask, free atoms by sorted
key) so identical puzzles always produce identical reports.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator

from .model import (
    ALL_TYPES,
    AtMostDistinct,
    ExactTruthTellers,
    Island,
    OneOfEach,
    Puzzle,
    SpeakerType,
    UnknownReference,
    World,
    eval_formula,
    free_names,
    knows_whodunit_key,
    knows_whodunit_persons,
)
from .semantics import admissible_for_type

DEFAULT_CANDIDATE_CEILING = 2 ** 28


class SearchSpaceError(ValueError):
    """The puzzle's candidate space exceeds the configured ceiling."""

    def __init__(self, candidates: int, ceiling: int):
        self.candidates = candidates
        self.ceiling = ceiling
        super().__init__(
            f"search space of {candidates} candidate worlds exceeds the ceiling "
            f"of {ceiling}; raise the ceiling explicitly to solve this puzzle"
        )


class Verdict(enum.Enum):
    UNIQUE_WORLD = "unique_world"
    UNIQUE_GUILT = "unique_guilt"
    MULTIPLE = "multiple"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SolveReport:
    verdict: Verdict
    world_count: int
    forced_guilty: tuple[str, ...]
    forced_innocent: tuple[str, ...]
    forced_types: dict[str, SpeakerType]
    unresolved: tuple[str, ...]
    warnings: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "consistent_world_count": self.world_count,
            "forced_guilty": list(self.forced_guilty),
            "forced_innocent": list(self.forced_innocent),
            "forced_types": {p: t.value for p, t in self.forced_types.items()},
            "unresolved": list(self.unresolved),
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class WorldCheck:
    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def _free_dimensions(puzzle: Puzzle) -> tuple[list[str], list[str]]:
    """Free-atom names and whodunit-knowledge persons that actually occur in
    some constraint. Unreferenced free atoms are excluded: they would double
    the world count without carrying information."""
    names: set[str] = set()
    kw_persons: set[str] = set()
    for formula in puzzle.constraint_formulas():
        names |= free_names(formula)
        kw_persons |= knows_whodunit_persons(formula)
    return sorted(names), sorted(kw_persons)


def _candidate_count(puzzle: Puzzle) -> int:
    names, kw_persons = _free_dimensions(puzzle)
    total = 1
    for person in puzzle.suspects:
        total *= len(puzzle.type_domain[person])
    return total * 2 ** len(puzzle.suspects) * 2 ** (len(names) + len(kw_persons))


def _cardinality_ok(puzzle: Puzzle, types: tuple[SpeakerType, ...]) -> bool:
    card = puzzle.type_cardinality
    if card is None:
        return True
    if isinstance(card, OneOfEach):
        return len(set(types)) == len(ALL_TYPES)
    if isinstance(card, ExactTruthTellers):
        return sum(1 for t in types if t.island is Island.TRUTH_TELLERS) == card.n
    if isinstance(card, AtMostDistinct):
        return len(set(types)) <= card.n
    raise UnknownReference(f"unknown type-cardinality constraint {card!r}")


def _count_ok(puzzle: Puzzle, guilty_count: int) -> bool:
    op, k = puzzle.count.op, puzzle.count.k
    if op == "=":
        return guilty_count == k
    if op == "<=":
        return guilty_count <= k
    return guilty_count >= k


def enumerate_worlds(
    puzzle: Puzzle, *, ceiling: int = DEFAULT_CANDIDATE_CEILING
) -> Iterator[World]:
    """Yield every world consistent with the puzzle, in canonical order.

    A world survives when its types respect the domains and cardinality
    constraint, its guilty set satisfies the count constraint, every axiom
    evaluates true, and every modeled statement is admissible for its
    speaker. Guilty suspects know the resolution by construction, so the
    whodunit-knowledge axiom cannot be violated here.
    """
    puzzle.validate()
    candidates = _candidate_count(puzzle)
    if candidates > ceiling:
        raise SearchSpaceError(candidates, ceiling)

    suspects = puzzle.suspects
    n = len(suspects)
    table = puzzle.statement_table()
    modeled = [s for s in puzzle.statements if s.body is not None]
    names, kw_persons = _free_dimensions(puzzle)

    domains = [
        [t for t in ALL_TYPES if t in puzzle.type_domain[p]]
        for p in suspects
    ]
    for types in itertools.product(*domains):
        if not _cardinality_ok(puzzle, types):
            continue
        type_of = dict(zip(suspects, types))
        for mask in range(2 ** n):
            guilty = frozenset(s for i, s in enumerate(suspects) if mask >> i & 1)
            if not _count_ok(puzzle, len(guilty)):
                continue
            keys = sorted(names + [knows_whodunit_key(p) for p in kw_persons if p not in guilty])
            for bits in itertools.product((False, True), repeat=len(keys)):
                world = World(type_of=type_of, guilty=guilty,
                              free_values=dict(zip(keys, bits)))
                if not all(eval_formula(world, ax, table) for ax in puzzle.axioms):
                    continue
                if all(
                    admissible_for_type(world, s.speaker, s.body, type_of[s.speaker], table)
                    for s in modeled
                ):
                    yield world


def solve(puzzle: Puzzle, *, ceiling: int = DEFAULT_CANDIDATE_CEILING) -> SolveReport:
    """Aggregate the consistent worlds into forced facts and a verdict."""
    suspects = puzzle.suspects
    count = 0
    guilt_sets: set[frozenset[str]] = set()
    always_guilty = set(suspects)
    never_guilty = set(suspects)
    seen_types: dict[str, set[SpeakerType]] = {p: set() for p in suspects}

    for world in enumerate_worlds(puzzle, ceiling=ceiling):
        count += 1
        guilt_sets.add(world.guilty)
        always_guilty &= world.guilty
        never_guilty -= world.guilty
        for p in suspects:
            seen_types[p].add(world.type_of[p])

    warnings = tuple(
        f"statement {s.label} ({s.speaker}) is unmodeled and adds no constraint: {s.text!r}"
        for s in puzzle.statements
        if s.is_unmodeled
    )

    if count == 0:
        return SolveReport(Verdict.INCONSISTENT, 0, (), (), {}, (), warnings)

    if count == 1:
        verdict = Verdict.UNIQUE_WORLD
    elif len(guilt_sets) == 1:
        verdict = Verdict.UNIQUE_GUILT
    else:
        verdict = Verdict.MULTIPLE

    forced_types = {
        p: next(iter(seen_types[p])) for p in suspects if len(seen_types[p]) == 1
    }
    unresolved = tuple(
        p for p in suspects
        if (p not in always_guilty and p not in never_guilty) or len(seen_types[p]) > 1
    )
    return SolveReport(
        verdict=verdict,
        world_count=count,
        forced_guilty=tuple(p for p in suspects if p in always_guilty),
        forced_innocent=tuple(p for p in suspects if p in never_guilty),
        forced_types=forced_types,
        unresolved=unresolved,
        warnings=warnings,
    )


def check_world(puzzle: Puzzle, world: World) -> WorldCheck:
    """Verify one world against every constraint class, with diagnostics.

    Kept deliberately plain (a straight checklist over the constraint
    classes) so it can serve as the oracle that enumeration is tested
    against.
    """
    if set(world.type_of) != set(puzzle.suspects):
        raise UnknownReference("world types must cover exactly the puzzle's suspects")
    unknown = world.guilty - set(puzzle.suspects)
    if unknown:
        raise UnknownReference(f"world guilty set references unknown persons {sorted(unknown)}")

    table = puzzle.statement_table()
    violations: list[str] = []

    for person in puzzle.suspects:
        t = world.type_of[person]
        if t not in puzzle.type_domain[person]:
            violations.append(f"type domain: {person} is {t.value}, outside their allowed types")
    types = tuple(world.type_of[p] for p in puzzle.suspects)
    if not _cardinality_ok(puzzle, types):
        violations.append("type cardinality: the type multiset violates the puzzle's constraint")

    if not _count_ok(puzzle, len(world.guilty)):
        violations.append(
            f"count constraint: {len(world.guilty)} guilty fails 'criminals {puzzle.count.op} {puzzle.count.k}'"
        )

    for i, axiom in enumerate(puzzle.axioms, start=1):
        if not eval_formula(world, axiom, table):
            violations.append(f"axiom {i}: evaluates false")

    for stmt in puzzle.statements:
        if stmt.body is None:
            continue
        t = world.type_of[stmt.speaker]
        if not admissible_for_type(world, stmt.speaker, stmt.body, t, table):
            violations.append(
                f"statement {stmt.label} ({stmt.speaker}): not admissible for a {t.value} speaker"
            )

    for person in puzzle.suspects:
        if person in world.guilty and not world.knows_whodunit(person):
            violations.append(f"knowledge axiom: guilty {person} must know the resolution")

    return WorldCheck(ok=not violations, violations=tuple(violations))
