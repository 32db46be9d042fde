"""Core domain model: speaker types, formulas, statements, puzzles and worlds.

A puzzle fixes a roster of suspects, a per-suspect set of allowed speaker
types, a constraint on how many suspects are guilty, a list of labelled
statements, and extra axioms. A world is one complete candidate resolution:
a type for every suspect, a guilty set, and values for any free atoms.
Everything here is immutable and side-effect free; the solver enumerates
worlds and the semantics module decides which statements a speaker of a
given type could actually utter.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional, Union


class Island(enum.Enum):
    TRUTH_TELLERS = "truthtellers"
    LIARS = "liars"


class SpeakerType(enum.Enum):
    ABSOLUTE_TRUTH_TELLER = "AT"
    PARTIAL_TRUTH_TELLER = "PT"
    ABSOLUTE_LIAR = "AL"
    RESPONSIBLE_LIAR = "RL"

    @property
    def island(self) -> Island:
        if self in (SpeakerType.ABSOLUTE_TRUTH_TELLER, SpeakerType.PARTIAL_TRUTH_TELLER):
            return Island.TRUTH_TELLERS
        return Island.LIARS

    def __repr__(self) -> str:  # keeps solver reports and test diffs short
        return self.value


ALL_TYPES: tuple[SpeakerType, ...] = tuple(SpeakerType)

TRUTH_TELLER_TYPES = frozenset(
    {SpeakerType.ABSOLUTE_TRUTH_TELLER, SpeakerType.PARTIAL_TRUTH_TELLER}
)
LIAR_TYPES = frozenset({SpeakerType.ABSOLUTE_LIAR, SpeakerType.RESPONSIBLE_LIAR})


class UnknownReference(ValueError):
    """A formula mentioned a person, label or atom the puzzle does not define."""


class PuzzleError(ValueError):
    """A puzzle violates a structural invariant (duplicate names, bad refs...)."""


# ---------------------------------------------------------------------------
# Formula AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Guilty:
    person: str


@dataclass(frozen=True)
class HasType:
    person: str
    speaker_type: SpeakerType


@dataclass(frozen=True)
class FromIsland:
    person: str
    island: Island


@dataclass(frozen=True)
class CountCmp:
    """Compare the number of guilty suspects with a constant. op is =, <= or >=."""

    op: str
    k: int


@dataclass(frozen=True)
class Truthful:
    """True iff the referenced statement's body holds in the same world.

    The referenced body is evaluated at face value: no speaker substitution
    is applied even when the referenced speaker is a partial type.
    """

    label: str


@dataclass(frozen=True)
class LiesWhenAskedGuilt:
    person: str


@dataclass(frozen=True)
class KnowsWhodunit:
    person: str


@dataclass(frozen=True)
class Free:
    """An uninterpreted boolean ("I like potatoes"): no fixed truth value."""

    name: str


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    operand: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


Formula = Union[
    Guilty, HasType, FromIsland, CountCmp, Truthful, LiesWhenAskedGuilt,
    KnowsWhodunit, Free, Const, Not, And, Or, Implies, Iff,
]

TRUE = Const(True)
FALSE = Const(False)

COUNT_OPS = ("=", "<=", ">=")


def iter_subformulas(formula: Formula) -> Iterator[Formula]:
    """Pre-order walk over a formula tree."""
    yield formula
    match formula:
        case Not(operand):
            yield from iter_subformulas(operand)
        case And(left, right) | Or(left, right) | Implies(left, right) | Iff(left, right):
            yield from iter_subformulas(left)
            yield from iter_subformulas(right)
        case _:
            pass


def referenced_persons(formula: Formula) -> set[str]:
    persons: set[str] = set()
    for node in iter_subformulas(formula):
        match node:
            case Guilty(p) | HasType(p, _) | FromIsland(p, _) | LiesWhenAskedGuilt(p) | KnowsWhodunit(p):
                persons.add(p)
            case _:
                pass
    return persons


def referenced_labels(formula: Formula) -> set[str]:
    return {node.label for node in iter_subformulas(formula) if isinstance(node, Truthful)}


def free_names(formula: Formula) -> set[str]:
    return {node.name for node in iter_subformulas(formula) if isinstance(node, Free)}


def knows_whodunit_persons(formula: Formula) -> set[str]:
    return {node.person for node in iter_subformulas(formula) if isinstance(node, KnowsWhodunit)}


def replace_person(formula: Formula, old: str, new: str) -> Formula:
    """Rename every person reference `old` to `new` (used by the DSL forall sugar)."""
    match formula:
        case Guilty(p):
            return Guilty(new) if p == old else formula
        case HasType(p, t):
            return HasType(new, t) if p == old else formula
        case FromIsland(p, isl):
            return FromIsland(new, isl) if p == old else formula
        case LiesWhenAskedGuilt(p):
            return LiesWhenAskedGuilt(new) if p == old else formula
        case KnowsWhodunit(p):
            return KnowsWhodunit(new) if p == old else formula
        case Not(x):
            return Not(replace_person(x, old, new))
        case And(a, b):
            return And(replace_person(a, old, new), replace_person(b, old, new))
        case Or(a, b):
            return Or(replace_person(a, old, new), replace_person(b, old, new))
        case Implies(a, b):
            return Implies(replace_person(a, old, new), replace_person(b, old, new))
        case Iff(a, b):
            return Iff(replace_person(a, old, new), replace_person(b, old, new))
        case _:
            return formula


def substitute_self_guilt(formula: Formula, speaker: str, value: bool) -> Formula:
    """Replace every Guilty(speaker) atom with the constant `value`.

    All other atoms, including Truthful references and the speaker's other
    atoms, are left untouched. Idempotent, and distributes over connectives.
    """
    match formula:
        case Guilty(p) if p == speaker:
            return Const(value)
        case Not(x):
            return Not(substitute_self_guilt(x, speaker, value))
        case And(a, b):
            return And(substitute_self_guilt(a, speaker, value),
                       substitute_self_guilt(b, speaker, value))
        case Or(a, b):
            return Or(substitute_self_guilt(a, speaker, value),
                      substitute_self_guilt(b, speaker, value))
        case Implies(a, b):
            return Implies(substitute_self_guilt(a, speaker, value),
                           substitute_self_guilt(b, speaker, value))
        case Iff(a, b):
            return Iff(substitute_self_guilt(a, speaker, value),
                       substitute_self_guilt(b, speaker, value))
        case _:
            return formula


# ---------------------------------------------------------------------------
# Statements, puzzles, worlds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Statement:
    """One labelled sentence by one speaker.

    `body is None` marks an unmodeled sentence: it contributes no constraint
    and only surfaces as a warning in solve reports; `text` keeps its wording.
    """

    label: str
    speaker: str
    body: Optional[Formula]
    text: Optional[str] = None

    @property
    def is_unmodeled(self) -> bool:
        return self.body is None


@dataclass(frozen=True)
class OneOfEach:
    """Each of the four speaker types occurs exactly once."""


@dataclass(frozen=True)
class ExactTruthTellers:
    """Exactly n suspects are from the truth-tellers' island."""

    n: int


@dataclass(frozen=True)
class AtMostDistinct:
    """At most n distinct speaker types occur among the suspects."""

    n: int


TypeCardinality = Union[OneOfEach, ExactTruthTellers, AtMostDistinct]


def knows_whodunit_key(person: str) -> str:
    """Reserved free-value key for an innocent person's whodunit knowledge.

    The '@' prefix keeps it disjoint from user free-atom names, which the DSL
    restricts to identifiers.
    """
    return f"@knows_whodunit:{person}"


@dataclass(frozen=True)
class Puzzle:
    suspects: tuple[str, ...]
    type_domain: Mapping[str, frozenset[SpeakerType]]
    count: CountCmp
    statements: tuple[Statement, ...] = ()
    axioms: tuple[Formula, ...] = ()
    type_cardinality: Optional[TypeCardinality] = None

    def statement_table(self) -> dict[str, Statement]:
        return {s.label: s for s in self.statements}

    def constraint_formulas(self) -> tuple[Formula, ...]:
        """All formulas that constrain worlds: modeled bodies plus axioms."""
        bodies = tuple(s.body for s in self.statements if s.body is not None)
        return bodies + tuple(self.axioms)

    def validate(self) -> None:
        """Raise PuzzleError on any structural violation."""
        if not self.suspects:
            raise PuzzleError("a puzzle needs at least one suspect")
        if len(set(self.suspects)) != len(self.suspects):
            raise PuzzleError("duplicate suspect names")
        if set(self.type_domain) != set(self.suspects):
            raise PuzzleError("type domain must cover exactly the suspects")
        for person, domain in self.type_domain.items():
            if not domain:
                raise PuzzleError(f"empty type domain for suspect '{person}'")
        if self.count.op not in COUNT_OPS:
            raise PuzzleError(f"bad count comparison op '{self.count.op}'")
        if self.count.k < 0:
            raise PuzzleError("criminal count bound must be non-negative")

        labels_seen: set[str] = set()
        for stmt in self.statements:
            if stmt.label in labels_seen:
                raise PuzzleError(f"duplicate statement label '{stmt.label}'")
            if stmt.speaker not in self.type_domain:
                raise PuzzleError(
                    f"statement '{stmt.label}' has unknown speaker '{stmt.speaker}'"
                )
            if stmt.body is not None:
                self._check_formula_refs(stmt.body, earlier_labels=labels_seen,
                                         where=f"statement '{stmt.label}'")
            labels_seen.add(stmt.label)

        modeled = {s.label for s in self.statements if not s.is_unmodeled}
        for i, axiom in enumerate(self.axioms):
            self._check_formula_refs(axiom, earlier_labels=modeled, where=f"axiom {i + 1}")

        card = self.type_cardinality
        if isinstance(card, OneOfEach) and len(self.suspects) != len(ALL_TYPES):
            raise PuzzleError("one-of-each cardinality needs exactly four suspects")
        if isinstance(card, ExactTruthTellers) and not 0 <= card.n <= len(self.suspects):
            raise PuzzleError("truth-teller count out of range")
        if isinstance(card, AtMostDistinct) and card.n < 1:
            raise PuzzleError("distinct-type bound must be at least 1")

    def _check_formula_refs(self, formula: Formula, earlier_labels: set[str], where: str) -> None:
        modeled = {s.label: s for s in self.statements if not s.is_unmodeled}
        for person in referenced_persons(formula):
            if person not in self.type_domain:
                raise PuzzleError(f"{where} references unknown person '{person}'")
        for label in referenced_labels(formula):
            if label not in earlier_labels:
                raise PuzzleError(
                    f"{where} has a truthful() reference to '{label}', which is not "
                    "an earlier modeled statement"
                )
            if label not in modeled:
                raise PuzzleError(f"{where} references unmodeled statement '{label}'")
        for node in iter_subformulas(formula):
            if isinstance(node, CountCmp) and node.op not in COUNT_OPS:
                raise PuzzleError(f"{where} uses bad count comparison op '{node.op}'")


@dataclass(frozen=True)
class World:
    """One candidate resolution of a puzzle. Treat as immutable once built."""

    type_of: Mapping[str, SpeakerType]
    guilty: frozenset[str]
    free_values: Mapping[str, bool] = field(default_factory=dict)

    def key(self) -> tuple:
        """Canonical hashable identity, for set comparisons in tests."""
        return (
            tuple(sorted((p, t.value) for p, t in self.type_of.items())),
            tuple(sorted(self.guilty)),
            tuple(sorted(self.free_values.items())),
        )

    def knows_whodunit(self, person: str) -> bool:
        """Guilty people know the crime's resolution; for the innocent it is a
        free boolean stored under a reserved key."""
        if person in self.guilty:
            return True
        key = knows_whodunit_key(person)
        if key not in self.free_values:
            raise UnknownReference(f"no whodunit-knowledge value for '{person}'")
        return self.free_values[key]


def lies_when_asked_guilt(world: World, person: str) -> bool:
    """Would this person lie if asked point-blank whether they are guilty?

    Absolute truth-tellers never do; partial truth-tellers exactly when
    guilty; absolute liars always; responsible liars exactly when innocent.
    """
    if person not in world.type_of:
        raise UnknownReference(f"unknown person '{person}'")
    t = world.type_of[person]
    guilty = person in world.guilty
    if t is SpeakerType.ABSOLUTE_TRUTH_TELLER:
        return False
    if t is SpeakerType.PARTIAL_TRUTH_TELLER:
        return guilty
    if t is SpeakerType.ABSOLUTE_LIAR:
        return True
    return not guilty


def eval_formula(
    world: World,
    formula: Formula,
    statements: Optional[Mapping[str, Statement]] = None,
) -> bool:
    """Classical two-valued evaluation of a formula in a world.

    Truthful(label) evaluates the referenced statement's body in the same
    world, at face value. KnowsWhodunit is true for the guilty by
    construction and reads a free value for the innocent.
    """
    match formula:
        case Const(value):
            return value
        case Guilty(person):
            _require_person(world, person)
            return person in world.guilty
        case HasType(person, speaker_type):
            _require_person(world, person)
            return world.type_of[person] is speaker_type
        case FromIsland(person, island):
            _require_person(world, person)
            return world.type_of[person].island is island
        case CountCmp(op, k):
            n = len(world.guilty)
            if op == "=":
                return n == k
            if op == "<=":
                return n <= k
            if op == ">=":
                return n >= k
            raise UnknownReference(f"bad count comparison op '{op}'")
        case Truthful(label):
            if statements is None or label not in statements:
                raise UnknownReference(f"unknown statement label '{label}'")
            body = statements[label].body
            if body is None:
                raise UnknownReference(f"statement '{label}' is unmodeled")
            return eval_formula(world, body, statements)
        case LiesWhenAskedGuilt(person):
            return lies_when_asked_guilt(world, person)
        case KnowsWhodunit(person):
            _require_person(world, person)
            return world.knows_whodunit(person)
        case Free(name):
            if name not in world.free_values:
                raise UnknownReference(f"unknown free atom '{name}'")
            return world.free_values[name]
        case Not(operand):
            return not eval_formula(world, operand, statements)
        case And(left, right):
            return eval_formula(world, left, statements) and eval_formula(world, right, statements)
        case Or(left, right):
            return eval_formula(world, left, statements) or eval_formula(world, right, statements)
        case Implies(left, right):
            return (not eval_formula(world, left, statements)) or eval_formula(world, right, statements)
        case Iff(left, right):
            return eval_formula(world, left, statements) == eval_formula(world, right, statements)
        case _:
            raise UnknownReference(f"unknown formula node {formula!r}")


def _require_person(world: World, person: str) -> None:
    if person not in world.type_of:
        raise UnknownReference(f"unknown person '{person}'")
