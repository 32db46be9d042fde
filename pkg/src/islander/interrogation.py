"""Interrogation simulator: knowledge worlds, questions and detective strategies.

A KnowledgeWorld is ground truth (types and the guilty set) plus what each
person knows about the others' guilt. Everyone knows their own guilt; all
other knowledge is factive and partial. Questions about possibility
("could the criminals be exactly this list?") are answered by checking
whether any criminal set compatible with the askee's knowledge fits; a
crime definitely occurred, so compatible sets are never empty.

Answers come out through the speaker's type: truth-teller types answer
truthfully, liar types flip yes and no. The one exception is the direct
guilt question, where partial truth-tellers lie when guilty and responsible
liars always answer yes. A liar whose honest answer would be "I don't know"
picks yes or no adversarially from a seeded source, so the robust strategies
below are checked to be independent of those coin flips.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

from .model import Island, SpeakerType

TT_POOL = (SpeakerType.ABSOLUTE_TRUTH_TELLER, SpeakerType.PARTIAL_TRUTH_TELLER)
LIAR_POOL = (SpeakerType.ABSOLUTE_LIAR, SpeakerType.RESPONSIBLE_LIAR)
ISLAND_MODES = ("tt", "liars", "mixed")


class PreconditionError(ValueError):
    """A strategy or question was used outside its stated premises."""


class KnowledgeWorldError(ValueError):
    """A knowledge world violates an invariant (non-factive entry, bad count...)."""


class Knowledge(enum.Enum):
    KNOWS_GUILTY = "knows_guilty"
    KNOWS_INNOCENT = "knows_innocent"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class KnowledgeWorld:
    persons: tuple[str, ...]
    type_of: Mapping[str, SpeakerType]
    guilty: frozenset[str]
    knowledge: Mapping[tuple[str, str], Knowledge] = field(default_factory=dict)
    count_public: Optional[int] = None
    secret: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.persons:
            raise KnowledgeWorldError("a knowledge world needs at least one person")
        if len(set(self.persons)) != len(self.persons):
            raise KnowledgeWorldError("duplicate person names")
        if set(self.type_of) != set(self.persons):
            raise KnowledgeWorldError("types must cover exactly the persons")
        if not self.guilty:
            raise KnowledgeWorldError("the guilty set is empty: no crime to solve")
        if not self.guilty <= set(self.persons):
            raise KnowledgeWorldError("guilty set references unknown persons")
        for (p, q), entry in self.knowledge.items():
            if p not in self.type_of or q not in self.type_of or p == q:
                raise KnowledgeWorldError(f"bad knowledge pair ({p}, {q})")
            if entry is Knowledge.KNOWS_GUILTY and q not in self.guilty:
                raise KnowledgeWorldError(f"{p} cannot know innocent {q} to be guilty")
            if entry is Knowledge.KNOWS_INNOCENT and q in self.guilty:
                raise KnowledgeWorldError(f"{p} cannot know guilty {q} to be innocent")
        if self.count_public is not None and self.count_public != len(self.guilty):
            raise KnowledgeWorldError("public count disagrees with the guilty set")

    def knows(self, p: str, q: str) -> Knowledge:
        return self.knowledge.get((p, q), Knowledge.UNKNOWN)

    def island_of(self, p: str) -> Island:
        return self.type_of[p].island

    def all_knowledge_unknown(self) -> bool:
        return all(v is Knowledge.UNKNOWN for v in self.knowledge.values())

    def knows_full_roster(self, p: str) -> bool:
        """Does p know the guilt status of every other person?"""
        return all(
            self.knows(p, q) is not Knowledge.UNKNOWN for q in self.persons if q != p
        )


# ---------------------------------------------------------------------------
# Questions and answers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KnownFact:
    """A control question whose answer the detective already knows."""

    truth: bool


@dataclass(frozen=True)
class DirectGuilt:
    """Are you guilty?"""


@dataclass(frozen=True)
class PossibleSubset:
    """Is it possible that all the criminals are within this group?"""

    group: frozenset[str]


@dataclass(frozen=True)
class PossibleExact:
    """Is it possible that exactly this group committed the crime?"""

    group: frozenset[str]


@dataclass(frozen=True)
class PossibleSizeExcludingSelf:
    """Could there be m criminals, none of them you?"""

    m: int


@dataclass(frozen=True)
class PossibleInnocent:
    """Is it possible that this person is innocent?"""

    target: str


@dataclass(frozen=True)
class DidDetectiveDoIt:
    """Did I (the detective, an outsider) do it? Factual, so the honest
    answer may be "I don't know"."""


@dataclass(frozen=True)
class DetectivePossiblyGuilty:
    """Is it possible that I (the detective) committed the crime? The
    yes-or-no possibility form of the question above, usable with liars."""


@dataclass(frozen=True)
class SecretAttribute:
    """Open-ended question about a crime detail only the criminals know."""


Question = Union[
    KnownFact, DirectGuilt, PossibleSubset, PossibleExact,
    PossibleSizeExcludingSelf, PossibleInnocent, DidDetectiveDoIt,
    DetectivePossiblyGuilty, SecretAttribute,
]


def describe_question(question: Question) -> str:
    match question:
        case KnownFact(truth):
            return f"known_fact({str(truth).lower()})"
        case DirectGuilt():
            return "direct_guilt"
        case PossibleSubset(group):
            return "possible_subset(" + ", ".join(sorted(group)) + ")"
        case PossibleExact(group):
            return "possible_exact(" + ", ".join(sorted(group)) + ")"
        case PossibleSizeExcludingSelf(m):
            return f"possible_size_excluding_self({m})"
        case PossibleInnocent(target):
            return f"possible_innocent({target})"
        case DidDetectiveDoIt():
            return "did_detective_do_it"
        case DetectivePossiblyGuilty():
            return "detective_possibly_guilty"
        case SecretAttribute():
            return "secret_attribute"
        case _:
            raise ValueError(f"unknown question {question!r}")


class AnswerValue(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"
    TOKEN = "token"


@dataclass(frozen=True)
class Answer:
    person: str
    question: Question
    value: AnswerValue
    token: Optional[str] = None


def _yes_no(person: str, question: Question, value: bool) -> Answer:
    return Answer(person, question, AnswerValue.YES if value else AnswerValue.NO)


# ---------------------------------------------------------------------------
# Truthful answers (epistemic core)
# ---------------------------------------------------------------------------

def _epistemic_base(kw: KnowledgeWorld, p: str) -> tuple[set[str], set[str]]:
    """Persons p knows to be in every compatible criminal set / in none."""
    must = {q for q in kw.persons if q != p and kw.knows(p, q) is Knowledge.KNOWS_GUILTY}
    banned = {q for q in kw.persons if q != p and kw.knows(p, q) is Knowledge.KNOWS_INNOCENT}
    if p in kw.guilty:
        must.add(p)
    else:
        banned.add(p)
    return must, banned


def _compatible_exists(
    kw: KnowledgeWorld,
    p: str,
    *,
    within: Optional[frozenset[str]] = None,
    exclude: frozenset[str] = frozenset(),
    size: Optional[int] = None,
) -> bool:
    """Is some criminal set compatible with p's knowledge under the extra
    constraints? Compatible means: contains everything p knows guilty and p
    (iff guilty), avoids everyone p knows innocent, is non-empty, and has
    the public size when one is known."""
    must, banned = _epistemic_base(kw, p)
    if must & (banned | exclude):
        return False
    if within is not None and not must <= within:
        return False
    universe = set(kw.persons) - banned - exclude
    if within is not None:
        universe &= set(within)
    extras = len(universe) - len(must)
    if size is not None and kw.count_public is not None and size != kw.count_public:
        return False
    target = size if size is not None else kw.count_public
    if target is None:
        return len(must) > 0 or extras > 0
    return target >= 1 and len(must) <= target <= len(must) + extras


def _exact_compatible(kw: KnowledgeWorld, p: str, group: frozenset[str]) -> bool:
    must, banned = _epistemic_base(kw, p)
    if not group:
        return False
    if not must <= group or group & banned:
        return False
    if kw.count_public is not None and len(group) != kw.count_public:
        return False
    return True


def _detective_possible(kw: KnowledgeWorld, p: str) -> bool:
    """Could the detective (an outsider) be among the criminals, as far as p
    can tell? Someone who knows the whole roster's guilt is treated as
    knowing the answer outright."""
    if kw.knows_full_roster(p):
        return False
    if kw.count_public is None:
        return True
    must, banned = _epistemic_base(kw, p)
    target = kw.count_public - 1
    extras = len(set(kw.persons) - banned) - len(must)
    return len(must) <= target <= len(must) + extras


def _require_person(kw: KnowledgeWorld, p: str) -> None:
    if p not in kw.type_of:
        raise PreconditionError(f"unknown person '{p}'")


def _require_group(kw: KnowledgeWorld, group: Iterable[str]) -> None:
    bad = set(group) - set(kw.persons)
    if bad:
        raise PreconditionError(f"question group references unknown persons {sorted(bad)}")


def truthful_answer(kw: KnowledgeWorld, p: str, question: Question) -> Answer:
    """What p would answer if answering honestly to the extent of their
    knowledge. Possibility questions never come back unknown: they ask about
    the askee's own knowledge."""
    _require_person(kw, p)
    guilty = p in kw.guilty
    match question:
        case KnownFact(truth):
            return _yes_no(p, question, truth)
        case DirectGuilt():
            return _yes_no(p, question, guilty)
        case PossibleSubset(group):
            _require_group(kw, group)
            return _yes_no(p, question, _compatible_exists(kw, p, within=group))
        case PossibleExact(group):
            _require_group(kw, group)
            return _yes_no(p, question, _exact_compatible(kw, p, group))
        case PossibleSizeExcludingSelf(m):
            return _yes_no(p, question, _compatible_exists(kw, p, exclude=frozenset({p}), size=m))
        case PossibleInnocent(target):
            _require_person(kw, target)
            return _yes_no(p, question, _compatible_exists(kw, p, exclude=frozenset({target})))
        case DidDetectiveDoIt():
            if _detective_possible(kw, p):
                return Answer(p, question, AnswerValue.UNKNOWN)
            return Answer(p, question, AnswerValue.NO)
        case DetectivePossiblyGuilty():
            return _yes_no(p, question, _detective_possible(kw, p))
        case SecretAttribute():
            if kw.secret is None:
                raise PreconditionError("no secret attribute is configured for this world")
            if guilty:
                return Answer(p, question, AnswerValue.TOKEN, token=kw.secret)
            return Answer(p, question, AnswerValue.UNKNOWN)
        case _:
            raise PreconditionError(f"unknown question {question!r}")


def spoken_answer(
    kw: KnowledgeWorld, p: str, question: Question, rng: Optional[random.Random] = None
) -> Answer:
    """The answer p actually gives, filtered through their speaker type."""
    rng = rng or random.Random(0)
    honest = truthful_answer(kw, p, question)
    speaker_type = kw.type_of[p]

    if speaker_type is SpeakerType.ABSOLUTE_TRUTH_TELLER:
        return honest
    if speaker_type is SpeakerType.PARTIAL_TRUTH_TELLER:
        if isinstance(question, DirectGuilt) and p in kw.guilty:
            return Answer(p, question, AnswerValue.NO)
        return honest

    # Liar types from here on.
    if isinstance(question, DirectGuilt) and speaker_type is SpeakerType.RESPONSIBLE_LIAR:
        return Answer(p, question, AnswerValue.YES)
    if isinstance(question, SecretAttribute):
        return Answer(p, question, AnswerValue.TOKEN, token=_wrong_token(kw, rng))
    if honest.value is AnswerValue.YES:
        return Answer(p, question, AnswerValue.NO)
    if honest.value is AnswerValue.NO:
        return Answer(p, question, AnswerValue.YES)
    # Honest "I don't know" on a yes-or-no question: the liar answers
    # adversarially. Robust strategies must not depend on this choice.
    return Answer(p, question, rng.choice((AnswerValue.YES, AnswerValue.NO)))


def _wrong_token(kw: KnowledgeWorld, rng: random.Random) -> str:
    while True:
        token = f"bogus-{rng.getrandbits(32):08x}"
        if token != kw.secret:
            return token


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StrategyResult:
    accused: frozenset[str]
    transcript: tuple[Answer, ...]
    questions_asked: int


def _result(accused: Iterable[str], transcript: list[Answer]) -> StrategyResult:
    return StrategyResult(frozenset(accused), tuple(transcript), len(transcript))


def _require_single_island(kw: KnowledgeWorld, island: Island, what: str) -> None:
    wrong = [p for p in kw.persons if kw.island_of(p) is not island]
    if wrong:
        raise PreconditionError(
            f"{what} requires everyone to be from the {island.value} island; "
            f"{wrong[0]} is not"
        )


def _require_all_unknown(kw: KnowledgeWorld, what: str) -> None:
    if not kw.all_knowledge_unknown():
        raise PreconditionError(
            f"{what} assumes no one knows anything about anyone else's guilt"
        )


def run_classify_islands(
    kw: KnowledgeWorld, rng: Optional[random.Random] = None
) -> tuple[frozenset[str], frozenset[str], list[Answer]]:
    """Sort everyone by island with one control question each. Truth-tellers
    affirm a known truth; liars deny it."""
    rng = rng or random.Random(0)
    transcript = [spoken_answer(kw, p, KnownFact(True), rng) for p in kw.persons]
    tt = frozenset(a.person for a in transcript if a.value is AnswerValue.YES)
    liars = frozenset(kw.persons) - tt
    return tt, liars, transcript


def strategy_classify_islands(
    kw: KnowledgeWorld, rng: Optional[random.Random] = None
) -> tuple[frozenset[str], frozenset[str]]:
    tt, liars, _ = run_classify_islands(kw, rng)
    return tt, liars


def run_ask_all_about_others(
    kw: KnowledgeWorld, rng: Optional[random.Random] = None
) -> StrategyResult:
    """Ask every person whether every other person could be innocent.

    A truth-teller answers no (or a liar answers yes) exactly when they know
    the target must be guilty, so the accused are the criminals whose deed
    some other person knows about; never an innocent. Islands are assumed
    already known (run classification first on mixed crowds)."""
    rng = rng or random.Random(0)
    transcript: list[Answer] = []
    accused: set[str] = set()
    for p in kw.persons:
        for q in kw.persons:
            if p == q:
                continue
            answer = spoken_answer(kw, p, PossibleInnocent(q), rng)
            transcript.append(answer)
            if kw.island_of(p) is Island.TRUTH_TELLERS:
                if answer.value is AnswerValue.NO:
                    accused.add(q)
            elif answer.value is AnswerValue.YES:
                accused.add(q)
    return _result(accused, transcript)


def strategy_ask_all_about_others(
    kw: KnowledgeWorld, rng: Optional[random.Random] = None
) -> frozenset[str]:
    return run_ask_all_about_others(kw, rng).accused


def run_count_known(kw: KnowledgeWorld, rng: Optional[random.Random] = None) -> StrategyResult:
    """With the criminal count public and nobody knowing about anybody else,
    ask each person whether that many criminals could exist without them.
    The guilty know they are in the gang, so their honest answer is no."""
    rng = rng or random.Random(0)
    if kw.count_public is None:
        raise PreconditionError("count premise violated: the criminal count must be public")
    _require_all_unknown(kw, "the public-count strategy")
    m = kw.count_public
    transcript: list[Answer] = []
    accused: set[str] = set()
    for p in kw.persons:
        answer = spoken_answer(kw, p, PossibleSizeExcludingSelf(m), rng)
        transcript.append(answer)
        expected = AnswerValue.NO if kw.island_of(p) is Island.TRUTH_TELLERS else AnswerValue.YES
        if answer.value is expected:
            accused.add(p)
    return _result(accused, transcript)


def strategy_count_known(
    kw: KnowledgeWorld, rng: Optional[random.Random] = None
) -> frozenset[str]:
    return run_count_known(kw, rng).accused


def run_count_unknown(kw: KnowledgeWorld, rng: Optional[random.Random] = None) -> StrategyResult:
    """With no count known and no knowledge of others, ask everyone whether
    it is possible that everyone committed the crime. Only the guilty can
    honestly say yes; the innocent know of their own innocence."""
    rng = rng or random.Random(0)
    if kw.count_public is not None:
        raise PreconditionError(
            "count premise violated: this strategy assumes the criminal count is not public"
        )
    _require_all_unknown(kw, "the unknown-count strategy")
    everyone = frozenset(kw.persons)
    transcript: list[Answer] = []
    accused: set[str] = set()
    for p in kw.persons:
        answer = spoken_answer(kw, p, PossibleExact(everyone), rng)
        transcript.append(answer)
        expected = AnswerValue.YES if kw.island_of(p) is Island.TRUTH_TELLERS else AnswerValue.NO
        if answer.value is expected:
            accused.add(p)
    return _result(accused, transcript)


def strategy_count_unknown(
    kw: KnowledgeWorld, rng: Optional[random.Random] = None
) -> frozenset[str]:
    return run_count_unknown(kw, rng).accused


def strategy_solve_truthtellers(
    kw: KnowledgeWorld, rng: Optional[random.Random] = None
) -> StrategyResult:
    """Two phases on the truth-tellers' island. First everyone is asked about
    everyone else, catching each criminal someone else knows about. Then each
    still-unidentified person is asked whether the crime could have been
    committed entirely by the identified criminals and the rest of the crowd,
    i.e. without them; only a criminal must answer no."""
    rng = rng or random.Random(0)
    _require_single_island(kw, Island.TRUTH_TELLERS, "the truth-tellers strategy")
    phase1 = run_ask_all_about_others(kw, rng)
    accused = set(phase1.accused)
    transcript = list(phase1.transcript)
    everyone = set(kw.persons)
    for p in kw.persons:
        if p in accused:
            continue
        group = frozenset(accused | (everyone - {p}))
        answer = spoken_answer(kw, p, PossibleSubset(group), rng)
        transcript.append(answer)
        if answer.value is AnswerValue.NO:
            accused.add(p)
    return _result(accused, transcript)


def strategy_solve_liars(
    kw: KnowledgeWorld,
    rng: Optional[random.Random] = None,
    mode: str = "robust",
) -> StrategyResult:
    """Solve any crime on the liars' island with one yes-or-no question per
    person.

    The robust mode asks whether the criminals could all be among the others;
    a guilty liar flips their honest no to yes regardless of what anyone
    knows. The literal mode instead asks about a random list of people not
    including the askee; it is guaranteed only when nobody knows anything
    about anybody else, since an innocent who knows of a criminal missing
    from the list would honestly answer no and get misaccused."""
    rng = rng or random.Random(0)
    _require_single_island(kw, Island.LIARS, "the liars strategy")
    if mode not in ("robust", "paper-literal"):
        raise PreconditionError(f"unknown liars-strategy mode '{mode}'")
    transcript: list[Answer] = []
    accused: set[str] = set()
    everyone = set(kw.persons)
    for p in kw.persons:
        if mode == "robust":
            question: Question = PossibleSubset(frozenset(everyone - {p}))
        else:
            others = sorted(everyone - {p})
            if not others:
                raise PreconditionError(
                    "the literal liars strategy needs at least two persons"
                )
            size = kw.count_public if kw.count_public is not None else rng.randint(1, len(others))
            if size > len(others):
                raise PreconditionError(
                    "the literal liars strategy cannot draw a list when everyone is guilty"
                )
            question = PossibleExact(frozenset(rng.sample(others, size)))
        answer = spoken_answer(kw, p, question, rng)
        transcript.append(answer)
        if answer.value is AnswerValue.YES:
            accused.add(p)
    return _result(accused, transcript)


def strategy_solve_mixed(
    kw: KnowledgeWorld, rng: Optional[random.Random] = None
) -> StrategyResult:
    """Classify islands with one question each, then ask each person whether
    the criminals could all be among the others, reading the answer through
    the island. At most two questions per person, for any crowd."""
    rng = rng or random.Random(0)
    tt, _, transcript_list = run_classify_islands(kw, rng)
    transcript = list(transcript_list)
    accused: set[str] = set()
    everyone = set(kw.persons)
    for p in kw.persons:
        answer = spoken_answer(kw, p, PossibleSubset(frozenset(everyone - {p})), rng)
        transcript.append(answer)
        guilty_mark = AnswerValue.NO if p in tt else AnswerValue.YES
        if answer.value is guilty_mark:
            accused.add(p)
    return _result(accused, transcript)


def run_neil(kw: KnowledgeWorld, rng: Optional[random.Random] = None) -> StrategyResult:
    """Identify a lone criminal among strangers with one question for all.

    Truth-tellers are asked whether the detective did it: the criminal knows
    better and says no, the innocent honestly cannot tell. Liars get the
    possibility form of the same question so nobody has to answer "I don't
    know", and the criminal's flipped answer is yes."""
    rng = rng or random.Random(0)
    if len(kw.guilty) != 1:
        raise PreconditionError("this strategy needs exactly one criminal")
    if kw.count_public != 1:
        raise PreconditionError("this strategy needs the one-criminal count to be public")
    _require_all_unknown(kw, "the lone-criminal strategy")
    islands = {kw.island_of(p) for p in kw.persons}
    if len(islands) != 1:
        raise PreconditionError("this strategy needs a single-island crowd")
    island = islands.pop()

    transcript: list[Answer] = []
    accused: set[str] = set()
    for p in kw.persons:
        if island is Island.TRUTH_TELLERS:
            answer = spoken_answer(kw, p, DidDetectiveDoIt(), rng)
            if answer.value is AnswerValue.NO:
                accused.add(p)
        else:
            answer = spoken_answer(kw, p, DetectivePossiblyGuilty(), rng)
            if answer.value is AnswerValue.YES:
                accused.add(p)
        transcript.append(answer)
    return _result(accused, transcript)


def strategy_neil(kw: KnowledgeWorld, rng: Optional[random.Random] = None) -> str:
    result = run_neil(kw, rng)
    if len(result.accused) != 1:
        raise PreconditionError(
            f"expected exactly one self-betraying answer, got {sorted(result.accused)}"
        )
    return next(iter(result.accused))


def run_secret_attribute(
    kw: KnowledgeWorld, rng: Optional[random.Random] = None
) -> StrategyResult:
    """Ask everyone for the crime detail only the criminals know. Truthful
    criminals produce it, truthful innocents cannot. Refuses liar crowds:
    an open-ended answer from a liar is arbitrary, not informative."""
    rng = rng or random.Random(0)
    if kw.secret is None:
        raise PreconditionError("no secret attribute is configured for this world")
    _require_single_island(kw, Island.TRUTH_TELLERS, "the secret-attribute strategy")
    transcript: list[Answer] = []
    accused: set[str] = set()
    for p in kw.persons:
        answer = spoken_answer(kw, p, SecretAttribute(), rng)
        transcript.append(answer)
        if answer.value is AnswerValue.TOKEN and answer.token == kw.secret:
            accused.add(p)
    return _result(accused, transcript)


def strategy_secret_attribute(
    kw: KnowledgeWorld, rng: Optional[random.Random] = None
) -> frozenset[str]:
    return run_secret_attribute(kw, rng).accused


# ---------------------------------------------------------------------------
# Random world generation
# ---------------------------------------------------------------------------

def generate_knowledge_world(
    n: int,
    island: str = "mixed",
    criminals: Union[int, tuple[int, int]] = 1,
    density: float = 0.0,
    count_public: bool = False,
    secret: bool = False,
    seed: int = 0,
) -> KnowledgeWorld:
    """Deterministically generate a knowledge world from a seed.

    `criminals` is a fixed count or an inclusive (low, high) range; knowledge
    entries are drawn per ordered pair with probability `density` and always
    record the truth, so factivity holds by construction.
    """
    if n < 1:
        raise PreconditionError("need at least one person")
    if island not in ISLAND_MODES:
        raise PreconditionError(f"unknown island mode '{island}'")
    if not 0.0 <= density <= 1.0:
        raise PreconditionError("knowledge density must be within [0, 1]")
    if isinstance(criminals, int):
        low = high = criminals
    else:
        low, high = criminals
    if not 1 <= low <= high <= n:
        raise PreconditionError(
            f"criminal count range {low}..{high} is infeasible for {n} persons"
        )

    rng = random.Random(seed)
    persons = tuple(f"P{i}" for i in range(1, n + 1))
    pool = {"tt": TT_POOL, "liars": LIAR_POOL, "mixed": TT_POOL + LIAR_POOL}[island]
    type_of = {p: rng.choice(pool) for p in persons}
    k = low if low == high else rng.randint(low, high)
    guilty = frozenset(rng.sample(persons, k))
    knowledge: dict[tuple[str, str], Knowledge] = {}
    for p in persons:
        for q in persons:
            if p != q and rng.random() < density:
                knowledge[(p, q)] = (
                    Knowledge.KNOWS_GUILTY if q in guilty else Knowledge.KNOWS_INNOCENT
                )
    return KnowledgeWorld(
        persons=persons,
        type_of=type_of,
        guilty=guilty,
        knowledge=knowledge,
        count_public=k if count_public else None,
        secret=f"secret-{rng.getrandbits(32):08x}" if secret else None,
    )
