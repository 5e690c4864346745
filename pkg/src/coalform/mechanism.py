"""Coalition-structure formation mechanisms.

A mechanism takes one (structure, label) choice per player and returns the
final coalition structure together with each player's final label. Profiles
are positional: entry ``i`` belongs to player ``i + 1``. Anything with
``structure`` and ``label`` attributes works as a choice.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

from .errors import ProjectionUndefined, StructureNotImplementable, ValidationError
from .partitions import CoalitionStructure

# (player, chosen structure, chosen label, final structure) -> final label
Projection = Mapping[tuple, str]


@dataclass(frozen=True)
class Outcome:
    structure: CoalitionStructure
    labels: tuple[str, ...]


class Mechanism:
    """Base class: subclasses implement :meth:`decide`."""

    name = "abstract"

    def __init__(self, projection: Projection | None = None):
        self.projection = dict(projection or {})

    def decide(self, profile: Sequence) -> CoalitionStructure:
        raise NotImplementedError

    def project(self, player: int, choice, final: CoalitionStructure, labels=None) -> str:
        if choice.structure == final:
            return choice.label
        key = (player, choice.structure, choice.label, final)
        if key in self.projection:
            return self.projection[key]
        if labels is None or choice.label in labels.get((player, final), ()):
            return choice.label
        raise ProjectionUndefined(
            f"player {player}: label {choice.label!r} chosen at {choice.structure} "
            f"has no image in {final} and no projection row"
        )

    def apply(self, profile: Sequence, labels: Mapping | None = None) -> Outcome:
        """Final structure and labels. ``labels`` maps (player, structure) to the label set
        and enables the projection check."""
        final = self.decide(profile)
        out = tuple(self.project(i + 1, c, final, labels) for i, c in enumerate(profile))
        return Outcome(final, out)

    def __repr__(self):
        return f"{type(self).__name__}()"


class Unanimity(Mechanism):
    """A coalition of two or more forms only if every member picked a structure in
    which their own coalition is exactly that coalition; everyone else is alone."""

    name = "unanimity"

    def decide(self, profile):
        own = [c.structure.block_of(i + 1) for i, c in enumerate(profile)]
        agreed = []
        for g in set(own):
            if len(g) >= 2 and all(own[p - 1] == g for p in g):
                agreed.append(g)
        placed = {p for g in agreed for p in g}
        singles = [(p,) for p in range(1, len(profile) + 1) if p not in placed]
        return CoalitionStructure(tuple(agreed) + tuple(singles))


class Singletons(Mechanism):
    """Everyone ends up alone; the mechanism of the K=1 game."""

    name = "identity"

    def decide(self, profile):
        return CoalitionStructure.separated(range(1, len(profile) + 1))


class TableMechanism(Mechanism):
    """Extensional mechanism given as explicit rows.

    ``table`` maps a tuple of (structure, label) pairs, one per player, to an
    :class:`Outcome`.
    """

    name = "table"

    def __init__(self, table: Mapping[tuple, Outcome], projection=None):
        super().__init__(projection)
        self.table = dict(table)

    def _row(self, profile):
        key = tuple((c.structure, c.label) for c in profile)
        try:
            return self.table[key]
        except KeyError:
            raise ValidationError(
                "mechanism table has no row for profile "
                + "; ".join(f"{s}:{l}" for s, l in key)
            ) from None

    def decide(self, profile):
        return self._row(profile).structure

    def apply(self, profile, labels=None):
        return self._row(profile)


MECHANISMS = {"unanimity": Unanimity, "identity": Singletons}


def get_mechanism(name: str, projection: Projection | None = None) -> Mechanism:
    try:
        return MECHANISMS[name](projection)
    except KeyError:
        raise ValidationError(f"unknown mechanism {name!r}; built-ins: {sorted(MECHANISMS)}") from None


def apply_unanimity(profile: Sequence, labels: Mapping | None = None, projection=None) -> Outcome:
    return Unanimity(projection).apply(profile, labels)


def _profiles(game):
    return product(*game.choice_sets)


def implementable_structures(m: Mechanism, game) -> set[CoalitionStructure]:
    """Exact image of the mechanism over every choice profile of ``game``."""
    return {m.apply(c, game.strategy_labels).structure for c in _profiles(game)}


def preimage_count(m: Mechanism, game, p: CoalitionStructure) -> int:
    """Number of choice profiles the mechanism sends to ``p``."""
    count = sum(1 for c in _profiles(game) if m.apply(c, game.strategy_labels).structure == p)
    if count == 0:
        raise StructureNotImplementable(f"{p} is not implementable by {m.name}")
    return count


def check_nested_rules(small_m: Mechanism, small_game, big_m: Mechanism, big_game) -> bool:
    """True iff the larger-K mechanism agrees with the smaller one on the smaller choice space."""
    for c in _profiles(small_game):
        if small_m.apply(c, small_game.strategy_labels) != big_m.apply(c, big_game.strategy_labels):
            return False
    return True
