"""Young diagrams and coalition structures with a bounded coalition size.

A Young diagram here only records coalition sizes (an integer partition of
the player count); a coalition structure is a labeled set partition of the
players. Both are kept in canonical form so equality is plain tuple equality.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import InvalidBounds, SizeMismatch, ValidationError


@dataclass(frozen=True, order=True)
class YoungDiagram:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise ValidationError(f"diagram parts must be positive, got {self.parts!r}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0]

    def __str__(self):
        return "[" + ",".join(map(str, self.parts)) + "]"


@dataclass(frozen=True)
class CoalitionStructure:
    """A partition of the players into coalitions.

    Blocks are stored sorted by smallest member, members ascending. Build
    through the constructor with any iterable of blocks; it canonicalizes.
    """

    blocks: tuple[tuple, ...]

    def __post_init__(self):
        blocks = [tuple(sorted(b)) for b in self.blocks]
        if any(not b for b in blocks):
            raise ValidationError("coalition structure has an empty block")
        seen = set()
        for b in blocks:
            for p in b:
                if p in seen:
                    raise ValidationError(f"player {p!r} appears in two coalitions")
                seen.add(p)
        object.__setattr__(self, "blocks", tuple(sorted(blocks, key=lambda b: b[0])))

    @property
    def players(self) -> tuple:
        return tuple(sorted(p for b in self.blocks for p in b))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def max_block(self) -> int:
        return max(len(b) for b in self.blocks)

    def diagram(self) -> YoungDiagram:
        return YoungDiagram(tuple(len(b) for b in self.blocks))

    def block_of(self, player) -> tuple:
        for b in self.blocks:
            if player in b:
                return b
        raise KeyError(player)

    @property
    def is_grand(self) -> bool:
        return len(self.blocks) == 1

    @property
    def is_separated(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    @property
    def id(self) -> str:
        """Block notation, e.g. ``"1,2|3"``."""
        return "|".join(",".join(str(p) for p in b) for b in self.blocks)

    def rename(self, mapping) -> "CoalitionStructure":
        return CoalitionStructure(tuple(tuple(mapping[p] for p in b) for b in self.blocks))

    @classmethod
    def parse(cls, text: str, convert=int) -> "CoalitionStructure":
        """Inverse of :attr:`id`. ``convert`` maps each member token to a player id."""
        text = text.strip()
        if not text:
            raise ValidationError("empty structure id")
        try:
            blocks = [tuple(convert(tok.strip()) for tok in blk.split(",")) for blk in text.split("|")]
        except (KeyError, ValueError) as exc:
            raise ValidationError(f"bad structure id {text!r}: {exc}") from None
        return cls(tuple(blocks))

    @classmethod
    def separated(cls, players: Iterable) -> "CoalitionStructure":
        return cls(tuple((p,) for p in players))

    @classmethod
    def grand(cls, players: Iterable) -> "CoalitionStructure":
        return cls((tuple(players),))

    def __str__(self):
        return self.id


def _check_bounds(n: int, k: int) -> None:
    if n < 1 or k < 1 or k > n:
        raise InvalidBounds(f"need 1 <= k <= n, got n={n}, k={k}")


def _diagrams(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(k, n), 0, -1):
        for rest in _diagrams(n - first, first):
            yield (first,) + rest


def enumerate_diagrams(n: int, k: int) -> list[YoungDiagram]:
    """Integer partitions of ``n`` with parts ``<= k``, lexicographically descending."""
    _check_bounds(n, k)
    return [YoungDiagram(p) for p in _diagrams(n, k)]


def _growth_strings(n: int, k: int) -> Iterator[list[int]]:
    # Restricted growth strings in descending lexicographic order: opening a new
    # block is tried before joining an existing one.
    rgs = [0] * n
    sizes = [0] * n

    def rec(j, nblocks):
        if j == n:
            yield rgs
            return
        for b in range(nblocks, -1, -1):
            if sizes[b] >= k:
                continue
            rgs[j] = b
            sizes[b] += 1
            yield from rec(j + 1, nblocks + (b == nblocks))
            sizes[b] -= 1

    sizes[0] = 1
    yield from rec(1, 1)


def _from_growth_string(rgs: Sequence[int], players: Sequence) -> CoalitionStructure:
    blocks: dict[int, list] = {}
    for p, b in zip(players, rgs):
        blocks.setdefault(b, []).append(p)
    return CoalitionStructure(tuple(tuple(v) for v in blocks.values()))


def growth_key(s: CoalitionStructure) -> tuple[int, ...]:
    """Restricted growth string of ``s``; sorting by it descending gives the canonical order."""
    index = {}
    for i, b in enumerate(s.blocks):
        for p in b:
            index[p] = i
    return tuple(index[p] for p in s.players)


def enumerate_structures(n: int, k: int) -> list[CoalitionStructure]:
    """All coalition structures of players ``1..n`` with coalitions of size ``<= k``."""
    _check_bounds(n, k)
    players = list(range(1, n + 1))
    return [_from_growth_string(r, players) for r in _growth_strings(n, k)]


def count_structures(n: int, k: int) -> int:
    """Number of set partitions of ``n`` players into blocks of size ``<= k``, by enumeration."""
    _check_bounds(n, k)
    return sum(1 for _ in _growth_strings(n, k))


def allocations_of_diagram(d: YoungDiagram, players: Iterable[Hashable]) -> list[CoalitionStructure]:
    """Every way to seat ``players`` into coalitions whose sizes are ``d.parts``."""
    players = sorted(players)
    if len(set(players)) != len(players):
        raise SizeMismatch("duplicate player ids")
    if d.n != len(players):
        raise SizeMismatch(f"diagram {d} covers {d.n} players, got {len(players)}")

    out = []

    def rec(remaining: list, sizes: Counter, acc: list):
        if not remaining:
            out.append(CoalitionStructure(tuple(acc)))
            return
        head, rest = remaining[0], remaining[1:]
        for size in sorted(s for s, c in sizes.items() if c > 0):
            sizes[size] -= 1
            for mates in combinations(rest, size - 1):
                block = (head,) + mates
                left = [p for p in rest if p not in mates]
                rec(left, sizes, acc + [block])
            sizes[size] += 1

    rec(players, Counter(d.parts), [])
    out.sort(key=growth_key, reverse=True)
    return out


def check_nesting(n: int) -> bool:
    """True iff diagrams and structures for ``k`` are contained in those for ``k+1``."""
    if n < 1:
        raise InvalidBounds(f"need n >= 1, got {n}")
    for k in range(1, n):
        if not set(enumerate_diagrams(n, k)) <= set(enumerate_diagrams(n, k + 1)):
            return False
        if not set(enumerate_structures(n, k)) <= set(enumerate_structures(n, k + 1)):
            return False
    return True
