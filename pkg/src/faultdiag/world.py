"""Ground truth for a population of processors.

A world is a fixed assignment of types to processors 0..n-1.  The compact
text form uses one letter per processor: ``K`` (Knight), ``V`` (knaVe),
``N`` (Normal).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass


class ParseError(ValueError):
    """Raised for a malformed world string."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class ProcessorType(enum.Enum):
    KNIGHT = "knight"
    KNAVE = "knave"
    NORMAL = "normal"

    @property
    def letter(self) -> str:
        return _TYPE_TO_LETTER[self]

    @property
    def reliable(self) -> bool:
        """Knights and Knaves both yield correct information to NGP questions."""
        return self is not ProcessorType.NORMAL

    @classmethod
    def from_letter(cls, letter: str) -> ProcessorType:
        return _LETTER_TO_TYPE[letter]


_LETTER_TO_TYPE = {
    "K": ProcessorType.KNIGHT,
    "V": ProcessorType.KNAVE,
    "N": ProcessorType.NORMAL,
}
_TYPE_TO_LETTER = {t: c for c, t in _LETTER_TO_TYPE.items()}


@dataclass(frozen=True)
class Census:
    knights: int
    knaves: int
    normals: int
    majority_ok: bool

    @property
    def n(self) -> int:
        return self.knights + self.knaves + self.normals

    @property
    def reliable(self) -> int:
        return self.knights + self.knaves


@dataclass(frozen=True)
class World:
    types: tuple[ProcessorType, ...]

    def __post_init__(self):
        if len(self.types) < 1:
            raise ValueError("a world needs at least one processor")
        object.__setattr__(self, "types", tuple(self.types))

    def __len__(self) -> int:
        return len(self.types)

    def __getitem__(self, index: int) -> ProcessorType:
        return self.types[index]

    def __str__(self) -> str:
        return serialize_world(self)

    @property
    def n(self) -> int:
        return len(self.types)

    def indices_of(self, kind: ProcessorType) -> set[int]:
        return {i for i, t in enumerate(self.types) if t is kind}

    @property
    def knights(self) -> set[int]:
        return self.indices_of(ProcessorType.KNIGHT)

    @property
    def normals(self) -> set[int]:
        return self.indices_of(ProcessorType.NORMAL)


def parse_world(text: str) -> World:
    """Parse a K/V/N string such as ``"KKVN"`` into a :class:`World`."""
    if not text:
        raise ParseError("world string is empty")
    types = []
    for pos, ch in enumerate(text):
        try:
            types.append(ProcessorType.from_letter(ch))
        except KeyError:
            raise ParseError(
                f"invalid processor letter {ch!r} at position {pos} (expected K, V or N)",
                position=pos,
            ) from None
    return World(tuple(types))


def serialize_world(world: World) -> str:
    return "".join(t.letter for t in world.types)


def census(world: World) -> Census:
    knights = knaves = normals = 0
    for t in world.types:
        if t is ProcessorType.KNIGHT:
            knights += 1
        elif t is ProcessorType.KNAVE:
            knaves += 1
        else:
            normals += 1
    return Census(knights, knaves, normals, majority_ok=2 * normals < len(world))
