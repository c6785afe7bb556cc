"""Result records shared between the algorithm and its oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# c = 12 / log2(6/5); every logarithm in the package is base 2.
DEFAULT_C = 12 / math.log2(6 / 5)


def radius_for(n: int, c: float = DEFAULT_C) -> int:
    """Ball radius ``ceil(c * log2 n)`` (0 for ``n <= 1``)."""
    if n <= 1:
        return 0
    return math.ceil(c * math.log2(n))


def log2_ceil(n: int) -> int:
    """Number of bits needed for ids ``0..n-1``."""
    return max(0, (n - 1).bit_length())


@dataclass(frozen=True)
class Classification:
    """Rich/poor/happy/sad split of the current graph ``G_i``.

    ``vertices`` is the vertex set of ``G_i`` inside the host graph; ``d``
    is ``None`` when per-vertex list sizes replace the global degree bound.
    """

    d: int | None
    c: float
    radius: int
    vertices: frozenset
    rich: frozenset
    poor: frozenset
    happy: frozenset
    sad: frozenset

    def same_sets(self, other: "Classification") -> bool:
        return (self.vertices, self.rich, self.poor, self.happy, self.sad) == (
            other.vertices, other.rich, other.poor, other.happy, other.sad)


@dataclass
class RulingForest:
    """Vertex-disjoint rooted trees covering a target set.

    ``parent`` maps every tree vertex to its parent (``None`` for roots) and
    ``depth`` to its distance from the root inside the tree.
    """

    roots: tuple
    parent: dict
    depth: dict
    root_of: dict
    rounds: int = 0
    alpha: int = 0
    beta: int = 0

    @property
    def members(self) -> frozenset:
        return frozenset(self.parent)

    def max_depth(self) -> int:
        return max(self.depth.values(), default=0)


@dataclass
class PeelingTrace:
    """Per-iteration record of the peeling loop."""

    happy_sets: list = field(default_factory=list)
    sizes: list = field(default_factory=list)
    poor_counts: list = field(default_factory=list)
    sad_counts: list = field(default_factory=list)
    sad_low_degree: list = field(default_factory=list)
    bound_failures: list = field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.happy_sets)

    @property
    def ratios(self) -> list:
        return [len(a) / s for a, s in zip(self.happy_sets, self.sizes)]
