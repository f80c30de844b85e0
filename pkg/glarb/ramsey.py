"""
Monochromatic Cliques
Edge-coloured complete graphs and an exact backtracking search for
monochromatic cliques of a requested size.
"""

import itertools
import logging
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

from glarb.abelian import Elem
from glarb.errors import PreconditionError
from glarb.graph import ValueSet, edge_key

logger = logging.getLogger(__name__)

# Colour of a pair whose value lies in A
IN_A = "in-A"

Colour = Hashable
Clique = Tuple[int, ...]


class EdgeColoredClique:
    """A complete graph on `vertices` with a colour on every pair"""

    def __init__(self, vertices: Sequence[int], colors: Mapping[Tuple[int, int], Colour]):
        self.vertices: Tuple[int, ...] = tuple(sorted(vertices))
        self._colors: Dict[Tuple[int, int], Colour] = {edge_key(u, v): c for (u, v), c in colors.items()}
        for u, v in itertools.combinations(self.vertices, 2):
            if (u, v) not in self._colors:
                raise PreconditionError(f"pair {u} {v} has no colour")

    @classmethod
    def from_values(cls, vertices: Sequence[int], value_of: Callable[[int, int], Elem],
                    values: ValueSet) -> "EdgeColoredClique":
        """Colour a pair IN_A when its value lies in A, by the value itself otherwise"""
        colors = {}
        for u, v in itertools.combinations(sorted(vertices), 2):
            value = value_of(u, v)
            colors[(u, v)] = IN_A if values.contains(value) else value
        return cls(vertices, colors)

    @classmethod
    def from_function(cls, vertices: Sequence[int], colour_of: Callable[[int, int], Colour]) -> "EdgeColoredClique":
        return cls(vertices, {(u, v): colour_of(u, v) for u, v in itertools.combinations(sorted(vertices), 2)})

    def color(self, u: int, v: int) -> Colour:
        return self._colors[edge_key(u, v)]

    def palette(self) -> List[Colour]:
        """Colours in use; IN_A first, then the rest in sorted order"""
        used = set(self._colors.values())
        rest = sorted((c for c in used if c != IN_A), key=_colour_key)
        return ([IN_A] if IN_A in used else []) + rest

    def __len__(self) -> int:
        return len(self.vertices)


def _colour_key(colour: Colour):
    if isinstance(colour, Elem):
        return (0, colour.coords)
    return (1, repr(colour))


def find_mono(clique: EdgeColoredClique, size: int, colour: Colour) -> Optional[Clique]:
    """The lexicographically first `size`-clique in one colour, or None"""
    if size < 0:
        raise PreconditionError(f"clique size must be non-negative, got {size}")
    vertices = clique.vertices
    if size > len(vertices):
        return None
    chosen: List[int] = []

    def extend(start: int) -> bool:
        if len(chosen) == size:
            return True
        for index in range(start, len(vertices) - (size - len(chosen)) + 1):
            v = vertices[index]
            if all(clique.color(u, v) == colour for u in chosen):
                chosen.append(v)
                if extend(index + 1):
                    return True
                chosen.pop()
        return False

    return tuple(chosen) if extend(0) else None


def any_mono(clique: EdgeColoredClique, size: int) -> Optional[Tuple[Clique, Colour]]:
    """First colour of the palette carrying a `size`-clique"""
    for colour in clique.palette():
        found = find_mono(clique, size, colour)
        if found is not None:
            return found, colour
    return None


def mono_clique(clique: EdgeColoredClique, t: int, s: int) -> Optional[Tuple[Clique, Colour]]:
    """A t-clique coloured IN_A, else an s-clique in a single colour outside A.

    Returns:
        (clique, colour) or None when neither exists
    """
    found = find_mono(clique, t, IN_A)
    if found is not None:
        logger.debug(f"IN_A clique of size {t}: {found}")
        return found, IN_A
    for colour in clique.palette():
        if colour == IN_A:
            continue
        found = find_mono(clique, s, colour)
        if found is not None:
            logger.debug(f"Clique of size {s} in colour {colour}: {found}")
            return found, colour
    logger.warning(f"No monochromatic clique (t={t}, s={s}) among {len(clique)} vertices")
    return None
