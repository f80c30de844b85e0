"""
Abelian Group Core
Finitely generated abelian groups Z^r x Z/n1 x ... x Z/nk, their elements,
subgroups, element orders and quotients.
"""

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterator, List, Sequence, Tuple, Union

from glarb.errors import DescriptorMismatchError, MalformedInputError, PreconditionError
from glarb.lattice import IntegerLattice, smith_normal_form

INFINITE = math.inf

Order = Union[int, float]


@dataclass(frozen=True, order=True)
class GroupDesc:
    """The group Z^free_rank x Z/n1 x ... x Z/nk"""

    free_rank: int = 0
    torsion_moduli: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion_moduli", tuple(int(n) for n in self.torsion_moduli))
        if self.free_rank < 0:
            raise ValueError(f"free rank must be non-negative, got {self.free_rank}")
        for n in self.torsion_moduli:
            if n < 2:
                raise ValueError(f"torsion modulus must be at least 2, got {n}")

    @property
    def rank(self) -> int:
        """Number of coordinates of an element"""
        return self.free_rank + len(self.torsion_moduli)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> Order:
        if not self.is_finite:
            return INFINITE
        return math.prod(self.torsion_moduli)

    def elem(self, *coords: int) -> "Elem":
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        return Elem(self, tuple(coords))

    def zero(self) -> "Elem":
        return Elem(self, (0,) * self.rank)

    def unit(self, i: int) -> "Elem":
        coords = [0] * self.rank
        coords[i] = 1
        return Elem(self, tuple(coords))

    def elements(self) -> Iterator["Elem"]:
        """All elements of a finite group in lexicographic coordinate order"""
        if not self.is_finite:
            raise PreconditionError(f"cannot enumerate the infinite group {self}")
        for coords in itertools.product(*(range(n) for n in self.torsion_moduli)):
            yield Elem(self, coords)

    def __str__(self) -> str:
        return format_group(self)


@dataclass(frozen=True, order=True)
class Elem:
    """A group element; torsion coordinates are kept reduced"""

    group: GroupDesc
    coords: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.group.rank:
            raise DescriptorMismatchError(
                f"element {coords} has {len(coords)} coordinates, group {self.group} needs {self.group.rank}")
        r = self.group.free_rank
        reduced = coords[:r] + tuple(c % n for c, n in zip(coords[r:], self.group.torsion_moduli))
        object.__setattr__(self, "coords", reduced)

    def _check(self, other: "Elem") -> None:
        if not isinstance(other, Elem) or other.group != self.group:
            raise DescriptorMismatchError(f"cannot combine elements of {self.group} and {getattr(other, 'group', other)}")

    def __add__(self, other: "Elem") -> "Elem":
        self._check(other)
        return Elem(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Elem") -> "Elem":
        self._check(other)
        return Elem(self.group, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Elem":
        return Elem(self.group, tuple(-a for a in self.coords))

    def __mul__(self, p: int) -> "Elem":
        if not isinstance(p, int):
            return NotImplemented
        return Elem(self.group, tuple(p * a for a in self.coords))

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return format_elem(self)


@dataclass(frozen=True)
class SubgroupDesc:
    """The subgroup generated by a list of elements"""

    group: GroupDesc
    generators: Tuple[Elem, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.group != self.group:
                raise DescriptorMismatchError(f"generator {g} is not an element of {self.group}")

    @cached_property
    def relations(self) -> List[List[int]]:
        """Generators plus the torsion relations n_i * e_i, as integer rows"""
        rows = [list(g.coords) for g in self.generators]
        r = self.group.free_rank
        for i, n in enumerate(self.group.torsion_moduli):
            row = [0] * self.group.rank
            row[r + i] = n
            rows.append(row)
        return rows

    @cached_property
    def lattice(self) -> IntegerLattice:
        return IntegerLattice(self.group.rank, self.relations)

    @property
    def is_finite(self) -> bool:
        return all(order(g) != INFINITE for g in self.generators)

    def __contains__(self, a: Elem) -> bool:
        return in_subgroup(a, self)

    def __str__(self) -> str:
        return "<" + ";".join(format_elem(g) for g in self.generators) + ">"


# ===================== Arithmetic =====================

def add(a: Elem, b: Elem) -> Elem:
    return a + b


def neg(a: Elem) -> Elem:
    return -a


def zero(group: GroupDesc) -> Elem:
    return group.zero()


def order(a: Elem) -> Order:
    """Smallest p >= 1 with p*a == 0, or INFINITE"""
    r = a.group.free_rank
    if any(a.coords[:r]):
        return INFINITE
    return reduce(math.lcm,
                  (n // math.gcd(c, n) for c, n in zip(a.coords[r:], a.group.torsion_moduli)),
                  1)


def count_order_at_most_two(group: GroupDesc) -> int:
    """Number of g with ord(g) <= 2; free coordinates must vanish, so 2^(even moduli)"""
    return 2 ** sum(1 for n in group.torsion_moduli if n % 2 == 0)


# ===================== Subgroups and quotients =====================

def in_subgroup(a: Elem, subgroup: SubgroupDesc) -> bool:
    if a.group != subgroup.group:
        raise DescriptorMismatchError(f"element {a} is not in the ambient group {subgroup.group}")
    return list(a.coords) in subgroup.lattice


def subgroup_elements(subgroup: SubgroupDesc) -> List[Elem]:
    """Breadth-first closure of a finite subgroup, sorted"""
    if not subgroup.is_finite:
        raise PreconditionError(f"subgroup {subgroup} is infinite")
    seen = {subgroup.group.zero()}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in subgroup.generators:
                y = x + g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


@dataclass(frozen=True)
class QuotientMap:
    """Projection Γ -> Γ/Λ in Smith coordinates"""

    source: GroupDesc
    target: GroupDesc
    transform: Tuple[Tuple[int, ...], ...]
    diagonal: Tuple[int, ...] = field(default=())

    def __call__(self, a: Elem) -> Elem:
        if a.group != self.source:
            raise DescriptorMismatchError(f"element {a} is not in {self.source}")
        n = self.source.rank
        y = [sum(a.coords[i] * self.transform[i][j] for i in range(n)) for j in range(n)]
        rank = len(self.diagonal)
        free = y[rank:]
        torsion = [y[i] for i in range(rank) if self.diagonal[i] > 1]
        return Elem(self.target, tuple(free + torsion))


def quotient(group: GroupDesc, subgroup: SubgroupDesc) -> Tuple[GroupDesc, QuotientMap]:
    """Present Γ/Λ canonically from the combined relation lattice.

    Returns:
        (quotient group, projection) with torsion moduli in divisibility order
    """
    if subgroup.group != group:
        raise DescriptorMismatchError(f"subgroup {subgroup} is not a subgroup of {group}")
    diagonal, transform = smith_normal_form(subgroup.relations, group.rank)
    target = GroupDesc(group.rank - len(diagonal), tuple(d for d in diagonal if d > 1))
    projection = QuotientMap(group, target, tuple(tuple(row) for row in transform), tuple(diagonal))
    return target, projection


# ===================== Text formats =====================

_FACTOR = re.compile(r"^Z(?:\^(\d+)|/(\d+))?$")


def parse_group(text: str, line: int = None) -> GroupDesc:
    """Parse `Z^r x Z/n1 x Z/n2 ...`; `Z` is Z^1 and `Z^0` alone is trivial"""
    factors = [f.strip() for f in re.split(r"\s+x\s+", text.strip())]
    free_rank = 0
    moduli: List[int] = []
    for factor in factors:
        match = _FACTOR.match(factor.replace(" ", ""))
        if not match:
            raise MalformedInputError(f"bad group factor '{factor}' in descriptor '{text.strip()}'", line)
        power, modulus = match.groups()
        if modulus is not None:
            n = int(modulus)
            if n < 2:
                raise MalformedInputError(f"modulus must be at least 2 in '{factor}'", line)
            moduli.append(n)
        elif power is not None:
            free_rank += int(power)
        else:
            free_rank += 1
    return GroupDesc(free_rank, tuple(moduli))


def format_group(group: GroupDesc) -> str:
    parts = []
    if group.free_rank == 1:
        parts.append("Z")
    elif group.free_rank > 1 or not group.torsion_moduli:
        parts.append(f"Z^{group.free_rank}")
    parts.extend(f"Z/{n}" for n in group.torsion_moduli)
    return " x ".join(parts)


def parse_elem(group: GroupDesc, text: str, line: int = None) -> Elem:
    """Parse `(c1,...,cN)`; a bare integer is accepted for rank-one groups"""
    raw = text.strip()
    if raw.startswith("(") and raw.endswith(")"):
        body = raw[1:-1].strip()
        pieces = [p.strip() for p in body.split(",")] if body else []
    elif group.rank == 1:
        pieces = [raw]
    else:
        raise MalformedInputError(f"bad element '{raw}'", line)
    try:
        coords = tuple(int(p) for p in pieces)
    except ValueError:
        raise MalformedInputError(f"bad element '{raw}'", line)
    if len(coords) != group.rank:
        raise MalformedInputError(f"element '{raw}' needs {group.rank} coordinates for {group}", line)
    return Elem(group, coords)


def format_elem(a: Elem) -> str:
    return "(" + ",".join(str(c) for c in a.coords) + ")"


def parse_elem_list(group: GroupDesc, text: str, line: int = None) -> List[Elem]:
    """Parse `[e1;e2;...]`"""
    raw = text.strip()
    if not (raw.startswith("[") and raw.endswith("]")):
        raise MalformedInputError(f"expected a bracketed element list, got '{raw}'", line)
    body = raw[1:-1].strip()
    if not body:
        return []
    return [parse_elem(group, piece, line) for piece in body.split(";")]


def format_elem_list(elements: Sequence[Elem]) -> str:
    return "[" + ";".join(format_elem(e) for e in elements) + "]"


def combination(coefficients: Sequence[int], elements: Sequence[Elem], group: GroupDesc) -> Elem:
    total = group.zero()
    for p, a in zip(coefficients, elements):
        total = total + p * a
    return total


def generated(group: GroupDesc, elements: Sequence[Elem]) -> SubgroupDesc:
    return SubgroupDesc(group, tuple(elements))

