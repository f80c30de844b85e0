"""
Certificates
Machine-checkable witnesses for A-cycles, A-subdivisions of K_t and
arboricity partitions, with verifiers that name the first failing rule.
"""

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple, Union

from glarb.abelian import Elem
from glarb.cycles import has_a_cycle
from glarb.errors import UnknownEdgeError
from glarb.graph import LGraph, ValueSet, cycle_value, path_value

Path = Tuple[int, ...]
Pair = Tuple[int, int]


@dataclass(frozen=True)
class CycleCert:
    """A simple cycle, its claimed γ-value and the claimed length bound d"""

    vertices: Path
    value: Elem
    d: int = 3

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def length(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class SubdivCert:
    """Branching vertices of a K_t subdivision and one path per pair.

    paths[(i, j)] with i < j runs from branch[i] to branch[j].
    """

    branch: Path
    paths: Mapping[Pair, Path]
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "branch", tuple(self.branch))
        object.__setattr__(self, "paths", {tuple(k): tuple(p) for k, p in sorted(self.paths.items())})

    @property
    def t(self) -> int:
        return len(self.branch)

    def branch_path(self, i: int, j: int) -> Path:
        """The branching path oriented from branch[i] to branch[j]"""
        if i < j:
            return self.paths[(i, j)]
        return tuple(reversed(self.paths[(j, i)]))

    def __eq__(self, other) -> bool:
        return (isinstance(other, SubdivCert) and self.branch == other.branch
                and dict(self.paths) == dict(other.paths) and self.d == other.d)

    def __hash__(self) -> int:
        return hash((self.branch, tuple(sorted(self.paths.items())), self.d))


@dataclass(frozen=True)
class PartitionCert:
    """A total map vertex -> part index in 1..k"""

    parts: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "parts", dict(sorted(self.parts.items())))

    @property
    def k(self) -> int:
        return max(self.parts.values(), default=0)

    def groups(self) -> Dict[int, FrozenSet[int]]:
        grouped: Dict[int, set] = {}
        for v, p in self.parts.items():
            grouped.setdefault(p, set()).add(v)
        return {p: frozenset(vs) for p, vs in sorted(grouped.items())}

    def __eq__(self, other) -> bool:
        return isinstance(other, PartitionCert) and dict(self.parts) == dict(other.parts)

    def __hash__(self) -> int:
        return hash(tuple(self.parts.items()))


Certificate = Union[CycleCert, SubdivCert, PartitionCert]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification; falsy verdicts name the failing rule"""

    ok: bool
    rule: str = ""
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        if self.ok:
            return {"success": True, "verdict": "OK"}
        return {"success": False, "verdict": "FAIL", "rule": self.rule, "detail": self.detail}


OK = Verdict(True)


def _fail(rule: str, detail: str) -> Verdict:
    return Verdict(False, rule, detail)


def _check_walk(graph: LGraph, walk: Sequence[int], closed: bool) -> Optional[Verdict]:
    if len(set(walk)) != len(walk):
        return _fail("distinct-vertices", f"{list(walk)} repeats a vertex")
    for v in walk:
        if v not in graph:
            return _fail("vertex-exists", f"vertex {v} is not in the graph")
    pairs = list(zip(walk, walk[1:]))
    if closed:
        pairs.append((walk[-1], walk[0]))
    for u, v in pairs:
        if not graph.has_edge(u, v):
            return _fail("edge-exists", f"{u} {v} is not an edge")
    return None


# ===================== Verifiers =====================

def verify_cycle(graph: LGraph, values: ValueSet, cert: CycleCert, d: Optional[int] = None) -> Verdict:
    """Cycle exists, is simple, its value is the claimed one and lies in A, length >= d"""
    d = cert.d if d is None else d
    if cert.length < 3:
        return _fail("length", f"a cycle needs at least 3 vertices, got {cert.length}")
    problem = _check_walk(graph, cert.vertices, closed=True)
    if problem:
        return problem
    value = cycle_value(graph, cert.vertices)
    if value != cert.value:
        return _fail("value-claim", f"claimed value {cert.value}, actual {value}")
    if not values.contains(value):
        return _fail("value-in-A", f"value {value} is not in A")
    if cert.length < d:
        return _fail("min-length", f"length {cert.length} < {d}")
    return OK


def verify_subdivision(graph: LGraph, values: ValueSet, cert: SubdivCert, d: Optional[int] = None) -> Verdict:
    """Every disjointness rule, every path value in A, every length >= d"""
    d = cert.d if d is None else d
    branch = cert.branch
    if len(set(branch)) != len(branch):
        return _fail("branch-distinct", f"branching vertices {list(branch)} repeat")
    for v in branch:
        if v not in graph:
            return _fail("vertex-exists", f"branching vertex {v} is not in the graph")
    expected = set(itertools.combinations(range(len(branch)), 2))
    present = set(cert.paths)
    if present != expected:
        missing = sorted(expected - present)
        extra = sorted(present - expected)
        return _fail("pair-coverage", f"missing pairs {missing}, unexpected pairs {extra}")

    branch_set = set(branch)
    owner: Dict[int, Pair] = {}
    for (i, j), path in sorted(cert.paths.items()):
        if len(path) < 2 or path[0] != branch[i] or path[-1] != branch[j]:
            return _fail("path-endpoints", f"path {i} {j} must run from {branch[i]} to {branch[j]}")
        problem = _check_walk(graph, path, closed=False)
        if problem:
            return Verdict(False, problem.rule, f"path {i} {j}: {problem.detail}")
        for v in path[1:-1]:
            if v in branch_set:
                return _fail("internal-avoids-branch", f"path {i} {j} passes through branching vertex {v}")
            if v in owner:
                return _fail("internally-disjoint", f"paths {owner[v]} and {(i, j)} share vertex {v}")
            owner[v] = (i, j)
        value = path_value(graph, path)
        if not values.contains(value):
            return _fail("value-in-A", f"path {i} {j} has value {value} not in A")
        if len(path) - 1 < d:
            return _fail("min-length", f"path {i} {j} has length {len(path) - 1} < {d}")
    return OK


def verify_partition(graph: LGraph, values: ValueSet, cert: PartitionCert, k: Optional[int] = None) -> Verdict:
    """Total, contiguous from 1, and no part induces an A-cycle"""
    assigned = set(cert.parts)
    vertices = set(graph.vertices)
    if assigned != vertices:
        return _fail("total", f"unassigned {sorted(vertices - assigned)}, unknown {sorted(assigned - vertices)}")
    used = set(cert.parts.values())
    if used != set(range(1, cert.k + 1)):
        return _fail("contiguous", f"part indices {sorted(used)} are not 1..{cert.k}")
    if k is not None and cert.k != k:
        return _fail("part-count", f"certificate has {cert.k} parts, expected {k}")
    for p, members in cert.groups().items():
        if has_a_cycle(graph.induced(members), values):
            return _fail("acyclic-part", f"part {p} induces a cycle with value in A")
    return OK


def verify(graph: LGraph, values: ValueSet, cert: Certificate,
           d: Optional[int] = None, k: Optional[int] = None) -> Verdict:
    try:
        if isinstance(cert, CycleCert):
            return verify_cycle(graph, values, cert, d)
        if isinstance(cert, SubdivCert):
            return verify_subdivision(graph, values, cert, d)
        if isinstance(cert, PartitionCert):
            return verify_partition(graph, values, cert, k)
    except UnknownEdgeError as e:
        return _fail("edge-exists", str(e))
    raise TypeError(f"not a certificate: {cert!r}")


def assemble_walk(*paths: Sequence[int]) -> List[int]:
    """Concatenate paths that meet end to start, dropping the shared joints"""
    walk: List[int] = list(paths[0])
    for path in paths[1:]:
        if walk[-1] != path[0]:
            raise ValueError(f"path {list(path)} does not start at {walk[-1]}")
        walk.extend(path[1:])
    return walk
