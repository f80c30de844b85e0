"""
File Formats
Line-oriented text grammars for labelled graphs, certificates, stage files and
plain graphs. Blank lines and lines starting with '#' are ignored everywhere.
"""

import hashlib
import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from glarb.abelian import (
    GroupDesc,
    format_elem,
    format_elem_list,
    format_group,
    parse_elem,
    parse_elem_list,
    parse_group,
)
from glarb.certificates import Certificate, CycleCert, PartitionCert, SubdivCert
from glarb.errors import MalformedInputError, PreconditionError
from glarb.graph import CofiniteSet, FiniteSet, LGraph, SubgroupComplement, ValueSet
from glarb.leveling import StageInput

logger = logging.getLogger(__name__)

VALUE_SET_KINDS = {
    FiniteSet.kind: FiniteSet,
    CofiniteSet.kind: CofiniteSet,
    SubgroupComplement.kind: SubgroupComplement,
}


class _Lines:
    """Meaningful lines with their 1-based numbers"""

    def __init__(self, text: str):
        self._items: List[Tuple[int, str]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if line and not line.startswith("#"):
                self._items.append((number, line))
        self._index = 0

    def __iter__(self) -> Iterator[Tuple[int, str]]:
        while self._index < len(self._items):
            item = self._items[self._index]
            self._index += 1
            yield item

    def peek(self) -> Optional[Tuple[int, str]]:
        if self._index < len(self._items):
            return self._items[self._index]
        return None

    def expect(self, key: str) -> Tuple[int, str]:
        """The value of the next line, which must read `key: value`"""
        item = self.peek()
        if item is None:
            raise MalformedInputError(f"missing '{key}:' line")
        number, line = item
        head, sep, rest = line.partition(":")
        if not sep or head.strip() != key:
            raise MalformedInputError(f"expected '{key}:', got '{line}'", number)
        self._index += 1
        return number, rest.strip()


def _int(text: str, number: int) -> int:
    try:
        return int(text)
    except ValueError:
        raise MalformedInputError(f"expected an integer, got '{text}'", number)


def _ints(text: str, number: int) -> List[int]:
    return [_int(piece, number) for piece in text.split()]


def _int_list(vertices: Sequence[int]) -> str:
    return " ".join(str(v) for v in vertices)


# ===================== Labelled graphs =====================

def parse_value_set(group: GroupDesc, text: str, number: Optional[int] = None) -> ValueSet:
    kind, _, rest = text.strip().partition(" ")
    if kind not in VALUE_SET_KINDS:
        raise MalformedInputError(f"unknown value-set kind '{kind}'", number)
    return VALUE_SET_KINDS[kind](group, parse_elem_list(group, rest, number))


def format_value_set(values: ValueSet) -> str:
    return f"{values.kind} {format_elem_list(values.elements)}"


def parse_graph(text: str) -> Tuple[LGraph, ValueSet]:
    """Parse the `group:` / `vertices:` / `A:` header and one `u v (c1,...)` line per edge"""
    lines = _Lines(text)
    number, descriptor = lines.expect("group")
    group = parse_group(descriptor, number)
    number, count = lines.expect("vertices")
    n = _int(count, number)
    if n < 0:
        raise MalformedInputError(f"vertex count must be non-negative, got {n}", number)
    number, spec = lines.expect("A")
    values = parse_value_set(group, spec, number)

    edges = []
    seen = set()
    for number, line in lines:
        pieces = line.split(None, 2)
        if len(pieces) != 3:
            raise MalformedInputError(f"expected 'u v label', got '{line}'", number)
        u, v = _int(pieces[0], number), _int(pieces[1], number)
        if u == v:
            raise MalformedInputError(f"loop at vertex {u}", number)
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedInputError(f"edge {u} {v} uses a vertex outside 0..{n - 1}", number)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise MalformedInputError(f"duplicate edge {u} {v}", number)
        seen.add(key)
        edges.append((u, v, parse_elem(group, pieces[2], number)))
    graph = LGraph.build(group, n, edges)
    logger.debug(f"Parsed {graph!r} with A = {values.describe()}")
    return graph, values


def format_graph(graph: LGraph, values: ValueSet) -> str:
    """Canonical graph text: edges sorted by endpoints, newline-terminated"""
    if graph.vertices != tuple(range(graph.n)):
        raise PreconditionError("only graphs on the dense ids 0..n-1 can be written")
    out = [
        f"group: {format_group(graph.group)}",
        f"vertices: {graph.n}",
        f"A: {format_value_set(values)}",
    ]
    out.extend(f"{u} {v} {format_elem(a)}" for u, v, a in sorted(graph.edges()))
    return "\n".join(out) + "\n"


def graph_digest(graph: LGraph, values: ValueSet) -> str:
    """sha256 of the canonical graph text"""
    return hashlib.sha256(format_graph(graph, values).encode("utf-8")).hexdigest()


# ===================== Certificates =====================

def format_certificate(cert: Certificate, digest: str) -> str:
    if isinstance(cert, PartitionCert):
        out = ["certificate: partition", f"graph-sha256: {digest}", f"k: {cert.k}"]
        out.extend(f"{v} {p}" for v, p in cert.parts.items())
    elif isinstance(cert, CycleCert):
        out = ["certificate: cycle", f"graph-sha256: {digest}", f"d: {cert.d}",
               f"value: {format_elem(cert.value)}", f"cycle: {_int_list(cert.vertices)}"]
    elif isinstance(cert, SubdivCert):
        out = ["certificate: subdivision", f"graph-sha256: {digest}", f"d: {cert.d}",
               f"branch: {_int_list(cert.branch)}"]
        out.extend(f"path {i} {j}: {_int_list(path)}" for (i, j), path in sorted(cert.paths.items()))
    else:
        raise TypeError(f"not a certificate: {cert!r}")
    return "\n".join(out) + "\n"


def parse_certificate(text: str, group: GroupDesc) -> Tuple[Certificate, str]:
    """(certificate, embedded graph digest); the group is needed to read cycle values"""
    lines = _Lines(text)
    number, kind = lines.expect("certificate")
    _, digest = lines.expect("graph-sha256")

    if kind == "partition":
        number, k_text = lines.expect("k")
        k = _int(k_text, number)
        parts: Dict[int, int] = {}
        for number, line in lines:
            pieces = _ints(line, number)
            if len(pieces) != 2:
                raise MalformedInputError(f"expected 'vertex part', got '{line}'", number)
            if pieces[0] in parts:
                raise MalformedInputError(f"vertex {pieces[0]} assigned twice", number)
            parts[pieces[0]] = pieces[1]
        cert = PartitionCert(parts)
        if cert.k != k:
            raise MalformedInputError(f"header says k = {k} but parts go up to {cert.k}")
        return cert, digest

    if kind == "cycle":
        number, d_text = lines.expect("d")
        d = _int(d_text, number)
        number, value_text = lines.expect("value")
        value = parse_elem(group, value_text, number)
        number, cycle_text = lines.expect("cycle")
        _no_trailing(lines)
        return CycleCert(tuple(_ints(cycle_text, number)), value, d), digest

    if kind == "subdivision":
        number, d_text = lines.expect("d")
        d = _int(d_text, number)
        number, branch_text = lines.expect("branch")
        branch = tuple(_ints(branch_text, number))
        paths = {}
        for number, line in lines:
            head, sep, rest = line.partition(":")
            words = head.split()
            if not sep or len(words) != 3 or words[0] != "path":
                raise MalformedInputError(f"expected 'path i j: v ...', got '{line}'", number)
            key = (_int(words[1], number), _int(words[2], number))
            if key in paths:
                raise MalformedInputError(f"path {key[0]} {key[1]} given twice", number)
            paths[key] = tuple(_ints(rest, number))
        return SubdivCert(branch, paths, d), digest

    raise MalformedInputError(f"unknown certificate kind '{kind}'", number)


def _no_trailing(lines: _Lines) -> None:
    extra = lines.peek()
    if extra is not None:
        raise MalformedInputError(f"unexpected line '{extra[1]}'", extra[0])


# ===================== Stage files =====================

def parse_stage(text: str) -> StageInput:
    """Nested sets, band paths, disjoint cycles and optional T1 / clique sizes"""
    lines = _Lines(text)
    number, kind = lines.expect("stage")
    if kind != "chain":
        raise MalformedInputError(f"unknown stage kind '{kind}'", number)
    number, ell_text = lines.expect("ell")
    ell = _int(ell_text, number)

    sets: List[frozenset] = []
    bands: Dict[Tuple[int, int, int], Tuple[int, ...]] = {}
    cycles: List[Tuple[int, ...]] = []
    t1 = None
    sizes = None
    for number, line in lines:
        head, sep, rest = line.partition(":")
        words = head.split()
        if not sep or not words:
            raise MalformedInputError(f"unrecognised stage line '{line}'", number)
        if words[0] == "S" and len(words) == 2:
            index = _int(words[1], number)
            if index != len(sets):
                raise MalformedInputError(f"expected S {len(sets)}, got S {index}", number)
            sets.append(frozenset(_ints(rest, number)))
        elif words[0] == "band" and len(words) == 2:
            band = _int(words[1], number)
            ends, sep, path_text = rest.partition(":")
            endpoints = _ints(ends, number)
            if not sep or len(endpoints) != 2:
                raise MalformedInputError(f"expected 'band i: x y: v ...', got '{line}'", number)
            bands[(band, endpoints[0], endpoints[1])] = tuple(_ints(path_text, number))
        elif words == ["cycle"]:
            cycles.append(tuple(_ints(rest, number)))
        elif words == ["t1"]:
            t1 = tuple(_ints(rest, number))
        elif words == ["sizes"]:
            sizes = tuple(_ints(rest, number))
        else:
            raise MalformedInputError(f"unrecognised stage line '{line}'", number)
    if not sets:
        raise MalformedInputError("a stage file needs at least the line 'S 0: ...'")
    return StageInput(ell, tuple(sets), bands, tuple(cycles), t1, sizes)


def format_stage(stage: StageInput) -> str:
    out = ["stage: chain", f"ell: {stage.ell}"]
    out.extend(f"S {i}: {_int_list(sorted(s))}" for i, s in enumerate(stage.sets))
    out.extend(f"band {i}: {x} {y}: {_int_list(path)}" for (i, x, y), path in sorted(stage.bands.items()))
    out.extend(f"cycle: {_int_list(c)}" for c in stage.cycles)
    if stage.t1 is not None:
        out.append(f"t1: {_int_list(stage.t1)}")
    if stage.sizes is not None:
        out.append(f"sizes: {_int_list(stage.sizes)}")
    return "\n".join(out) + "\n"


# ===================== Plain graphs =====================

def parse_plain_graph(text: str) -> Tuple[int, List[Tuple[int, int]], List[Tuple[int, int]]]:
    """`vertices: n` then `u v`, or `u v *` for an edge of the marked set F"""
    lines = _Lines(text)
    number, count = lines.expect("vertices")
    n = _int(count, number)
    edges, marked = [], []
    for number, line in lines:
        pieces = line.split()
        if len(pieces) not in (2, 3) or (len(pieces) == 3 and pieces[2] != "*"):
            raise MalformedInputError(f"expected 'u v' or 'u v *', got '{line}'", number)
        edge = (_int(pieces[0], number), _int(pieces[1], number))
        edges.append(edge)
        if len(pieces) == 3:
            marked.append(edge)
    return n, edges, marked
