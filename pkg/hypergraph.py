from typing import Dict, FrozenSet, Iterable, List, Set, Tuple
from itertools import combinations
import re

from gridSets import GridParams, GridPoint, ZeroSet, all_points, zero_profile


class HypergraphError(RuntimeError):
    """Raised for malformed edges or unparsable hypergraph text."""
    pass


Edge = FrozenSet[GridPoint]


def edge_key(e: Iterable[GridPoint]) -> Tuple[GridPoint, ...]:
    return tuple(sorted(e))


def format_edge(e: Iterable[GridPoint]) -> str:
    return "{" + ",".join(f"({r},{c})" for r, c in edge_key(e)) + "}"


class Hypergraph:
    """A family of nonempty subsets of the grid [k1] x [k2]."""

    __slots__ = ("edges", "params")

    def __init__(self, edges: Iterable[Iterable[Tuple[int, int]]], params: GridParams):
        grid = all_points(params)
        clean: Set[Edge] = set()
        for e in edges:
            edge = frozenset(GridPoint(int(r), int(c)) for r, c in e)
            if not edge:
                raise HypergraphError("Hypergraph edges must be nonempty")
            if not edge <= grid:
                raise HypergraphError(f"Edge {format_edge(edge)} leaves the {params.k1}x{params.k2} grid")
            clean.add(edge)
        self.edges: FrozenSet[Edge] = frozenset(clean)
        self.params = params

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges, key=format_edge)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, e) -> bool:
        return frozenset(e) in self.edges

    def __le__(self, other: "Hypergraph") -> bool:
        return self.edges <= other.edges

    def __eq__(self, other) -> bool:
        return isinstance(other, Hypergraph) and self.edges == other.edges and self.params == other.params

    def __hash__(self) -> int:
        return hash((self.edges, self.params))

    def union(self, other: "Hypergraph") -> "Hypergraph":
        return Hypergraph(self.edges | other.edges, self.params)

    def __repr__(self) -> str:
        return f"Hypergraph({len(self.edges)} edges, {self.params.label()})"


# ---------------------------------------------------------------------------
# Closure
# ---------------------------------------------------------------------------
def closure(h: Hypergraph) -> Hypergraph:
    """Least fixpoint of the substitution rule.

    Whenever {i, j} and e (with i in e, j not in e) are edges, (e - {i}) | {j}
    is an edge. Every (2-edge, edge) pair is examined once, when the later of
    the two is taken off the worklist.
    """
    edges: Set[Edge] = set()
    by_vertex: Dict[GridPoint, Set[Edge]] = {}
    partners: Dict[GridPoint, Set[GridPoint]] = {}
    work: List[Edge] = []

    def push(e: Edge) -> None:
        if e in edges:
            return
        edges.add(e)
        for x in e:
            by_vertex.setdefault(x, set()).add(e)
        work.append(e)

    for e in h.sorted_edges():
        push(e)

    while work:
        e = work.pop()
        for i in e:
            for j in tuple(partners.get(i, ())):
                if j not in e:
                    push((e - {i}) | {j})
        if len(e) == 2:
            a, b = tuple(e)
            partners.setdefault(a, set()).add(b)
            partners.setdefault(b, set()).add(a)
            for i, j in ((a, b), (b, a)):
                for f in tuple(by_vertex.get(i, ())):
                    if j not in f:
                        push((f - {i}) | {j})
    return Hypergraph(edges, h.params)


# ---------------------------------------------------------------------------
# H(S)
# ---------------------------------------------------------------------------
def build_HS(s: ZeroSet) -> Hypergraph:
    """The four edge families attached to a zero set S (any k1 >= 2)."""
    p = s.params
    rows = range(1, p.k1 + 1)
    cols = range(1, p.k2 + 1)
    edges: List[Iterable[GridPoint]] = []

    # loops on S
    edges.extend([pt] for pt in s.points)

    # vertical pairs avoiding S
    for c in cols:
        alive = [GridPoint(r, c) for r in rows if GridPoint(r, c) not in s.points]
        edges.extend(combinations(alive, 2))

    profiles = {r: zero_profile(s, r) for r in rows}

    # (t-1)-subsets over two rows whose zero patterns are incomparable
    for i, j in combinations(rows, 2):
        zi, nzi = profiles[i]
        zj, nzj = profiles[j]
        if zi - zj and zj - zi:
            block = [GridPoint(r, c) for c in sorted(nzi & nzj) for r in (i, j)]
            edges.extend(combinations(block, p.t - 1))

    # t-subsets of a row avoiding S
    for i in rows:
        alive = [GridPoint(i, c) for c in sorted(profiles[i][1])]
        edges.extend(combinations(alive, p.t))

    return Hypergraph(edges, p)


def edge_diff(a: Hypergraph, b: Hypergraph) -> Tuple[List[Edge], List[Edge]]:
    """Edges only in ``a`` and only in ``b``, each in canonical order."""
    if a.params != b.params:
        raise HypergraphError("edge_diff needs hypergraphs over the same grid")
    only_a = sorted(a.edges - b.edges, key=format_edge)
    only_b = sorted(b.edges - a.edges, key=format_edge)
    return only_a, only_b


# ---------------------------------------------------------------------------
# Serialization: one edge per line, e.g. {(1,3),(2,3)}
# ---------------------------------------------------------------------------
_PAIR_RE = re.compile(r"\((\d+),(\d+)\)")
_EDGE_RE = re.compile(r"^\{\(\d+,\d+\)(?:,\(\d+,\d+\))*\}$")


def dump_hypergraph(h: Hypergraph) -> str:
    lines = sorted(format_edge(e) for e in h.edges)
    return "".join(line + "\n" for line in lines)


def load_hypergraph(text: str, params: GridParams) -> Hypergraph:
    edges = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if not _EDGE_RE.match(line):
            raise HypergraphError(f"Line {n}: not an edge: {line!r}")
        edges.append([(int(r), int(c)) for r, c in _PAIR_RE.findall(line)])
    return Hypergraph(edges, params)
