from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from rationalPoly import VarId, Polynomial, LEX
from gridSets import (GridParams, GridPoint, ZeroSet, col_slice, row_slice, free_columns,
                      free_column_indices, zero_profile, require_k1_two, is_minimal,
                      nonminimal_witness)
from hypergraph import Hypergraph, build_HS, closure, format_edge


class IdealFactoryError(RuntimeError):
    """Raised for malformed minor specs or generator families."""
    pass


def x_order(pt: GridPoint) -> Tuple[int, int]:
    """Column order of X: (1,1), (2,1), ..., (k1,1), (1,2), ..."""
    return (pt[1], pt[0])


def var_of(i: int, pt: Tuple[int, int]) -> VarId:
    return VarId(i, pt[0], pt[1])


def x_columns(points: Iterable[Tuple[int, int]]) -> List[GridPoint]:
    return sorted((GridPoint(*pt) for pt in points), key=x_order)


def hat_columns(s: ZeroSet) -> List[GridPoint]:
    """Columns of X-hat: X with the zero columns at S removed."""
    p = s.params
    return [pt for pt in x_columns((r, c) for c in range(1, p.k2 + 1) for r in range(1, p.k1 + 1))
            if pt not in s.points]


# ---------------------------------------------------------------------------
# Minors
# ---------------------------------------------------------------------------
class MinorSpec:
    """[A | B]: rows A of X and grid columns B, both in increasing order."""

    __slots__ = ("rows", "cols")

    def __init__(self, rows: Sequence[int], cols: Sequence[Tuple[int, int]]):
        if len(rows) != len(cols):
            raise IdealFactoryError(f"Minor size mismatch: {len(rows)} rows, {len(cols)} columns")
        if not rows:
            raise IdealFactoryError("Empty minor")
        self.rows: Tuple[int, ...] = tuple(sorted(rows))
        self.cols: Tuple[GridPoint, ...] = tuple(x_columns(cols))
        if len(set(self.rows)) != len(self.rows) or len(set(self.cols)) != len(self.cols):
            raise IdealFactoryError("Minor rows and columns must be distinct")

    @property
    def size(self) -> int:
        return len(self.rows)

    def to_dict(self) -> Dict:
        return {"rows": list(self.rows), "cols": [list(c) for c in self.cols]}

    def __eq__(self, other) -> bool:
        return isinstance(other, MinorSpec) and (self.rows, self.cols) == (other.rows, other.cols)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols))

    def __repr__(self) -> str:
        return f"[{','.join(map(str, self.rows))}|{format_edge(self.cols)}]"


@lru_cache(maxsize=1 << 17)
def _det(rows: Tuple[int, ...], cols: Tuple[GridPoint, ...]) -> Polynomial:
    if len(rows) == 1:
        return Polynomial.var(var_of(rows[0], cols[0]))
    total = Polynomial.zero()
    head, rest = rows[0], rows[1:]
    for k, c in enumerate(cols):
        sub = _det(rest, cols[:k] + cols[k + 1:])
        term = sub.mul_term(((var_of(head, c).rank, 1),), -1 if k % 2 else 1)
        total = total + term
    return total


def expand_minor(m: MinorSpec, p: Optional[GridParams] = None) -> Polynomial:
    """Determinant of the rows/columns of X selected by ``m`` (cofactor expansion)."""
    if p is not None:
        if m.size > min(p.d, p.k1 * p.k2):
            raise IdealFactoryError(f"Minor {m!r} is larger than X allows")
        if any(not 1 <= r <= p.d for r in m.rows):
            raise IdealFactoryError(f"Minor {m!r} uses a row outside [1, {p.d}]")
    return _det(m.rows, m.cols)


def expand_minor_unsorted(rows: Sequence[int], cols: Sequence[Tuple[int, int]]) -> Polynomial:
    """Determinant with rows and columns taken in the order given."""
    if len(rows) != len(cols):
        raise IdealFactoryError("Minor size mismatch")
    return _det(tuple(rows), tuple(GridPoint(*c) for c in cols))


def minor_specs(p: GridParams, columns: Iterable[Tuple[int, int]], size: int) -> List[MinorSpec]:
    """All size-``size`` minors of X restricted to ``columns``."""
    cols = x_columns(columns)
    if size < 1 or size > p.d or size > len(cols):
        return []
    return [MinorSpec(a, b)
            for b in combinations(cols, size)
            for a in combinations(range(1, p.d + 1), size)]


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------
Provenance = Union[MinorSpec, str]


class IdealPresentation:
    """A named, deduplicated generator list with provenance for each generator."""

    def __init__(self, name: str, params: GridParams):
        self.name = name
        self.params = params
        self.generators: List[Polynomial] = []
        self.provenance: List[Provenance] = []
        self._seen: set = set()

    def add(self, f: Polynomial, source: Provenance) -> None:
        if f.is_zero():
            return
        if f.leading_coefficient(LEX) < 0:
            f = -f
        if f in self._seen:
            return
        self._seen.add(f)
        self.generators.append(f)
        self.provenance.append(source)

    def add_minors(self, specs: Iterable[MinorSpec]) -> None:
        for m in specs:
            self.add(expand_minor(m), "var" if m.size == 1 else m)

    def extend(self, other: "IdealPresentation") -> "IdealPresentation":
        for f, src in zip(other.generators, other.provenance):
            self.add(f, src)
        return self

    def renamed(self, name: str) -> "IdealPresentation":
        out = IdealPresentation(name, self.params)
        return out.extend(self)

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"IdealPresentation({self.name!r}, {len(self.generators)} generators)"


def build_IC(p: GridParams) -> IdealPresentation:
    """2-minors over every column slice plus t-minors over every row slice."""
    pres = IdealPresentation("I_C", p)
    for c in range(1, p.k2 + 1):
        pres.add_minors(minor_specs(p, col_slice(p, c), 2))
    for r in range(1, p.k1 + 1):
        pres.add_minors(minor_specs(p, row_slice(p, r), p.t))
    return pres


def build_hypergraph_ideal(h: Hypergraph, name: str = "I(H)") -> IdealPresentation:
    p = h.params
    pres = IdealPresentation(name, p)
    for e in h.sorted_edges():
        if len(e) > p.d:
            raise IdealFactoryError(f"Edge {format_edge(e)} has {len(e)} points but X has only d = {p.d} rows")
        cols = x_columns(e)
        pres.add_minors(MinorSpec(a, cols) for a in combinations(range(1, p.d + 1), len(cols)))
    return pres


def build_IS(s: ZeroSet) -> IdealPresentation:
    """I_S as the ideal of the closed hypergraph attached to S."""
    return build_hypergraph_ideal(closure(build_HS(s)), name="I_S")


def has_lower_minors(s: ZeroSet) -> bool:
    """Gating of the (t-1)-minor family: each row of S has a zero the other lacks."""
    z1, _ = zero_profile(s, 1)
    z2, _ = zero_profile(s, 2)
    return bool(z1 - z2) and bool(z2 - z1)


def build_F_empty(p: GridParams) -> IdealPresentation:
    """F_empty for any k1: 2-minors of every column slice plus all t-minors of X."""
    pres = IdealPresentation("F_empty", p)
    for c in range(1, p.k2 + 1):
        pres.add_minors(minor_specs(p, col_slice(p, c), 2))
    everything = [(r, c) for c in range(1, p.k2 + 1) for r in range(1, p.k1 + 1)]
    pres.add_minors(minor_specs(p, everything, p.t))
    return pres


def build_FS(s: ZeroSet, enlarged: bool = False) -> IdealPresentation:
    """The natural generators F_S (F_empty when S is empty).

    With ``enlarged`` the t-minor families use R_i union C(S) instead of
    (R_i - S) union C(S); both generate the same ideal.
    """
    p = s.params
    require_k1_two(p, "build_FS")
    pres = IdealPresentation("F_S" if s.points else "F_empty", p)
    pres.add_minors(minor_specs(p, s.points, 1))
    free = free_columns(s)
    for c in free_column_indices(s):
        pres.add_minors(minor_specs(p, col_slice(p, c), 2))
    if s.points and has_lower_minors(s):
        pres.add_minors(minor_specs(p, free, p.t - 1))
    for r in (1, 2):
        row = row_slice(p, r)
        if not enlarged:
            row = row - s.points
        pres.add_minors(minor_specs(p, row | free, p.t))
    return pres


def build_FJS(s: ZeroSet) -> IdealPresentation:
    """F(J_S): F_S without the variables of S; minors live in X-hat."""
    if not s.points:
        raise IdealFactoryError("build_FJS needs a nonempty zero set")
    if not is_minimal(s):
        raise IdealFactoryError(f"build_FJS needs a minimal zero set: {nonminimal_witness(s)}")
    full = build_FS(s)
    pres = IdealPresentation("F(J_S)", s.params)
    for f, src in zip(full.generators, full.provenance):
        if src != "var":
            pres.add(f, src)
    return pres


def build_extra_minors(p: GridParams, columns: Iterable[Tuple[int, int]], size: int,
                       name: str = "extra") -> IdealPresentation:
    """All ``size``-minors of X restricted to ``columns`` (ad hoc families)."""
    pres = IdealPresentation(name, p)
    pres.add_minors(minor_specs(p, columns, size))
    return pres


def build_variables(p: GridParams, points: Iterable[Tuple[int, int]], name: str = "vars") -> IdealPresentation:
    pres = IdealPresentation(name, p)
    for pt in x_columns(points):
        for i in range(1, p.d + 1):
            pres.add(Polynomial.var(var_of(i, pt)), "var")
    return pres


# ---------------------------------------------------------------------------
# D_A
# ---------------------------------------------------------------------------
def build_DA(A: Sequence[Sequence], k1: Optional[int] = None) -> List[list]:
    """The k2 x k1*k2 block matrix whose row i is [1, a_i1, ..., a_i(k1-1)] on block i.

    Polynomial entries of A are kept as they are; anything else becomes a Fraction.
    """
    k2 = len(A)
    if k2 == 0:
        raise IdealFactoryError("build_DA needs at least one row")
    width = len(A[0])
    if any(len(row) != width for row in A):
        raise IdealFactoryError("build_DA: ragged parameter matrix")
    if k1 is not None and width != k1 - 1:
        raise IdealFactoryError(f"build_DA: expected {k1 - 1} columns, got {width}")
    k1 = width + 1
    out = [[Fraction(0)] * (k1 * k2) for _ in range(k2)]
    for i, row in enumerate(A):
        out[i][i * k1] = Fraction(1)
        for j, a in enumerate(row, start=1):
            out[i][i * k1 + j] = a if isinstance(a, Polynomial) else Fraction(a)
    return out


# ---------------------------------------------------------------------------
# JSON form
# ---------------------------------------------------------------------------
def presentation_to_dict(pres: IdealPresentation) -> Dict:
    p = pres.params
    return {
        "name": pres.name,
        "params": {"d": p.d, "k1": p.k1, "k2": p.k2, "t": p.t},
        "generators": [f.to_text() for f in pres.generators],
        "provenance": [src if isinstance(src, str) else src.to_dict() for src in pres.provenance],
    }
