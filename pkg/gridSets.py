from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union
from itertools import product
from math import comb

from pydantic import BaseModel, ConfigDict, model_validator


class GridError(RuntimeError):
    """Raised for invalid grid parameters, indices or zero sets."""
    pass


# Enumeration over [2] x [k2] visits 3^k2 column states; refuse beyond this.
MAX_ENUMERATION_K2 = 12
FULL_COLUMN = "contains-full-column"


class GridParams(BaseModel):
    """Shape of the model: X is d x (k1*k2), row slices need t-minors."""

    model_config = ConfigDict(frozen=True)

    d: int
    k1: int
    k2: int
    t: int

    @model_validator(mode="after")
    def _check_ranges(self) -> "GridParams":
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.k1 < 2:
            raise ValueError(f"k1 must be >= 2, got {self.k1}")
        if self.k2 < 2:
            raise ValueError(f"k2 must be >= 2, got {self.k2}")
        if not 2 <= self.t <= min(self.k2, self.d):
            raise ValueError(f"t must satisfy 2 <= t <= min(k2, d) = {min(self.k2, self.d)}, got {self.t}")
        return self

    def label(self) -> str:
        return f"d={self.d} k1={self.k1} k2={self.k2} t={self.t}"


def make_params(d: int, k1: int, k2: int, t: int) -> GridParams:
    """Build GridParams, turning pydantic validation errors into GridError."""
    try:
        return GridParams(d=d, k1=k1, k2=k2, t=t)
    except ValueError as e:
        errors = getattr(e, "errors", None)
        msg = "; ".join(err.get("msg", "") for err in errors()) if callable(errors) else str(e)
        raise GridError(f"Invalid grid parameters: {msg}") from None


def require_k1_two(p: GridParams, what: str) -> None:
    if p.k1 != 2:
        raise GridError(f"{what} requires k1 = 2 (got k1 = {p.k1})")


class GridPoint(NamedTuple):
    row: int
    col: int

    def text(self) -> str:
        return f"{self.row},{self.col}"


class CombType(NamedTuple):
    u: int
    v: int


class ZeroSet:
    """A set S of structural zeros inside the grid [k1] x [k2]."""

    __slots__ = ("points", "params")

    def __init__(self, points: Iterable[Tuple[int, int]], params: GridParams):
        pts = frozenset(GridPoint(int(r), int(c)) for r, c in points)
        for pt in pts:
            if not (1 <= pt.row <= params.k1 and 1 <= pt.col <= params.k2):
                raise GridError(f"Point {pt.text()} is outside the {params.k1}x{params.k2} grid")
        self.points: FrozenSet[GridPoint] = pts
        self.params = params

    def sorted_points(self) -> List[GridPoint]:
        return sorted(self.points)

    def __contains__(self, pt) -> bool:
        return pt in self.points

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[GridPoint]:
        return iter(self.sorted_points())

    def __eq__(self, other) -> bool:
        return isinstance(other, ZeroSet) and self.points == other.points and self.params == other.params

    def __hash__(self) -> int:
        return hash((self.points, self.params))

    def __repr__(self) -> str:
        return f"ZeroSet({format_zero_set(self)!r})"


# ---------------------------------------------------------------------------
# Slices and profiles
# ---------------------------------------------------------------------------
def row_slice(p: GridParams, i: int) -> FrozenSet[GridPoint]:
    if not 1 <= i <= p.k1:
        raise GridError(f"Row slice index {i} out of range [1, {p.k1}]")
    return frozenset(GridPoint(i, c) for c in range(1, p.k2 + 1))


def col_slice(p: GridParams, j: int) -> FrozenSet[GridPoint]:
    if not 1 <= j <= p.k2:
        raise GridError(f"Column slice index {j} out of range [1, {p.k2}]")
    return frozenset(GridPoint(r, j) for r in range(1, p.k1 + 1))


def slices(p: GridParams, which: str, index: int) -> FrozenSet[GridPoint]:
    """R_i for ``which == "row"``, C_j for ``which == "col"``."""
    if which == "row":
        return row_slice(p, index)
    if which == "col":
        return col_slice(p, index)
    raise GridError(f"Unknown slice kind: {which}")


def all_points(p: GridParams) -> FrozenSet[GridPoint]:
    return frozenset(GridPoint(r, c) for r in range(1, p.k1 + 1) for c in range(1, p.k2 + 1))


def zero_profile(s: ZeroSet, r: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Return (Z(r,S), NZ(r,S)) as column index sets."""
    if not 1 <= r <= s.params.k1:
        raise GridError(f"Row index {r} out of range [1, {s.params.k1}]")
    z = frozenset(pt.col for pt in s.points if pt.row == r)
    nz = frozenset(range(1, s.params.k2 + 1)) - z
    return z, nz


def free_column_indices(s: ZeroSet) -> List[int]:
    hit = {pt.col for pt in s.points}
    return [c for c in range(1, s.params.k2 + 1) if c not in hit]


def free_columns(s: ZeroSet) -> FrozenSet[GridPoint]:
    """The union of all column slices disjoint from S."""
    return frozenset(GridPoint(r, c) for c in free_column_indices(s) for r in range(1, s.params.k1 + 1))


def has_full_column(s: ZeroSet) -> bool:
    k1 = s.params.k1
    counts: Dict[int, int] = {}
    for pt in s.points:
        counts[pt.col] = counts.get(pt.col, 0) + 1
    return any(n == k1 for n in counts.values())


# ---------------------------------------------------------------------------
# Combinatorial types and minimality
# ---------------------------------------------------------------------------
def comb_type(s: ZeroSet) -> Union[CombType, str]:
    require_k1_two(s.params, "comb_type")
    if has_full_column(s):
        return FULL_COLUMN
    a = sum(1 for pt in s.points if pt.row == 1)
    b = len(s.points) - a
    return CombType(min(a, b), max(a, b))


def nonminimal_witness(s: ZeroSet) -> Optional[str]:
    """Name the first failed minimality condition, or None when S is minimal."""
    p = s.params
    require_k1_two(p, "minimality")
    if not s.points:
        return None
    ct = comb_type(s)
    if ct == FULL_COLUMN:
        return "S contains a full column slice"
    if ct.u < 1:
        return f"one row of S is empty (type ({ct.u},{ct.v}))"
    bound = p.k2 - p.t + 1
    if ct.v > bound:
        return f"type ({ct.u},{ct.v}) exceeds k2 - t + 1 = {bound}"
    if p.t == 2 and ct.u + ct.v != p.k2:
        return f"t = 2 needs u + v = k2 = {p.k2}, got {ct.u + ct.v}"
    return None


def is_minimal(s: ZeroSet) -> bool:
    return nonminimal_witness(s) is None


def is_minimal_type(p: GridParams, c: CombType) -> bool:
    require_k1_two(p, "minimality")
    u, v = c
    if (u, v) == (0, 0):
        return True
    if not 1 <= u <= v <= p.k2 - p.t + 1 or u + v > p.k2:
        return False
    return p.t != 2 or u + v == p.k2


def minimal_types(p: GridParams) -> List[CombType]:
    """All minimal combinatorial types, (0,0) first, then by (u, v)."""
    require_k1_two(p, "minimal_types")
    out = [CombType(0, 0)]
    for u in range(1, p.k2 + 1):
        for v in range(u, p.k2 + 1):
            if is_minimal_type(p, CombType(u, v)):
                out.append(CombType(u, v))
    return out


# ---------------------------------------------------------------------------
# Counting formulas
# ---------------------------------------------------------------------------
def count_types(p: GridParams) -> int:
    """Number of combinatorial types in the minimal decomposition (closed form)."""
    require_k1_two(p, "count_types")
    k2, t = p.k2, p.t
    if t == 2:
        return k2 // 2 + 1
    if 2 * (t - 1) >= k2:
        return (k2 - t + 1) * (k2 - t + 2) // 2 + 1
    if k2 % 2 == 0:
        return (k2 * k2 - 2 * t * t + 6 * t) // 4
    return (k2 * k2 - 2 * t * t + 6 * t - 1) // 4


def count_sets(p: GridParams, c: CombType) -> int:
    """Number of minimal zero sets of type ``c``."""
    require_k1_two(p, "count_sets")
    u, v = c
    if not is_minimal_type(p, c):
        raise GridError(f"({u},{v}) is not a minimal combinatorial type for {p.label()}")
    n = comb(p.k2, u) * comb(p.k2 - u, v)
    return n if u == v else 2 * n


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------
def _guard(p: GridParams) -> None:
    if p.k2 > MAX_ENUMERATION_K2:
        raise GridError(f"Enumeration refused: k2 = {p.k2} exceeds the bound {MAX_ENUMERATION_K2}")


def all_zero_sets(p: GridParams) -> Iterator[ZeroSet]:
    """Every subset of [k1] x [k2] (brute-force oracle)."""
    _guard(p)
    pts = sorted(all_points(p))
    for mask in range(1 << len(pts)):
        yield ZeroSet([pts[i] for i in range(len(pts)) if mask >> i & 1], p)


def enumerate_minimal(p: GridParams) -> Dict[CombType, List[ZeroSet]]:
    """All minimal zero sets grouped by type, each group in canonical order.

    Sets containing a full column are never minimal, so each column is one of
    three states: free, zero in row 1, or zero in row 2.
    """
    require_k1_two(p, "enumerate_minimal")
    _guard(p)
    groups: Dict[CombType, List[ZeroSet]] = {c: [] for c in minimal_types(p)}
    for states in product((0, 1, 2), repeat=p.k2):
        s = ZeroSet([(r, c) for c, r in enumerate(states, start=1) if r], p)
        if is_minimal(s):
            groups[comb_type(s)].append(s)
    for c in groups:
        groups[c].sort(key=lambda z: z.sorted_points())
    return groups


# ---------------------------------------------------------------------------
# Representatives and relabeling
# ---------------------------------------------------------------------------
def representative(c: CombType, p: GridParams) -> ZeroSet:
    """{1} x {1..u} union {2} x {k2-v+1..k2}."""
    if not is_minimal_type(p, c):
        raise GridError(f"({c[0]},{c[1]}) is not a minimal combinatorial type for {p.label()}")
    u, v = c
    pts = [(1, i) for i in range(1, u + 1)] + [(2, i) for i in range(p.k2 - v + 1, p.k2 + 1)]
    return ZeroSet(pts, p)


class Relabeling:
    """A column permutation plus an optional swap of the two grid rows."""

    def __init__(self, col_map: Dict[int, int], row_swap: bool):
        self.col_map = dict(col_map)
        self.row_swap = row_swap

    def apply_point(self, pt: Tuple[int, int]) -> GridPoint:
        r, c = pt
        if self.row_swap:
            r = 3 - r
        return GridPoint(r, self.col_map[c])

    def apply(self, s: ZeroSet) -> ZeroSet:
        return ZeroSet([self.apply_point(pt) for pt in s.points], s.params)

    def __repr__(self) -> str:
        return f"Relabeling(col_map={self.col_map}, row_swap={self.row_swap})"


def relabel(s: ZeroSet) -> Relabeling:
    """Relabeling carrying a minimal S onto the representative of its type."""
    p = s.params
    if not is_minimal(s):
        raise GridError(f"relabel needs a minimal zero set: {nonminimal_witness(s)}")
    z1, _ = zero_profile(s, 1)
    z2, _ = zero_profile(s, 2)
    swap = len(z1) > len(z2)
    if swap:
        z1, z2 = z2, z1
    free = free_column_indices(s)
    order = sorted(z1) + free + sorted(z2)
    return Relabeling({old: new for new, old in enumerate(order, start=1)}, swap)


# ---------------------------------------------------------------------------
# Text format: "1,1;2,2;2,3"
# ---------------------------------------------------------------------------
def parse_zero_set(text: str, p: GridParams) -> ZeroSet:
    pts = []
    for chunk in (text or "").split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = [x.strip() for x in chunk.split(",")]
        if len(parts) != 2 or not all(x.lstrip("-").isdigit() for x in parts):
            raise GridError(f"Bad zero-set entry {chunk!r}; expected 'row,col'")
        pts.append((int(parts[0]), int(parts[1])))
    return ZeroSet(pts, p)


def format_zero_set(s: ZeroSet) -> str:
    return ";".join(pt.text() for pt in s.sorted_points())
