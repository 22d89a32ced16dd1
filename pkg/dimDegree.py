from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from rationalPoly import Polynomial, LEX, TermOrder, mono_is_squarefree, mono_support
from gridSets import (GridParams, GridError, CombType, is_minimal_type, minimal_types, representative,
                      require_k1_two)
from idealFactory import build_FS, build_FJS, var_of
from groebner import (BudgetExceeded, GbVerification, GroebnerBasis, buchberger, verify_gb)
from labSettings import BudgetCaps, DEFAULT_BUDGET
from labReports import DimRow, DimsReport


class DimDegreeError(RuntimeError):
    """Raised for out-of-hypothesis parameters and unverified initial ideals."""
    pass


class SearchBudgetExceeded(BudgetExceeded):
    """Raised when the face search visits more nodes than allowed."""
    pass


# (count, dimension, degree) per type at d = t = 4, k1 = 2, k2 = 6
EXAMPLE_TABLE = {
    CombType(0, 0): (1, 27, 34560),
    CombType(1, 1): (30, 24, 1410),
    CombType(1, 2): (120, 24, 606),
    CombType(1, 3): (120, 24, 129),
    CombType(2, 2): (90, 24, 194),
    CombType(2, 3): (120, 24, 15),
    CombType(3, 3): (20, 24, 1),
}
EXAMPLE_PARAMS = (4, 2, 6, 4)

Support = FrozenSet[int]


def _minimalize(supports: Iterable[Support]) -> FrozenSet[Support]:
    out: List[Support] = []
    for s in sorted(set(supports), key=len):
        if not any(o <= s for o in out):
            out.append(s)
    return frozenset(out)


class MonomialIdeal:
    """A monomial ideal kept as the supports of its minimal generators.

    ``universe`` is the set of ambient variable ranks; ``squarefree`` records
    whether every generator was squarefree before taking supports.
    """

    def __init__(self, supports: Iterable[Iterable[int]], universe: Iterable[int], squarefree: bool = True):
        self.universe: FrozenSet[int] = frozenset(universe)
        self.supports: FrozenSet[Support] = _minimalize(frozenset(s) for s in supports)
        self.squarefree = squarefree
        stray = set().union(*self.supports) - self.universe if self.supports else set()
        if stray:
            raise DimDegreeError(f"{len(stray)} generator variables lie outside the ambient ring")

    @property
    def n(self) -> int:
        return len(self.universe)

    def is_variables_only(self) -> bool:
        return all(len(s) == 1 for s in self.supports)

    def __len__(self) -> int:
        return len(self.supports)

    def __repr__(self) -> str:
        return f"MonomialIdeal({len(self.supports)} supports, n={self.n})"


def initial_ideal(gens: Union[GroebnerBasis, Sequence[Polynomial]], universe: Iterable[int],
                  order: TermOrder = LEX, verification: Optional[GbVerification] = None,
                  budget: Optional[BudgetCaps] = None) -> MonomialIdeal:
    """Leading-monomial ideal of a Groebner basis.

    A plain generator list is accepted only with a passing ``verification``
    or after ``verify_gb`` succeeds here; anything else is refused.
    """
    if isinstance(gens, GroebnerBasis):
        lms = gens.leading_monomials()
    else:
        gens = [g for g in gens if g]
        if verification is None:
            verification = verify_gb(gens, order, budget)
        if not verification.ok:
            raise DimDegreeError(f"generators are not a Groebner basis ({len(verification.failing_pairs)} failing S-pairs)")
        lms = [g.leading_monomial(order) for g in gens]
    return MonomialIdeal((mono_support(m) for m in lms), universe,
                         squarefree=all(mono_is_squarefree(m) for m in lms))


# ---------------------------------------------------------------------------
# Face search
# ---------------------------------------------------------------------------
class _Search:
    """Maximum independent sets of the support hypergraph by memoized branch and bound."""

    def __init__(self, caps: Optional[BudgetCaps]):
        self.caps = caps or DEFAULT_BUDGET
        self.nodes = 0
        self.memo: Dict[Tuple[FrozenSet[int], FrozenSet[Support]], Tuple[int, int]] = {}

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.caps.nodes:
            raise SearchBudgetExceeded(f"search budget of {self.caps.nodes} nodes exceeded",
                                       {"nodes": self.nodes})

    def solve(self, vertices: FrozenSet[int], edges: FrozenSet[Support], count: bool) -> Tuple[int, int]:
        """(maximum size, number of maximum sets) for the restricted problem."""
        forced_out = {next(iter(e)) for e in edges if len(e) == 1}
        if forced_out:
            vertices = vertices - forced_out
            edges = frozenset(e for e in edges if not (e & forced_out))
        size, ways = 0, 1
        for comp_vertices, comp_edges in _components(vertices, edges):
            s, w = self._solve_component(comp_vertices, comp_edges, count)
            size += s
            ways *= w
        return size, ways

    def _solve_component(self, vertices: FrozenSet[int], edges: FrozenSet[Support], count: bool) -> Tuple[int, int]:
        if not edges:
            return len(vertices), 1
        key = (vertices, edges)
        if key in self.memo:
            return self.memo[key]
        self._tick()
        degree: Dict[int, int] = {}
        for e in edges:
            for x in e:
                degree[x] = degree.get(x, 0) + 1
        v = max(degree, key=lambda x: (degree[x], -x))

        rest = vertices - {v}
        out_size, out_ways = self.solve(rest, frozenset(e for e in edges if v not in e), count)

        shrunk = _minimalize(e - {v} if v in e else e for e in edges)
        bound = 1 + len(rest) - _disjoint_edges(shrunk)
        if bound < out_size or (not count and bound == out_size):
            result = (out_size, out_ways)
        else:
            in_size, in_ways = self.solve(rest, shrunk, count)
            in_size += 1
            if in_size > out_size:
                result = (in_size, in_ways)
            elif in_size == out_size:
                result = (out_size, out_ways + in_ways)
            else:
                result = (out_size, out_ways)
        self.memo[key] = result
        return result


def _components(vertices: FrozenSet[int], edges: FrozenSet[Support]):
    """Split into connected pieces; isolated vertices form one edge-free piece."""
    parent: Dict[int, int] = {}

    def find(x: int) -> int:
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        it = iter(e)
        root = find(next(it))
        for x in it:
            r = find(x)
            if r != root:
                parent[r] = root
    groups: Dict[int, Tuple[set, set]] = {}
    for e in edges:
        groups.setdefault(find(next(iter(e))), (set(), set()))[1].add(e)
    covered = set()
    for root, (vs, es) in groups.items():
        for e in es:
            vs.update(e)
        covered.update(vs)
    pieces = [(frozenset(vs), frozenset(es)) for _, (vs, es) in sorted(groups.items())]
    free = vertices - covered
    if free:
        pieces.append((frozenset(free), frozenset()))
    return pieces


def _disjoint_edges(edges: Iterable[Support]) -> int:
    """Greedy count of pairwise disjoint edges (each needs one vertex left out)."""
    used: set = set()
    n = 0
    for e in sorted(edges, key=lambda e: (len(e), sorted(e))):
        if not (e & used):
            used.update(e)
            n += 1
    return n


def monomial_dim(m: MonomialIdeal, budget: Optional[BudgetCaps] = None) -> int:
    """Krull dimension: the largest variable set containing no generator support."""
    return _Search(budget).solve(m.universe, m.supports, count=False)[0]


def monomial_degree(m: MonomialIdeal, budget: Optional[BudgetCaps] = None) -> int:
    """Degree: the number of faces of maximum size (needs a squarefree ideal)."""
    if not m.squarefree:
        raise DimDegreeError("degree by face counting needs a squarefree monomial ideal")
    return _Search(budget).solve(m.universe, m.supports, count=True)[1]


def monomial_dim_degree(m: MonomialIdeal, budget: Optional[BudgetCaps] = None) -> Tuple[int, int]:
    if not m.squarefree:
        raise DimDegreeError("degree by face counting needs a squarefree monomial ideal")
    return _Search(budget).solve(m.universe, m.supports, count=True)


def minimum_cover_size(m: MonomialIdeal, budget: Optional[BudgetCaps] = None) -> int:
    """Size of a smallest variable set meeting every support, found by its own search."""
    caps = budget or DEFAULT_BUDGET
    nodes = 0
    best = len(set().union(*m.supports)) if m.supports else 0

    def search(edges: FrozenSet[Support], chosen: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > caps.nodes:
            raise SearchBudgetExceeded(f"cover search budget of {caps.nodes} nodes exceeded", {"nodes": nodes})
        if not edges:
            best = min(best, chosen)
            return
        if chosen + _disjoint_edges(edges) >= best:
            return
        e = min(edges, key=lambda e: (len(e), sorted(e)))
        for x in sorted(e):
            search(frozenset(f for f in edges if x not in f), chosen + 1)

    search(m.supports, 0)
    return best


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------
def dim_formula(p: GridParams, c: CombType) -> int:
    """Dimension of I_empty for type (0,0), of I_S for a nonempty minimal type."""
    d, k1, k2, t = p.d, p.k1, p.k2, p.t
    if tuple(c) == (0, 0):
        return (t - 1) * (d + k2) + k2 * (k1 - 1) - (t - 1) ** 2
    if k1 != 2:
        raise DimDegreeError(f"dimension formula for I_S needs k1 = 2 (got k1 = {k1})")
    if d != t:
        raise DimDegreeError(f"dimension formula for I_S needs d = t (got d = {d}, t = {t})")
    if not is_minimal_type(p, CombType(*c)):
        raise DimDegreeError(f"dimension formula for I_S needs a minimal type, ({c[0]},{c[1]}) is not")
    return t * t + (t - 1) * k2 - (t - 1) ** 2 - 1


def ambient_ranks(p: GridParams) -> List[int]:
    return [var_of(i, (j, l)).rank
            for l in range(1, p.k2 + 1) for j in range(1, p.k1 + 1) for i in range(1, p.d + 1)]


def representative_initial_ideal(p: GridParams, c: CombType, budget: Optional[BudgetCaps] = None
                                 ) -> Tuple[MonomialIdeal, str]:
    """in(I_S) for the representative of ``c``; returns the ideal and how it was obtained.

    The natural generators are tried first as a Groebner basis; if the check
    fails the reduced basis is computed instead.
    """
    s = representative(c, p)
    universe = ambient_ranks(p)
    if s.points:
        gens = build_FJS(s).generators
        extra = [frozenset({var_of(i, pt).rank}) for pt in s.points for i in range(1, p.d + 1)]
    else:
        gens = build_FS(s).generators
        extra = []
    check = verify_gb(gens, LEX, budget, stop_at_first=True)
    if check.ok:
        m = initial_ideal(gens, universe, LEX, check)
        method = "natural generators"
    else:
        m = initial_ideal(buchberger(gens, LEX, budget), universe)
        method = "buchberger"
    return MonomialIdeal(list(m.supports) + extra, universe, m.squarefree), method


CHECK_DIMS_INSTANCES = "d = t <= 3 with k2 <= 5, or d = t = 4 with k2 = 6"


def check_dims(p: GridParams, budget: Optional[BudgetCaps] = None, degree: bool = False,
               progress: Optional[Callable[[str], None]] = None) -> DimsReport:
    """Compare the dimension formulas with initial-ideal dimensions for every minimal type."""
    require_k1_two(p, "check_dims")
    if p.d != p.t or not ((p.t <= 3 and p.k2 <= 5) or (p.t == 4 and p.k2 == 6)):
        raise GridError(f"check_dims is sized for {CHECK_DIMS_INSTANCES}, got {p.label()}")
    say = progress or (lambda _msg: None)
    report = DimsReport(params=p, ambient=p.d * p.k1 * p.k2)
    table = EXAMPLE_TABLE if (p.d, p.k1, p.k2, p.t) == EXAMPLE_PARAMS else {}
    for c in minimal_types(p):
        row = DimRow(type=list(c), dim_formula=dim_formula(p, c))
        if c in table:
            row.degree_expected = table[c][2]
        try:
            m, method = representative_initial_ideal(p, c, budget)
            row.note = method
            if not m.squarefree:
                report.fail(f"type ({c.u},{c.v}): initial ideal is not squarefree")
            if degree and m.squarefree:
                row.dim_initial, row.degree_initial = monomial_dim_degree(m, budget)
            else:
                row.dim_initial = monomial_dim(m, budget)
            row.cover_size = minimum_cover_size(m, budget)
            row.agree = (row.dim_initial == row.dim_formula
                         and row.cover_size + row.dim_initial == m.n
                         and (row.degree_expected is None or row.degree_initial is None
                              or row.degree_expected == row.degree_initial))
            if not row.agree:
                report.fail(f"type ({c.u},{c.v}): formula {row.dim_formula}, initial ideal {row.dim_initial}"
                            + (f", degree {row.degree_initial} vs {row.degree_expected}"
                               if row.degree_initial is not None and row.degree_expected is not None else ""))
        except BudgetExceeded as e:
            row.agree = False
            row.note = f"budget: {e}"
            report.out_of_budget(f"type ({c.u},{c.v}): {e}")
        report.rows.append(row)
        say(f"type ({c.u},{c.v}) done")
    return report
