from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from rationalPoly import (Polynomial, TermOrder, Monomial, LEX, ELIMINATION, aux_rank, is_aux,
                          mono_coprime, mono_degree, mono_div, mono_divides, mono_lcm,
                          mono_is_squarefree, AUX_OFFSET)
from gridSets import (GridParams, GridError, ZeroSet, all_zero_sets, enumerate_minimal,
                      format_zero_set, is_minimal, require_k1_two)
from idealFactory import build_IC, build_IS
from labSettings import BudgetCaps, DEFAULT_BUDGET
from labReports import LabReport


class GroebnerError(RuntimeError):
    """Raised for invalid Groebner-basis inputs."""
    pass


class BudgetExceeded(GroebnerError):
    """Raised when a computation hits its resource cap; no partial answer is returned."""

    def __init__(self, message: str, counters: Optional[Dict[str, int]] = None):
        super().__init__(message)
        self.counters = dict(counters or {})


# Harness guards: these instances are what the checks are sized for.
DECOMPOSITION_INSTANCES = {(2, 2, 2), (2, 2, 3), (3, 3, 3)}


class _Meter:
    """Counts pairs and reduction steps against a BudgetCaps."""

    def __init__(self, caps: Optional[BudgetCaps]):
        self.caps = caps or DEFAULT_BUDGET
        self.pairs = 0
        self.reductions = 0

    def counters(self) -> Dict[str, int]:
        return {"pairs": self.pairs, "reductions": self.reductions}

    def step(self) -> None:
        self.reductions += 1
        if self.reductions > self.caps.reductions:
            raise BudgetExceeded(f"reduction budget of {self.caps.reductions} steps exceeded", self.counters())

    def pair(self, queued: int) -> None:
        self.pairs += 1
        if self.pairs > self.caps.pairs or queued > self.caps.pairs:
            raise BudgetExceeded(f"pair budget of {self.caps.pairs} exceeded", self.counters())


# ---------------------------------------------------------------------------
# Division
# ---------------------------------------------------------------------------
Entry = Tuple[Monomial, Polynomial]


def _entries(polys: Iterable[Polynomial], order: TermOrder) -> List[Entry]:
    return [(g.leading_monomial(order), g) for g in polys if g]


def _reduce(f: Polynomial, entries: Sequence[Entry], order: TermOrder, meter: _Meter,
            quotients: Optional[List[Polynomial]] = None) -> Polynomial:
    """Full reduction of ``f``; the first divisor in list order is used."""
    p = f
    rem: Dict[Monomial, object] = {}
    while p:
        m, c = p.leading_term(order)
        for idx, (lm, g) in enumerate(entries):
            if mono_divides(lm, m):
                q = mono_div(m, lm)
                coef = c / g.coefficient(lm)
                p = p.sub_term_multiple(q, coef, g)
                if quotients is not None:
                    quotients[idx] = quotients[idx] + Polynomial({q: coef})
                meter.step()
                break
        else:
            rem[m] = c
            p = p.drop_term(m)
    return Polynomial(rem)


def _s_polynomial(a: Entry, b: Entry) -> Polynomial:
    (lma, ga), (lmb, gb) = a, b
    lcm = mono_lcm(lma, lmb)
    left = ga.mul_term(mono_div(lcm, lma), 1 / ga.coefficient(lma))
    return left.sub_term_multiple(mono_div(lcm, lmb), 1 / gb.coefficient(lmb), gb)


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder = LEX) -> Polynomial:
    return _s_polynomial((f.leading_monomial(order), f), (g.leading_monomial(order), g))


# ---------------------------------------------------------------------------
# Groebner bases
# ---------------------------------------------------------------------------
class GroebnerBasis:
    """A reduced Groebner basis: monic, sorted by decreasing leading monomial."""

    def __init__(self, basis: List[Polynomial], order: TermOrder = LEX, stats: Optional[Dict[str, int]] = None):
        self.order = order
        self.basis = basis
        self.stats = dict(stats or {})
        self._entries = _entries(basis, order)

    def leading_monomials(self) -> List[Monomial]:
        return [lm for lm, _ in self._entries]

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def normal_form(self, f: Polynomial, budget: Optional[BudgetCaps] = None) -> Polynomial:
        return _reduce(f, self._entries, self.order, _Meter(budget))

    def reduce_with_quotients(self, f: Polynomial, budget: Optional[BudgetCaps] = None):
        quotients = [Polynomial.zero() for _ in self.basis]
        rem = _reduce(f, self._entries, self.order, _Meter(budget), quotients)
        return rem, quotients

    def __len__(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroebnerBasis) and self.order == other.order and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.order, tuple(self.basis)))

    def __repr__(self) -> str:
        return f"GroebnerBasis({len(self.basis)} elements, {self.order.kind})"


def normal_form(f: Polynomial, g: GroebnerBasis) -> Polynomial:
    return g.normal_form(f)


def _split_variables(gens: Iterable[Polynomial]) -> Tuple[List[int], List[Polynomial]]:
    """Pull out generators that are a single variable and zero them elsewhere.

    <V> + <rest> = <V> + <rest with V set to 0>, and the reduced basis of the
    sum is V together with the reduced basis of the zeroed rest.
    """
    rest = [g for g in gens if g]
    found: List[int] = []
    while True:
        new = set()
        for g in rest:
            if len(g) == 1:
                (m, _), = g.items()
                if len(m) == 1 and m[0][1] == 1:
                    new.add(m[0][0])
        if not new:
            return found, rest
        found.extend(sorted(new))
        dead = set(found)
        rest = [h for h in (g.set_zero(dead) for g in rest) if h]


def _gebauer_moeller(G: List[int], B: List[Tuple[int, int]], h: int, lms: List[Monomial]):
    """Install ``h``: prune the new pairs by both criteria and the old ones by the chain rule."""
    lm_h = lms[h]
    C = [(h, g) for g in G]
    D: List[Tuple[int, int]] = []
    while C:
        pair = C.pop(0)
        g = pair[1]
        lcm_hg = mono_lcm(lm_h, lms[g])

        def lcm_divides(other) -> bool:
            return mono_divides(mono_lcm(lm_h, lms[other[1]]), lcm_hg)

        if mono_coprime(lm_h, lms[g]) or (not any(lcm_divides(f) for f in C)
                                          and not any(lcm_divides(f) for f in D)):
            D.append(pair)
    E = [(a, b) for a, b in D if not mono_coprime(lms[a], lms[b])]
    B_new = []
    for g1, g2 in B:
        lcm12 = mono_lcm(lms[g1], lms[g2])
        if (not mono_divides(lm_h, lcm12)
                or mono_lcm(lms[g1], lm_h) == lcm12
                or mono_lcm(lm_h, lms[g2]) == lcm12):
            B_new.append((g1, g2))
    B_new.extend(E)
    G_new = [g for g in G if not mono_divides(lm_h, lms[g])]
    G_new.append(h)
    return G_new, B_new


def _interreduce(polys: List[Polynomial], order: TermOrder, meter: _Meter) -> List[Polynomial]:
    entries = sorted(_entries(polys, order), key=lambda e: order.key(e[0]))
    minimal: List[Entry] = []
    for lm, g in entries:
        if not any(mono_divides(lm2, lm) for lm2, _ in minimal):
            minimal.append((lm, g))
    out = []
    for idx, (lm, g) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        lc = g.coefficient(lm)
        tail = _reduce(g.drop_term(lm), others, order, meter)
        out.append((Polynomial({lm: 1}) + tail * (1 / lc)))
    out.sort(key=lambda f: order.key(f.leading_monomial(order)), reverse=True)
    return out


def _buchberger_core(gens: List[Polynomial], order: TermOrder, meter: _Meter) -> List[Polynomial]:
    polys: List[Polynomial] = []
    lms: List[Monomial] = []
    sugar: List[int] = []
    seen = set()
    start = []
    for g in gens:
        g = g.monic(order)
        if g and g not in seen:
            seen.add(g)
            start.append(g)
    start.sort(key=lambda f: order.key(f.leading_monomial(order)))
    if any(g.is_constant() for g in start):
        return [Polynomial.constant(1)]

    G: List[int] = []
    B: List[Tuple[int, int]] = []
    pair_sugar: Dict[Tuple[int, int], int] = {}

    def install(f: Polynomial, s: int) -> None:
        nonlocal G, B
        polys.append(f)
        lms.append(f.leading_monomial(order))
        sugar.append(s)
        h = len(polys) - 1
        G, B = _gebauer_moeller(G, B, h, lms)

    def sugar_of(pair: Tuple[int, int]) -> int:
        if pair not in pair_sugar:
            a, b = pair
            lcm = mono_lcm(lms[a], lms[b])
            d = mono_degree(lcm)
            pair_sugar[pair] = max(sugar[a] + d - mono_degree(lms[a]), sugar[b] + d - mono_degree(lms[b]))
        return pair_sugar[pair]

    for f in start:
        install(f, f.total_degree())

    while B:
        pair = min(B, key=lambda pr: (sugar_of(pr), mono_degree(mono_lcm(lms[pr[0]], lms[pr[1]])),
                                      min(pr), max(pr)))
        B.remove(pair)
        meter.pair(len(B))
        a, b = pair
        sp = _s_polynomial((lms[a], polys[a]), (lms[b], polys[b]))
        basis = [(lms[g], polys[g]) for g in G]
        h = _reduce(sp, basis, order, meter)
        if h:
            if h.is_constant():
                return [Polynomial.constant(1)]
            install(h.monic(order), sugar_of(pair))

    return _interreduce([polys[g] for g in G], order, meter)


def buchberger(gens: Sequence[Polynomial], order: TermOrder = LEX,
               budget: Optional[BudgetCaps] = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Args:
        gens: Generators; zeros are ignored, an empty list gives the zero ideal.
        order: Term order.
        budget: Caps on the pair queue and on reduction steps.

    Returns:
        GroebnerBasis: Deterministic, independent of generator order.

    Raises:
        BudgetExceeded: If either cap is hit.
    """
    meter = _Meter(budget)
    variables, rest = _split_variables(gens)
    core = _buchberger_core(rest, order, meter) if rest else []
    if core and core[0].is_constant():
        return GroebnerBasis(core, order, meter.counters())
    basis = [Polynomial.var(r) for r in variables] + core
    basis.sort(key=lambda f: order.key(f.leading_monomial(order)), reverse=True)
    return GroebnerBasis(basis, order, meter.counters())


# ---------------------------------------------------------------------------
# Verification of a given generating set
# ---------------------------------------------------------------------------
class GbVerification(NamedTuple):
    ok: bool
    failing_pairs: List[Tuple[int, int]]
    checked: int
    skipped: int


def verify_gb(gens: Sequence[Polynomial], order: TermOrder = LEX,
              budget: Optional[BudgetCaps] = None, stop_at_first: bool = False) -> GbVerification:
    """Buchberger's criterion on ``gens`` as given.

    Pairs with coprime leading monomials are skipped, and so is a pair whose
    lcm is strictly divisible by both lcms through a third element; neither
    skip can hide a failure.
    """
    meter = _Meter(budget)
    entries = _entries(gens, order)
    lms = [lm for lm, _ in entries]
    failing: List[Tuple[int, int]] = []
    checked = skipped = 0
    n = len(entries)
    for i in range(n):
        for j in range(i + 1, n):
            if mono_coprime(lms[i], lms[j]):
                skipped += 1
                continue
            lcm = mono_lcm(lms[i], lms[j])
            if any(k != i and k != j and mono_divides(lms[k], lcm)
                   and mono_lcm(lms[i], lms[k]) != lcm and mono_lcm(lms[j], lms[k]) != lcm
                   for k in range(n)):
                skipped += 1
                continue
            checked += 1
            meter.pair(0)
            if _reduce(_s_polynomial(entries[i], entries[j]), entries, order, meter):
                failing.append((i, j))
                if stop_at_first:
                    return GbVerification(False, failing, checked, skipped)
    return GbVerification(not failing, failing, checked, skipped)


def leading_monomials_squarefree(gens: Sequence[Polynomial], order: TermOrder = LEX) -> bool:
    return all(mono_is_squarefree(g.leading_monomial(order)) for g in gens if g)


# ---------------------------------------------------------------------------
# Membership and ideal predicates
# ---------------------------------------------------------------------------
class MembershipCert:
    """Result of dividing ``query`` by a reduced basis, with the quotients used."""

    def __init__(self, query: Polynomial, remainder: Polynomial, quotients: List[Polynomial],
                 basis: List[Polynomial]):
        self.query = query
        self.remainder = remainder
        self.quotients = quotients
        self.basis = basis

    @property
    def member(self) -> bool:
        return self.remainder.is_zero()

    def replay(self) -> bool:
        """Check query - remainder == sum(q_i * g_i) exactly."""
        total = Polynomial.zero()
        for q, g in zip(self.quotients, self.basis):
            total = total + q * g
        return self.query - self.remainder == total

    def __repr__(self) -> str:
        return f"MembershipCert(member={self.member})"


def member(f: Polynomial, gens: Sequence[Polynomial], order: TermOrder = LEX,
           budget: Optional[BudgetCaps] = None) -> MembershipCert:
    gb = buchberger(gens, order, budget)
    rem, quotients = gb.reduce_with_quotients(f, budget)
    return MembershipCert(f, rem, quotients, gb.basis)


class _ContainmentOracle:
    """Decides f in J for many f, computing the full basis of J only when needed.

    Single-variable generators of J are set to zero first. A query then tries
    the generators of J whose variables all occur in the query, which is a
    sound certificate; a full basis is built only if that fails.
    """

    def __init__(self, gens: Sequence[Polynomial], order: TermOrder, budget: Optional[BudgetCaps]):
        self.order = order
        self.budget = budget
        variables, self.rest = _split_variables(gens)
        self.dead = set(variables)
        self._full: Optional[GroebnerBasis] = None
        self._local: Dict[frozenset, GroebnerBasis] = {}

    def full(self) -> GroebnerBasis:
        if self._full is None:
            self._full = buchberger(self.rest, self.order, self.budget)
        return self._full

    def __contains__(self, f: Polynomial) -> bool:
        g = f.set_zero(self.dead)
        if not g:
            return True
        if self._full is None:
            support = g.variables()
            local = [h for h in self.rest if h.variables() <= support]
            if local:
                key = frozenset(local)
                if key not in self._local:
                    self._local[key] = buchberger(local, self.order, self.budget)
                if not self._local[key].normal_form(g, self.budget):
                    return True
        return not self.full().normal_form(g, self.budget)


def first_non_member(I: Sequence[Polynomial], J: Sequence[Polynomial], order: TermOrder = LEX,
                     budget: Optional[BudgetCaps] = None) -> Optional[Polynomial]:
    oracle = _ContainmentOracle(J, order, budget)
    for f in I:
        if f not in oracle:
            return f
    return None


def contains(I: Sequence[Polynomial], J: Sequence[Polynomial], order: TermOrder = LEX,
             budget: Optional[BudgetCaps] = None) -> bool:
    """True iff the ideal generated by ``I`` lies inside the ideal generated by ``J``."""
    return first_non_member(I, J, order, budget) is None


def equal(I: Sequence[Polynomial], J: Sequence[Polynomial], order: TermOrder = LEX,
          budget: Optional[BudgetCaps] = None) -> bool:
    return buchberger(I, order, budget).basis == buchberger(J, order, budget).basis


def _fresh_aux(polys: Iterable[Polynomial]) -> int:
    used = [r + AUX_OFFSET for f in polys for r in f.variables() if is_aux(r)]
    return aux_rank(max(used, default=0) + 1)


def intersect(I: Sequence[Polynomial], J: Sequence[Polynomial],
              budget: Optional[BudgetCaps] = None) -> List[Polynomial]:
    """Generators of I cap J: eliminate y from y*I + (1 - y)*J."""
    I = [f for f in I if f]
    J = [f for f in J if f]
    if not I or not J:
        return []
    y = Polynomial.var(_fresh_aux(list(I) + list(J)))
    one_minus_y = Polynomial.constant(1) - y
    gens = [y * f for f in I] + [one_minus_y * g for g in J]
    gb = buchberger(gens, ELIMINATION, budget)
    y_rank = next(iter(y.variables()))
    return [g for g in gb.basis if y_rank not in g.variables()]


def radical_member(f: Polynomial, gens: Sequence[Polynomial],
                   budget: Optional[BudgetCaps] = None) -> bool:
    """f in rad(I) iff 1 in I + <1 - y*f>."""
    if not f:
        return True
    if contains([f], gens, LEX, budget):
        return True
    y = Polynomial.var(_fresh_aux(list(gens) + [f]))
    gb = buchberger(list(gens) + [Polynomial.constant(1) - y * f], ELIMINATION, budget)
    return gb.is_unit()


# ---------------------------------------------------------------------------
# Harnesses
# ---------------------------------------------------------------------------
def _guard_tiny(p: GridParams, what: str) -> None:
    require_k1_two(p, what)
    if (p.t, p.d, p.k2) not in DECOMPOSITION_INSTANCES:
        raise GridError(f"{what} is sized for (t,d,k2) in {sorted(DECOMPOSITION_INSTANCES)}, got ({p.t},{p.d},{p.k2})")


def minimal_zero_sets(p: GridParams) -> List[ZeroSet]:
    """Minimal zero sets in canonical order: by type, then by points."""
    groups = enumerate_minimal(p)
    return [s for c in sorted(groups) for s in groups[c]]


def verify_decomposition(p: GridParams, budget: Optional[BudgetCaps] = None,
                         check_nonminimal: bool = True,
                         progress: Optional[Callable[[str], None]] = None) -> LabReport:
    """Check that rad(I_C) is the intersection of the I_S over minimal S.

    I_C lies in every minimal I_S; the intersection N is built pairwise in
    canonical order; every generator of N lies in rad(I_C). N is radical as
    an intersection of radical ideals, so rad(I_C) = N.
    """
    _guard_tiny(p, "verify_decomposition")
    report = LabReport(check="decompose", params=p)
    say = progress or (lambda _msg: None)
    ic = build_IC(p).generators
    zero_sets = minimal_zero_sets(p)
    report.details["minimal_sets"] = [format_zero_set(s) or "{}" for s in zero_sets]
    try:
        ideals = []
        for s in zero_sets:
            gens = build_IS(s).generators
            ideals.append(gens)
            bad = first_non_member(ic, gens, LEX, budget)
            if bad is not None:
                report.fail(f"I_C not inside I_S for S={format_zero_set(s)}: {bad}")
        say(f"I_C inside all {len(zero_sets)} minimal I_S")

        N = ideals[0]
        for s, gens in zip(zero_sets[1:], ideals[1:]):
            N = intersect(N, gens, budget)
            say(f"intersected with S={format_zero_set(s)}: {len(N)} generators")
        report.details["intersection_size"] = len(N)

        for f in N:
            if not radical_member(f, ic, budget):
                report.fail(f"intersection generator not in rad(I_C): {f}")
        say("radical membership checked")

        if check_nonminimal:
            # a non-minimal component must not cut N down further
            checked = 0
            for s in all_zero_sets(p):
                if is_minimal(s):
                    continue
                checked += 1
                if not equal(intersect(N, build_IS(s).generators, budget), N, LEX, budget):
                    report.fail(f"N changes when intersected with I_S for non-minimal S={format_zero_set(s)}")
            report.details["nonminimal_checked"] = checked
            say(f"{checked} non-minimal zero sets leave N unchanged")
    except BudgetExceeded as e:
        report.out_of_budget(f"{e} ({e.counters})")
    return report


def verify_ideal_minimality(p: GridParams, budget: Optional[BudgetCaps] = None,
                            progress: Optional[Callable[[str], None]] = None) -> LabReport:
    """Compare containment-minimal ideals I_S with the combinatorial predicate."""
    _guard_tiny(p, "verify_ideal_minimality")
    report = LabReport(check="minimality-oracle", params=p)
    say = progress or (lambda _msg: None)
    try:
        classes: Dict[Tuple[Polynomial, ...], List[ZeroSet]] = {}
        bases: Dict[Tuple[Polynomial, ...], GroebnerBasis] = {}
        for s in all_zero_sets(p):
            gb = buchberger(build_IS(s).generators, LEX, budget)
            key = tuple(gb.basis)
            classes.setdefault(key, []).append(s)
            bases[key] = gb
        keys = list(classes)
        say(f"{len(keys)} distinct ideals among {sum(len(v) for v in classes.values())} zero sets")

        def inside(a, b) -> bool:
            return all(not bases[b].normal_form(f, budget) for f in a)

        minimal_keys = set()
        for a in keys:
            if not any(b != a and inside(b, a) for b in keys):
                minimal_keys.add(a)
        predicate_keys = {k for k, sets in classes.items() if any(is_minimal(s) for s in sets)}

        for k in sorted(minimal_keys - predicate_keys, key=lambda k: format_zero_set(classes[k][0])):
            report.fail(f"containment-minimal but no minimal S: S={format_zero_set(classes[k][0])}")
        for k in sorted(predicate_keys - minimal_keys, key=lambda k: format_zero_set(classes[k][0])):
            report.fail(f"minimal S but ideal not minimal: S={format_zero_set(classes[k][0])}")
        report.details["distinct_ideals"] = len(keys)
        report.details["minimal_ideals"] = len(minimal_keys)
    except BudgetExceeded as e:
        report.out_of_budget(f"{e} ({e.counters})")
    return report


def verify_containment_chain(p: GridParams, zero_sets: Sequence[ZeroSet],
                             budget: Optional[BudgetCaps] = None) -> LabReport:
    """Check I_{S_1} inside I_{S_2} inside ... for consecutive zero sets."""
    report = LabReport(check="containment-chain", params=p)
    links = []
    try:
        for a, b in zip(zero_sets, zero_sets[1:]):
            ok = contains(build_IS(a).generators, build_IS(b).generators, LEX, budget)
            links.append(ok)
            if not ok:
                report.fail(f"I_S not inside I_S' for S={format_zero_set(a)}, S'={format_zero_set(b)}")
    except BudgetExceeded as e:
        report.out_of_budget(f"{e} ({e.counters})")
    report.details["links"] = links
    return report
