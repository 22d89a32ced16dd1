from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple, Union
from fractions import Fraction
from enum import IntEnum
from functools import lru_cache
import re


class PolyError(RuntimeError):
    """Raised for invalid polynomial operations or unparsable polynomial text."""
    pass


# ---------------------------------------------------------------------------
# Variables. Every variable is encoded as an integer rank; a smaller rank is a
# greater variable. Grid variables x_{i(j,l)} are ordered by column (l, then j)
# and then by matrix row:
# x_{1(1,1)} > x_{2(1,1)} > ... > x_{d(1,1)} > x_{1(2,1)} > ...
# Auxiliary variables (intersection, saturation, parameters) get negative
# ranks and therefore sit above every grid variable.
# ---------------------------------------------------------------------------
RADIX = 1 << 10
AUX_OFFSET = RADIX ** 3


class VarId(NamedTuple):
    """The variable x_{row(j,l)}: matrix row ``row``, grid point ``(j, l)``."""
    row: int
    j: int
    l: int

    @property
    def rank(self) -> int:
        if not (0 < self.row < RADIX and 0 < self.j < RADIX and 0 < self.l < RADIX):
            raise PolyError(f"Variable index out of range: {tuple(self)}")
        return (self.l * RADIX + self.j) * RADIX + self.row

    @staticmethod
    def from_rank(rank: int) -> "VarId":
        if rank < 0:
            raise PolyError(f"Rank {rank} is an auxiliary variable, not a grid variable")
        rest, row = divmod(rank, RADIX)
        l, j = divmod(rest, RADIX)
        return VarId(row, j, l)

    def name(self) -> str:
        return f"x_{self.row}_{self.j}_{self.l}"


def aux_rank(k: int) -> int:
    """Rank of the auxiliary variable ``y_k`` (k >= 1); y_1 > y_2 > ... > every x."""
    if not (0 < k < AUX_OFFSET):
        raise PolyError(f"Auxiliary index out of range: {k}")
    return k - AUX_OFFSET


def is_aux(rank: int) -> bool:
    return rank < 0


def var_name(rank: int) -> str:
    if is_aux(rank):
        return f"y_{rank + AUX_OFFSET}"
    return VarId.from_rank(rank).name()


# ---------------------------------------------------------------------------
# Monomials: tuples of (rank, exponent) pairs sorted by rank, no zero exponents.
# ---------------------------------------------------------------------------
Monomial = Tuple[Tuple[int, int], ...]
ONE: Monomial = ()


def monomial(exponents: Mapping[int, int]) -> Monomial:
    """Build a canonical monomial from a rank -> exponent map."""
    for e in exponents.values():
        if e < 0:
            raise PolyError("Negative exponent in monomial")
    return tuple(sorted((r, e) for r, e in exponents.items() if e))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for r, e in b:
        exps[r] = exps.get(r, 0) + e
    return tuple(sorted(exps.items()))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff ``a`` divides ``b``."""
    if len(a) > len(b):
        return False
    exps = dict(b)
    for r, e in a:
        if exps.get(r, 0) < e:
            return False
    return True


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    """Return ``b / a``; ``a`` must divide ``b``."""
    exps = dict(b)
    for r, e in a:
        left = exps.get(r, 0) - e
        if left < 0:
            raise PolyError("Monomial division is not exact")
        if left:
            exps[r] = left
        else:
            del exps[r]
    return tuple(sorted(exps.items()))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for r, e in b:
        if exps.get(r, 0) < e:
            exps[r] = e
    return tuple(sorted(exps.items()))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    ranks = {r for r, _ in a}
    return not any(r in ranks for r, _ in b)


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_is_squarefree(m: Monomial) -> bool:
    return all(e == 1 for _, e in m)


def mono_support(m: Monomial) -> frozenset:
    return frozenset(r for r, _ in m)


# ---------------------------------------------------------------------------
# Term orders
# ---------------------------------------------------------------------------
class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@lru_cache(maxsize=1 << 18)
def _lex_key(m: Monomial) -> tuple:
    key = []
    for r, e in m:
        key.append(-r)
        key.append(e)
    return tuple(key)


class TermOrder:
    """A monomial order: plain ``lex`` or ``elimination`` (auxiliary block first).

    ``key(m)`` maps a monomial to a tuple whose natural ordering is the term
    order, so ``max(terms, key=order.key)`` is the leading monomial.
    """

    KINDS = ("lex", "elimination")

    def __init__(self, kind: str = "lex"):
        if kind not in self.KINDS:
            raise PolyError(f"Unknown term order: {kind}")
        self.kind = kind

    def key(self, m: Monomial) -> tuple:
        if self.kind == "lex":
            return _lex_key(m)
        aux = tuple(p for p in m if p[0] < 0)
        rest = m[len(aux):]
        return (_lex_key(aux), _lex_key(rest))

    def __eq__(self, other) -> bool:
        return isinstance(other, TermOrder) and other.kind == self.kind

    def __hash__(self) -> int:
        return hash(self.kind)

    def __repr__(self) -> str:
        return f"TermOrder({self.kind!r})"


LEX = TermOrder("lex")
ELIMINATION = TermOrder("elimination")


def compare_monomials(a: Monomial, b: Monomial, o: TermOrder = LEX) -> Ordering:
    ka, kb = o.key(a), o.key(b)
    if ka == kb:
        return Ordering.EQUAL
    return Ordering.GREATER if ka > kb else Ordering.LESS


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------
Scalar = Union[int, Fraction]


class Polynomial:
    """Exact polynomial over the rationals, stored as ``{monomial: coefficient}``.

    Instances are treated as immutable: every operation returns a new value and
    the term map is kept canonical (no zero coefficients).
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # ---------------- constructors ---------------- #

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._wrap({})

    @classmethod
    def constant(cls, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return cls._wrap({ONE: c} if c else {})

    @classmethod
    def var(cls, v: Union[VarId, int]) -> "Polynomial":
        rank = v.rank if isinstance(v, VarId) else v
        return cls._wrap({((rank, 1),): Fraction(1)})

    @classmethod
    def aux(cls, k: int) -> "Polynomial":
        return cls.var(aux_rank(k))

    # ---------------- inspection ---------------- #

    def items(self) -> Iterable[Tuple[Monomial, Fraction]]:
        return self._terms.items()

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def variables(self) -> frozenset:
        return frozenset(r for m in self._terms for r, _ in m)

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=0)

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def leading_term(self, order: TermOrder = LEX) -> Tuple[Monomial, Fraction]:
        if not self._terms:
            raise PolyError("no leading term of zero")
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    def leading_monomial(self, order: TermOrder = LEX) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: TermOrder = LEX) -> Fraction:
        return self.leading_term(order)[1]

    def sorted_terms(self, order: TermOrder = LEX) -> List[Tuple[Monomial, Fraction]]:
        """Terms in descending term order."""
        return sorted(self._terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    # ---------------- arithmetic ---------------- #

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) - c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._wrap(out)

    def __rsub__(self, other) -> "Polynomial":
        return Polynomial.constant(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if not c:
                return Polynomial.zero()
            return Polynomial._wrap({m: k * c for m, k in self._terms.items()})
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise PolyError("Negative power of a polynomial")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_term(self, m: Monomial, c: Scalar) -> "Polynomial":
        """Multiply by the single term ``c * m``."""
        c = Fraction(c)
        if not c:
            return Polynomial.zero()
        return Polynomial._wrap({mono_mul(k, m): v * c for k, v in self._terms.items()})

    def sub_term_multiple(self, m: Monomial, c: Fraction, g: "Polynomial") -> "Polynomial":
        """Return ``self - c*m*g`` in one pass (the division step)."""
        out = dict(self._terms)
        for k, v in g._terms.items():
            key = mono_mul(k, m)
            s = out.get(key, 0) - v * c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Polynomial._wrap(out)

    def drop_term(self, m: Monomial) -> "Polynomial":
        out = dict(self._terms)
        out.pop(m, None)
        return Polynomial._wrap(out)

    def monic(self, order: TermOrder = LEX) -> "Polynomial":
        if not self._terms:
            return self
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        return self * (1 / lc)

    # ---------------- calculus / evaluation ---------------- #

    def derivative(self, rank: int) -> "Polynomial":
        out: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            exps = dict(m)
            e = exps.get(rank, 0)
            if not e:
                continue
            if e == 1:
                del exps[rank]
            else:
                exps[rank] = e - 1
            key = tuple(sorted(exps.items()))
            out[key] = out.get(key, 0) + c * e
        return Polynomial(out)

    def evaluate(self, values: Mapping[int, Scalar]) -> Fraction:
        """Evaluate exactly; ``values`` maps variable rank to a rational."""
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for r, e in m:
                try:
                    x = values[r]
                except KeyError:
                    raise PolyError(f"No value given for {var_name(r)}") from None
                if not x:
                    term = 0
                    break
                term *= x ** e
            total += term
        return total

    def set_zero(self, ranks: Iterable[int]) -> "Polynomial":
        """Substitute 0 for every variable in ``ranks``."""
        dead = set(ranks)
        return Polynomial._wrap({m: c for m, c in self._terms.items()
                                 if not any(r in dead for r, _ in m)})

    def rename(self, mapping: Mapping[int, int]) -> "Polynomial":
        """Rename variables by rank; unmapped ranks are kept."""
        out: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            exps: Dict[int, int] = {}
            for r, e in m:
                r2 = mapping.get(r, r)
                exps[r2] = exps.get(r2, 0) + e
            key = tuple(sorted(exps.items()))
            out[key] = out.get(key, 0) + c
        return Polynomial(out)

    # ---------------- identity ---------------- #

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == Polynomial.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def to_text(self, order: TermOrder = LEX) -> str:
        return format_polynomial(self, order)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# Arithmetic by name
# ---------------------------------------------------------------------------
def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise PolyError(f"Unknown polynomial operation: {op}")


def leading_term(f: Polynomial, o: TermOrder = LEX) -> Tuple[Monomial, Fraction]:
    return f.leading_term(o)


# ---------------------------------------------------------------------------
# Text grammar:  x_1_1_1*x_2_2_1 - x_1_2_1*x_2_1_1,  3/2*x_1_1_1^2 + 7
# ---------------------------------------------------------------------------
def _factor_key(pair: Tuple[int, int]) -> tuple:
    r = pair[0]
    return (0, r) if is_aux(r) else (1,) + tuple(VarId.from_rank(r))


def format_monomial(m: Monomial) -> str:
    """Factors by name: y_k first, then x_i_j_l by (i, j, l)."""
    parts = []
    for r, e in sorted(m, key=_factor_key):
        parts.append(var_name(r) if e == 1 else f"{var_name(r)}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: TermOrder = LEX) -> str:
    if f.is_zero():
        return "0"
    out = []
    for idx, (m, c) in enumerate(f.sorted_terms(order)):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not m:
            body = str(mag)
        elif mag == 1:
            body = format_monomial(m)
        else:
            body = f"{mag}*{format_monomial(m)}"
        if idx == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TERM_RE = re.compile(r"\s*([+\-])?\s*([^+\-\s][^+\-]*)")
_FACTOR_RE = re.compile(r"^(?:x_(\d+)_(\d+)_(\d+)|y_(\d+))(?:\^(\d+))?$")
_COEFF_RE = re.compile(r"^\d+(?:/\d+)?$")


def parse_polynomial(text: str) -> Polynomial:
    """Parse the polynomial text grammar (also accepts the unicode minus)."""
    src = text.replace("−", "-").strip()
    if not src:
        raise PolyError("Empty polynomial text")
    if src == "0":
        return Polynomial.zero()
    terms: Dict[Monomial, Fraction] = {}
    pos = 0
    while pos < len(src):
        match = _TERM_RE.match(src, pos)
        if not match or match.end() == pos:
            raise PolyError(f"Cannot parse polynomial near: {src[pos:]!r}")
        sign, body = match.group(1), match.group(2).strip()
        if pos > 0 and sign is None:
            raise PolyError(f"Missing operator before: {body!r}")
        pos = match.end()
        coeff = Fraction(1)
        exps: Dict[int, int] = {}
        for idx, factor in enumerate(p.strip() for p in body.split("*")):
            if idx == 0 and _COEFF_RE.match(factor):
                coeff = Fraction(factor)
                continue
            fm = _FACTOR_RE.match(factor)
            if not fm:
                raise PolyError(f"Bad factor {factor!r} in {text!r}")
            if fm.group(4) is not None:
                rank = aux_rank(int(fm.group(4)))
            else:
                rank = VarId(int(fm.group(1)), int(fm.group(2)), int(fm.group(3))).rank
            exps[rank] = exps.get(rank, 0) + int(fm.group(5) or 1)
        if sign == "-":
            coeff = -coeff
        m = monomial(exps)
        terms[m] = terms.get(m, 0) + coeff
    return Polynomial(terms)


def iter_ranks(polys: Iterable[Polynomial]) -> Iterator[int]:
    seen = set()
    for p in polys:
        for r in p.variables():
            if r not in seen:
                seen.add(r)
                yield r
