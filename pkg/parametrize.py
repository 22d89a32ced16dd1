from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union
from fractions import Fraction
import random

from rationalPoly import Polynomial, aux_rank
from exactMatrix import (Matrix, inverse, matmul, random_invertible, random_matrix, random_rational,
                         rank, rng_for, zeros)
from gridSets import GridParams, CombType, is_minimal_type, representative
from idealFactory import IdealPresentation, build_DA, hat_columns, var_of
from dimDegree import dim_formula


class ParametrizeError(RuntimeError):
    """Raised for parameter shapes or branches outside the map's hypotheses."""
    pass


BRANCHES = ("empty", "zero-set")


class EmptyParams(NamedTuple):
    """(M, N, A) for the map onto the variety of I_empty."""
    M: list
    N: list
    A: list


class ZeroSetParams(NamedTuple):
    """(M, N1, N2, A, N3) for the map onto the variety of J_S (representative S)."""
    M: list
    N1: list
    N2: list
    A: list
    N3: list


ParamPoint = Union[EmptyParams, ZeroSetParams]


# ---------------------------------------------------------------------------
# Shapes
# ---------------------------------------------------------------------------
def empty_shapes(p: GridParams) -> Dict[str, Tuple[int, int]]:
    return {"M": (p.d, p.t - 1), "N": (p.t - 1, p.k2), "A": (p.k2, p.k1 - 1)}


def zero_set_shapes(p: GridParams, c: CombType) -> Dict[str, Tuple[int, int]]:
    u, v = c
    w = p.k2 - u - v
    t = p.t
    return {"M": (p.d, t), "N1": (t - 1, u), "N2": (t - 2, w), "A": (w, 1), "N3": (t - 1, v)}


def _check_shape(name: str, mat: Sequence[Sequence], shape: Tuple[int, int]) -> None:
    rows, cols = shape
    if len(mat) != rows or any(len(r) != cols for r in mat):
        got = f"{len(mat)}x{len(mat[0]) if mat else 0}"
        raise ParametrizeError(f"{name} must be {rows}x{cols}, got {got}")


def _require_zero_set_map(p: GridParams, c: CombType) -> None:
    if p.k1 != 2:
        raise ParametrizeError(f"the zero-set map needs k1 = 2 (got {p.k1})")
    if tuple(c) == (0, 0) or not is_minimal_type(p, CombType(*c)):
        raise ParametrizeError(f"the zero-set map needs a minimal nonempty type, got ({c[0]},{c[1]})")


# ---------------------------------------------------------------------------
# Ring-generic block algebra (entries are Fractions or Polynomials)
# ---------------------------------------------------------------------------
def _mul(a: Sequence[Sequence], b: Sequence[Sequence], rows: int, cols: int, zero) -> list:
    if not b or not rows or not cols:
        return [[zero] * cols for _ in range(rows)]
    return [[sum((x * y for x, y in zip(row, col)), zero) for col in zip(*b)] for row in a]


def _cols(m: Sequence[Sequence], start: int, stop: int) -> list:
    return [list(r[start:stop]) for r in m]


def _apply_DA(core: Sequence[Sequence], A: Sequence[Sequence], k1: int, zero) -> list:
    """core * D_A: column i becomes k1 columns, scaled by 1, a_i1, ..., a_i(k1-1)."""
    return _mul(core, build_DA(A, k1), len(core), k1 * len(A), zero)


def _phi_empty(p: GridParams, P: EmptyParams, zero) -> list:
    return _apply_DA(_mul(P.M, P.N, p.d, p.k2, zero), P.A, p.k1, zero)


def _phi_zero_set(p: GridParams, c: CombType, P: ZeroSetParams, zero) -> list:
    u, v = c
    t, d = p.t, p.d
    w = p.k2 - u - v
    left = _mul(_cols(P.M, 0, t - 1), P.N1, d, u, zero)
    mid = _apply_DA(_mul(_cols(P.M, 1, t - 1), P.N2, d, w, zero), P.A, 2, zero) if w else [[] for _ in range(d)]
    right = _mul(_cols(P.M, 1, t), P.N3, d, v, zero)
    hat = [l + m + r for l, m, r in zip(left, mid, right)]
    full = [[zero] * (p.k1 * p.k2) for _ in range(d)]
    for idx, (j, l) in enumerate(hat_columns(representative(c, p))):
        col = (l - 1) * p.k1 + (j - 1)
        for i in range(d):
            full[i][col] = hat[i][idx]
    return full


def phi(point: ParamPoint, p: GridParams, c: Optional[CombType] = None) -> Matrix:
    """The image point, d x k1*k2 in X column order (zeros at S for the zero-set map)."""
    if isinstance(point, EmptyParams):
        for name, shape in empty_shapes(p).items():
            _check_shape(name, getattr(point, name), shape)
        return _phi_empty(p, point, Fraction(0))
    if c is None:
        raise ParametrizeError("the zero-set map needs a combinatorial type")
    _require_zero_set_map(p, c)
    for name, shape in zero_set_shapes(p, c).items():
        _check_shape(name, getattr(point, name), shape)
    return _phi_zero_set(p, CombType(*c), point, Fraction(0))


# ---------------------------------------------------------------------------
# Random points
# ---------------------------------------------------------------------------
def random_params(p: GridParams, rng: random.Random, c: Optional[CombType] = None) -> ParamPoint:
    if c is None or tuple(c) == (0, 0):
        shapes = empty_shapes(p)
        return EmptyParams(*(random_matrix(rng, *shapes[k]) for k in EmptyParams._fields))
    _require_zero_set_map(p, c)
    shapes = zero_set_shapes(p, c)
    return ZeroSetParams(*(random_matrix(rng, *shapes[k]) for k in ZeroSetParams._fields))


def image_in_variety(point: Matrix, ideal: IdealPresentation) -> Tuple[bool, Optional[Polynomial]]:
    """Evaluate every generator at ``point``; return (all vanish, first failing generator)."""
    p = ideal.params
    values = {}
    for i in range(p.d):
        for l in range(1, p.k2 + 1):
            for j in range(1, p.k1 + 1):
                values[var_of(i + 1, (j, l)).rank] = point[i][(l - 1) * p.k1 + (j - 1)]
    for f in ideal.generators:
        if f.evaluate(values):
            return False, f
    return True, None


def count_image_failures(p: GridParams, ideal: IdealPresentation, samples: int, seed: int,
                         c: Optional[CombType] = None) -> int:
    failures = 0
    for trial in range(samples):
        point = phi(random_params(p, rng_for(seed, trial), c), p, c)
        ok, _ = image_in_variety(point, ideal)
        failures += not ok
    return failures


# ---------------------------------------------------------------------------
# Jacobian rank
# ---------------------------------------------------------------------------
def _symbolic_params(p: GridParams, c: Optional[CombType]) -> Tuple[ParamPoint, List[int]]:
    ranks: List[int] = []

    def sym(rows: int, cols: int) -> list:
        out = []
        for _ in range(rows):
            row = []
            for _ in range(cols):
                ranks.append(aux_rank(len(ranks) + 1))
                row.append(Polynomial.var(ranks[-1]))
            out.append(row)
        return out

    if c is None or tuple(c) == (0, 0):
        shapes = empty_shapes(p)
        return EmptyParams(*(sym(*shapes[k]) for k in EmptyParams._fields)), ranks
    shapes = zero_set_shapes(p, c)
    return ZeroSetParams(*(sym(*shapes[k]) for k in ZeroSetParams._fields)), ranks


def expected_rank(branch: str, p: GridParams, c: CombType) -> int:
    return dim_formula(p, CombType(0, 0) if branch == "empty" else c)


def parameter_count(branch: str, p: GridParams, c: CombType) -> int:
    shapes = empty_shapes(p) if branch == "empty" else zero_set_shapes(p, c)
    return sum(r * k for r, k in shapes.values())


def fiber_dimension(branch: str, p: GridParams) -> int:
    return (p.t - 1) ** 2 + (0 if branch == "empty" else 1)


def jacobian_rank(branch: str, p: GridParams, c: CombType = CombType(0, 0), trials: int = 3,
                  seed: int = 0) -> int:
    """Max over ``trials`` seeded points of the exact rank of the Jacobian of phi."""
    if branch not in BRANCHES:
        raise ParametrizeError(f"Unknown branch {branch!r}; expected one of {BRANCHES}")
    if branch == "empty":
        c = CombType(0, 0)
    else:
        _require_zero_set_map(p, c)
        if p.d != p.t:
            raise ParametrizeError(f"the zero-set rank check needs d = t (got d = {p.d}, t = {p.t})")
    if trials < 1:
        raise ParametrizeError("trials must be >= 1")
    sym_point, ranks = _symbolic_params(p, None if branch == "empty" else c)
    zero = Polynomial.zero()
    image = (_phi_empty(p, sym_point, zero) if branch == "empty"
             else _phi_zero_set(p, CombType(*c), sym_point, zero))
    entries = [f for row in image for f in row if isinstance(f, Polynomial) and f]
    jac = [[f.derivative(r) for r in ranks] for f in entries]
    best = 0
    for trial in range(trials):
        rng = rng_for(seed, trial)
        values = {r: random_rational(rng) for r in ranks}
        numeric = [[g.evaluate(values) for g in row] for row in jac]
        best = max(best, rank(numeric))
    return best


# ---------------------------------------------------------------------------
# Fiber actions
# ---------------------------------------------------------------------------
def fiber_action_empty(P: EmptyParams, C: Matrix) -> EmptyParams:
    """(M, N, A) -> (MC, C^-1 N, A)."""
    return EmptyParams(matmul(P.M, C), matmul(inverse(C), P.N), P.A)


def random_block_triangular(rng: random.Random, t: int) -> Matrix:
    """t x t matrix [[lam, 0, 0], [b1, B, b2], [0, 0, mu]] with B invertible, lam, mu nonzero."""
    C = zeros(t, t)
    C[0][0] = _nonzero(rng)
    C[t - 1][t - 1] = _nonzero(rng)
    if t > 2:
        B = random_invertible(rng, t - 2)
        for i in range(t - 2):
            C[i + 1][0] = random_rational(rng)
            C[i + 1][t - 1] = random_rational(rng)
            for j in range(t - 2):
                C[i + 1][j + 1] = B[i][j]
    return C


def _nonzero(rng: random.Random) -> Fraction:
    while True:
        x = random_rational(rng)
        if x:
            return x


def fiber_action_zero_set(P: ZeroSetParams, C: Matrix) -> ZeroSetParams:
    """Compensate M -> MC in the three parameter blocks."""
    t = len(C)
    top_left = [row[0:t - 1] for row in C[0:t - 1]]
    bottom_right = [row[1:t] for row in C[1:t]]
    N1 = matmul(inverse(top_left), P.N1) if P.N1 and P.N1[0] else P.N1
    N3 = matmul(inverse(bottom_right), P.N3) if P.N3 and P.N3[0] else P.N3
    if t > 2 and P.N2 and P.N2[0]:
        N2 = matmul(inverse([row[1:t - 1] for row in C[1:t - 1]]), P.N2)
    else:
        N2 = P.N2
    return ZeroSetParams(matmul(P.M, C), N1, N2, P.A, N3)


def count_fiber_failures(branch: str, p: GridParams, c: CombType, instances: int, seed: int) -> int:
    """Instances where phi changes under the group action (should be 0)."""
    failures = 0
    for trial in range(instances):
        rng = rng_for(seed, 10_000 + trial)
        if branch == "empty":
            P = random_params(p, rng)
            Q = fiber_action_empty(P, random_invertible(rng, p.t - 1))
            failures += phi(P, p) != phi(Q, p)
        else:
            P = random_params(p, rng, c)
            Q = fiber_action_zero_set(P, random_block_triangular(rng, p.t))
            failures += phi(P, p, c) != phi(Q, p, c)
    return failures
