"""Rota-Baxter defining systems and direct operator checks.

For a semigroup with structure constants r and an operator with matrix
C = (c_ij), P(e_i) = sum_j c_ij e_j, the identity
P(x)P(y) = P(xP(y)) + P(P(x)y) + lambda P(xy) on basis pairs (e_i, e_j),
read off at coordinate e_m, is the quadratic equation

    sum_{k,l} r^m_{kl} c_ik c_jl
      - sum_{l,k} (r^l_{kj} c_ik + r^l_{ik} c_jk) c_lm
      - lambda sum_l r^l_{ij} c_lm = 0.

`rb_defect` checks the same identity by multiplying in k[S] directly, so it
is an independent oracle for the generator.

Architecture boundary: builds and evaluates systems; solving lives in
src/oracle, family data in src/families.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from loguru import logger
from pydantic import ValidationError
from sympy.polys.rings import PolyElement, PolyRing

from src.algebra.field import PrimeFieldElement, format_rational, parse_rational, reduce_rational
from src.algebra.poly import VariableId, coeff_variables, evaluate, from_fraction, make_ring
from src.algebra.semigroup import CayleyTable, as_table, check_associativity, structure_constants
from src.errors import BadInputError, DimensionMismatchError, NotAssociativeError
from src.schemas import MatrixFile

EquationIndex = tuple[int, int, int]


def _normalize(value):
    if isinstance(value, PrimeFieldElement | Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return parse_rational(value)


@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix of P in the semigroup basis; row i holds the coordinates of P(e_i)."""

    entries: tuple[tuple, ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(_normalize(v) for v in row) for row in self.entries)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise DimensionMismatchError(f"operator matrix must be square, got {[len(r) for r in rows]}")
        object.__setattr__(self, "entries", rows)

    @property
    def order(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: tuple[int, int]):
        """1-based (i, j) access."""
        i, j = index
        return self.entries[i - 1][j - 1]

    @classmethod
    def zero(cls, n: int, p: int | None = None) -> "OperatorMatrix":
        value = PrimeFieldElement(0, p) if p else Fraction(0)
        return cls(tuple(tuple(value for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_code(cls, code: int, n: int, p: int) -> "OperatorMatrix":
        """Decode a base-p integer, first entry most significant (row-major)."""
        digits = []
        for _ in range(n * n):
            code, digit = divmod(code, p)
            digits.append(digit)
        digits.reverse()
        return cls(tuple(tuple(PrimeFieldElement(digits[i * n + j], p) for j in range(n)) for i in range(n)))

    def code(self) -> int:
        """Inverse of from_code for matrices over F_p."""
        p = self.modulus
        if p is None:
            raise ValueError("only F_p matrices have integer codes")
        code = 0
        for row in self.entries:
            for value in row:
                code = code * p + value.value
        return code

    @property
    def modulus(self) -> int | None:
        first = self.entries[0][0]
        return first.p if isinstance(first, PrimeFieldElement) else None

    def reduce(self, p: int) -> "OperatorMatrix":
        return OperatorMatrix(tuple(tuple(reduce_rational(v, p) for v in row) for row in self.entries))

    def scale(self, s) -> "OperatorMatrix":
        return OperatorMatrix(tuple(tuple(v * s for v in row) for row in self.entries))

    def conjugate(self, perm: tuple[int, ...]) -> "OperatorMatrix":
        """Transport along e_x -> e_perm(x): entry (pi(i), pi(j)) receives c_ij."""
        n = self.order
        rows = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                rows[perm[i] - 1][perm[j] - 1] = self.entries[i][j]
        return OperatorMatrix(tuple(tuple(r) for r in rows))

    def is_zero(self) -> bool:
        return all(not v for row in self.entries for v in row)

    def to_lists(self) -> list[list[str]]:
        return [[str(v.value) if isinstance(v, PrimeFieldElement) else format_rational(v) for v in row] for row in self.entries]

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(row) for row in self.to_lists()) + "]"


@dataclass
class RboSystem:
    """The n^3 equations E[i,j,m] of the weight-lambda Rota-Baxter identity."""

    table: CayleyTable
    weight: Fraction
    ring: PolyRing = field(repr=False)
    equations: dict[EquationIndex, PolyElement] = field(repr=False)
    semigroup_id: str = ""

    @property
    def order(self) -> int:
        return self.table.order

    def equation(self, i: int, j: int, m: int) -> PolyElement:
        return self.equations[(i, j, m)]

    def __len__(self) -> int:
        return len(self.equations)

    def items(self) -> list[tuple[EquationIndex, PolyElement]]:
        return sorted(self.equations.items())


def generate_system(t: CayleyTable, weight: Fraction | int = 0, semigroup_id: str = "") -> RboSystem:
    """Build equation(i, j, m) = LHS - RHS for every basis pair and output coordinate.

    Args:
        t: Associative Cayley table.
        weight: lambda, an exact scalar; 0 for the classification.
        semigroup_id: Catalog id carried into exports.

    Returns:
        RboSystem with n^3 canonical polynomials over QQ.
    """
    t = as_table(t)
    if not check_associativity(t):
        raise NotAssociativeError(f"table {t.to_lists()} is not associative")
    weight = Fraction(weight)
    n = t.order
    r = structure_constants(t)
    R = make_ring(coeff_variables(n))
    gens = R.gens

    def c(i: int, j: int) -> PolyElement:
        return gens[(i - 1) * n + (j - 1)]

    lam = from_fraction(R, weight)
    indices = range(1, n + 1)
    equations: dict[EquationIndex, PolyElement] = {}
    for i in indices:
        for j in indices:
            for m in indices:
                lhs = R.zero
                rhs = R.zero
                for k in indices:
                    for ell in indices:
                        if r(k, ell, m):
                            lhs += c(i, k) * c(j, ell)
                        if r(k, j, ell):
                            rhs += c(i, k) * c(ell, m)
                        if r(i, k, ell):
                            rhs += c(j, k) * c(ell, m)
                if weight:
                    for ell in indices:
                        if r(i, j, ell):
                            rhs += lam * c(ell, m)
                equations[(i, j, m)] = lhs - rhs
    logger.debug(f"Generated {len(equations)} equations for {semigroup_id or t.to_lists()} (weight {weight})")
    return RboSystem(table=t, weight=weight, ring=R, equations=equations, semigroup_id=semigroup_id)


def _check_dimensions(t: CayleyTable, C: OperatorMatrix) -> None:
    if C.order != t.order:
        raise DimensionMismatchError(f"operator of order {C.order} on a semigroup of order {t.order}")


def _algebra_mul(t: CayleyTable, x: list, y: list, zero) -> list:
    z = [zero] * t.order
    for k, xk in enumerate(x):
        if not xk:
            continue
        for ell, yl in enumerate(y):
            if yl:
                z[t.entries[k][ell] - 1] = z[t.entries[k][ell] - 1] + xk * yl
    return z


def _apply(C: OperatorMatrix, x: list, zero) -> list:
    n = C.order
    out = [zero] * n
    for i, xi in enumerate(x):
        if xi:
            for j in range(n):
                out[j] = out[j] + xi * C.entries[i][j]
    return out


def rb_defect(t: CayleyTable, C: OperatorMatrix, weight: Fraction | int = 0) -> list[list[tuple]]:
    """Coordinates of P(e_i)P(e_j) - P(P(e_i)e_j + e_iP(e_j) + lambda e_ie_j), computed in k[S].

    Args:
        t: Cayley table.
        C: Operator matrix of matching order.
        weight: lambda.

    Returns:
        n x n nested list; entry (i-1, j-1) is the defect vector for (e_i, e_j).
    """
    t = as_table(t)
    _check_dimensions(t, C)
    n = t.order
    zero = C.entries[0][0] * 0
    lam = zero + weight
    basis = [[zero + (1 if k == i else 0) for k in range(n)] for i in range(n)]
    images = [list(C.entries[i]) for i in range(n)]

    defects = []
    for i in range(n):
        row = []
        for j in range(n):
            lhs = _algebra_mul(t, images[i], images[j], zero)
            inner_left = _algebra_mul(t, images[i], basis[j], zero)
            inner_right = _algebra_mul(t, basis[i], images[j], zero)
            product = _algebra_mul(t, basis[i], basis[j], zero)
            inner = [a + b + lam * d for a, b, d in zip(inner_left, inner_right, product)]
            rhs = _apply(C, inner, zero)
            row.append(tuple(a - b for a, b in zip(lhs, rhs)))
        defects.append(row)
    return defects


def is_rbo(t: CayleyTable, C: OperatorMatrix, weight: Fraction | int = 0) -> bool:
    """True iff every defect coordinate vanishes."""
    return all(not v for row in rb_defect(t, C, weight) for vector in row for v in vector)


def codes_to_array(codes, n: int, p: int) -> np.ndarray:
    """Decode base-p codes into an (N, n, n) array of F_p entries."""
    rest = np.array(codes, dtype=np.int64).reshape(-1)
    digits = np.empty((rest.size, n * n), dtype=np.int64)
    for k in range(n * n - 1, -1, -1):
        digits[:, k] = rest % p
        rest //= p
    return digits.reshape(-1, n, n)


def is_rbo_batch(t: CayleyTable, matrices: np.ndarray, p: int, weight: Fraction | int = 0) -> np.ndarray:
    """Vectorised `is_rbo` over F_p: the identity evaluated in k[S] for a stack of matrices.

    Args:
        t: Cayley table.
        matrices: (N, n, n) integer array, row i holding P(e_i).
        p: Prime modulus.
        weight: lambda, reduced into F_p.

    Returns:
        Boolean array of length N.
    """
    t = as_table(t)
    n = t.order
    C = np.asarray(matrices, dtype=np.int64) % p
    if C.ndim != 3 or C.shape[1:] != (n, n):
        raise DimensionMismatchError(f"expected (N, {n}, {n}) matrices, got shape {C.shape}")
    r = structure_constants(t).array.astype(np.int64)
    lam = reduce_rational(Fraction(weight), p).value
    basis = np.eye(n, dtype=np.int64)

    def mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("...k,...l,klm->...m", x, y, r) % p

    ok = np.ones(C.shape[0], dtype=bool)
    for i in range(n):
        for j in range(n):
            lhs = mul(C[:, i], C[:, j])
            inner = mul(C[:, i], basis[j]) + mul(basis[i], C[:, j]) + lam * mul(basis[i], basis[j])
            rhs = np.einsum("...l,...lm->...m", inner % p, C) % p
            ok &= (lhs == rhs).all(axis=-1)
    return ok


def evaluate_system(system: RboSystem, C: OperatorMatrix) -> dict[EquationIndex, object]:
    """Residual of every equation at C."""
    if C.order != system.order:
        raise DimensionMismatchError(f"operator of order {C.order} on a system of order {system.order}")
    n = C.order
    point = {VariableId.coeff(i, j): C[i, j] for i in range(1, n + 1) for j in range(1, n + 1)}
    values = {}
    for index, poly in system.items():
        value = evaluate(poly, point)
        if C.modulus is not None and not isinstance(value, PrimeFieldElement):
            value = reduce_rational(value, C.modulus)
        values[index] = value
    return values


def system_vanishes(system: RboSystem, C: OperatorMatrix) -> bool:
    return all(not v for v in evaluate_system(system, C).values())


def matrix_from_json(text: str | bytes, p: int | None = None) -> OperatorMatrix:
    """Parse {"n": 2, "c": [["1","-1"],["2","-2"]]}; reduce into F_p when p is given."""
    try:
        record = MatrixFile.model_validate_json(text)
    except ValidationError as e:
        raise BadInputError(f"Invalid operator matrix JSON: {e}") from e
    try:
        matrix = OperatorMatrix(tuple(tuple(parse_rational(v) for v in row) for row in record.c))
    except ValueError as e:
        raise BadInputError(f"Invalid matrix entry: {e}") from e
    return matrix.reduce(p) if p else matrix


def matrix_to_json(C: OperatorMatrix) -> str:
    return json.dumps({"n": C.order, "c": C.to_lists()})
