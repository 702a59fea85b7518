"""Exact multivariate polynomials and rational functions over sympy rings.

Polynomials are sympy `PolyElement`s of a `PolyRing` built in graded
lexicographic order with generators sorted Coeff(1,1) < ... < Coeff(n,n)
< params (alphabetical) < aux (alphabetical). A PolyElement is a dict of
monomial -> nonzero coefficient, so structural equality is mathematical
equality and the zero polynomial is the empty dict.

Auxiliary variables encode square roots: each aux s has one relation
s^2 = q with q in the params only, and reduction replaces s^2 by q.

Architecture boundary: arithmetic, substitution, evaluation, text/JSON
forms. No knowledge of semigroups or Rota-Baxter identities.
"""

import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import Symbol, fraction, together
from sympy.parsing.sympy_parser import parse_expr, standard_transformations
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement, PolyRing, ring

from src.algebra.field import PrimeFieldElement, reduce_rational
from src.errors import BadInputError, DivisionByZeroError, FieldMismatchError, UnboundVariableError

Polynomial = PolyElement

KIND_COEFF = "coeff"
KIND_PARAM = "param"
KIND_AUX = "aux"
_KIND_RANK = {KIND_COEFF: 0, KIND_PARAM: 1, KIND_AUX: 2}

_COEFF_NAME = re.compile(r"^c(\d)(\d)$|^c(\d+)_(\d+)$")
_IDENTIFIER = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")

POLY_OPS = ("add", "sub", "mul", "neg")


@dataclass(frozen=True)
class VariableId:
    """Coeff(i, j), Param(name) or Aux(name)."""

    kind: str
    i: int = 0
    j: int = 0
    name: str = ""

    def __post_init__(self) -> None:
        if self.kind not in _KIND_RANK:
            raise ValueError(f"Unknown variable kind: {self.kind}")
        if self.kind == KIND_COEFF:
            if self.i < 1 or self.j < 1:
                raise ValueError(f"Coeff indices are 1-based, got ({self.i}, {self.j})")
        elif not _IDENTIFIER.match(self.name) or not self.name.isascii() or _COEFF_NAME.match(self.name):
            raise ValueError(f"Invalid {self.kind} name: {self.name!r}")

    @classmethod
    def coeff(cls, i: int, j: int) -> "VariableId":
        return cls(KIND_COEFF, i=i, j=j)

    @classmethod
    def param(cls, name: str) -> "VariableId":
        return cls(KIND_PARAM, name=name)

    @classmethod
    def aux(cls, name: str) -> "VariableId":
        return cls(KIND_AUX, name=name)

    @property
    def symbol_name(self) -> str:
        if self.kind == KIND_COEFF:
            if self.i < 10 and self.j < 10:
                return f"c{self.i}{self.j}"
            return f"c{self.i}_{self.j}"
        return self.name

    def sort_key(self) -> tuple:
        return (_KIND_RANK[self.kind], self.i, self.j, self.name)

    def __lt__(self, other: "VariableId") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return self.symbol_name


def coeff_variables(n: int) -> list[VariableId]:
    return [VariableId.coeff(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def parse_variable(name: str, aux_names: Iterable[str] = ()) -> VariableId:
    """Recover a VariableId from its ring symbol name."""
    match = _COEFF_NAME.match(name)
    if match:
        i, j = (match.group(1), match.group(2)) if match.group(1) else (match.group(3), match.group(4))
        return VariableId.coeff(int(i), int(j))
    if name in set(aux_names):
        return VariableId.aux(name)
    return VariableId.param(name)


def make_ring(variables: Iterable[VariableId], domain=QQ) -> PolyRing:
    """PolyRing over `domain` in grlex order with the canonical generator order."""
    ordered = sorted(set(variables))
    names = [v.symbol_name for v in ordered]
    if len(set(names)) != len(names):
        raise ValueError(f"Duplicate variable names: {names}")
    return ring(names, domain, grlex)[0]


def ring_names(R: PolyRing) -> list[str]:
    return [str(s) for s in R.symbols]


def _name(key: "VariableId | str") -> str:
    return key.symbol_name if isinstance(key, VariableId) else str(key)


def to_fraction(c) -> Fraction:
    """Convert a QQ/ZZ domain element to a Fraction."""
    return Fraction(int(c.numerator), int(c.denominator))


def from_fraction(R: PolyRing, x: Fraction | int) -> PolyElement:
    x = Fraction(x)
    return R.ground_new(R.domain(x.numerator, x.denominator))


def poly_arith(op: str, f: PolyElement, g: PolyElement | None = None) -> PolyElement:
    """Ring operation on canonical polynomials.

    Args:
        op: One of add, sub, mul, neg.
        f: Left operand.
        g: Right operand; must live in the same ring.

    Returns:
        Canonical polynomial.
    """
    if op == "neg":
        return -f
    if g is None:
        raise ValueError(f"operation {op} needs two operands")
    if f.ring != g.ring:
        raise FieldMismatchError(f"{f.ring} vs {g.ring}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"Unknown polynomial operation: {op}")


def total_degree(f: PolyElement) -> int:
    """Total degree; -1 for the zero polynomial."""
    if not f:
        return -1
    return max(sum(monom) for monom in f.keys())


def variables_of(f: PolyElement) -> set[str]:
    names = ring_names(f.ring)
    return {names[k] for monom in f.keys() for k, e in enumerate(monom) if e}


@dataclass(frozen=True)
class AlgebraicRelation:
    """aux^2 = radicand, radicand free of Coeff and Aux variables."""

    aux: VariableId
    radicand: PolyElement

    def __post_init__(self) -> None:
        if self.aux.kind != KIND_AUX:
            raise ValueError(f"relation must bind an aux variable, got {self.aux}")


@dataclass(frozen=True)
class RationalFunction:
    """numerator / denominator, never auto-reduced."""

    num: PolyElement
    den: PolyElement

    def __post_init__(self) -> None:
        if not self.den:
            raise DivisionByZeroError("rational function with zero denominator")
        if self.num.ring != self.den.ring:
            raise FieldMismatchError("numerator and denominator from different rings")

    @classmethod
    def of(cls, f: PolyElement) -> "RationalFunction":
        return cls(f, f.ring.one)

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    def _check(self, other: "RationalFunction") -> None:
        if self.ring != other.ring:
            raise FieldMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        self._check(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __pow__(self, exponent: int) -> "RationalFunction":
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        return RationalFunction(self.num**exponent, self.den**exponent)

    def scale(self, c: Fraction | int) -> "RationalFunction":
        return RationalFunction(self.num * from_fraction(self.ring, c), self.den)

    def is_zero(self, relations: Iterable[AlgebraicRelation] = ()) -> bool:
        num, _ = clear_denominators(self)
        return not reduce_mod_relations(num, list(relations))

    def __str__(self) -> str:
        if self.den == self.ring.one:
            return format_polynomial(self.num)
        return f"({format_polynomial(self.num)})/({format_polynomial(self.den)})"


def clear_denominators(r: RationalFunction) -> tuple[PolyElement, PolyElement]:
    """(numerator, denominator) with r = 0 iff the numerator is zero."""
    return r.num, r.den


def substitute(
    f: PolyElement,
    bindings: Mapping["VariableId | str", RationalFunction],
    target_ring: PolyRing | None = None,
) -> RationalFunction:
    """Replace bound variables of f by rational functions.

    Args:
        f: Polynomial to rewrite.
        bindings: Variable -> replacement, all in one target ring.
        target_ring: Ring of the result; defaults to the bindings' ring, else f's ring.

    Returns:
        Rational function whose denominator is a product of binding denominators.
    """
    bound = {_name(k): v for k, v in bindings.items()}
    if target_ring is None:
        target_ring = next(iter(bound.values())).ring if bound else f.ring
    target_gens = dict(zip(ring_names(target_ring), target_ring.gens))
    source_names = ring_names(f.ring)

    images: dict[int, RationalFunction] = {}
    for k, name in enumerate(source_names):
        if not any(monom[k] for monom in f.keys()):
            continue
        if name in bound:
            if bound[name].ring != target_ring:
                raise FieldMismatchError(f"binding for {name} lives in another ring")
            images[k] = bound[name]
        elif _COEFF_NAME.match(name) or name not in target_gens:
            raise UnboundVariableError(f"No binding for {name}")
        else:
            images[k] = RationalFunction.of(target_gens[name])

    one = RationalFunction.of(target_ring.one)
    result = RationalFunction.of(target_ring.zero)
    for monom, coeff in f.terms():
        term = one.scale(to_fraction(coeff))
        for k, e in enumerate(monom):
            if e:
                term = term * images[k] ** e
        result = result + term
    return result


def reduce_mod_relations(f: PolyElement, relations: list[AlgebraicRelation]) -> PolyElement:
    """Replace aux^2 by its radicand until every aux appears with degree <= 1."""
    if not relations:
        return f
    R = f.ring
    names = ring_names(R)
    slots = []
    for rel in relations:
        aux_name = rel.aux.symbol_name
        if aux_name not in names:
            raise UnboundVariableError(f"aux {aux_name} is not a generator of {R}")
        if rel.radicand.ring != R:
            raise FieldMismatchError(f"radicand of {aux_name} lives in another ring")
        slots.append((names.index(aux_name), rel.radicand))
    if len({idx for idx, _ in slots}) != len(slots):
        raise ValueError("relations must bind distinct aux variables")

    result = R.zero
    for monom, coeff in f.items():
        reduced = list(monom)
        factor = R.one
        for idx, radicand in slots:
            e = monom[idx]
            if e >= 2:
                reduced[idx] = e % 2
                factor = factor * radicand ** (e // 2)
        result = result + R.from_dict({tuple(reduced): coeff}) * factor
    return result


def evaluate(f: PolyElement, point: Mapping["VariableId | str", object]):
    """Exact value of f at a point of Fractions, ints or PrimeFieldElements."""
    values = {_name(k): v for k, v in point.items()}
    names = ring_names(f.ring)
    moduli = {v.p for v in values.values() if isinstance(v, PrimeFieldElement)}
    if len(moduli) > 1:
        raise FieldMismatchError(f"point mixes moduli {sorted(moduli)}")
    total = PrimeFieldElement(0, moduli.pop()) if moduli else Fraction(0)

    for monom, coeff in f.items():
        term = to_fraction(coeff)
        if isinstance(total, PrimeFieldElement):
            term = reduce_rational(term, total.p)
        for k, e in enumerate(monom):
            if not e:
                continue
            if names[k] not in values:
                raise UnboundVariableError(f"No value for {names[k]}")
            term = term * values[names[k]] ** e
        total = total + term
    return total


def evaluate_modp(f: PolyElement, point: Mapping["VariableId | str", object], p: int) -> PrimeFieldElement:
    """evaluate() with every coordinate reduced into F_p first."""
    reduced = {k: v if isinstance(v, PrimeFieldElement) else reduce_rational(Fraction(v), p) for k, v in point.items()}
    if any(v.p != p for v in reduced.values()):
        raise FieldMismatchError(f"point is not over F_{p}")
    value = evaluate(f, reduced)
    return value if isinstance(value, PrimeFieldElement) else reduce_rational(value, p)


def evaluate_array(f: PolyElement, columns: Mapping[str, np.ndarray], p: int, size: int) -> np.ndarray:
    """Vectorised evaluation mod p over int64 columns of equal length."""
    names = ring_names(f.ring)
    out = np.zeros(size, dtype=np.int64)
    for monom, coeff in f.items():
        term = np.full(size, reduce_rational(to_fraction(coeff), p).value, dtype=np.int64)
        for k, e in enumerate(monom):
            if not e:
                continue
            if names[k] not in columns:
                raise UnboundVariableError(f"No column for {names[k]}")
            for _ in range(e):
                term = (term * columns[names[k]]) % p
        out = (out + term) % p
    return out


def _local_dict(R: PolyRing) -> dict[str, Symbol]:
    # Explicit symbols keep names such as E, I, S, N, Q from resolving to sympy constants
    return {name: Symbol(name) for name in ring_names(R)}


def _parse_expr(text: str, R: PolyRing):
    try:
        return parse_expr(text.replace("^", "**"), local_dict=_local_dict(R), transformations=standard_transformations)
    except (SyntaxError, TypeError, ValueError) as e:
        raise BadInputError(f"Cannot parse {text!r}: {e}") from e


def _from_expr(expr, R: PolyRing, text: str) -> PolyElement:
    try:
        return R.from_expr(expr)
    except (ValueError, CoercionFailed) as e:
        unknown = sorted(str(s) for s in expr.free_symbols if str(s) not in ring_names(R))
        if unknown:
            raise UnboundVariableError(f"Unknown variables {unknown} in {text!r}") from e
        raise BadInputError(f"{text!r} is not a polynomial over {R.domain}") from e


def parse_polynomial(text: str, R: PolyRing) -> PolyElement:
    """Parse "c11^2 + 2*c12*c21 - a*b" into R."""
    return _from_expr(_parse_expr(text, R), R, text)


def parse_rational_function(text: str, R: PolyRing) -> RationalFunction:
    """Parse an entry such as "a*c/F" or "-a^2/b" into numerator/denominator over R."""
    num, den = fraction(together(_parse_expr(text, R)))
    return RationalFunction(_from_expr(num, R, text), _from_expr(den, R, text))


def _monomial_text(monom: tuple[int, ...], names: list[str]) -> str:
    parts = []
    for k, e in enumerate(monom):
        if e == 1:
            parts.append(names[k])
        elif e > 1:
            parts.append(f"{names[k]}^{e}")
    return "*".join(parts)


def format_polynomial(f: PolyElement) -> str:
    """Readable text in ring order, e.g. "c11^2 + 2*c12*c21 - a*b"."""
    if not f:
        return "0"
    names = ring_names(f.ring)
    pieces = []
    for monom, coeff in f.terms():
        c = to_fraction(coeff)
        mono = _monomial_text(monom, names)
        magnitude = abs(c)
        if not mono:
            body = str(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{magnitude}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(pieces)


def polynomial_to_json(f: PolyElement) -> list[dict]:
    """Term list [{"coeff": "1/2", "powers": {"c11": 2}}, ...] in ring order."""
    names = ring_names(f.ring)
    terms = []
    for monom, coeff in f.terms():
        c = to_fraction(coeff)
        coeff_text = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
        terms.append({"coeff": coeff_text, "powers": {names[k]: e for k, e in enumerate(monom) if e}})
    return terms


def polynomial_from_json(terms: list[dict], R: PolyRing) -> PolyElement:
    names = ring_names(R)
    index = {name: k for k, name in enumerate(names)}
    result = R.zero
    for term in terms:
        monom = [0] * len(names)
        for name, e in term.get("powers", {}).items():
            if name not in index:
                raise UnboundVariableError(f"Unknown variable {name} in JSON term")
            monom[index[name]] = int(e)
        result = result + R.from_dict({tuple(monom): R.domain(1)}) * from_fraction(R, Fraction(term["coeff"]))
    return result
