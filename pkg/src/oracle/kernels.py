"""Numba kernel for the exhaustive F_p search.

A system is compiled to flat term arrays: equation e owns terms
eq_start[e]..eq_start[e+1]-1, each coef * x[var_a] * x[var_b] with
var_b = -1 for linear terms. Candidates are visited in base-p odometer
order (last entry fastest), so each block's output is sorted.

Architecture boundary: @njit functions take numpy arrays only; compile_system
and scan_block are the Python-side wrappers.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numba
import numpy as np
from sympy.polys.rings import PolyElement

from src.algebra.field import reduce_rational
from src.algebra.poly import to_fraction
from src.rbsystem.generator import EquationIndex, RboSystem


@dataclass(frozen=True)
class CompiledSystem:
    """Term arrays of a system reduced mod p."""

    n: int
    p: int
    eq_start: np.ndarray
    coef: np.ndarray
    var_a: np.ndarray
    var_b: np.ndarray

    @property
    def equation_count(self) -> int:
        return len(self.eq_start) - 1


def _terms(poly: PolyElement, p: int) -> list[tuple[int, int, int]]:
    terms = []
    for monom, coeff in poly.terms():
        c = reduce_rational(to_fraction(coeff), p).value
        if not c:
            continue
        factors = [k for k, e in enumerate(monom) for _ in range(e)]
        if len(factors) == 1:
            terms.append((c, factors[0], -1))
        elif len(factors) == 2:
            terms.append((c, factors[0], factors[1]))
        else:
            raise ValueError(f"kernel handles degree 1 and 2 terms only, got degree {len(factors)}")
    return terms


def compile_system(system: RboSystem, p: int, order: Sequence[EquationIndex] | None = None) -> CompiledSystem:
    """Flatten the equations in the given order, dropping those that vanish mod p."""
    indices = list(order) if order is not None else [index for index, _ in system.items()]
    starts = [0]
    coef, var_a, var_b = [], [], []
    for index in indices:
        terms = _terms(system.equation(*index), p)
        if not terms:
            continue
        for c, a, b in terms:
            coef.append(c)
            var_a.append(a)
            var_b.append(b)
        starts.append(len(coef))
    return CompiledSystem(
        n=system.order,
        p=p,
        eq_start=np.array(starts, dtype=np.int64),
        coef=np.array(coef, dtype=np.int64),
        var_a=np.array(var_a, dtype=np.int64),
        var_b=np.array(var_b, dtype=np.int64),
    )


@numba.njit(cache=True)
def _scan(prefix, n2, p, eq_start, coef, var_a, var_b):
    digits = np.zeros(n2, dtype=np.int64)
    fixed = prefix.shape[0]
    for k in range(fixed):
        digits[k] = prefix[k]
    total = 1
    for _ in range(n2 - fixed):
        total *= p
    n_eq = eq_start.shape[0] - 1

    out = np.empty(64, dtype=np.int64)
    count = 0
    for _ in range(total):
        ok = True
        for e in range(n_eq):
            acc = 0
            for t in range(eq_start[e], eq_start[e + 1]):
                if var_b[t] < 0:
                    acc += coef[t] * digits[var_a[t]]
                else:
                    acc += coef[t] * digits[var_a[t]] * digits[var_b[t]]
            if acc % p != 0:
                ok = False
                break
        if ok:
            code = 0
            for k in range(n2):
                code = code * p + digits[k]
            if count == out.shape[0]:
                grown = np.empty(2 * count, dtype=np.int64)
                grown[:count] = out[:count]
                out = grown
            out[count] = code
            count += 1
        k = n2 - 1
        while k >= fixed:
            digits[k] += 1
            if digits[k] < p:
                break
            digits[k] = 0
            k -= 1
    return out[:count]


def scan_block(compiled: CompiledSystem, prefix: Sequence[int]) -> np.ndarray:
    """Codes of all solutions whose leading entries equal prefix."""
    return _scan(
        np.asarray(prefix, dtype=np.int64),
        compiled.n * compiled.n,
        compiled.p,
        compiled.eq_start,
        compiled.coef,
        compiled.var_a,
        compiled.var_b,
    )
