"""
Grothendieck-group bookkeeping for local cohomology with determinantal support.

A class in the Grothendieck group of GL-equivariant holonomic D-modules on
C^{m x n} is a nonnegative combination of the simples D_0, ..., D_n. Local
cohomology H^j_{Z_q}(D_p) is packaged as a generating function in t whose
coefficients are such classes, and each coefficient is a product of two
Gaussian binomials in t^2 times a monomial.

On square matrices every such module is a direct sum of the indecomposables
Q_0, ..., Q_n, where Q_r has composition factors D_0, ..., D_r once each. The
Q-multiplicities are recovered from factor counts by differencing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import InternalInconsistency, InvalidInput, NotInAddQ
from .weights import MatrixShape

__all__ = [
    "IntPoly",
    "gauss_binom",
    "subst_t2",
    "FactorTable",
    "QTable",
    "lc_class",
    "parity_check",
    "lc_class_Q",
    "q_decompose",
    "q_table",
]


class IntPoly:
    """Polynomial in t with integer coefficients, stored sparsely."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[int] | None = None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, Mapping):
            coeffs = dict(enumerate(coeffs))
        c = {}
        for e, v in coeffs.items():
            e, v = int(e), int(v)
            if e < 0:
                raise InvalidInput(f"negative exponent {e}")
            if v:
                c[e] = c.get(e, 0) + v
                if c[e] == 0:
                    del c[e]
        self._c = c

    @classmethod
    def monomial(cls, e: int, coeff: int = 1) -> "IntPoly":
        return cls({e: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(sorted(self._c.items()))

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def degree(self) -> int:
        """Top exponent; -1 for the zero polynomial."""
        return max(self._c, default=-1)

    def low_degree(self) -> int:
        return min(self._c, default=-1)

    def is_zero(self) -> bool:
        return not self._c

    def items(self):
        return sorted(self._c.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly({0: other})
        return isinstance(other, IntPoly) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        out = dict(self._c)
        for e, v in other._c.items():
            out[e] = out.get(e, 0) + v
        return IntPoly(out)

    def __neg__(self) -> "IntPoly":
        return IntPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-other)

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return IntPoly({e: v * other for e, v in self._c.items()})
        out: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return IntPoly(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "IntPoly":
        """Multiply by t^k."""
        return IntPoly({e + k: v for e, v in self._c.items()})

    def divmod(self, divisor: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Long division over Z; the divisor's leading coefficient must divide every step."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        dd = divisor.degree()
        lead = divisor[dd]
        rem = dict(self._c)
        quo: dict[int, int] = {}
        while rem and max(rem) >= dd:
            top = max(rem)
            c, r = divmod(rem[top], lead)
            if r:
                raise InvalidInput("leading coefficient does not divide; not a Z[t] division")
            quo[top - dd] = c
            for e, v in divisor._c.items():
                k = e + top - dd
                rem[k] = rem.get(k, 0) - c * v
                if rem[k] == 0:
                    del rem[k]
        return IntPoly(quo), IntPoly(rem)

    def __call__(self, t):
        return sum(v * t**e for e, v in self._c.items())

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for e, v in sorted(self._c.items()):
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if mono and v == 1:
                terms.append(mono)
            elif mono and v == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{v}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")


ONE = IntPoly({0: 1})
ZERO = IntPoly()


@lru_cache(maxsize=None)
def gauss_binom(a: int, b: int) -> IntPoly:
    """Gaussian binomial coefficient [a choose b] in t.

    Zero when b < 0 or a < b. Built as the running quotient
    prod_{i<k} (1 - t^{a-i}) / prod_{i<=k} (1 - t^i), which is itself a
    Gaussian binomial (hence a polynomial) after every step; any remainder is a bug.
    """
    if a < 0:
        raise InvalidInput(f"gauss_binom needs a >= 0, got {a}")
    if b < 0 or a < b:
        return ZERO
    b = min(b, a - b)
    acc = ONE
    for i in range(b):
        acc = acc * IntPoly({0: 1, a - i: -1})
        acc, rem = acc.divmod(IntPoly({0: 1, i + 1: -1}))
        if not rem.is_zero():
            raise InternalInconsistency(f"inexact division building [{a} choose {b}]_t")
    return acc


def subst_t2(poly: IntPoly) -> IntPoly:
    """Substitute t -> t^2."""
    return IntPoly({2 * e: v for e, v in poly.items()})


@dataclass(frozen=True)
class FactorTable:
    """Composition-factor counts a_r of H^j_{Z_q}(M) for each degree j.

    ``entries[j][r]`` is the multiplicity of D_r; zero counts and empty degrees
    are not stored.
    """

    shape: MatrixShape
    p: int
    q: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for j, row in self.entries.items():
            row = {int(r): int(v) for r, v in row.items() if v}
            for r, v in row.items():
                if v < 0:
                    raise InternalInconsistency(f"negative multiplicity {v} of D_{r} in degree {j}")
                if r > self.q:
                    raise InternalInconsistency(f"D_{r} in degree {j} exceeds support index q={self.q}")
            if row:
                clean[int(j)] = dict(sorted(row.items()))
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def degrees(self) -> list[int]:
        return list(self.entries)

    def factors(self, j: int) -> dict[int, int]:
        return dict(self.entries.get(j, {}))

    def total(self) -> dict[int, int]:
        """Factor counts summed over all degrees."""
        out: dict[int, int] = {}
        for row in self.entries.values():
            for r, v in row.items():
                out[r] = out.get(r, 0) + v
        return dict(sorted(out.items()))

    def rows(self) -> list[tuple[int, int, int]]:
        return [(j, r, v) for j, row in self.entries.items() for r, v in sorted(row.items(), reverse=True)]

    _json_key = "degrees"

    def to_json(self) -> dict:
        return {
            "shape": [self.shape.m, self.shape.n],
            "p": self.p,
            "q": self.q,
            self._json_key: {str(j): {str(r): v for r, v in row.items()}
                             for j, row in self.entries.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping):
        entries = {int(j): {int(r): int(v) for r, v in row.items()}
                   for j, row in data[cls._json_key].items()}
        return cls(MatrixShape(*data["shape"]), int(data["p"]), int(data["q"]), entries)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class QTable(FactorTable):
    """Q-summand counts b_r per degree (square shapes only)."""

    _json_key = "b"

    def __post_init__(self):
        if not self.shape.is_square:
            raise InvalidInput("Q-summand tables only exist for square shapes")
        super().__post_init__()


def _check_pq(shape: MatrixShape, p: int, q: int) -> None:
    if not (0 <= q < p <= shape.n):
        raise InvalidInput(f"need 0 <= q < p <= n, got p={p}, q={q}, n={shape.n}")


def lc_generating_function(shape: MatrixShape, p: int, q: int, r: int) -> IntPoly:
    """Coefficient series of [D_r] in sum_j [H^j_{Z_q}(D_p)] t^j."""
    _check_pq(shape, p, q)
    m, n = shape.m, shape.n
    if not 0 <= r <= q:
        return ZERO
    lead = (p - q) ** 2 + (p - r) * (m - n)
    return (subst_t2(gauss_binom(n - r, p - r)) * subst_t2(gauss_binom(p - r - 1, q - r))).shift(lead)


def lc_class(shape: MatrixShape, p: int, q: int) -> FactorTable:
    """Composition factors of H^j_{Z_q}(D_p) for every degree j."""
    _check_pq(shape, p, q)
    entries: dict[int, dict[int, int]] = {}
    for r in range(q + 1):
        for j, a in lc_generating_function(shape, p, q, r).items():
            entries.setdefault(j, {})[r] = a
    return FactorTable(shape, p, q, entries)


def parity_check(shape: MatrixShape, p: int, q: int) -> bool:
    """D_0 only occurs in degrees j congruent to (p - q)^2 + p(m - n) mod 2."""
    table = lc_class(shape, p, q)
    target = ((p - q) ** 2 + p * (shape.m - shape.n)) % 2
    return all(j % 2 == target for j, row in table.entries.items() if row.get(0, 0) > 0)


def lc_class_Q(shape: MatrixShape, p: int, q: int) -> FactorTable:
    """Composition factors of H^j_{Z_q}(Q_p) on square matrices.

    For q >= p the support of Q_p lies in Z_q, so H^0 is Q_p itself. Otherwise
    the long exact sequence for 0 -> D_p -> Q_p -> Q_{p-1} -> 0 breaks into
    short exact sequences, giving
    [H^j(Q_p)] = [H^j(D_p)] - [H^{j-1}(Q_{p-1})].
    """
    if not shape.is_square:
        raise InvalidInput("Q_p only exists for square shapes")
    if not (0 <= q <= shape.n and 0 <= p <= shape.n):
        raise InvalidInput(f"need 0 <= q, p <= n, got p={p}, q={q}")
    return _lc_class_Q(shape, p, q)


@lru_cache(maxsize=None)
def _lc_class_Q(shape: MatrixShape, p: int, q: int) -> FactorTable:
    if q >= p:
        return FactorTable(shape, p, q, {0: {r: 1 for r in range(p + 1)}})
    below = _lc_class_Q(shape, p - 1, q)
    direct = lc_class(shape, p, q)
    entries: dict[int, dict[int, int]] = {}
    for j in set(direct.entries) | {j + 1 for j in below.entries}:
        row = dict(direct.factors(j))
        for r, v in below.factors(j - 1).items():
            row[r] = row.get(r, 0) - v
        bad = {r: v for r, v in row.items() if v < 0}
        if bad:
            raise InternalInconsistency(
                f"H^{j}_Z{q}(Q_{p}) would have negative factor counts {bad} on {shape}")
        if any(row.values()):
            entries[j] = row
    return FactorTable(shape, p, q, entries)


def q_decompose(factors: Mapping[int, int]) -> dict[int, int]:
    """Q-summand multiplicities b_r = a_r - a_{r+1} from factor counts a_r.

    Q_r contributes one each of D_0..D_r, so a module in add(Q) has
    a_r = sum_{i >= r} b_i. Zero multiplicities are dropped.
    """
    a = {int(r): int(v) for r, v in factors.items() if v}
    if not a:
        return {}
    if min(a) < 0:
        raise InvalidInput(f"negative factor index in {a}")
    top = max(a)
    b = {}
    for r in range(top + 1):
        br = a.get(r, 0) - a.get(r + 1, 0)
        if br < 0:
            raise NotInAddQ(f"factor counts {dict(sorted(a.items()))} are not a sum of Q_r classes "
                            f"(b_{r} = {br})")
        if br:
            b[r] = br
    return b


def q_table(table: FactorTable) -> QTable:
    """Apply q_decompose degree by degree."""
    if not table.shape.is_square:
        raise InvalidInput("Q-summand tables only exist for square shapes")
    return QTable(table.shape, table.p, table.q,
                  {j: q_decompose(row) for j, row in table.entries.items()})
