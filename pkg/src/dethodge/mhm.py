"""
Weights and Tate twists on local cohomology with determinantal support.

A simple composition factor is recorded as a :class:`TwistedSimple`, meaning
IC^H_{Z_p}(k), pure of weight d_p - 2k. On square matrices the indecomposable
summands are recorded as :class:`TwistedQ`, meaning Q^H_r(k), in which the copy
of D_i has weight n^2 + n - i - 2k.

Twists are stored doubled (``twist2 = 2k``) so that every computation stays in
the integers; a theorem guarantees ``twist2`` is even, and an odd value raises
:class:`InternalInconsistency`.

The weight rule used throughout: a copy of D_r in H^j_{Z_q}(IC^H_{Z_p}) has
weight d_p + q - r + j, and a Q_r summand of H^j_{Z_q}(Q^H_p) underlies
Q^H_r((p - q - j)/2). Tate twists of the source carry through unchanged.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .errors import InternalInconsistency, InvalidInput
from .groth import lc_class, lc_class_Q, q_decompose
from .weights import MatrixShape

__all__ = [
    "TwistedSimple",
    "TwistedQ",
    "ModuleClass",
    "MHMClass",
    "IteratedClass",
    "weight_of",
    "lc_mhm",
    "lc_q_mhm",
    "local_cohomology",
    "iterate",
    "weight_graded",
]


def _half(twist2: int, what: str) -> int:
    if twist2 % 2:
        raise InternalInconsistency(f"half-integral Tate twist {twist2}/2 on {what}")
    return twist2 // 2


@dataclass(frozen=True, order=True)
class TwistedSimple:
    """IC^H_{Z_p}(k), stored as (p, 2k)."""

    p: int
    twist2: int = 0

    @classmethod
    def twisted(cls, p: int, k: int = 0) -> "TwistedSimple":
        return cls(p, 2 * k)

    @property
    def k(self) -> int:
        return _half(self.twist2, f"IC_Z{self.p}")

    def weight(self, shape: MatrixShape) -> int:
        return shape.dim(self.p) - self.twist2

    def retwist(self, delta2: int) -> "TwistedSimple":
        return TwistedSimple(self.p, self.twist2 + delta2)

    def __str__(self) -> str:
        return f"IC_Z{self.p}({_fmt_twist(self.twist2)})"


@dataclass(frozen=True, order=True)
class TwistedQ:
    """Q^H_r(k), stored as (r, 2k); square shapes only."""

    r: int
    twist2: int = 0

    @classmethod
    def twisted(cls, r: int, k: int = 0) -> "TwistedQ":
        return cls(r, 2 * k)

    @property
    def k(self) -> int:
        return _half(self.twist2, f"Q_{self.r}")

    def retwist(self, delta2: int) -> "TwistedQ":
        return TwistedQ(self.r, self.twist2 + delta2)

    def factor_weights(self, shape: MatrixShape) -> dict[int, int]:
        """Weight of the copy of D_i, i = 0..r."""
        n = shape.n
        return {i: n * n + n - i - self.twist2 for i in range(self.r + 1)}

    def expand(self, shape: MatrixShape) -> Counter:
        """Composition factors: Q_r(k) contains IC_{Z_i}((d_i - n^2 - n + i)/2 + k) for i <= r."""
        if not shape.is_square:
            raise InvalidInput("Q-modules only exist on square matrices")
        n = shape.n
        return Counter(
            TwistedSimple(i, self.twist2 + shape.dim(i) - n * n - n + i) for i in range(self.r + 1)
        )

    def __str__(self) -> str:
        return f"Q_{self.r}({_fmt_twist(self.twist2)})"


Source = Union[TwistedSimple, TwistedQ]


def _fmt_twist(twist2: int) -> str:
    return str(twist2 // 2) if twist2 % 2 == 0 else f"{twist2}/2"


def weight_of(ts: TwistedSimple, shape: MatrixShape) -> int:
    """Weight d_p - 2k of IC^H_{Z_p}(k)."""
    return ts.weight(shape)


@dataclass
class ModuleClass:
    """Semisimplified class of one mixed Hodge module.

    ``factors`` lists every composition factor with its twist. On square
    shapes ``qsummands`` lists the Q-summands; factors not covered by the
    expansion of ``qsummands`` are simple direct summands on their own.
    """

    factors: Counter = field(default_factory=Counter)
    qsummands: Counter = field(default_factory=Counter)

    def __post_init__(self):
        self.factors = +Counter(self.factors)
        self.qsummands = +Counter(self.qsummands)

    def is_zero(self) -> bool:
        return not self.factors and not self.qsummands

    def add(self, other: "ModuleClass", mult: int = 1) -> None:
        for ts, v in other.factors.items():
            self.factors[ts] += v * mult
        for tq, v in other.qsummands.items():
            self.qsummands[tq] += v * mult

    def loose_simples(self, shape: MatrixShape) -> Counter:
        """Factors that are direct summands by themselves (not inside a Q-summand)."""
        covered = Counter()
        for tq, v in self.qsummands.items():
            for ts, c in tq.expand(shape).items():
                covered[ts] += c * v
        rest = Counter(self.factors)
        rest.subtract(covered)
        if any(v < 0 for v in rest.values()):
            raise InternalInconsistency("Q-summands are not covered by the factor list")
        return +rest

    def weights(self, shape: MatrixShape) -> Counter:
        out = Counter()
        for ts, v in self.factors.items():
            out[ts.weight(shape)] += v
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, ModuleClass) and +self.factors == +other.factors
                and +self.qsummands == +other.qsummands)

    def __str__(self) -> str:
        if self.qsummands:
            return " + ".join(_terms(self.qsummands))
        return " + ".join(_terms(self.factors)) or "0"


def _terms(counter: Counter) -> list[str]:
    out = []
    for obj, v in sorted(counter.items(), key=lambda kv: (-_index(kv[0]), kv[0].twist2)):
        out.append(str(obj) if v == 1 else f"{v}*{obj}")
    return out


def _index(obj: Source) -> int:
    return obj.p if isinstance(obj, TwistedSimple) else obj.r


def _simples_json(counter: Counter) -> list[dict]:
    return [{"p": ts.p, "twist2": ts.twist2, "mult": v}
            for ts, v in sorted(counter.items(), key=lambda kv: (-kv[0].p, kv[0].twist2)) if v]


def _qs_json(counter: Counter) -> list[dict]:
    return [{"r": tq.r, "twist2": tq.twist2, "mult": v}
            for tq, v in sorted(counter.items(), key=lambda kv: (-kv[0].r, kv[0].twist2)) if v]


@dataclass
class MHMClass:
    """Per-degree classes of H^j of a mixed Hodge module complex."""

    shape: MatrixShape
    degrees: dict = field(default_factory=dict)

    def __post_init__(self):
        self.degrees = {int(j): mod for j, mod in sorted(self.degrees.items()) if not mod.is_zero()}

    def module(self, j: int) -> ModuleClass:
        return self.degrees.get(j, ModuleClass())

    def factor_counts(self) -> dict[int, dict[int, int]]:
        """Forget twists: degree -> {r: count}."""
        out = {}
        for j, mod in self.degrees.items():
            row: dict[int, int] = {}
            for ts, v in mod.factors.items():
                row[ts.p] = row.get(ts.p, 0) + v
            out[j] = dict(sorted(row.items()))
        return out

    def weights(self) -> list[int]:
        """All factor weights, degree by degree, higher support first within a degree."""
        out = []
        for mod in self.degrees.values():
            for ts, v in sorted(mod.factors.items(), key=lambda kv: (-kv[0].p, kv[0].twist2)):
                out.extend([ts.weight(self.shape)] * v)
        return out

    def to_json(self) -> dict:
        data = {
            "shape": [self.shape.m, self.shape.n],
            "degrees": {str(j): _simples_json(mod.factors) for j, mod in self.degrees.items()},
        }
        qdegrees = {str(j): _qs_json(mod.qsummands) for j, mod in self.degrees.items() if mod.qsummands}
        if self.shape.is_square and qdegrees:
            data["qdegrees"] = qdegrees
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> "MHMClass":
        shape = MatrixShape(*data["shape"])
        degrees: dict[int, ModuleClass] = {}
        for j, items in data.get("degrees", {}).items():
            mod = degrees.setdefault(int(j), ModuleClass())
            for e in items:
                mod.factors[TwistedSimple(e["p"], e["twist2"])] += e["mult"]
        for j, items in data.get("qdegrees", {}).items():
            mod = degrees.setdefault(int(j), ModuleClass())
            for e in items:
                mod.qsummands[TwistedQ(e["r"], e["twist2"])] += e["mult"]
        return cls(shape, degrees)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __eq__(self, other) -> bool:
        return isinstance(other, MHMClass) and self.shape == other.shape and self.degrees == other.degrees


def _check_source_range(shape: MatrixShape, idx: int, q: int) -> None:
    if not (0 <= idx <= shape.n and 0 <= q <= shape.n):
        raise InvalidInput(f"indices out of range for {shape}: module index {idx}, support {q}")


def lc_mhm(shape: MatrixShape, source: TwistedSimple, q: int) -> MHMClass:
    """H^j_{Z_q}(IC^H_{Z_p}(k)) for q < p, with weights and (square) Q-summands."""
    p = source.p
    table = lc_class(shape, p, q)
    dp = shape.dim(p)
    degrees = {}
    for j, row in table.entries.items():
        mod = ModuleClass()
        for r, a in row.items():
            twist2 = shape.dim(r) - dp + r - q - j
            if twist2 % 2:
                raise InternalInconsistency(
                    f"odd twist for D_{r} in H^{j}_Z{q}(IC_Z{p}) on {shape}")
            mod.factors[TwistedSimple(r, twist2 + source.twist2)] += a
        if shape.is_square:
            qtwist2 = shape.codim(p) + shape.n - q - j
            if qtwist2 % 2:
                raise InternalInconsistency(
                    f"odd Q-twist in H^{j}_Z{q}(IC_Z{p}) on {shape}")
            for r, b in q_decompose(row).items():
                mod.qsummands[TwistedQ(r, qtwist2 + source.twist2)] += b
        degrees[j] = mod
    return MHMClass(shape, degrees)


def lc_q_mhm(shape: MatrixShape, source: TwistedQ, q: int) -> MHMClass:
    """H^j_{Z_q}(Q^H_p(k)) on square matrices."""
    if not shape.is_square:
        raise InvalidInput("Q-modules only exist on square matrices")
    p = source.r
    _check_source_range(shape, p, q)
    if q >= p:
        return MHMClass(shape, {0: ModuleClass(source.expand(shape), Counter({source: 1}))})
    table = lc_class_Q(shape, p, q)
    degrees = {}
    for j, row in table.entries.items():
        qtwist2 = p - q - j
        if qtwist2 % 2:
            raise InternalInconsistency(f"odd Q-twist in H^{j}_Z{q}(Q_{p}) on {shape}")
        mod = ModuleClass()
        for r, b in q_decompose(row).items():
            tq = TwistedQ(r, qtwist2 + source.twist2)
            mod.qsummands[tq] += b
            for ts, c in tq.expand(shape).items():
                mod.factors[ts] += c * b
        degrees[j] = mod
    return MHMClass(shape, degrees)


def local_cohomology(shape: MatrixShape, source: Source, q: int) -> MHMClass:
    """H^*_{Z_q} of a twisted simple or twisted Q-module.

    When the support of the source already lies in Z_q the answer is the
    source itself in degree 0.
    """
    if isinstance(source, TwistedQ):
        return lc_q_mhm(shape, source, q)
    _check_source_range(shape, source.p, q)
    if source.p <= q:
        return MHMClass(shape, {0: ModuleClass(Counter({source: 1}))})
    return lc_mhm(shape, source, q)


@dataclass
class IteratedClass:
    """H^{j_t}_{Z_{q_t}} ... H^{j_1}_{Z_{q_1}}(source), keyed by (j_1, ..., j_t).

    ``chain`` lists the supports in the order the functors are applied, so
    ``chain=[2, 0]`` gives H^i_{Z_0} H^j_{Z_2} under the key (j, i).
    """

    shape: MatrixShape
    source: Source
    chain: tuple
    table: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        src = ({"kind": "ic", "p": self.source.p, "twist2": self.source.twist2}
               if isinstance(self.source, TwistedSimple)
               else {"kind": "q", "r": self.source.r, "twist2": self.source.twist2})
        entries = []
        for key, mod in sorted(self.table.items()):
            entry = {"degrees": list(key), "factors": _simples_json(mod.factors)}
            if self.shape.is_square:
                entry["qsummands"] = _qs_json(mod.qsummands)
            entries.append(entry)
        return {"shape": [self.shape.m, self.shape.n], "source": src,
                "chain": list(self.chain), "entries": entries}

    @classmethod
    def from_json(cls, data: Mapping) -> "IteratedClass":
        shape = MatrixShape(*data["shape"])
        src = data["source"]
        source = (TwistedSimple(src["p"], src["twist2"]) if src["kind"] == "ic"
                  else TwistedQ(src["r"], src["twist2"]))
        table = {}
        for e in data["entries"]:
            mod = ModuleClass()
            for f in e["factors"]:
                mod.factors[TwistedSimple(f["p"], f["twist2"])] += f["mult"]
            for s in e.get("qsummands", []):
                mod.qsummands[TwistedQ(s["r"], s["twist2"])] += s["mult"]
            table[tuple(e["degrees"])] = mod
        return cls(shape, source, tuple(data["chain"]), table)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __eq__(self, other) -> bool:
        return (isinstance(other, IteratedClass) and self.shape == other.shape
                and self.source == other.source and tuple(self.chain) == tuple(other.chain)
                and self.table == other.table)


def _pieces(shape: MatrixShape, mod: ModuleClass):
    """Direct summands of a module class, with multiplicity."""
    if shape.is_square:
        yield from mod.qsummands.items()
        yield from mod.loose_simples(shape).items()
    else:
        yield from mod.factors.items()


def iterate(shape: MatrixShape, source: Source, chain: Sequence[int]) -> IteratedClass:
    """Apply H^*_{Z_{q_1}}, then H^*_{Z_{q_2}}, ... to ``source``.

    Off the square case every intermediate module is semisimple and each
    factor is pushed through separately; on square matrices the indecomposable
    Q-summands are pushed through instead.
    """
    chain = tuple(int(q) for q in chain)
    if not chain:
        raise InvalidInput("empty support chain")
    if isinstance(source, TwistedQ) and not shape.is_square:
        raise InvalidInput("Q-modules only exist on square matrices")
    start = ModuleClass(Counter({source: 1}) if isinstance(source, TwistedSimple) else source.expand(shape),
                        Counter({source: 1}) if isinstance(source, TwistedQ) else Counter())
    current = {(): start}
    for q in chain:
        nxt: dict[tuple, ModuleClass] = {}
        for key, mod in current.items():
            for piece, mult in _pieces(shape, mod):
                for j, out in local_cohomology(shape, piece, q).degrees.items():
                    nxt.setdefault(key + (j,), ModuleClass()).add(out, mult)
        current = {k: v for k, v in nxt.items() if not v.is_zero()}
    return IteratedClass(shape, source, chain, dict(sorted(current.items())))


def weight_graded(mhm: MHMClass) -> dict[int, dict[int, Counter]]:
    """Group factors by weight: weight -> degree -> multiset of TwistedSimple."""
    out: dict[int, dict[int, Counter]] = {}
    for j, mod in mhm.degrees.items():
        for ts, v in mod.factors.items():
            out.setdefault(ts.weight(mhm.shape), {}).setdefault(j, Counter())[ts] += v
    return dict(sorted(out.items()))
