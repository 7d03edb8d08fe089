"""
The Hodge filtration on local cohomology, expressed through dominant weights.

The k-th piece of the Hodge filtration on IC^H_{Z_r}(t) has dominant weights
D^r_{k - c_r - t}. Summing over the composition factors of a module, with the
twists assigned by :mod:`dethodge.mhm`, gives the GL-structure of every
filtration piece of H^j_{Z_q}(IC^H_{Z_p}):

    W(F_k H^j) = disjoint union over r of (D^r_{k - (c_r + c_p + r - q - j)/2}) ^ a_r.

On square matrices the same data is packaged through the multisets

    Q^p_k = W(F_k Q^H_p) = disjoint union over r <= p of D^r_{k - C(n - r, 2)},

and F_k(Q^H_p) is a quotient of a twisted Hodge ideal I_k(Z) of the
determinant hypersurface by an ideal generated by powers of minors.

Every predicate here accepts one weight or a stacked ``(N, n)`` array.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Union

import numpy as np

from .errors import InternalInconsistency, InvalidInput
from .groth import lc_class
from .mhm import ModuleClass, TwistedQ, TwistedSimple, local_cohomology
from .weights import (Box, MatrixShape, WeightMultiset, _unwrap, _weights_array,
                      dominant_weights, map_blocks, rep_dim, w_index)

__all__ = [
    "FiltrationQuery",
    "IdentityReport",
    "hodge_multiplicity",
    "hodge_member",
    "hodge_filtration",
    "filtration_multiset",
    "start_level",
    "generation_level",
    "q_filtration_member",
    "rect_ideal_member",
    "hodge_ideal_member",
    "qpideal_identity_check",
    "dsub_member",
    "IdealSpec",
    "filtration_dim",
    "symbolic_power_member",
    "hodge_ideal_symbolic_member",
]


def _tail_sums(arr: np.ndarray, r: np.ndarray) -> np.ndarray:
    """lambda_{r+1} + ... + lambda_n for a per-row index r (r = n gives 0)."""
    n = arr.shape[1]
    cums = np.concatenate([np.zeros((len(arr), 1), dtype=np.int64), np.cumsum(arr[:, ::-1], axis=1)], axis=1)
    return cums[np.arange(len(arr)), n - np.clip(r, 0, n)]


def _start_offset(shape: MatrixShape, p: int, q: int, j: int, r: int) -> int:
    num = shape.codim(r) + shape.codim(p) + r - q - j
    if num % 2:
        raise InternalInconsistency(f"odd filtration offset for D_{r} in H^{j}_Z{q}(IC_Z{p}) on {shape}")
    return num // 2


def hodge_multiplicity(lam, shape: MatrixShape, p: int, q: int, j: int, k: int):
    """Multiplicity of lambda in F_k H^j_{Z_q}(IC^H_{Z_p}), from the closed formula."""
    arr, single = _weights_array(lam, shape.n)
    row = lc_class(shape, p, q).factors(j)
    idx = w_index(arr, shape)
    tails = _tail_sums(arr, idx)
    out = np.zeros(len(arr), dtype=np.int64)
    for r, a in row.items():
        d = k - _start_offset(shape, p, q, j, r)
        out += np.where((idx == r) & (tails >= -d - shape.codim(r)), a, 0)
    return int(out[0]) if single else out


def hodge_member(lam, shape: MatrixShape, p: int, q: int, j: int, k: int):
    """Does lambda occur in F_k H^j_{Z_q}(IC^H_{Z_p})?"""
    return hodge_multiplicity(lam, shape, p, q, j, k) > 0


def _collect(n: int, box: Box, mult_fn, workers: int | None) -> WeightMultiset:
    def scan(block: np.ndarray) -> np.ndarray:
        mult = mult_fn(block)
        return np.hstack([block, mult[:, None]])[mult > 0]

    hits = map_blocks(n, box, scan, workers)
    return WeightMultiset.from_array(box, hits[:, :n], hits[:, n])


def hodge_filtration(shape: MatrixShape, p: int, q: int, j: int, k: int, box: Box,
                     workers: int | None = None) -> WeightMultiset:
    """W(F_k H^j_{Z_q}(IC^H_{Z_p})) restricted to ``box``."""
    return _collect(shape.n, box, lambda w: hodge_multiplicity(w, shape, p, q, j, k), workers)


def filtration_multiset(shape: MatrixShape, module: ModuleClass, level: int, box: Box,
                        workers: int | None = None) -> WeightMultiset:
    """W(F_level M) for any module class, summing D^r_{level - c_r - t} over factors IC_{Z_r}(t)."""
    def mult_fn(weights: np.ndarray) -> np.ndarray:
        idx = w_index(weights, shape)
        tails = _tail_sums(weights, idx)
        mult = np.zeros(len(weights), dtype=np.int64)
        for ts, v in module.factors.items():
            d = level - shape.codim(ts.p) - ts.k
            mult += np.where((idx == ts.p) & (tails >= -d - shape.codim(ts.p)), v, 0)
        return mult

    return _collect(shape.n, box, mult_fn, workers)


def start_level(shape: MatrixShape, p: int, q: int, j: int, r: int) -> int | None:
    """First nonzero filtration level on the copies of D_r in H^j_{Z_q}(IC^H_{Z_p})."""
    if lc_class(shape, p, q).factors(j).get(r, 0) == 0:
        return None
    return _start_offset(shape, p, q, j, r)


def generation_level(shape: MatrixShape, p: int, q: int, j: int) -> int | None:
    """Generation level of the Hodge filtration on H^j_{Z_q}(IC^H_{Z_p}); None if the module is 0."""
    row = lc_class(shape, p, q).factors(j)
    if not row:
        return None
    return _start_offset(shape, p, q, j, min(row))


def _square(n: int) -> MatrixShape:
    return MatrixShape(n, n)


def q_filtration_member(lam, n: int, p: int, k: int):
    """Membership in Q^p_k = W(F_k Q^H_p)."""
    if not 0 <= p <= n:
        raise InvalidInput(f"p={p} outside 0..{n}")
    shape = _square(n)
    arr, single = _weights_array(lam, n)
    idx = w_index(arr, shape)
    tails = _tail_sums(arr, idx)
    r = np.clip(idx, 0, n)
    shifts = np.array([comb(n - i, 2) for i in range(n + 1)], dtype=np.int64)
    codims = np.array([(n - i) ** 2 for i in range(n + 1)], dtype=np.int64)
    mask = (idx >= 0) & (idx <= p) & (tails >= -(k - shifts[r]) - codims[r])
    return _unwrap(mask, single)


def rect_ideal_member(lam, n: int, a: int, b: int):
    """Membership in the ideal I_{a x b} generated by b-th powers of a x a minors.

    I_{a x b} = 0 for a > n and = S for b < 0 (or a = 0).
    """
    arr, single = _weights_array(lam, n)
    if a > n:
        mask = np.zeros(len(arr), dtype=bool)
    elif b < 0 or a <= 0:
        mask = arr[:, -1] >= 0
    else:
        mask = (arr[:, a - 1] >= b) & (arr[:, -1] >= 0)
    return _unwrap(mask, single)


def hodge_ideal_member(lam, n: int, k: int):
    """Membership in the Hodge ideal I_k(Z) of the n x n determinant.

    Defined by F_k(Q^H_n) = I_k(Z) (x) O((k+1)Z): lambda is in I_k(Z) iff
    lambda - ((k+1)^n) is in Q^n_k.
    """
    if k < 0:
        raise InvalidInput(f"Hodge ideals are indexed by k >= 0, got {k}")
    arr, single = _weights_array(lam, n)
    return _unwrap(q_filtration_member(arr - (k + 1), n, n, k), single)


@dataclass
class IdentityReport:
    """Outcome of a box-relative set identity check."""

    ok: bool
    box: Box
    params: dict
    counterexample: dict | None = None
    checked: int = 0

    def to_json(self) -> dict:
        return {"ok": self.ok, "counterexample": self.counterexample,
                "box": self.box.to_dict(), "params": self.params}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __bool__(self) -> bool:
        return self.ok


def _first_mismatch(weights: np.ndarray, lhs: np.ndarray, rhs: np.ndarray) -> dict | None:
    bad = np.flatnonzero(lhs != rhs)
    if len(bad) == 0:
        return None
    i = int(bad[0])
    return {"lambda": weights[i].tolist(), "lhs": bool(lhs[i]), "rhs": bool(rhs[i])}


def qpideal_identity_check(n: int, p: int, k: int, box: Box) -> IdentityReport:
    """Check F_k(Q^H_p) = I_k(Z) / (I_{(p+1) x (k-(n-p)+2)} cap I_k(Z)), twisted by (k+1)Z.

    Three identities are compared weight by weight over the box: the quotient
    description above, F_k of the submodule generated by det^{p-n+1} as
    (I_{(p+1) x (k-(n-p)+2)} cap I_k(Z)) twisted by (k+1)Z, and that
    submodule's weights as those with lambda_{p+1} >= p - n + 1.
    """
    if not 0 <= p <= n or k < 0:
        raise InvalidInput(f"need 0 <= p <= n and k >= 0, got n={n}, p={p}, k={k}")
    weights = dominant_weights(n, box)
    params = {"n": n, "p": p, "k": k}

    lhs = q_filtration_member(weights, n, p, k)
    shifted = weights + (k + 1)
    fk = hodge_ideal_member(shifted, n, k)
    rect = rect_ideal_member(shifted, n, p + 1, k - (n - p) + 2)
    checks = [
        ("quotient", lhs, fk & ~rect),
        # F_k of the submodule generated by det^{p-n+1}
        ("submodule filtration", q_filtration_member(weights, n, n, k) & dsub_member(weights, n, p), fk & rect),
        ("submodule weights", w_index(weights, _square(n)) > p, dsub_member(weights, n, p)),
    ]
    bad = None
    for name, left, right in checks:
        bad = _first_mismatch(weights, left, right)
        if bad is not None:
            bad["identity"] = name
            break
    return IdentityReport(bad is None, box, params, bad, len(weights))


def dsub_member(lam, n: int, p: int):
    """Weights of the D-submodule of S_det generated by det^{p-n+1}: lambda_{p+1} >= p - n + 1.

    For p = n the submodule is zero, matching Q_n = S_det.
    """
    arr, single = _weights_array(lam, n)
    if p >= n:
        mask = np.zeros(len(arr), dtype=bool)
    else:
        mask = arr[:, p] >= p - n + 1
    return _unwrap(mask, single)


_IDEAL_ARITY = {"rect": 2, "hodge": 1, "dsub": 1, "fkq": 2, "fksub": 2}


@dataclass(frozen=True)
class IdealSpec:
    """A weight-described ideal or filtration piece on n x n matrices.

    ``rect`` (a, b) and ``hodge`` (k) are ideals of S, with weights taken as
    they sit in S. ``dsub`` (p), ``fkq`` (p, k) = F_k(Q^H_p) and ``fksub``
    (p, k) = F_k of the submodule generated by det^{p-n+1} are described in
    the coordinates of the localization S_det.
    """

    n: int
    kind: str
    args: tuple

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInput(f"matrix size must be positive, got {self.n}")
        if self.kind not in _IDEAL_ARITY:
            raise InvalidInput(f"unknown ideal kind {self.kind!r}; expected one of {sorted(_IDEAL_ARITY)}")
        if len(self.args) != _IDEAL_ARITY[self.kind]:
            raise InvalidInput(f"{self.kind} takes {_IDEAL_ARITY[self.kind]} parameter(s), got {len(self.args)}")
        if self.kind in ("dsub", "fkq", "fksub") and not 0 <= self.args[0] <= self.n:
            raise InvalidInput(f"p={self.args[0]} outside 0..{self.n}")
        if self.kind in ("hodge", "fksub") and self.args[-1] < 0:
            raise InvalidInput(f"Hodge ideals are indexed by k >= 0, got {self.args[-1]}")

    def member(self, lam):
        n, a = self.n, self.args
        if self.kind == "rect":
            return rect_ideal_member(lam, n, a[0], a[1])
        if self.kind == "hodge":
            return hodge_ideal_member(lam, n, a[0])
        if self.kind == "dsub":
            return dsub_member(lam, n, a[0])
        if self.kind == "fkq":
            return q_filtration_member(lam, n, a[0], a[1])
        p, k = a
        arr, single = _weights_array(lam, n)
        return _unwrap(q_filtration_member(arr, n, n, k) & dsub_member(arr, n, p), single)

    def __str__(self) -> str:
        return ":".join([self.kind, *map(str, self.args)])


@dataclass
class FiltrationQuery:
    shape: MatrixShape
    source: Union[TwistedSimple, TwistedQ]
    q: int
    j: int
    k: int
    box: Box


def filtration_dim(query: FiltrationQuery) -> int:
    """Dimension of F_k H^j_{Z_q}(source) restricted to the weights in the box."""
    module = local_cohomology(query.shape, query.source, query.q).module(query.j)
    ms = filtration_multiset(query.shape, module, query.k, query.box)
    total = 0
    for lam, mult in ms.items.items():
        total += mult * rep_dim(lam, w_index(lam, query.shape), query.shape)
    return total


# Cross-check only. The criterion below for symbolic powers of determinantal
# ideals comes from the literature on GL-invariant ideals, not from the Hodge
# computations above: S_lambda (x) S_lambda lies in J_q^{(d)} iff
# lambda_n >= 0 and lambda_q + ... + lambda_n >= d.

def symbolic_power_member(lam, n: int, q: int, d: int):
    """Membership in J_q^{(d)}, J_q the ideal of q x q minors of the n x n generic matrix."""
    arr, single = _weights_array(lam, n)
    mask = (arr[:, -1] >= 0) & (arr[:, q - 1:].sum(axis=1) >= d)
    return _unwrap(mask, single)


def hodge_ideal_symbolic_member(lam, n: int, k: int):
    """I_k(Z) as the intersection over q = 1..n-1 of J_q^{((n-q)(k-1) - C(n-q, 2))}."""
    arr, single = _weights_array(lam, n)
    mask = arr[:, -1] >= 0
    for q in range(1, n):
        mask &= symbolic_power_member(arr, n, q, (n - q) * (k - 1) - comb(n - q, 2))
    return _unwrap(mask, single)
