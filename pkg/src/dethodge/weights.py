r"""
Dominant-weight combinatorics for GL_m x GL_n acting on m x n matrices.

Every GL-equivariant holonomic D-module on C^{m x n} is a direct sum of
irreducibles S_{lambda(p)} C^m (x) S_lambda C^n with lambda in one of the sets

    W^p = { lambda dominant : lambda_p >= p - n, lambda_{p+1} <= p - m },  0 <= p <= n,

and the Hodge filtration on the intersection cohomology module of Z_p is cut
out of W^p by a single linear inequality on the trailing entries,

    D^p_d = { lambda in W^p : lambda_{p+1} + ... + lambda_n >= -d - c_p }.

These sets are infinite, so nothing here materialises them. Predicates act on
one weight (a length-n sequence) or on a stacked ``(N, n)`` integer array, and
enumeration always goes through an explicit :class:`Box`.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import DomainViolation, InvalidInput

__all__ = [
    "MatrixShape",
    "Box",
    "WeightMultiset",
    "is_dominant",
    "in_wp",
    "w_index",
    "lambda_p_map",
    "in_dpd",
    "dominant_weights",
    "enumerate_weights",
    "map_blocks",
    "schur_dim",
    "rep_dim",
]


@dataclass(frozen=True)
class MatrixShape:
    """The space of m x n matrices, m >= n >= 1."""

    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, (int, np.integer)) and isinstance(self.n, (int, np.integer))):
            raise InvalidInput(f"shape entries must be integers, got {self.m!r}, {self.n!r}")
        if self.n < 1 or self.m < self.n:
            raise InvalidInput(f"need m >= n >= 1, got m={self.m}, n={self.n}")

    @property
    def is_square(self) -> bool:
        return self.m == self.n

    def dim(self, p: int) -> int:
        """d_p = dim Z_p = p(m + n - p)."""
        self._check_rank(p)
        return p * (self.m + self.n - p)

    def codim(self, p: int) -> int:
        """c_p = codim Z_p = (m - p)(n - p)."""
        self._check_rank(p)
        return (self.m - p) * (self.n - p)

    def _check_rank(self, p: int) -> None:
        if not 0 <= p <= self.n:
            raise InvalidInput(f"rank index p={p} outside 0..{self.n}")

    def __str__(self) -> str:
        return f"{self.m}x{self.n}"


@dataclass(frozen=True)
class Box:
    """Enumeration window: lo <= lambda_n and lambda_1 <= hi."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidInput(f"empty box [{self.lo}, {self.hi}]")

    def contains(self, lam: Sequence[int]) -> bool:
        return self.lo <= lam[-1] and lam[0] <= self.hi

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi}


def _weights_array(lam, n: int | None = None) -> tuple[np.ndarray, bool]:
    """Coerce to a 2-D int64 array; report whether the input was a single weight."""
    arr = np.asarray(lam, dtype=np.int64)
    single = arr.ndim == 1
    if single:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise InvalidInput(f"expected a weight or a stack of weights, got shape {arr.shape}")
    if arr.shape[1] == 0:
        raise InvalidInput("empty weight vector")
    if n is not None and arr.shape[1] != n:
        raise InvalidInput(f"weight length {arr.shape[1]} does not match n={n}")
    if single and not bool(np.all(arr[0, :-1] >= arr[0, 1:])):
        raise InvalidInput(f"{tuple(int(x) for x in arr[0])} is not dominant")
    return arr, single


def _unwrap(mask: np.ndarray, single: bool):
    return bool(mask[0]) if single else mask


def is_dominant(v: Sequence[int]) -> bool:
    """True iff v is weakly decreasing."""
    v = list(v)
    if not v:
        raise InvalidInput("empty vector")
    return all(a >= b for a, b in zip(v, v[1:]))


def _wp_mask(arr: np.ndarray, p: int, shape: MatrixShape) -> np.ndarray:
    m, n = shape.m, shape.n
    mask = np.ones(len(arr), dtype=bool)
    if p > 0:
        mask &= arr[:, p - 1] >= p - n
    if p < n:
        mask &= arr[:, p] <= p - m
    return mask


def in_wp(lam, p: int, shape: MatrixShape):
    """Membership in W^p; vectorised over a stack of weights.

    The lambda_p condition is vacuous at p = 0 and the lambda_{p+1} condition
    at p = n.
    """
    if not 0 <= p <= shape.n:
        raise InvalidInput(f"p={p} outside 0..{shape.n}")
    arr, single = _weights_array(lam, shape.n)
    return _unwrap(_wp_mask(arr, p, shape), single)


def w_index(lam, shape: MatrixShape):
    """The unique p with lambda in W^p, or None (-1 in array form) if there is none.

    For square shapes every dominant weight lies in exactly one W^p. For m > n
    the weights with p - m < lambda_{p+1} <= p - n (p the length of the initial
    run where lambda_i >= i - n) lie in no W^p at all.
    """
    arr, single = _weights_array(lam, shape.n)
    n, m = shape.n, shape.m
    offsets = np.arange(1, n + 1) - n
    # {i : lambda_i >= i - n} is an initial segment; its length is the candidate p
    p = (arr >= offsets).sum(axis=1)
    nxt = np.where(p < n, arr[np.arange(len(arr)), np.minimum(p, n - 1)], np.iinfo(np.int64).min)
    idx = np.where((p == n) | (nxt <= p - m), p, -1)
    if single:
        return None if idx[0] < 0 else int(idx[0])
    return idx


def lambda_p_map(lam: Sequence[int], p: int, shape: MatrixShape) -> tuple[int, ...]:
    """The GL_m weight lambda(p) paired with lambda inside D_p."""
    if not in_wp(lam, p, shape):
        raise DomainViolation(f"{tuple(lam)} is not in W^{p} for shape {shape}")
    m, n = shape.m, shape.n
    lam = [int(x) for x in lam]
    return tuple(lam[:p] + [p - n] * (m - n) + [x + (m - n) for x in lam[p:]])


def in_dpd(lam, p: int, d: int, shape: MatrixShape):
    """Membership in D^p_d = {lambda in W^p : lambda_{p+1} + ... + lambda_n >= -d - c_p}."""
    if not 0 <= p <= shape.n:
        raise InvalidInput(f"p={p} outside 0..{shape.n}")
    arr, single = _weights_array(lam, shape.n)
    mask = _wp_mask(arr, p, shape) & (arr[:, p:].sum(axis=1) >= -d - shape.codim(p))
    return _unwrap(mask, single)


def dominant_weights(n: int, box: Box) -> np.ndarray:
    """All dominant weights of length n with entries in [box.lo, box.hi].

    Rows come out in lexicographically descending order.
    """
    values = range(box.hi, box.lo - 1, -1)
    combos = itertools.combinations_with_replacement(values, n)
    flat = np.fromiter(itertools.chain.from_iterable(combos), dtype=np.int64)
    return flat.reshape(-1, n)


def _dominant_weights_with_head(n: int, box: Box, head: int) -> np.ndarray:
    if n == 1:
        return np.array([[head]], dtype=np.int64)
    tail = dominant_weights(n - 1, Box(box.lo, head))
    return np.hstack([np.full((len(tail), 1), head, dtype=np.int64), tail])


def map_blocks(n: int, box: Box, fn: Callable[[np.ndarray], np.ndarray],
               workers: int | None = None) -> np.ndarray:
    """Apply ``fn`` to the dominant weights of ``box`` and stack the row results.

    With ``workers`` > 1 the weights are split by first coordinate and the
    blocks run on a thread pool. Blocks are stacked in descending head order,
    so the output equals the single-threaded ``fn(dominant_weights(n, box))``
    whenever ``fn`` acts row by row.
    """
    if not workers or workers <= 1:
        return fn(dominant_weights(n, box))
    heads = range(box.hi, box.lo - 1, -1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda h: fn(_dominant_weights_with_head(n, box, h)), heads))
    return np.concatenate(parts) if parts else fn(dominant_weights(n, box))


@dataclass
class WeightMultiset:
    """A finite multiset of dominant weights, relative to an enumeration box."""

    box: Box
    items: Counter = field(default_factory=Counter)

    def __post_init__(self):
        items = Counter()
        for lam, mult in dict(self.items).items():
            lam = tuple(int(x) for x in lam)
            if mult < 0:
                raise InvalidInput(f"negative multiplicity {mult} for {lam}")
            if mult == 0:
                continue
            if not is_dominant(lam) or not self.box.contains(lam):
                raise InvalidInput(f"{lam} is not a dominant weight inside {self.box}")
            items[lam] += int(mult)
        self.items = items

    @classmethod
    def from_array(cls, box: Box, weights: np.ndarray, mult=1) -> "WeightMultiset":
        mult = np.broadcast_to(np.asarray(mult, dtype=np.int64), (len(weights),))
        items = Counter()
        for row, k in zip(weights.tolist(), mult.tolist()):
            if k:
                items[tuple(row)] += k
        return cls(box, items)

    def union(self, other: "WeightMultiset") -> "WeightMultiset":
        """Disjoint union: multiplicities add."""
        if other.box != self.box:
            raise InvalidInput("cannot union multisets over different boxes")
        return WeightMultiset(self.box, self.items + other.items)

    __or__ = union

    def __len__(self) -> int:
        return sum(self.items.values())

    def __contains__(self, lam) -> bool:
        return tuple(lam) in self.items

    def multiplicity(self, lam) -> int:
        return self.items.get(tuple(lam), 0)

    def support(self) -> set:
        return set(self.items)

    def sorted_items(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.items.items(), key=lambda kv: kv[0], reverse=True)

    def to_json(self) -> list[dict]:
        return [{"lambda": list(lam), "mult": mult} for lam, mult in self.sorted_items()]

    @classmethod
    def from_json(cls, data: list[dict], box: Mapping) -> "WeightMultiset":
        box = Box(int(box["lo"]), int(box["hi"]))
        items = Counter()
        for entry in data:
            items[tuple(entry["lambda"])] += int(entry["mult"])
        return cls(box, items)

    def dumps(self) -> str:
        return json.dumps({"box": self.box.to_dict(), "weights": self.to_json()}, sort_keys=True)


WeightPredicate = Callable[[np.ndarray], "np.ndarray | bool"]


def enumerate_weights(shape: MatrixShape, box: Box, predicate: WeightPredicate,
                      workers: int | None = None) -> WeightMultiset:
    """Collect the dominant weights in ``box`` satisfying ``predicate``.

    ``predicate`` receives an ``(N, n)`` array and returns a boolean mask (or a
    single bool applied to every row). With ``workers`` > 1 the box is split by
    first coordinate and scanned on a thread pool; the result does not depend
    on the split.
    """
    def scan(block: np.ndarray) -> np.ndarray:
        mask = np.broadcast_to(np.asarray(predicate(block), dtype=bool), (len(block),))
        return block[mask]

    hits = map_blocks(shape.n, box, scan, workers)
    return WeightMultiset.from_array(box, hits)


def schur_dim(lam: Sequence[int], N: int) -> int:
    """dim S_lambda C^N by the Weyl dimension formula, in exact integers.

    Negative entries are allowed; the value only depends on the differences
    lambda_i - lambda_j.
    """
    lam = [int(x) for x in lam]
    if N < 1 or len(lam) != N:
        raise InvalidInput(f"weight {tuple(lam)} does not have length N={N}")
    if not is_dominant(lam):
        raise InvalidInput(f"{tuple(lam)} is not dominant")
    num = den = 1
    for i, j in itertools.combinations(range(N), 2):
        num *= lam[i] - lam[j] + j - i
        den *= j - i
    quo, rem = divmod(num, den)
    assert rem == 0, "Weyl product must be an integer"
    return quo


def rep_dim(lam: Sequence[int], p: int, shape: MatrixShape) -> int:
    """dim of S_{lambda(p)} C^m (x) S_lambda C^n, the isotypic piece of D_p indexed by lambda."""
    big = lambda_p_map(lam, p, shape)
    return schur_dim(big, shape.m) * schur_dim(lam, shape.n)
