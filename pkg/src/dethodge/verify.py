"""Built-in verification suite: worked examples and exhaustive sweeps.

Every check records what was expected, what the engine produced and how long
it took. Expected values for the worked examples are literal constants; the
sweeps compare two independent descriptions of the same object.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable

import numpy as np

from .groth import lc_class, lc_class_Q, q_decompose, q_table
from .hodge import (generation_level, hodge_filtration, hodge_ideal_member,
                    hodge_ideal_symbolic_member, q_filtration_member,
                    qpideal_identity_check, start_level)
from .mhm import TwistedQ, TwistedSimple, iterate, lc_mhm, lc_q_mhm
from .weights import (Box, MatrixShape, WeightMultiset, dominant_weights, in_dpd,
                      in_wp, schur_dim)


@dataclass
class Check:
    name: str
    ok: bool
    expected: Any
    got: Any
    seconds: float
    gating: bool = True

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "expected": self.expected,
                "got": self.got, "gating": self.gating}


@dataclass
class VerifyReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks if c.gating)

    def to_json(self) -> dict:
        # wall times are left out so the JSON stays byte-stable
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# Worked examples, as printed in the source material.
EX1_FACTORS = {4: {0: 1, 1: 1, 2: 1}, 6: {0: 1, 1: 1}, 8: {0: 1}}
EX1_WEIGHTS = [20, 21, 22, 23, 24, 26]
EX1_QTABLE = {4: {2: 1}, 6: {1: 1}, 8: {0: 1}}
EX1_START = [0, 2, 5, 1, 4, 3]
EX1_GEN = [5, 4, 3]
EX2_WEIGHTS = [43, 46, 48, 49, 51, 52, 53, 54, 56, 58]
S43_FACTORS = {3: {1: 1}, 5: {0: 1, 1: 1}, 7: {0: 1}, 9: {0: 1}}
S43_WEIGHTS = [15, 17, 18, 20, 22]
S43_START = [4, 3, 6, 5, 4]
S43_GEN = [4, 6, 5, 4]
# degree j -> [(r, offset)]: F_k H^j is the union of D^r_{k - offset}
EX1_HODGE = {4: [(2, 0), (1, 2), (0, 5)], 6: [(1, 1), (0, 4)], 8: [(0, 3)]}
S43_HODGE = {3: [(1, 4)], 5: [(1, 3), (0, 6)], 7: [(0, 5)], 9: [(0, 4)]}
EX3_FIRST = {4: "Q_2(-1)", 6: "Q_1(-2)", 8: "Q_0(-3)"}
EX3_ITERATED = {(4, 8): -4, (6, 5): -4, (4, 10): -5, (6, 7): -5, (4, 12): -6, (6, 3): -3, (8, 0): -3}


def _start_levels(shape: MatrixShape, p: int, q: int) -> list:
    table = lc_class(shape, p, q)
    return [start_level(shape, p, q, j, r) for j in table.degrees()
            for r in sorted(table.factors(j), reverse=True)]


def _gen_levels(shape: MatrixShape, p: int, q: int) -> list:
    return [generation_level(shape, p, q, j) for j in lc_class(shape, p, q).degrees()]


def hodge_union_mismatch(shape: MatrixShape, p: int, q: int, layout: dict,
                         box: Box, levels) -> list:
    """Compare F_k H^j against an explicitly written union of D-sets; returns mismatching (j, k)."""
    weights = dominant_weights(shape.n, box)
    bad = []
    for j, parts in layout.items():
        for k in levels:
            mult = np.zeros(len(weights), dtype=np.int64)
            for r, off in parts:
                mult += in_dpd(weights, r, k - off, shape).astype(np.int64)
            expected = WeightMultiset.from_array(box, weights[mult > 0], mult[mult > 0])
            if hodge_filtration(shape, p, q, j, k, box) != expected:
                bad.append((j, k))
    return bad


def parity_sweep(limit: int = 8) -> list:
    bad = []
    for n in range(1, limit + 1):
        for m in range(n, limit + 1):
            shape = MatrixShape(m, n)
            for p in range(1, n + 1):
                for q in range(p):
                    for j, row in lc_class(shape, p, q).entries.items():
                        for r in row:
                            c = shape.codim(r) + shape.codim(p) + r - q - j
                            d = shape.dim(r) - shape.dim(p) + r - q - j
                            if c % 2 or d % 2:
                                bad.append((m, n, p, q, j, r))
    return bad


def addq_sweep(limit: int = 6) -> list:
    """q_decompose succeeds and reconstructs; lc_class_Q obeys the recursion termwise."""
    bad = []
    for n in range(1, limit + 1):
        shape = MatrixShape(n, n)
        for p in range(1, n + 1):
            for q in range(p):
                tables = [lc_class(shape, p, q)] + ([lc_class_Q(shape, p, q)] if p < n else [])
                for table in tables:
                    for j, row in table.entries.items():
                        b = q_decompose(row)
                        rebuilt = {r: sum(v for i, v in b.items() if i >= r) for r in row}
                        if rebuilt != row:
                            bad.append(("reconstruct", n, p, q, j))
        for p in range(1, n):
            for q in range(p):
                qp = lc_class_Q(shape, p, q)
                prev = lc_class_Q(shape, p - 1, q)
                dp = lc_class(shape, p, q)
                js = set(qp.entries) | set(dp.entries) | {j + 1 for j in prev.entries}
                for j in js:
                    want = dict(dp.factors(j))
                    for r, v in prev.factors(j - 1).items():
                        want[r] = want.get(r, 0) - v
                    want = {r: v for r, v in want.items() if v}
                    if want != qp.factors(j):
                        bad.append(("recursion", n, p, q, j))
    return bad


def max_weight_sweep(limit: int = 6) -> list:
    bad = []
    for n in range(1, limit + 1):
        for m in range(n, limit + 1):
            shape = MatrixShape(m, n)
            for q in range(n):
                top = max(lc_mhm(shape, TwistedSimple(n, 0), q).weights())
                if top != 2 * m * n - q * (q + 1):
                    bad.append((m, n, q, top))
    return bad


def q_first_level_sweep(limit: int = 6) -> list:
    """First k with Q^p_k nonempty, found by enumeration."""
    bad = []
    for n in range(1, limit + 1):
        box = Box(-n - 1, 1)
        weights = dominant_weights(n, box)
        for p in range(n + 1):
            first = None
            for k in range(-2, comb(n, 2) + 2):
                if q_filtration_member(weights, n, p, k).any():
                    first = k
                    break
            if first != comb(n - p, 2):
                bad.append((n, p, first))
    return bad


def _ssyt_count(lam, N: int) -> int:
    """Semistandard tableaux of shape lam (a partition) with entries 1..N."""
    cells = [(i, j) for i, row in enumerate(lam) for j in range(row)]
    filling: dict = {}

    def fill(idx: int) -> int:
        if idx == len(cells):
            return 1
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = max(lo, filling[(i, j - 1)])
        if i > 0:
            lo = max(lo, filling[(i - 1, j)] + 1)
        total = 0
        for v in range(lo, N + 1):
            filling[(i, j)] = v
            total += fill(idx + 1)
        return total

    return fill(0)


def schur_oracle_sweep(max_n: int = 4, max_part: int = 4) -> list:
    bad = []
    for N in range(1, max_n + 1):
        for lam in dominant_weights(N, Box(0, max_part)).tolist():
            if schur_dim(lam, N) != _ssyt_count(lam, N):
                bad.append((N, tuple(lam)))
    return bad


def wp_sweep(limit: int = 6, cover_all: bool = False) -> list:
    """W^p are pairwise disjoint; they cover the dominant cone for square shapes.

    For m > n some dominant weights lie in no W^p, so the cover is only
    demanded for every shape when ``cover_all`` is set.
    """
    bad = []
    for n in range(1, limit + 1):
        for m in range(n, limit + 1):
            shape = MatrixShape(m, n)
            weights = dominant_weights(n, Box(-m - 2, 2))
            hits = sum(in_wp(weights, p, shape).astype(np.int64) for p in range(n + 1))
            if (hits > 1).any():
                bad.append(("overlap", m, n))
            if (cover_all or m == n) and (hits == 0).any():
                bad.append(("uncovered", m, n, tuple(weights[np.flatnonzero(hits == 0)[0]].tolist())))
    return bad


def dpd_monotone_sweep(limit: int = 5, dmax: int = 10) -> list:
    bad = []
    for n in range(1, limit + 1):
        for m in range(n, limit + 1):
            shape = MatrixShape(m, n)
            weights = dominant_weights(n, Box(-m * n - 2, 2))
            for p in range(n + 1):
                prev = in_dpd(weights, p, -1, shape)
                for d in range(dmax):
                    cur = in_dpd(weights, p, d, shape)
                    if (prev & ~cur).any():
                        bad.append((m, n, p, d))
                    prev = cur
    return bad


def symbolic_sweep(max_n: int = 3, max_k: int = 5, box: Box = Box(-8, 12)) -> list:
    bad = []
    for n in range(1, max_n + 1):
        weights = dominant_weights(n, box)
        for k in range(max_k + 1):
            lhs = hodge_ideal_member(weights, n, k)
            rhs = hodge_ideal_symbolic_member(weights, n, k)
            if (lhs != rhs).any():
                bad.append((n, k, tuple(weights[np.flatnonzero(lhs != rhs)[0]].tolist())))
    return bad


def _iterated_twists(shape: MatrixShape) -> dict:
    it = iterate(shape, TwistedSimple(shape.n, 0), [2, 0])
    out = {}
    for key, mod in it.table.items():
        qs = list(mod.qsummands.items())
        out[key] = qs[0][0].k if len(qs) == 1 and qs[0][0].r == 0 and qs[0][1] == 1 else str(mod)
    return out


def _qs_str(mhm) -> dict:
    return {j: " + ".join(f"{tq}" for tq in mod.qsummands) for j, mod in mhm.degrees.items()}


def _cases(extended: bool) -> list[tuple[str, Callable[[], Any], Any, bool]]:
    s44, s75, s53 = MatrixShape(4, 4), MatrixShape(7, 5), MatrixShape(5, 3)
    cases = [
        ("ex1_factor_table", lambda: lc_class(s44, 4, 2).entries, EX1_FACTORS, True),
        ("ex1_weights", lambda: sorted(lc_mhm(s44, TwistedSimple(4), 2).weights()), EX1_WEIGHTS, True),
        ("ex1_q_summands", lambda: q_table(lc_class(s44, 4, 2)).entries, EX1_QTABLE, True),
        ("ex1_start_levels", lambda: _start_levels(s44, 4, 2), EX1_START, True),
        ("ex1_generation_levels", lambda: _gen_levels(s44, 4, 2), EX1_GEN, True),
        ("ex1_hodge_multisets", lambda: hodge_union_mismatch(s44, 4, 2, EX1_HODGE, Box(-20, 10), range(-1, 9)), [], True),
        ("ex2_nonzero_degrees", lambda: len(lc_class(s75, 5, 3).entries), 7, True),
        ("ex2_weights", lambda: sorted(lc_mhm(s75, TwistedSimple(5), 3).weights()), EX2_WEIGHTS, True),
        ("s43_factor_table", lambda: lc_class(s53, 2, 1).entries, S43_FACTORS, True),
        ("s43_weights", lambda: lc_mhm(s53, TwistedSimple(2), 1).weights(), S43_WEIGHTS, True),
        ("s43_start_levels", lambda: _start_levels(s53, 2, 1), S43_START, True),
        ("s43_generation_levels", lambda: _gen_levels(s53, 2, 1), S43_GEN, True),
        ("s43_hodge_multisets", lambda: hodge_union_mismatch(s53, 2, 1, S43_HODGE, Box(-16, 6), range(-1, 9)), [], True),
        ("ex3_first_stage", lambda: _qs_str(lc_mhm(s44, TwistedSimple(4), 2)), EX3_FIRST, True),
        ("ex3_q1_twisted", lambda: _qs_str(lc_q_mhm(s44, TwistedQ.twisted(1, -2), 0)),
         {3: "Q_0(-3)", 5: "Q_0(-4)", 7: "Q_0(-5)"}, True),
        ("ex3_q0_twisted", lambda: _qs_str(lc_q_mhm(s44, TwistedQ.twisted(0, -3), 0)), {0: "Q_0(-3)"}, True),
        ("ex3_iterated", lambda: _iterated_twists(s44), EX3_ITERATED, True),
        ("parity_sweep_m_n_le_8", parity_sweep, [], True),
        ("addq_sweep_n_le_6", addq_sweep, [], True),
        ("max_weight_sweep_m_n_le_6", max_weight_sweep, [], True),
        ("qpideal_n_le_4_k_le_8", lambda: [(n, p, k) for n in range(1, 5) for p in range(n + 1) for k in range(9)
                                           if not qpideal_identity_check(n, p, k, Box(-12, 10))], [], True),
        ("q_first_level_n_le_6", q_first_level_sweep, [], True),
        ("schur_dim_vs_tableaux", schur_oracle_sweep, [], True),
        ("wp_disjoint_and_square_cover", wp_sweep, [], True),
        ("dpd_monotone_in_d", dpd_monotone_sweep, [], True),
    ]
    if extended:
        cases.append(("symbolic_power_cross_check", symbolic_sweep, [], False))
    return cases


def _plain(obj):
    """JSON-friendly form with string keys."""
    if isinstance(obj, dict):
        return {str(",".join(map(str, k)) if isinstance(k, tuple) else k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def run_verify(extended: bool = False) -> VerifyReport:
    report = VerifyReport()
    for name, fn, expected, gating in _cases(extended):
        t0 = time.perf_counter()
        got = fn()
        dt = time.perf_counter() - t0
        report.checks.append(Check(name, got == expected, _plain(expected), _plain(got), dt, gating))
    return report
