"""Checkers for the combinatorial structure of (punctured) Preparata codes.

Everything here is exhaustive and exact at desk scale: design properties of
the minimum-weight codewords, the zero/one bookkeeping of distance-d
neighborhoods, per-codeword counting inequalities, maximal constant-weight
code sizes by clique search, and the integer scans behind the
weight-preservation argument for weak isometries.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb
from typing import Callable, Iterable

from .core import BinaryWord, CapabilityError, Code, InputError

#: Full-scan neighborhood computation is used up to this code size.
SCAN_CAP = 10_000

#: Readability cap on recorded counterexamples per check.
MAX_WITNESSES = 10


@dataclass
class CheckReport:
    """Outcome of one check: pass/fail, numeric payload, witnesses."""

    check: str
    params: dict
    passed: bool
    counterexamples: list = dc_field(default_factory=list)
    payload: dict = dc_field(default_factory=dict)
    timing_ms: float = 0.0

    def add_witness(self, item) -> None:
        self.passed = False
        if len(self.counterexamples) < MAX_WITNESSES:
            self.counterexamples.append(item)

    def to_json_dict(self) -> dict:
        out = {
            "check": self.check,
            "params": self.params,
            "pass": self.passed,
        }
        out.update(self.payload)
        out["counterexamples"] = self.counterexamples
        out["timing_ms"] = round(self.timing_ms, 3)
        return out


@dataclass
class NeighborProfile:
    """Decomposition of a codeword's distance-d neighborhood by weight."""

    x: BinaryWord
    d: int
    by_weight: dict[int, tuple[BinaryWord, ...]]

    @property
    def weight(self) -> int:
        return self.x.weight

    @property
    def degree(self) -> int:
        return sum(len(v) for v in self.by_weight.values())

    def downward_with_zeros(self, coords: Iterable[int]) -> dict[int, tuple[BinaryWord, ...]]:
        """Members of the lighter weight classes with zeros at all coords.

        Keyed by weight drop (1, 3, 5 at distance 5; 2, 4, 6 at distance 6).
        """
        n = self.x.n
        mask = 0
        for c in coords:
            if not 1 <= c <= n:
                raise InputError(f"coordinate {c} out of range 1..{n}")
            mask |= 1 << (n - c)
        i = self.weight
        out: dict[int, tuple[BinaryWord, ...]] = {}
        for j, members in self.by_weight.items():
            drop = i - j
            if drop <= 0:
                continue
            sel = tuple(w for w in members if w.value & mask == 0)
            out[drop] = sel
        return out


def neighbor_profile(c: Code, x: BinaryWord) -> NeighborProfile:
    """Exact weight decomposition of x's distance-d neighborhood (full scan)."""
    if not c.reduced:
        raise InputError("neighbor profiles are defined on reduced codes")
    if x not in c:
        raise InputError(f"{x} is not a codeword")
    if c.M > SCAN_CAP:
        raise CapabilityError(f"{c.M} words exceed the scan cap {SCAN_CAP}")
    d = c.d
    buckets: dict[int, list[BinaryWord]] = {}
    xv = x.value
    for w in c.words:
        if (xv ^ w.value).bit_count() == d:
            buckets.setdefault(w.weight, []).append(w)
    return NeighborProfile(
        x=x, d=d, by_weight={j: tuple(ws) for j, ws in sorted(buckets.items())}
    )


def neighbor_profile_from_oracle(
    member: Callable[[BinaryWord], bool], n: int, d: int, x: BinaryWord
) -> NeighborProfile:
    """Same decomposition via generate-and-test against a membership oracle.

    Candidates are built from the admissible split of the d differing
    coordinates into zeros inside supp(x) and ones outside it.
    """
    if x.n != n:
        raise InputError(f"word length {x.n} != {n}")
    if not member(x):
        raise InputError(f"{x} is not accepted by the membership oracle")
    supp = x.support()
    outside = [i for i in range(1, n + 1) if i not in set(supp)]
    i = len(supp)
    buckets: dict[int, list[BinaryWord]] = {}
    for delta in range(-d, d + 1):
        if (d + delta) % 2:
            continue
        zeros_in = (d + delta) // 2
        ones_out = (d - delta) // 2
        if zeros_in > i or ones_out > len(outside):
            continue
        found = []
        for zset in combinations(supp, zeros_in):
            base = x.value
            for z in zset:
                base &= ~(1 << (n - z))
            for oset in combinations(outside, ones_out):
                v = base
                for o in oset:
                    v |= 1 << (n - o)
                w = BinaryWord(n, v)
                if member(w):
                    found.append(w)
        if found:
            buckets[i - delta] = sorted(found)
    return NeighborProfile(
        x=x, d=d, by_weight={j: tuple(ws) for j, ws in sorted(buckets.items())}
    )


def _timed(report: CheckReport, t0: float) -> CheckReport:
    report.timing_ms = (time.perf_counter() - t0) * 1000.0
    return report


def check_structure(c: Code, mode: str) -> CheckReport:
    """Audit zero/one bookkeeping of every codeword's d-neighborhood."""
    if mode not in ("punctured", "extended"):
        raise InputError(f"mode must be punctured or extended, got {mode!r}")
    expect_d = 5 if mode == "punctured" else 6
    ksize = 2 if mode == "punctured" else 3
    if not c.reduced:
        raise InputError("structure audit requires a reduced code")
    if c.d != expect_d:
        raise InputError(f"{mode} audit requires d={expect_d}, code has d={c.d}")
    report = structure_audit([w.value for w in c.words], c.n, expect_d, ksize)
    report.check = f"structure_{mode}"
    return report


def structure_audit(values, n: int, d: int, ksize: int) -> CheckReport:
    """Neighborhood audit of a raw word set at a declared distance d.

    Verifies, for every word x: each distance-d neighbor's split of the d
    differing coordinates (zeros inside supp(x) vs ones outside) matches
    its weight change; any two neighbors sharing a zero ksize-tuple in
    supp(x) share no further inside zero and no outside one; and the
    weighted count of inside zeros per tuple lies in the two-sided bound
    [i - ksize - 1, i - ksize].
    """
    t0 = time.perf_counter()
    values = sorted(set(values))
    report = CheckReport(
        check="structure_audit",
        params={"n": n, "M": len(values), "d": d},
        passed=True,
    )
    audited_words = 0
    audited_tuples = 0
    for xv in values:
        i = xv.bit_count()
        nbrs = []
        for yv in values:
            if (xv ^ yv).bit_count() != d:
                continue
            z_mask = xv & ~yv
            o_mask = yv & ~xv
            zi = z_mask.bit_count()
            oo = o_mask.bit_count()
            delta = i - yv.bit_count()
            if zi != (d + delta) // 2 or oo != (d - delta) // 2:
                report.add_witness(
                    {
                        "kind": "split_count",
                        "x": BinaryWord(n, xv).to_hex(),
                        "y": BinaryWord(n, yv).to_hex(),
                        "zeros_inside": zi,
                        "ones_outside": oo,
                    }
                )
            nbrs.append((yv, z_mask, o_mask, zi))
        audited_words += 1
        if i < ksize:
            continue
        buckets: dict[tuple[int, ...], list] = {}
        for rec in nbrs:
            zbits = [b for b in range(n) if (rec[1] >> b) & 1]
            if len(zbits) < ksize:
                continue
            for key in combinations(zbits, ksize):
                buckets.setdefault(key, []).append(rec)
        supp_bits = [b for b in range(n) if (xv >> b) & 1]
        for key in combinations(sorted(supp_bits), ksize):
            members = buckets.get(key, [])
            key_mask = 0
            for b in key:
                key_mask |= 1 << b
            for a_idx in range(len(members)):
                ya, za, oa, _ = members[a_idx]
                for b_idx in range(a_idx + 1, len(members)):
                    yb, zb, ob, _ = members[b_idx]
                    if (za & zb & ~key_mask) or (oa & ob):
                        report.add_witness(
                            {
                                "kind": "shared_coordinate",
                                "x": BinaryWord(n, xv).to_hex(),
                                "coords": [n - b for b in key],
                                "u": BinaryWord(n, ya).to_hex(),
                                "v": BinaryWord(n, yb).to_hex(),
                            }
                        )
            weighted = sum(zi - ksize for _, _, _, zi in members)
            lo, hi = i - ksize - 1, i - ksize
            if not lo <= weighted <= hi:
                report.add_witness(
                    {
                        "kind": "pair_count_bound",
                        "x": BinaryWord(n, xv).to_hex(),
                        "coords": [n - b for b in key],
                        "weighted_count": weighted,
                        "bounds": [lo, hi],
                    }
                )
            audited_tuples += 1
    report.payload = {
        "audited_words": audited_words,
        "audited_tuples": audited_tuples,
    }
    return _timed(report, t0)


def check_design(blocks, n: int, t: int, k: int) -> CheckReport:
    """Count, for every t-subset of coordinates, the blocks containing it.

    Passes when the count is one constant lambda over all t-subsets.
    """
    t0 = time.perf_counter()
    if not 1 <= t <= k <= n:
        raise InputError(f"need 1 <= t <= k <= n, got t={t} k={k} n={n}")
    block_list = []
    for b in blocks:
        sb = tuple(sorted(b))
        if len(sb) != k or len(set(sb)) != k:
            raise InputError(f"block {sb} does not have size {k}")
        if sb[0] < 1 or sb[-1] > n:
            raise InputError(f"block {sb} out of coordinate range 1..{n}")
        block_list.append(sb)
    counts: dict[tuple[int, ...], int] = {}
    for b in block_list:
        for sub in combinations(b, t):
            counts[sub] = counts.get(sub, 0) + 1
    report = CheckReport(
        check="design",
        params={"n": n, "t": t, "k": k, "blocks": len(block_list)},
        passed=True,
    )
    values = set()
    for sub in combinations(range(1, n + 1), t):
        lam = counts.get(sub, 0)
        values.add(lam)
    if len(values) == 1:
        lam = values.pop()
        report.payload["lambda"] = lam
    else:
        report.passed = False
        report.payload["lambda"] = None
        report.payload["lambda_range"] = [min(values), max(values)]
        for sub in combinations(range(1, n + 1), t):
            lam = counts.get(sub, 0)
            if lam != max(values):
                report.add_witness({"subset": list(sub), "count": lam})
    expected: dict[str, float] = {}
    if (t, k) == (2, 5):
        expected["(n-3)/3"] = (n - 3) / 3
        expected["(n-3)/4"] = (n - 3) / 4
    elif (t, k) == (3, 6):
        expected["(n-4)/3"] = (n - 4) / 3
    if expected:
        report.payload["length_formulas"] = expected
    return _timed(report, t0)


def min_weight_blocks(c: Code) -> list[tuple[int, ...]]:
    """Supports of the nonzero codewords of minimum weight."""
    weights = [w.weight for w in c.words if w.weight > 0]
    if not weights:
        raise InputError("code has no nonzero words")
    wmin = min(weights)
    return [w.support() for w in c.words if w.weight == wmin]


def check_corollary1(c: Code) -> CheckReport:
    """For every coordinate pair, the minimum-weight codewords through both
    must leave exactly one other coordinate zero in all of them."""
    t0 = time.perf_counter()
    if not c.reduced:
        raise InputError("requires a reduced code")
    blocks = min_weight_blocks(c)
    if len(blocks[0]) != 5:
        raise InputError(
            f"minimum nonzero weight is {len(blocks[0])}, expected 5"
        )
    n = c.n
    full = (1 << n) - 1
    block_masks = []
    for b in blocks:
        m = 0
        for coord in b:
            m |= 1 << (n - coord)
        block_masks.append((set(b), m))
    report = CheckReport(
        check="common_zero_coordinate",
        params={"n": n, "blocks": len(blocks)},
        passed=True,
    )
    sizes: dict[int, int] = {}
    for r, s in combinations(range(1, n + 1), 2):
        exclude = (1 << (n - r)) | (1 << (n - s))
        zeros = full & ~exclude
        hit = 0
        for coords, m in block_masks:
            if r in coords and s in coords:
                zeros &= ~m
                hit += 1
        count = zeros.bit_count()
        sizes[count] = sizes.get(count, 0) + 1
        if count != 1:
            report.add_witness(
                {
                    "pair": [r, s],
                    "blocks_through": hit,
                    "common_zero_count": count,
                }
            )
    report.payload["common_zero_size_histogram"] = {
        str(k): v for k, v in sorted(sizes.items())
    }
    return _timed(report, t0)


def _counting_check(c: Code, name: str, drops: tuple[int, ...],
                    coeffs: tuple[int, ...], tsize: int, min_weight: int) -> CheckReport:
    t0 = time.perf_counter()
    if not c.reduced:
        raise InputError("requires a reduced code")
    d = c.d
    values = [w.value for w in c.words]
    n = c.n
    report = CheckReport(
        check=name,
        params={"n": n, "M": c.M, "d": d, "min_weight": min_weight},
        passed=True,
    )
    per_weight: dict[int, dict] = {}
    for xv in values:
        i = xv.bit_count()
        if i < min_weight:
            continue
        drop_counts = dict.fromkeys(drops, 0)
        for yv in values:
            if (xv ^ yv).bit_count() != d:
                continue
            delta = i - yv.bit_count()
            if delta in drop_counts:
                drop_counts[delta] += 1
        total = sum(coeff * drop_counts[dr] for coeff, dr in zip(coeffs, drops))
        blocks = comb(i, tsize)
        lower = blocks * (i - tsize - 1)
        upper = blocks * (i - tsize)
        stats = per_weight.setdefault(
            i, {"codewords": 0, "min_lower_slack": None, "min_upper_slack": None}
        )
        stats["codewords"] += 1
        ls = total - lower
        us = upper - total
        if stats["min_lower_slack"] is None or ls < stats["min_lower_slack"]:
            stats["min_lower_slack"] = ls
        if stats["min_upper_slack"] is None or us < stats["min_upper_slack"]:
            stats["min_upper_slack"] = us
        if not lower <= total <= upper:
            report.add_witness(
                {
                    "x": BinaryWord(n, xv).to_hex(),
                    "weight": i,
                    "weighted_sum": total,
                    "bounds": [lower, upper],
                }
            )
    report.payload["bounds"] = {
        str(i): stats for i, stats in sorted(per_weight.items())
    }
    return _timed(report, t0)


def check_counting_punctured(c: Code) -> CheckReport:
    """Two-sided bound on 3|D(i,i-1)| + 12|D(i,i-3)| + 30|D(i,i-5)|."""
    if c.d != 5:
        raise InputError(f"punctured counting requires d=5, code has d={c.d}")
    return _counting_check(
        c, "counting_punctured", drops=(1, 3, 5), coeffs=(3, 12, 30),
        tsize=2, min_weight=5,
    )


def check_counting_extended(c: Code) -> CheckReport:
    """Two-sided bound on 4|D(i,i-2)| + 20|D(i,i-4)| + 60|D(i,i-6)|."""
    if c.d != 6:
        raise InputError(f"extended counting requires d=6, code has d={c.d}")
    return _counting_check(
        c, "counting_extended", drops=(2, 4, 6), coeffs=(4, 20, 60),
        tsize=3, min_weight=6,
    )


# --- maximal constant-weight codes by exact clique search ------------------

def max_constant_weight(n: int, w: int, dmin: int) -> tuple[int, list[BinaryWord]]:
    """Largest set of weight-w words of length n at pairwise distance >= dmin.

    Exact branch-and-bound clique search on the compatibility graph, with a
    greedy coloring bound.  Returns (size, witness words).
    """
    if not 0 <= w <= n:
        raise InputError(f"need 0 <= w <= n, got w={w} n={n}")
    if n > 16 or comb(n, w) > SCAN_CAP:
        raise CapabilityError(
            f"C({n},{w}) = {comb(n, w)} candidate words exceed the search cap"
        )
    words = [v for v in range(1 << n) if v.bit_count() == w]
    V = len(words)
    adj = [0] * V
    for a in range(V):
        for b in range(a + 1, V):
            if (words[a] ^ words[b]).bit_count() >= dmin:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    # Greedy warm start tightens the coloring bound from the first branch.
    best_size = 0
    best_set: list[int] = []
    for seed in range(V):
        clique = [seed]
        cand = adj[seed]
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            clique.append(u)
            cand &= adj[u]
        if len(clique) > best_size:
            best_size = len(clique)
            best_set = clique
    stack: list[int] = []

    def color_order(pmask: int) -> tuple[list[int], list[int]]:
        order: list[int] = []
        bounds: list[int] = []
        color = 0
        rest = pmask
        while rest:
            color += 1
            avail = rest
            while avail:
                low = avail & -avail
                v = low.bit_length() - 1
                order.append(v)
                bounds.append(color)
                rest ^= low
                avail &= ~low
                avail &= ~adj[v]
        return order, bounds

    def expand(pmask: int) -> None:
        nonlocal best_size, best_set
        order, bounds = color_order(pmask)
        for idx in range(len(order) - 1, -1, -1):
            if len(stack) + bounds[idx] <= best_size:
                return
            v = order[idx]
            stack.append(v)
            if len(stack) > best_size:
                best_size = len(stack)
                best_set = list(stack)
            nxt = pmask & adj[v]
            if nxt:
                expand(nxt)
            stack.pop()
            pmask &= ~(1 << v)

    if V:
        # Coordinate permutations act transitively on the vertices, so some
        # maximum clique contains vertex 0: search 0's neighborhood only.
        stack.append(0)
        if best_size < 1:
            best_size, best_set = 1, [0]
        expand(adj[0])
        stack.pop()
    witness = sorted(BinaryWord(n, words[v]) for v in best_set)
    for a_idx in range(len(witness)):
        for b_idx in range(a_idx + 1, len(witness)):
            dist = (witness[a_idx].value ^ witness[b_idx].value).bit_count()
            if dist < dmin:
                raise AssertionError("witness fails its own distance constraint")
    return best_size, witness


# --- integer scans for the weight-preservation argument --------------------

def critical_values(i: int) -> dict:
    """Exact integer quantities for weight i used by the scan."""
    lb_num = 4 * (i - 3) * comb(i, 2) - i * comb(i + 2, 2)
    lower = -((-lb_num) // 18)  # ceil for either sign
    conflict = 3 * (i - 2) * comb(i, 2) < 2 * lb_num
    jump4 = 10 * i * (i - 1) * (i - 3) <= 2 * i * (i + 3) * (i + 2)
    return {
        "i": i,
        "drop3_lower_bound_num": lb_num,
        "drop3_lower_bound_den": 18,
        "drop3_lower_bound": lower,
        "bounds_conflict": conflict,
        "jump4_feasible": jump4,
    }


def critical_scan(i_min: int, i_max: int) -> CheckReport:
    """Scan weights [i_min, i_max] and test every step of the argument:

    - the weight-drop-3 neighbor count bound is >= 1 at i = 6, 7,
      and equals 12 at i = 8 and 21 at i = 9;
    - the two-sided counting bounds conflict exactly from i = 10 on;
    - the weight-plus-4 jump is infeasible everywhere.
    """
    t0 = time.perf_counter()
    if not 6 <= i_min <= i_max <= 10_000:
        raise InputError(
            f"need 6 <= i_min <= i_max <= 10000, got [{i_min}, {i_max}]"
        )
    report = CheckReport(
        check="critical_scan",
        params={"i_min": i_min, "i_max": i_max},
        passed=True,
    )
    expected_lower = {8: 12, 9: 21}
    lower_values: dict[str, list[int]] = {}
    conflict_violations = []
    jump4_holdings = []
    for i in range(i_min, i_max + 1):
        vals = critical_values(i)
        if i <= 12 or i in (i_max,):
            lower_values[str(i)] = [
                vals["drop3_lower_bound"],
                vals["drop3_lower_bound_num"],
                vals["drop3_lower_bound_den"],
            ]
        if i in (6, 7) and vals["drop3_lower_bound"] < 1:
            report.add_witness({"i": i, "drop3_lower_bound": vals["drop3_lower_bound"]})
        if i in expected_lower and vals["drop3_lower_bound"] != expected_lower[i]:
            report.add_witness({"i": i, "drop3_lower_bound": vals["drop3_lower_bound"]})
        if vals["bounds_conflict"] != (i >= 10):
            conflict_violations.append(i)
            report.add_witness({"i": i, "bounds_conflict": vals["bounds_conflict"]})
        if vals["jump4_feasible"]:
            jump4_holdings.append(i)
            report.add_witness({"i": i, "jump4_feasible": True})
    report.payload = {
        "drop3_lower_bounds": lower_values,
        "bounds_conflict_from": 10,
        "bounds_conflict_violations": conflict_violations[:MAX_WITNESSES],
        "jump4_feasible_at": jump4_holdings[:MAX_WITNESSES],
    }
    return _timed(report, t0)
