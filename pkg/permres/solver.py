"""Exact permutation resemblance.

pres(f) is the least k for which some k-element shift set C admits g with im g = C
and g + f bijective.  For fixed C that is a perfect matching problem: x may be sent
to y exactly when y = c + f(x) for some c in C.  Shift sets are enumerated with 0
pinned (left translation keeps feasibility), in lexicographic order, k ascending.
"""

import asyncio
import logging
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from itertools import permutations

import numpy as np

from permres.algebra import FuncTable
from permres.config import (
    DEFAULT_JOBS, ENUMERATE_KEEP, ORACLE_MAX_Q, PARALLEL_BATCH,
    SOLVER_MAX_Q, SOLVER_MAX_SETS, SOLVER_TIME_LIMIT,
)
from permres.errors import ConventionError, DomainError, ensure
from permres.functions import pres_bounds
from permres.models import PresCertificate, SearchLevel

log = logging.getLogger(__name__)


def check_shift_set(C, q: int) -> tuple[int, ...]:
    C = tuple(int(c) for c in C)
    if not C or C[0] != 0:
        raise DomainError(f"shift set must start with 0: {list(C)}")
    if any(b <= a for a, b in zip(C, C[1:])):
        raise DomainError(f"shift set must be strictly increasing: {list(C)}")
    if C[-1] >= q:
        raise DomainError(f"shift {C[-1]} is not an element of a group of order {q}")
    return C


def perfect_matching(adj: list[list[int]], n: int) -> list[int] | None:
    """match[x] = y for a perfect matching of left 0..n-1 into right 0..n-1, or None.

    Augmenting paths are grown breadth first from each left vertex in turn, scanning
    neighbours in the given order, so the result depends only on `adj`.
    """
    match_left = [-1] * n
    match_right = [-1] * n
    for u in range(n):
        prev = {}
        queue = deque([u])
        free = -1
        while queue and free < 0:
            x = queue.popleft()
            for y in adj[x]:
                if y in prev:
                    continue
                prev[y] = x
                if match_right[y] < 0:
                    free = y
                    break
                queue.append(match_right[y])
        if free < 0:
            return None
        y = free
        while True:
            x = prev[y]
            nxt = match_left[x]
            match_left[x] = y
            match_right[y] = x
            if x == u:
                break
            y = nxt
    return match_left


def _witness(add, neg, values, C) -> list[int] | None:
    # add/neg may be numpy tables or nested lists
    n = len(values)
    adj = [[int(add[c][fx]) for c in C] for fx in values]
    match = perfect_matching(adj, n)
    if match is None:
        return None
    return [int(add[y][neg[fx]]) for y, fx in zip(match, values)]


def feasible_shift_set(f: FuncTable, C) -> FuncTable | None:
    """g with im g within C and g + f a permutation, if one exists."""
    G = f.group
    C = check_shift_set(C, G.order)
    g = _witness(G.add, G.neg, f.values.tolist(), C)
    return None if g is None else FuncTable(G, g)


class _ShiftSearch:
    """Depth-first enumeration of shift sets containing 0, in lexicographic order.

    A prefix is cut when it cannot reach a full cover of G, or when two preimage
    classes b_i, b_j already overlap too much: their targets C + b_i and C + b_j
    must jointly supply m_i + m_j distinct points, so #{c : c + (b_i - b_j) in C}
    may not exceed 2k - m_i - m_j.
    """

    def __init__(self, add, neg, values, deadline: float | None):
        self.add = np.asarray(add)
        self.neg = np.asarray(neg)
        self.values = [int(v) for v in values]
        self.q = len(self.values)
        self.deadline = deadline
        counts: dict[int, int] = {}
        for b in self.values:
            counts[b] = counts.get(b, 0) + 1
        self.classes = sorted(counts.items())
        q = self.q
        self.full = (1 << q) - 1
        self.cover = [0] * q
        for c in range(q):
            m = 0
            for b, _ in self.classes:
                m |= 1 << int(self.add[c, b])
            self.cover[c] = m
        self.suffix = [0] * (q + 1)
        for c in range(q - 1, -1, -1):
            self.suffix[c] = self.suffix[c + 1] | self.cover[c]
        self.plus = self.add.tolist()
        self.minus_table = self.neg.tolist()

    def _budgets(self, k: int) -> list[tuple[int, int]]:
        # tightest overlap budget per class difference d; differences whose
        # budget is at least k can never be exceeded
        budget: dict[int, int] = {}
        for i, (bi, mi) in enumerate(self.classes):
            for bj, mj in self.classes[i + 1:]:
                room = 2 * k - mi - mj
                if room >= k:
                    continue
                # the count for -d always equals the count for d
                d = int(self.add[bi, self.neg[bj]])
                budget[d] = min(budget.get(d, k), room)
        return sorted(budget.items())

    def run(self, k: int, prefix: tuple[int, ...], stop_at_first: bool,
            keep: int, max_sets: int):
        """Search sets of size k extending `prefix`; returns a result dict."""
        plus = self.plus
        q = self.q
        checks = self._budgets(k)
        inverse = {d: int(self.neg[d]) for d, _ in checks}
        state = {"sets": 0, "pruned": 0, "found": [], "count": 0,
                 "exhausted": True, "witness": None}

        def overlaps_ok(mask, counts, c):
            new = []
            for (d, room), cnt in zip(checks, counts):
                if (mask >> plus[c][d]) & 1:
                    cnt += 1
                if (mask >> plus[c][inverse[d]]) & 1:
                    cnt += 1
                if cnt > room:
                    return None
                new.append(cnt)
            return new

        def leaf(chosen):
            state["sets"] += 1
            g = _witness(plus, self.minus_table, self.values, chosen)
            if g is None:
                return False
            state["count"] += 1
            if len(state["found"]) < keep:
                state["found"].append(tuple(chosen))
            if state["witness"] is None:
                state["witness"] = g
            return True

        def dfs(chosen, mask, cov, counts) -> bool:
            if len(chosen) == k:
                if cov != self.full:
                    state["pruned"] += 1
                    return False
                hit = leaf(chosen)
                return hit and stop_at_first
            if state["sets"] >= max_sets or (
                    self.deadline is not None and time.monotonic() > self.deadline):
                state["exhausted"] = False
                return True
            need = k - len(chosen)
            for c in range(chosen[-1] + 1, q - need + 1):
                if (cov | self.suffix[c]) != self.full:
                    state["pruned"] += 1
                    break
                new_counts = overlaps_ok(mask, counts, c)
                if new_counts is None:
                    state["pruned"] += 1
                    continue
                chosen.append(c)
                stop = dfs(chosen, mask | (1 << c), cov | self.cover[c], new_counts)
                chosen.pop()
                if stop:
                    return True
            return False

        mask, cov, counts = 0, 0, [0] * len(checks)
        chosen: list[int] = []
        for c in prefix:
            counts = overlaps_ok(mask, counts, c)
            if counts is None:
                state["pruned"] += 1
                return state
            chosen.append(c)
            mask |= 1 << c
            cov |= self.cover[c]
        if len(chosen) == k:
            if max_sets <= 0:
                state["exhausted"] = False
            elif cov == self.full:
                leaf(chosen)
            else:
                state["pruned"] += 1
        else:
            dfs(chosen, mask, cov, counts)
        return state


def _search_branch(add, neg, values, k, prefix, stop_at_first, keep, max_sets, deadline):
    return _ShiftSearch(add, neg, values, deadline).run(k, prefix, stop_at_first, keep, max_sets)


def _branches(k: int, q: int) -> list[tuple[int, ...]]:
    if k == 1:
        return [(0,)]
    return [(0, c) for c in range(1, q - k + 2)]


async def _gather_branches(jobs: int, calls, stop_at_first: bool):
    loop = asyncio.get_running_loop()
    results = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for i in range(0, len(calls), PARALLEL_BATCH):
            batch = calls[i:i + PARALLEL_BATCH]
            futures = [loop.run_in_executor(pool, _search_branch, *args) for args in batch]
            results.extend(await asyncio.gather(*futures))
            if stop_at_first and any(r["witness"] is not None for r in results):
                break
    return results


def _search_level(f: FuncTable, k: int, stop_at_first: bool, keep: int,
                  max_sets: int, deadline: float | None, jobs: int) -> dict:
    """Run every branch at size k and merge them in branch (= lexicographic) order."""
    G = f.group
    add, neg, values = G.add, G.neg, f.values.tolist()
    branches = _branches(k, G.order)
    merged = {"sets": 0, "pruned": 0, "found": [], "count": 0,
              "exhausted": True, "witness": None, "shifts": None}

    def absorb(res) -> bool:
        merged["sets"] += res["sets"]
        merged["pruned"] += res["pruned"]
        merged["count"] += res["count"]
        merged["found"].extend(res["found"][:max(0, keep - len(merged["found"]))])
        if res["witness"] is not None and merged["witness"] is None:
            merged["witness"] = res["witness"]
            merged["shifts"] = res["found"][0]
        if not res["exhausted"]:
            merged["exhausted"] = False
        return (stop_at_first and merged["witness"] is not None) or not merged["exhausted"]

    if jobs > 1 and len(branches) > 1:
        calls = [(add, neg, values, k, b, stop_at_first, max(keep, 1), max_sets, deadline)
                 for b in branches]
        for res in asyncio.run(_gather_branches(jobs, calls, stop_at_first)):
            if absorb(res):
                break
    else:
        search = _ShiftSearch(add, neg, values, deadline)
        for b in branches:
            remaining = max_sets - merged["sets"]
            res = search.run(k, b, stop_at_first, max(keep, 1), remaining)
            if absorb(res):
                break
    return merged


def pres_exact(f: FuncTable, max_k: int | None = None, jobs: int | None = None,
               enumerate_all_optimal: bool = False, max_sets: int | None = None,
               time_limit: float | None = None, max_q: int | None = None,
               acknowledge_convention: bool = False, keep: int | None = None) -> PresCertificate:
    G = f.group
    q = G.order
    if not G.is_abelian and not acknowledge_convention:
        raise ConventionError(f"{G.spec} is nonabelian; pass acknowledge_convention=True")
    if q > (max_q or SOLVER_MAX_Q):
        raise DomainError(f"exact search is limited to q <= {max_q or SOLVER_MAX_Q}, got {q}")
    if max_k is not None and max_k < 1:
        raise DomainError(f"max_k must be positive, got {max_k}")
    jobs = jobs or DEFAULT_JOBS
    max_sets = SOLVER_MAX_SETS if max_sets is None else max_sets
    time_limit = SOLVER_TIME_LIMIT if time_limit is None else time_limit
    if time_limit < 0:
        raise DomainError(f"time_limit must be >= 0 seconds, got {time_limit}")
    # 0 disables the wall-clock budget
    deadline = time.monotonic() + time_limit if time_limit > 0 else None

    bounds = pres_bounds(f)
    lower, upper = max(1, bounds.lower), bounds.upper
    top = upper if max_k is None else min(upper, max_k)
    cert = PresCertificate(pres=None, method="matching-search", lower=lower, upper=upper,
                           max_sets=max_sets, time_limit=time_limit)
    used = 0
    for k in range(lower, top + 1):
        level = _search_level(f, k, not enumerate_all_optimal, keep or ENUMERATE_KEEP,
                              max_sets - used, deadline, jobs)
        used += level["sets"]
        log.info("k=%d: %d shift sets tested, %d prefixes pruned%s", k, level["sets"],
                 level["pruned"], ", feasible" if level["witness"] else "")
        if level["witness"] is not None:
            cert.pres = k
            cert.shifts = list(level["shifts"])
            cert.g = level["witness"]
            if enumerate_all_optimal:
                cert.optimal_count = level["count"]
                if not level["exhausted"]:
                    cert.note = "budget hit while enumerating optimal shift sets; count is partial"
                cert.optimal_shifts = [list(s) for s in level["found"]]
            break
        cert.searched.append(SearchLevel(k=k, sets=level["sets"], pruned=level["pruned"],
                                         exhausted=level["exhausted"]))
        if not level["exhausted"]:
            cert.status = "bound-limited"
            cert.lower = k
            cert.note = "solver budget exhausted"
            log.warning("Budget exhausted at k=%d for %s; pres >= %d", k, G.spec, k)
            return cert
        cert.lower = k + 1
    else:
        ensure(top < upper, f"no feasible shift set of size <= q - V(f) + 1 = {upper}")
        cert.status = "bound-limited"
        cert.note = f"no feasible shift set up to max_k={top}"
        log.warning("No feasible shift set up to k=%d; pres > %d", top, top)
        return cert

    cert.lower = cert.pres
    verify_certificate(f, cert)
    return cert


def verify_certificate(f: FuncTable, cert: PresCertificate):
    G = f.group
    g = FuncTable(G, cert.g)
    ensure((g + f).is_permutation(), "certificate witness does not make g + f a permutation")
    ensure(g.image_size() == cert.pres, f"witness has {g.image_size()} values, pres is {cert.pres}")
    ensure(g.image() == sorted(cert.shifts), "witness image differs from its shift set")
    ensure(all(level.k < cert.pres and level.exhausted for level in cert.searched),
           "searched levels must be exhaustive and below pres")
    cert.verified = True


def pres_oracle_bruteforce(f: FuncTable) -> int:
    """min V(f - h) over all q! permutations h."""
    G = f.group
    q = G.order
    if q > ORACLE_MAX_Q:
        raise DomainError(f"brute-force oracle is limited to q <= {ORACLE_MAX_Q}, got {q}")
    sub = [[int(G.add[a, G.neg[b]]) for b in range(q)] for a in range(q)]
    fx = f.tolist()
    floor = int(f.counts().max())
    best = q
    for h in permutations(range(q)):
        v = len({sub[a][b] for a, b in zip(fx, h)})
        if v < best:
            best = v
            if best == floor:
                break
    return best


def construct_upper_bound_g(f: FuncTable) -> FuncTable:
    """One representative per preimage class goes to 0; the rest are paired with
    the points outside im f, both in ascending code order."""
    G = f.group
    g = [0] * G.order
    reps = {members[0] for members in f.preimages().values()}
    rest = [x for x in G.elements() if x not in reps]
    image = set(f.image())
    missing = [y for y in G.elements() if y not in image]
    for x, y in zip(rest, missing):
        g[x] = G.minus(y, f[x])
    g = FuncTable(G, g)
    ensure((g + f).is_permutation(), "constructed g + f is not a permutation")
    ensure(g.image_size() <= G.order - f.image_size() + 1, "constructed g exceeds q - V(f) + 1 values")
    return g


def normalize_witness(g: FuncTable, c: int | None = None) -> FuncTable:
    """Left-translate g so that its image contains 0 (by -min im g unless `c` is given)."""
    G = g.group
    image = g.image()
    c = image[0] if c is None else c
    if c not in image:
        raise DomainError(f"{c} is not a value of the witness; choose from {image}")
    return FuncTable(G, G.add[G.neg[c], g.values])
