"""Parameter feasibility, brute-force enumeration and backtracking search.

An extended 1-perfect bitrade in H(n, q) can only exist if ``n`` is even and
``n = 2 (mod q)``. The brute-force enumerator is the ground truth on tiny
graphs; it counts cylinders from explicit vertex sets and shares no code
with :func:`bitrades.checkers.check_cylinder`.
"""

from __future__ import annotations

import itertools
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .checkers import Status, check_all
from .hamming import ParameterError, Params, SignedPair, cylinder, insert_coord

BRUTE_LIMIT = 12  # brute force needs q^n <= 12

# branch values; PLUS/MINUS double as indices into the per-sign counters
PLUS, MINUS, ZERO = 0, 1, None


@dataclass(frozen=True)
class Feasibility:
    ok: bool
    reason: str
    # n = l*q + 2 when feasible
    l: Optional[int] = None

    def __bool__(self):
        return self.ok


def feasible_params(n: int, q: int) -> Feasibility:
    if q < 3:
        raise ParameterError(f"unsupported alphabet: q must be >= 3, got {q}")
    if n % 2:
        return Feasibility(False, "n is odd")
    if n % q != 2 % q:
        return Feasibility(False, f"n is not 2 mod q ({n} mod {q} = {n % q})")
    ell = (n - 2) // q
    return Feasibility(True, f"n is even and n = l*q + 2 with l = {ell}", ell)


def _cylinder_matrix(params: Params) -> np.ndarray:
    """0/1 matrix, one row per distinct cylinder, one column per vertex."""
    rows = set()
    for i in range(1, params.n + 1):
        for rest in itertools.product(range(params.q), repeat=params.n - 1):
            x = insert_coord(rest, i, 0)
            rows.add(tuple(sorted(params.index(y) for y in cylinder(params, x, i))))
    m = np.zeros((len(rows), params.size), dtype=np.int64)
    for r, members in enumerate(sorted(rows)):
        m[r, list(members)] = 1
    return m


def brute_force_enumerate(params: Params) -> List[SignedPair]:
    """Every bitrade of H(n, q), found by trying all ``3^(q^n)`` sign vectors.

    H(1, q) has none by definition (the extended definitions start at n = 2).
    """
    if params.size > BRUTE_LIMIT:
        raise ParameterError(f"brute force needs q^n <= {BRUTE_LIMIT}, got {params.size}")
    if params.n < 2:
        return []
    m = _cylinder_matrix(params)
    out = []
    size = params.size
    # sign vectors in chunks, digit 0/1/2 meaning 0/+/-
    total = 3**size
    powers = 3 ** np.arange(size - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, 1 << 16):
        codes = np.arange(start, min(total, start + (1 << 16)), dtype=np.int64)
        digits = (codes[:, None] // powers[None, :]) % 3
        plus = (digits == 1).astype(np.int64)
        minus = (digits == 2).astype(np.int64)
        cp = plus @ m.T
        cm = minus @ m.T
        ok = np.all((cp == cm) & (cp <= 1), axis=1)
        ok &= plus.any(axis=1) & minus.any(axis=1)
        for row in np.flatnonzero(ok):
            f = plus[row] - minus[row]
            out.append(SignedPair.from_function(params, f))
    return sorted(out, key=SignedPair.sort_key)


@dataclass
class SearchConfig:
    params: Params
    max_support: Optional[int] = None
    budget_seconds: Optional[float] = None
    mode: str = "backtrack"
    fix_seed_vertex: bool = True
    # restrict nonzero values to these vertices; None means the whole graph
    region: Optional[frozenset] = None
    # return immediately when the parameter theorem rules existence out
    use_theorem: bool = True


@dataclass
class SearchResult:
    pairs: List[SignedPair]
    complete: bool
    reason: str = ""
    nodes: int = 0
    elapsed: float = 0.0
    stats: dict = field(default_factory=dict)


class _Budget(Exception):
    pass


def _cylinder_ids(params: Params) -> List[List[int]]:
    """For each vertex index, the ids of the cylinders containing it.

    Cylinder ``(i, line)`` gets id ``(i-1) * q^(n-1) + line``; a vertex is in
    it iff its projection along ``i`` is within distance 1 of ``line``.
    """
    n, q = params.n, params.q
    sub = params.reduced()
    per_dir = sub.size
    out = [[] for _ in range(params.size)]
    for k in range(params.size):
        x = params.vertex(k)
        for i in range(1, n + 1):
            y = x[: i - 1] + x[i:]
            base = (i - 1) * per_dir
            out[k].append(base + sub.index(y))
            for c in range(n - 1):
                for a in range(q):
                    if a != y[c]:
                        out[k].append(base + sub.index(y[:c] + (a,) + y[c + 1 :]))
    return out


def backtrack_search(cfg: SearchConfig) -> SearchResult:
    """Depth-first search over vertices in lexicographic order, values +, -, 0.

    A branch is cut when a cylinder holds two vertices of one sign (this also
    enforces code distance 4: two words at distance at most 3 share a
    cylinder), when a cylinder with no undecided vertex left is unbalanced,
    when a cylinder holding one sign has no undecided vertex left that can
    still take the other, or when the support exceeds ``max_support`` (at
    the cap, any unbalanced cylinder is already dead).
    With ``fix_seed_vertex`` only pairs with ``0...0`` in ``T+`` are emitted.
    """
    params = cfg.params
    t0 = time.monotonic()
    if cfg.mode == "brute":
        pairs = brute_force_enumerate(params)
        if cfg.fix_seed_vertex:
            pairs = [p for p in pairs if params.zero() in p.plus]
        if cfg.max_support is not None:
            pairs = [p for p in pairs if len(p.plus) + len(p.minus) <= cfg.max_support]
        return SearchResult(pairs, True, "brute force", elapsed=time.monotonic() - t0)
    if cfg.mode != "backtrack":
        raise ParameterError(f"unknown search mode {cfg.mode!r}")
    if params.n < 2:
        return SearchResult([], True, "extended bitrades need n >= 2")
    feas = feasible_params(params.n, params.q)
    if not feas and cfg.use_theorem:
        return SearchResult([], True, f"infeasible parameters: {feas.reason}")

    if cfg.region is None:
        order = list(range(params.size))
    else:
        order = sorted(params.index(params.check_vertex(w)) for w in cfg.region)
    if cfg.fix_seed_vertex and (not order or order[0] != 0):
        return SearchResult([], True, "seed vertex 0...0 is outside the search region")

    cyl_of = _cylinder_ids(params)
    ncyl = params.n * params.reduced().size
    # undecided candidate members per cylinder
    remaining = np.zeros(ncyl, dtype=np.int64)
    for k in order:
        for c in cyl_of[k]:
            remaining[c] += 1
    remaining = remaining.tolist()
    cnt = [[0] * ncyl, [0] * ncyl]
    # blocked[s][k] > 0: vertex k cannot take sign s (a cylinder already has one)
    blocked = [[0] * params.size, [0] * params.size]
    members = [[] for _ in range(ncyl)]
    for k in order:
        for c in cyl_of[k]:
            members[c].append(k)
    pos_of = {k: p for p, k in enumerate(order)}

    assign = {}
    found: List[SignedPair] = []
    nodes = 0
    limit = cfg.max_support
    deadline = None if cfg.budget_seconds is None else t0 + cfg.budget_seconds

    def viable(c: int, depth: int, full: bool) -> bool:
        p, m = cnt[0][c], cnt[1][c]
        if p == m:
            return True
        if remaining[c] == 0 or full:
            return False
        need = 1 if p > m else 0
        for k in members[c]:
            if pos_of[k] > depth and not blocked[need][k]:
                return True
        return False

    def place(k: int, s: int):
        for c in cyl_of[k]:
            cnt[s][c] += 1
            for y in members[c]:
                blocked[s][y] += 1

    def unplace(k: int, s: int):
        for c in cyl_of[k]:
            cnt[s][c] -= 1
            for y in members[c]:
                blocked[s][y] -= 1

    def emit():
        f = np.zeros(params.size, dtype=np.int64)
        for k, s in assign.items():
            f[k] = 1 if s == PLUS else -1
        pair = SignedPair.from_function(params, f)
        report = check_all(pair)
        assert report.status is Status.PASS, report
        found.append(pair)

    def dfs(depth: int, support: int):
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes % 256 == 0 and time.monotonic() > deadline:
            raise _Budget
        if depth == len(order):
            if MINUS in assign.values():
                emit()
            return
        k = order[depth]
        choices = (PLUS,) if (cfg.fix_seed_vertex and depth == 0) else (PLUS, MINUS, ZERO)
        for s in choices:
            if s is not None:
                if blocked[s][k] or (limit is not None and support + 1 > limit):
                    continue
                place(k, s)
                assign[k] = s
            for c in cyl_of[k]:
                remaining[c] -= 1
            used = support + (s is not None)
            full = limit is not None and used >= limit
            if all(viable(c, depth, full) for c in cyl_of[k]):
                dfs(depth + 1, used)
            for c in cyl_of[k]:
                remaining[c] += 1
            if s is not None:
                del assign[k]
                unplace(k, s)

    complete = True
    reason = "search space exhausted"
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, len(order) + 1000))
    try:
        dfs(0, 0)
    except _Budget:
        complete = False
        reason = f"budget of {cfg.budget_seconds}s exhausted"
    finally:
        sys.setrecursionlimit(old_limit)
    found.sort(key=SignedPair.sort_key)
    if not feas and found:
        raise AssertionError(f"found bitrades despite {feas.reason}")
    return SearchResult(found, complete, reason, nodes, time.monotonic() - t0)


def expand_translations(pairs, params: Params) -> List[SignedPair]:
    """Close a list of pairs under digitwise translation mod q."""
    out = set()
    for p in pairs:
        for v in params.vertices():
            out.add(p.shifted(v))
    return sorted(out, key=SignedPair.sort_key)


__all__ = [
    "BRUTE_LIMIT",
    "Feasibility",
    "feasible_params",
    "brute_force_enumerate",
    "SearchConfig",
    "SearchResult",
    "backtrack_search",
    "expand_translations",
]
