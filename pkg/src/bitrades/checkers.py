"""Decision procedures for extended 1-perfect bitrades, one per definition.

Each checker takes a :class:`~bitrades.hamming.SignedPair` ``(T+, T-)`` in
H(n, q) and returns a :class:`Verdict`. With ``f = 1_{T+} - 1_{T-}``:

``matrix``
    There is a ``q^n x 3`` matrix ``F = [F1 F2 F3]`` with ``F1 = f``, every
    row summing to 0 with at most two nonzero entries, and ``AF = FS`` for

        S = [[0, n(q-1),  0         ],
             [1, q-2,     (n-1)(q-1)],
             [0, n,       n(q-2)    ]].

    The existential quantifier collapses. The first column of ``AF = FS``
    reads ``A F1 = F2``, so ``F2 = Af``; zero row sums force
    ``F3 = -f - Af``. Substituting both into the second column gives

        A^2 f = n(q-1) f + (q-2) Af - n (f + Af)
        <=>  (A - (q-2) I)(A + n I) f = 0,

    and the third column, ``-Af - A^2 f = (n-1)(q-1) Af - n(q-2)(f + Af)``,
    is the same identity. So the check is: that polynomial kills ``f``, and
    every row ``(f(x), Af(x), -f(x) - Af(x))`` has at most two nonzeros,
    i.e. ``Af(x)`` is ``0`` or ``-f(x)`` wherever ``f(x) != 0``. The forced
    ``F`` is returned as the witness and ``AF = FS`` is re-verified on it.

    Taken literally this condition is weaker than the other four: in H(2,3)
    the pair ``T+ = {11, 12}``, ``T- = {21, 22}`` satisfies it although both
    components have distance 1. Showing that the matrix condition implies
    the others needs both components to have code distance 4, so that
    requirement is checked here as well; ``check_matrix(pair, literal=True)``
    drops it.

``projection``
    Both components have code distance at least 4 and every coordinate
    projection ``(A+ \\ A-, A- \\ A+)`` is a perfect bitrade in H(n-1, q).
    The pair lives in H(n,q) and each projection lands in H(n-1,q). The
    dimension bookkeeping is sometimes written one step higher (a pair in
    H(n+1,q) projecting to H(n,q)); the two readings are the same
    condition.

``weight``
    ``w+(x) = w-(x) <= 1`` for every vertex, with
    ``w_A(x) = |S0(x)&A| + |S1(x)&A| + (2/n)|S2(x)&A|``. Compared as the
    integers ``n w_A(x)``. This is a condition on pairs, so it is used as a
    bitrade definition even where it is phrased as a property of codes.

``spectral``
    Code distance at least 4 and ``f`` in ``U(-n) + U(q-2)``. When ``q-2`` is
    not an eigenvalue (``n != 2 mod q``) only ``U(-n)`` is available and
    the verdict says so.

``cylinder``
    ``|C_{x,i} & T+| = |C_{x,i} & T-| <= 1`` for every cylinder.

All five are equivalent for n >= 2; :func:`check_all` enforces that.
The extended definitions are not defined for n = 1 (the projection
definition has nowhere to project), and there the local conditions would
accept every ``({u}, {v})``, so the extended checkers reject n = 1 as a
parameter error. Empty pairs satisfy every condition vacuously and get the
separate ``degenerate`` status. :func:`check_perfect` (the 1-perfect
bitrade condition on radius-1 balls) accepts the empty pair, since
projections of bitrades may be empty.

Counterexamples are lexicographically first: smallest vertex, then smallest
coordinate.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from .codes import min_distance
from .hamming import (
    ParameterError,
    Params,
    SignedPair,
    Vertex,
    adjacency_apply,
    cylinder_counts,
    insert_coord,
    project_pair,
    sphere,
    sphere_counts,
)
from .spectral import apply_polynomial, eigen_index_for

log = logging.getLogger(__name__)

DEFINITIONS = ("matrix", "projection", "weight", "spectral", "cylinder")


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    DEGENERATE = "degenerate"


class EquivalenceViolation(AssertionError):
    """The five checkers disagreed on one pair: an implementation bug."""


@dataclass(frozen=True)
class Counterexample:
    vertex: Vertex
    coord: Optional[int]
    description: str


@dataclass(frozen=True)
class WitnessMatrix:
    params: Params
    columns: Tuple[np.ndarray, np.ndarray, np.ndarray] = field(repr=False)

    @property
    def S(self) -> np.ndarray:
        return s_matrix(self.params)

    def as_array(self) -> np.ndarray:
        """The ``q^n x 3`` matrix, rows in vertex order."""
        return np.stack(self.columns, axis=1)

    def row(self, x: Vertex) -> Tuple[int, int, int]:
        k = self.params.index(x)
        return tuple(int(c[k]) for c in self.columns)


@dataclass(frozen=True)
class Verdict:
    definition: str
    status: Status
    counterexample: Optional[Counterexample] = None
    witness: Optional[WitnessMatrix] = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def __post_init__(self):
        if self.status is Status.FAIL and self.counterexample is None:
            raise ValueError("a failing verdict needs a counterexample")


@dataclass(frozen=True)
class Report:
    pair: SignedPair = field(repr=False)
    verdicts: Dict[str, Verdict]
    agreement: bool

    @property
    def status(self) -> Status:
        statuses = {v.status for v in self.verdicts.values()}
        if Status.FAIL in statuses:
            return Status.FAIL
        if statuses == {Status.DEGENERATE}:
            return Status.DEGENERATE
        return Status.PASS


def s_matrix(params: Params) -> np.ndarray:
    n, q = params.n, params.q
    return np.array(
        [[0, n * (q - 1), 0], [1, q - 2, (n - 1) * (q - 1)], [0, n, n * (q - 2)]],
        dtype=np.int64,
    )


# ---------------------------------------------------------------- helpers


def _require_extended(pair: SignedPair):
    if pair.params.n < 2:
        raise ParameterError("extended bitrade definitions need n >= 2")


def _degenerate(name: str) -> Verdict:
    return Verdict(name, Status.DEGENERATE, reason="empty pair")


def _first_vertex(params: Params, bad: np.ndarray) -> Optional[Vertex]:
    hits = np.flatnonzero(bad)
    return params.vertex(int(hits[0])) if hits.size else None


def _close_pair(words) -> Optional[Tuple[Vertex, Vertex, int]]:
    """Lexicographically first pair of words at distance below 4."""
    if min_distance(words) >= 4:
        return None
    ordered = sorted(words)
    arr = np.array(ordered, dtype=np.int64)
    for a in range(len(arr)):
        d = (arr[a + 1 :] != arr[a]).sum(axis=1)
        close = np.flatnonzero(d < 4)
        if close.size:
            b = a + 1 + int(close[0])
            return ordered[a], ordered[b], int(d[close[0]])
    raise AssertionError("unreachable")


def _distance_violation(pair: SignedPair) -> Optional[Counterexample]:
    found = []
    for label, words in (("T+", pair.plus), ("T-", pair.minus)):
        hit = _close_pair(words)
        if hit is not None:
            u, w, d = hit
            found.append((u, w, f"d({_fmt(u)},{_fmt(w)})={d} < 4 in {label}"))
    if not found:
        return None
    u, _, desc = min(found)
    return Counterexample(u, None, desc)


def _fmt(x: Vertex) -> str:
    if all(d < 10 for d in x):
        return "".join(str(d) for d in x)
    return ",".join(str(d) for d in x)


def scaled_weight(params: Params, words, x: Vertex) -> int:
    """``n * w_A(x)`` counted directly on the spheres of radius 0, 1, 2."""
    words = frozenset(words)
    n = params.n
    s0, s1, s2 = (len(sphere(params, x, r) & words) for r in range(3))
    return n * s0 + n * s1 + 2 * s2


def scaled_weights(params: Params, h) -> np.ndarray:
    """``n * w_A`` at every vertex, ``h`` the indicator of ``A``."""
    h = np.asarray(h, dtype=np.int64)
    n = params.n
    return n * h + n * sphere_counts(params, h, 1) + 2 * sphere_counts(params, h, 2)


# ---------------------------------------------------------------- checkers


def check_perfect(pair: SignedPair) -> Verdict:
    """``|B(x) & T+| = |B(x) & T-| <= 1`` for every vertex ``x``."""
    params = pair.params
    hp, hm = params.indicator(pair.plus), params.indicator(pair.minus)
    bp = hp + adjacency_apply(params, hp)
    bm = hm + adjacency_apply(params, hm)
    x = _first_vertex(params, (bp != bm) | (bp > 1))
    if x is None:
        return Verdict("perfect", Status.PASS)
    k = params.index(x)
    desc = f"|B(x)&T+|={bp[k]}, |B(x)&T-|={bm[k]}"
    return Verdict("perfect", Status.FAIL, Counterexample(x, None, desc))


def check_weight(pair: SignedPair) -> Verdict:
    _require_extended(pair)
    if pair.is_empty:
        return _degenerate("weight")
    params = pair.params
    n = params.n
    wp = scaled_weights(params, params.indicator(pair.plus))
    wm = scaled_weights(params, params.indicator(pair.minus))
    x = _first_vertex(params, (wp != wm) | (wp > n))
    if x is None:
        return Verdict("weight", Status.PASS)
    k = params.index(x)
    desc = f"n*w+={wp[k]}, n*w-={wm[k]} (n={n})"
    return Verdict("weight", Status.FAIL, Counterexample(x, None, desc))


def check_cylinder(pair: SignedPair) -> Verdict:
    _require_extended(pair)
    if pair.is_empty:
        return _degenerate("cylinder")
    params = pair.params
    sub = params.reduced()
    hp, hm = params.indicator(pair.plus), params.indicator(pair.minus)
    failures = []
    for i in range(1, params.n + 1):
        cp = cylinder_counts(params, hp, i)
        cm = cylinder_counts(params, hm, i)
        bad = np.flatnonzero((cp != cm) | (cp > 1))
        if bad.size:
            # the line representative has digit 0 at position i
            reps = [(insert_coord(sub.vertex(int(k)), i, 0), int(k)) for k in bad]
            x, k = min(reps)
            failures.append((x, i, f"|C&T+|={cp[k]}, |C&T-|={cm[k]}"))
    if not failures:
        return Verdict("cylinder", Status.PASS)
    x, i, desc = min(failures)
    return Verdict("cylinder", Status.FAIL, Counterexample(x, i, desc))


def check_projection(pair: SignedPair) -> Verdict:
    _require_extended(pair)
    if pair.is_empty:
        return _degenerate("projection")
    cex = _distance_violation(pair)
    if cex is not None:
        return Verdict("projection", Status.FAIL, cex, reason="code distance")
    for i in range(1, pair.params.n + 1):
        v = check_perfect(project_pair(pair, i))
        if not v.passed:
            c = v.counterexample
            desc = f"{i}-projection is not a perfect bitrade at {_fmt(c.vertex)}: {c.description}"
            return Verdict("projection", Status.FAIL, Counterexample(c.vertex, i, desc))
    return Verdict("projection", Status.PASS)


def check_spectral(pair: SignedPair) -> Verdict:
    _require_extended(pair)
    if pair.is_empty:
        return _degenerate("spectral")
    params = pair.params
    n, q = params.n, params.q
    cex = _distance_violation(pair)
    if cex is not None:
        return Verdict("spectral", Status.FAIL, cex, reason="code distance")
    f = pair.characteristic()
    if eigen_index_for(params, q - 2) is None:
        g = apply_polynomial(params, f, [-n])
        reason = f"parameter-infeasible: q-2={q - 2} is not an eigenvalue of H({n},{q})"
    else:
        g = apply_polynomial(params, f, [q - 2, -n])
        reason = "nonzero component outside U(-n) + U(q-2)"
    x = _first_vertex(params, g != 0)
    if x is None:
        return Verdict("spectral", Status.PASS)
    k = params.index(x)
    desc = f"{reason}; annihilator value {g[k]}"
    return Verdict("spectral", Status.FAIL, Counterexample(x, None, desc), reason=reason)


def forced_witness(pair: SignedPair) -> WitnessMatrix:
    """The only candidate ``F``: ``(f, Af, -f - Af)``."""
    params = pair.params
    f = pair.characteristic()
    af = adjacency_apply(params, f)
    return WitnessMatrix(params, (f, af, -f - af))


def check_matrix(pair: SignedPair, literal: bool = False) -> Verdict:
    _require_extended(pair)
    if pair.is_empty:
        return _degenerate("matrix")
    if not literal:
        cex = _distance_violation(pair)
        if cex is not None:
            return Verdict("matrix", Status.FAIL, cex, reason="code distance")
    params = pair.params
    w = forced_witness(pair)
    F = w.as_array()
    AF = np.stack([adjacency_apply(params, c) for c in w.columns], axis=1)
    residual = AF - F @ s_matrix(params)
    equation_bad = np.any(residual != 0, axis=1)
    rows_bad = (F != 0).sum(axis=1) > 2
    x = _first_vertex(params, equation_bad | rows_bad)
    if x is None:
        return Verdict("matrix", Status.PASS, witness=w)
    k = params.index(x)
    row = tuple(int(v) for v in F[k])
    if rows_bad[k]:
        desc = f"forced row {row} has 3 nonzero entries"
    else:
        desc = f"AF=FS fails in row {row}: residual {tuple(int(v) for v in residual[k])}"
    return Verdict("matrix", Status.FAIL, Counterexample(x, None, desc))


CHECKERS = {
    "matrix": check_matrix,
    "projection": check_projection,
    "weight": check_weight,
    "spectral": check_spectral,
    "cylinder": check_cylinder,
}


def check(pair: SignedPair, definition: str) -> Verdict:
    if definition == "perfect":
        return check_perfect(pair)
    try:
        return CHECKERS[definition](pair)
    except KeyError:
        raise ParameterError(f"unknown definition {definition!r}") from None


def check_all(pair: SignedPair, strict: bool = True) -> Report:
    """Run all five checkers; with ``strict`` a disagreement raises."""
    verdicts = {name: fn(pair) for name, fn in CHECKERS.items()}
    agreement = len({v.status for v in verdicts.values()}) == 1
    report = Report(pair, verdicts, agreement)
    if not agreement:
        summary = ", ".join(f"{k}={v.status.value}" for k, v in verdicts.items())
        log.error("checkers disagree: %s", summary)
        if strict:
            raise EquivalenceViolation(summary)
    return report


__all__ = [
    "DEFINITIONS",
    "Status",
    "EquivalenceViolation",
    "Counterexample",
    "WitnessMatrix",
    "Verdict",
    "Report",
    "s_matrix",
    "scaled_weight",
    "scaled_weights",
    "check_perfect",
    "check_weight",
    "check_cylinder",
    "check_projection",
    "check_spectral",
    "forced_witness",
    "check_matrix",
    "CHECKERS",
    "check",
    "check_all",
]
