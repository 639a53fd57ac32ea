"""Vertices, neighborhoods and the adjacency operator of the Hamming graph H(n, q).

A vertex is a tuple of ``n`` digits in ``0..q-1``. Internally every vertex
also has a packed index: the base-q number whose most significant digit is
coordinate 1, so that index order and lexicographic order coincide. Integer
functions on the vertex set are flat numpy arrays in that order.

Coordinates are 1-based throughout, like the notation ``x^a_i`` and ``C_{x,i}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Tuple

import numpy as np

Vertex = Tuple[int, ...]

# bound on |entries| before int64 arithmetic switches to Python ints
_INT64_SAFE = 2**62


class ParameterError(ValueError):
    """Raised for inputs outside the domain of an operation."""


@dataclass(frozen=True)
class Params:
    """Parameters of H(n, q); ``q = 2`` is rejected."""

    n: int
    q: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.q, (int, np.integer)) or self.q < 3:
            raise ParameterError(f"unsupported alphabet: q must be >= 3, got {self.q!r}")

    @property
    def size(self) -> int:
        return self.q**self.n

    @property
    def degree(self) -> int:
        return self.n * (self.q - 1)

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.q,) * self.n

    def reduced(self) -> "Params":
        """H(n-1, q), the target of a coordinate projection."""
        if self.n < 2:
            raise ParameterError("coordinate projection needs n >= 2")
        return Params(self.n - 1, self.q)

    def check_vertex(self, x: Iterable[int]) -> Vertex:
        x = tuple(int(d) for d in x)
        if len(x) != self.n:
            raise ParameterError(f"vertex {x} has length {len(x)}, expected {self.n}")
        for d in x:
            if not 0 <= d < self.q:
                raise ParameterError(f"digit {d} of {x} out of range for q={self.q}")
        return x

    def check_coord(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise ParameterError(f"coordinate {i} out of range 1..{self.n}")
        return i

    def index(self, x: Vertex) -> int:
        idx = 0
        for d in x:
            idx = idx * self.q + d
        return idx

    def vertex(self, idx: int) -> Vertex:
        digits = []
        for _ in range(self.n):
            idx, d = divmod(idx, self.q)
            digits.append(d)
        return tuple(reversed(digits))

    def vertices(self) -> Iterator[Vertex]:
        """All vertices in lexicographic (= index) order."""
        return itertools.product(range(self.q), repeat=self.n)

    @cached_property
    def digits(self) -> np.ndarray:
        """``(q**n, n)`` array; row ``k`` holds the digits of vertex ``k``."""
        grids = np.indices(self.shape, dtype=np.int64).reshape(self.n, -1)
        return np.ascontiguousarray(grids.T)

    def digits_of(self, indices) -> np.ndarray:
        """Digit rows for selected packed indices."""
        idx = np.asarray(indices, dtype=np.int64)
        powers = self.q ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        return (idx[:, None] // powers[None, :]) % self.q

    def indices_of(self, words: Iterable[Vertex]) -> np.ndarray:
        return np.array(sorted(self.index(w) for w in words), dtype=np.int64)

    def indicator(self, words: Iterable[Vertex]) -> np.ndarray:
        h = np.zeros(self.size, dtype=np.int64)
        for w in words:
            h[self.index(w)] = 1
        return h

    def zero(self) -> Vertex:
        return (0,) * self.n

    def unit(self, i: int, a: int) -> Vertex:
        """The vertex ``e^a_i``: digit ``a`` at position ``i``, zeros elsewhere."""
        self.check_coord(i)
        x = [0] * self.n
        x[i - 1] = a % self.q
        return tuple(x)


# ---------------------------------------------------------------- metric


def distance(x: Vertex, y: Vertex) -> int:
    if len(x) != len(y):
        raise ParameterError(f"vertices {x} and {y} live in different graphs")
    return sum(a != b for a, b in zip(x, y))


def shift(x: Vertex, v: Vertex, q: int) -> Vertex:
    """Digitwise addition mod q (a graph automorphism for every q)."""
    return tuple((a + b) % q for a, b in zip(x, v))


def sphere(params: Params, x: Vertex, r: int) -> frozenset:
    x = params.check_vertex(x)
    if r < 0 or r > params.n:
        return frozenset()
    out = set()
    for coords in itertools.combinations(range(params.n), r):
        choices = [[d for d in range(params.q) if d != x[c]] for c in coords]
        for vals in itertools.product(*choices):
            y = list(x)
            for c, v in zip(coords, vals):
                y[c] = v
            out.add(tuple(y))
    return frozenset(out)


def ball(params: Params, x: Vertex, r: int = 1) -> frozenset:
    """Union of spheres ``0..r``; the whole graph when ``r >= n``."""
    out = set()
    for k in range(min(r, params.n) + 1):
        out |= sphere(params, x, k)
    return frozenset(out)


def line_clique(params: Params, x: Vertex, i: int) -> frozenset:
    """``{x + e^a_i : a in Z_q}``, the direction-i line through ``x``."""
    x = params.check_vertex(x)
    params.check_coord(i)
    return frozenset(x[: i - 1] + (a,) + x[i:] for a in range(params.q))


def fiber_clique(params: Params, x: Vertex, i: int) -> frozenset:
    """``{x^a_i : a in Z_q}`` in H(n+1, q) for ``x`` in H(n, q)."""
    x = params.check_vertex(x)
    if not 1 <= i <= params.n + 1:
        raise ParameterError(f"insertion position {i} out of range 1..{params.n + 1}")
    return frozenset(insert_coord(x, i, a) for a in range(params.q))


def cylinder(params: Params, x: Vertex, i: int) -> frozenset:
    """``C_{x,i}``: union of radius-1 balls centred on the direction-i line of ``x``."""
    out = set()
    for y in line_clique(params, x, i):
        out |= ball(params, y, 1)
    return frozenset(out)


def insert_coord(x: Vertex, i: int, a: int) -> Vertex:
    """``x^a_i``: place digit ``a`` so that it becomes coordinate ``i``."""
    if not 1 <= i <= len(x) + 1:
        raise ParameterError(f"insertion position {i} out of range 1..{len(x) + 1}")
    return tuple(x[: i - 1]) + (a,) + tuple(x[i - 1 :])


def delete_coord(x: Vertex, i: int) -> Vertex:
    if len(x) < 2:
        raise ParameterError("coordinate deletion needs n >= 2")
    if not 1 <= i <= len(x):
        raise ParameterError(f"coordinate {i} out of range 1..{len(x)}")
    return tuple(x[: i - 1]) + tuple(x[i:])


def project_set(words: Iterable[Vertex], i: int) -> frozenset:
    """The i-projection of a code: the image under deletion of coordinate ``i``."""
    return frozenset(delete_coord(w, i) for w in words)


# ---------------------------------------------------------------- pairs


@dataclass(frozen=True)
class SignedPair:
    """A candidate bitrade ``(T+, T-)``: two disjoint vertex sets of one graph."""

    params: Params
    plus: frozenset = field(default_factory=frozenset)
    minus: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        plus = frozenset(self.params.check_vertex(w) for w in self.plus)
        minus = frozenset(self.params.check_vertex(w) for w in self.minus)
        common = plus & minus
        if common:
            raise ParameterError(f"T+ and T- share {min(common)}")
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    @classmethod
    def from_function(cls, params: Params, f) -> "SignedPair":
        f = np.asarray(f)
        if f.shape != (params.size,):
            raise ParameterError(f"function has shape {f.shape}, expected ({params.size},)")
        bad = np.flatnonzero((f != 0) & (f != 1) & (f != -1))
        if bad.size:
            raise ParameterError(f"value {f[bad[0]]} at {params.vertex(int(bad[0]))} is not 0/+1/-1")
        plus = frozenset(params.vertex(int(k)) for k in np.flatnonzero(f == 1))
        minus = frozenset(params.vertex(int(k)) for k in np.flatnonzero(f == -1))
        return cls(params, plus, minus)

    @property
    def is_empty(self) -> bool:
        return not self.plus and not self.minus

    def sorted_plus(self) -> list:
        return sorted(self.plus)

    def sorted_minus(self) -> list:
        return sorted(self.minus)

    def sort_key(self):
        return (tuple(self.sorted_plus()), tuple(self.sorted_minus()))

    def characteristic(self) -> np.ndarray:
        """``1_{T+} - 1_{T-}`` as an int64 vector in index order."""
        return self.params.indicator(self.plus) - self.params.indicator(self.minus)

    def swapped(self) -> "SignedPair":
        return SignedPair(self.params, self.minus, self.plus)

    def shifted(self, v: Vertex) -> "SignedPair":
        q = self.params.q
        return SignedPair(
            self.params,
            frozenset(shift(w, v, q) for w in self.plus),
            frozenset(shift(w, v, q) for w in self.minus),
        )

    def permuted(self, perm) -> "SignedPair":
        """Move coordinate ``perm[k]`` (0-based) to position ``k``."""
        return SignedPair(
            self.params,
            frozenset(tuple(w[p] for p in perm) for w in self.plus),
            frozenset(tuple(w[p] for p in perm) for w in self.minus),
        )


def project_pair(pair: SignedPair, i: int) -> SignedPair:
    """The i-projection ``(A+ \\ A-, A- \\ A+)`` of a pair, living in H(n-1, q)."""
    params = pair.params
    if params.n < 2:
        raise ParameterError("pair projection needs n >= 2")
    params.check_coord(i)
    a_plus = project_set(pair.plus, i)
    a_minus = project_set(pair.minus, i)
    return SignedPair(params.reduced(), a_plus - a_minus, a_minus - a_plus)


# ---------------------------------------------------------------- operators


def _exact(params: Params, f, growth: int) -> np.ndarray:
    f = np.asarray(f)
    if f.shape != (params.size,):
        raise ParameterError(f"function has shape {f.shape}, expected ({params.size},)")
    if f.dtype == object:
        return f
    if f.dtype.kind not in "iub":
        raise ParameterError(f"integer function required, got dtype {f.dtype}")
    f = f.astype(np.int64)
    bound = int(np.abs(f).max()) if f.size else 0
    if bound * growth >= _INT64_SAFE:
        return np.array([int(v) for v in f], dtype=object)
    return f


def fiber_sum(params: Params, f, i: int) -> np.ndarray:
    """Sum of ``f`` over each fiber ``{x^a_i}``; a function on H(n-1, q)."""
    params.check_coord(i)
    f = _exact(params, f, params.q)
    return f.reshape(params.shape).sum(axis=i - 1).reshape(-1)


def adjacency_apply(params: Params, f) -> np.ndarray:
    """``(Af)(x) = sum of f(y) over neighbours y of x``, without forming A.

    Along each coordinate the neighbours of ``x`` are its line minus itself,
    so ``Af = sum_i (line sum along i) - n f``.
    """
    f = _exact(params, f, params.n * (params.q + 1) + 1)
    t = f.reshape(params.shape)
    out = -params.n * t
    for axis in range(params.n):
        out = out + t.sum(axis=axis, keepdims=True)
    return out.reshape(-1)


def sphere_counts(params: Params, h, r: int) -> np.ndarray:
    """``sum_{y in S_r(x)} h(y)`` for every ``x``, by inclusion-exclusion over
    the coordinate sets where ``y`` differs from ``x``."""
    h = _exact(params, h, 2**r * params.q**r)
    if r < 0 or r > params.n:
        return h * 0
    t = h.reshape(params.shape)
    total = t * 0
    for coords in itertools.combinations(range(params.n), r):
        for k in range(r + 1):
            sign = -1 if (r - k) % 2 else 1
            for sub in itertools.combinations(coords, k):
                term = t.sum(axis=sub, keepdims=True) if sub else t
                total = total + sign * term
    return total.reshape(-1)


def cylinder_counts(params: Params, h, i: int) -> np.ndarray:
    """``|C_{x,i} cap A|`` for every direction-i line, ``h`` the indicator of A.

    Lines are indexed by the projected word (digit ``i`` deleted), so the
    result lives on H(n-1, q). A vertex is in ``C_{x,i}`` iff its projection
    is within distance 1 of the projection of ``x``.
    """
    g = fiber_sum(params, h, i)
    if params.n == 1:
        return g
    return g + adjacency_apply(params.reduced(), g)


__all__ = [
    "Vertex",
    "ParameterError",
    "Params",
    "distance",
    "shift",
    "sphere",
    "ball",
    "line_clique",
    "fiber_clique",
    "cylinder",
    "insert_coord",
    "delete_coord",
    "project_set",
    "SignedPair",
    "project_pair",
    "fiber_sum",
    "adjacency_apply",
    "sphere_counts",
    "cylinder_counts",
]
