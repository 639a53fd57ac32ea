"""Finite fields and the linear codes that supply bitrades.

GF(2^k) elements are the integers ``0..2^k-1`` read as polynomials over GF(2)
(bit ``j`` is the coefficient of ``x^j``). Addition is XOR and multiplication
goes through log/antilog tables generated by ``x`` modulo a pinned primitive
polynomial, so every codeword set built here is reproducible bit for bit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .hamming import ParameterError, Params, SignedPair, Vertex, cylinder_counts

# x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1, x^6+x+1, x^7+x^3+1, x^8+x^4+x^3+x^2+1
MODULI = {
    4: 0b111,
    8: 0b1011,
    16: 0b10011,
    32: 0b100101,
    64: 0b1000011,
    128: 0b10001001,
    256: 0b100011101,
}

INFINITY = math.inf

# enumerating more codewords than this is refused
MAX_WORDS = 5 * 10**6


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, math.isqrt(q) + 1))


class GF:
    """The field with ``q`` elements, ``q`` prime or ``2^k`` with ``k <= 8``."""

    def __init__(self, q: int):
        if _is_prime(q):
            self.modulus = None
        elif q in MODULI:
            self.modulus = MODULI[q]
        else:
            raise ParameterError(f"no field of order {q} supported (prime or 2^k, k <= 8)")
        self.q = q
        self.char = q if self.modulus is None else 2
        if self.modulus is not None:
            self._build_tables()

    def _build_tables(self):
        q = self.q
        self.exp = [0] * (2 * q)
        self.log = [0] * q
        x = 1
        for i in range(q - 1):
            self.exp[i] = x
            self.log[x] = i
            x <<= 1
            if x & q:
                x ^= self.modulus
        if x != 1 or len(set(self.exp[: q - 1])) != q - 1:
            raise ParameterError(f"modulus {self.modulus:#b} is not primitive")
        for i in range(q - 1, 2 * q):
            self.exp[i] = self.exp[i - (q - 1)]

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def _check(self, *xs):
        for x in xs:
            if not 0 <= x < self.q:
                raise ParameterError(f"{x} is not an element of GF({self.q})")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        if self.modulus is None:
            return (a + b) % self.q
        return a ^ b

    def neg(self, a: int) -> int:
        self._check(a)
        return a if self.modulus is not None else (-a) % self.q

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        if self.modulus is None:
            return (a * b) % self.q
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        if self.modulus is None:
            return pow(a, -1, self.q)
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def elements(self):
        return range(self.q)

    @cached_property
    def add_table(self) -> np.ndarray:
        return np.array([[self.add(a, b) for b in range(self.q)] for a in range(self.q)], dtype=np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray:
        return np.array([[self.mul(a, b) for b in range(self.q)] for a in range(self.q)], dtype=np.int64)


def field_ops(field: GF, a: int, b: int = 0, which: str = "add") -> int:
    """Dispatch ``add``, ``mul`` or ``inv`` (of ``a``) by name."""
    if which == "add":
        return field.add(a, b)
    if which == "mul":
        return field.mul(a, b)
    if which == "inv":
        return field.inv(a)
    raise ParameterError(f"unknown field operation {which!r}")


# ---------------------------------------------------------------- linear algebra


def _rref(field: GF, rows: Sequence[Sequence[int]]):
    """Reduced row echelon form over ``field``; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((k for k in range(r, len(m)) if m[k][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        s = field.inv(m[r][c])
        m[r] = [field.mul(s, v) for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c]:
                factor = m[k][c]
                m[k] = [field.sub(v, field.mul(factor, w)) for v, w in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(field: GF, rows: Sequence[Sequence[int]]) -> int:
    return len(_rref(field, rows)[1]) if rows else 0


def null_space_basis(field: GF, parity_check: Sequence[Sequence[int]], n: int):
    """A basis (one vector per free column) of ``{x : H x^T = 0}``."""
    reduced, pivots = _rref(field, parity_check) if parity_check else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * n
        v[fcol] = 1
        for row, pcol in zip(reduced, pivots):
            v[pcol] = field.neg(row[fcol])
        basis.append(tuple(v))
    return basis


def span_indices(field: GF, basis: Sequence[Sequence[int]], n: int) -> np.ndarray:
    """Packed indices of all ``q^k`` linear combinations of ``basis``, sorted."""
    q = field.q
    k = len(basis)
    if q**k > MAX_WORDS:
        raise ParameterError(f"refusing to enumerate {q}^{k} codewords")
    words = np.zeros((1, n), dtype=np.int64)
    add, mul = field.add_table, field.mul_table
    for g in basis:
        g = np.asarray(g, dtype=np.int64)
        scaled = mul[:, g]  # (q, n): a * g for every scalar a
        words = add[words[:, None, :], scaled[None, :, :]].reshape(-1, n)
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return np.sort(words @ powers)


# ---------------------------------------------------------------- codes


@dataclass(frozen=True)
class LinearCode:
    """A linear code over GF(q), stored as sorted packed word indices."""

    params: Params
    field: GF
    indices: np.ndarray = dc_field(repr=False)
    parity_check: Optional[Tuple[Tuple[int, ...], ...]] = None
    validated: Optional[bool] = None

    def __post_init__(self):
        idx = np.unique(np.asarray(self.indices, dtype=np.int64))
        object.__setattr__(self, "indices", idx)
        if idx.size == 0 or idx[0] != 0:
            raise ParameterError("a linear code must contain the zero word")
        if self.parity_check is not None:
            expected = self.field.q ** (self.params.n - rank(self.field, self.parity_check))
            if idx.size != expected:
                raise ParameterError(f"{idx.size} words, parity check predicts {expected}")
        if idx.size <= 4096:
            self._check_closure()

    def _check_closure(self):
        # grow the span of members greedily; it must reproduce the set exactly
        params, field = self.params, self.field
        members = set(int(k) for k in self.indices)
        span = {0}
        for k in sorted(members):
            if k in span:
                continue
            w = params.vertex(k)
            multiples = [params.index(tuple(field.mul(a, d) for d in w)) for a in range(1, field.q)]
            new = set(span)
            for s in span:
                sw = params.vertex(s)
                for m in multiples:
                    mw = params.vertex(m)
                    new.add(params.index(tuple(field.add(u, v) for u, v in zip(sw, mw))))
            span = new
            if not span <= members:
                raise ParameterError("word set is not closed under addition and scaling")
        if span != members:
            raise ParameterError("word set is not a subspace")

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def dimension(self) -> int:
        return round(math.log(self.indices.size, self.field.q))

    def __len__(self):
        return int(self.indices.size)

    @cached_property
    def words(self) -> frozenset:
        return frozenset(self.params.vertex(int(k)) for k in self.indices)

    def indicator(self) -> np.ndarray:
        h = np.zeros(self.params.size, dtype=np.int64)
        h[self.indices] = 1
        return h

    @cached_property
    def min_weight(self) -> float:
        """Minimum distance of a linear code: the least nonzero weight."""
        if self.indices.size <= 1:
            return INFINITY
        digits = self.params.digits_of(self.indices[1:])
        return int((digits != 0).sum(axis=1).min())


def projective_points(field: GF, m: int):
    """Points of PG(m-1, q): first nonzero coordinate 1, lexicographic order."""
    pts = []
    for v in itertools.product(range(field.q), repeat=m):
        nz = next((d for d in v if d), 0)
        if nz == 1:
            pts.append(v)
    return pts


def _code_from_parity_check(params: Params, field: GF, H, validated=None) -> LinearCode:
    basis = null_space_basis(field, H, params.n)
    idx = span_indices(field, basis, params.n)
    return LinearCode(params, field, idx, tuple(tuple(r) for r in H), validated)


def hamming_code(q: int, m: int) -> LinearCode:
    """The q-ary Hamming code with ``m`` check symbols, length ``(q^m-1)/(q-1)``."""
    if m < 2:
        raise ParameterError("Hamming codes need m >= 2")
    field = GF(q)
    cols = projective_points(field, m)
    n = len(cols)
    H = [[c[r] for c in cols] for r in range(m)]
    return _code_from_parity_check(Params(n, q), field, H)


def hyperoval_parity_check(field: GF):
    """3 x (q+2) matrix with columns (1, t, t^2) for t in GF(q), then (0,0,1), (0,1,0)."""
    cols = [(1, t, field.mul(t, t)) for t in field.elements()]
    cols += [(0, 0, 1), (0, 1, 0)]
    return [[c[r] for c in cols] for r in range(3)]


def extended_perfect_code(q: int) -> LinearCode:
    """The [q+2, q-1, 4] code over GF(q), q = 2^k, dual to a regular hyperoval.

    For q = 4 the result is checked with a full cylinder scan. For q = 8 the
    equivalent test is used: minimum weight 4 plus the count identity
    ``|C| (1 + (n-1)(q-1)) = q^(n-1)``; a distance-4 code meets each cylinder
    at most once, so the count forces exactly once. Larger q is not validated.
    """
    if q < 4 or q & (q - 1):
        raise ParameterError(f"extended perfect codes here need q = 2^k >= 4, got {q}")
    field = GF(q)
    params = Params(q + 2, q)
    H = hyperoval_parity_check(field)
    if q > 8:
        raise ParameterError(f"H({q + 2},{q}) is too large to enumerate")
    code = _code_from_parity_check(params, field, H)
    if q == 4:
        ok = is_extended_perfect_code(params, code.words)
    else:
        n = params.n
        ok = code.min_weight == 4 and len(code) * (1 + (n - 1) * (q - 1)) == q ** (n - 1)
    if not ok:
        raise AssertionError(f"hyperoval code for q={q} failed validation")
    return LinearCode(params, field, code.indices, code.parity_check, validated=True)


def parity_extension(code: LinearCode) -> LinearCode:
    """Append the check digit ``-sum(c)`` to every word."""
    field = code.field
    params = Params(code.n + 1, field.q)
    idx = []
    for w in sorted(code.words):
        s = 0
        for d in w:
            s = field.add(s, d)
        idx.append(params.index(w + (field.neg(s),)))
    return LinearCode(params, field, np.array(idx, dtype=np.int64))


# ---------------------------------------------------------------- sets of words


def min_distance(words: Iterable[Vertex]) -> float:
    """Least pairwise Hamming distance; ``math.inf`` for fewer than two words."""
    arr = np.array(sorted(set(map(tuple, words))), dtype=np.int64)
    if len(arr) <= 1:
        return INFINITY
    best = arr.shape[1]
    for start in range(0, len(arr), 256):
        block = arr[start : start + 256]
        d = (block[:, None, :] != arr[None, :, :]).sum(axis=2)
        rows = np.arange(len(block))
        d[rows, start + rows] = arr.shape[1] + 1
        best = min(best, int(d.min()))
    return best


def translate(words: Iterable[Vertex], v: Vertex, field: GF) -> frozenset:
    """``{c + v}`` with coordinatewise field addition."""
    return frozenset(tuple(field.add(a, b) for a, b in zip(c, v)) for c in words)


def difference_pair(params: Params, c0: Iterable[Vertex], c1: Iterable[Vertex]) -> SignedPair:
    """``(C0 \\ C1, C1 \\ C0)``."""
    c0, c1 = frozenset(c0), frozenset(c1)
    return SignedPair(params, c0 - c1, c1 - c0)


def is_extended_perfect_code(params: Params, words: Iterable[Vertex]) -> bool:
    """Distance at least 4 and exactly one word in every cylinder ``C_{x,i}``."""
    words = frozenset(words)
    if not words or min_distance(words) < 4:
        return False
    h = params.indicator(words)
    return all(np.all(cylinder_counts(params, h, i) == 1) for i in range(1, params.n + 1))


def shifted_bitrade(q: int, a: int, i: int) -> SignedPair:
    """Difference pair of the hyperoval code ``C`` and ``C + e^a_i``."""
    code = extended_perfect_code(q)
    params = code.params
    if not 1 <= a < q:
        raise ParameterError(f"shift value must be in 1..{q - 1}, got {a}")
    v = params.unit(i, a)
    return difference_pair(params, code.words, translate(code.words, v, code.field))


__all__ = [
    "MODULI",
    "INFINITY",
    "GF",
    "field_ops",
    "rank",
    "null_space_basis",
    "span_indices",
    "LinearCode",
    "projective_points",
    "hamming_code",
    "hyperoval_parity_check",
    "extended_perfect_code",
    "parity_extension",
    "min_distance",
    "translate",
    "difference_pair",
    "is_extended_perfect_code",
    "shifted_bitrade",
]
