"""Exact eigenspace tests for the Hamming graph.

H(n, q) has eigenvalues ``lambda_i = n(q-1) - iq`` for ``i = 0..n`` and its
adjacency matrix is diagonalisable, so a function lies in the sum of the
eigenspaces for a set of eigenvalues iff the product of ``A - lambda I``
over that set sends it to zero. Everything here is integer arithmetic on
the matrix-free operator from :mod:`bitrades.hamming`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .hamming import ParameterError, Params, _exact, adjacency_apply


@dataclass(frozen=True)
class EigenIndex:
    i: int
    lam: int


def eigenvalue(params: Params, i: int) -> int:
    if not 0 <= i <= params.n:
        raise ParameterError(f"eigen index {i} out of range 0..{params.n}")
    return params.n * (params.q - 1) - i * params.q


def eigenvalues(params: Params) -> list:
    return [eigenvalue(params, i) for i in range(params.n + 1)]


def eigen_index_for(params: Params, target: int) -> Optional[EigenIndex]:
    """The ``i`` with ``n(q-1) - iq == target``, or None if there is none."""
    i, rem = divmod(params.n * (params.q - 1) - target, params.q)
    if rem or not 0 <= i <= params.n:
        return None
    return EigenIndex(i, target)


def apply_polynomial(params: Params, f, lambdas: Iterable[int]) -> np.ndarray:
    """``prod (A - lam I) f`` with factors applied in ascending ``lam`` order.

    No check that the ``lam`` are eigenvalues; see :func:`annihilate`.
    """
    g = _exact(params, f, 1)
    for lam in sorted(lambdas):
        g = _exact(params, g, 2 * (params.n * (params.q + 1) + abs(lam) + 1))
        g = adjacency_apply(params, g) - lam * g
    return g


def annihilate(params: Params, f, lambdas: Sequence[int]) -> np.ndarray:
    if not lambdas:
        raise ParameterError("at least one eigenvalue is required")
    valid = set(eigenvalues(params))
    for lam in lambdas:
        if lam not in valid:
            raise ParameterError(f"{lam} is not an eigenvalue of H({params.n},{params.q})")
    return apply_polynomial(params, f, lambdas)


def annihilator_check(params: Params, f, lambdas: Sequence[int]) -> bool:
    """True iff ``f`` lies in the direct sum of the eigenspaces for ``lambdas``."""
    return not np.any(annihilate(params, f, lambdas) != 0)


def convolve(params: Params, f, i: int, phi: Sequence[int]) -> np.ndarray:
    """``(f *_i phi)(x) = sum_a f(x^a_i) phi(a)``, a function on H(n-1, q).

    Only integer ``phi`` is supported, for which conjugation is the identity.
    """
    params.check_coord(i)
    if params.n < 2:
        raise ParameterError("convolution needs n >= 2")
    phi = list(phi)
    if len(phi) != params.q:
        raise ParameterError(f"phi must have length q={params.q}, got {len(phi)}")
    bound = max((abs(int(p)) for p in phi), default=0)
    t = _exact(params, f, params.q * max(bound, 1)).reshape(params.shape)
    t = np.moveaxis(t, i - 1, -1)
    weights = np.array([int(p) for p in phi], dtype=t.dtype)
    return (t * weights).sum(axis=-1).reshape(-1)


def psi(q: int) -> list:
    """The constant function 1 on H(1, q)."""
    return [1] * q


def eigen_fixture(params: Params, j: int, seed: int, spread: int = 3) -> np.ndarray:
    """A function in ``U_j`` (possibly zero), reproducible from ``seed``.

    Draws integers uniformly from ``[-spread, spread]`` with numpy's PCG64
    generator and kills every other eigencomponent.
    """
    lam_j = eigenvalue(params, j)
    rng = np.random.default_rng(seed)
    f = rng.integers(-spread, spread + 1, size=params.size)
    others = [lam for lam in eigenvalues(params) if lam != lam_j]
    return apply_polynomial(params, f, others)


__all__ = [
    "EigenIndex",
    "eigenvalue",
    "eigenvalues",
    "eigen_index_for",
    "apply_polynomial",
    "annihilate",
    "annihilator_check",
    "convolve",
    "psi",
    "eigen_fixture",
]
