import itertools

import numpy as np
import pytest

from bitrades.codes import extended_perfect_code, shifted_bitrade
from bitrades.hamming import Params, SignedPair

DATA = __import__("pathlib").Path(__file__).parent / "data"


def naive_distance(x, y):
    return sum(a != b for a, b in zip(x, y))


def dense_adjacency(params):
    """Explicit 0/1 adjacency matrix from pairwise Hamming distances."""
    verts = np.array(list(itertools.product(range(params.q), repeat=params.n)), dtype=np.int8)
    diff = np.zeros((len(verts), len(verts)), dtype=np.int8)
    for c in range(params.n):
        diff += verts[:, None, c] != verts[None, :, c]
    return (diff == 1).astype(np.int64)


@pytest.fixture(scope="session")
def h64_code():
    return extended_perfect_code(4)


@pytest.fixture(scope="session")
def h64_bitrade():
    return shifted_bitrade(4, 1, 1)


@pytest.fixture(scope="session")
def h23_pair():
    return SignedPair(Params(2, 3), {(0, 0)}, {(1, 1)})


@pytest.fixture(scope="session")
def golden_path():
    return DATA / "golden_h64.bitrade"


def random_pair(params, rng, density=None):
    """A disjoint signed pair with each vertex +, - or 0 at random."""
    if density is None:
        density = rng.uniform(0.02, 0.4)
    u = rng.random(params.size)
    f = np.where(u < density / 2, 1, np.where(u < density, -1, 0))
    return SignedPair.from_function(params, f)


def random_distance4_code(params, rng, attempts=None):
    """Rejection sampling: propose random words, keep those at distance >= 4."""
    digits = []
    attempts = attempts or int(rng.integers(1, 40))
    for _ in range(attempts):
        w = rng.integers(0, params.q, size=params.n)
        if all(naive_distance(w, c) >= 4 for c in digits):
            digits.append(w)
    return frozenset(tuple(int(d) for d in w) for w in digits)


def dense_witness_ok(params, witness):
    """Recheck AF = FS with the explicit adjacency matrix."""
    A = dense_adjacency(params)
    F = witness.as_array()
    n, q = params.n, params.q
    S = np.array([[0, n * (q - 1), 0], [1, q - 2, (n - 1) * (q - 1)], [0, n, n * (q - 2)]])
    return (
        np.array_equal(A @ F, F @ S)
        and np.all(F.sum(axis=1) == 0)
        and np.all((F != 0).sum(axis=1) <= 2)
    )


# ---------------------------------------------------------------- acceptance report

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, title): acceptance criterion k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    k, title = mark.args
    if rep.when == "setup" and rep.passed:
        return
    detail = "; ".join(v for name, v in item.user_properties if name == "detail")
    _CRITERIA[k] = (rep.passed, title, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        ok, title, detail = _CRITERIA[k]
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
