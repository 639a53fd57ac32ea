"""Acceptance suite: one test per criterion, all checks exact.

Run ``pytest tests/test_acceptance.py`` and read the "acceptance criteria"
section at the end of the output for one PASS/FAIL line per criterion.
"""

import itertools
import time

import numpy as np
import pytest

from bitrades import cli
from bitrades.checkers import CHECKERS, Status, check_all, check_matrix, check_perfect, scaled_weights
from bitrades.codes import (
    difference_pair,
    extended_perfect_code,
    hamming_code,
    min_distance,
    parity_extension,
    translate,
)
from bitrades.fileformat import read_bitrade
from bitrades.hamming import Params, SignedPair, adjacency_apply, project_pair, sphere
from bitrades.search import SearchConfig, backtrack_search, brute_force_enumerate, feasible_params
from bitrades.spectral import convolve, eigen_fixture, eigenvalue, psi

from conftest import dense_witness_ok, random_distance4_code, random_pair


def note(request, text):
    request.node.user_properties.append(("detail", text))


@pytest.mark.criterion(1, "hyperoval difference pair in H(6,4) via the CLI")
def test_criterion_1_construction(tmp_path, capsys, request):
    t0 = time.monotonic()
    out = tmp_path / "h64.bitrade"
    assert cli.main(["construct", "bitrade", "--q", "4", "--shift", "1@1", "-o", str(out)]) == 0
    params, pair = read_bitrade(out)
    assert params == Params(6, 4)
    assert len(pair.plus) == 64 and len(pair.minus) == 64
    assert min_distance(pair.plus) == 4 and min_distance(pair.minus) == 4
    capsys.readouterr()
    assert cli.main(["check", str(out), "--definition", "all"]) == 0
    text = capsys.readouterr().out
    for name in CHECKERS:
        assert f"{name}: pass" in text
    elapsed = time.monotonic() - t0
    assert elapsed < 60
    note(request, f"|T+|=|T-|=64, d=4, five passes, {elapsed:.2f}s")


def _structured_h64(rng):
    code = extended_perfect_code(4)
    p, F, C = code.params, code.field, code.words
    bitrade = difference_pair(p, C, translate(C, p.unit(1, 1), F))
    plus, minus = bitrade.sorted_plus(), bitrade.sorted_minus()
    pairs = []
    # translates of the code against the code
    for _ in range(40):
        v = tuple(int(d) for d in rng.integers(0, 4, size=6))
        pairs.append(difference_pair(p, C, translate(C, v, F)))
    # coordinate-permuted translates
    for _ in range(20):
        perm = tuple(int(i) for i in rng.permutation(6))
        v = tuple(int(d) for d in rng.integers(0, 4, size=6))
        other = {tuple(w[j] for j in perm) for w in translate(C, v, F)}
        pairs.append(difference_pair(p, C, other))
    # subsets of the bitrade
    for _ in range(30):
        kp, km = rng.integers(0, 65, size=2)
        pairs.append(
            SignedPair(
                p,
                {plus[i] for i in rng.choice(64, size=kp, replace=False)},
                {minus[i] for i in rng.choice(64, size=km, replace=False)},
            )
        )
    # supersets of the bitrade
    support = bitrade.plus | bitrade.minus
    for _ in range(30):
        extra = set()
        while len(extra) < int(rng.integers(1, 4)):
            w = tuple(int(d) for d in rng.integers(0, 4, size=6))
            if w not in support:
                extra.add(w)
        side = rng.integers(0, 2)
        if side:
            pairs.append(SignedPair(p, bitrade.plus | extra, bitrade.minus))
        else:
            pairs.append(SignedPair(p, bitrade.plus, bitrade.minus | extra))
    # the code itself on one side
    pairs.append(SignedPair(p, C, frozenset()))
    return pairs


@pytest.mark.criterion(2, "five checkers agree on random and structured pairs")
def test_criterion_2_equivalence(request):
    rng = np.random.default_rng(20240601)
    disagreements = 0
    tally = {Status.PASS: 0, Status.FAIL: 0, Status.DEGENERATE: 0}
    random_count = 0
    for params in (Params(3, 3), Params(4, 3)):
        for k in range(5000):
            # a quarter are very sparse so that near-bitrades are common
            density = rng.uniform(0.0, 0.08) if k % 4 == 0 else None
            r = check_all(random_pair(params, rng, density), strict=False)
            disagreements += not r.agreement
            tally[r.status] += 1
            random_count += 1
    structured = _structured_h64(rng)
    for pair in structured:
        r = check_all(pair, strict=False)
        disagreements += not r.agreement
        tally[r.status] += 1
    assert random_count >= 10**4 and len(structured) >= 10**2
    note(
        request,
        f"{random_count} random + {len(structured)} structured, "
        f"pass/fail/degenerate={tally[Status.PASS]}/{tally[Status.FAIL]}/{tally[Status.DEGENERATE]}, "
        f"disagreements={disagreements}",
    )
    assert tally[Status.PASS] > 0 and tally[Status.FAIL] > 0
    assert disagreements == 0


@pytest.mark.criterion(3, "brute-force oracle in H(2,3): 72 singleton pairs")
def test_criterion_3_brute_force(request):
    p = Params(2, 3)
    t0 = time.monotonic()
    pairs = brute_force_enumerate(p)
    elapsed = time.monotonic() - t0
    assert elapsed < 5
    assert len(pairs) == 72
    assert all(len(x.plus) == 1 and len(x.minus) == 1 and x.plus != x.minus for x in pairs)
    expected = {SignedPair(p, {u}, {v}) for u, v in itertools.permutations(p.vertices(), 2)}
    assert set(pairs) == expected
    # every checker accepts exactly these among all 3^9 sign vectors
    accepted = {name: set() for name in CHECKERS}
    for vec in itertools.product((0, 1, -1), repeat=p.size):
        pair = SignedPair.from_function(p, np.array(vec))
        for name, fn in CHECKERS.items():
            if fn(pair).passed:
                accepted[name].add(pair)
    for name in CHECKERS:
        assert accepted[name] == expected, name
    note(request, f"72 pairs in {elapsed:.2f}s; each checker accepts exactly these among 19683")


@pytest.mark.criterion(4, "nonexistence: feasibility, empty H(4,3) search, H(5,3) pair fails")
def test_criterion_4_nonexistence(request):
    assert not feasible_params(5, 3) and feasible_params(5, 3).reason == "n is odd"
    assert not feasible_params(4, 3)
    quick = backtrack_search(SearchConfig(Params(4, 3)))
    assert quick.pairs == [] and quick.complete
    full = backtrack_search(SearchConfig(Params(4, 3), use_theorem=False))
    assert full.pairs == [] and full.complete
    ext = parity_extension(hamming_code(3, 2))
    p = ext.params
    assert p == Params(5, 3)
    pair = difference_pair(p, ext.words, translate(ext.words, p.unit(1, 1), ext.field))
    assert not pair.is_empty
    r = check_all(pair)
    for v in r.verdicts.values():
        assert v.status is Status.FAIL and v.counterexample is not None
    note(request, f"H(4,3) exhaustive search: {full.nodes} nodes, nothing found")


@pytest.mark.criterion(5, "projections of the H(6,4) bitrade and f *_i psi")
def test_criterion_5_projection(request, h64_bitrade):
    f = h64_bitrade.characteristic()
    sizes = []
    for i in range(1, 7):
        proj = project_pair(h64_bitrade, i)
        assert proj.params == Params(5, 4)
        assert check_perfect(proj).passed
        g = convolve(h64_bitrade.params, f, i, psi(4))
        assert g.shape == (4**5,)
        assert np.array_equal(g, proj.characteristic())
        sizes.append(len(proj.plus))
    note(request, f"projection sizes {sizes}")


@pytest.mark.criterion(6, "convolution lemma on eigenfunction fixtures")
def test_criterion_6_spectral_lemma(request):
    checked = 0
    for p in (Params(3, 3), Params(4, 3)):
        sub = Params(p.n - 1, p.q)
        for j in range(p.n + 1):
            for seed in range(10):
                g = eigen_fixture(p, j, seed)
                assert np.any(g != 0)
                convs = [convolve(p, g, i, psi(p.q)) for i in range(1, p.n + 1)]
                if j == p.n:
                    assert all(np.all(c == 0) for c in convs)
                else:
                    lam = eigenvalue(sub, j)
                    for c in convs:
                        assert np.array_equal(adjacency_apply(sub, c), lam * c)
                    assert any(np.any(c != 0) for c in convs)
                checked += 1
    note(request, f"{checked} fixtures")


@pytest.mark.criterion(7, "matrix witness checked by dense multiplication")
def test_criterion_7_witness(request, h23_pair, h64_bitrade):
    for pair in (h23_pair, h64_bitrade):
        v = check_matrix(pair)
        assert v.passed and v.witness is not None
        F = v.witness.as_array()
        assert np.array_equal(F[:, 0], pair.characteristic())
        assert dense_witness_ok(pair.params, v.witness)
    note(request, "H(2,3) and H(6,4)")


@pytest.mark.criterion(8, "weight-one trichotomy on random distance-4 codes")
def test_criterion_8_weight_trichotomy(request):
    rng = np.random.default_rng(77)
    profiles = {}
    violations = 0
    codes = 0
    for p in (Params(4, 3), Params(6, 4)):
        allowed = {(1, 0, 0), (0, 1, 0), (0, 0, p.n // 2)}
        for _ in range(1000):
            code = random_distance4_code(p, rng)
            assert min_distance(code) >= 4
            codes += 1
            w = scaled_weights(p, p.indicator(code))
            hits = np.flatnonzero(w == p.n)
            for k in rng.choice(hits, size=min(5, hits.size), replace=False):
                x = p.vertex(int(k))
                prof = tuple(len(sphere(p, x, r) & code) for r in range(3))
                profiles[prof] = profiles.get(prof, 0) + 1
                violations += prof not in allowed
    note(request, f"{codes} codes, profiles {dict(sorted(profiles.items()))}, violations={violations}")
    assert violations == 0
