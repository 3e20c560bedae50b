import math

import numpy as np
import pytest

from comogphog.features import FeatureVector
from comogphog.scoring import LengthMismatchError, ScoreResult, score, search


def fv(name, values):
    return FeatureVector(id=name, values=np.asarray(values, dtype=np.float64))


def random_vectors(count, rng, length=1024):
    return [fv(f"v{i:04d}", rng.random(length)) for i in range(count)]


def test_identity_is_zero():
    rng = np.random.default_rng(0)
    a = fv("a", rng.random(1024))
    assert score(a, a) == 0.0


def test_unit_displacement():
    a = np.zeros(1024)
    b = np.zeros(1024)
    b[137] = 1.0
    assert score(a, b) == 1.0


def test_matches_sum_of_squares_oracle():
    rng = np.random.default_rng(42)
    a, b = rng.random(1024), rng.random(1024)
    expected = math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))
    assert score(a, b) == pytest.approx(expected, rel=1e-12)


def test_length_mismatch():
    with pytest.raises(LengthMismatchError):
        score(np.zeros(1024), np.zeros(1000))


def test_symmetry_is_exact():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a, b = rng.random(1024), rng.random(1024)
        assert score(a, b) == score(b, a)


def test_triangle_inequality():
    rng = np.random.default_rng(8)
    for _ in range(200):
        a, b, c = rng.random(1024), rng.random(1024), rng.random(1024)
        assert score(a, c) <= score(a, b) + score(b, c) + 1e-9


def test_search_self_match_first():
    rng = np.random.default_rng(3)
    db = random_vectors(20, rng)
    hits = search(db, db[7], 5)
    assert hits[0] == ScoreResult(query_id="v0007", target_id="v0007", distance=0.0)


def test_search_truncation():
    rng = np.random.default_rng(4)
    db = random_vectors(5, rng)
    assert len(search(db, db[0], 99)) == 5
    assert len(search(db, db[0], 1)) == 1


def test_search_matches_brute_force_sort():
    rng = np.random.default_rng(5)
    db = random_vectors(50, rng)
    q = fv("q", rng.random(1024))
    expected = sorted(((score(e, q), e.id) for e in db))
    for k in (1, 3, 50, 60):
        got = search(db, q, k)
        assert [(h.distance, h.target_id) for h in got] == expected[: min(k, 50)]


def test_search_breaks_ties_by_id():
    shared = np.random.default_rng(6).random(1024)
    db = [fv("zeta", shared), fv("alpha", shared), fv("mid", shared)]
    hits = search(db, fv("q", shared + 0.01), 3)
    assert [h.target_id for h in hits] == ["alpha", "mid", "zeta"]
    assert len({h.distance for h in hits}) == 1


def test_search_argument_validation():
    rng = np.random.default_rng(9)
    db = random_vectors(3, rng)
    with pytest.raises(ValueError):
        search([], db[0], 1)
    with pytest.raises(ValueError):
        search(db, db[0], 0)
