from fractions import Fraction
import math

import pytest
from hypothesis import given, settings, strategies as st

from seshadri.audit import ADJUNCTION, WINDOW_EMPTY, DomainError, Unsupported
from seshadri.enumeration import (LIMIT, admissible_k, degree_window, enumerate_general,
                                  enumerate_homogeneous, enumerate_homogeneous_parallel,
                                  merge_candidate_sets, next_threshold, o_values,
                                  parity_filter)
from seshadri.surface import EnumParams, SurfaceData, WeightVector


def triples(cs):
    return sorted((c.degree, c.m, c.k) for c in cs.candidates)


def oracle(n, mu):
    """Plain loops over (m, k, t) checking the raw inequalities on P2"""
    delta = 1 / (mu - Fraction(1, n))
    (dn, dd) = (delta.numerator, delta.denominator)
    (un, ud) = (mu.numerator, mu.denominator)
    found = set()
    m_top = math.ceil(mu)
    k_top = math.isqrt(math.ceil(2 * mu)) + 2
    t_top = math.isqrt(math.ceil(mu * mu * n)) + 3
    for m in range(1, m_top + 1):
        if m * ud >= un:
            continue
        for k in range(-k_top, k_top + 1):
            if k != 0:
                if n == 1 or m * (n - 1) * ud >= un:
                    continue
                special = (m, k) == (1, -1)
                if not special and not (k > -m and k * k * (n - 1) < n * min(m, m + k)):
                    continue
            for t in range(1, t_top + 1):
                tt = t * t
                if k == 0:
                    if not m * m * n - m <= tt < m * m * n:
                        continue
                elif (m, k) == (1, -1):
                    if not (tt >= n - 2 and tt * (n * dd + dn) < (n - 1) ** 2 * dd):
                        continue
                else:
                    low = m * m * n + 2 * m * k + max(k * k - m, k * k - m - k, 0)
                    if not (low <= tt and n * tt < n * (m * m * n + 2 * m * k) + k * k):
                        continue
                if tt - 3 * t - (m + k) ** 2 - (n - 1) * m * m + m * n + k < -2:
                    continue
                if tt * (n * dd + dn) >= (m * n + k) ** 2 * dd:
                    continue
                found.add((t, m, k))
    return sorted(found)


def test_n2_mu2(p2):
    cs = enumerate_homogeneous(p2, 2, EnumParams.from_mu(2, 2))
    assert triples(cs) == [(1, 1, 0)]
    assert o_values(cs) == [Fraction(1, 2)]
    assert {'m': 1, 'k': 1, 't': 2, 'reason': ADJUNCTION} in cs.rejected


def test_n5_mu2(p2):
    cs = enumerate_homogeneous(p2, 5, EnumParams.from_mu(2, 5))
    assert (2, 1, 0) in triples(cs)
    assert Fraction(2, 5) in cs.ratios


def test_n10_mu21(p2):
    cs = enumerate_homogeneous(p2, 10, EnumParams.from_mu(21, 10))
    # 3^2 in [9, 10), 22^2 in [483, 490) and 41^2 in [1677, 1690).
    assert triples(cs) == [(3, 1, 0), (22, 7, 0), (41, 13, 0)]
    assert o_values(cs) == [Fraction(3, 10), Fraction(11, 35), Fraction(41, 130)]
    assert {'m': 2, 'k': 0, 'reason': WINDOW_EMPTY} in cs.rejected
    assert {'m': 1, 'k': 1, 'reason': WINDOW_EMPTY} in cs.rejected


def test_as_dict(p2):
    data = enumerate_homogeneous(p2, 2, EnumParams.from_mu(2, 2)).as_dict()
    assert data == {'n': 2, 'delta': '2/3', 'mu': '2',
                    'candidates': [{'t': 1, 'm': 1, 'k': 0, 'ratio': '1/2'}],
                    'ratios': ['1/2'], 'truncated': False}


def test_window_n5_m1_k1():
    (low, high) = degree_window(5, 1, 1, EnumParams.from_mu(2, 5))
    assert (low, high) == (7, Fraction(36, 5))
    assert not any(low <= t * t < high for t in range(10))


def test_admissible_k():
    assert admissible_k(2, 1, Fraction(2)) == [-1, 1]
    assert admissible_k(10, 1, Fraction(21)) == [-1, 1]
    assert admissible_k(10, 2, Fraction(21)) == [-1, 1]
    assert admissible_k(10, 3, Fraction(21)) == []
    assert admissible_k(1, 1, Fraction(5)) == []


def test_n1(p2):
    # One point: k is 0 and m^2 - m <= t^2 < m^2 has no positive solution.
    cs = enumerate_homogeneous(p2, 1, EnumParams.from_mu(5, 1))
    assert triples(cs) == []
    assert o_values(cs) == []


def test_interval_mode_refused():
    with pytest.raises(Unsupported):
        enumerate_homogeneous(SurfaceData(1, -3, 0), 10, EnumParams.from_mu(21, 10))


@pytest.mark.parametrize('mu', [2, 3, 5, 21])
def test_oracle_equivalence(p2, mu):
    mu = Fraction(mu)
    for n in range(2, 31):
        cs = enumerate_homogeneous(p2, n, EnumParams.from_mu(mu, n))
        assert triples(cs) == oracle(n, mu), n


@settings(max_examples=10, deadline=None)
@given(st.lists(st.fractions(min_value=Fraction(1, 200), max_value=1, max_denominator=500),
                min_size=20, max_size=20, unique=True))
def test_nesting(deltas):
    p2 = SurfaceData.p2()
    deltas = sorted(deltas, reverse=True)
    prev = None
    for delta in deltas:
        ratios = o_values(enumerate_homogeneous(p2, 10, EnumParams.from_delta(delta, 10)))
        if prev:
            assert set(prev) <= set(ratios)
            for r in set(ratios) - set(prev):
                assert r > max(prev)
        prev = ratios


def test_parity_filter_examples(p2):
    assert parity_filter(p2, 5, 1) == (3, 2)
    assert parity_filter(p2, 10, 1) == (4, 3)
    assert parity_filter(p2, 10, 1, 1) is None
    # m^2 n a square forces k = 0.
    assert parity_filter(p2, 4, 1) is None


def test_parity_filter_preconditions(p2):
    with pytest.raises(Unsupported):
        parity_filter(SurfaceData(2, -4, 0, rank1=True, mode='RANK1'), 5, 1)
    with pytest.raises(Unsupported):
        parity_filter(SurfaceData(1, -3, 0), 5, 1)
    with pytest.raises(DomainError):
        parity_filter(p2, 5, 5)
    with pytest.raises(DomainError):
        parity_filter(p2, 5, 1, 0)


@pytest.mark.parametrize('mu', [3, 21, 60])
def test_parity_fast_path_changes_nothing(p2, mu):
    for n in range(2, 51):
        p = EnumParams.from_mu(mu, n)
        fast = enumerate_homogeneous(p2, n, p, use_parity=True)
        slow = enumerate_homogeneous(p2, n, p, use_parity=False)
        assert triples(fast) == triples(slow), n


def test_general_hand_example(p2):
    cs = enumerate_general(p2, WeightVector([1, 1]), Fraction(2, 3), cap=100)
    assert [(c.degree, c.h) for c in cs.candidates] == [(1, (1, 1))]
    assert cs.ratios == [Fraction(1, 2)]
    assert not cs.truncated
    cand = cs.candidates[0]
    assert (cand.gamma, cand.a, cand.c_sq) == (2, 1, 1)


@pytest.mark.parametrize('n,mu', [(2, 2), (3, 2), (5, 2), (4, 3)])
def test_general_contains_homogeneous(p2, n, mu):
    p = EnumParams.from_mu(mu, n)
    homogeneous = set(o_values(enumerate_homogeneous(p2, n, p)))
    general = enumerate_general(p2, WeightVector.uniform(n), p.delta, cap=10 ** 4,
                                almost_uniform_only=True)
    assert homogeneous <= set(general.ratios)


def test_general_truncates(p2):
    cs = enumerate_general(p2, WeightVector([2, 1]), Fraction(1, 10), cap=50)
    assert cs.truncated


def test_general_interval_mode():
    s = SurfaceData(1, -3, 0)
    cs = enumerate_general(s, WeightVector([1, 1]), Fraction(2, 3), cap=100)
    assert cs.as_dict()['candidates'] == [{'t': 1, 'h': [1, 1], 'gamma': 2, 'a': 1,
                                           'ratio': '1/2', 'c_sq': ['1', '1']}]


def test_general_bad_input(p2):
    with pytest.raises(DomainError):
        enumerate_general(p2, WeightVector([1, 1]), 0)
    with pytest.raises(DomainError):
        enumerate_general(p2, WeightVector([1, 1]), 1, cap=None)


def test_merge(p2):
    p = EnumParams.from_mu(21, 10)
    whole = enumerate_homogeneous(p2, 10, p)
    parts = [enumerate_homogeneous(p2, 10, p, ms=range(1, 8)),
             enumerate_homogeneous(p2, 10, p, ms=range(8, 21))]
    merged = merge_candidate_sets(parts)
    assert triples(merged) == triples(whole)
    assert merged.ratios == whole.ratios
    with pytest.raises(DomainError):
        merge_candidate_sets([whole, enumerate_homogeneous(p2, 11, EnumParams.from_mu(21, 11))])


def test_parallel(p2):
    p = EnumParams.from_mu(21, 10)
    assert triples(enumerate_homogeneous_parallel(p2, 10, p, workers=2)) == \
        triples(enumerate_homogeneous(p2, 10, p))


def test_rank1_surface(rank1_surface):
    # L^2 = 2, g = 2: C.L = 2t, C^2 = 2t^2.
    cs = enumerate_homogeneous(rank1_surface, 2, EnumParams.from_mu(2, 2))
    for c in cs.candidates:
        assert c.c_sq == 2 * c.degree * c.degree


def test_next_threshold(p2):
    assert next_threshold(p2, 2, EnumParams.from_mu(2, 2), Fraction(1, 3)) == Fraction(1, 2)
    p = EnumParams.from_delta(Fraction(10, 209), 10)
    assert next_threshold(p2, 10, p, Fraction(3, 10)) == Fraction(11, 35)
    assert next_threshold(p2, 10, p, Fraction(41, 130)) == LIMIT
    with pytest.raises(DomainError):
        next_threshold(p2, 2, None, 1)
    with pytest.raises(DomainError):
        next_threshold(p2, 2, None, 0)


def test_next_threshold_searches_delta(p2):
    # The first delta tried, 7/2, sees nothing; 7/4 finds the line.
    assert next_threshold(p2, 2, None, Fraction(1, 3)) == Fraction(1, 2)
    assert next_threshold(p2, 5, None, Fraction(1, 3)) == Fraction(2, 5)
    assert next_threshold(p2, 2, None, Fraction(1, 2), max_rounds=3) == LIMIT
