from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from seshadri.audit import ConfigError, DomainError, InvariantViolation, Unsupported
from seshadri.exactnum import EQ, GT, LT
from seshadri.surface import (CandidateClass, EnumParams, GeneralCandidate, SurfaceData,
                              WeightVector, check_nef_claim, check_nef_claim_sq,
                              check_uniform_nef_claim_sq, exact_epsilon_rank1, f_delta_pairing,
                              load_surface, nef_threshold_upper)


def test_p2_preset(p2):
    assert (p2.L2, p2.LK, p2.pa, p2.degree_unit) == (1, -3, 0, 1)
    assert p2.rank1
    assert p2.c_determined()
    assert p2.c_sq(3) == 9
    assert p2.c_k(3) == -9
    assert str(p2) == 'P2'


def test_from_config():
    assert SurfaceData.from_config('p2').mode == 'P2'
    s = SurfaceData.from_config({'surface': {'L2': 2, 'LK': -4, 'pa': 0, 'degree_unit': 2,
                                             'rank1': True, 'mode': 'RANK1'}})
    assert s.L2 == 2
    assert s.c_sq(4) == 8
    assert s.c_k(4) == -8


@pytest.mark.parametrize('conf', [
    {'L2': 1, 'LK': -3},
    {'L2': 1, 'LK': -3, 'pa': 0, 'colour': 'red'},
    {'L2': 0, 'LK': -3, 'pa': 0},
    {'L2': 1, 'LK': -3, 'pa': 0, 'mode': 'RANK1'},
    {'L2': 4, 'LK': -6, 'pa': 0, 'rank1': True, 'mode': 'P2'},
    {'L2': 1, 'LK': -3, 'pa': 0, 'mode': 'FANCY'},
    {'L2': '1', 'LK': -3, 'pa': 0},
    'p3',
])
def test_from_config_bad(conf):
    with pytest.raises(ConfigError):
        SurfaceData.from_config(conf)


def test_load_surface(tmp_path):
    path = tmp_path / 'quartic.yaml'
    path.write_text('surface:\n  L2: 4\n  LK: 0\n  pa: 3\n  rank1: true\n  mode: RANK1\n')
    s = load_surface(str(path))
    assert (s.L2, s.LK, s.pa, s.mode) == (4, 0, 3, 'RANK1')
    with pytest.raises(ConfigError):
        load_surface(str(tmp_path / 'absent.yaml'))


def test_weight_vector():
    w = WeightVector.parse('2,1,2,1/2')
    assert w.n == 4
    assert w.norm_sq == Fraction(37, 4)
    assert not w.homogeneous()
    assert w.blocks() == [None, None, 0, None]
    assert w.weighted_sum((1, 1, 1, 2)) == 6
    assert WeightVector.uniform(3).homogeneous()
    with pytest.raises(DomainError):
        WeightVector([0, 0])
    with pytest.raises(DomainError):
        WeightVector([1, -1])


def test_enum_params():
    p = EnumParams.from_mu(21, 10)
    assert p.delta == Fraction(10, 209)
    assert EnumParams.from_delta(Fraction(10, 209), 10).mu == 21
    assert EnumParams.from_mu(2, 2).delta == Fraction(2, 3)
    with pytest.raises(DomainError):
        EnumParams.from_mu(Fraction(1, 2), 10)
    with pytest.raises(DomainError):
        EnumParams.from_delta(0, 10)


def test_candidate_class():
    c = CandidateClass(3, 1, 0, 10)
    assert c.ratio == Fraction(3, 10)
    assert c.multiplicity_sum() == 10
    assert c.as_dict() == {'t': 3, 'm': 1, 'k': 0, 'ratio': '3/10'}
    assert CandidateClass(1, 1, -1, 3).ratio == Fraction(1, 2)
    with pytest.raises(DomainError):
        CandidateClass(1, 2, -2, 5)
    with pytest.raises(DomainError):
        CandidateClass(1, 1, 1, 1)
    with pytest.raises(DomainError):
        c.multiplicity_sum(WeightVector([1, 2]))


def test_general_candidate():
    w = WeightVector([1, 1])
    c = GeneralCandidate(1, (1, 1), w)
    assert (c.gamma, c.a, c.ratio) == (2, 1, Fraction(1, 2))
    with pytest.raises(DomainError):
        GeneralCandidate(1, (0, 0), w)
    with pytest.raises(DomainError):
        GeneralCandidate(1, (1,), w)


def test_f_delta_pairing(p2):
    w = WeightVector.uniform(10)
    c = CandidateClass(3, 1, 0, 10)
    assert f_delta_pairing(p2, w, EnumParams.from_mu(21, 10), c) == LT
    # sqrt(1/(2 + 2)) = 1/2 exactly.
    line = CandidateClass(1, 1, 0, 2)
    assert f_delta_pairing(p2, WeightVector.uniform(2), EnumParams.from_delta(2, 2), line) == EQ
    assert f_delta_pairing(p2, WeightVector.uniform(2), EnumParams.from_delta(3, 2), line) == GT


@given(st.fractions(min_value=Fraction(1, 100), max_value=10, max_denominator=100),
       st.fractions(min_value=Fraction(1, 100), max_value=10, max_denominator=100))
def test_pairing_monotone_in_delta(d1, d2):
    # Negative at a larger delta stays negative at a smaller one.
    p2 = SurfaceData.p2()
    (small, large) = sorted((d1, d2))
    w = WeightVector.uniform(5)
    c = CandidateClass(2, 1, 0, 5)
    if f_delta_pairing(p2, w, EnumParams.from_delta(large, 5), c) == LT:
        assert f_delta_pairing(p2, w, EnumParams.from_delta(small, 5), c) == LT


def test_nef_threshold_upper():
    assert nef_threshold_upper(WeightVector.uniform(5), CandidateClass(2, 1, 0, 5)) == \
        Fraction(2, 5)


def test_exact_epsilon_rank1(p2):
    assert exact_epsilon_rank1(p2, CandidateClass(1, 1, 0, 2)) == Fraction(1, 2)
    assert exact_epsilon_rank1(p2, CandidateClass(2, 1, 0, 5)) == Fraction(2, 5)
    with pytest.raises(DomainError):
        exact_epsilon_rank1(p2, CandidateClass(4, 1, 0, 16))
    interval = SurfaceData(1, -3, 0)
    with pytest.raises(Unsupported):
        exact_epsilon_rank1(interval, CandidateClass(1, 1, 0, 2))


def test_check_nef_claim(p2):
    w = WeightVector.uniform(4)
    assert check_nef_claim(p2, w, Fraction(1, 2)) == Fraction(1, 2)
    assert check_nef_claim_sq(p2, w, Fraction(1, 4)) == Fraction(1, 4)
    with pytest.raises(InvariantViolation):
        check_nef_claim(p2, w, Fraction(3, 5))
    with pytest.raises(InvariantViolation):
        check_nef_claim(p2, w, -1)
    with pytest.raises(InvariantViolation):
        check_nef_claim_sq(p2, w, Fraction(26, 100))


def test_check_uniform_nef_claim(p2):
    assert check_uniform_nef_claim_sq(p2, 4, Fraction(1, 4)) == Fraction(1, 4)
    with pytest.raises(InvariantViolation):
        check_uniform_nef_claim_sq(p2, 4, Fraction(26, 100))
    with pytest.raises(DomainError):
        check_uniform_nef_claim_sq(p2, 0, 0)
