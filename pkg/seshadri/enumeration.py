#!/usr/bin/python3

"""Enumeration of the finite obstruction sets O_n(F(delta)).

For the homogeneous case every F(delta)-abnormal class is almost uniform,
H(C,m,k) = C - m(E_1+...+E_n) - kE_i, with 0 < m < mu and either k = 0 or
m(n-1) < mu.  For each admissible (m, k) the index theorem and abnormality
squeeze (C.L)^2 into a window, and only the integer degrees inside it are
candidates.  General weights use the weaker test-class inequalities on
the full h-vector instead.
"""

import logging
import math
from fractions import Fraction
from multiprocessing import Pool

from seshadri.audit import ADJUNCTION, WINDOW_EMPTY, DomainError, InvariantViolation, Unsupported
from seshadri.exactnum import (LT, ceil_sqrt, cmp_sq, floor_sqrt_below, format_rational,
                               is_square, isqrt_floor, rational)
from seshadri.surface import (CandidateClass, EnumParams, GeneralCandidate, WeightVector,
                              f_delta_pairing)

log = logging.getLogger(__name__)

# Returned by next_threshold when nothing lies between b and the limit.
LIMIT = 'LIMIT'

DEFAULT_CAP = 10 ** 6

# Halvings of delta tried by next_threshold when no delta is given.
NEXT_ROUNDS = 12


class CandidateSet:
    """A finite obstruction set and its sorted ratio set"""

    def __init__(self, n, params, weights, limit_sq, threshold_sq, candidates,
                 rejected=None, truncated=False):
        self.n = n
        self.params = params
        self.weights = weights
        # Square of sqrt(L^2/l^2), the only possible limit point of U_n.
        self.limit_sq = limit_sq
        # Square of sqrt(L^2/(l^2+delta)); every ratio lies strictly below it.
        self.threshold_sq = threshold_sq
        self.candidates = sorted(set(candidates), key=lambda c: c.key())
        self.rejected = sorted(rejected or [], key=_rejected_key)
        self.truncated = truncated
        self.ratios = sorted(set(c.ratio for c in self.candidates))
        for ratio in self.ratios:
            if cmp_sq(ratio, threshold_sq) != LT:
                raise InvariantViolation('Ratio {} is not below the F(delta) threshold'.format(
                    format_rational(ratio)))

    def __len__(self):
        return len(self.candidates)

    def as_dict(self):
        res = {'n': self.n,
               'delta': format_rational(self.params.delta),
               'mu': format_rational(self.params.mu),
               'candidates': [c.as_dict() for c in self.candidates],
               'ratios': [format_rational(r) for r in self.ratios],
               'truncated': self.truncated}
        if self.weights is not None and not self.weights.homogeneous():
            res['weights'] = [format_rational(w) for w in self.weights.weights]
        return res


def _rejected_key(row):
    return (row['m'], row['k'], row.get('t', 0), row['reason'])


def o_values(cs):
    """Return the sorted, deduplicated ratio list"""
    return list(cs.ratios)


def admissible_k(n, m, mu):
    """Return the nonzero k allowed next to m"""
    if n == 1:
        return []
    # k != 0 only survives when m(n-1) < mu.
    if not m * (n - 1) < mu:
        return []
    bound = isqrt_floor(2 * m) + 1
    ks = []
    for k in range(max(-m, -bound), bound + 1):
        if k == 0:
            continue
        if (m, k) == (1, -1):
            ks.append(k)
            continue
        if k <= -m:
            continue
        if k * k * (n - 1) < n * min(m, m + k):
            ks.append(k)
    return ks


def degree_window(n, m, k, p):
    """Return (low, high) with low <= (C.L)^2/L^2 < high"""
    if k == 0:
        return (Fraction(m * m * n - m), Fraction(m * m * n))
    if (m, k) == (1, -1):
        # h = (1,...,1,0): n-1 points of multiplicity one, a = 1.
        return (Fraction(n - 2), Fraction((n - 1) ** 2) / (n + p.delta))
    low = m * m * n + 2 * m * k + max(k * k - m, k * k - (m + k), 0)
    high = Fraction(m * m * n + 2 * m * k) + Fraction(k * k, n)
    return (Fraction(low), high)


def degree_range(s, low, high):
    """Integer degrees t (in units of g) with low <= (tg)^2/L^2 < high"""
    unit_sq = s.degree_unit ** 2
    t_min = max(1, ceil_sqrt(low * s.L2 / unit_sq))
    t_max = floor_sqrt_below(high * s.L2 / unit_sq)
    return (t_min, t_max)


def parity_filter(s, n, m, k=None):
    """Return the only (t, k) with k != 0 an abnormal class can have, or None"""
    if not s.rank1:
        raise Unsupported('Parity argument needs a rank one surface')
    if not is_square(s.L2):
        raise Unsupported('Parity argument needs L^2 = r^2 a square, got {}'.format(s.L2))
    if not 0 < m < n:
        raise DomainError('Parity argument needs 0 < m < n')
    if k == 0:
        raise DomainError('Parity argument is for k != 0')
    r = isqrt_floor(s.L2)
    target = m * m * n
    f = isqrt_floor(target)
    if f * f == target:
        # Only tr = m sqrt(n) is in range, and that forces k = 0.
        return None
    # Exactly one of f, f+1 has a square of the same parity as m^2 n.
    x = f if (f * f - target) % 2 == 0 else f + 1
    (forced, rem) = divmod(x * x - target, 2 * m)
    if rem or forced == 0:
        return None
    if (x * r) % s.degree_unit:
        return None
    t = x * r // s.degree_unit
    if k is not None and k != forced:
        return None
    return (t, forced)


def _classes_for_m(s, n, p, m, use_parity):
    # All candidates and rejections for one multiplicity m.
    g = s.degree_unit
    candidates = []
    rejected = []
    for k in [0] + admissible_k(n, m, p.mu):
        (low, high) = degree_window(n, m, k, p)
        (t_min, t_max) = degree_range(s, low, high)
        if use_parity and k != 0 and s.mode == 'P2' and m < n:
            forced = parity_filter(s, n, m, k)
            if forced is None:
                t_max = t_min - 1
            else:
                t_min = max(t_min, forced[0])
                t_max = min(t_max, forced[0])
        log.debug('n=%d m=%d k=%d window [%s, %s) degrees %d..%d', n, m, k,
                  format_rational(low), format_rational(high), t_min, t_max)
        if t_min > t_max:
            rejected.append({'m': m, 'k': k, 'reason': WINDOW_EMPTY})
            continue
        for t in range(t_min, t_max + 1):
            cl = t * g
            c_sq = s.c_sq(cl)
            genus_side = c_sq + s.c_k(cl) - (m + k) ** 2 - (n - 1) * m * m + m * n + k
            if genus_side < -2:
                rejected.append({'m': m, 'k': k, 't': t, 'reason': ADJUNCTION})
                continue
            cand = CandidateClass(t, m, k, n, degree_unit=g, c_sq=c_sq)
            if f_delta_pairing(s, WeightVector.uniform(n), p, cand) != LT:
                continue
            if s.mode == 'P2' and k != 0 and m < n:
                _cross_check(cand)
            candidates.append(cand)
    return (candidates, rejected)


def _cross_check(cand):
    # With 0 < m < n and k != 0: k^2 <= m and C^2 = 2mk + m^2 n.
    (m, k, n) = (cand.m, cand.k, cand.n)
    if k * k > m or cand.c_sq != 2 * m * k + m * m * n:
        raise InvariantViolation('{} fails the k^2 <= m, C^2 = 2mk + m^2 n check'.format(
            repr(cand)))


def _check_homogeneous(s, n):
    if not s.c_determined():
        raise Unsupported('Homogeneous enumeration needs P2 or RANK1 mode, use general mode')
    if n < 1:
        raise DomainError('n must be at least 1')


def m_values(p):
    """All m with 1 <= m < mu"""
    return range(1, math.ceil(p.mu))


def enumerate_homogeneous(s, n, p, use_parity=True, ms=None):
    """Return the almost uniform candidate set at F(delta)"""
    _check_homogeneous(s, n)
    if ms is None:
        ms = m_values(p)
    candidates = []
    rejected = []
    for m in ms:
        (cands, rejects) = _classes_for_m(s, n, p, m, use_parity)
        candidates.extend(cands)
        rejected.extend(rejects)
    w = WeightVector.uniform(n)
    cs = CandidateSet(n, p, w, Fraction(s.L2, n), Fraction(s.L2) / (n + p.delta),
                      candidates, rejected)
    log.info('n=%d %s: %d candidate(s), ratios %s', n, p, len(cs),
             [format_rational(r) for r in cs.ratios])
    return cs


def _enumerate_chunk(args):
    (s, n, p, ms, use_parity) = args
    return enumerate_homogeneous(s, n, p, use_parity=use_parity, ms=ms)


def merge_candidate_sets(sets):
    """Merge sets from one (n, delta), re-sorting deterministically"""
    sets = list(sets)
    if not sets:
        raise DomainError('Nothing to merge')
    first = sets[0]
    for cs in sets[1:]:
        if cs.n != first.n or cs.params.delta != first.params.delta:
            raise DomainError('Cannot merge candidate sets for different n or delta')
    candidates = []
    rejected = []
    for cs in sets:
        candidates.extend(cs.candidates)
        rejected.extend(cs.rejected)
    return CandidateSet(first.n, first.params, first.weights, first.limit_sq,
                        first.threshold_sq, candidates, rejected,
                        truncated=any(cs.truncated for cs in sets))


def enumerate_homogeneous_parallel(s, n, p, workers=2, use_parity=True):
    """Split the m-range over a worker pool and merge"""
    _check_homogeneous(s, n)
    ms = list(m_values(p))
    if workers <= 1 or len(ms) < 2:
        return enumerate_homogeneous(s, n, p, use_parity=use_parity)
    chunks = [ms[i::workers] for i in range(workers)]
    jobs = [(s, n, p, chunk, use_parity) for chunk in chunks if chunk]
    with Pool(len(jobs)) as pool:
        sets = pool.map(_enumerate_chunk, jobs)
    return merge_candidate_sets(sets)


def _h_vectors(budget, prev, h=None):
    # Vectors with sum of squares <= budget, nonincreasing along equal weights.
    if h is None:
        h = []
    i = len(h)
    if i == len(prev):
        yield tuple(h)
        return
    top = isqrt_floor(budget)
    if prev[i] is not None:
        top = min(top, h[prev[i]])
    for x in range(top + 1):
        h.append(x)
        yield from _h_vectors(budget - x * x, prev, h)
        h.pop()


def _almost_uniform(h):
    values = sorted(set(h))
    if len(values) == 1:
        return True
    if len(values) > 2:
        return False
    return min(h.count(v) for v in values) == 1


def enumerate_general(s, w, delta, cap=DEFAULT_CAP, almost_uniform_only=False):
    """Return all classes allowed by the general test-class inequalities"""
    delta = rational(delta)
    if delta <= 0:
        raise DomainError('delta must be positive')
    if cap is None or cap < 1:
        raise DomainError('General enumeration needs a positive cap')
    norm = w.norm_sq
    # Bound (a) with gamma = 1; each vector is re-checked with its own gamma.
    bound_a = (1 + norm / delta) ** 2
    budget = math.ceil(bound_a) - 1
    truncated = False
    if budget > cap:
        log.warning('Norm bound %d exceeds cap %d, result is truncated', budget, cap)
        budget = cap
        truncated = True
    g = s.degree_unit
    p = EnumParams.from_delta(delta, w.n)
    candidates = []
    for h in _h_vectors(budget, w.blocks()):
        if not any(h):
            continue
        if almost_uniform_only and not _almost_uniform(h):
            continue
        positive = [x for x in h if x > 0]
        h_sq = sum(x * x for x in h)
        if h_sq * len(positive) >= bound_a:
            continue
        weighted = w.weighted_sum(h)
        if weighted <= 0:
            continue
        low = Fraction(h_sq - min(positive))
        high = weighted * weighted / (norm + delta)
        (t_min, t_max) = degree_range(s, low, high)
        for t in range(t_min, t_max + 1):
            cl = t * g
            if s.c_determined():
                c_sq = s.c_sq(cl)
            else:
                c_sq = (low, s.c_sq(cl))
            cand = GeneralCandidate(t, h, w, degree_unit=g, c_sq=c_sq)
            if f_delta_pairing(s, w, p, cand) != LT:
                continue
            candidates.append(cand)
    return CandidateSet(w.n, p, w, Fraction(s.L2) / norm, Fraction(s.L2) / (norm + delta),
                        candidates, truncated=truncated)


def _smallest_above(s, n, p, b):
    above = [r for r in enumerate_homogeneous(s, n, p).ratios if r > b]
    return above[0] if above else None


def next_threshold(s, n, p, b, max_rounds=NEXT_ROUNDS):
    """Return the smallest ratio above b, or LIMIT.

    With p given only F(delta) at that delta is searched.  Without it the
    search starts at delta = (L^2/b^2 - n)/2 and halves delta up to
    max_rounds times.  Ratios that appear as delta shrinks lie above every
    earlier one, so the first ratio above b found is the next one.
    """
    b = rational(b)
    if cmp_sq(b, Fraction(s.L2, n)) != LT:
        raise DomainError('b={} is not below sqrt(L^2/n)'.format(format_rational(b)))
    if p is not None:
        found = _smallest_above(s, n, p, b)
        if found is None:
            log.info('No ratio in (%s, limit) at %s', format_rational(b), p)
            return LIMIT
        return found
    if b <= 0:
        raise DomainError('Pick delta explicitly when b <= 0')
    # Any delta below L^2/b^2 - n puts sqrt(L^2/(n+delta)) above b.
    delta = (Fraction(s.L2) / (b * b) - n) / 2
    for _ in range(max_rounds + 1):
        p = EnumParams.from_delta(delta, n)
        found = _smallest_above(s, n, p, b)
        if found is not None:
            return found
        delta /= 2
    log.info('No ratio in (%s, limit) down to %s', format_rational(b), p)
    return LIMIT
