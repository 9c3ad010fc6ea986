#!/usr/bin/python3

"""Classes describing the surface, weights and candidate classes"""

import logging
from fractions import Fraction

import yaml

from seshadri.audit import ConfigError, DomainError, InvariantViolation, Unsupported
from seshadri.exactnum import GT, LT, cmp_sq, format_rational, rational

log = logging.getLogger(__name__)

MODES = ['P2', 'RANK1', 'INTERVAL']

# Modes in which C^2 and C.K follow from C.L.
DETERMINED_MODES = ('P2', 'RANK1')

P2_PRESET = 'p2'

SURFACE_KEYS = ('L2', 'LK', 'pa', 'degree_unit', 'rank1', 'mode')


class SurfaceData:
    """Numerical data of the pair (X, L)"""

    def __init__(self, L2, LK, pa, degree_unit=1, rank1=False, mode='INTERVAL'):
        if mode not in MODES:
            raise ConfigError('Unknown mode {!r}, expected one of {}'.format(mode, MODES))
        for (key, value) in (('L2', L2), ('LK', LK), ('pa', pa), ('degree_unit', degree_unit)):
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError('{} must be an integer, got {!r}'.format(key, value))
        if L2 < 1:
            raise ConfigError('L2 must be positive')
        if degree_unit < 1:
            raise ConfigError('degree_unit must be positive')
        self.L2 = L2
        self.LK = LK
        self.pa = pa
        self.degree_unit = degree_unit
        self.rank1 = bool(rank1)
        self.mode = mode
        if mode == 'RANK1' and not self.rank1:
            raise ConfigError('RANK1 mode needs rank1: true')
        if mode == 'P2':
            if (L2, LK, pa, degree_unit, self.rank1) != (1, -3, 0, 1, True):
                raise ConfigError('P2 mode needs L2=1, LK=-3, pa=0, degree_unit=1, rank1=true')

    @classmethod
    def p2(cls):
        """The projective plane with L a line"""
        return cls(1, -3, 0, degree_unit=1, rank1=True, mode='P2')

    @classmethod
    def from_config(cls, conf):
        """Build from a config mapping, or the 'p2' preset name"""
        if conf == P2_PRESET:
            return cls.p2()
        if not isinstance(conf, dict):
            raise ConfigError('Surface config must be a mapping')
        if 'surface' in conf:
            return cls.from_config(conf['surface'])
        unknown = set(conf) - set(SURFACE_KEYS)
        if unknown:
            raise ConfigError('Unknown surface keys {}'.format(sorted(unknown)))
        try:
            return cls(conf['L2'], conf['LK'], conf['pa'],
                       degree_unit=conf.get('degree_unit', 1),
                       rank1=conf.get('rank1', False),
                       mode=conf.get('mode', 'INTERVAL'))
        except KeyError as e:
            raise ConfigError('Surface config is missing {}'.format(e))

    def c_determined(self):
        """True if C^2 and C.K follow from C.L"""
        return self.mode in DETERMINED_MODES

    def c_sq(self, cl):
        # C is numerically (C.L/L^2) L in rank one.
        return Fraction(cl * cl, self.L2)

    def c_k(self, cl):
        return Fraction(cl * self.LK, self.L2)

    def as_dict(self):
        return {'L2': self.L2, 'LK': self.LK, 'pa': self.pa,
                'degree_unit': self.degree_unit, 'rank1': self.rank1,
                'mode': self.mode}

    def __str__(self):
        if self.mode == 'P2':
            return 'P2'
        return 'surface(L2={}, LK={}, pa={}, g={}, {})'.format(self.L2, self.LK, self.pa,
                                                               self.degree_unit, self.mode)


def load_surface(path):
    """Load a SurfaceData block from a YAML file"""
    try:
        with open(path, 'r') as ofh:
            conf = yaml.safe_load(ofh)
    except OSError as e:
        raise ConfigError('Cannot read surface file {}: {}'.format(path, e))
    except yaml.YAMLError as e:
        raise ConfigError('Bad surface file {}: {}'.format(path, e))
    return SurfaceData.from_config(conf)


class WeightVector:
    """Nonzero vector of nonnegative weights l_1..l_n"""

    def __init__(self, weights):
        weights = tuple(rational(w) for w in weights)
        if not weights:
            raise DomainError('Weight vector is empty')
        if any(w < 0 for w in weights):
            raise DomainError('Weights must be nonnegative')
        self.n = len(weights)
        self.weights = weights
        self.norm_sq = sum(w * w for w in weights)
        if self.norm_sq == 0:
            raise DomainError('Weights must not all be zero')

    @classmethod
    def uniform(cls, n):
        if n < 1:
            raise DomainError('n must be at least 1')
        return cls([1] * n)

    @classmethod
    def parse(cls, text):
        """Parse a comma separated list"""
        return cls([w for w in text.split(',') if w.strip()])

    def homogeneous(self):
        return all(w == 1 for w in self.weights)

    def blocks(self):
        """Return, for each index, the previous index of equal weight (or None)"""
        last = {}
        prev = []
        for (i, w) in enumerate(self.weights):
            prev.append(last.get(w))
            last[w] = i
        return prev

    def weighted_sum(self, h):
        return sum(w * x for (w, x) in zip(self.weights, h))

    def __str__(self):
        return '({})'.format(','.join(format_rational(w) for w in self.weights))


class EnumParams:
    """The pair (delta, mu) with delta = (mu - 1/n)^-1"""

    def __init__(self, delta, mu):
        self.delta = rational(delta)
        self.mu = rational(mu)
        if self.delta <= 0:
            raise DomainError('delta must be positive, got {}'.format(format_rational(self.delta)))

    @classmethod
    def from_mu(cls, mu, n):
        mu = rational(mu)
        if mu < 1:
            raise DomainError('mu must be at least 1, got {}'.format(format_rational(mu)))
        return cls(1 / (mu - Fraction(1, n)), mu)

    @classmethod
    def from_delta(cls, delta, n):
        delta = rational(delta)
        if delta <= 0:
            raise DomainError('delta must be positive, got {}'.format(format_rational(delta)))
        return cls(delta, 1 / delta + Fraction(1, n))

    def __str__(self):
        return 'delta={} mu={}'.format(format_rational(self.delta), format_rational(self.mu))


class CandidateClass:
    """Almost uniform class H(C,m,k) = C - m(E_1+...+E_n) - kE_i"""

    def __init__(self, degree, m, k, n, degree_unit=1, c_sq=None):
        if degree < 1 or m < 1 or n < 1:
            raise DomainError('degree, m and n must be positive')
        if not (k > -m or (m, k) == (1, -1)):
            raise DomainError('Need k > -m or (m,k) = (1,-1), got m={} k={}'.format(m, k))
        if n == 1 and k != 0:
            raise DomainError('k must be 0 when n = 1')
        self.degree = degree
        self.m = m
        self.k = k
        self.n = n
        self.degree_unit = degree_unit
        self.c_sq = c_sq
        self.ratio = Fraction(degree * degree_unit, m * n + k)

    def cl(self):
        """Return C.L"""
        return self.degree * self.degree_unit

    def multiplicity_sum(self, w=None):
        if w is not None and not w.homogeneous():
            raise DomainError('Almost uniform classes need homogeneous weights')
        return self.m * self.n + self.k

    def key(self):
        return (self.ratio, self.m, self.k, self.degree)

    def as_dict(self):
        return {'t': self.degree, 'm': self.m, 'k': self.k,
                'ratio': format_rational(self.ratio)}

    def __eq__(self, other):
        if not isinstance(other, CandidateClass):
            return NotImplemented
        return (self.degree, self.m, self.k, self.n) == (other.degree, other.m, other.k, other.n)

    def __hash__(self):
        return hash((self.degree, self.m, self.k, self.n))

    def __repr__(self):
        return 'CandidateClass(t={}, m={}, k={}, n={})'.format(self.degree, self.m, self.k, self.n)


class GeneralCandidate:
    """Class C - h_1E_1 - ... - h_nE_n for general weights"""

    def __init__(self, degree, h, w, degree_unit=1, c_sq=None):
        h = tuple(h)
        if len(h) != w.n:
            raise DomainError('h has {} entries for {} points'.format(len(h), w.n))
        if any(x < 0 for x in h) or not any(h):
            raise DomainError('h must be nonnegative and not all zero')
        if degree < 1:
            raise DomainError('degree must be positive')
        self.degree = degree
        self.h = h
        self.degree_unit = degree_unit
        positive = [x for x in h if x > 0]
        self.gamma = len(positive)
        self.a = min(positive)
        self.weighted = w.weighted_sum(h)
        if self.weighted <= 0:
            raise DomainError('Weighted multiplicity sum must be positive')
        # Either a value (rank one) or a (low, high) interval.
        self.c_sq = c_sq
        self.ratio = Fraction(degree * degree_unit) / self.weighted

    def cl(self):
        return self.degree * self.degree_unit

    def multiplicity_sum(self, w=None):
        return self.weighted

    def key(self):
        return (self.ratio, self.h, self.degree)

    def as_dict(self):
        res = {'t': self.degree, 'h': list(self.h), 'gamma': self.gamma, 'a': self.a,
               'ratio': format_rational(self.ratio)}
        if isinstance(self.c_sq, tuple):
            res['c_sq'] = [format_rational(x) for x in self.c_sq]
        elif self.c_sq is not None:
            res['c_sq'] = format_rational(self.c_sq)
        return res

    def __eq__(self, other):
        if not isinstance(other, GeneralCandidate):
            return NotImplemented
        return (self.degree, self.h) == (other.degree, other.h)

    def __hash__(self):
        return hash((self.degree, self.h))

    def __repr__(self):
        return 'GeneralCandidate(t={}, h={})'.format(self.degree, self.h)


def f_delta_pairing(s, w, p, c):
    """Return the sign of F(delta).H as LT, EQ or GT"""
    # F(delta).H < 0 iff ratio < sqrt(L^2/(l^2 + delta)).
    return cmp_sq(c.ratio, Fraction(s.L2) / (w.norm_sq + p.delta))


def nef_threshold_upper(w, c):
    """Upper bound (L.C)/(sum l_i h_i) on the nef threshold"""
    total = c.multiplicity_sum(w)
    if total <= 0:
        raise DomainError('Zero weighted multiplicity')
    return Fraction(c.cl()) / total


def exact_epsilon_rank1(s, c):
    """Return epsilon exactly from one abnormal class on a rank one surface"""
    if not s.rank1:
        raise Unsupported('Exact value needs every divisor to be a multiple of L')
    # The class must actually be abnormal: ratio < sqrt(L^2/n).
    if cmp_sq(c.ratio, Fraction(s.L2, c.n)) != LT:
        raise DomainError('{} is not abnormal: ratio {} is not below sqrt(L^2/n)'.format(
            c, format_rational(c.ratio)))
    log.info('Exact value from %r: %s', c, format_rational(c.ratio))
    return c.ratio


def check_nef_claim(s, w, t):
    """Refuse a claimed nef F_t with t outside [0, sqrt(L^2/l^2)]"""
    t = rational(t)
    if t < 0 or cmp_sq(t, Fraction(s.L2) / w.norm_sq) == GT:
        raise InvariantViolation('F_t cannot be nef for t={}'.format(format_rational(t)))
    return t


def check_nef_claim_sq(s, w, t_sq):
    """As check_nef_claim, for a bound given by its square"""
    return _check_sq(Fraction(s.L2) / w.norm_sq, t_sq)


def check_uniform_nef_claim_sq(s, n, t_sq):
    """check_nef_claim_sq for the all-ones weight vector, l^2 = n"""
    if n < 1:
        raise DomainError('n must be at least 1')
    return _check_sq(Fraction(s.L2, n), t_sq)


def _check_sq(limit_sq, t_sq):
    t_sq = rational(t_sq)
    if t_sq < 0 or t_sq > limit_sq:
        raise InvariantViolation('F_t cannot be nef for t^2={}'.format(format_rational(t_sq)))
    return t_sq
