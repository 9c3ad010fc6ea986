#!/usr/bin/python3

"""Certified lower bounds on multi-point Seshadri constants.

All bounds are given by their square, as a multiple of L^2/n:

    eps^2 >= (L^2/n)(1 - 1/f)

where f is the remainder.  A larger f means a bound closer to the
limit sqrt(L^2/n).
"""

import logging
from fractions import Fraction

from seshadri.audit import AuditTrail, DomainError, HypothesisFailure, InvariantViolation
from seshadri.certificates import builtin_store, check_hypotheses, hr_top
from seshadri.enumeration import enumerate_homogeneous
from seshadri.exactnum import decimal_sqrt, format_rational, rational
from seshadri.surface import (EnumParams, SurfaceData, check_uniform_nef_claim_sq,
                              exact_epsilon_rank1)

log = logging.getLogger(__name__)

THM_A = 'THM_A'
THM_B = 'THM_B'
COR13 = 'COR13'
EXACT_RANK1 = 'EXACT_RANK1'

AMPLE = 'AMPLE'
UNKNOWN = 'UNKNOWN'

# mu used with the CCMO and double point facts.
CCMO_MU = 21

KILLED = 'killed'


class BoundResult:
    """A certified lower bound on eps^2"""

    def __init__(self, s, n, epsilon_lower_sq, method, strict, audit=None, exact=False,
                 mu=None, report=None, n_candidates=0):
        self.n = n
        self.epsilon_lower_sq = check_uniform_nef_claim_sq(s, n, epsilon_lower_sq)
        self.method = method
        self.strict = strict
        self.audit = audit if audit is not None else AuditTrail()
        self.exact = exact
        self.mu = mu
        self.report = report
        self.n_candidates = n_candidates
        self.remainder = remainder_of(s, n, self.epsilon_lower_sq)

    def as_dict(self):
        res = {'n': self.n,
               'method': self.method,
               'epsilon_lower_sq': format_rational(self.epsilon_lower_sq),
               'strict': self.strict,
               'epsilon_lower_decimal': decimal_sqrt(self.epsilon_lower_sq),
               'audit': self.audit.as_list(),
               'exact': self.exact}
        if self.mu is not None:
            res['mu'] = format_rational(self.mu)
        if self.remainder is not None:
            res['remainder'] = format_rational(self.remainder)
        if self.report is not None:
            res['report'] = self.report.as_dict()
        return res

    def __str__(self):
        rel = '>' if self.strict else '>='
        return 'eps({})^2 {} {} ({})'.format(self.n, rel, format_rational(self.epsilon_lower_sq),
                                            self.method)


def remainder_of(s, n, eps_sq):
    """Return f with eps^2 = (L^2/n)(1 - 1/f), or None at the limit"""
    gap = 1 - eps_sq * n / s.L2
    if gap <= 0:
        return None
    return 1 / gap


def theorem_b_value(s, n, mu):
    return Fraction(s.L2, n) * (1 - 1 / (n * mu))


def _check_n_mu(n, mu):
    if n < 1:
        raise DomainError('n must be at least 1')
    mu = rational(mu)
    if mu < 1:
        raise DomainError('mu must be at least 1, got {}'.format(format_rational(mu)))
    return mu


def bound_thm_a(s, n, mu, store, use_mu_prime=False):
    """Bound from uniform alpha certificates for every m < mu"""
    mu = _check_n_mu(n, mu)
    if n <= 2:
        raise DomainError('Theorem A needs n >= 3')
    report = check_hypotheses('A', s, n, mu, store)
    audit = AuditTrail()
    for row in report.checks:
        audit.add({'pattern': str(row.pattern)}, row.status, row.provenance)
    if not report.passed():
        raise HypothesisFailure('{} hypothesis row(s) fail for theorem A at n={} mu={}'.format(
            len(report.failures()), n, format_rational(mu)), report=report, audit=audit)
    if use_mu_prime:
        mu_prime = mu * (n - 1) / (n + 1)
        audit.add({'mu_prime': format_rational(mu_prime)}, 'used')
        return BoundResult(s, n, theorem_b_value(s, n, mu_prime), THM_A, False, audit,
                           mu=mu, report=report)
    value = Fraction(s.L2, n) * (1 - 1 / ((n - 2) * mu))
    return BoundResult(s, n, value, THM_A, True, audit, mu=mu, report=report)


def bound_thm_b(s, n, mu, store):
    """Bound (L^2/n)(1 - 1/(n mu)) with F(delta) shown nef.

    In rank one modes every candidate class at delta = (mu - 1/n)^-1 must
    be ruled out by a certificate.  In INTERVAL mode the hypothesis rows
    must all pass instead.
    """
    mu = _check_n_mu(n, mu)
    if n < 2:
        raise DomainError('Theorem B needs n >= 2')
    report = check_hypotheses('B', s, n, mu, store)
    audit = AuditTrail()
    value = theorem_b_value(s, n, mu)
    if not s.c_determined():
        for row in report.checks:
            audit.add({'pattern': str(row.pattern)}, row.status, row.provenance)
        if not report.passed():
            raise HypothesisFailure('{} hypothesis row(s) fail for theorem B at n={} mu={}'.format(
                len(report.failures()), n, format_rational(mu)), report=report, audit=audit)
        return BoundResult(s, n, value, THM_B, False, audit, mu=mu, report=report)

    cs = enumerate_homogeneous(s, n, EnumParams.from_mu(mu, n))
    survivors = []
    for cand in cs.candidates:
        found = store.killer(cand)
        if found is None:
            audit.add(cand.as_dict(), 'survives')
            survivors.append(cand)
            continue
        audit.add(cand.as_dict(), KILLED, 'alpha_0^2 >= {} from {}'.format(
            format_rational(found[0]), found[1]))
    for row in cs.rejected:
        audit.add(row, row['reason'])
    if survivors:
        raise HypothesisFailure('{} candidate(s) not ruled out at n={} mu={}: {}'.format(
            len(survivors), n, format_rational(mu), ', '.join(repr(c) for c in survivors)),
            report=report, audit=audit)
    if not report.passed():
        log.info('n=%d mu=%s: every candidate ruled out although %d row(s) fail', n,
                 format_rational(mu), len(report.failures()))
    return BoundResult(s, n, value, THM_B, False, audit, mu=mu, report=report,
                       n_candidates=len(cs))


def hr_mu(n):
    """1 + floor(sqrt n)(floor(sqrt n)-3)/2"""
    return 1 + hr_top(n)


def cor13_bound(n):
    """The explicit P2 bound for n >= 16"""
    if n < 16:
        raise DomainError('requires n ≥ 16; use --mu with certificates')
    s = SurfaceData.p2()
    terms = [(hr_mu(n), 'HR'), (CCMO_MU, 'CCMO+DOUBLEPOINT')]
    audit = AuditTrail()
    best = None
    for (mu, source) in terms:
        value = theorem_b_value(s, n, Fraction(mu))
        audit.add({'mu': mu, 'certificates': source}, 'term', format_rational(value))
        if best is None or value > best[0]:
            best = (value, mu)
    return BoundResult(s, n, best[0], COR13, False, audit, mu=Fraction(best[1]))


def bound_exact(s, n, cand):
    """eps^2 exactly, from an abnormal class known to exist"""
    if cand.n != n:
        raise DomainError('Candidate is for n={}, not {}'.format(cand.n, n))
    ratio = exact_epsilon_rank1(s, cand)
    audit = AuditTrail()
    audit.add(cand.as_dict(), 'abnormal')
    return BoundResult(s, n, ratio * ratio, EXACT_RANK1, False, audit, exact=True,
                       n_candidates=1)


def linear_remainder(n):
    """Best remainder known before, 12n + 1"""
    return 12 * n + 1


def ample_check(n, t, m):
    """Decide tL - m(E_1+...+E_n) on the blowup of P2; returns (status, reason)"""
    if n < 16:
        return (UNKNOWN, 'criterion requires n ≥ 16')
    if m < 1 or t < 1:
        raise DomainError('t and m must be positive')
    if t * t <= m * m * n:
        return (UNKNOWN, 't^2 = {} is not above m^2 n = {}'.format(t * t, m * m * n))
    limit = hr_mu(n) - Fraction(1, n)
    if m * m >= limit:
        return (UNKNOWN, 'm^2 = {} is not below {}'.format(m * m, format_rational(limit)))
    if t * t < m * m * n + 1:
        raise InvariantViolation('AMPLE with t^2 < m^2 n + 1')
    return (AMPLE, 't^2 > m^2 n and m^2 < {}'.format(format_rational(limit)))


def ah_condition(s, n, m, a):
    """Riemann-Roch count: dim |aL| >= n m(m+1)/2, degrees in units of L^2"""
    if m == 0:
        return True
    # Riemann-Roch lower bound for dim |aL|.
    dim = Fraction(a * (a * s.L2 - s.LK), 2) + s.pa
    return dim >= Fraction(n * m * (m + 1), 2)
