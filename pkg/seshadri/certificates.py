#!/usr/bin/python3

"""Lower-bound certificates for alpha and alpha_0, and hypothesis checks.

A certificate asserts that every curve (ALPHA) or every irreducible curve
(ALPHA0) with a given multiplicity pattern at n general points has
L-degree at least g*sqrt(bound_sq).  Certificates are facts: the engine
only compares them against required values and never derives new ones,
apart from the integer rounding and the uniform to almost-uniform
transformer described on CertificateStore.
"""

import glob
import logging
import os
from fractions import Fraction

from seshadri.audit import CertificateParseError, DomainError, SeshadriException
from seshadri.exactnum import ceil_sqrt, format_rational, isqrt_floor, rational

log = logging.getLogger(__name__)

ALPHA = 'ALPHA'
ALPHA0 = 'ALPHA0'
KINDS = {'alpha': ALPHA, 'alpha0': ALPHA0}

HR = 'HR'
CCMO = 'CCMO'
DOUBLEPOINT = 'DOUBLEPOINT'

PASS = 'PASS'
FAIL = 'FAIL'
MISSING = 'MISSING'

THEOREMS = ('A', 'B')

CERT_SUFFIX = '.cert'


class Pattern:
    """Multiplicity vector m^[n] (k = 0) or (m^[n-1], m+k)"""

    def __init__(self, m, n, k=0):
        if n < 1:
            raise DomainError('Pattern needs n >= 1')
        if m < 0 or m + k < 0:
            raise DomainError('Pattern multiplicities must be nonnegative')
        self.m = m
        self.n = n
        self.k = k

    @classmethod
    def uniform(cls, m, n):
        return cls(m, n)

    @classmethod
    def almost(cls, m, k, n):
        return cls(m, n, k)

    def is_uniform(self):
        return self.k == 0

    def key(self):
        return (self.n, self.m, self.k)

    def __eq__(self, other):
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        if self.is_uniform():
            return '{}^[{}]'.format(self.m, self.n)
        return '({}^[{}],{})'.format(self.m, self.n - 1, self.m + self.k)

    def __repr__(self):
        if self.is_uniform():
            return 'Uniform(m={}, n={})'.format(self.m, self.n)
        return 'AlmostUniform(m={}, k={}, n={})'.format(self.m, self.k, self.n)


class AlphaCertificate:
    """Asserted lower bound alpha(pattern)^2 >= bound_sq * g^2"""

    def __init__(self, kind, pattern, bound_sq, provenance):
        if kind not in (ALPHA, ALPHA0):
            raise DomainError('Unknown certificate kind {!r}'.format(kind))
        bound_sq = rational(bound_sq)
        if bound_sq < 0:
            raise DomainError('bound_sq must be nonnegative')
        self.kind = kind
        self.pattern = pattern
        self.bound_sq = bound_sq
        self.provenance = provenance

    def tightened(self):
        """Round a uniform bound up to the next integer degree"""
        if not self.pattern.is_uniform():
            return self
        degree = ceil_sqrt(self.bound_sq)
        if degree * degree == self.bound_sq:
            return self
        log.info('Tightening %s %s: %s -> %d', self.kind, self.pattern,
                 format_rational(self.bound_sq), degree * degree)
        return AlphaCertificate(self.kind, self.pattern, degree * degree, self.provenance)

    def as_dict(self):
        return {'kind': self.kind,
                'pattern': str(self.pattern),
                'bound_sq': format_rational(self.bound_sq),
                'provenance': self.provenance}

    def __str__(self):
        return '{} {} bound_sq={} [{}]'.format(self.kind.lower(), self.pattern,
                                               format_rational(self.bound_sq), self.provenance)


def hr_top(n):
    """Largest m covered by the HR fact, floor(sqrt n)(floor(sqrt n)-3)/2"""
    f = isqrt_floor(n)
    return max(f * (f - 3) // 2, 0)


def builtin_hr(n):
    if n < 10:
        return []
    return [AlphaCertificate(ALPHA, Pattern.uniform(m, n), m * m * n, HR)
            for m in range(1, hr_top(n) + 1)]


def builtin_ccmo(n):
    if n < 10:
        return []
    return [AlphaCertificate(ALPHA, Pattern.uniform(m, n), m * m * n, CCMO)
            for m in range(1, 21)]


def builtin_doublepoint(n):
    """alpha_0 for one double point and n-1 simple points, or None"""
    if n < 16:
        return None
    return AlphaCertificate(ALPHA0, Pattern.almost(1, 1, n), Fraction((n + 1) ** 2, n),
                            DOUBLEPOINT)


class CertificateStore:
    """Write-once collection of certificates, indexed by pattern.

    Lookups return the best bound_sq together with its provenance.  An
    alpha_0 lookup also accepts, for the same pattern, ALPHA certificates;
    for an almost uniform pattern with k != 0 the uniform bound for
    (nm+k)^[n] divided by n^2; and for (1^[n-1], 0) the uniform bound for
    1^[n-1].
    """

    def __init__(self, certs=None, integer_degrees=True):
        self.integer_degrees = integer_degrees
        self.frozen = False
        self._best = {}
        self.certs = []
        if certs:
            for cert in certs:
                self.add(cert)

    def add(self, cert):
        if self.frozen:
            raise SeshadriException('Certificate store is frozen')
        if self.integer_degrees:
            cert = cert.tightened()
        self.certs.append(cert)
        key = (cert.kind, cert.pattern)
        best = self._best.get(key)
        if best is None or cert.bound_sq > best.bound_sq:
            self._best[key] = cert

    def extend(self, certs):
        for cert in certs:
            self.add(cert)

    def freeze(self):
        self.frozen = True
        return self

    def alpha(self, pattern):
        """Return (bound_sq, provenance) for alpha(pattern), or None"""
        cert = self._best.get((ALPHA, pattern))
        if cert is None:
            return None
        return (cert.bound_sq, cert.provenance)

    def alpha0(self, pattern):
        """Return (bound_sq, provenance) for alpha_0(pattern), or None"""
        options = []
        for kind in (ALPHA0, ALPHA):
            cert = self._best.get((kind, pattern))
            if cert is not None:
                options.append((cert.bound_sq, cert.provenance))
        if not pattern.is_uniform():
            (m, k, n) = (pattern.m, pattern.k, pattern.n)
            if (m, k) == (1, -1):
                found = self.alpha(Pattern.uniform(1, n - 1))
                if found is not None:
                    options.append((found[0], '{} via 1^[{}]'.format(found[1], n - 1)))
            else:
                found = self.alpha(Pattern.uniform(n * m + k, n))
                if found is not None:
                    options.append((found[0] / (n * n),
                                    '{} via {}^[{}]/{}'.format(found[1], n * m + k, n, n)))
        if not options:
            return None
        return max(options, key=lambda option: option[0])

    def killer(self, cand):
        """Return (bound_sq, provenance) of a certificate ruling out cand, or None"""
        if cand.k == 0:
            pattern = Pattern.uniform(cand.m, cand.n)
        else:
            pattern = Pattern.almost(cand.m, cand.k, cand.n)
        found = self.alpha0(pattern)
        if found is None:
            return None
        # alpha_0 > C.L, in units of g.
        if found[0] > cand.degree * cand.degree:
            return found
        return None

    def __len__(self):
        return len(self.certs)

    def __iter__(self):
        return iter(self.certs)


def builtin_store(s, n, extra=()):
    """HR, CCMO for n and n-1, and the double point fact; P2 only"""
    store = CertificateStore()
    if s.mode == 'P2':
        store.extend(builtin_hr(n))
        store.extend(builtin_ccmo(n))
        store.extend(builtin_ccmo(n - 1))
        dp = builtin_doublepoint(n)
        if dp is not None:
            store.add(dp)
    store.extend(extra)
    return store.freeze()


def _parse_line(text):
    # Returns an AlphaCertificate without provenance, or raises ValueError.
    words = text.split()
    kind = KINDS.get(words[0].lower())
    if kind is None:
        raise ValueError('unknown kind {!r}'.format(words[0]))
    if len(words) < 2 or words[1] not in ('uniform', 'almost'):
        raise ValueError('expected "uniform" or "almost"')
    fields = {}
    for word in words[2:]:
        if '=' not in word:
            raise ValueError('expected key=value, got {!r}'.format(word))
        (key, value) = word.split('=', 1)
        if key in fields:
            raise ValueError('duplicate field {}'.format(key))
        fields[key] = value
    wanted = {'m', 'n', 'bound_sq'}
    if words[1] == 'almost':
        wanted.add('k')
    missing = wanted - set(fields)
    if missing:
        raise ValueError('missing {}'.format(', '.join(sorted(missing))))
    unknown = set(fields) - wanted - {'source'}
    if unknown:
        raise ValueError('unknown field {}'.format(', '.join(sorted(unknown))))
    try:
        m = int(fields['m'])
        n = int(fields['n'])
        k = int(fields.get('k', 0))
    except ValueError:
        raise ValueError('m, n and k must be integers')
    if m < 1:
        raise ValueError('m must be at least 1')
    if n < 1:
        raise ValueError('n must be at least 1')
    if words[1] == 'almost' and k == 0:
        raise ValueError('almost pattern needs k != 0')
    try:
        bound_sq = rational(fields['bound_sq'])
        pattern = Pattern(m, n, k)
        return (AlphaCertificate(kind, pattern, bound_sq, None), fields.get('source'))
    except DomainError as e:
        raise ValueError(str(e))


def load_certificates(path):
    """Parse a certificate file, collecting every bad line"""
    certs = []
    errors = []
    try:
        with open(path, 'r', encoding='utf-8') as ofh:
            lines = ofh.readlines()
    except (OSError, UnicodeDecodeError) as e:
        raise CertificateParseError(path, [(0, str(e))])
    for (idx, line) in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith('#'):
            continue
        try:
            (cert, source) = _parse_line(text)
        except ValueError as e:
            errors.append((idx, str(e)))
            continue
        provenance = 'USER({}:{})'.format(path, idx)
        if source:
            provenance = '{} {}'.format(provenance, source)
        cert.provenance = provenance
        certs.append(cert)
    if errors:
        raise CertificateParseError(path, errors)
    log.info('Loaded %d certificate(s) from %s', len(certs), path)
    return certs


def certificate_files(paths):
    """Expand ~ and directories, the latter to their sorted *.cert files"""
    files = []
    for path in paths:
        path = os.path.expanduser(path)
        if os.path.isdir(path):
            files.extend(sorted(glob.glob(os.path.join(path, '*' + CERT_SUFFIX))))
        else:
            files.append(path)
    return files


class HypothesisRow:
    """One required certificate of a theorem"""

    def __init__(self, pattern, required_sq, supplied_sq, provenance=None):
        self.pattern = pattern
        self.required_sq = required_sq
        self.supplied_sq = supplied_sq
        self.provenance = provenance
        if supplied_sq is not MISSING and supplied_sq >= required_sq:
            self.status = PASS
        else:
            self.status = FAIL

    def as_dict(self):
        res = {'pattern': str(self.pattern),
               'required_sq': format_rational(self.required_sq),
               'status': self.status}
        if self.supplied_sq is MISSING:
            res['supplied_sq'] = MISSING
        else:
            res['supplied_sq'] = format_rational(self.supplied_sq)
            res['provenance'] = self.provenance
        return res


class HypothesisReport:
    """Rows of a theorem's hypothesis set at (n, mu)"""

    def __init__(self, theorem, n, mu):
        self.theorem = theorem
        self.n = n
        self.mu = mu
        self.checks = []

    def add(self, row):
        if row.status == FAIL:
            log.info('Theorem %s n=%d: %s needs %s, has %s', self.theorem, self.n, row.pattern,
                     format_rational(row.required_sq), row.supplied_sq)
        self.checks.append(row)

    def passed(self):
        return all(row.status == PASS for row in self.checks)

    def failures(self):
        return [row for row in self.checks if row.status == FAIL]

    def as_dict(self):
        return {'theorem': self.theorem,
                'n': self.n,
                'mu': format_rational(self.mu),
                'passed': self.passed(),
                'checks': [row.as_dict() for row in self.checks]}


def _row(s, pattern, required_sq, found):
    if found is None:
        return HypothesisRow(pattern, required_sq, MISSING)
    # bound_sq is in units of g^2.
    return HypothesisRow(pattern, required_sq, found[0] * s.degree_unit ** 2, found[1])


def check_hypotheses(theorem, s, n, mu, store):
    """Compare the store against the certificates a theorem asks for"""
    if theorem not in THEOREMS:
        raise DomainError('Unknown theorem {!r}'.format(theorem))
    mu = rational(mu)
    if mu < 1:
        raise DomainError('mu must be at least 1')
    if theorem == 'A' and n <= 2:
        raise DomainError('Theorem A needs n >= 3')
    if n < 1:
        raise DomainError('n must be at least 1')
    report = HypothesisReport(theorem, n, mu)
    base = s.L2 * (n - 1 / mu)
    m = 1
    while m < mu:
        pattern = Pattern.uniform(m, n)
        if theorem == 'A':
            found = store.alpha(pattern)
        else:
            found = store.alpha0(pattern)
        report.add(_row(s, pattern, m * m * base, found))
        m += 1
    if theorem == 'B' and n > 1:
        m = 1
        while m * (n - 1) < mu:
            bound = isqrt_floor(2 * m) + 1
            for k in range(max(-m + 1, -bound), bound + 1):
                if k == 0 or k * k * (n - 1) >= n * min(m, m + k):
                    continue
                pattern = Pattern.almost(m, k, n)
                required = Fraction(m * n + k, n) ** 2 * base
                report.add(_row(s, pattern, required, store.alpha0(pattern)))
            m += 1
    return report
