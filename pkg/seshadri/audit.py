#!/usr/bin/python3

"""Exceptions and audit trail capture for the bounds engine"""

import logging

log = logging.getLogger(__name__)

# Reasons a class can leave the candidate list before certificates are used.
WINDOW_EMPTY = 'window empty'
ADJUNCTION = 'adjunction'


class SeshadriException(Exception):
    """General exception class"""


class DomainError(SeshadriException):
    """Input outside the domain of an operation"""


class Unsupported(SeshadriException):
    """Hypotheses of the underlying result do not hold"""


class ConfigError(SeshadriException):
    """Bad surface, rc file or command line"""


class CertificateParseError(SeshadriException):
    """Certificate file could not be parsed"""

    def __init__(self, path, errors):
        self.path = path
        # List of (line number, message).
        self.errors = errors
        lines = ['{}:{}: {}'.format(path, line, msg) for (line, msg) in errors]
        super().__init__('\n'.join(lines))


class HypothesisFailure(SeshadriException):
    """Certificates do not cover every obstruction"""

    def __init__(self, message, report=None, audit=None):
        super().__init__(message)
        self.report = report
        self.audit = audit


class InvariantViolation(SeshadriException):
    """An internal self-check failed"""


class AuditEntry:
    """One line of an audit trail"""

    def __init__(self, subject, verdict, detail=None):
        # subject is a dict describing the class or hypothesis row.
        self.subject = subject
        self.verdict = verdict
        self.detail = detail

    def as_dict(self):
        res = {'subject': self.subject, 'verdict': self.verdict}
        if self.detail is not None:
            res['detail'] = self.detail
        return res

    def __str__(self):
        subject = ' '.join('{}={}'.format(k, v) for (k, v) in sorted(self.subject.items()))
        if self.detail:
            return '{}: {} ({})'.format(subject, self.verdict, self.detail)
        return '{}: {}'.format(subject, self.verdict)


class AuditTrail:
    """Class for collecting audit entries"""

    def __init__(self):
        self.entries = []

    def add(self, subject, verdict, detail=None):
        """Add an entry"""
        entry = AuditEntry(subject, verdict, detail)
        self.entries.append(entry)
        log.debug(str(entry))
        return entry

    def extend(self, other):
        for entry in other.entries:
            self.entries.append(entry)

    def as_list(self):
        return [entry.as_dict() for entry in self.entries]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return '\n'.join(str(entry) for entry in self.entries)
