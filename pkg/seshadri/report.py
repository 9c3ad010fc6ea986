#!/usr/bin/python3

"""Render results as json, csv or a table"""

import csv
import io
import json

import tabulate

from seshadri.exactnum import decimal_sqrt, format_rational

FORMATS = ['json', 'csv', 'table']

CSV_COLUMNS = ['n', 'method', 'eps_sq_num', 'eps_sq_den', 'strict', 'n_candidates']


def dumps(data):
    """Deterministic JSON"""
    return json.dumps(data, indent=4, sort_keys=True, ensure_ascii=False)


def bound_rows(results):
    rows = []
    for res in results:
        rows.append([res.n, res.method, res.epsilon_lower_sq.numerator,
                     res.epsilon_lower_sq.denominator, str(res.strict).lower(),
                     res.n_candidates])
    return rows


def _csv(headers, rows):
    out = io.StringIO()
    writer = csv.writer(out, lineterminator='\n')
    writer.writerow(headers)
    writer.writerows(rows)
    return out.getvalue().rstrip('\n')


def render_bounds(results, fmt):
    if fmt == 'json':
        if len(results) == 1:
            return dumps(results[0].as_dict())
        return dumps([res.as_dict() for res in results])
    if fmt == 'csv':
        return _csv(CSV_COLUMNS, bound_rows(results))
    rows = []
    for res in results:
        rows.append([res.n, res.method, format_rational(res.epsilon_lower_sq),
                     decimal_sqrt(res.epsilon_lower_sq), '>' if res.strict else '>=',
                     format_rational(res.remainder) if res.remainder is not None else None])
    return tabulate.tabulate(rows, headers=['n', 'Method', 'eps^2', 'eps', 'Rel', 'Remainder'])


def render_candidates(sets, fmt):
    if fmt == 'json':
        if len(sets) == 1:
            return dumps(sets[0].as_dict())
        return dumps([cs.as_dict() for cs in sets])
    rows = []
    for cs in sets:
        for cand in cs.candidates:
            data = cand.as_dict()
            rows.append([cs.n, data['t'], data.get('m', data.get('h')), data.get('k'),
                         data['ratio']])
    headers = ['n', 't', 'm', 'k', 'ratio']
    if fmt == 'csv':
        return _csv(headers, rows)
    return tabulate.tabulate(rows, headers=headers)


def render_ample(rows, fmt):
    """rows are (n, t, m, status, reason)"""
    if fmt == 'json':
        keys = ['n', 't', 'm', 'status', 'reason']
        return dumps([dict(zip(keys, row)) for row in rows])
    headers = ['n', 't', 'm', 'status', 'reason']
    if fmt == 'csv':
        return _csv(headers, rows)
    return tabulate.tabulate(rows, headers=headers)


def render_certs(certs, fmt):
    if fmt == 'json':
        return dumps([cert.as_dict() for cert in certs])
    rows = [[cert.kind, str(cert.pattern), format_rational(cert.bound_sq), cert.provenance]
            for cert in certs]
    headers = ['kind', 'pattern', 'bound_sq', 'provenance']
    if fmt == 'csv':
        return _csv(headers, rows)
    return tabulate.tabulate(rows, headers=headers)
