#!/usr/bin/env python3

"""Compare the explicit P2 bound against the linear remainder 12n+1"""

import getopt
import sys

import tabulate

import seshadri.bounds
import seshadri.report
from seshadri.exactnum import decimal_str, format_rational

DEFAULT_START = 16
DEFAULT_END = 40


def table_rows(start, end):
    """Return one row per n: n, mu, eps^2, remainder, 12n+1, ratio"""
    rows = []
    for n in range(start, end + 1):
        res = seshadri.bounds.cor13_bound(n)
        linear = seshadri.bounds.linear_remainder(n)
        rows.append([n, format_rational(res.mu), format_rational(res.epsilon_lower_sq),
                     format_rational(res.remainder), linear,
                     decimal_str(res.remainder / linear, 4)])
    return rows


def main():
    """Main"""

    args = ['start=',
            'end=',
            'json']
    try:
        opts, args = getopt.getopt(sys.argv[1:], '', args)
    except getopt.GetoptError:
        print('Unknown options')
        print(args)
        sys.exit(1)

    start = DEFAULT_START
    end = DEFAULT_END
    use_json = False

    for opt, value in opts:
        if opt == '--start':
            start = int(value)
        elif opt == '--end':
            end = int(value)
        elif opt == '--json':
            use_json = True

    if start < 16 or end < start:
        print('Need 16 <= start <= end')
        sys.exit(1)

    headers = ['n', 'mu', 'eps^2', 'Remainder', '12n+1', 'Gain']
    rows = table_rows(start, end)
    if use_json:
        keys = ['n', 'mu', 'epsilon_lower_sq', 'remainder', 'linear_remainder', 'gain']
        print(seshadri.report.dumps([dict(zip(keys, row)) for row in rows]))
    else:
        print(tabulate.tabulate(rows, headers=headers))


if __name__ == '__main__':
    main()
