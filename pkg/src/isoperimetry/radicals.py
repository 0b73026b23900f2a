"""Exact sign of linear combinations of d-th roots of non-negative integers.

Each ``n ** (1/d)`` is rewritten as ``c * m ** (1/d)`` with m free of d-th
powers.  Real d-th roots of distinct such m are linearly independent over Q,
so a combination vanishes iff every grouped coefficient does; otherwise the
sign is read off a decimal evaluation whose precision is raised until the
error bound is beaten.
"""
from __future__ import annotations

from collections import defaultdict
from decimal import Decimal, localcontext
from fractions import Fraction


def _power_free(n: int, d: int) -> tuple[int, int]:
    """Write n = c**d * m with m free of d-th powers; return (c, m)."""
    c, m = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        c *= p ** (e // d)
        m *= p ** (e % d)
        p += 1
    return c, m * n


def root_combination_sign(terms, d: int) -> int:
    """Sign of ``sum(coef * n ** (1/d) for coef, n in terms)``.

    ``coef`` are rationals and ``n`` non-negative integers.
    """
    groups = defaultdict(Fraction)
    for coef, n in terms:
        if n < 0:
            raise ValueError("radicands must be non-negative")
        if n == 0 or coef == 0:
            continue
        c, m = _power_free(int(n), d)
        groups[m] += Fraction(coef) * c
    groups = {m: c for m, c in groups.items() if c != 0}
    if not groups:
        return 0
    if len(groups) == 1:
        return 1 if next(iter(groups.values())) > 0 else -1
    prec = 40
    while True:
        with localcontext() as ctx:
            ctx.prec = prec
            total = Decimal(0)
            bound = Decimal(0)
            for m, c in groups.items():
                root = Decimal(m) ** (Decimal(1) / Decimal(d))
                val = Decimal(c.numerator) / Decimal(c.denominator) * root
                total += val
                bound += abs(val)
            err = bound * Decimal(10) ** (5 - prec)
            if abs(total) > err:
                return 1 if total > 0 else -1
        prec *= 2
