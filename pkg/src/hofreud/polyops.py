"""Dense polynomial helpers over mpf coefficients, ascending powers.

Internal plumbing: coefficient lists are plain Python lists, arithmetic
runs at the caller's context precision, and exact zeros stay exact so
parity patterns survive every operation.
"""

from __future__ import annotations

from typing import Sequence

from mpmath import mpf


def padd(p: Sequence[mpf], q: Sequence[mpf]) -> list[mpf]:
    n = max(len(p), len(q))
    out = [mpf(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return out


def psub(p: Sequence[mpf], q: Sequence[mpf]) -> list[mpf]:
    return padd(p, [-c for c in q])


def pscale(p: Sequence[mpf], c) -> list[mpf]:
    return [c * ci for ci in p]


def pshift(p: Sequence[mpf], k: int) -> list[mpf]:
    """Multiply by x^k."""
    return [mpf(0)] * k + list(p)


def pmul(p: Sequence[mpf], q: Sequence[mpf]) -> list[mpf]:
    out = [mpf(0)] * (len(p) + len(q) - 1)
    for i, ci in enumerate(p):
        if ci == 0:
            continue
        for j, cj in enumerate(q):
            if cj == 0:
                continue
            out[i + j] += ci * cj
    return out


def pderiv(p: Sequence[mpf]) -> list[mpf]:
    if len(p) <= 1:
        return [mpf(0)]
    return [i * p[i] for i in range(1, len(p))]


def peval(p: Sequence[mpf], x) -> mpf:
    out = mpf(0)
    for c in reversed(p):
        out = out * x + c
    return out


def pwronskian(f: Sequence[mpf], g: Sequence[mpf]) -> list[mpf]:
    """f g' - f' g."""
    return psub(pmul(f, pderiv(g)), pmul(pderiv(f), g))


def pdegree(p: Sequence[mpf]) -> int:
    """Largest index with nonzero coefficient; -1 for the zero polynomial."""
    for i in range(len(p) - 1, -1, -1):
        if p[i] != 0:
            return i
    return -1
