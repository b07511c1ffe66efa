"""Dense univariate polynomials over a Field, coefficients listed low degree first."""

from __future__ import annotations

from .linalg import Field


def trim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def add(p: list, q: list, field: Field) -> list:
    n = max(len(p), len(q))
    z = field.zero
    return trim([(p[i] if i < len(p) else z) + (q[i] if i < len(q) else z) for i in range(n)])


def neg(p: list) -> list:
    return [-c for c in p]


def sub(p: list, q: list, field: Field) -> list:
    return add(p, neg(q), field)


def mul(p: list, q: list, field: Field) -> list:
    if not p or not q:
        return []
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_(p: list, q: list, field: Field) -> tuple[list, list]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(p)
    quot = [field.zero] * max(len(r) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q):
        c = r[-1] / lead
        shift = len(r) - len(q)
        quot[shift] = c
        for i, qc in enumerate(q):
            r[shift + i] = r[shift + i] - c * qc
        r.pop()
        r = trim(r)
    return trim(quot), r


def egcd(p: list, q: list, field: Field) -> tuple[list, list, list]:
    """(g, u, v) with u p + v q = g and g monic."""
    r0, r1 = trim(p), trim(q)
    u0, u1 = [field.one], []
    v0, v1 = [], [field.one]
    while r1:
        quo, rem = divmod_(r0, r1, field)
        r0, r1 = r1, rem
        u0, u1 = u1, sub(u0, mul(quo, u1, field), field)
        v0, v1 = v1, sub(v0, mul(quo, v1, field), field)
    lead = r0[-1]
    inv = field.one / lead
    return ([c * inv for c in r0], [c * inv for c in u0], [c * inv for c in v0])


def linear(root, field: Field) -> list:
    """x - root."""
    return [-root, field.one]


def split_root(p: list, root, field: Field) -> tuple[int, list]:
    """Write p = (x - root)^a q with q(root) != 0; returns (a, q)."""
    a = 0
    lin = linear(root, field)
    while True:
        quo, rem = divmod_(p, lin, field)
        if rem:
            return a, p
        p = quo
        a += 1
