"""Brute-force reference routines for small fields and degrees.

Everything here enumerates, divides with the schoolbook algorithm and checks
each answer by multiplying back before returning it.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import GuardExceeded
from .skew_ring import SkewPolynomial, extended_rgcd_naive, right_divmod_naive

ENUMERATION_LIMIT = 10 ** 6


def _guard(ctx, d):
    size = ctx.field.order ** d
    if size > ENUMERATION_LIMIT:
        raise GuardExceeded(f"|k|^{d} = {size} candidates exceeds the limit {ENUMERATION_LIMIT}")


def _monic_candidates(ctx, d):
    Q = ctx.field.order
    for tail in itertools.product(range(Q), repeat=d):
        yield SkewPolynomial._wrap(ctx, np.array(tail + (1,), dtype=np.int64))


def _right_divisors(P, d):
    ctx = P.ctx
    _guard(ctx, d)
    out = []
    for D in _monic_candidates(ctx, d):
        q, r = right_divmod_naive(P, D)
        if r.is_zero():
            if q * D != P:
                raise AssertionError("division check failed")
            out.append(D)
    return out


def enumerate_right_divisors(P, d):
    """All monic right divisors of P of degree d."""
    if P.is_zero():
        raise ValueError("every polynomial divides zero")
    if d < 0 or d > P.degree:
        return set()
    return set(_right_divisors(P, d))


def _is_irreducible(D, memo):
    key = D.key()
    if key not in memo:
        memo[key] = D.degree >= 1 and not any(
            _right_divisors(D, j) for j in range(1, D.degree))
    return memo[key]


def enumerate_factorizations(P):
    """All tuples (P_m, ..., P_1) of monic irreducibles with P_m ... P_1 = monic(P)."""
    if P.is_zero():
        raise ValueError("cannot factor zero")
    P = P.monic()
    _guard(P.ctx, P.degree)
    irr = {}
    memo = {}

    def rec(A):
        key = A.key()
        if key in memo:
            return memo[key]
        if A.degree == 0:
            memo[key] = {()}
            return memo[key]
        out = set()
        for j in range(1, A.degree + 1):
            for D in _right_divisors(A, j):
                if not _is_irreducible(D, irr):
                    continue
                rest = right_divmod_naive(A, D)[0]
                for seq in rec(rest):
                    out.add(seq + (D,))
        memo[key] = out
        return out

    result = rec(P)
    for seq in result:
        prod = SkewPolynomial.one(P.ctx)
        for f in seq:
            prod = prod * f
        if prod != P:
            raise AssertionError("factorization check failed")
    return result


def naive_extended_rgcd(A, B):
    """(G, U, V) with U A + V B = G, G the monic right gcd, by plain Euclid."""
    G, U, V = extended_rgcd_naive(A, B)
    if U * A + V * B != G:
        raise AssertionError("Bezout check failed")
    return G, U, V
