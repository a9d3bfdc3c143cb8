"""Counting and uniform sampling of factorizations of etale skew polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .centre_norm import centre_embed, commutative_factorize, reduced_norm
from .errors import NotEtale, RetryBudgetExceeded
from .factorizer import (
    FactorizationResult,
    _e_seq,
    _right_quotient,
    first_factor,
    type_profile,
)
from .field_tower import FieldElement
from .skew_ring import SkewPolynomial, llcm, rgcd, right_divmod

DIVISOR_BUDGET = 128
SAMPLE_BUDGET = 4096


def _check_table(seq, what):
    seq = tuple(int(a) for a in seq)
    if any(a < 1 for a in seq) or any(a < b for a, b in zip(seq, seq[1:])):
        raise ValueError(f"{what} must be a nonincreasing sequence of positive integers, got {seq}")
    return seq


def dual_type(e_seq):
    """Transpose of the Young diagram with row lengths e_seq."""
    e = _check_table(e_seq, "type")
    if not e:
        return ()
    return tuple(sum(1 for x in e if x >= j) for j in range(1, e[0] + 1))


@dataclass(frozen=True)
class PathTable:
    """Table a_1 >= ... >= a_m; column i has weight q^(delta*(i-1))."""

    delta: int
    cells: tuple

    def __post_init__(self):
        object.__setattr__(self, "cells", _check_table(self.cells, "table"))

    def moves(self, q):
        """(weight, reduced table) for every admissible one-cell removal."""
        a = self.cells
        m = len(a)
        out = []
        for i in range(m):
            if i == m - 1 or a[i] > a[i + 1]:
                i0 = a.index(a[i])
                w = sum(q ** (self.delta * l) for l in range(i0, i + 1))
                b = list(a)
                b[i] -= 1
                out.append((w, PathTable(self.delta, tuple(x for x in b if x))))
        return out

    def count(self, q):
        return count_type_e_step(self.delta, self.cells, q)


@lru_cache(maxsize=None)
def _count_step(delta, a, q):
    if not a:
        return 1
    return sum(w * _count_step(delta, t.cells, q) for w, t in PathTable(delta, a).moves(q))


def count_type_e_step(delta, a_seq, q):
    """Number of factorizations of a single-centre-factor polynomial with dual type a_seq."""
    return _count_step(int(delta), _check_table(a_seq, "table"), int(q))


def _count_from_profile(profile, q):
    taus = [sum(t.e_seq) for t in profile]
    out = factorial(sum(taus))
    for tau in taus:
        out //= factorial(tau)
    for t in profile:
        out *= count_type_e_step(t.delta, t.dual_seq, q)
    return out


def _etale_monic(P):
    if P.is_zero():
        raise ValueError("cannot count factorizations of the zero polynomial")
    if P[0] == 0:
        raise NotEtale("counting is defined for polynomials with nonzero constant coefficient")
    return P.monic()


def count_factorizations(P):
    """Number of factorizations of P into monic irreducibles (up to the unit)."""
    P = _etale_monic(P)
    if P.degree == 0:
        return 1
    return _count_from_profile(type_profile(P), P.ctx.q)


# sampling

def random_right_divisor(P, N, rng, P0=None, budget=DIVISOR_BUDGET):
    """Uniform monic irreducible right divisor of P, for P of type (e) with norm N^e."""
    ctx = P.ctx
    delta = N.degree
    if P.degree == delta:
        return P.monic()
    if P0 is None:
        P0 = first_factor(P, N, rng)
    EN = centre_embed(N)
    Q = _right_quotient(EN, P)
    for _ in range(budget):
        R = SkewPolynomial.random(ctx, EN.degree - 1, rng)
        S = right_divmod(Q * R, EN)[1]
        if S.is_zero():
            continue
        G = _right_quotient(llcm(S, P0), S)
        if G.degree == delta:
            return G.monic()
    raise RetryBudgetExceeded(f"random_right_divisor failed {budget} times")


class FactorizationSampler:
    """Uniform sampler over the factorizations of one etale polynomial.

    Counts of quotient types are memoised across draws.
    """

    def __init__(self, P):
        self.P = _etale_monic(P)
        self.ctx = P.ctx
        self.unit = P.lc
        self.q = self.ctx.q
        self.profile = type_profile(self.P) if self.P.degree > 0 else ()
        self._first = {}

    def _count(self, es):
        return _count_of(tuple((d, e) for d, e in es), self.q)

    def sample(self, rng):
        ctx = self.ctx
        cur = self.P
        state = [(t.norm, t.e_seq) for t in self.profile]
        out = []
        while cur.degree > 0:
            D, state = self._draw_right_factor(cur, state, rng)
            out.append(D)
            cur = _right_quotient(cur, D)
        return FactorizationResult(FieldElement(ctx, self.unit), tuple(reversed(out)), 0)

    def _draw_right_factor(self, cur, state, rng):
        # rejection step: propose N_i with weight (#divisors) * (best quotient count),
        # draw a divisor uniformly, keep it with probability count / best
        q = self.q
        props = []
        for i, (N, e) in enumerate(state):
            if not e:
                continue
            n_div = sum(q ** (N.degree * l) for l in range(e[0]))
            best = max(self._count(_replace(state, i, e2)) for e2 in _quotient_types(e))
            props.append((i, n_div * best, best))
        weights = np.array([float(w) for _, w, _ in props])
        for _ in range(SAMPLE_BUDGET):
            k = int(rng.choice(len(props), p=weights / weights.sum()))
            i, _, best = props[k]
            N, e = state[i]
            top = rgcd(cur, centre_embed(N))
            key = (cur, i)
            P0 = self._first.get(key)
            if P0 is None:
                P0 = self._first[key] = first_factor(top, N, rng)
            D = random_right_divisor(top, N, rng, P0)
            rest = _right_quotient(cur, D)
            e2 = _e_seq(rest, N) if sum(e) > 1 else ()
            new = _replace(state, i, e2)
            c = self._count(new)
            if c == best or rng.random() * best < c:
                return D, new
        raise RetryBudgetExceeded("sampling step rejected too many proposals")


def _replace(state, i, e2):
    return [(N, e2 if j == i else e) for j, (N, e) in enumerate(state)]


def _quotient_types(e):
    """Types reachable by removing one simple top factor."""
    a = dual_type(e)
    out = set()
    for i in range(len(a)):
        if i == len(a) - 1 or a[i] > a[i + 1]:
            b = list(a)
            b[i] -= 1
            b = tuple(x for x in b if x)
            out.add(dual_type(b) if b else ())
    return out


def _count_of(state, q):
    taus = [sum(e) for _, e in state]
    out = factorial(sum(taus))
    for tau in taus:
        out //= factorial(tau)
    for N, e in state:
        if e:
            out *= count_type_e_step(N.degree, dual_type(e), q)
    return out


def random_factorization(P, rng, sampler=None):
    """A factorization of P drawn uniformly from all of them."""
    if sampler is None:
        sampler = FactorizationSampler(P)
    return sampler.sample(rng)
