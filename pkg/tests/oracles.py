"""Brute-force reference implementations used only by the tests.

Everything here works on plain lists from ``G.rows()`` and shares no code
with the package.
"""
from __future__ import annotations

import itertools


def table(G):
    return [list(r) for r in G.rows()]


def identity(T):
    n = len(T)
    return next(e for e in range(n) if all(T[e][x] == x == T[x][e] for x in range(n)))


def inverse(T, e, x):
    return next(y for y in range(len(T)) if T[x][y] == e)


def closure(T, elems):
    e = identity(T)
    S = {e} | set(elems)
    while True:
        new = {T[a][b] for a in S for b in S} - S
        if not new:
            return frozenset(S)
        S |= new


def all_subgroups(T):
    """Every subgroup, built by adjoining one element at a time."""
    e = identity(T)
    found = {frozenset([e])}
    frontier = list(found)
    while frontier:
        nxt = []
        for S in frontier:
            for g in range(len(T)):
                if g not in S:
                    J = closure(T, S | {g})
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return found


def is_normal(T, S):
    e = identity(T)
    for g in range(len(T)):
        gi = inverse(T, e, g)
        for s in S:
            if T[T[g][s]][gi] not in S:
                return False
    return True


def normal_subgroups(T):
    return {S for S in all_subgroups(T) if is_normal(T, S)}


def minimal_normal(T):
    e = identity(T)
    nontriv = [S for S in normal_subgroups(T) if len(S) > 1]
    return {S for S in nontriv if not any(N < S for N in nontriv)}


def socle(T):
    mins = minimal_normal(T)
    return closure(T, set().union(*mins)) if mins else frozenset([identity(T)])


def derived(T, S):
    e = identity(T)
    comms = set()
    for a in S:
        for b in S:
            ai, bi = inverse(T, e, a), inverse(T, e, b)
            comms.add(T[T[ai][bi]][T[a][b]])
    return closure(T, comms)


def is_solvable(T, S):
    while len(S) > 1:
        D = derived(T, S)
        if D == S:
            return False
        S = D
    return True


def solvable_radical(T):
    solv = [S for S in normal_subgroups(T) if is_solvable(T, S)]
    return max(solv, key=len)


def center(T):
    n = len(T)
    return frozenset(z for z in range(n) if all(T[z][g] == T[g][z] for g in range(n)))


def first_nonassociative(T):
    n = len(T)
    for a, b, c in itertools.product(range(n), repeat=3):
        if T[T[a][b]][c] != T[a][T[b][c]]:
            return (a, b, c)
    return None


def are_isomorphic(TG, TH):
    """Exhaustive over all bijections; fine for n <= 8."""
    n = len(TG)
    if n != len(TH):
        return False
    for p in itertools.permutations(range(n)):
        if all(p[TG[a][b]] == TH[p[a]][p[b]] for a in range(n) for b in range(n)):
            return True
    return False
