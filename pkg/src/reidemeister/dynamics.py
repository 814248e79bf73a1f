"""Iterates of an automorphism: Reidemeister number sequences, Gauss
congruences and periodic-point counts on the finite dual."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np
import sympy

from .chars import CharacterTable, character_table, dual_action
from .errors import ConsistencyError, InfiniteValueEncountered
from .group import Automorphism, FiniteGroup
from .lattice import (
    INFINITY, ENUMERATION_LIMIT, IntMatrix, _require_unimodular, reidemeister_number_lattice, torus_solutions_scaled,
)
from .reports import Check
from .twisted import reidemeister_number

Source = Union[tuple[FiniteGroup, Automorphism], IntMatrix]


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius is defined for n >= 1")
    exps = sympy.factorint(n).values()
    if any(e > 1 for e in exps):
        return 0
    return -1 if len(exps) % 2 else 1


def divisors(n: int) -> list[int]:
    return [int(d) for d in sympy.divisors(n)]


@dataclass
class ReidemeisterSequence:
    source: Source
    values: list = field(default_factory=list)  # values[n-1] = R(phi^n)

    def __getitem__(self, n: int):
        return self.values[n - 1]

    def __len__(self) -> int:
        return len(self.values)


def _iterate_value(source: Source, n: int):
    if isinstance(source, IntMatrix):
        return reidemeister_number_lattice(source ** n)
    G, phi = source
    return reidemeister_number(G, phi.power(n))


def reidemeister_sequence(source: Source, N: int) -> ReidemeisterSequence:
    """``R(phi^n)`` for ``n = 1..N``, each recomputed from the n-th iterate."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return ReidemeisterSequence(source, [_iterate_value(source, n) for n in range(1, N + 1)])


def gauss_congruence_check(seq: ReidemeisterSequence, n: int) -> Check:
    """``sum_{d | n} mu(d) R(phi^(n/d)) = 0 (mod n)``."""
    ds = divisors(n)
    needed = {n // d: seq[n // d] for d in ds}
    bad = sorted(k for k, v in needed.items() if v == INFINITY)
    if bad:
        raise InfiniteValueEncountered(f"R(phi^{bad[0]}) is infinite")
    S = sum(moebius(d) * int(seq[n // d]) for d in ds)
    q, r = divmod(S, n)
    ok = r == 0
    return Check("gauss_congruence", ok, {"n": n, "sum": S, "quotient": q if ok else None},
                 None if ok else {"n": n, "sum": S, "residue": r})


@dataclass
class PeriodicPointCount:
    n: int
    P: dict[int, int]


def _least_periods_lattice(A: IntMatrix, n: int, limit: int) -> tuple[dict[int, int], int]:
    """Least periods of the points fixed by ``(A^T)^n``, found by following ``x -> A^T x``."""
    _require_unimodular(A)
    N, X = torus_solutions_scaled((A ** n).T.minus_identity(), limit)
    At = np.array([[a % N for a in row] for row in A.T.entries], dtype=np.int64)
    period = np.zeros(len(X), dtype=np.int64)
    Y = X.copy()
    for k in range(1, n + 1):
        Z = np.zeros_like(Y)
        for j in range(A.n):
            Z = (Z + np.outer(Y[:, j], At[:, j]) % N) % N
        Y = Z
        back = (period == 0) & (Y == X).all(axis=1)
        period[back] = k
    if (period == 0).any():
        raise ConsistencyError(f"a point fixed by the {n}-th iterate did not return within {n} steps")
    lengths, counts = np.unique(period, return_counts=True)
    return {int(k): int(c) for k, c in zip(lengths, counts)}, len(X)


def periodic_point_accounting(source: Source, n: int, limit: int = ENUMERATION_LIMIT,
                              table: CharacterTable | None = None) -> tuple[PeriodicPointCount, Check]:
    """Points of least period ``d | n`` of the dual map on the finite dual.

    ``P_d`` is computed twice: by Moebius inversion of the fixed-point counts
    ``F_e = #Fix(dual^e)`` and by following orbits directly.  The check asserts
    the two agree, ``R(phi^n) = sum_{d | n} P_d`` and ``d | P_d``.
    """
    ds = divisors(n)
    if isinstance(source, IntMatrix):
        F = {}
        for d in ds:
            f = reidemeister_number_lattice(source ** d)
            if f == INFINITY:
                raise InfiniteValueEncountered(f"R(phi^{d}) is infinite")
            F[d] = int(f)
        direct, total = _least_periods_lattice(source, n, limit)
        r_n = F[n]
    else:
        G, phi = source
        table = character_table(G) if table is None else table
        F = {d: len(dual_action(table, phi.power(d)).fixed_rows) for d in ds}
        lengths = dual_action(table, phi).cycle_lengths()
        direct = {}
        for k in lengths.tolist():
            if n % k == 0:
                direct[k] = direct.get(k, 0) + 1
        total = sum(direct.values())
        r_n = reidemeister_number(G, phi.power(n))

    P = {d: sum(moebius(d // e) * F[e] for e in divisors(d)) for d in ds}
    direct_full = {d: direct.get(d, 0) for d in ds}
    if P != direct_full:
        raise ConsistencyError(f"Moebius inversion {P} disagrees with orbit count {direct_full}")
    divisible = all(P[d] % d == 0 for d in ds)
    accounted = r_n == sum(P.values()) == total
    ok = divisible and accounted
    return PeriodicPointCount(n, P), Check(
        "periodic_points", ok, {"n": n, "R": int(r_n), "P": {str(d): P[d] for d in ds}},
        None if ok else {"divisible": divisible, "accounted": accounted})
