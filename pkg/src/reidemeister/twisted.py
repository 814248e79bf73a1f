"""Twisted conjugacy on finite groups.

The twisted action of ``x`` on ``g`` is ``x g phi(x)^-1``.  Its orbits are the
Reidemeister classes and their number is the Reidemeister number ``R(phi)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import HypothesisViolated
from .group import (
    Automorphism,
    FiniteGroup,
    Subgroup,
    _frozen,
    inner_automorphism,
    partition_from_labels,
    quotient_with_induced,
)
from .reports import Check


def twist(G: FiniteGroup, phi: Automorphism, x: int, g: int) -> int:
    """``x g phi(x^-1)``."""
    return int(G.table[G.table[x, g], phi.images[G.inverse[x]]])


def twisted_orbit(G: FiniteGroup, phi: Automorphism, g: int) -> np.ndarray:
    """Sorted members of ``{g}_phi``."""
    return np.unique(G.table[G.table[:, g], phi.images[G.inverse]])


@dataclass(frozen=True, eq=False)
class ReidemeisterPartition:
    group: FiniteGroup
    automorphism: Automorphism
    class_of: np.ndarray
    representatives: np.ndarray

    @property
    def count(self) -> int:
        return int(self.representatives.size)

    @cached_property
    def classes(self) -> list[np.ndarray]:
        return partition_from_labels(self.class_of)

    @property
    def sizes(self) -> list[int]:
        return [int(c.size) for c in self.classes]

    def members(self, cid: int) -> np.ndarray:
        return self.classes[cid]

    def same_class(self, g: int, h: int) -> bool:
        return bool(self.class_of[g] == self.class_of[h])


def reidemeister_partition(G: FiniteGroup, phi: Automorphism) -> ReidemeisterPartition:
    """Orbits of the twisted action; class ids follow the least element of each class."""
    labels = _kernels.twisted_orbit_labels(G.table, G.inverse, phi.images)
    reps = np.unique(labels, return_index=True)[1]
    return ReidemeisterPartition(G, phi, _frozen(labels), _frozen(reps))


def reidemeister_number(G: FiniteGroup, phi: Automorphism) -> int:
    return reidemeister_partition(G, phi).count


def reidemeister_burnside_oracle(G: FiniteGroup, phi: Automorphism) -> int:
    """Orbit count by Burnside's lemma: the mean number of points fixed by each ``x``."""
    total = int(_kernels.twisted_fixed_counts(G.table, G.inverse, phi.images).sum())
    q, r = divmod(total, G.order)
    if r:
        raise ArithmeticError(f"fixed-point total {total} not divisible by |G| = {G.order}")
    return q


@dataclass(frozen=True)
class TwistedStabilizerResult:
    base_point: int
    target: int
    coset: tuple[int, ...]
    stabilizer_order: int

    @property
    def empty(self) -> bool:
        return not self.coset


def _solutions(G: FiniteGroup, phi: Automorphism, g: int, h: int) -> np.ndarray:
    moved = G.table[G.table[:, g], phi.images[G.inverse]]
    return np.flatnonzero(moved == h)


def twisted_stabilizer(G: FiniteGroup, phi: Automorphism, g: int, h: int | None = None) -> TwistedStabilizerResult:
    """All ``k`` with ``k g phi(k^-1) = h`` (``h`` defaults to ``g``)."""
    h = g if h is None else h
    sols = _solutions(G, phi, g, h)
    stab = sols if h == g else _solutions(G, phi, g, g)
    return TwistedStabilizerResult(int(g), int(h), tuple(sols.tolist()), int(stab.size))


def fixed_subgroup(G: FiniteGroup, phi: Automorphism) -> Subgroup:
    return Subgroup(G, _frozen(np.flatnonzero(phi.images == np.arange(G.order))))


# ---------------------------------------------------------------- identities

def orbit_stabilizer_check(G: FiniteGroup, phi: Automorphism, part: ReidemeisterPartition | None = None) -> Check:
    part = reidemeister_partition(G, phi) if part is None else part
    sizes = np.bincount(part.class_of)
    for g in range(G.order):
        stab = _solutions(G, phi, g, g).size
        if sizes[part.class_of[g]] * stab != G.order:
            return Check("orbit_stabilizer", False, {"R": part.count},
                         {"g": g, "orbit": int(sizes[part.class_of[g]]), "stabilizer": int(stab)})
    return Check("orbit_stabilizer", True, {"R": part.count, "total": int(sizes.sum())})


def coset_identity_check(G: FiniteGroup, phi: Automorphism, g: int, s: int) -> Check:
    """``St(g, s g phi(s^-1))`` equals the left coset ``s St(g)``."""
    h = twist(G, phi, s, g)
    lhs = _solutions(G, phi, g, h)
    stab = _solutions(G, phi, g, g)
    rhs = np.unique(G.table[s, stab])
    ok = np.array_equal(lhs, rhs) and lhs.size == stab.size
    return Check("coset_identity", bool(ok), {"g": g, "s": s, "size": int(lhs.size), "stabilizer": int(stab.size)},
                 None if ok else {"g": g, "s": s, "lhs": lhs.tolist(), "rhs": rhs.tolist()})


def shift_class_check(G: FiniteGroup, phi: Automorphism, k: int) -> Check:
    """Right translation by ``k`` carries ``{g}_phi`` onto ``{g k}_psi`` with ``psi = tau_{k^-1} ∘ phi``.

    Also compares ``R(phi)`` and ``R(psi)``.
    """
    psi = inner_automorphism(G, G.inv(k)).compose(phi)
    p1 = reidemeister_partition(G, phi)
    p2 = reidemeister_partition(G, psi)
    sizes2 = np.bincount(p2.class_of)
    for cls in p1.classes:
        shifted = G.table[cls, k]
        target = p2.class_of[shifted]
        if (target != target[0]).any() or sizes2[target[0]] != cls.size:
            g = int(cls[0])
            return Check("shift_class", False, {"k": k, "R_phi": p1.count, "R_psi": p2.count},
                         {"g": g, "shifted": np.sort(shifted).tolist(),
                          "target": p2.members(int(p2.class_of[G.mul(g, k)])).tolist()})
    ok = p1.count == p2.count
    return Check("shift_class", ok, {"k": k, "R_phi": p1.count, "R_psi": p2.count},
                 None if ok else {"k": k})


def quotient_monotonicity_check(G: FiniteGroup, H: Subgroup, phi: Automorphism) -> Check:
    Q, _, phi_bar = quotient_with_induced(G, H, phi)
    r_g = reidemeister_number(G, phi)
    r_q = reidemeister_number(Q, phi_bar)
    ok = r_g >= r_q
    return Check("quotient_monotonicity", ok, {"R_G": r_g, "R_quotient": r_q, "index": Q.order},
                 None if ok else {"H": H.members.tolist()})


def check_bounds(G: FiniteGroup, phi: Automorphism) -> Check:
    """``|C_G(phi)| <= r^(r-1)`` and ``sqrt(log2 |C_G(phi)|) <= r``, compared exactly."""
    r = reidemeister_number(G, phi)
    c = fixed_subgroup(G, phi).order
    jabara = c <= r ** (r - 1)
    # sqrt(log2 c) <= r  <=>  c <= 2^(r^2)
    log_bound = c <= 2 ** (r * r)
    ok = jabara and log_bound
    return Check("fixed_subgroup_bounds", ok,
                 {"R": r, "fixed_order": c, "power_bound": jabara, "log_bound": log_bound},
                 None if ok else {"R": r, "fixed_order": c})


def landau_bound_check(xs: Sequence[int]) -> Check:
    """Largest term of a unit-fraction partition of 1 with n terms is at most ``n^(2n-1)``.

    Alongside the final bound, verifies ``x_1 <= n`` and, for each prefix
    length r < n, that ``1 - sum_{i<=r} 1/x_i`` has the form
    ``y_r / (x_1...x_r)`` with integer ``y_r >= 1`` and that
    ``n x_1...x_r >= (n-r) x_1...x_r >= x_{r+1}``.
    """
    xs = [int(x) for x in xs]
    n = len(xs)
    if n == 0 or any(x <= 0 for x in xs):
        raise HypothesisViolated("terms must be positive integers")
    if xs != sorted(xs):
        raise HypothesisViolated(f"terms must be nondecreasing: {xs}")
    total = sum(Fraction(1, x) for x in xs)
    if total != 1:
        raise HypothesisViolated(f"reciprocals sum to {total}, not 1")

    if xs[0] > n:
        return Check("landau_bound", False, {"n": n}, {"step": "x1 <= n", "x1": xs[0]})
    for r in range(1, n):
        p = prod(xs[:r])
        rest = 1 - sum(Fraction(1, x) for x in xs[:r])
        y = rest * p
        if y.denominator != 1 or y < 1:
            return Check("landau_bound", False, {"n": n}, {"step": "y_r", "r": r, "y": str(y)})
        if Fraction(n - r, xs[r]) < rest or not (n * p >= (n - r) * p >= xs[r]):
            return Check("landau_bound", False, {"n": n}, {"step": "chain", "r": r})
    bound = n ** (2 * n - 1)
    ok = xs[-1] <= bound
    return Check("landau_bound", ok, {"n": n, "max": xs[-1], "bound": bound},
                 None if ok else {"max": xs[-1]})


def unit_fraction_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing n-tuples of positive integers whose reciprocals sum to 1."""

    def rec(remaining: Fraction, slots: int, lo: int, acc: tuple[int, ...]):
        if slots == 1:
            if remaining.numerator == 1 and remaining.denominator >= lo:
                yield acc + (remaining.denominator,)
            return
        # the next term is the smallest of the remaining ones
        start = max(lo, -(-remaining.denominator // remaining.numerator))
        stop = int(slots / remaining)
        for x in range(start, stop + 1):
            rest = remaining - Fraction(1, x)
            if rest > 0:
                yield from rec(rest, slots - 1, x, acc + (x,))

    yield from rec(Fraction(1), n, 1, ())
