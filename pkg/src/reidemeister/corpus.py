"""Named groups bundled for the CLI and the verification driver."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InputError
from .group import FiniteGroup, build_from_permutations, build_from_table


def trivial_group() -> FiniteGroup:
    return build_from_table([[0]], name="trivial")


def cyclic_group(n: int) -> FiniteGroup:
    a = np.arange(n)
    return build_from_table((a[:, None] + a[None, :]) % n, name=f"Z{n}", labels=list(range(n)))


def abelian_group(*orders: int) -> FiniteGroup:
    """Direct product of cyclic groups; elements in lexicographic order of coordinates."""
    elems = list(itertools.product(*(range(m) for m in orders)))
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[tuple((x + y) % m for x, y, m in zip(a, b, orders))] for b in elems] for a in elems]
    return build_from_table(table, name="x".join(f"Z{m}" for m in orders), labels=elems)


def symmetric_group(n: int) -> FiniteGroup:
    if n == 1:
        return trivial_group()
    swap = [1, 0] + list(range(2, n))
    cycle = list(range(1, n)) + [0]
    return build_from_permutations([swap, cycle], name=f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    gens = []
    for k in range(2, n):
        g = list(range(n))
        g[0], g[1], g[k] = 1, k, 0  # the 3-cycle (0 1 k)
        gens.append(g)
    return build_from_permutations(gens, name=f"A{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return build_from_permutations([rot, ref], name=f"D{n}")


def quaternion_group() -> FiniteGroup:
    # left-regular action on {1, i, -1, -i, j, -k, -j, k} indexed 0..7
    i = [1, 2, 3, 0, 5, 6, 7, 4]
    j = [4, 7, 6, 5, 2, 1, 0, 3]
    return build_from_permutations([i, j], name="Q8")


def heisenberg_group(m: int) -> FiniteGroup:
    """Unitriangular 3x3 matrices over Z/m as triples (a, b, c)."""
    elems = list(itertools.product(range(m), repeat=3))
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[((a[0] + b[0]) % m, (a[1] + b[1]) % m, (a[2] + b[2] + a[0] * b[1]) % m)] for b in elems]
             for a in elems]
    return build_from_table(table, name=f"H{m}", labels=elems)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    constructor: Callable[[], FiniteGroup]
    order: int

    def build(self) -> FiniteGroup:
        G = self.constructor()
        return FiniteGroup(G.table, G.identity, G.inverse, self.name, G.labels)


def _entries() -> list[CorpusEntry]:
    out = [CorpusEntry("trivial", trivial_group, 1)]
    out += [CorpusEntry(f"Z{n}", (lambda n=n: cyclic_group(n)), n) for n in range(2, 13)]
    out += [
        CorpusEntry("Z2xZ2", lambda: abelian_group(2, 2), 4),
        CorpusEntry("Z2xZ4", lambda: abelian_group(2, 4), 8),
        CorpusEntry("S3", lambda: symmetric_group(3), 6),
        CorpusEntry("D4", lambda: dihedral_group(4), 8),
        CorpusEntry("Q8", quaternion_group, 8),
        CorpusEntry("D5", lambda: dihedral_group(5), 10),
        CorpusEntry("D6", lambda: dihedral_group(6), 12),
        CorpusEntry("A4", lambda: alternating_group(4), 12),
        CorpusEntry("S4", lambda: symmetric_group(4), 24),
        CorpusEntry("H3", lambda: heisenberg_group(3), 27),
        CorpusEntry("A5", lambda: alternating_group(5), 60),
    ]
    return out


CORPUS: dict[str, CorpusEntry] = {e.name: e for e in _entries()}


def corpus_group(name: str) -> FiniteGroup:
    try:
        return CORPUS[name].build()
    except KeyError:
        raise InputError(f"unknown corpus group {name!r}; known: {', '.join(CORPUS)}") from None


def corpus_entries(max_order: int | None = None) -> list[CorpusEntry]:
    return [e for e in CORPUS.values() if max_order is None or e.order <= max_order]
