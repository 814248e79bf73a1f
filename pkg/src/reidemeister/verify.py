"""Batch verification of every cross-module identity over the bundled corpus."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .chars import (
    character_table,
    guard_table,
    isogredience_count,
    tbft_check,
    twisted_coinvariants_dimension,
    twisted_inner_character,
)
from .corpus import CorpusEntry, corpus_entries
from .errors import ReidemeisterError
from .group import Automorphism, FiniteGroup, Subgroup, center, enumerate_automorphisms, generated_subgroup
from .reports import Check
from .twisted import (
    check_bounds,
    coset_identity_check,
    orbit_stabilizer_check,
    quotient_monotonicity_check,
    reidemeister_burnside_oracle,
    reidemeister_partition,
    shift_class_check,
)

EXHAUSTIVE_ORDER = 24
COINVARIANT_ORDER = 24
SAMPLES = 100


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    t, inv = G.table, G.inverse
    comm = t[t[t[:, :], inv[:, None]], inv[None, :]]  # a b a^-1 b^-1
    return generated_subgroup(G, np.unique(comm).tolist())


def pair_checks(G: FiniteGroup, phi: Automorphism, table=None, guard=None,
                exhaustive_order: int = EXHAUSTIVE_ORDER, coinvariant_order: int = COINVARIANT_ORDER,
                rng: np.random.Generator | None = None) -> list[Check]:
    """Every identity for one (group, automorphism) pair."""
    rng = np.random.default_rng(0) if rng is None else rng
    img, t = phi.images, G.table
    bad = np.argwhere(img[t] != t[img[:, None], img[None, :]])
    if len(bad):
        a, b = (int(v) for v in bad[0])
        return [Check("homomorphism", False, {}, {"a": a, "b": b, "phi(ab)": int(img[t[a, b]]),
                                                  "phi(a)phi(b)": int(t[img[a], img[b]])})]
    part = reidemeister_partition(G, phi)
    out: list[Check] = []

    def run(name: str, fn: Callable[[], Check]) -> None:
        try:
            out.append(fn())
        except ReidemeisterError as exc:
            out.append(Check(name, False, {}, {"error": f"{type(exc).__name__}: {exc}"}))

    run("tbft", lambda: tbft_check(G, phi, table, guard, use_guard=guard is not None))
    if G.order <= coinvariant_order:
        def coinv():
            d = twisted_coinvariants_dimension(G, phi)
            return Check("coinvariants", d == part.count, {"dimension": d, "R": part.count})
        run("coinvariants", coinv)
    run("twisted_inner_character", lambda: twisted_inner_character(G, phi)[1])
    run("isogredience", lambda: isogredience_count(G, phi)[1])
    run("fixed_subgroup_bounds", lambda: check_bounds(G, phi))

    def burnside():
        b = reidemeister_burnside_oracle(G, phi)
        return Check("burnside_oracle", b == part.count, {"oracle": b, "R": part.count})
    run("burnside_oracle", burnside)
    run("orbit_stabilizer", lambda: orbit_stabilizer_check(G, phi, part))
    for H in (center(G), derived_subgroup(G)):
        run("quotient_monotonicity", lambda H=H: quotient_monotonicity_check(G, H, phi))

    n = G.order
    if n <= exhaustive_order:
        ks = range(n)
        pairs = [(g, s) for g in range(n) for s in range(n)]
    else:
        ks = rng.integers(0, n, SAMPLES).tolist()
        pairs = list(zip(rng.integers(0, n, SAMPLES).tolist(), rng.integers(0, n, SAMPLES).tolist()))
    shift = [shift_class_check(G, phi, int(k)) for k in ks]
    bad = next((c for c in shift if not c), None)
    out.append(bad or Check("shift_class", True, {"tested": len(shift)}))
    coset = [coset_identity_check(G, phi, int(g), int(s)) for g, s in pairs]
    bad = next((c for c in coset if not c), None)
    out.append(bad or Check("coset_identity", True, {"tested": len(coset)}))
    return out


@dataclass
class CorpusRecord:
    group: str
    automorphism: int
    check: Check

    def to_dict(self) -> dict:
        return {"group": self.group, "automorphism": self.automorphism, **self.check.to_dict()}


@dataclass
class CorpusReport:
    records: list[CorpusRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.check.passed for r in self.records)

    def failures(self) -> list[CorpusRecord]:
        return [r for r in self.records if not r.check.passed]

    def summary(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.records:
            s = out.setdefault(r.check.name, {"passed": 0, "failed": 0})
            s["passed" if r.check.passed else "failed"] += 1
        return out


def verify_corpus(max_order: int = 64, entries: Iterable[CorpusEntry] | None = None,
                  extra: dict[str, list[Automorphism]] | None = None, guard: bool = True) -> CorpusReport:
    """Run :func:`pair_checks` on every automorphism of every corpus group.

    ``extra`` maps a group name to additional maps appended after the
    enumerated automorphisms (used to exercise the failure path).
    """
    entries = corpus_entries(max_order) if entries is None else list(entries)
    extra = extra or {}
    report = CorpusReport()
    for entry in entries:
        G = entry.build()
        table = character_table(G)
        gt = guard_table(table) if guard else None
        auts = enumerate_automorphisms(G) + [Automorphism(G, a.images, check=False) for a in extra.get(entry.name, [])]
        for i, phi in enumerate(auts):
            for chk in pair_checks(G, phi, table, gt):
                report.records.append(CorpusRecord(entry.name, i, chk))
    return report


def faulty_map(G: FiniteGroup) -> Automorphism:
    """A bijection that is not a homomorphism: swap the two largest elements."""
    images = np.arange(G.order)
    images[[-1, -2]] = images[[-2, -1]]
    return Automorphism(G, images, check=False)
