"""Shared fixtures and brute-force oracles written independently of the package."""
from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import settings

from reidemeister.corpus import corpus_group
from reidemeister.group import Automorphism

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def S3():
    return corpus_group("S3")


@pytest.fixture(scope="session")
def Z4():
    return corpus_group("Z4")


@pytest.fixture(scope="session")
def Q8():
    return corpus_group("Q8")


@pytest.fixture(scope="session")
def z4_inversion(Z4):
    return Automorphism(Z4, [(-i) % 4 for i in range(4)])


# ---------------------------------------------------------------- plain-python oracles

def brute_orbits(G, images):
    """Orbits of x.g = x g phi(x)^-1 using only list lookups."""
    t = G.table.tolist()
    inv = G.inverse.tolist()
    n = len(t)
    seen, orbits = set(), []
    for g in range(n):
        if g in seen:
            continue
        orb = {t[t[x][g]][inv[images[x]]] for x in range(n)}
        seen |= orb
        orbits.append(sorted(orb))
    return orbits


def brute_conjugacy_classes(G):
    return brute_orbits(G, list(range(G.order)))


def brute_automorphisms(G):
    """All automorphisms by testing every bijection (tiny groups only)."""
    t = G.table.tolist()
    n = len(t)
    out = []
    for perm in itertools.permutations(range(n)):
        if all(perm[t[a][b]] == t[perm[a]][perm[b]] for a in range(n) for b in range(n)):
            out.append(list(perm))
    return out


def int_det(rows):
    """Laplace expansion; fine for n <= 4."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    return sum((-1) ** j * rows[0][j] * int_det([r[:j] + r[j + 1:] for r in rows[1:]]) for j in range(n))


def random_unimodular(rng: random.Random, n: int, steps: int = 8):
    """Random product of elementary matrices and sign flips."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        if rng.random() < 0.5:
            M = [[M[r][k] + (c * M[j][k] if r == i else 0) for k in range(n)] for r in range(n)]
        else:
            M = [[M[r][k] + (c * M[r][j] if k == i else 0) for k in range(n)] for r in range(n)]
        if rng.random() < 0.2:
            M[i] = [-x for x in M[i]]
    return M


# ---------------------------------------------------------------- acceptance report

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
