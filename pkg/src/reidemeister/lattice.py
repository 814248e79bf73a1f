"""Reidemeister numbers of automorphisms of Z^n and of the discrete Heisenberg group.

For an automorphism ``A`` of ``Z^n`` the twisted class of ``g`` is
``g + (I - A) Z^n``, so ``R(A)`` is the order of the cokernel of ``A - I``:
``|det(A - I)|`` when that is nonzero and infinite otherwise.  All
arithmetic uses Python integers.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    ConsistencyError,
    EnumerationTooLarge,
    InfiniteFixedSet,
    InfiniteReidemeister,
    InputError,
    NotUnimodular,
    WitnessNotFound,
)
from .group import Automorphism, FiniteGroup, build_from_table, order_cap
from .linalg import bareiss_det

INFINITY = math.inf
ENUMERATION_LIMIT = 10**6


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise InputError("matrix must be square and non-empty")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        cols = list(zip(*other.entries))
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __pow__(self, k: int) -> "IntMatrix":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out, base = IntMatrix.identity(self.n), self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def minus_identity(self) -> "IntMatrix":
        return self - IntMatrix.identity(self.n)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)))

    def det(self) -> int:
        return bareiss_det(self.entries)

    def is_unimodular(self) -> bool:
        return abs(self.det()) == 1

    def apply(self, v: Sequence) -> tuple:
        return tuple(sum(a * x for a, x in zip(r, v)) for r in self.entries)


def _require_unimodular(A: IntMatrix) -> None:
    d = A.det()
    if abs(d) != 1:
        raise NotUnimodular(f"det = {d}; an automorphism of Z^{A.n} needs det = +-1")


# ------------------------------------------------------------------ Smith normal form

@dataclass(frozen=True)
class SNFDecomposition:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def divisors(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(self.D.n))


def smith_normal_form(A: IntMatrix) -> SNFDecomposition:
    """Unimodular ``U``, ``V`` with ``U A V = D`` diagonal, ``d_1 | d_2 | ...``.

    The pivot is always a nonzero entry of least absolute value in the
    remaining block (first in row-major order on ties).
    """
    n = A.n
    M = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (M, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        for R in (M, U):
            R[dst] = [a - q * b for a, b in zip(R[dst], R[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        for R in (M, V):
            for row in R:
                row[dst] -= q * row[src]

    for t in range(n):
        while True:
            nz = [(abs(M[i][j]), i, j) for i in range(t, n) for j in range(t, n) if M[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = M[t][t]
            dirty = False
            for i in range(t + 1, n):
                q = M[i][t] // p
                if q:
                    add_row(i, t, q)
                dirty |= M[i][t] != 0
            for j in range(t + 1, n):
                q = M[t][j] // p
                if q:
                    add_col(j, t, q)
                dirty |= M[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n) if M[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
    return SNFDecomposition(IntMatrix.of(U), IntMatrix.of(M), IntMatrix.of(V))


def check_snf(A: IntMatrix, snf: SNFDecomposition) -> bool:
    """Reconstruction, unimodularity and the divisibility chain."""
    d = snf.divisors
    n = A.n
    diagonal = all(snf.D[i, j] == 0 for i in range(n) for j in range(n) if i != j)
    chain = all(x >= 0 for x in d) and all(
        (d[i + 1] % d[i] == 0) if d[i] else d[i + 1] == 0 for i in range(n - 1)
    )
    return (snf.U @ A @ snf.V == snf.D and diagonal and chain
            and abs(snf.U.det()) == 1 and abs(snf.V.det()) == 1)


def elementary_divisors(A: IntMatrix) -> tuple[int, ...]:
    return smith_normal_form(A).divisors


# ------------------------------------------------------------------ Reidemeister numbers

def reidemeister_number_lattice(A: IntMatrix):
    """``|det(A - I)|`` as the product of elementary divisors, or ``INFINITY``."""
    _require_unimodular(A)
    d = elementary_divisors(A.minus_identity())
    r = math.prod(d)
    if r != abs(A.minus_identity().det()):
        raise ConsistencyError("elementary divisors disagree with the determinant")
    return r if r else INFINITY


@dataclass(frozen=True, order=True)
class TorusPoint:
    coordinates: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return math.lcm(*(c.denominator for c in self.coordinates))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coordinates) + ")"


def torus_solutions_scaled(B: IntMatrix, limit: int = ENUMERATION_LIMIT) -> tuple[int, np.ndarray]:
    """Points x of [0,1)^n with ``B x`` integral, as ``(N, V)`` with ``x = V[i] / N``.

    ``N`` is the largest elementary divisor of ``B`` and ``V`` an int64 array
    of shape (count, n) with entries in ``[0, N)``, rows sorted.
    """
    snf = smith_normal_form(B)
    d = snf.divisors
    count = math.prod(d)
    if count == 0:
        raise InfiniteFixedSet("det(A - I) = 0: the fixed set is a positive-dimensional subtorus")
    if count > limit:
        raise EnumerationTooLarge(f"{count} fixed points exceeds enumeration limit {limit}")
    # B x in Z^n  <=>  D (V^-1 x) in Z^n, and V is unimodular; so x = V y with y_i in (1/d_i) Z
    N = d[-1]
    grids = np.meshgrid(*(np.arange(di, dtype=np.int64) * (N // di) for di in d), indexing="ij")
    Y = np.stack([g.ravel() for g in grids], axis=1)
    Vm = np.array([[v % N for v in row] for row in snf.V.entries], dtype=np.int64)
    X = np.zeros_like(Y)
    for j in range(B.n):  # accumulate column by column to stay inside int64
        X = (X + np.outer(Y[:, j], Vm[:, j]) % N) % N
    X = X[np.lexsort(X.T[::-1])]
    return N, X


def _torus_solutions(B: IntMatrix, limit: int) -> list[TorusPoint]:
    N, X = torus_solutions_scaled(B, limit)
    return [TorusPoint(tuple(Fraction(int(v), N) for v in row)) for row in X]


def fixed_dual_characters(A: IntMatrix, limit: int = ENUMERATION_LIMIT) -> list[TorusPoint]:
    """Characters ``v -> exp(2 pi i <x, v>)`` of ``Z^n`` fixed by ``chi -> chi ∘ A``.

    These are the x in [0,1)^n with ``(A^T - I) x`` integral.
    """
    _require_unimodular(A)
    return _torus_solutions(A.T.minus_identity(), limit)


def dual_map(A: IntMatrix, x: TorusPoint) -> TorusPoint:
    """Image of a torus point under ``x -> A^T x mod Z^n``."""
    y = A.T.apply(x.coordinates)
    return TorusPoint(tuple(c - math.floor(c) for c in y))


def finite_quotient_reidemeister(A: IntMatrix, m: int, cross_check: bool = True) -> int:
    """Reidemeister number of ``A`` acting on ``(Z/m)^n``: the product of ``gcd(d_i, m)``.

    When ``m^n`` is within the group-order cap the value is recomputed by
    orbit enumeration on the materialised group.
    """
    _require_unimodular(A)
    if m < 1:
        raise InputError("modulus must be positive")
    d = elementary_divisors(A.minus_identity())
    r = math.prod(math.gcd(x, m) for x in d)
    if cross_check and m ** A.n <= order_cap():
        from .twisted import reidemeister_number

        G, phi = lattice_quotient(A, m)
        brute = reidemeister_number(G, phi)
        if brute != r:
            raise ConsistencyError(f"(Z/{m})^{A.n}: gcd formula gives {r}, orbit count gives {brute}")
    return r


def lattice_quotient(A: IntMatrix, m: int) -> tuple[FiniteGroup, Automorphism]:
    """``(Z/m)^n`` as a table group (base-m digits, first coordinate most significant) and ``A mod m``."""
    n = A.n
    vecs = np.array(list(itertools.product(range(m), repeat=n)), dtype=np.int64).reshape(-1, n)
    weights = m ** np.arange(n - 1, -1, -1)
    table = ((vecs[:, None, :] + vecs[None, :, :]) % m) @ weights
    G = build_from_table(table, name=f"(Z/{m})^{n}", labels=[tuple(v) for v in vecs.tolist()])
    Am = np.array(A.entries, dtype=np.int64) % m
    images = ((vecs @ Am.T) % m) @ weights
    return G, Automorphism(G, images)


def separability_witness(A: IntMatrix) -> int:
    """A modulus m whose quotient ``(Z/m)^n`` keeps all Reidemeister classes apart."""
    _require_unimodular(A)
    d = elementary_divisors(A.minus_identity())
    if 0 in d:
        raise InfiniteReidemeister("det(A - I) = 0")
    return d[-1]


# ------------------------------------------------------------------ Heisenberg group

def heisenberg_reidemeister(A: IntMatrix):
    """Reidemeister number of an automorphism of the discrete Heisenberg group.

    ``A`` is the induced map on the abelianization ``Z^2``; the map induced on
    the centre is multiplication by ``det A``.  The value is the product of
    the two abelian Reidemeister numbers ``|det(A - I)| * |det A - 1|``.
    """
    if A.n != 2:
        raise InputError("Heisenberg automorphisms are given by their 2x2 abelianization")
    _require_unimodular(A)
    r = abs(A.minus_identity().det()) * abs(A.det() - 1)
    return r if r else INFINITY


def heisenberg_separating_modulus(A: IntMatrix) -> int:
    """``lcm`` of the largest elementary divisor of ``A - I`` and ``|det A - 1|``."""
    d = elementary_divisors(A.minus_identity())
    c = abs(A.det() - 1)
    if 0 in d or c == 0:
        raise InfiniteReidemeister("Reidemeister number is infinite")
    return math.lcm(d[-1], c)


def heisenberg_quotient(A: IntMatrix, m: int) -> tuple[FiniteGroup, Automorphism]:
    """Finite quotient of the Heisenberg group and the automorphism induced by ``A``.

    Elements are triples ``(a, b, c)`` with ``a, b`` mod ``2m`` and ``c`` mod
    ``m``, multiplied by ``(a, b, c)(a', b', c') = (a+a', b+b', c+c'+ab')``;
    this is the quotient by the normal subgroup generated by ``x^(2m)``,
    ``y^(2m)`` and ``z^m``, which every automorphism preserves.  The
    automorphism sends ``x -> (p, r, 0)``, ``y -> (q, s, 0)`` for
    ``A = [[p, q], [r, s]]``.
    """
    if A.n != 2:
        raise InputError("expected a 2x2 matrix")
    _require_unimodular(A)
    k = 2 * m
    (p, q), (r, s) = A.entries
    det = A.det()
    a, b, c = (g.ravel() for g in np.meshgrid(np.arange(k), np.arange(k), np.arange(m), indexing="ij"))
    idx = lambda a_, b_, c_: ((a_ % k) * k + (b_ % k)) * m + (c_ % m)
    table = idx(a[:, None] + a[None, :], b[:, None] + b[None, :], c[:, None] + c[None, :] + a[:, None] * b[None, :])
    G = build_from_table(table, name=f"Heis(Z/{k}, Z/{m})", labels=list(zip(a.tolist(), b.tolist(), c.tolist())))

    def gen_power(u, v, e):
        # (u, v, 0)^e = (e u, e v, u v e (e - 1) / 2)
        return e * u, e * v, u * v * (e * (e - 1) // 2)

    # (a, b, c) = x^a y^b z^(c - ab), so its image is X^a Y^b Z^(det (c - ab))
    xa = gen_power(p, r, a)
    yb = gen_power(q, s, b)
    ia = xa[0] + yb[0]
    ib = xa[1] + yb[1]
    ic = xa[2] + yb[2] + xa[0] * yb[1] + det * (c - a * b)
    images = idx(ia, ib, ic)
    return G, Automorphism(G, images)


def heisenberg_quotient_reidemeister(A: IntMatrix, m: int) -> int:
    from .twisted import reidemeister_number

    G, phi = heisenberg_quotient(A, m)
    return reidemeister_number(G, phi)


# ------------------------------------------------------------------ spectra

@dataclass
class SpectrumResult:
    family: str
    realized: dict[int, IntMatrix] = field(default_factory=dict)
    includes_infinity: bool = False
    infinity_witness: IntMatrix | None = None

    def values(self) -> list[int]:
        return sorted(self.realized)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "realized": [{"value": v, "witness": self.realized[v].tolist()} for v in self.values()],
            "includes_infinity": self.includes_infinity,
            "infinity_witness": self.infinity_witness.tolist() if self.infinity_witness else None,
        }


def zn_witness(n: int, k: int) -> IntMatrix:
    """Automorphism of ``Z^n`` (n >= 2) with Reidemeister number ``k``.

    For n = 2 this is ``[[k+1, k], [1, 1]]``; for larger n the companion
    matrix of ``x^n + k x^(n-1) - 1``, whose constant term makes it
    unimodular and whose value at 1 is ``k``.
    """
    if n == 2:
        return IntMatrix.of([[k + 1, k], [1, 1]])
    coeffs = [-1] + [0] * (n - 2) + [k]  # c_0 .. c_{n-1} of x^n + sum c_i x^i
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -coeffs[i]
    return IntMatrix.of(rows)


def gl2_generators() -> list[IntMatrix]:
    return [IntMatrix.of(m) for m in (
        [[0, -1], [1, 0]], [[0, 1], [-1, 0]],
        [[1, 1], [0, 1]], [[1, -1], [0, 1]],
        [[-1, 0], [0, 1]], [[0, 1], [1, 0]],
    )]


def gl2_words(max_length: int) -> list[IntMatrix]:
    """Distinct elements of GL(2, Z) reachable by words of length <= ``max_length``."""
    gens = gl2_generators()
    seen = {IntMatrix.identity(2)}
    frontier = [IntMatrix.identity(2)]
    for _ in range(max_length):
        nxt = []
        for M in frontier:
            for g in gens:
                P = M @ g
                if P not in seen:
                    seen.add(P)
                    nxt.append(P)
        frontier = nxt
    return sorted(seen, key=lambda M: M.entries)


def _verify_lattice_witness(A: IntMatrix, value: int) -> None:
    if reidemeister_number_lattice(A) != value or len(fixed_dual_characters(A)) != value:
        raise ConsistencyError(f"witness {A.tolist()} does not realize {value}")


def spectrum_search(family: str, value_bound: int = 10, search_bound: int = 6, n: int = 2) -> SpectrumResult:
    """Realized Reidemeister numbers for ``Z``, ``Z^n`` or the Heisenberg group.

    Witnesses are re-verified before they are recorded.  The Heisenberg
    search walks GL(2, Z) words and raises if an odd finite value appears.
    """
    fam = family.lower()
    if fam == "z":
        res = SpectrumResult("Z")
        for A in (IntMatrix.of([[1]]), IntMatrix.of([[-1]])):
            r = reidemeister_number_lattice(A)
            if r == INFINITY:
                res.includes_infinity, res.infinity_witness = True, A
            else:
                _verify_lattice_witness(A, r)
                res.realized.setdefault(r, A)
        return res
    if fam == "zn":
        if n < 2:
            return spectrum_search("z")
        res = SpectrumResult(f"Z^{n}")
        for k in range(1, value_bound + 1):
            A = zn_witness(n, k)
            if abs(A.det()) != 1:
                raise WitnessNotFound(f"witness for {k} is not unimodular")
            _verify_lattice_witness(A, k)
            res.realized[k] = A
        I = IntMatrix.identity(n)
        if reidemeister_number_lattice(I) == INFINITY:
            res.includes_infinity, res.infinity_witness = True, I
        return res
    if fam == "heisenberg":
        res = SpectrumResult("Heisenberg")
        for A in gl2_words(search_bound):
            r = heisenberg_reidemeister(A)
            if r == INFINITY:
                if not res.includes_infinity:
                    res.includes_infinity, res.infinity_witness = True, A
            elif r not in res.realized:
                if r % 2:
                    raise ConsistencyError(f"odd Reidemeister number {r} for {A.tolist()}")
                res.realized[r] = A
        return res
    raise InputError(f"unknown family {family!r}; expected Z, Zn or Heisenberg")
