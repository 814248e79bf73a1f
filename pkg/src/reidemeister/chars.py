"""Character tables of finite groups and the dual action of automorphisms.

Tables are computed with the Dixon-Schneider method over F_p, where
``p = 1 (mod exponent)`` and ``p > 2|G|``: central characters are the common
eigenvectors of the class multiplication matrices, and reduction mod such a
prime is injective on irreducible characters.  Exact values, as integer
combinations of powers of a primitive ``e``-th root of unity, can be lifted
from the residues on request.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt

import numpy as np
import sympy

from . import _kernels
from .errors import ConsistencyError, PrimeSearchFailed, RowMatchFailed
from .group import (
    Automorphism,
    FiniteGroup,
    Subgroup,
    center,
    conjugacy_classes,
    inner_automorphism,
    quotient_with_induced,
)
from .linalg import bareiss_rank, charpoly_mod, matmul_mod, nullspace_mod, roots_mod, rref_mod
from .reports import Check
from .twisted import reidemeister_partition

PRIME_LIMIT = 2**31


def dixon_prime(G: FiniteGroup, above: int = 0) -> int:
    """Least prime ``p > max(2|G|, above)`` with ``p = 1 (mod exponent(G))``."""
    e = G.exponent
    p = (max(2 * G.order, above) // e + 1) * e + 1
    while p < PRIME_LIMIT:
        if sympy.isprime(p):
            return p
        p += e
    raise PrimeSearchFailed(f"no prime = 1 mod {e} below 2^31")


@dataclass(frozen=True, eq=False)
class CyclotomicLift:
    """Exact character values: ``values[i][c][j]`` is the coefficient of ``zeta^j``."""

    exponent: int
    zeta_residue: int
    values: tuple

    def complex_table(self) -> np.ndarray:
        e = self.exponent
        powers = np.exp(2j * np.pi * np.arange(e) / e)
        return np.array([[np.dot(v, powers) for v in row] for row in self.values])


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: FiniteGroup
    classes: tuple
    class_of: np.ndarray
    prime: int
    rows: np.ndarray
    degrees: tuple
    lift: CyclotomicLift | None = None

    @property
    def size(self) -> int:
        return len(self.classes)

    @cached_property
    def class_sizes(self) -> np.ndarray:
        return np.array([c.size for c in self.classes], dtype=np.int64)

    @cached_property
    def representatives(self) -> np.ndarray:
        return np.array([int(c[0]) for c in self.classes], dtype=np.int64)

    @cached_property
    def inverse_class(self) -> np.ndarray:
        return self.class_of[self.group.inverse[self.representatives]]

    @property
    def identity_class(self) -> int:
        return int(self.class_of[self.group.identity])

    def to_dict(self) -> dict:
        out = {
            "prime": self.prime,
            "degrees": list(self.degrees),
            "classes": self.class_sizes.tolist(),
            "representatives": self.representatives.tolist(),
            "rows": self.rows.tolist(),
        }
        if self.lift is not None:
            out["exponent"] = self.lift.exponent
            out["zeta_residue"] = self.lift.zeta_residue
            out["lift"] = [[list(v) for v in row] for row in self.lift.values]
        return out


def _class_data(G: FiniteGroup):
    classes = conjugacy_classes(G)
    class_of = np.empty(G.order, dtype=np.int64)
    for i, c in enumerate(classes):
        class_of[c] = i
    reps = np.array([int(c[0]) for c in classes], dtype=np.int64)
    return classes, class_of, reps


def _common_eigenvectors(mats: np.ndarray, p: int, skip: int) -> list[np.ndarray]:
    """Split F_p^k into common 1-dimensional eigenspaces of the row actions ``v -> v @ N``."""
    k = mats.shape[1]
    spaces = [np.eye(k, dtype=np.int64)]
    for r in range(k):
        if len(spaces) == k:
            break
        if r == skip:
            continue
        N = mats[r]
        refined = []
        for B in spaces:
            if B.shape[0] == 1:
                refined.append(B)
                continue
            B, piv = rref_mod(B, p)
            restricted = matmul_mod(B, N, p)[:, piv]
            pieces = []
            for lam in roots_mod(charpoly_mod(restricted, p), p):
                shifted = (restricted - lam * np.eye(len(piv), dtype=np.int64)) % p
                W = nullspace_mod(shifted.T, p)
                pieces.append(rref_mod(matmul_mod(W, B, p), p)[0])
            if sum(s.shape[0] for s in pieces) != B.shape[0]:
                raise ConsistencyError(f"class matrix {r} is not diagonalisable over F_{p}")
            refined.extend(pieces)
        spaces = refined
    if len(spaces) != k or any(s.shape[0] != 1 for s in spaces):
        raise ConsistencyError(f"class sums did not split into {k} common eigenvectors mod {p}")
    return [s[0] for s in spaces]


def character_table(G: FiniteGroup, prime: int | None = None, lift: bool = False) -> CharacterTable:
    """Irreducible characters of ``G`` reduced mod a Dixon prime.

    Rows are sorted by degree, then lexicographically by residues, so the
    trivial character comes first.
    """
    classes, class_of, reps = _class_data(G)
    k = len(classes)
    p = dixon_prime(G) if prime is None else prime
    if (p - 1) % G.exponent or p <= 2 * G.order or not sympy.isprime(p):
        raise ValueError(f"{p} is not a prime = 1 mod {G.exponent} above {2 * G.order}")
    h = np.array([c.size for c in classes], dtype=np.int64)
    e_cls = int(class_of[G.identity])
    inv_cls = class_of[G.inverse[reps]]

    coeff = _kernels.class_coefficients(G.table, G.inverse, class_of, reps)
    # coeff[r, s, t] = a_rst; the column action is M_r[s, t], rows use its transpose
    row_mats = np.ascontiguousarray(np.transpose(coeff, (0, 2, 1))) % p
    vecs = _common_eigenvectors(row_mats, p, skip=e_cls)

    h_inv = np.array([pow(int(x), -1, p) for x in h], dtype=np.int64)
    rows, degrees = [], []
    for v in vecs:
        omega = v * pow(int(v[e_cls]), -1, p) % p
        s = int(np.sum(omega * omega[inv_cls] % p * h_inv % p) % p)
        d2 = G.order * pow(s, -1, p) % p
        d = isqrt(d2)
        if d * d != d2 or d == 0:
            raise ConsistencyError(f"degree^2 = {d2} mod {p} is not a square at most |G|")
        rows.append(omega * d % p * h_inv % p)
        degrees.append(d)
    order = sorted(range(k), key=lambda i: (degrees[i], rows[i].tolist()))
    table = np.array([rows[i] for i in order], dtype=np.int64)
    table.setflags(write=False)
    degs = tuple(degrees[i] for i in order)
    ct = CharacterTable(G, tuple(classes), class_of, p, table, degs)
    _verify_table(ct)
    if lift:
        ct = CharacterTable(G, ct.classes, class_of, p, table, degs, _lift(ct))
    return ct


def _verify_table(ct: CharacterTable) -> None:
    G, p = ct.group, ct.prime
    if sum(d * d for d in ct.degrees) != G.order:
        raise ConsistencyError("sum of squared degrees differs from |G|")
    X = ct.rows
    gram = matmul_mod(X * ct.class_sizes % p, X[:, ct.inverse_class].T, p)
    if not np.array_equal(gram, (G.order % p) * np.eye(ct.size, dtype=np.int64)):
        raise ConsistencyError(f"row orthogonality fails mod {p}")


def _lift(ct: CharacterTable) -> CyclotomicLift:
    G, p = ct.group, ct.prime
    e = G.exponent
    z = pow(sympy.primitive_root(p), (p - 1) // e, p)
    zpow = [pow(z, j, p) for j in range(e)]
    power_classes = []
    for g in ct.representatives.tolist():
        o = int(G.element_orders[g])
        cur, seq = G.identity, []
        for _ in range(o):
            seq.append(int(ct.class_of[cur]))
            cur = G.mul(cur, g)
        power_classes.append((o, seq))
    values = []
    for i in range(ct.size):
        row = []
        for c, (o, seq) in enumerate(power_classes):
            step = e // o
            o_inv = pow(o, -1, p)
            coeffs = [0] * e
            for j in range(0, e, step):
                # multiplicity of the eigenvalue zeta^j on an element of order o
                acc = sum(int(ct.rows[i, seq[l]]) * zpow[(-j * l) % e] for l in range(o))
                mult = acc * o_inv % p
                if mult > ct.degrees[i]:
                    raise ConsistencyError(f"eigenvalue multiplicity {mult} exceeds degree")
                coeffs[j] = mult
            if sum(cf * zpow[j] for j, cf in enumerate(coeffs)) % p != ct.rows[i, c]:
                raise ConsistencyError("lifted value does not reduce to the table entry")
            row.append(tuple(coeffs))
        values.append(tuple(row))
    lift = CyclotomicLift(e, z, tuple(values))
    _verify_lift(ct, lift)
    return lift


def _cyclotomic_reduce(poly: list[int], e: int) -> list[int]:
    """Remainder of an integer polynomial (low to high) modulo the e-th cyclotomic polynomial."""
    phi = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(e, sympy.Symbol("x"))).all_coeffs())]
    deg = len(phi) - 1
    r = list(poly)
    for top in range(len(r) - 1, deg - 1, -1):
        c = r[top]
        if c:
            for j in range(deg + 1):
                r[top - deg + j] -= c * phi[j]
    r = r[:deg] if deg else [sum(r)]
    return r


def _verify_lift(ct: CharacterTable, lift: CyclotomicLift) -> None:
    e = lift.exponent
    n = ct.group.order
    for i in range(ct.size):
        for j in range(ct.size):
            acc = [0] * e
            for c in range(ct.size):
                a = lift.values[i][c]
                b = lift.values[j][c]
                for s, x in enumerate(a):
                    if x:
                        for t, y in enumerate(b):
                            if y:
                                acc[(s - t) % e] += int(ct.class_sizes[c]) * x * y
            red = _cyclotomic_reduce(acc, e)
            want = [n if i == j else 0] + [0] * (len(red) - 1)
            if red != want:
                raise ConsistencyError(f"exact orthogonality fails for rows {i}, {j}")


# ------------------------------------------------------------------ dual action

@dataclass(frozen=True, eq=False)
class DualAction:
    table: CharacterTable
    class_permutation: np.ndarray
    row_permutation: np.ndarray
    fixed_rows: tuple

    def cycle_lengths(self) -> np.ndarray:
        """Least period of every row under the permutation."""
        perm = self.row_permutation
        out = np.zeros(perm.size, dtype=np.int64)
        for i in range(perm.size):
            j, n = perm[i], 1
            while j != i:
                j, n = perm[j], n + 1
            out[i] = n
        return out


def dual_action(T: CharacterTable, phi: Automorphism, guard: CharacterTable | None = None) -> DualAction:
    """Permutation of irreducible characters ``chi -> chi ∘ phi``.

    With ``guard`` (a table of the same group at another prime) the fixed-row
    count and degrees are recomputed there and compared.
    """
    class_perm = T.class_of[phi.images[T.representatives]]
    composed = T.rows[:, class_perm]
    index = {row.tobytes(): i for i, row in enumerate(T.rows)}
    if len(index) != T.size:
        raise RowMatchFailed("character table has repeated rows")
    row_perm = np.empty(T.size, dtype=np.int64)
    for i, row in enumerate(composed):
        j = index.get(row.tobytes())
        if j is None:
            raise RowMatchFailed(f"row {i} composed with the automorphism matches no row")
        row_perm[i] = j
    if np.unique(row_perm).size != T.size:
        raise RowMatchFailed("dual action is not a bijection on rows")
    fixed = tuple(int(i) for i in np.flatnonzero(row_perm == np.arange(T.size)))
    action = DualAction(T, class_perm, row_perm, fixed)
    if guard is not None:
        other = dual_action(guard, phi)
        if sorted(T.degrees[i] for i in fixed) != sorted(guard.degrees[i] for i in other.fixed_rows):
            raise ConsistencyError(f"fixed characters differ between primes {T.prime} and {guard.prime}")
    return action


def guard_table(T: CharacterTable) -> CharacterTable:
    return character_table(T.group, prime=dixon_prime(T.group, above=T.prime))


def tbft_check(G: FiniteGroup, phi: Automorphism, table: CharacterTable | None = None,
               guard: CharacterTable | None = None, use_guard: bool = True) -> Check:
    """Reidemeister number against the number of characters fixed by the dual action."""
    table = character_table(G) if table is None else table
    if use_guard and guard is None:
        guard = guard_table(table)
    r = reidemeister_partition(G, phi).count
    fixed = len(dual_action(table, phi, guard if use_guard else None).fixed_rows)
    ok = r == fixed
    return Check("tbft", ok, {"R": r, "fixed_characters": fixed}, None if ok else {"images": phi.images.tolist()})


def twisted_coinvariants_dimension(G: FiniteGroup, phi: Automorphism, all_elements: bool = False) -> int:
    """Codimension in Q[G] of the span of ``delta_h - delta_{g h phi(g^-1)}``.

    By default ``g`` runs over the stored generating set, which spans the same
    subspace as all of ``G``.
    """
    gs = range(G.order) if all_elements else G.generators
    rows = []
    for g in gs:
        moved = G.table[G.table[g, :], phi.images[G.inverse[g]]]
        for h in np.flatnonzero(moved != np.arange(G.order)).tolist():
            row = [0] * G.order
            row[h] = 1
            row[int(moved[h])] -= 1
            rows.append(row)
    return G.order - bareiss_rank(rows)


# ------------------------------------------------------------------ class functions

@dataclass(frozen=True, eq=False)
class ClassFunction:
    group: FiniteGroup
    classes: tuple
    values: tuple

    @cached_property
    def class_sizes(self) -> list[int]:
        return [int(c.size) for c in self.classes]

    def inner_with_trivial(self) -> Fraction:
        return Fraction(sum(h * v for h, v in zip(self.class_sizes, self.values)), self.group.order)

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        return ClassFunction(self.group, self.classes, tuple(a + b for a, b in zip(self.values, other.values)))

    def at(self, g: int) -> int:
        for c, v in zip(self.classes, self.values):
            if g in c:
                return v
        raise IndexError(g)


def induced_trivial_character(G: FiniteGroup, H: Subgroup, classes=None) -> ClassFunction:
    """Permutation character of ``G`` on the right cosets of ``H``."""
    classes = conjugacy_classes(G) if classes is None else classes
    mask = np.zeros(G.order, dtype=bool)
    mask[H.members] = True
    vals = []
    for c in classes:
        g = int(c[0])
        conj = G.table[G.table[:, g], G.inverse]
        n, r = divmod(int(mask[conj].sum()), H.order)
        if r:
            raise ConsistencyError("induced character value is not an integer")
        vals.append(n)
    return ClassFunction(G, tuple(classes), tuple(vals))


def twisted_inner_character(G: FiniteGroup, phi: Automorphism) -> tuple[ClassFunction, Check]:
    """Character of ``G`` acting on functions by ``(x.f)(g) = f(x g phi(x^-1))``.

    Its value at ``x`` is the number of ``g`` with ``x g phi(x^-1) = g``.  The
    check compares it with the sum of characters induced from the trivial
    characters of the twisted stabilizers of class representatives, and its
    multiplicity of the trivial character with ``R(phi)``.
    """
    classes = conjugacy_classes(G)
    counts = _kernels.twisted_fixed_counts(G.table, G.inverse, phi.images)
    for c in classes:
        if (counts[c] != counts[c[0]]).any():
            raise ConsistencyError("twisted fixed-point count is not a class function")
    chi = ClassFunction(G, tuple(classes), tuple(int(counts[c[0]]) for c in classes))

    part = reidemeister_partition(G, phi)
    total = None
    for a in part.representatives.tolist():
        moved = G.table[G.table[:, a], phi.images[G.inverse]]
        stab = Subgroup(G, np.flatnonzero(moved == a))
        ind = induced_trivial_character(G, stab, classes)
        total = ind if total is None else total + ind
    mult = chi.inner_with_trivial()
    same = chi.values == total.values
    ok = same and mult == part.count
    witness = None
    if not ok:
        witness = {"chi": list(chi.values), "induced_sum": list(total.values), "multiplicity": str(mult)}
    return chi, Check("twisted_inner_character", ok,
                      {"R": part.count, "trivial_multiplicity": int(mult) if mult.denominator == 1 else str(mult),
                       "matches_induced_sum": same}, witness)


def isogredience_count(G: FiniteGroup, alpha: Automorphism) -> tuple[int, Check]:
    """Number of isogredience classes in the outer class of ``alpha``.

    Representatives ``tau_s ∘ alpha`` are partitioned under
    ``beta -> tau_h ∘ beta ∘ tau_h^-1``; the count is compared with the
    Reidemeister number of the automorphism induced on ``G/Z(G)``.
    """
    n = G.order
    inner = np.array([inner_automorphism(G, h).images for h in range(n)])
    reps: dict[bytes, int] = {}
    maps = []
    for s in range(n):
        beta = inner[s][alpha.images]
        key = beta.tobytes()
        if key not in reps:
            reps[key] = len(maps)
            maps.append(beta)
    label = [-1] * len(maps)
    S = 0
    for i, beta in enumerate(maps):
        if label[i] >= 0:
            continue
        # row h holds tau_h ∘ beta ∘ tau_{h^-1}
        conj = inner[np.arange(n)[:, None], beta[inner[G.inverse]]]
        for row in conj:
            label[reps[row.tobytes()]] = S
        S += 1
    Q, _, alpha_bar = quotient_with_induced(G, center(G), alpha)
    r = reidemeister_partition(Q, alpha_bar).count
    ok = S == r
    return S, Check("isogredience", ok, {"S": S, "R_quotient_by_center": r, "outer_class_size": len(maps)},
                    None if ok else {"images": alpha.images.tolist()})
