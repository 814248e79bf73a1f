"""Finite groups as validated Cayley tables, with homomorphisms and automorphisms.

Elements are the indices ``0..n-1``.  Every object here is immutable after
construction: numpy payloads are marked read-only.
"""
from __future__ import annotations

import os
from dataclasses import InitVar, dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import (
    InputError,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotBijective,
    NotHomomorphism,
    NotInvariant,
    NotLatinSquare,
    NotNormal,
    NotSubgroup,
    OrderLimitExceeded,
)

DEFAULT_ORDER_CAP = 1024
AUTOMORPHISM_ORDER_CAP = 256
FULL_ASSOCIATIVITY_LIMIT = 256
ASSOCIATIVITY_SAMPLES = 10_000


def order_cap() -> int:
    """Group-order cap; ``TWISTED_ORDER_CAP`` overrides the default of 1024."""
    raw = os.environ.get("TWISTED_ORDER_CAP")
    return int(raw) if raw else DEFAULT_ORDER_CAP


def _frozen(a, dtype=np.int64) -> np.ndarray:
    arr = np.array(a, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    identity: int
    inverse: np.ndarray
    name: str = ""
    labels: tuple | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(name={self.name!r}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def label(self, a: int):
        return self.labels[a] if self.labels is not None else a

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.ones(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        pending = cur != self.identity
        while pending.any():
            cur = self.table[cur, np.arange(n)]
            k += 1
            done = pending & (cur == self.identity)
            orders[done] = k
            pending &= ~done
        orders.setflags(write=False)
        return orders

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = self.identity
        for _ in range(k % int(self.element_orders[a])):
            out = int(self.table[out, a])
        return out

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def closure(self, elements: Iterable[int]) -> np.ndarray:
        """Sorted members of the subgroup generated by ``elements``."""
        gens = np.array(sorted(set(int(x) for x in elements)), dtype=np.int64)
        members = np.array([self.identity], dtype=np.int64)
        if gens.size == 0:
            return members
        while True:
            grown = np.union1d(members, self.table[np.ix_(members, gens)].ravel())
            if grown.size == members.size:
                return members
            members = grown

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: keep adding the least element outside the closure."""
        gens: list[int] = []
        inside = np.zeros(self.order, dtype=bool)
        inside[self.identity] = True
        for a in range(self.order):
            if not inside[a]:
                gens.append(a)
                inside[self.closure(gens)] = True
        return tuple(gens)


# ------------------------------------------------------------------ builders

def build_from_table(table, name: str = "", labels=None) -> FiniteGroup:
    """Validate a Cayley table and wrap it as a :class:`FiniteGroup`."""
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InputError(f"table must be a non-empty square array, got shape {arr.shape}")
    if arr.dtype.kind not in "iu":
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise InputError("table entries must be integers")
    arr = arr.astype(np.int64)
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        r, c = np.argwhere((arr < 0) | (arr >= n))[0]
        raise InputError(f"entry table[{r}][{c}] = {arr[r, c]} out of range 0..{n - 1}", (int(r), int(c)))

    target = np.arange(n)
    for axis_name, mat in (("row", arr), ("column", arr.T)):
        bad = np.flatnonzero((np.sort(mat, axis=1) != target).any(axis=1))
        if bad.size:
            r = int(bad[0])
            vals, first = np.unique(mat[r], return_index=True)
            dup = int(np.setdiff1d(np.arange(n), first)[0])
            c1 = int(np.flatnonzero(mat[r] == mat[r, dup])[0])
            raise NotLatinSquare(
                f"NotLatinSquare at {axis_name} {r}: positions {c1} and {dup} both hold {int(mat[r, dup])}",
                (r, c1, dup),
            )

    ids = np.flatnonzero((arr == target).all(axis=1) & (arr.T == target).all(axis=1))
    if ids.size == 0:
        raise NoIdentity("NoIdentity: no element e with e*a = a*e = a for all a")
    e = int(ids[0])

    inverse = np.argmax(arr == e, axis=1)
    bad = np.flatnonzero(arr[inverse, np.arange(n)] != e)
    if bad.size:
        a = int(bad[0])
        raise NoInverse(f"NoInverse: element {a} has right inverse {int(inverse[a])} that is not a left inverse", (a, int(inverse[a])))

    if n <= FULL_ASSOCIATIVITY_LIMIT:
        w = _kernels.associativity_witness(arr)
    else:
        rng = np.random.default_rng(0)
        a_i, b_i, c_i = rng.integers(0, n, size=(3, ASSOCIATIVITY_SAMPLES))
        w = _kernels.sampled_associativity_witness(arr, a_i, b_i, c_i)
    if w[0] >= 0:
        a, b, c = (int(x) for x in w)
        raise NotAssociative(f"NotAssociative at (a, b, c) = ({a}, {b}, {c})", (a, b, c))

    return FiniteGroup(_frozen(arr), e, _frozen(inverse), name, tuple(labels) if labels is not None else None)


def build_from_permutations(generators: Sequence[Sequence[int]], name: str = "", cap: int | None = None) -> FiniteGroup:
    """Close a set of permutations of ``{0..d-1}`` and materialise the Cayley table.

    Elements are indexed in lexicographic order of their image tuples, so the
    identity permutation is element 0.  The product ``a*b`` is the composite
    ``i -> a[b[i]]``.
    """
    cap = order_cap() if cap is None else cap
    gens = [tuple(int(x) for x in g) for g in generators]
    degree = len(gens[0]) if gens else 0
    for g in gens:
        if len(g) != degree:
            raise InputError("generators have different degrees")
        if sorted(g) != list(range(degree)):
            raise InputError(f"generator {list(g)} is not a permutation of 0..{degree - 1}")

    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(x[i] for i in g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise OrderLimitExceeded(f"closure exceeds order cap {cap}")
        frontier = nxt

    elems = sorted(seen)
    perms = np.array(elems, dtype=np.int64).reshape(len(elems), degree)
    index = {p.tobytes(): i for i, p in enumerate(perms)}
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        comp = perms[a][perms]  # row b holds a[b[i]]
        table[a] = [index[row.tobytes()] for row in comp]
    return build_from_table(table, name=name, labels=elems)


# ------------------------------------------------------------------ subgroups

@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: FiniteGroup
    members: np.ndarray

    @property
    def order(self) -> int:
        return int(self.members.size)

    def __contains__(self, a) -> bool:
        return bool(self._mask[int(a)])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Subgroup(of={self.parent.name!r}, members={self.members.tolist()})"

    @cached_property
    def _mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.members] = True
        return m

    def normality_witness(self) -> tuple[int, int] | None:
        """A pair ``(g, h)`` with ``g h g^-1`` outside the subgroup, or None."""
        G = self.parent
        conj = G.table[G.table[:, self.members], G.inverse[:, None]]
        bad = np.argwhere(~self._mask[conj])
        if bad.size:
            g, j = bad[0]
            return int(g), int(self.members[j])
        return None

    def is_normal(self) -> bool:
        return self.normality_witness() is None


def subgroup(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    mem = np.unique(np.array(list(members), dtype=np.int64))
    if mem.size == 0 or G.identity not in mem:
        raise NotSubgroup("subgroup must contain the identity")
    mask = np.zeros(G.order, dtype=bool)
    mask[mem] = True
    prods = G.table[np.ix_(mem, mem)]
    if not mask[prods].all() or not mask[G.inverse[mem]].all():
        raise NotSubgroup(f"{mem.tolist()} is not closed under multiplication and inverses")
    return Subgroup(G, _frozen(mem))


def generated_subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    return Subgroup(G, _frozen(G.closure(elements)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, _frozen([G.identity]))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, _frozen(np.arange(G.order)))


def center(G: FiniteGroup) -> Subgroup:
    mask = (G.table == G.table.T).all(axis=1)
    return Subgroup(G, _frozen(np.flatnonzero(mask)))


def conjugacy_classes(G: FiniteGroup) -> list[np.ndarray]:
    """Conjugacy classes as sorted index arrays, ordered by least element."""
    labels = _kernels.twisted_orbit_labels(G.table, G.inverse, np.arange(G.order, dtype=np.int64))
    return partition_from_labels(labels)


def partition_from_labels(labels: np.ndarray) -> list[np.ndarray]:
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    return [_frozen(block) for block in np.split(order, bounds)]


# ------------------------------------------------------------------ maps

@dataclass(frozen=True, eq=False)
class GroupHom:
    domain: FiniteGroup
    codomain: FiniteGroup
    images: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        imgs = _frozen(self.images)
        object.__setattr__(self, "images", imgs)
        if not check:
            return
        if imgs.shape != (self.domain.order,) or imgs.min() < 0 or imgs.max() >= self.codomain.order:
            raise InputError(f"images must be {self.domain.order} indices into 0..{self.codomain.order - 1}")
        lhs = imgs[self.domain.table]
        rhs = self.codomain.table[imgs[:, None], imgs[None, :]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            a, b = (int(x) for x in bad[0])
            raise NotHomomorphism(f"NotHomomorphism: f({a}*{b}) != f({a})*f({b})", (a, b))

    def __call__(self, a: int) -> int:
        return int(self.images[a])

    def kernel(self) -> Subgroup:
        return Subgroup(self.domain, _frozen(np.flatnonzero(self.images == self.codomain.identity)))

    def is_surjective(self) -> bool:
        return np.unique(self.images).size == self.codomain.order


@dataclass(frozen=True, eq=False)
class Automorphism:
    group: FiniteGroup
    images: np.ndarray
    check: InitVar[bool] = True

    def __post_init__(self, check: bool) -> None:
        imgs = _frozen(self.images)
        object.__setattr__(self, "images", imgs)
        if check:
            n = self.group.order
            if imgs.shape != (n,) or not np.array_equal(np.sort(imgs), np.arange(n)):
                raise NotBijective(f"images {imgs.tolist()} are not a permutation of 0..{n - 1}")
            GroupHom(self.group, self.group, imgs)

    @property
    def base(self) -> GroupHom:
        return GroupHom(self.group, self.group, self.images, check=False)

    @cached_property
    def inverse_images(self) -> np.ndarray:
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.images.size)
        inv.setflags(write=False)
        return inv

    def __call__(self, a: int) -> int:
        return int(self.images[a])

    def key(self) -> tuple[int, ...]:
        return tuple(self.images.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.group is other.group and np.array_equal(self.images, other.images)

    def __hash__(self) -> int:
        return hash((id(self.group), self.images.tobytes()))

    def __repr__(self) -> str:
        return f"Automorphism({self.group.name!r}, {self.images.tolist()})"

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self ∘ other``: apply ``other`` first."""
        return Automorphism(self.group, self.images[other.images], check=False)

    def inverse(self) -> "Automorphism":
        return Automorphism(self.group, self.inverse_images, check=False)

    def power(self, k: int) -> "Automorphism":
        base = self if k >= 0 else self.inverse()
        imgs = np.arange(self.group.order)
        for _ in range(abs(k)):
            imgs = base.images[imgs]
        return Automorphism(self.group, imgs, check=False)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.group.order)))

    def order(self) -> int:
        k, cur = 1, self.images
        ident = np.arange(self.group.order)
        while not np.array_equal(cur, ident):
            cur = self.images[cur]
            k += 1
        return k


def identity_automorphism(G: FiniteGroup) -> Automorphism:
    return Automorphism(G, np.arange(G.order), check=False)


def inner_automorphism(G: FiniteGroup, g: int) -> Automorphism:
    """``x -> g x g^-1``."""
    imgs = G.table[G.table[g, :], G.inverse[g]]
    return Automorphism(G, imgs, check=False)


def automorphism_from_generator_images(G: FiniteGroup, gen_images: Sequence[int]) -> Automorphism:
    """Extend images of ``G.generators`` to a full map and validate it."""
    gens = G.generators
    if len(gen_images) != len(gens):
        raise InputError(f"expected {len(gens)} generator images for generators {list(gens)}")
    f = _extend(G, gens, [int(x) for x in gen_images], _word_layers(G, gens))
    if f is None:
        raise NotHomomorphism("generator images do not extend to a homomorphism")
    return Automorphism(G, f)


def _word_layers(G: FiniteGroup, gens: Sequence[int]):
    """BFS layers of the subgroup generated by ``gens``.

    Each layer is ``(elements, parents, generator_positions)`` with
    ``element = parent * gens[position]``.
    """
    seen = np.zeros(G.order, dtype=bool)
    seen[G.identity] = True
    frontier = np.array([G.identity], dtype=np.int64)
    layers = []
    while frontier.size:
        elems, parents, pos = [], [], []
        for j, g in enumerate(gens):
            ys = G.table[frontier, g]
            for x, y in zip(frontier.tolist(), ys.tolist()):
                if not seen[y]:
                    seen[y] = True
                    elems.append(y)
                    parents.append(x)
                    pos.append(j)
        if not elems:
            break
        layers.append((np.array(elems), np.array(parents), np.array(pos)))
        frontier = np.array(elems, dtype=np.int64)
    return layers


def _extend(G: FiniteGroup, gens, gen_images, layers) -> np.ndarray | None:
    """Extend generator images along ``layers``; None unless a consistent injective map results."""
    f = np.full(G.order, -1, dtype=np.int64)
    f[G.identity] = G.identity
    fg = np.array(gen_images, dtype=np.int64)
    members = [np.array([G.identity])]
    for elems, parents, pos in layers:
        f[elems] = G.table[f[parents], fg[pos]]
        members.append(elems)
    dom = np.concatenate(members)
    img = f[dom]
    if np.unique(img).size != dom.size:
        return None
    for j, g in enumerate(gens):
        if not np.array_equal(f[G.table[dom, g]], G.table[img, fg[j]]):
            return None
    return f


def enumerate_automorphisms(G: FiniteGroup, cap: int = AUTOMORPHISM_ORDER_CAP) -> list[Automorphism]:
    """All automorphisms of ``G``, sorted lexicographically by image tuple.

    Backtracks over images of the greedy generating set; an image for the
    i-th generator must have the same element order and lie outside the
    subgroup generated by the images already chosen.  After each choice the
    partial map is extended over the subgroup generated so far and checked
    for injectivity and the homomorphism relations on generators.
    """
    if G.order > cap:
        raise OrderLimitExceeded(f"order {G.order} exceeds automorphism-search cap {cap}")
    gens = G.generators
    if not gens:
        return [identity_automorphism(G)]
    layers = [_word_layers(G, gens[: i + 1]) for i in range(len(gens))]
    orders = G.element_orders
    found: list[np.ndarray] = []

    def search(i: int, chosen: list[int], image_set: np.ndarray) -> None:
        outside = np.ones(G.order, dtype=bool)
        outside[image_set] = False
        cands = np.flatnonzero(outside & (orders == orders[gens[i]]))
        for y in cands.tolist():
            trial = chosen + [y]
            f = _extend(G, gens[: i + 1], trial, layers[i])
            if f is None:
                continue
            if i + 1 == len(gens):
                found.append(f)
            else:
                search(i + 1, trial, G.closure(trial))

    search(0, [], np.array([G.identity]))
    found.sort(key=lambda f: tuple(f.tolist()))
    return [Automorphism(G, f, check=False) for f in found]


def quotient_with_induced(G: FiniteGroup, H: Subgroup, phi: Automorphism | None = None):
    """Quotient ``G/H`` with projection and the automorphism induced by ``phi``.

    Cosets are numbered by their least element.  Returns ``(Q, p, phi_bar)``.
    """
    if H.parent is not G:
        raise InputError("subgroup belongs to a different group")
    w = H.normality_witness()
    if w is not None:
        g, h = w
        raise NotNormal(f"NotNormal: {g} * {h} * {g}^-1 lies outside H", w)
    phi = identity_automorphism(G) if phi is None else phi
    mask = np.zeros(G.order, dtype=bool)
    mask[H.members] = True
    bad = np.flatnonzero(~mask[phi.images[H.members]])
    if bad.size:
        h = int(H.members[bad[0]])
        raise NotInvariant(f"NotInvariant: phi({h}) = {phi(h)} lies outside H", h)

    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            coset_of[G.table[g, H.members]] = len(reps)
            reps.append(g)
    reps_arr = np.array(reps, dtype=np.int64)
    qtable = coset_of[G.table[np.ix_(reps_arr, reps_arr)]]
    labels = None if G.labels is None else [G.labels[r] for r in reps]
    Q = build_from_table(qtable, name=f"{G.name}/H" if G.name else "", labels=labels)
    p = GroupHom(G, Q, coset_of, check=False)
    phi_bar = Automorphism(Q, coset_of[phi.images[reps_arr]], check=False)
    return Q, p, phi_bar
