"""Hot loops over Cayley tables and small matrices mod p.

Every kernel exists as ``<name>_nb`` (numba loop form) and ``<name>_np``
(numpy form); the public ``<name>`` is bound to one of them according to
:data:`reidemeister._accel.USE_NUMBA`.  Both forms must return identical
arrays; ``tests/test_kernels.py`` holds them to that.

Conventions: ``table[a, b]`` is the index of ``a*b``, ``inv[a]`` the index of
``a^-1`` and ``phi[a]`` the image of ``a`` under an automorphism.
"""
from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, njit


# --------------------------------------------------------------- associativity

def _assoc_loop(table, a_idx, b_idx, c_idx):
    for t in range(a_idx.shape[0]):
        a = a_idx[t]
        b = b_idx[t]
        c = c_idx[t]
        if table[table[a, b], c] != table[a, table[b, c]]:
            return t
    return -1


def _assoc_full_loop(table):
    n = table.shape[0]
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return a, b, c
    return -1, -1, -1


associativity_witness_nb = njit(_assoc_full_loop)
_assoc_sampled_nb = njit(_assoc_loop)


def associativity_witness_np(table):
    n = table.shape[0]
    for a in range(n):
        # left[b, c] = (a b) c, right[b, c] = a (b c)
        left = table[table[a]]
        right = table[a][table]
        bad = np.argwhere(left != right)
        if bad.size:
            b, c = bad[0]
            return a, int(b), int(c)
    return -1, -1, -1


def sampled_associativity_witness(table, a_idx, b_idx, c_idx):
    if USE_NUMBA:
        t = _assoc_sampled_nb(table, a_idx, b_idx, c_idx)
    else:
        bad = np.flatnonzero(table[table[a_idx, b_idx], c_idx] != table[a_idx, table[b_idx, c_idx]])
        t = int(bad[0]) if bad.size else -1
    if t < 0:
        return -1, -1, -1
    return int(a_idx[t]), int(b_idx[t]), int(c_idx[t])


# -------------------------------------------------------------- twisted orbits

def _orbits_loop(table, inv, phi):
    n = table.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    count = 0
    for g in range(n):
        if labels[g] >= 0:
            continue
        for x in range(n):
            labels[table[table[x, g], phi[inv[x]]]] = count
        count += 1
    return labels


twisted_orbit_labels_nb = njit(_orbits_loop)


def twisted_orbit_labels_np(table, inv, phi):
    n = table.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    right = phi[inv]
    count = 0
    for g in range(n):
        if labels[g] >= 0:
            continue
        labels[table[table[:, g], right]] = count
        count += 1
    return labels


def _fixed_loop(table, inv, phi):
    n = table.shape[0]
    counts = np.zeros(n, dtype=np.int64)
    for x in range(n):
        r = phi[inv[x]]
        c = 0
        for g in range(n):
            if table[table[x, g], r] == g:
                c += 1
        counts[x] = c
    return counts


twisted_fixed_counts_nb = njit(_fixed_loop)


def twisted_fixed_counts_np(table, inv, phi):
    n = table.shape[0]
    moved = table[table, phi[inv][:, None]]
    return (moved == np.arange(n)[None, :]).sum(axis=1).astype(np.int64)


# ------------------------------------------------------ class multiplication

def _class_coeff_loop(table, inv, class_of, reps):
    n = table.shape[0]
    k = reps.shape[0]
    out = np.zeros((k, k, k), dtype=np.int64)
    for x in range(n):
        r = class_of[x]
        xi = inv[x]
        for t in range(k):
            out[r, class_of[table[xi, reps[t]]], t] += 1
    return out


class_coefficients_nb = njit(_class_coeff_loop)


def class_coefficients_np(table, inv, class_of, reps):
    k = reps.shape[0]
    out = np.zeros((k, k, k), dtype=np.int64)
    for t in range(k):
        s = class_of[table[inv, reps[t]]]
        np.add.at(out, (class_of, s, t), 1)
    return out


# ------------------------------------------------------------ linear algebra mod p

def _inv_mod(a, p):
    # extended Euclid; a is assumed nonzero mod p
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if t < 0:
        t += p
    return t


_inv_mod_nb = njit(_inv_mod)


def _rref_loop(mat, p):
    m = mat.copy() % p
    rows, cols = m.shape
    pivots = np.full(min(rows, cols), -1, dtype=np.int64)
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if m[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(cols):
                tmp = m[piv, j]
                m[piv, j] = m[rank, j]
                m[rank, j] = tmp
        s = _inv_mod_nb(m[rank, c], p)
        for j in range(cols):
            m[rank, j] = (m[rank, j] * s) % p
        for r in range(rows):
            if r != rank and m[r, c] != 0:
                f = m[r, c]
                for j in range(cols):
                    m[r, j] = (m[r, j] - f * m[rank, j]) % p
        pivots[rank] = c
        rank += 1
    return m, pivots[:rank]


rref_mod_nb = njit(_rref_loop)


def rref_mod_np(mat, p):
    m = np.array(mat, dtype=np.int64) % p
    rows, cols = m.shape
    pivots = []
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.flatnonzero(m[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        m[rank] = (m[rank] * pow(int(m[rank, c]), -1, p)) % p
        f = m[:, c].copy()
        f[rank] = 0
        m = (m - np.outer(f, m[rank])) % p
        pivots.append(c)
        rank += 1
    return m, np.array(pivots, dtype=np.int64)


if USE_NUMBA:
    associativity_witness = associativity_witness_nb
    twisted_orbit_labels = twisted_orbit_labels_nb
    twisted_fixed_counts = twisted_fixed_counts_nb
    class_coefficients = class_coefficients_nb
    rref_mod = rref_mod_nb
else:
    associativity_witness = associativity_witness_np
    twisted_orbit_labels = twisted_orbit_labels_np
    twisted_fixed_counts = twisted_fixed_counts_np
    class_coefficients = class_coefficients_np
    rref_mod = rref_mod_np
