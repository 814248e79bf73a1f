from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import brute_orbits
from reidemeister.chars import (
    character_table, dixon_prime, dual_action, guard_table, induced_trivial_character, isogredience_count,
    tbft_check, twisted_coinvariants_dimension, twisted_inner_character,
)
from reidemeister.corpus import corpus_entries, corpus_group
from reidemeister.group import (
    enumerate_automorphisms, identity_automorphism, inner_automorphism, subgroup, trivial_subgroup, whole_group,
)
from reidemeister.twisted import reidemeister_number

DEGREES = {
    "trivial": [1],
    "S3": [1, 1, 2],
    "Q8": [1, 1, 1, 1, 2],
    "D4": [1, 1, 1, 1, 2],
    "A4": [1, 1, 1, 3],
    "S4": [1, 1, 2, 3, 3],
    "D5": [1, 1, 2, 2],
    "H3": [1] * 9 + [3, 3],
    "A5": [1, 3, 3, 4, 5],
}


@pytest.mark.parametrize("name,degrees", sorted(DEGREES.items()))
def test_degrees(name, degrees):
    T = character_table(corpus_group(name))
    assert list(T.degrees) == degrees
    assert sum(d * d for d in degrees) == T.group.order


def test_trivial_table():
    T = character_table(corpus_group("trivial"))
    assert T.rows.tolist() == [[1]]


@pytest.mark.parametrize("name", [e.name for e in corpus_entries(60)])
def test_prime_and_orthogonality(name):
    G = corpus_group(name)
    T = character_table(G)
    p = T.prime
    assert sympy.isprime(p) and (p - 1) % G.exponent == 0 and p > 2 * G.order
    assert T.size == len(brute_orbits(G, list(range(G.order))))
    rows = T.rows.astype(object)
    h = T.class_sizes.tolist()
    inv = T.inverse_class.tolist()
    k = T.size
    for i in range(k):
        for j in range(k):
            s = sum(h[c] * rows[i][c] * rows[j][inv[c]] for c in range(k)) % p
            assert s == (G.order % p if i == j else 0)
    # column orthogonality: sum_i chi_i(g) chi_i(h^-1) = |C_G(g)| delta
    for a in range(k):
        for b in range(k):
            s = sum(rows[i][a] * rows[i][inv[b]] for i in range(k)) % p
            assert s == ((G.order // h[a]) % p if a == b else 0)


def test_guard_prime_is_different_and_agrees():
    G = corpus_group("A4")
    T = character_table(G)
    U = guard_table(T)
    assert U.prime > T.prime and list(U.degrees) == list(T.degrees)


def _lifted(name):
    T = character_table(corpus_group(name), lift=True)
    return T, np.round(T.lift.complex_table(), 9)


def test_s3_lift_matches_known_table():
    T, C = _lifted("S3")
    sizes = T.class_sizes.tolist()
    # columns ordered by class size: identity, 3-cycles, transpositions
    order = sorted(range(3), key=lambda c: sizes[c])
    got = sorted(tuple(C[i, order].real.tolist()) for i in range(3))
    assert got == sorted([(1, 1, 1), (1, 1, -1), (2, -1, 0)])


def test_a5_lift_contains_golden_ratio():
    T, C = _lifted("A5")
    phi = (1 + 5 ** 0.5) / 2
    vals = set(np.round(C.real.ravel(), 6).tolist())
    assert round(phi, 6) in vals and round(1 - phi, 6) in vals
    assert np.allclose(C.imag, 0)


def test_lift_exact_orthogonality_z5():
    T, C = _lifted("Z5")
    G = T.group
    gram = C @ np.diag(T.class_sizes) @ C.conj().T
    assert np.allclose(gram, G.order * np.eye(5))


def test_dual_action_examples(S3, Z4, z4_inversion):
    T = character_table(Z4)
    act = dual_action(T, identity_automorphism(Z4))
    assert len(act.fixed_rows) == 4
    act = dual_action(T, z4_inversion)
    assert len(act.fixed_rows) == 2
    assert sorted(act.cycle_lengths().tolist()) == [1, 1, 2, 2]
    T3 = character_table(S3)
    assert all(len(dual_action(T3, inner_automorphism(S3, g)).fixed_rows) == 3 for g in range(6))


@pytest.mark.parametrize("name", ["Z5", "Z8", "D4", "Q8", "A4", "H3"])
def test_dual_action_is_a_permutation_of_order_dividing_phi(name):
    G = corpus_group(name)
    T = character_table(G)
    for phi in enumerate_automorphisms(G):
        perm = dual_action(T, phi).row_permutation
        assert sorted(perm.tolist()) == list(range(T.size))
        q = np.arange(T.size)
        for _ in range(phi.order()):
            q = perm[q]
        assert (q == np.arange(T.size)).all()


def test_tbft_examples(S3, Z4, z4_inversion):
    chk = tbft_check(Z4, z4_inversion)
    assert chk and chk.values == {"R": 2, "fixed_characters": 2}
    for name in ("trivial", "D5", "Q8"):
        G = corpus_group(name)
        chk = tbft_check(G, identity_automorphism(G))
        assert chk and chk.values["R"] == len(character_table(G).degrees)
    t = next(g for g in range(6) if S3.element_orders[g] == 2)
    assert tbft_check(S3, inner_automorphism(S3, t)).values == {"R": 3, "fixed_characters": 3}


def _coinvariants_oracle(G, phi):
    # rank over Q of every relation delta_h - delta_{x h phi(x)^-1}, via sympy
    t, inv = G.table.tolist(), G.inverse.tolist()
    rows = []
    for x in range(G.order):
        for h in range(G.order):
            v = [0] * G.order
            v[h] += 1
            v[t[t[x][h]][inv[phi.images[x]]]] -= 1
            rows.append(v)
    return G.order - sympy.Matrix(rows).rank()


def test_coinvariant_examples(S3, Z4, z4_inversion):
    T = corpus_group("trivial")
    assert twisted_coinvariants_dimension(T, identity_automorphism(T)) == 1
    assert twisted_coinvariants_dimension(Z4, z4_inversion) == 2
    assert twisted_coinvariants_dimension(S3, identity_automorphism(S3)) == 3


@pytest.mark.parametrize("name", ["Z6", "S3", "Q8", "Z2xZ2"])
def test_coinvariants_against_sympy_rank(name):
    G = corpus_group(name)
    for phi in enumerate_automorphisms(G):
        d = twisted_coinvariants_dimension(G, phi)
        assert d == _coinvariants_oracle(G, phi)
        assert d == twisted_coinvariants_dimension(G, phi, all_elements=True)


def test_induced_trivial_examples(S3):
    assert set(induced_trivial_character(S3, whole_group(S3)).values) == {1}
    reg = induced_trivial_character(S3, trivial_subgroup(S3))
    assert reg.at(S3.identity) == 6 and sum(reg.values) == 6
    A3 = subgroup(S3, [g for g in range(6) if S3.element_orders[g] != 2])
    chi = induced_trivial_character(S3, A3)
    t = next(g for g in range(6) if S3.element_orders[g] == 2)
    c = next(g for g in range(6) if S3.element_orders[g] == 3)
    assert (chi.at(S3.identity), chi.at(t), chi.at(c)) == (2, 0, 2)


def test_twisted_inner_character_examples(S3, Z4, z4_inversion):
    chi, chk = twisted_inner_character(Z4, z4_inversion)
    assert chk and chi.at(0) == 4 and chi.inner_with_trivial() == Fraction(2)
    chi, chk = twisted_inner_character(S3, identity_automorphism(S3))
    assert chk and chk.values["matches_induced_sum"] and chk.values["trivial_multiplicity"] == 3


def test_isogredience_examples(S3, Q8):
    V = corpus_group("Z2xZ2")
    assert isogredience_count(V, identity_automorphism(V))[0] == 1
    S, chk = isogredience_count(S3, identity_automorphism(S3))
    assert chk and S == 3
    S, chk = isogredience_count(Q8, identity_automorphism(Q8))
    assert chk and S == 4


def _brute_isogredience(G, alpha):
    """Union-find over tau_s alpha under conjugation by all automorphisms tau_h."""
    n = G.order
    t, inv = G.table.tolist(), G.inverse.tolist()
    tau = [[t[t[h][x]][inv[h]] for x in range(n)] for h in range(n)]
    outer = {tuple(tau[s][a] for a in alpha.images.tolist()) for s in range(n)}
    classes = []
    for beta in sorted(outer):
        orbit = {tuple(tau[h][beta[tau[inv[h]][x]]] for x in range(n)) for h in range(n)}
        if not any(beta in c for c in classes):
            classes.append(orbit)
    return len(classes)


@pytest.mark.parametrize("name", ["D4", "Q8", "A4", "D6", "S4"])
def test_isogredience_against_brute_force(name):
    G = corpus_group(name)
    for phi in enumerate_automorphisms(G):
        S, chk = isogredience_count(G, phi)
        assert chk and S == _brute_isogredience(G, phi)


@given(st.sampled_from(["D4", "Q8", "A4", "S4", "D5"]), st.data())
def test_isogredience_is_constant_on_outer_classes(name, data):
    G = corpus_group(name)
    phi = data.draw(st.sampled_from(enumerate_automorphisms(G)))
    g = data.draw(st.integers(0, G.order - 1))
    assert isogredience_count(G, phi)[0] == isogredience_count(G, inner_automorphism(G, g).compose(phi))[0]


@given(st.sampled_from([e.name for e in corpus_entries(24)]), st.data())
def test_tbft_property(name, data):
    G = corpus_group(name)
    phi = data.draw(st.sampled_from(enumerate_automorphisms(G)))
    T = character_table(G)
    assert len(dual_action(T, phi).fixed_rows) == reidemeister_number(G, phi)


def test_dixon_prime_conditions():
    G = corpus_group("A5")
    p = dixon_prime(G)
    assert p == 151
    q = dixon_prime(G, above=p)
    assert q > p and (q - 1) % 30 == 0
