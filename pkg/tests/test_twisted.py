from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import brute_orbits
from reidemeister.corpus import corpus_entries, corpus_group
from reidemeister.errors import HypothesisViolated
from reidemeister.group import (
    center, conjugacy_classes, enumerate_automorphisms, identity_automorphism, inner_automorphism, subgroup,
    trivial_subgroup,
)
from reidemeister.twisted import (
    check_bounds, coset_identity_check, fixed_subgroup, landau_bound_check, orbit_stabilizer_check,
    quotient_monotonicity_check, reidemeister_burnside_oracle, reidemeister_number, reidemeister_partition,
    shift_class_check, twisted_stabilizer, unit_fraction_partitions,
)

SMALL = [e.name for e in corpus_entries(24)]


def _pairs(names):
    for name in names:
        G = corpus_group(name)
        for i, phi in enumerate(enumerate_automorphisms(G)):
            yield G, phi


def test_identity_gives_conjugacy_classes(S3):
    part = reidemeister_partition(S3, identity_automorphism(S3))
    assert [c.tolist() for c in part.classes] == [c.tolist() for c in conjugacy_classes(S3)]
    assert part.count == 3


def test_z4_inversion_classes(Z4, z4_inversion):
    part = reidemeister_partition(Z4, z4_inversion)
    assert [c.tolist() for c in part.classes] == [[0, 2], [1, 3]]
    assert part.count == 2


def test_s3_inner_automorphisms_have_three_classes(S3):
    assert all(reidemeister_number(S3, inner_automorphism(S3, g)) == 3 for g in range(6))


@pytest.mark.parametrize("name", SMALL)
def test_partition_matches_plain_orbits(name):
    G = corpus_group(name)
    for phi in enumerate_automorphisms(G):
        part = reidemeister_partition(G, phi)
        assert [c.tolist() for c in part.classes] == brute_orbits(G, phi.images.tolist())


def test_stabilizer_examples(S3, Z4, z4_inversion):
    res = twisted_stabilizer(S3, identity_automorphism(S3), S3.identity, S3.identity)
    assert res.stabilizer_order == 6 and len(res.coset) == 6
    res = twisted_stabilizer(Z4, z4_inversion, 0, 0)
    assert sorted(res.coset) == [0, 2] and res.stabilizer_order == 2
    res = twisted_stabilizer(Z4, z4_inversion, 0, 1)
    assert res.empty and list(res.coset) == []


def test_fixed_subgroup_examples(S3, Z4, z4_inversion):
    assert fixed_subgroup(S3, identity_automorphism(S3)).order == 6
    assert fixed_subgroup(Z4, z4_inversion).members.tolist() == [0, 2]
    t = next(g for g in range(6) if S3.element_orders[g] == 2)
    assert fixed_subgroup(S3, inner_automorphism(S3, t)).order == 2


def test_shift_class_examples(S3, Z4, z4_inversion):
    assert shift_class_check(Z4, z4_inversion, 0)
    chk = shift_class_check(Z4, z4_inversion, 1)
    assert chk and chk.values["R_phi"] == chk.values["R_psi"] == 2
    assert all(shift_class_check(S3, identity_automorphism(S3), k) for k in range(6))


def test_quotient_monotonicity_examples(S3, Z4, z4_inversion):
    chk = quotient_monotonicity_check(Z4, trivial_subgroup(Z4), z4_inversion)
    assert chk and chk.values["R_G"] == chk.values["R_quotient"] == 2
    chk = quotient_monotonicity_check(Z4, subgroup(Z4, [0, 2]), z4_inversion)
    assert chk and (chk.values["R_G"], chk.values["R_quotient"]) == (2, 2)
    A3 = subgroup(S3, [g for g in range(6) if S3.element_orders[g] != 2])
    chk = quotient_monotonicity_check(S3, A3, identity_automorphism(S3))
    assert chk and (chk.values["R_G"], chk.values["R_quotient"]) == (3, 2)


def test_bounds_examples(S3, Z4, z4_inversion):
    chk = check_bounds(corpus_group("Z2"), identity_automorphism(corpus_group("Z2")))
    assert chk and (chk.values["R"], chk.values["fixed_order"]) == (2, 2)
    chk = check_bounds(Z4, z4_inversion)
    assert chk and (chk.values["R"], chk.values["fixed_order"]) == (2, 2)
    chk = check_bounds(S3, identity_automorphism(S3))
    assert chk and (chk.values["R"], chk.values["fixed_order"]) == (3, 6)


def test_landau_examples():
    assert landau_bound_check([1]).values == {"n": 1, "max": 1, "bound": 1}
    assert landau_bound_check([2, 4, 4]).values["bound"] == 243
    assert landau_bound_check([2, 3, 6])


def test_landau_rejects_bad_hypotheses():
    with pytest.raises(HypothesisViolated):
        landau_bound_check([2, 3, 7])
    with pytest.raises(HypothesisViolated):
        landau_bound_check([3, 2, 6])


def _brute_partitions(n, cap):
    import itertools
    out = []
    for xs in itertools.combinations_with_replacement(range(1, cap + 1), n):
        if sum(Fraction(1, x) for x in xs) == 1:
            out.append(xs)
    return out


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 3), (4, 14), (5, 147)])
def test_unit_fraction_partition_counts(n, count):
    parts = list(unit_fraction_partitions(n))
    assert len(parts) == len(set(parts)) == count


@pytest.mark.parametrize("n", [1, 2, 3])
def test_unit_fraction_partitions_match_grid_search(n):
    # the largest term for n = 3 is 6, so a grid up to 12 is exhaustive
    assert sorted(unit_fraction_partitions(n)) == _brute_partitions(n, 12)


def test_burnside_oracle_examples(S3, Z4, z4_inversion):
    assert reidemeister_burnside_oracle(S3, identity_automorphism(S3)) == 3
    Z6 = corpus_group("Z6")
    assert reidemeister_burnside_oracle(Z6, identity_automorphism(Z6)) == 6
    assert reidemeister_burnside_oracle(Z4, z4_inversion) == 2


@pytest.mark.parametrize("name", SMALL)
def test_structural_identities_exhaustive(name):
    G = corpus_group(name)
    for phi in enumerate_automorphisms(G):
        part = reidemeister_partition(G, phi)
        assert reidemeister_burnside_oracle(G, phi) == part.count
        assert orbit_stabilizer_check(G, phi, part)
        assert check_bounds(G, phi)
        assert quotient_monotonicity_check(G, center(G), phi)
        for k in range(G.order):
            assert shift_class_check(G, phi, k)


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4"])
def test_coset_identity_exhaustive(name):
    G = corpus_group(name)
    for phi in enumerate_automorphisms(G):
        for g in range(G.order):
            for s in range(G.order):
                assert coset_identity_check(G, phi, g, s)


@given(st.sampled_from(["S4", "H3", "A5", "D6", "Z2xZ4"]), st.data())
def test_coset_and_shift_sampled(name, data):
    G = corpus_group(name)
    phi = data.draw(st.sampled_from(enumerate_automorphisms(G)))
    g, s, k = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    assert coset_identity_check(G, phi, g, s)
    assert shift_class_check(G, phi, k)


@given(st.sampled_from(SMALL), st.data())
def test_reidemeister_number_is_invariant_under_inner_twist_and_conjugation(name, data):
    G = corpus_group(name)
    auts = enumerate_automorphisms(G)
    phi = data.draw(st.sampled_from(auts))
    g = data.draw(st.integers(0, G.order - 1))
    psi = data.draw(st.sampled_from(auts))
    r = reidemeister_number(G, phi)
    assert reidemeister_number(G, inner_automorphism(G, g).compose(phi)) == r
    assert reidemeister_number(G, psi.compose(phi).compose(psi.inverse())) == r
