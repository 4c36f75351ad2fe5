import random

import pytest
from hypothesis import given, settings, strategies as st

from latsum import (
    GroupSpec,
    LatticeTooLarge,
    NotAPGroup,
    conjugates,
    cyclic_group,
    dihedral_group,
    elementary_abelian_group,
    enumerate_subgroups,
    frattini,
    frattini_rank,
    gaussian_subgroup_count,
    is_nilpotent,
    is_normal,
    maximal_subgroups,
    normalizer,
    recognize,
    semidirect_pq_group,
    symmetric_group,
    sylow_decomposition,
)
from latsum.arith import divisors
from latsum.lattice import _enumerate_worklist, subgroup_generators

from helpers import brute_force_subgroup_masks, naive_order_census


def lat_of(spec: str, cap: int = 100_000):
    group = GroupSpec.parse(spec).build()
    return group, enumerate_subgroups(group, cap)


def test_trivial_lattice():
    _, lat = lat_of("cyclic:1")
    assert len(lat) == 1
    assert lat.census == {1: 1}


def test_s3_lattice():
    _, lat = lat_of("pq:2,3")
    assert len(lat) == 6
    assert lat.census == {1: 1, 2: 3, 3: 1, 6: 1}


def test_klein_lattice():
    _, lat = lat_of("elem:2,2")
    assert len(lat) == 5
    assert lat.census == {1: 1, 2: 3, 4: 1}


def test_cyclic_lattice_one_subgroup_per_divisor():
    for n in (1, 2, 12, 30, 60, 97):
        g = cyclic_group(n)
        lat = enumerate_subgroups(g)
        assert sorted(s.order for s in lat.subgroups) == divisors(n)


def test_lattice_matches_brute_force_small():
    for spec in ["cyclic:8", "cyclic:12", "elem:2,2", "elem:2,3", "dihedral:4", "pq:2,3", "dihedral:6", "sym:3"]:
        group, lat = lat_of(spec)
        assert {s.mask for s in lat.subgroups} == brute_force_subgroup_masks(group), spec


def test_d4_census_matches_oracle():
    group, lat = lat_of("dihedral:4")
    assert lat.census == naive_order_census(group) == {1: 1, 2: 5, 4: 3, 8: 1}


def test_fast_path_agrees_with_worklist():
    for p, k in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2)]:
        group = elementary_abelian_group(p, k)
        fast = enumerate_subgroups(group)
        slow = _enumerate_worklist(group, 1_000_000)
        assert sorted(s.mask for s in fast.subgroups) == sorted(s.mask for s in slow), (p, k)


def _unitriangular_order_27():
    # (a, b, c) with (a1,b1,c1)(a2,b2,c2) = (a1+a2, b1+b2, c1+c2+a1*b2) mod 3
    def idx(a, b, c):
        return a + 3 * b + 9 * c

    table = [[0] * 27 for _ in range(27)]
    for a1 in range(3):
        for b1 in range(3):
            for c1 in range(3):
                for a2 in range(3):
                    for b2 in range(3):
                        for c2 in range(3):
                            table[idx(a1, b1, c1)][idx(a2, b2, c2)] = idx(
                                (a1 + a2) % 3, (b1 + b2) % 3, (c1 + c2 + a1 * b2) % 3
                            )
    from latsum import Group

    return Group(table, "unitriangular-27")


def test_nonabelian_exponent_p_group_avoids_subspace_route():
    # exponent 3 but nonabelian: subgroups are NOT GF(3)-subspaces, so the
    # enumeration must take the general route and find 4 (not 13) subgroups
    # of order 9
    group = _unitriangular_order_27()
    group.validate()
    assert group.exponent() == 3 and not group.is_abelian
    from latsum.lattice import _elementary_abelian_rank

    assert _elementary_abelian_rank(group) is None
    lat = enumerate_subgroups(group)
    assert lat.census == {1: 1, 3: 13, 9: 4, 27: 1}
    assert gaussian_subgroup_count(3, 3, 2) == 13  # the rank-3 group differs here


def test_elementary_abelian_census_matches_gaussian():
    for p, k in [(2, 2), (2, 4), (2, 6), (3, 3), (5, 2)]:
        _, lat = lat_of(f"elem:{p},{k}")
        for i in range(k + 1):
            assert lat.census[p**i] == gaussian_subgroup_count(k, p, i), (p, k, i)


def test_lattice_sorted_canonically_and_deterministic():
    _, lat1 = lat_of("dihedral:6")
    _, lat2 = lat_of("dihedral:6")
    keys = [(s.order, s.mask) for s in lat1.subgroups]
    assert keys == sorted(keys)
    assert [s.mask for s in lat1.subgroups] == [s.mask for s in lat2.subgroups]


def test_lattice_too_large():
    group = elementary_abelian_group(2, 6)
    with pytest.raises(LatticeTooLarge):
        enumerate_subgroups(group, max_subgroups=100)
    with pytest.raises(LatticeTooLarge):
        # worklist route must also respect the cap
        _enumerate_worklist(symmetric_group(4), 10)


def test_normality():
    group, lat = lat_of("pq:2,3")
    order3 = lat.subgroups_of_order(3)[0]
    assert is_normal(group, order3)
    assert lat.full.order == 6 and is_normal(group, lat.full)
    for sub in lat.subgroups_of_order(2):
        assert not is_normal(group, sub)


def test_conjugates_and_normalizer_s3():
    group, lat = lat_of("pq:2,3")
    order2 = lat.subgroups_of_order(2)[0]
    conj = conjugates(group, order2)
    assert len(conj) == 3
    assert {c.mask for c in conj} == {s.mask for s in lat.subgroups_of_order(2)}
    nz = normalizer(group, order2)
    assert nz.mask == order2.mask  # self-normalizing maximal subgroup
    assert normalizer(group, lat.trivial).order == 6
    assert normalizer(group, lat.subgroups_of_order(3)[0]).order == 6


def test_conjugates_pq37():
    group, lat = lat_of("pq:3,7")
    order3 = lat.subgroups_of_order(3)
    assert len(order3) == 7
    assert len(conjugates(group, order3[0])) == 7


def test_conjugate_count_times_normalizer_is_order():
    for spec in ["pq:2,3", "dihedral:4", "sym:4", "pq:3,7", "cyclic:12", "elem:2,3"]:
        group, lat = lat_of(spec)
        for sub in lat.subgroups:
            assert len(conjugates(group, sub)) * normalizer(group, sub).order == group.order, spec


def test_maximal_subgroups():
    _, lat = lat_of("cyclic:12")
    assert sorted(m.order for m in maximal_subgroups(lat)) == [4, 6]
    _, lat = lat_of("pq:2,3")
    assert sorted(m.order for m in maximal_subgroups(lat)) == [2, 2, 2, 3]
    _, lat = lat_of("elem:3,2")
    assert sorted(m.order for m in maximal_subgroups(lat)) == [3, 3, 3, 3]


def test_maximal_subgroups_brute(seed=3):
    # maximality by direct containment scan over the whole lattice
    rng = random.Random(seed)
    for spec in ["dihedral:6", "sym:4", "cyclic:30", "pq:3,7"]:
        group, lat = lat_of(spec)
        want = []
        for sub in lat.subgroups:
            if sub.order == group.order:
                continue
            proper_over = [
                k for k in lat.subgroups
                if k.order != group.order and k.mask != sub.mask and k.contains_subgroup(sub)
            ]
            if not proper_over:
                want.append(sub.mask)
        assert sorted(want) == sorted(m.mask for m in maximal_subgroups(lat)), spec


def test_non_normal_maximals_self_normalize():
    for spec in ["pq:2,3", "sym:4", "dihedral:5", "pq:5,11"]:
        group, lat = lat_of(spec)
        for m in maximal_subgroups(lat):
            if not is_normal(group, m):
                assert normalizer(group, m).mask == m.mask, spec


def test_frattini():
    _, lat = lat_of("elem:2,3")
    assert frattini(lat).order == 1
    _, lat = lat_of("elem:5,2")
    assert frattini(lat).order == 1
    g, lat = lat_of("cyclic:4")
    assert frattini(lat).order == 2
    _, lat = lat_of("cyclic:12")
    assert frattini(lat).order == 2
    _, lat = lat_of("cyclic:1")
    assert frattini(lat).order == 1  # no maximal subgroups: the whole (trivial) group


def test_frattini_rank():
    g, lat = lat_of("cyclic:8")
    assert frattini_rank(g, lat) == 1
    g, lat = lat_of("elem:2,2")
    assert frattini_rank(g, lat) == 2
    g, lat = lat_of("dihedral:4")
    assert frattini_rank(g, lat) == 2
    g, lat = lat_of("elem:3,4")
    assert frattini_rank(g, lat) == 4
    g, lat = lat_of("cyclic:12")
    with pytest.raises(NotAPGroup):
        frattini_rank(g, lat)


def test_sylow_decomposition():
    g, lat = lat_of("cyclic:12")
    syl = sylow_decomposition(g, lat)
    assert [s.order for s in syl] == [4, 3]
    g, lat = lat_of("pq:2,3")
    assert sylow_decomposition(g, lat) is None
    g, lat = lat_of("product:elem:2,2+cyclic:9")
    syl = sylow_decomposition(g, lat)
    assert [s.order for s in syl] == [4, 9]


def test_nilpotency():
    for spec, want in [
        ("cyclic:12", True),
        ("elem:2,3", True),
        ("dihedral:4", True),  # a 2-group
        ("pq:2,3", False),
        ("pq:3,7", False),
        ("sym:4", False),
        ("dihedral:6", False),
        ("product:cyclic:4+cyclic:9", True),
    ]:
        g, lat = lat_of(spec)
        assert is_nilpotent(g, lat) is want, spec


def test_recognize():
    g, lat = lat_of("cyclic:6")
    prof = recognize(g, lat)
    assert prof.is_cyclic and prof.recognized_as == "CyclicN"
    g, lat = lat_of("pq:2,3")
    assert recognize(g, lat).recognized_as == "S3"
    g, lat = lat_of("elem:3,2")
    prof = recognize(g, lat)
    assert prof.recognized_as == "Z3xZ3" and prof.is_abelian and not prof.is_cyclic
    g, lat = lat_of("elem:2,2")
    assert recognize(g, lat).recognized_as == "Z2xZ2"
    g, lat = lat_of("dihedral:2")  # order-4 group with exponent 2
    assert recognize(g, lat).recognized_as == "Z2xZ2"
    g, lat = lat_of("dihedral:4")
    prof = recognize(g, lat)
    assert prof.recognized_as == "None" and prof.is_p_group and prof.frattini_rank == 2


def test_intersection_closure_sampled():
    rng = random.Random(11)
    for spec in ["sym:4", "dihedral:10", "pq:3,7", "elem:2,4"]:
        _, lat = lat_of(spec)
        subs = lat.subgroups
        for _ in range(100):
            a, b = rng.choice(subs), rng.choice(subs)
            assert lat.contains_mask(a.mask & b.mask), spec


def test_subgroup_generators_regenerate():
    from latsum.groups import generated_mask

    group, lat = lat_of("sym:4")
    for sub in lat.subgroups:
        gens = subgroup_generators(group, sub)
        assert generated_mask(group, gens) == sub.mask


# -- property-based checks over a zoo of small groups ------------------------

small_specs = st.one_of(
    st.integers(1, 24).map(GroupSpec.cyclic),
    st.sampled_from([(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]).map(
        lambda pk: GroupSpec.elementary_abelian(*pk)
    ),
    st.integers(1, 8).map(GroupSpec.dihedral),
    st.integers(2, 4).map(GroupSpec.symmetric),
    st.sampled_from([(2, 3), (2, 5), (2, 7), (3, 7), (2, 11), (5, 11), (3, 13)]).map(
        lambda pq: GroupSpec.semidirect_pq(*pq)
    ),
)


@settings(max_examples=40, deadline=None)
@given(small_specs)
def test_property_lattice_laws(spec):
    group = spec.build()
    group.validate()
    lat = enumerate_subgroups(group)
    assert lat.trivial.order == 1 and lat.full.order == group.order
    assert sum(lat.census.values()) == len(lat)
    orders = {s.order for s in lat.subgroups}
    assert all(group.order % o == 0 for o in orders)  # Lagrange
    masks = {s.mask for s in lat.subgroups}
    assert len(masks) == len(lat.subgroups)  # no duplicates


@settings(max_examples=25, deadline=None)
@given(small_specs)
def test_property_conjugacy_laws(spec):
    group = spec.build()
    lat = enumerate_subgroups(group)
    for sub in lat.subgroups:
        orbit = conjugates(group, sub)
        assert len(orbit) * normalizer(group, sub).order == group.order
        assert all(lat.contains_mask(c.mask) for c in orbit)
        assert (len(orbit) == 1) == is_normal(group, sub)
