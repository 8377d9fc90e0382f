import pytest
from conftest import corpus, group, perm, table

from ctlab.errors import InputError
from ctlab.exactnum import is_p_power
from ctlab.permgroup import derived_subgroup
from ctlab.structure import (
    class_indices,
    has_normal_p_complement,
    normal_subgroups,
    normal_subgroups_bruteforce,
    theorem_A_hypothesis,
)


def orders(lattice):
    return [N.order for N in lattice]


def test_cyclic_prime_lattice():
    assert orders(normal_subgroups(table("C7"))) == [1, 7]


def test_s4_lattice():
    L = normal_subgroups(table("S4"))
    assert orders(L) == [1, 4, 12, 24]
    assert L.members[1] == derived_subgroup(L.members[2])
    assert L.members[2] == derived_subgroup(group("S4"))


def test_a5_lattice():
    assert orders(normal_subgroups(table("A5"))) == [1, 60]


def test_lattice_invariants_on_corpus():
    for name, G in corpus():
        L = normal_subgroups(table(name))
        assert L.members[0].order == 1 and L.members[-1].order == G.order
        members = set(L.members)
        for a in L:
            assert a.is_normalized_by(G.generator_indices())
            assert set(class_indices(a)) and all(a.mask[G.classes.members[c]].all() for c in class_indices(a))
            for b in L:
                assert (a & b) in members
        for i, a in enumerate(L):
            for j, b in enumerate(L):
                assert L.containment[i, j] == (a <= b)


def test_kernel_closure_matches_bruteforce_up_to_48():
    for name, G in corpus():
        if G.order > 48:
            continue
        fast = normal_subgroups(table(name))
        slow = normal_subgroups_bruteforce(G)
        assert fast.members == slow.members, name


def test_selector_lookup():
    L = normal_subgroups(table("D8"))
    assert [L.index_of(N) for N in L] == [(1, 0), (2, 0), (4, 0), (4, 1), (4, 2), (8, 0)]
    assert L.select(4, 2) == L.members[4]
    with pytest.raises(InputError):
        L.select(3)


# -- normal p-complements ---------------------------------------------------------


def test_p_group_has_trivial_complement():
    ok, K = has_normal_p_complement(group("Q16"), 2)
    assert ok and K.order == 1


def test_s3_complements():
    ok, K = has_normal_p_complement(group("S3"), 2)
    assert ok and K.order == 3
    assert has_normal_p_complement(group("S3"), 3) == (False, None)


def test_complement_rejects_composite():
    with pytest.raises(InputError):
        has_normal_p_complement(group("S3"), 6)


def test_complement_witness_and_abelian_case_on_corpus():
    for name, G in corpus():
        for N in normal_subgroups(table(name)):
            for p in G.primes:
                ok, K = has_normal_p_complement(N, p)
                if ok:
                    assert K.is_normal_in_parent and K.order % p and is_p_power(N.order // K.order, p)
                if N.is_abelian():
                    assert ok


def test_a5_has_no_complement():
    assert not any(has_normal_p_complement(group("A5"), p)[0] for p in (2, 3, 5))


# -- hypothesis predicate ------------------------------------------------------------


def test_hypothesis_abelian_n_is_vacuous_true():
    tab = table("S4")
    V4 = normal_subgroups(tab).select(4)
    assert theorem_A_hypothesis(tab, V4, 2) and theorem_A_hypothesis(tab, V4, 3)


def test_hypothesis_s3():
    tab = table("S3")
    G = tab.group.whole()
    # cod(S3|A3) = {3}
    assert theorem_A_hypothesis(tab, G, 2)
    assert not theorem_A_hypothesis(tab, G, 3)


def test_hypothesis_a4_three():
    tab = table("A4")
    assert theorem_A_hypothesis(tab, tab.group.whole(), 3)
    assert not theorem_A_hypothesis(tab, tab.group.whole(), 2)


def test_hypothesis_errors():
    tab = table("S3")
    with pytest.raises(InputError):
        theorem_A_hypothesis(tab, tab.group.whole(), 5)
    with pytest.raises(InputError):
        theorem_A_hypothesis(tab, tab.group.subgroup([perm(tab.group, (1, 2))]), 2)
