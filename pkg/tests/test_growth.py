"""Object-level growths against their rules.

Heavier exhaustive certification lives in the acceptance module; here the
frozen small examples plus consistency and unique generation at n_max = 5-6.
"""
import pytest

from powcat.errors import MembershipError
from powcat.gentree import expand_label
from powcat.growth import (
    FAMILIES,
    P1234,
    active_positions_cat,
    bax_label,
    cat2_label,
    cat_insert,
    children_rightmost_entry,
    growth_consistency,
    pcat_children_invseq,
    pcat_parent_invseq,
    perm1234_children,
    steady_children,
    steady_label,
    tree_children,
    vmdyck_children,
)
from powcat.objects import (
    InversionSequence,
    OrderedTree,
    PathKind,
    Permutation,
    make_path,
    to_text,
)


# -- entry insertion ----------------------------------------------------------


def test_cat_insert_examples():
    e = InversionSequence((0, 0, 1, 3, 4, 5))
    assert cat_insert(e, 4).entries == (0, 0, 1, 3, 3, 4, 5)
    assert cat_insert(InversionSequence((0,)), 2).entries == (0, 1)
    assert cat_insert(InversionSequence((0,)), 1).entries == (0, 0)
    with pytest.raises(ValueError):
        cat_insert(e, 8)


def test_active_positions():
    assert active_positions_cat(InversionSequence((0,))) == [1, 2]
    assert active_positions_cat(InversionSequence((0, 1))) == [1, 2, 3]


def test_last_two_positions_always_active():
    for n in range(1, 7):
        for e in FAMILIES["cat"].enumerate(n):
            act = active_positions_cat(e)
            assert len(e) in act and len(e) + 1 in act


def test_cat_insert_membership_requires_family():
    with pytest.raises(MembershipError):
        active_positions_cat(InversionSequence((0, 0, 0)))


# -- rightmost-entry growths --------------------------------------------------------


def test_cat2_children_of_the_axiom():
    kids = children_rightmost_entry("cat2", InversionSequence((0,)))
    assert [(c.entries, lab) for c, lab in kids] == [((0, 0), (0, 2)), ((0, 1), (2, 1))]


def test_semi_children_of_the_axiom():
    kids = children_rightmost_entry("semi", InversionSequence((0,)))
    assert [(c.entries, lab) for c, lab in kids] == [((0, 0), (1, 2)), ((0, 1), (2, 1))]


def test_cat2_label_statistics():
    # h = max - mwd and k = n - max, with mwd = -1 when no weak descent
    assert cat2_label(InversionSequence((0,))) == (1, 1)
    # the equal pair 1,1 is a weak descent, so mwd = 1 and h = 0
    assert cat2_label(InversionSequence((0, 1, 1))) == (0, 2)
    assert cat2_label(InversionSequence((0, 1, 2))) == (3, 1)


def test_bax_case_split_labels():
    # all LTR maxima: case (a) with last = 0
    assert bax_label(InversionSequence((0, 1, 2))) == (3, 1)
    # (0,1,1): rightmost non-maximum 1 forms no inversion: still case (a)
    assert bax_label(InversionSequence((0, 1, 1))) == (1, 2)
    # (0,2,1): the 1 is dominated by the 2: case (b)
    assert bax_label(InversionSequence((0, 2, 1))) == (1, 1)


def test_cat2_label_definition_matches_independent_scan():
    for n in range(1, 8):
        for e in FAMILIES["cat"].enumerate(n):
            v = e.entries
            weak_descents = [v[i] for i in range(len(v) - 1) if v[i] >= v[i + 1]]
            mwd = max(weak_descents) if weak_descents else -1
            assert cat2_label(e) == (max(v) - mwd, len(v) - max(v))


def test_bax_children_label_multiset_matches_rule():
    for n in range(1, 8):
        for e in FAMILIES["bax"].enumerate(n):
            kids = children_rightmost_entry("bax", e)
            assert sorted(lab for _, lab in kids) == sorted(expand_label("bax", bax_label(e)))


# -- powered Catalan inversion sequences ----------------------------------------------


def test_pcat_children_examples():
    kids = pcat_children_invseq(InversionSequence((0,)))
    assert [(c.entries, lab) for c, lab in kids] == [((0, 1), (1,)), ((0, 0), (2,))]
    kids = pcat_children_invseq(InversionSequence((0, 0)))
    assert sorted(lab for _, lab in kids) == [(1,), (2,), (2,), (3,)]


def test_pcat_parent_examples():
    assert pcat_parent_invseq(InversionSequence((0, 1))).entries == (0,)
    assert pcat_parent_invseq(InversionSequence((0, 0))).entries == (0,)
    with pytest.raises(ValueError):
        pcat_parent_invseq(InversionSequence((0,)))


def test_pcat_parent_inverts_children_everywhere():
    for n in range(1, 8):
        for e in FAMILIES["pcat:invseq"].enumerate(n):
            for child, _ in pcat_children_invseq(e):
                assert pcat_parent_invseq(child).entries == e.entries


# -- steady paths -----------------------------------------------------------------------


def test_steady_children_of_the_axiom():
    kids = steady_children(make_path("UD", kind=PathKind.STEADY))
    assert [(c.steps, lab) for c, lab in kids] == [("UDUD", (1, 2)), ("UUDD", (0, 3))]


def test_steady_child_count_is_the_label_sum():
    for n in range(1, 7):
        for p in FAMILIES["steady"].enumerate(n):
            h, k = steady_label(p)
            assert len(steady_children(p)) == h + k


def test_steady_rejects_non_members():
    with pytest.raises(MembershipError):
        steady_children(make_path("UUDDUUUWUDDDDD", kind=PathKind.STEADY))


def test_growers_reject_non_members():
    with pytest.raises(MembershipError):
        pcat_children_invseq(InversionSequence((0, 1, 1, 0)))  # contains 110
    with pytest.raises(MembershipError):
        perm1234_children(Permutation((1, 2, 3, 4)))
    with pytest.raises(MembershipError):
        vmdyck_children(make_path("UDU", kind=PathKind.VMDYCK))
    with pytest.raises(MembershipError):
        tree_children(OrderedTree(0, (OrderedTree(2, (OrderedTree(1),)),)))


# -- permutations avoiding 1-23-4 ------------------------------------------------------------


def test_perm1234_children_of_the_axiom():
    kids = perm1234_children(Permutation((1,)))
    assert [(c.values, lab) for c, lab in kids] == [((2, 1), (1, 2)), ((1, 2), (2, 1))]


def test_p1234_label_first_component_is_the_last_value():
    from powcat.growth import p1234_label

    for n in range(1, 7):
        for p in FAMILIES["p1234"].enumerate(n):
            h, _ = p1234_label(p)
            assert h == p.values[-1]


def test_active_sites_match_brute_force():
    from powcat.growth import _p1234_site_bound
    from powcat.patterns import avoids_vincular
    from powcat.growth import perm_append

    for n in range(1, 7):
        for p in FAMILIES["p1234"].enumerate(n):
            brute = [a for a in range(1, n + 2) if avoids_vincular(perm_append(p, a), P1234)]
            assert brute == list(range(1, _p1234_site_bound(p.values) + 1))


# -- marked Dyck paths and trees ----------------------------------------------------------------


def test_vmdyck_children_examples():
    kids = vmdyck_children(make_path("UD", kind=PathKind.VMDYCK))
    assert [(to_text(c), lab) for c, lab in kids] == [("UUDD", (2,)), ("UDUD;marks=0", (1,))]
    kids = vmdyck_children(make_path("UUDD", kind=PathKind.VMDYCK))
    assert sorted(lab for _, lab in kids) == [(1,), (2,), (2,), (3,)]


def test_tree_children_of_a_single_edge():
    kids = tree_children(OrderedTree(0, (OrderedTree(1),)))
    assert sorted(lab for _, lab in kids) == [(1,), (2,)]
    texts = sorted(to_text(c) for c, _ in kids)
    assert texts == ["0(1(2))", "0(12)"]


def test_tree_growth_level_counts():
    sizes = [len(FAMILIES["pcat:tree"].enumerate(n)) for n in range(1, 7)]
    assert sizes == [1, 2, 6, 23, 105, 549]


# -- consistency reports ---------------------------------------------------------------------------


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_growth_consistency_small(family):
    report = growth_consistency(family, 5)
    assert report.ok, report.violations[:3]


def test_growth_consistency_catches_breakage():
    # a deliberately wrong rule name must fail the label-multiset check
    import dataclasses

    broken = dataclasses.replace(FAMILIES["cat"], rule="pcat")
    from powcat import growth as growth_mod

    original = growth_mod.FAMILIES
    growth_mod.FAMILIES = {**original, "broken": broken}
    try:
        report = growth_consistency("broken", 3)
        assert not report.ok
    finally:
        growth_mod.FAMILIES = original


def test_label_agreement_between_parent_and_child():
    for family in ("cat2", "semi", "steady", "p1234"):
        fam = FAMILIES[family]
        for n in range(1, 6):
            for obj in fam.enumerate(n):
                for child, lab in fam.children(obj):
                    assert fam.label(child) == lab
