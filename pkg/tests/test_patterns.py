"""Avoidance oracles, enumerators, and the structural characterizations."""
from itertools import permutations as iperm
from itertools import product

import pytest

from powcat.errors import LimitError
from powcat.objects import InversionSequence, Permutation, to_text
from powcat.patterns import (
    EXHAUSTIVE_LIMITS,
    RelationTriple,
    VincularPattern,
    WordPattern,
    ascent_min_max_criterion,
    avoids_triple,
    avoids_vincular,
    avoids_word,
    baxter_inversion_criterion,
    count_class,
    enumerate_class,
    equinumerosity_check,
    invseq_class_raw,
    invseq_members,
    perm_class_raw,
    perm_statistics,
    semibaxter_inversion_criterion,
    two_chain_criterion,
    weak_descent_criterion,
    WORD_CHARACTERIZATIONS,
)

GEQ_DASH_GEQ = RelationTriple("geq", "dash", "geq")


def all_invseqs(n):
    return product(*(range(i) for i in range(1, n + 1)))


# -- triple oracle ------------------------------------------------------------


def test_triple_examples_from_the_catalan_chain():
    assert avoids_triple(InversionSequence((0, 0, 1, 1, 4, 2, 6, 5)), GEQ_DASH_GEQ)
    e = InversionSequence((0, 1, 0, 1, 4, 2, 3, 5))
    assert not avoids_triple(e, GEQ_DASH_GEQ)
    assert avoids_triple(e, RelationTriple("geq", "geq", "geq"))


def test_singleton_avoids_everything():
    for rels in product(("lt", "gt", "leq", "geq", "eq", "neq", "dash"), repeat=3):
        assert avoids_triple(InversionSequence((0,)), RelationTriple(*rels))


def test_triple_oracle_agrees_with_naive_scan():
    r = RelationTriple("geq", "geq", "gt")
    for n in range(1, 7):
        for e in all_invseqs(n):
            naive = not any(
                e[i] >= e[j] and e[j] >= e[k] and e[i] > e[k]
                for i in range(n)
                for j in range(i + 1, n)
                for k in range(j + 1, n)
            )
            assert avoids_triple(InversionSequence(e), r) == naive, e


# -- word oracle ----------------------------------------------------------------


def test_word_examples():
    assert not avoids_word(InversionSequence((0, 1, 1, 0)), WordPattern.parse("110"))
    assert avoids_word(InversionSequence((0, 0, 1)), WordPattern.parse("000"))
    assert avoids_word(InversionSequence((0, 0, 1, 3, 3, 4, 5)), WordPattern.parse("100"))


def test_word_occurrences_need_exact_equalities():
    # 021 asks for a strict rise then a strict middle drop with ends ordered
    assert not avoids_word(InversionSequence((0, 2, 1)), WordPattern.parse("021"))
    assert avoids_word(InversionSequence((0, 2, 2)), WordPattern.parse("021"))
    assert avoids_word(InversionSequence((0, 1, 1)), WordPattern.parse("021"))


def test_long_word_patterns_are_supported():
    assert not avoids_word(InversionSequence((0, 0, 1, 1)), WordPattern.parse("0011"))
    assert avoids_word(InversionSequence((0, 1, 0, 1)), WordPattern.parse("0011"))


# -- vincular oracle ---------------------------------------------------------------


def test_vincular_examples():
    p1234 = VincularPattern.parse("1-23-4")
    assert not avoids_vincular(Permutation((1, 2, 3, 4)), p1234)
    assert avoids_vincular(Permutation((2, 4, 1, 3)), p1234)
    assert not avoids_vincular(Permutation((1, 3, 2, 4)), VincularPattern.parse("1-23"))


def test_vincular_parse_round_trip():
    for text in ("1-23-4", "23-1-4", "1-34-2", "2-14-3", "123", "1-2-3"):
        assert str(VincularPattern.parse(text)) == text


def test_adjacency_matters():
    # 2413 contains classical 1-2-3? longest increasing run is 2, so no;
    # 3142 contains 1-2 everywhere but 12 only at no adjacent pair
    assert avoids_vincular(Permutation((3, 1, 4, 2)), VincularPattern.parse("12"))is False
    assert avoids_vincular(Permutation((3, 2, 4, 1)), VincularPattern.parse("12")) is False
    assert avoids_vincular(Permutation((4, 3, 2, 1)), VincularPattern.parse("12"))


def test_vincular_agrees_with_naive_matcher():
    pat = VincularPattern.parse("23-1-4")

    def naive(v):
        n = len(v)
        for q1 in range(n - 3):
            q2 = q1 + 1
            for q3 in range(q2 + 1, n - 1):
                for q4 in range(q3 + 1, n):
                    if v[q3] < v[q1] < v[q2] < v[q4]:
                        return False
        return True

    for n in range(1, 7):
        for v in iperm(range(1, n + 1)):
            assert avoids_vincular(Permutation(v), pat) == naive(v), v


def test_bijection_codomain_patterns_agree_with_naive_matchers():
    pat_1342 = VincularPattern.parse("1-34-2")
    pat_2143 = VincularPattern.parse("2-14-3")

    def naive_1342(v):
        n = len(v)
        for q2 in range(1, n - 2):
            if v[q2] >= v[q2 + 1]:
                continue
            for q1 in range(q2):
                for q4 in range(q2 + 2, n):
                    if v[q1] < v[q4] < v[q2]:
                        return False
        return True

    def naive_2143(v):
        n = len(v)
        for q2 in range(1, n - 2):
            if v[q2] >= v[q2 + 1]:
                continue
            for q1 in range(q2):
                for q4 in range(q2 + 2, n):
                    if v[q2] < v[q1] < v[q4] < v[q2 + 1]:
                        return False
        return True

    for n in range(1, 7):
        for v in iperm(range(1, n + 1)):
            p = Permutation(v)
            assert avoids_vincular(p, pat_1342) == naive_1342(v), v
            assert avoids_vincular(p, pat_2143) == naive_2143(v), v


# -- enumerate_class ------------------------------------------------------------------


def test_enumerate_triple_class_size_3():
    objs = enumerate_class("invseq-triple", GEQ_DASH_GEQ, 3)
    assert [o.entries for o in objs] == [(0, 0, 1), (0, 0, 2), (0, 1, 0), (0, 1, 1), (0, 1, 2)]


def test_enumerate_perm_vincular_count():
    assert count_class("perm-vincular", VincularPattern.parse("1-23-4"), 4) == 23


def test_enumerate_paths():
    steady1 = enumerate_class("path-kind", "steady", 1)
    assert [p.steps for p in steady1] == ["UD"]
    assert count_class("path-kind", "dyck", 4) == 14
    assert count_class("path-kind", "vmdyck", 4) == 23
    assert count_class("tree", None, 4) == 23


def test_enumeration_is_sorted_by_text():
    objs = enumerate_class("path-kind", "steady", 4)
    texts = [to_text(o) for o in objs]
    assert texts == sorted(texts)
    assert len(texts) == len(set(texts)) == 23


def test_pattern_parse_errors():
    from powcat.errors import ParseError

    with pytest.raises(ParseError):
        WordPattern.parse("")
    with pytest.raises(ParseError):
        VincularPattern.parse("1--2")
    with pytest.raises(ParseError):
        VincularPattern.parse("1-0")
    with pytest.raises(ParseError):
        RelationTriple.parse("geq,geq")
    with pytest.raises(ParseError):
        enumerate_class("nonsense", None, 3)


def test_limit_errors():
    with pytest.raises(LimitError):
        enumerate_class("perm-classical", VincularPattern.parse("12"), EXHAUSTIVE_LIMITS["perm"] + 1)
    with pytest.raises(LimitError):
        enumerate_class("path-kind", "steady", 9)
    assert count_class("path-kind", "dyck", 9, limit=9) == 4862


# -- permutation statistics --------------------------------------------------------------


def test_perm_statistics_examples():
    assert perm_statistics(Permutation((3, 2, 1)))["rtl_minima"] == 1
    assert perm_statistics(Permutation((2, 4, 1, 3)))["rtl_minima"] == 2
    for n in (1, 4, 6):
        ident = Permutation(tuple(range(1, n + 1)))
        assert perm_statistics(ident)["rtl_minima"] == n
        assert perm_statistics(ident)["ltr_maxima"] == n


# -- characterization equivalences ----------------------------------------------------------
# triple class == word class is checked for every family and all n <= 9 in
# the verify suite; here the same equivalences at n <= 6, plus the criteria.


@pytest.mark.parametrize("family", sorted(WORD_CHARACTERIZATIONS))
def test_word_characterization_small(family):
    from powcat.patterns import INVSEQ_FAMILIES

    words = tuple(WordPattern.parse(w) for w in WORD_CHARACTERIZATIONS[family])
    for n in range(1, 7):
        by_triple = set(invseq_class_raw((INVSEQ_FAMILIES[family],), (), n))
        by_words = set(invseq_class_raw((), words, n))
        assert by_triple == by_words


@pytest.mark.parametrize(
    "family,criterion",
    [
        ("cat", weak_descent_criterion),
        ("i-geq3", two_chain_criterion),
        ("bax", baxter_inversion_criterion),
        ("semi", semibaxter_inversion_criterion),
    ],
)
def test_structural_criteria_small(family, criterion):
    for n in range(1, 8):
        members = set(invseq_members(family, n))
        assert members == {e for e in all_invseqs(n) if criterion(e)}


def test_ascent_criterion_matches_1_23_4():
    pat = VincularPattern.parse("1-23-4")
    for n in range(1, 8):
        members = set(perm_class_raw((pat,), n))
        assert members == {p for p in iperm(range(1, n + 1)) if ascent_min_max_criterion(p)}


# -- equinumerosity -----------------------------------------------------------------------------


def test_equinumerosity_examples():
    rows = equinumerosity_check(
        ("invseq-triple", RelationTriple("eq", "dash", "dash")),
        ("perm-classical", tuple(VincularPattern.parse(p) for p in ("1-2-3", "1-3-2", "2-3-1"))),
        7,
    )
    assert all(equal for _, _, _, equal in rows)

    rows = equinumerosity_check(
        ("invseq-triple", RelationTriple("lt", "neq", "dash")),
        ("perm-classical", tuple(VincularPattern.parse(p) for p in ("2-1-3", "3-2-1"))),
        7,
    )
    assert all(equal for _, _, _, equal in rows)

    rows = equinumerosity_check(
        ("invseq-triple", RelationTriple("eq", "gt", "gt")),
        ("perm-vincular", VincularPattern.parse("1-23-4")),
        8,
    )
    assert all(equal for _, _, _, equal in rows)
    assert [ca for _, ca, _, _ in rows] == [1, 2, 6, 23, 105, 549, 3207, 20577]
