"""The rule catalog: productions, level counts, distributions, isomorphism."""
import pytest

from powcat.gentree import (
    RULES,
    expand_label,
    label_distribution,
    level_counts,
    p1234_to_steady_relabel,
    rules_isomorphic_check,
)
from powcat.series import callan_triangle

LEVEL_PREFIXES = {
    "cat": [1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796],
    "cat2": [1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796],
    "i-geq3": [1, 2, 5, 15, 51, 191, 772, 3320, 15032, 71084],
    "bax": [1, 2, 6, 22, 92, 422, 2074, 10754, 58202, 326240],
    "semi": [1, 2, 6, 23, 104, 530, 2958, 17734, 112657, 750726],
    "pcat": [1, 2, 6, 23, 105, 549, 3207, 20577, 143239, 1071704],
    "p1234": [1, 2, 6, 23, 105, 549, 3207, 20577, 143239, 1071704],
    "steady": [1, 2, 6, 23, 105, 549, 3207, 20577, 143239, 1071704],
}


def test_expand_label_examples():
    assert expand_label("cat", (3,)) == ((1,), (2,), (3,), (4,))
    assert sorted(expand_label("pcat", (2,))) == [(1,), (2,), (2,), (3,)]
    assert sorted(expand_label("steady", (0, 2))) == [(0, 3), (1, 2)]
    assert sorted(expand_label("p1234", (2, 1))) == [(1, 3), (2, 2), (3, 0)]


def test_expand_label_empty_ranges():
    # h = 0 labels produce no first-line children in the i-geq3 rule
    assert expand_label("i-geq3", (0, 2)) == ((1, 2), (2, 1))
    # k = 0 labels produce only the first line in the 1-23-4 rule
    assert expand_label("p1234", (3, 0)) == ((1, 3), (2, 2), (3, 1))


def test_malformed_labels_are_rejected():
    with pytest.raises(ValueError):
        expand_label("cat", (1, 2))
    with pytest.raises(ValueError):
        expand_label("steady", (1,))
    with pytest.raises(ValueError):
        expand_label("semi", (-1, 2))
    with pytest.raises(KeyError):
        expand_label("nosuchrule", (1,))


def test_axioms():
    assert RULES["cat"].axiom == (1,)
    assert RULES["pcat"].axiom == (1,)
    assert RULES["steady"].axiom == (0, 2)
    assert label_distribution("i-geq3", 1)[0] == {(1, 1): 1}


@pytest.mark.parametrize("rule", sorted(LEVEL_PREFIXES))
def test_level_counts(rule):
    assert level_counts(rule, 10) == LEVEL_PREFIXES[rule]


def test_label_distribution_examples():
    dist = label_distribution("pcat", 3)
    assert dist[1] == {(1,): 1, (2,): 1}
    assert dist[2] == {(1,): 2, (2,): 3, (3,): 1}


def test_distribution_sums_match_level_counts():
    for rule in RULES:
        dist = label_distribution(rule, 10)
        counts = level_counts(rule, 10)
        for i, lvl in enumerate(dist):
            assert sum(lvl.values()) == counts[i]


def test_pcat_distribution_is_the_triangle():
    tri = callan_triangle(12)
    dist = label_distribution("pcat", 12)
    for n in range(1, 13):
        got = {k: dist[n - 1].get((k,), 0) for k in range(1, n + 1)}
        assert got == {k: tri.value(n, k) for k in range(1, n + 1)}


def test_rule_isomorphism_p1234_steady():
    ok, divergence = rules_isomorphic_check("p1234", "steady", p1234_to_steady_relabel, 10)
    assert ok and divergence is None


def test_relabel_map_values():
    assert p1234_to_steady_relabel((1, 1)) == (0, 2)
    assert p1234_to_steady_relabel((1, 5)) == (0, 6)
    assert p1234_to_steady_relabel((3, 2)) == (2, 3)


def test_isomorphism_failure_reports_divergence():
    ok, divergence = rules_isomorphic_check("cat", "pcat", lambda l: l, 4)
    assert not ok
    level, label, ca, cb = divergence
    assert level == 3 and label == (2,) and (ca, cb) == (2, 3)
    assert rules_isomorphic_check("cat", "cat", lambda l: l, 12) == (True, None)


def test_igeq3_levels_solve_the_recurrence():
    from powcat.series import e3_sequence

    assert level_counts("i-geq3", 10) == e3_sequence(10)[1:]


def test_counts_are_exact_big_integers():
    deep = level_counts("pcat", 20)[-1]
    assert deep == sum(callan_triangle(20).row(20))
    assert deep > 10**12
