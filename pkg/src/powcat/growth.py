"""Object-level growths realizing the succession rules.

Each family here grows by one canonical atom (an inserted entry, a new
rightmost entry, a peak, an up step, a point, a vertex) and every child is
emitted together with the label its rule's bookkeeping assigns to it.
growth_consistency() is the executable form of the "grows according to"
claims: membership of every child, child-label multisets against the rule
productions, and unique generation of the next size.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable

from .errors import MembershipError
from .gentree import Label, expand_label
from .objects import (
    InversionSequence,
    LatticePath,
    OrderedTree,
    PathKind,
    Permutation,
    edge_line_offset,
    last_descent_length,
    make_path,
    path_from_up_points,
    to_text,
    up_step_points,
    validate,
)
from .patterns import (
    VincularPattern,
    avoids_vincular,
    enumerate_class,
    in_invseq_family,
    INVSEQ_FAMILIES,
)

P1234 = VincularPattern.parse("1-23-4")


# -- Catalan inversion sequences, entry insertion --------------------------------


def cat_insert(e: InversionSequence, i: int) -> InversionSequence:
    """Insert the maximal admissible entry i-1 at position i (1-based)."""
    n = len(e)
    if not 1 <= i <= n + 1:
        raise ValueError(f"position {i} outside 1..{n + 1}")
    v = e.entries
    return InversionSequence(v[: i - 1] + (i - 1,) + v[i - 1 :])


def active_positions_cat(e: InversionSequence) -> list[int]:
    """Positions i where cat_insert keeps membership in the geq,dash,geq family."""
    if not in_invseq_family("cat", e.entries):
        raise MembershipError(f"{to_text(e)} is not a Catalan inversion sequence")
    return [
        i
        for i in range(1, len(e) + 2)
        if in_invseq_family("cat", cat_insert(e, i).entries)
    ]


def cat_label(e: InversionSequence) -> Label:
    return (len(active_positions_cat(e)) - 1,)


def cat_children(e: InversionSequence) -> list[tuple[InversionSequence, Label]]:
    return [(cat_insert(e, i), (j,)) for j, i in enumerate(active_positions_cat(e), start=1)]


# -- rightmost-entry growths: cat2, i-geq3, bax, semi ------------------------------


def _max(values) -> int:
    return max(values)


def _mwd(values) -> int:
    """Largest weak-descent entry, -1 when there is no weak descent."""
    best = -1
    for i in range(len(values) - 1):
        if values[i] >= values[i + 1]:
            best = max(best, values[i])
    return best


def _ltr_flags(values):
    flags = []
    hi = None
    for x in values:
        flags.append(hi is None or x > hi)
        if hi is None or x > hi:
            hi = x
    return flags


def _last_non_ltr(values, sentinel: int) -> int:
    """Value of the rightmost entry that is not a LTR maximum."""
    flags = _ltr_flags(values)
    for i in range(len(values) - 1, -1, -1):
        if not flags[i]:
            return values[i]
    return sentinel


def _bax_case_a(values) -> bool:
    """True when every entry is a LTR maximum or the rightmost non-maximum
    forms no inversion (nothing larger sits to its left)."""
    flags = _ltr_flags(values)
    for i in range(len(values) - 1, -1, -1):
        if not flags[i]:
            return not any(values[j] > values[i] for j in range(i))
    return True


def cat2_label(e: InversionSequence) -> Label:
    v = e.entries
    return (_max(v) - _mwd(v), len(v) - _max(v))


def igeq3_label(e: InversionSequence) -> Label:
    v = e.entries
    return (_max(v) - _last_non_ltr(v, -1), len(v) - _max(v))


def bax_label(e: InversionSequence) -> Label:
    v = e.entries
    h = _max(v) - _last_non_ltr(v, 0)
    return (h + 1 if _bax_case_a(v) else h, len(v) - _max(v))


def semi_label(e: InversionSequence) -> Label:
    v = e.entries
    return (_max(v) - _last_non_ltr(v, 0) + 1, len(v) - _max(v))


def _rightmost_entry_children(family: str, e: InversionSequence):
    """Admissible rightmost entries and bookkeeping labels for one of the four
    rightmost-entry families."""
    v = e.entries
    n = len(v)
    mx = _max(v)
    k = n - mx
    out = []
    if family == "cat2":
        h = mx - _mwd(v)
        lo = _mwd(v) + 1
        for p in range(lo, mx + 1):
            out.append((p, (0, k + 1)))
    elif family == "i-geq3":
        last = _last_non_ltr(v, -1)
        h = mx - last
        for p in range(last + 1, mx + 1):
            out.append((p, (mx - p, k + 1)))
    elif family == "bax":
        last = _last_non_ltr(v, 0)
        case_a = _bax_case_a(v)
        h = mx - last + 1 if case_a else mx - last
        lo = last if case_a else last + 1
        for p in range(lo, mx):
            out.append((p, (mx - p, k + 1)))
        out.append((mx, (1, k + 1)))
    elif family == "semi":
        last = _last_non_ltr(v, 0)
        h = mx - last + 1
        for p in range(last, mx + 1):
            out.append((p, (mx - p + 1, k + 1)))
    else:
        raise KeyError(f"unknown rightmost-entry family {family!r}")
    for d in range(1, k + 1):
        out.append((mx + d, (h + d, k - d + 1)))
    return out


def children_rightmost_entry(family: str, e: InversionSequence):
    """Children of e by adding a new rightmost entry, with their labels."""
    membership = "cat" if family == "cat2" else family
    if not in_invseq_family(membership, e.entries):
        raise MembershipError(f"{to_text(e)} is not in family {membership}")
    return [
        (InversionSequence(e.entries + (p,)), lab)
        for p, lab in _rightmost_entry_children(family, e)
    ]


# -- powered Catalan inversion sequences -------------------------------------------


def pcat_label_invseq(e: InversionSequence) -> Label:
    return (e.entries.count(0),)


def pcat_children_invseq(e: InversionSequence):
    """Children by the zero/one rewriting construction.

    The positive entries are shifted up and a leftmost 0 is prepended; the
    children then differ in which of the old zero positions keep their 0,
    the rest becoming the (unique possible) 1s.
    """
    v = e.entries
    if not in_invseq_family("pcat", v):
        raise MembershipError(f"{to_text(e)} does not avoid 110")
    zero_pos = [i for i, x in enumerate(v) if x == 0]
    k = len(zero_pos)
    shifted = tuple(x + 1 if x > 0 else 0 for x in v)
    base = (0,) + shifted  # all old zeros kept, label k+1

    def child_with_ones(one_positions):
        vals = list(base)
        for zp in one_positions:
            vals[zp + 1] = 1
        return InversionSequence(tuple(vals))

    out = [(child_with_ones(zero_pos), (1,))]
    for j in range(2, k + 1):
        tail = zero_pos[j:]
        for m in range(j):
            out.append((child_with_ones([zero_pos[m]] + tail), (j,)))
    out.append((InversionSequence(base), (k + 1,)))
    return out


def pcat_parent_invseq(f: InversionSequence) -> InversionSequence:
    """Inverse of the construction: 1s back to 0s, drop the leftmost 0,
    shift positives down."""
    v = f.entries
    if len(v) < 2:
        raise ValueError("size-1 sequence has no parent")
    if not in_invseq_family("pcat", v):
        raise MembershipError(f"{to_text(f)} does not avoid 110")
    undone = tuple(0 if x == 1 else x for x in v)
    cut = undone.index(0)
    rest = undone[:cut] + undone[cut + 1 :]
    return InversionSequence(tuple(x - 1 if x > 0 else 0 for x in rest))


# -- steady paths --------------------------------------------------------------------


def steady_label(path: LatticePath) -> Label:
    n = path.size
    t_half = edge_line_offset(path.steps) // 2
    r = last_descent_length(path.steps)
    return (n - t_half - r, r + 1)


def steady_children(path: LatticePath):
    """Children by a new rightmost up step at each admissible height."""
    report = validate(make_path(path.steps, kind=PathKind.STEADY))
    if not report.ok:
        raise MembershipError(f"{path.steps} is not a steady path: {report.violations[0].detail}")
    n = path.size
    pts = up_step_points(path.steps)
    t_half = edge_line_offset(path.steps) // 2
    r = last_descent_length(path.steps)
    h, k = n - t_half - r, r + 1
    out = []
    for i in range(n - t_half + 1):
        child = path_from_up_points(pts + [(2 * n - i, i)])
        label = (h + k - 1 - i, i + 2) if i <= r - 1 else (0, i + 2)
        out.append((make_path(child, kind=PathKind.STEADY), label))
    return out


# -- permutations avoiding 1-23-4 -----------------------------------------------------


def _p1234_site_bound(values) -> int:
    """Top active site: the minimal ascent top pi_t completing a 1-23
    occurrence bounds the sites at pi_t; n+1 when no occurrence exists."""
    n = len(values)
    best = None
    for t in range(1, n):
        if values[t - 1] < values[t] and any(values[s] < values[t - 1] for s in range(t - 1)):
            if best is None or values[t] < best:
                best = values[t]
    return n + 1 if best is None else best


def p1234_label(p: Permutation) -> Label:
    v = p.values
    bound = _p1234_site_bound(v)
    h = sum(1 for a in range(1, bound + 1) if a <= v[-1])
    return (h, bound - h)


def perm_append(p: Permutation, a: int) -> Permutation:
    return Permutation(tuple(v if v < a else v + 1 for v in p.values) + (a,))


def perm1234_children(p: Permutation):
    """Children by right expansion at each active site, with their labels."""
    v = p.values
    if not avoids_vincular(p, P1234):
        raise MembershipError(f"{to_text(p)} contains 1-23-4")
    bound = _p1234_site_bound(v)
    h, k = p1234_label(p)
    out = []
    for a in range(1, bound + 1):
        if v[-1] == 1:
            label = (a, k + 2 - a)
        elif a <= v[-1]:
            label = (a, h + k + 1 - a)
        else:
            label = (a, 0)
        out.append((perm_append(p, a), label))
    return out


# -- valley-marked Dyck paths ----------------------------------------------------------


def vmdyck_label(path: LatticePath) -> Label:
    return (last_descent_length(path.steps),)


def vmdyck_children(path: LatticePath):
    """Children by a new rightmost peak in the last descent; a freshly made
    valley takes every admissible mark."""
    report = validate(path if path.kind is PathKind.VMDYCK else make_path(path.steps, path.marks, PathKind.VMDYCK))
    if not report.ok:
        raise MembershipError(f"{to_text(path)} is not a valley-marked Dyck path")
    steps, marks = path.steps, path.marks
    r = last_descent_length(steps)
    head = steps[: len(steps) - r]
    out = []
    for j in range(r + 1):
        child_steps = head + "D" * j + "UD" + "D" * (r - j)
        label = (r + 1,) if j == 0 else (r - j + 1,)
        if j == 0:
            out.append((LatticePath(child_steps, marks, PathKind.VMDYCK), label))
        else:
            for m in range(r - j + 1):
                out.append((LatticePath(child_steps, marks + (m,), PathKind.VMDYCK), label))
    return out


# -- increasing ordered trees with increasing leaves -------------------------------------


def tree_label(t: OrderedTree) -> Label:
    return (len(t.children),)


def tree_children(t: OrderedTree):
    """Children by relabel-and-insert: bump every positive label, then hang a
    new vertex 1 under the root over a contiguous bunch of root edges; the
    empty bunch goes in the leftmost gap so leaf 1 stays first in pre-order."""
    report = validate(t)
    if not report.ok:
        raise MembershipError(f"{to_text(t)} is not an increasing-leaves tree")

    def bump(node):
        return OrderedTree(node.label + 1 if node.label > 0 else 0, tuple(bump(c) for c in node.children))

    base = bump(t)
    k = len(base.children)
    out = [(OrderedTree(0, (OrderedTree(1),) + base.children), (k + 1,))]
    for b in range(1, k + 1):
        for start in range(k - b + 1):
            bunch = base.children[start : start + b]
            new_child = OrderedTree(1, bunch)
            kids = base.children[:start] + (new_child,) + base.children[start + b :]
            out.append((OrderedTree(0, kids), (k - b + 1,)))
    return out


# -- family registry and the consistency report ---------------------------------------------


@dataclass(frozen=True)
class FamilyGrowth:
    name: str
    rule: str
    children: Callable
    label: Callable
    member: Callable
    enumerate: Callable  # size -> list of objects, independent of the growth
    parent: Callable | None = None


def _invseq_enum(family):
    triple = INVSEQ_FAMILIES[family]
    return lambda n: enumerate_class("invseq-triple", triple, n)


FAMILIES = {
    "cat": FamilyGrowth(
        "cat", "cat", cat_children, cat_label,
        lambda e: in_invseq_family("cat", e.entries), _invseq_enum("cat"),
    ),
    "cat2": FamilyGrowth(
        "cat2", "cat2",
        lambda e: children_rightmost_entry("cat2", e), cat2_label,
        lambda e: in_invseq_family("cat", e.entries), _invseq_enum("cat"),
    ),
    "i-geq3": FamilyGrowth(
        "i-geq3", "i-geq3",
        lambda e: children_rightmost_entry("i-geq3", e), igeq3_label,
        lambda e: in_invseq_family("i-geq3", e.entries), _invseq_enum("i-geq3"),
    ),
    "bax": FamilyGrowth(
        "bax", "bax",
        lambda e: children_rightmost_entry("bax", e), bax_label,
        lambda e: in_invseq_family("bax", e.entries), _invseq_enum("bax"),
    ),
    "semi": FamilyGrowth(
        "semi", "semi",
        lambda e: children_rightmost_entry("semi", e), semi_label,
        lambda e: in_invseq_family("semi", e.entries), _invseq_enum("semi"),
    ),
    "pcat:invseq": FamilyGrowth(
        "pcat:invseq", "pcat", pcat_children_invseq, pcat_label_invseq,
        lambda e: in_invseq_family("pcat", e.entries), _invseq_enum("pcat"),
        parent=pcat_parent_invseq,
    ),
    "pcat:vmdyck": FamilyGrowth(
        "pcat:vmdyck", "pcat", vmdyck_children, vmdyck_label,
        lambda p: validate(p).ok and p.kind is PathKind.VMDYCK,
        lambda n: enumerate_class("path-kind", PathKind.VMDYCK, n),
    ),
    "pcat:tree": FamilyGrowth(
        "pcat:tree", "pcat", tree_children, tree_label,
        lambda t: validate(t).ok,
        lambda n: enumerate_class("tree", None, n),
    ),
    "steady": FamilyGrowth(
        "steady", "steady", steady_children, steady_label,
        lambda p: validate(p).ok and p.kind is PathKind.STEADY,
        lambda n: enumerate_class("path-kind", PathKind.STEADY, n),
    ),
    "p1234": FamilyGrowth(
        "p1234", "p1234", perm1234_children, p1234_label,
        lambda p: avoids_vincular(p, P1234),
        lambda n: enumerate_class("perm-vincular", P1234, n),
    ),
}


@dataclass(frozen=True)
class GrowthReport:
    family: str
    n_max: int
    objects_checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        state = "pass" if self.ok else f"FAIL ({len(self.violations)} violations)"
        return f"growth {self.family}: sizes 1..{self.n_max}, {self.objects_checked} objects, {state}"


def growth_consistency(family: str, n_max: int) -> GrowthReport:
    """Certify one growth up to n_max: every child is a member, child-label
    multisets equal the rule productions, labels recomputed on children match
    the emitted ones, and each member of size s+1 has exactly one parent."""
    fam = FAMILIES[family]
    violations = []
    checked = 0
    for s in range(1, n_max + 1):
        members = fam.enumerate(s)
        produced = Counter()
        for obj in members:
            checked += 1
            kids = fam.children(obj)
            emitted = Counter(lab for _, lab in kids)
            expected = Counter(expand_label(fam.rule, fam.label(obj)))
            if emitted != expected:
                violations.append(
                    f"size {s}: {to_text(obj)} label {fam.label(obj)} produced {sorted(emitted.items())}, "
                    f"rule says {sorted(expected.items())}"
                )
            for child, lab in kids:
                if not fam.member(child):
                    violations.append(f"size {s}: child {to_text(child)} of {to_text(obj)} fails membership")
                if fam.label(child) != lab:
                    violations.append(
                        f"size {s}: child {to_text(child)} of {to_text(obj)} got label {lab}, "
                        f"direct computation gives {fam.label(child)}"
                    )
                if fam.parent is not None and to_text(fam.parent(child)) != to_text(obj):
                    violations.append(f"size {s}: parent of {to_text(child)} is not {to_text(obj)}")
                produced[to_text(child)] += 1
        next_members = Counter(to_text(o) for o in fam.enumerate(s + 1))
        if produced != next_members:
            extra = produced - next_members
            missing = next_members - produced
            for key in list(extra)[:3]:
                violations.append(f"size {s + 1}: {key} generated {produced[key]} times")
            for key in list(missing)[:3]:
                violations.append(f"size {s + 1}: {key} never generated")
    return GrowthReport(family, n_max, checked, tuple(violations))
