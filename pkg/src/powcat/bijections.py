"""Explicit bijections: inversion tables, the Catalan correspondence, the
steady-path encoding, and the W-step/mark exchange maps.

The two path transformations move one unit between the W-step count and the
total mark while fixing their sum, the diagonal steps, and the returns to
the mark; iterating either to exhaustion gives the steady path <-> valley-
marked Dyck path bijection and its inverse.
"""
from __future__ import annotations

from .errors import MembershipError
from .objects import (
    InversionSequence,
    LatticePath,
    PathKind,
    Permutation,
    make_path,
    path_from_up_points,
    path_heights,
    path_valleys,
    to_text,
    up_step_points,
    validate,
)
from .patterns import VincularPattern, avoids_vincular, in_invseq_family

PAT_1_23 = VincularPattern.parse("1-23")
PAT_2_14_3 = VincularPattern.parse("2-14-3")
PAT_1_34_2 = VincularPattern.parse("1-34-2")


# -- inversion tables -----------------------------------------------------------


def left_inversion_table(p: Permutation) -> tuple[int, ...]:
    """t_i = number of j > i with p_i > p_j."""
    report = validate(p)
    if not report.ok:
        raise MembershipError(f"{to_text(p)} is not a permutation")
    v = p.values
    return tuple(sum(1 for j in range(i + 1, len(v)) if v[i] > v[j]) for i in range(len(v)))


def left_inversion_table_inverse(t) -> Permutation:
    """The unique permutation whose left inversion table is t."""
    t = tuple(t)
    n = len(t)
    for i, ti in enumerate(t, start=1):
        if not 0 <= ti <= n - i:
            raise MembershipError(f"t_{i} = {ti} violates 0 <= t_{i} <= {n - i}")
    remaining = list(range(1, n + 1))
    out = []
    for ti in t:
        out.append(remaining.pop(ti))
    return Permutation(tuple(out))


# -- Catalan inversion sequences <-> AV(1-23, 2-14-3) ------------------------------


def catalan_invseq_to_perm(e: InversionSequence) -> Permutation:
    """Reverse e, read the result as a left inversion table, invert."""
    if not in_invseq_family("cat", e.entries):
        raise MembershipError(f"{to_text(e)} is not a Catalan inversion sequence")
    p = left_inversion_table_inverse(tuple(reversed(e.entries)))
    if not (avoids_vincular(p, PAT_1_23) and avoids_vincular(p, PAT_2_14_3)):
        raise AssertionError(f"image {to_text(p)} escaped AV(1-23, 2-14-3)")
    return p


def catalan_perm_to_invseq(p: Permutation) -> InversionSequence:
    if not (avoids_vincular(p, PAT_1_23) and avoids_vincular(p, PAT_2_14_3)):
        raise MembershipError(f"{to_text(p)} does not avoid 1-23 and 2-14-3")
    e = InversionSequence(tuple(reversed(left_inversion_table(p))))
    if not in_invseq_family("cat", e.entries):
        raise AssertionError(f"image {to_text(e)} escaped the Catalan family")
    return e


# -- steady paths <-> AV(1-34-2) ----------------------------------------------------
# The encoding distance of an up step starting at (i, j) is (i - j) / 2: up
# steps sit on y = -x + 2(k-1), so this is the integer count of diagonals
# between the step and y = x, and it ranges over [0, n-k] exactly.


def steady_encoding(path: LatticePath) -> tuple[int, ...]:
    """Diagonal distances of the up-step starts, read right to left."""
    pts = up_step_points(path.steps)
    return tuple((i - j) // 2 for i, j in reversed(pts))


def steady_to_perm(path: LatticePath) -> Permutation:
    report = validate(make_path(path.steps, kind=PathKind.STEADY))
    if not report.ok:
        raise MembershipError(f"{path.steps} is not a steady path")
    p = left_inversion_table_inverse(steady_encoding(path))
    if not avoids_vincular(p, PAT_1_34_2):
        raise AssertionError(f"image {to_text(p)} escaped AV(1-34-2)")
    return p


def perm_to_steady(p: Permutation) -> LatticePath:
    if not avoids_vincular(p, PAT_1_34_2):
        raise MembershipError(f"{to_text(p)} does not avoid 1-34-2")
    t = left_inversion_table(p)
    n = len(t)
    pts = [(m + t[n - 1 - m], m - t[n - 1 - m]) for m in range(n)]
    path = make_path(path_from_up_points(pts), kind=PathKind.STEADY)
    report = validate(path)
    if not report.ok:
        raise AssertionError(f"image {path.steps} is not steady: {report.violations[0].detail}")
    return path


# -- the W-removing and mark-reducing transformations ---------------------------------


def _matching_u_left(heights, d):
    """Last index u < d with the path at the D's bottom height, everything
    between staying above it."""
    bottom = heights[d + 1]
    for u in range(d - 1, -1, -1):
        if heights[u] == bottom:
            return u
    raise AssertionError("unmatched D step")


def _first_drop_right(heights, start, level):
    """First step index b >= start taking the path strictly below level."""
    for b in range(start, len(heights) - 1):
        if heights[b + 1] < level:
            return b
    raise AssertionError("path never descends below level")


def _transfer_marks(old_path, new_steps, carried, inserted_u, new_mark):
    """Marks travel with their valley's U step; the one inserted U gets the
    new mark.  carried maps old step index -> new step index."""
    old_marks = {u: m for (u, _), m in zip(path_valleys(old_path.steps), old_path.marks)}
    marks = []
    for u, _ in path_valleys(new_steps):
        if u == inserted_u:
            marks.append(new_mark)
        else:
            old_u = carried[u]
            if old_u not in old_marks:
                raise AssertionError("valley appeared at a carried step that was no valley")
            marks.append(old_marks[old_u])
    return LatticePath(new_steps, tuple(marks), PathKind.VMSTEADY)


def _reassemble(old_steps, pieces):
    """Concatenate pieces, each either ('old', i, j) for old_steps[i:j] or
    ('new', text); returns (steps, new->old index map, new indices of 'new')."""
    out = []
    carried: dict[int, int] = {}
    fresh: list[int] = []
    for piece in pieces:
        if piece[0] == "old":
            _, i, j = piece
            for k in range(i, j):
                carried[len(out)] = k
                out.append(old_steps[k])
        else:
            for c in piece[1]:
                fresh.append(len(out))
                out.append(c)
    return "".join(out), carried, fresh


def phi(path: LatticePath) -> LatticePath:
    """Remove the rightmost bottommost W step, raising one valley's mark.

    The W closes a D-U-W factor around a valley at height k with mark h; the
    factor (and, when the in-between block is empty, the W's matching D) is
    dissolved and the valley reappears one level up with mark h + 1.
    """
    report = validate(path if path.kind is PathKind.VMSTEADY else make_path(path.steps, path.marks, PathKind.VMSTEADY))
    if not report.ok:
        raise MembershipError(f"{to_text(path)} is not a valley-marked steady path")
    steps = path.steps
    if "W" not in steps:
        raise MembershipError("phi needs at least one W step")
    hs = path_heights(steps)
    w = max(
        (i for i, s in enumerate(steps) if s == "W"),
        key=lambda i: (-hs[i], i),
    )
    if steps[w - 2 : w] != "DU":
        raise AssertionError("bottommost W not preceded by a valley")
    d = w - 2
    k = hs[d + 1]
    u_star = _matching_u_left(hs, d)
    if steps[u_star] != "U":
        raise AssertionError("matching step of the valley's D is not a U")
    d_w = _first_drop_right(hs, w + 1, k + 2)  # matching D of the W
    d_u = _first_drop_right(hs, d_w + 1, k + 1)  # matching D of the valley's U
    a_empty = u_star + 1 == d
    if a_empty:
        pieces = [
            ("old", 0, u_star + 1),
            ("old", w + 1, d_w),  # B, shifted down one level
            ("new", "UD"),
            ("old", d_w + 1, d_u),  # C
            ("old", d_u, len(steps)),  # closing D and suffix
        ]
    else:
        pieces = [
            ("old", 0, d),  # prefix, the matching U, and A
            ("new", "U"),
            ("old", w + 1, len(steps)),  # B, both matching Ds, C, suffix
        ]
    new_steps, carried, fresh = _reassemble(steps, pieces)
    inserted_u = fresh[0]
    old_mark = {u: m for (u, _), m in zip(path_valleys(steps), path.marks)}[d + 1]
    out = _transfer_marks(path, new_steps, carried, inserted_u, old_mark + 1)
    report = validate(out)
    if not report.ok:
        raise AssertionError(f"phi image invalid: {report.violations[0].detail}")
    return out


def theta(path: LatticePath) -> LatticePath:
    """Lower the leftmost topmost nontrivially marked valley, adding a W.

    Inverse of phi: the chosen valley at height k with mark h is re-rooted
    inside a fresh D-U-W factor at height k - 1 with mark h - 1.
    """
    report = validate(path if path.kind is PathKind.VMSTEADY else make_path(path.steps, path.marks, PathKind.VMSTEADY))
    if not report.ok:
        raise MembershipError(f"{to_text(path)} is not a valley-marked steady path")
    steps, marks = path.steps, path.marks
    if sum(marks) == 0:
        raise MembershipError("theta needs a nontrivial mark")
    hs = path_heights(steps)
    valleys = path_valleys(steps)
    v_u, k = max(
        ((u, h) for (u, h), m in zip(valleys, marks) if m > 0),
        key=lambda vh: (vh[1], -vh[0]),
    )
    h_mark = {u: m for (u, _), m in zip(valleys, marks)}[v_u]
    a_start = v_u - 1
    while a_start > 0 and hs[a_start - 1] >= k:
        a_start -= 1
    if steps[a_start - 1] != "U":
        raise AssertionError("step entering the valley's level is not a U")
    d_b = _first_drop_right(hs, v_u + 1, k + 1)  # matching D of the valley's U
    d_c = _first_drop_right(hs, d_b + 1, k)  # D closing the factor C
    b_empty = d_b == v_u + 1
    if b_empty:
        pieces = [
            ("old", 0, a_start),
            ("new", "DUW"),
            ("old", a_start, v_u),  # A, shifted up one level
            ("old", d_b, len(steps)),  # its closing D, C, the next D, suffix
        ]
    else:
        pieces = [
            ("old", 0, v_u),  # prefix and A
            ("new", "DUW"),
            ("old", v_u + 1, len(steps)),  # B, both Ds, C, suffix
        ]
    new_steps, carried, fresh = _reassemble(steps, pieces)
    inserted_u = fresh[1]
    out = _transfer_marks(path, new_steps, carried, inserted_u, h_mark - 1)
    report = validate(out)
    if not report.ok:
        raise AssertionError(f"theta image invalid: {report.violations[0].detail}")
    return out


# -- the full exchanges ----------------------------------------------------------------


def _as_vmsteady(path: LatticePath) -> LatticePath:
    return LatticePath(path.steps, path.marks, PathKind.VMSTEADY)


def phi_star(path: LatticePath) -> LatticePath:
    """Iterate phi until no W remains: steady path -> valley-marked Dyck path."""
    cur = _as_vmsteady(path)
    while "W" in cur.steps:
        cur = phi(cur)
    return LatticePath(cur.steps, cur.marks, PathKind.VMDYCK)


def theta_star(path: LatticePath) -> LatticePath:
    """Iterate theta until the total mark is zero: valley-marked Dyck -> steady."""
    cur = _as_vmsteady(path)
    while sum(cur.marks) > 0:
        cur = theta(cur)
    return make_path(cur.steps, kind=PathKind.STEADY)


MAPS = {
    "tinv": lambda obj: left_inversion_table(obj),
    "tinv-inv": lambda obj: left_inversion_table_inverse(obj),
    "cat-perm": catalan_invseq_to_perm,
    "cat-perm-inv": catalan_perm_to_invseq,
    "steady-perm": steady_to_perm,
    "steady-perm-inv": perm_to_steady,
    "phi": phi,
    "theta": theta,
    "phi-star": phi_star,
    "theta-star": theta_star,
}

MAP_INPUT_KINDS = {
    "tinv": "perm",
    "tinv-inv": "invtable",
    "cat-perm": "invseq",
    "cat-perm-inv": "perm",
    "steady-perm": "steady",
    "steady-perm-inv": "perm",
    "phi": "vmsteady",
    "theta": "vmsteady",
    "phi-star": "steady",
    "theta-star": "vmdyck",
}
