"""Core combinatorial value types and their validation.

Four object kinds live here: inversion sequences, permutations, lattice
paths over the step alphabet {U, D, W} with per-valley marks, and labeled
ordered trees.  Values are immutable after construction and construction is
permissive: invariants are checked by :func:`validate`, which reports every
violation (not just the first) so that callers can shrink counterexamples.

Path geometry conventions: U = (1,1), D = (1,-1), W = (-1,1); paths start at
the origin; a valley is a DU factor and its height is the y-coordinate of
the DU corner; marks are stored one per valley, left to right.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ParseError

STEP_VECTORS = {"U": (1, 1), "D": (1, -1), "W": (-1, 1)}


class PathKind(str, Enum):
    DYCK = "dyck"
    VMDYCK = "vmdyck"
    STEADY = "steady"
    VMSTEADY = "vmsteady"

    @property
    def marked(self) -> bool:
        return self in (PathKind.VMDYCK, PathKind.VMSTEADY)

    @property
    def allows_w(self) -> bool:
        return self in (PathKind.STEADY, PathKind.VMSTEADY)


@dataclass(frozen=True)
class InversionSequence:
    """Integer sequence e_1..e_n; valid when 0 <= e_i < i for every i."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(v) for v in self.entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class Permutation:
    """One-line notation; valid when the values are a rearrangement of 1..n."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class LatticePath:
    """Step word plus one mark per valley (DU factor), left to right.

    Unmarked kinds carry all-zero marks so that all four kinds share one
    representation.  Shape errors (bad alphabet, mark count != valley count)
    are parse-level and raise immediately; kind invariants are validate()'s
    business.
    """

    steps: str
    marks: tuple[int, ...]
    kind: PathKind

    def __post_init__(self):
        for i, s in enumerate(self.steps):
            if s not in STEP_VECTORS:
                raise ParseError(f"step {s!r} is not one of U, D, W", position=i + 1)
        object.__setattr__(self, "marks", tuple(int(m) for m in self.marks))
        nv = len(path_valleys(self.steps))
        if len(self.marks) != nv:
            raise ParseError(
                f"{len(self.marks)} marks for {nv} valleys", position=len(self.steps)
            )
        if not isinstance(self.kind, PathKind):
            object.__setattr__(self, "kind", PathKind(self.kind))

    @property
    def size(self) -> int:
        return self.steps.count("U")


def make_path(steps: str, marks=None, kind: PathKind | str = PathKind.DYCK) -> LatticePath:
    """Build a path, defaulting marks to one zero per valley."""
    kind = PathKind(kind)
    for i, s in enumerate(steps):
        if s not in STEP_VECTORS:
            raise ParseError(f"step {s!r} is not one of U, D, W", position=i + 1)
    if marks is None:
        marks = (0,) * len(path_valleys(steps))
    return LatticePath(steps, tuple(marks), kind)


@dataclass(frozen=True)
class OrderedTree:
    """Ordered rooted tree with integer vertex labels."""

    label: int
    children: tuple["OrderedTree", ...] = ()

    @property
    def size(self) -> int:
        """Number of non-root vertices when rooted at this node's subtree."""
        return self.vertex_count() - 1

    def vertex_count(self) -> int:
        return 1 + sum(c.vertex_count() for c in self.children)

    def preorder_labels(self) -> list[int]:
        out = [self.label]
        for c in self.children:
            out.extend(c.preorder_labels())
        return out

    def preorder_leaves(self) -> list[int]:
        if not self.children:
            return [self.label]
        out = []
        for c in self.children:
            out.extend(c.preorder_leaves())
        return out


@dataclass(frozen=True)
class PathStatistics:
    w_count: int
    total_mark: int
    returns_to_axis: int
    returns_to_mark: int
    diagonal_steps: int
    last_descent_length: int
    edge_line_offset: int


@dataclass(frozen=True)
class Violation:
    invariant: str
    position: int  # 1-based entry/step index, 0 when global
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]

    def __bool__(self):
        return self.ok


# -- path geometry -----------------------------------------------------------


def path_points(steps: str) -> list[tuple[int, int]]:
    """Lattice points visited, starting at (0, 0); length is len(steps) + 1."""
    x = y = 0
    pts = [(0, 0)]
    for s in steps:
        dx, dy = STEP_VECTORS[s]
        x += dx
        y += dy
        pts.append((x, y))
    return pts


def path_heights(steps: str) -> list[int]:
    y = 0
    hs = [0]
    for s in steps:
        y += STEP_VECTORS[s][1]
        hs.append(y)
    return hs


def path_valleys(steps: str) -> list[tuple[int, int]]:
    """Valleys as (index of the U step, valley height), left to right."""
    out = []
    y = 0
    for i, s in enumerate(steps):
        y += STEP_VECTORS[s][1]
        if s == "D" and i + 1 < len(steps) and steps[i + 1] == "U":
            out.append((i + 1, y))
    return out


def last_descent_length(steps: str) -> int:
    n = 0
    for s in reversed(steps):
        if s != "D":
            break
        n += 1
    return n


def _up_factor_positions(steps: str) -> list[int]:
    """Indices i of up steps that close a UU or WU factor (step i-1 in {U,W})."""
    return [
        i
        for i in range(1, len(steps))
        if steps[i] == "U" and steps[i - 1] in ("U", "W")
    ]


def edge_line_offset(steps: str) -> int:
    """Offset t of the edge line y = x - t through the up step of the
    rightmost UU or WU factor; t = 0 when no such factor exists."""
    pos = _up_factor_positions(steps)
    if not pos:
        return 0
    i = pos[-1]
    x, y = path_points(steps)[i]
    return x - y


def diagonal_step_count(steps: str) -> int:
    """Steps whose segment is contained in the line y = x.

    Only U steps qualify (D and W cross the diagonal rather than lie on it),
    so this counts up steps starting at a point with y = x.
    """
    n = 0
    x = y = 0
    for s in steps:
        if s == "U" and x == y:
            n += 1
        dx, dy = STEP_VECTORS[s]
        x += dx
        y += dy
    return n


def returns_to_axis(steps: str) -> int:
    hs = path_heights(steps)
    return sum(1 for h in hs[1:-1] if h == 0)


def path_statistics(path: LatticePath) -> PathStatistics:
    """All seven path statistics; see PathStatistics for the field set."""
    steps = path.steps
    vals = path_valleys(steps)
    returns_mark = sum(1 for (_, h), m in zip(vals, path.marks) if m == h)
    return PathStatistics(
        w_count=steps.count("W"),
        total_mark=sum(path.marks),
        returns_to_axis=returns_to_axis(steps),
        returns_to_mark=returns_mark,
        diagonal_steps=diagonal_step_count(steps),
        last_descent_length=last_descent_length(steps),
        edge_line_offset=edge_line_offset(steps),
    )


def path_from_up_points(points: list[tuple[int, int]]) -> str:
    """Rebuild the unique W/D-connected step word from up-step start points.

    The k-th point must satisfy j = -i + 2(k-1); consecutive up steps are
    joined by a run of D steps (moving right) or W steps (moving left), and
    the word closes with the descent back to the x-axis.
    """
    word = []
    for k, (i, j) in enumerate(points):
        if j != -i + 2 * k:
            raise ValueError(f"up-step start {k + 1} off its diagonal: {(i, j)}")
        if k > 0:
            pi, pj = points[k - 1]
            gap = i - (pi + 1)
            word.append("D" * gap if gap >= 0 else "W" * (-gap))
        word.append("U")
    last_i, last_j = points[-1]
    word.append("D" * (last_j + 1))
    return "".join(word)


def up_step_points(steps: str) -> list[tuple[int, int]]:
    pts = path_points(steps)
    return [pts[i] for i, s in enumerate(steps) if s == "U"]


# -- validation ---------------------------------------------------------------


def _validate_invseq(e: InversionSequence) -> list[Violation]:
    out = []
    if len(e.entries) == 0:
        out.append(Violation("length", 0, "length must be at least 1"))
    for i, v in enumerate(e.entries, start=1):
        if not 0 <= v < i:
            out.append(Violation("bound", i, f"e_{i} = {v} violates 0 <= e_{i} < {i}"))
    return out


def _validate_perm(p: Permutation) -> list[Violation]:
    out = []
    n = len(p.values)
    if n == 0:
        out.append(Violation("length", 0, "length must be at least 1"))
    seen = set()
    for i, v in enumerate(p.values, start=1):
        if not 1 <= v <= n:
            out.append(Violation("range", i, f"value {v} outside 1..{n}"))
        elif v in seen:
            out.append(Violation("distinct", i, f"value {v} repeated"))
        seen.add(v)
    return out


def _s1_s2_violations(steps: str, pts) -> list[Violation]:
    # suffix_min[i] = min of x - y over points i..end; a factor whose up step
    # sits on y = x - t is violated exactly when that minimum drops below t.
    n = len(pts)
    suffix_min = [0] * n
    m = 10**9
    for i in range(n - 1, -1, -1):
        x, y = pts[i]
        m = min(m, x - y)
        suffix_min[i] = m
    out = []
    for i in _up_factor_positions(steps):
        x, y = pts[i]
        t = x - y
        if i + 2 <= n - 1 and suffix_min[i + 2] < t:
            px, py = next(p for p in pts[i + 2 :] if p[0] - p[1] < t)
            name = "S1" if steps[i - 1] == "U" else "S2"
            fx, fy = pts[i + 1]
            out.append(
                Violation(
                    name,
                    i + 1,
                    f"{steps[i - 1]}U factor ending at ({fx},{fy}) is followed by "
                    f"point ({px},{py}) above the line y = x - {t}",
                )
            )
    return out


def _validate_path(path: LatticePath) -> list[Violation]:
    steps, marks, kind = path.steps, path.marks, path.kind
    out = []
    if not steps:
        out.append(Violation("length", 0, "empty step word"))
        return out
    pts = path_points(steps)
    vals = path_valleys(steps)

    if not kind.allows_w:
        for i, s in enumerate(steps):
            if s == "W":
                out.append(Violation("no-w", i + 1, "W step in a Dyck-kind path"))
        for i, (x, y) in enumerate(pts):
            if y < 0:
                out.append(Violation("below-axis", i, f"point ({x},{y}) below the x-axis"))
                break
        if pts[-1][1] != 0:
            out.append(Violation("endpoint", len(steps), f"ends at {pts[-1]}, not on the x-axis"))
    else:
        for i, (x, y) in enumerate(pts):
            if y < 0 or y > x:
                out.append(Violation("cone", i, f"point ({x},{y}) outside the cone 0 <= y <= x"))
                break
        for i in range(len(steps) - 1):
            if steps[i] == "W" and steps[i + 1] == "D":
                out.append(Violation("factor-wd", i + 1, "forbidden WD factor"))
            if steps[i] == "D" and steps[i + 1] == "W":
                out.append(Violation("factor-dw", i + 1, "forbidden DW factor"))
        n_up = steps.count("U")
        if pts[-1] != (2 * n_up, 0):
            out.append(
                Violation("endpoint", len(steps), f"ends at {pts[-1]}, expected ({2 * n_up},0)")
            )
        out.extend(_s1_s2_violations(steps, pts))

    if kind.marked:
        for vi, ((_, h), m) in enumerate(zip(vals, marks), start=1):
            if not 0 <= m <= h:
                out.append(
                    Violation("M1", vi, f"valley {vi} at height {h} has mark {m} outside 0..{h}")
                )
        if kind is PathKind.VMSTEADY:
            w_steps = [(i, pts[i][1]) for i, s in enumerate(steps) if s == "W"]
            for vi, ((u_idx, h), m) in enumerate(zip(vals, marks), start=1):
                if m == 0:
                    continue
                for w_idx, wh in w_steps:
                    if h > wh:
                        out.append(
                            Violation(
                                "M2",
                                vi,
                                f"valley {vi} at height {h} with nontrivial mark lies above "
                                f"the W step at index {w_idx + 1} (height {wh})",
                            )
                        )
                        break
                    if h == wh and u_idx < w_idx:
                        out.append(
                            Violation(
                                "M3",
                                vi,
                                f"valley {vi} with nontrivial mark at height {h} sits left of "
                                f"the W step at index {w_idx + 1} at the same height",
                            )
                        )
                        break
    else:
        for vi, m in enumerate(marks, start=1):
            if m != 0:
                out.append(Violation("zero-marks", vi, f"valley {vi} carries mark {m} != 0"))
    return out


def _validate_tree(t: OrderedTree) -> list[Violation]:
    out = []
    labels = t.preorder_labels()
    n = len(labels) - 1
    if t.label != 0:
        out.append(Violation("root", 1, f"root labeled {t.label}, expected 0"))
    if sorted(labels) != list(range(n + 1)):
        out.append(Violation("labels", 0, f"labels {sorted(labels)} are not 0..{n}"))

    def walk(node, pos):
        for c in node.children:
            pos += 1
            if c.label <= node.label:
                out.append(
                    Violation("increasing", pos, f"child {c.label} does not exceed parent {node.label}")
                )
            pos = walk(c, pos)
        return pos

    walk(t, 1)
    leaves = t.preorder_leaves()
    for i in range(1, len(leaves)):
        if leaves[i] <= leaves[i - 1]:
            out.append(
                Violation(
                    "increasing-leaves",
                    i + 1,
                    f"pre-order leaves ...{leaves[i - 1]},{leaves[i]}... are not increasing",
                )
            )
    return out


def validate(obj) -> ValidationReport:
    """Check every kind invariant of a domain object; report all violations."""
    if isinstance(obj, InversionSequence):
        violations = _validate_invseq(obj)
    elif isinstance(obj, Permutation):
        violations = _validate_perm(obj)
    elif isinstance(obj, LatticePath):
        violations = _validate_path(obj)
    elif isinstance(obj, OrderedTree):
        violations = _validate_tree(obj)
    else:
        raise TypeError(f"cannot validate {type(obj).__name__}")
    return ValidationReport(ok=not violations, violations=tuple(violations))


# -- text formats --------------------------------------------------------------
#
# inversion sequences / inversion tables / permutations: comma-separated ints
# paths: step word, with an optional ";marks=m1,m2,..." suffix
# trees: nested parenthesized label lists, children left to right: 0(1(3)2)


def _parse_int_list(text: str) -> tuple[int, ...]:
    if text.strip() == "":
        raise ParseError("empty integer list", position=1)
    parts = text.split(",")
    out = []
    for i, part in enumerate(parts, start=1):
        try:
            out.append(int(part.strip()))
        except ValueError:
            raise ParseError(f"bad integer {part.strip()!r}", position=i) from None
    return tuple(out)


def parse_path_text(text: str, kind: PathKind | str) -> LatticePath:
    kind = PathKind(kind)
    steps, _, suffix = text.partition(";")
    marks = None
    if suffix:
        if not suffix.startswith("marks="):
            raise ParseError(f"expected ';marks=' suffix, got {suffix!r}", position=len(steps) + 2)
        marks = _parse_int_list(suffix[len("marks=") :])
    return make_path(steps, marks, kind)


def _parse_tree_nodes(text: str, pos: int) -> tuple[list[OrderedTree], int]:
    nodes = []
    while pos < len(text) and text[pos] not in ")":
        if text[pos] == ",":
            pos += 1
            continue
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError(f"expected a label, got {text[pos]!r}", position=pos + 1)
        label = int(text[start:pos])
        children = ()
        if pos < len(text) and text[pos] == "(":
            kids, pos = _parse_tree_nodes(text, pos + 1)
            if pos >= len(text) or text[pos] != ")":
                raise ParseError("unbalanced parentheses", position=pos + 1)
            pos += 1
            children = tuple(kids)
        nodes.append(OrderedTree(label, children))
    return nodes, pos


def parse_tree_text(text: str) -> OrderedTree:
    nodes, pos = _parse_tree_nodes(text.strip(), 0)
    if pos != len(text.strip()):
        raise ParseError("trailing input after tree", position=pos + 1)
    if len(nodes) != 1:
        raise ParseError(f"expected one root, found {len(nodes)}", position=1)
    return nodes[0]


def parse_object(text: str, kind: str):
    """Parse external text into a domain object; kind selects the format.

    Path kinds are dyck/vmdyck/steady/vmsteady; the other kinds are invseq,
    invtable (plain integer tuple), perm, and tree.
    """
    if kind in ("invseq",):
        return InversionSequence(_parse_int_list(text))
    if kind in ("invtable",):
        return _parse_int_list(text)
    if kind in ("perm",):
        return Permutation(_parse_int_list(text))
    if kind in ("tree",):
        return parse_tree_text(text)
    return parse_path_text(text, kind)


def to_text(obj) -> str:
    """Canonical text form; inverse of parse_object for every valid object."""
    if isinstance(obj, InversionSequence):
        return ",".join(str(v) for v in obj.entries)
    if isinstance(obj, Permutation):
        return ",".join(str(v) for v in obj.values)
    if isinstance(obj, tuple):
        return ",".join(str(v) for v in obj)
    if isinstance(obj, LatticePath):
        if obj.kind.marked and obj.marks:
            return obj.steps + ";marks=" + ",".join(str(m) for m in obj.marks)
        return obj.steps
    if isinstance(obj, OrderedTree):
        sep = "," if any(l > 9 for l in obj.preorder_labels()) else ""
        return _tree_text(obj, sep)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _tree_text(t: OrderedTree, sep: str) -> str:
    body = sep.join(_tree_text(c, sep) for c in t.children)
    return f"{t.label}({body})" if t.children else str(t.label)
