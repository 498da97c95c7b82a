"""Avoidance oracles and exhaustive enumerators.

Three pattern languages drive everything: triples of binary relations on
inversion sequences, word patterns matched as order-and-equality-preserving
subsequences, and (vincular) permutation patterns where dash-free adjacent
entries must sit at consecutive positions.

Enumerators prune on prefixes: removing the last entry of an inversion
sequence (or the last point of a permutation, up to standardization) never
creates a pattern occurrence, so any prefix containing a pattern is dead.
Streams are reproducible: objects come out sorted by their canonical text.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import LimitError, ParseError
from .objects import (
    InversionSequence,
    LatticePath,
    OrderedTree,
    PathKind,
    Permutation,
    make_path,
    path_from_up_points,
    path_valleys,
    to_text,
    validate,
)

RELATIONS = {
    "lt": lambda a, b: a < b,
    "gt": lambda a, b: a > b,
    "leq": lambda a, b: a <= b,
    "geq": lambda a, b: a >= b,
    "eq": lambda a, b: a == b,
    "neq": lambda a, b: a != b,
    "dash": lambda a, b: True,
}

EXHAUSTIVE_LIMITS = {"perm": 10, "invseq": 10, "path": 8, "tree": 8}


@dataclass(frozen=True)
class RelationTriple:
    first: str
    second: str
    third: str

    def __post_init__(self):
        for r in (self.first, self.second, self.third):
            if r not in RELATIONS:
                raise ParseError(f"unknown relation token {r!r}")

    @classmethod
    def parse(cls, text: str) -> "RelationTriple":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ParseError(f"expected three relation tokens, got {text!r}")
        return cls(*parts)

    def __str__(self):
        return f"{self.first},{self.second},{self.third}"


@dataclass(frozen=True)
class WordPattern:
    word: tuple[int, ...]

    def __post_init__(self):
        if len(self.word) < 1:
            raise ParseError("word pattern must be nonempty")

    @classmethod
    def parse(cls, text: str) -> "WordPattern":
        return cls(tuple(int(c) for c in text.strip()))

    def __str__(self):
        return "".join(str(c) for c in self.word)


@dataclass(frozen=True)
class VincularPattern:
    """Permutation pattern with an adjacency set.

    ``adjacent`` holds the 1-based positions i such that entries i and i+1
    are not separated by a dash and must be consecutive in any occurrence.
    An empty adjacency set is a classical pattern.
    """

    perm: tuple[int, ...]
    adjacent: frozenset[int] = frozenset()

    def __post_init__(self):
        k = len(self.perm)
        if sorted(self.perm) != list(range(1, k + 1)):
            raise ParseError(f"pattern {self.perm} is not a permutation of 1..{k}")
        if any(not 1 <= i <= k - 1 for i in self.adjacent):
            raise ParseError("adjacency positions must lie in 1..k-1")

    @classmethod
    def parse(cls, text: str) -> "VincularPattern":
        groups = text.strip().split("-")
        perm = []
        adjacent = set()
        for g in groups:
            if not g:
                raise ParseError(f"empty dash group in {text!r}")
            for j, c in enumerate(g):
                if not c.isdigit():
                    raise ParseError(f"bad pattern letter {c!r} in {text!r}")
                perm.append(int(c))
                if j > 0:
                    adjacent.add(len(perm) - 1)
        return cls(tuple(perm), frozenset(adjacent))

    def __str__(self):
        out = []
        for i, v in enumerate(self.perm, start=1):
            out.append(str(v))
            if i < len(self.perm) and i not in self.adjacent:
                out.append("-")
        return "".join(out)


# -- single-object oracles -----------------------------------------------------


def avoids_triple(e: InversionSequence, triple: RelationTriple) -> bool:
    """True when no i<j<k has e_i r1 e_j, e_j r2 e_k, e_i r3 e_k."""
    r1, r2, r3 = RELATIONS[triple.first], RELATIONS[triple.second], RELATIONS[triple.third]
    v = e.entries if isinstance(e, InversionSequence) else tuple(e)
    n = len(v)
    for i in range(n - 2):
        for j in range(i + 1, n - 1):
            if not r1(v[i], v[j]):
                continue
            for k in range(j + 1, n):
                if r2(v[j], v[k]) and r3(v[i], v[k]):
                    return False
    return True


def _word_consistent(word, chosen_vals, idx, val) -> bool:
    w = word[idx]
    for p, cv in enumerate(chosen_vals):
        wp = word[p]
        if wp == w:
            if cv != val:
                return False
        elif wp < w:
            if cv >= val:
                return False
        elif cv <= val:
            return False
    return True


def _contains_word(values, word, start, chosen) -> bool:
    idx = len(chosen)
    if idx == len(word):
        return True
    for pos in range(start, len(values) - (len(word) - idx) + 1):
        if _word_consistent(word, chosen, idx, values[pos]):
            chosen.append(values[pos])
            if _contains_word(values, word, pos + 1, chosen):
                chosen.pop()
                return True
            chosen.pop()
    return False


def avoids_word(e, w: WordPattern) -> bool:
    """True when no subsequence of e realizes the order-and-equality type of w."""
    v = e.entries if isinstance(e, InversionSequence) else tuple(e)
    return not _contains_word(v, w.word, 0, [])


def _perm_consistent(perm, chosen_vals, idx, val) -> bool:
    w = perm[idx]
    for p, cv in enumerate(chosen_vals):
        if (perm[p] < w) != (cv < val):
            return False
    return True


def _contains_vincular(values, pat: VincularPattern, start, chosen) -> bool:
    idx = len(chosen)
    if idx == len(pat.perm):
        return True
    if idx > 0 and idx in pat.adjacent:
        positions = [start] if start < len(values) else []
    else:
        positions = range(start, len(values) - (len(pat.perm) - idx) + 1)
    for pos in positions:
        if _perm_consistent(pat.perm, [values[q] for q in chosen], idx, values[pos]):
            chosen.append(pos)
            if _contains_vincular(values, pat, pos + 1, chosen):
                chosen.pop()
                return True
            chosen.pop()
    return False


def avoids_vincular(p, pattern: VincularPattern) -> bool:
    """True when p has no occurrence of the (possibly vincular) pattern."""
    v = p.values if isinstance(p, Permutation) else tuple(p)
    return not _contains_vincular(v, pattern, 0, [])


def perm_statistics(p) -> dict[str, int]:
    """Counts of LTR/RTL minima and maxima, all strict."""
    v = p.values if isinstance(p, Permutation) else tuple(p)
    ltr_min = ltr_max = rtl_min = rtl_max = 0
    lo, hi = None, None
    for x in v:
        if lo is None or x < lo:
            ltr_min += 1
            lo = x
        if hi is None or x > hi:
            ltr_max += 1
            hi = x
    lo, hi = None, None
    for x in reversed(v):
        if lo is None or x < lo:
            rtl_min += 1
            lo = x
        if hi is None or x > hi:
            rtl_max += 1
            hi = x
    return {
        "ltr_minima": ltr_min,
        "ltr_maxima": ltr_max,
        "rtl_minima": rtl_min,
        "rtl_maxima": rtl_max,
    }


def rtl_minima_count(values) -> int:
    n = 0
    lo = None
    for x in reversed(tuple(values)):
        if lo is None or x < lo:
            n += 1
            lo = x
    return n


# -- characterization criteria --------------------------------------------------
# Direct structural descriptions of the five inversion-sequence families and
# of ascent structure in 1-23-4-avoiding permutations; each is equivalent to
# the corresponding avoidance class (the test suite checks this exhaustively).


def weak_descent_criterion(values) -> bool:
    """Every weak-descent entry is strictly below everything two or more
    places to its right."""
    v = tuple(values)
    n = len(v)
    for i in range(n - 1):
        if v[i] >= v[i + 1] and any(v[j] <= v[i] for j in range(i + 2, n)):
            return False
    return True


def two_chain_criterion(values) -> bool:
    """LTR maxima and the remaining entries each form a strictly increasing
    subsequence."""
    v = tuple(values)
    hi = None
    last_bottom = None
    for x in v:
        if hi is None or x > hi:
            hi = x
        else:
            if last_bottom is not None and x <= last_bottom:
                return False
            last_bottom = x
    return True


def _ltr_max_flags(v):
    flags = []
    hi = None
    for x in v:
        flags.append(hi is None or x > hi)
        if hi is None or x > hi:
            hi = x
    return flags


def baxter_inversion_criterion(values) -> bool:
    """Every inversion (e_i > e_j, i < j) has a LTR-maximum top and a
    RTL-minimum bottom."""
    v = tuple(values)
    n = len(v)
    ltr = _ltr_max_flags(v)
    rtl = [all(v[j] > v[i] for j in range(i + 1, n)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if v[i] > v[j] and not (ltr[i] and rtl[j]):
                return False
    return True


def semibaxter_inversion_criterion(values) -> bool:
    """Every inversion has a LTR-maximum top."""
    v = tuple(values)
    ltr = _ltr_max_flags(v)
    for i in range(len(v)):
        if not ltr[i] and any(v[j] < v[i] for j in range(i + 1, len(v))):
            return False
    return True


def ascent_min_max_criterion(values) -> bool:
    """Every ascent starts at a LTR minimum or ends at a RTL maximum."""
    v = tuple(values)
    n = len(v)
    lo = None
    ltr_min = []
    for x in v:
        ltr_min.append(lo is None or x < lo)
        if lo is None or x < lo:
            lo = x
    rtl_max = [all(v[j] < v[i] for j in range(i + 1, n)) for i in range(n)]
    for i in range(n - 1):
        if v[i] < v[i + 1] and not (ltr_min[i] or rtl_max[i + 1]):
            return False
    return True


# -- incremental occurrence checks (for pruned enumeration) ---------------------


def _triple_hit_at_end(values, triple) -> bool:
    r1, r2, r3 = RELATIONS[triple.first], RELATIONS[triple.second], RELATIONS[triple.third]
    v = values
    k = len(v) - 1
    for j in range(1, k):
        if not r2(v[j], v[k]):
            continue
        for i in range(j):
            if r1(v[i], v[j]) and r3(v[i], v[k]):
                return True
    return False


def _word_hit_at_end(values, word) -> bool:
    last = len(values) - 1
    L = len(word)

    def rec(idx, chosen_vals, start):
        if idx == L - 1:
            return _word_consistent(word, chosen_vals, idx, values[last])
        for pos in range(start, last - (L - 2 - idx)):
            if _word_consistent(word, chosen_vals, idx, values[pos]):
                if rec(idx + 1, chosen_vals + [values[pos]], pos + 1):
                    return True
        return False

    return rec(0, [], 0) if len(values) >= L else False


def _sign(a, b):
    return (a > b) - (a < b)


def _word3_codes(word):
    w0, w1, w2 = word
    return (_sign(w0, w1), _sign(w1, w2), _sign(w0, w2))


def _word3_hit_at_end(values, code_set) -> bool:
    """Any order-type code triple realized with the last entry third."""
    k = len(values) - 1
    vk = values[k]
    for j in range(1, k):
        vj = values[j]
        s12 = _sign(vj, vk)
        for i in range(j):
            vi = values[i]
            if (_sign(vi, vj), s12, _sign(vi, vk)) in code_set:
                return True
    return False


def _vincular_hit_at_end(values, pat: VincularPattern) -> bool:
    """Occurrence whose last pattern entry sits at the last position."""
    L = len(pat.perm)
    n = len(values)
    if n < L:
        return False

    def rec(idx, chosen_pos):
        # positions chosen right to left for pattern entries idx..L-1
        if idx == 0:
            return True
        upper = chosen_pos[0]
        if idx in pat.adjacent:
            candidates = [upper - 1] if upper - 1 >= idx - 1 else []
        else:
            candidates = range(upper - 1, idx - 2, -1)
        for pos in candidates:
            val = values[pos]
            ok = True
            for off, cp in enumerate(chosen_pos):
                if (pat.perm[idx - 1] < pat.perm[idx + off]) != (val < values[cp]):
                    ok = False
                    break
            if ok and rec(idx - 1, [pos] + chosen_pos):
                return True
        return False

    return rec(L - 1, [n - 1])


# -- enumerators ----------------------------------------------------------------


def _check_limit(group: str, n: int, limit=None):
    cap = limit if limit is not None else EXHAUSTIVE_LIMITS[group]
    if n > cap:
        raise LimitError(f"size {n} exceeds the exhaustive limit {cap} for {group}")
    if n < 1:
        raise LimitError("size must be at least 1")


@lru_cache(maxsize=None)
def invseq_class_raw(triples, words, n) -> tuple[tuple[int, ...], ...]:
    """All inversion sequences of length n avoiding every listed pattern,
    grown entry by entry with dead-prefix pruning."""
    out = []
    short_codes = frozenset(_word3_codes(w.word) for w in words if len(w.word) == 3)
    long_words = tuple(w for w in words if len(w.word) != 3)

    def extend(prefix, m):
        if m == n:
            out.append(prefix)
            return
        for v in range(m + 1):
            cand = prefix + (v,)
            if any(_triple_hit_at_end(cand, t) for t in triples):
                continue
            if short_codes and _word3_hit_at_end(cand, short_codes):
                continue
            if any(_word_hit_at_end(cand, w.word) for w in long_words):
                continue
            extend(cand, m + 1)

    extend((), 0)
    return tuple(out)


@lru_cache(maxsize=None)
def perm_class_raw(patterns, n) -> tuple[tuple[int, ...], ...]:
    """All permutations of 1..n avoiding every listed vincular pattern."""
    out = []

    def extend(cur):
        m = len(cur)
        if m == n:
            out.append(cur)
            return
        for a in range(1, m + 2):
            cand = tuple(v if v < a else v + 1 for v in cur) + (a,)
            if any(_vincular_hit_at_end(cand, p) for p in patterns):
                continue
            extend(cand)

    start = (1,)
    if n >= 1 and not any(_vincular_hit_at_end(start, p) for p in patterns):
        extend(start)
    return tuple(out)


@lru_cache(maxsize=None)
def dyck_words(n) -> tuple[str, ...]:
    out = []

    def rec(word, ups, downs):
        if ups == n and downs == n:
            out.append("".join(word))
            return
        if ups < n:
            word.append("U")
            rec(word, ups + 1, downs)
            word.pop()
        if downs < ups:
            word.append("D")
            rec(word, ups, downs + 1)
            word.pop()

    rec([], 0, 0)
    return tuple(out)


@lru_cache(maxsize=None)
def vmdyck_paths_raw(n) -> tuple[tuple[str, tuple[int, ...]], ...]:
    out = []
    for w in dyck_words(n):
        heights = [h for _, h in path_valleys(w)]
        for marks in product(*(range(h + 1) for h in heights)):
            out.append((w, marks))
    return tuple(out)


@lru_cache(maxsize=None)
def steady_words(n) -> tuple[str, ...]:
    """All steady words of size n via the diagonal-distance encoding.

    Any sequence (d_1..d_n), 0 <= d_k <= k-1, places up steps on their
    forced diagonals and yields a well-formed cone-confined W/D-connected
    word; only the two suffix conditions remain to be filtered.
    """
    out = []
    for ds in product(*(range(m) for m in range(1, n + 1))):
        pts = [(m + d, m - d) for m, d in enumerate(ds)]
        word = path_from_up_points(pts)
        if validate(make_path(word, kind=PathKind.STEADY)).ok:
            out.append(word)
    return tuple(out)


@lru_cache(maxsize=None)
def vmsteady_paths_raw(n) -> tuple[tuple[str, tuple[int, ...]], ...]:
    out = []
    for w in steady_words(n):
        heights = [h for _, h in path_valleys(w)]
        for marks in product(*(range(h + 1) for h in heights)):
            p = LatticePath(w, marks, PathKind.VMSTEADY)
            if validate(p).ok:
                out.append((w, marks))
    return tuple(out)


# raw trees are nested pairs (label, children_tuple); cheap to build in bulk


def _raw_insertions(tree, label, out, rebuild):
    lab, kids = tree
    leaf = (label, ())
    for gap in range(len(kids) + 1):
        out.append(rebuild((lab, kids[:gap] + (leaf,) + kids[gap:])))
    for i, child in enumerate(kids):
        pre, post = kids[:i], kids[i + 1 :]
        _raw_insertions(child, label, out, lambda sub, p=pre, q=post, l=lab: rebuild((l, p + (sub,) + q)))


def _raw_leaves(tree, out):
    lab, kids = tree
    if not kids:
        out.append(lab)
    for c in kids:
        _raw_leaves(c, out)


def _raw_to_tree(raw) -> OrderedTree:
    lab, kids = raw
    return OrderedTree(lab, tuple(_raw_to_tree(c) for c in kids))


@lru_cache(maxsize=None)
def increasing_ordered_trees(n) -> tuple[OrderedTree, ...]:
    """All (2n-1)!! increasing ordered trees on labels 0..n."""
    trees = [(0, ())]
    for label in range(1, n + 1):
        nxt: list = []
        for t in trees:
            _raw_insertions(t, label, nxt, lambda s: s)
        trees = nxt
    return tuple(_raw_to_tree(t) for t in trees)


@lru_cache(maxsize=None)
def increasing_leaf_trees(n) -> tuple[OrderedTree, ...]:
    """Increasing ordered trees whose pre-order leaves increase, by filtered
    insertion search.

    Pruning is a necessary condition only: a descent in the partial leaf
    sequence can only be repaired by hanging a later vertex below its right
    end, and distinct descents need distinct future vertices, so a partial
    tree with more leaf descents than remaining vertices is dead.
    """
    out = []

    def descents_and_ok(t):
        ls: list[int] = []
        _raw_leaves(t, ls)
        return sum(1 for a, b in zip(ls, ls[1:]) if a > b)

    def extend(tree, label):
        if label > n:
            out.append(tree)
            return
        nxt: list = []
        _raw_insertions(tree, label, nxt, lambda s: s)
        budget = n - label
        for t in nxt:
            if descents_and_ok(t) <= budget:
                extend(t, label + 1)

    extend((0, ()), 1)
    return tuple(_raw_to_tree(t) for t in out)


def _as_pattern_key(spec):
    if isinstance(spec, (RelationTriple, WordPattern, VincularPattern)):
        return (spec,)
    return tuple(spec)


def enumerate_class(kind: str, spec, n: int, limit=None):
    """Stream the size-n objects of a class, sorted by canonical text.

    kind is one of invseq-triple, invseq-words, perm-vincular,
    perm-classical, path-kind, tree; spec carries the patterns (or the
    PathKind).  Raises LimitError above the exhaustive cap.
    """
    if kind == "invseq-triple":
        _check_limit("invseq", n, limit)
        raw = invseq_class_raw(_as_pattern_key(spec), (), n)
        objs = [InversionSequence(v) for v in raw]
    elif kind == "invseq-words":
        _check_limit("invseq", n, limit)
        raw = invseq_class_raw((), _as_pattern_key(spec), n)
        objs = [InversionSequence(v) for v in raw]
    elif kind in ("perm-vincular", "perm-classical"):
        _check_limit("perm", n, limit)
        raw = perm_class_raw(_as_pattern_key(spec), n)
        objs = [Permutation(v) for v in raw]
    elif kind == "path-kind":
        _check_limit("path", n, limit)
        k = PathKind(spec)
        if k is PathKind.DYCK:
            objs = [make_path(w, kind=k) for w in dyck_words(n)]
        elif k is PathKind.VMDYCK:
            objs = [LatticePath(w, m, k) for w, m in vmdyck_paths_raw(n)]
        elif k is PathKind.STEADY:
            objs = [make_path(w, kind=k) for w in steady_words(n)]
        else:
            objs = [LatticePath(w, m, k) for w, m in vmsteady_paths_raw(n)]
    elif kind == "tree":
        _check_limit("tree", n, limit)
        objs = list(increasing_leaf_trees(n))
    else:
        raise ParseError(f"unknown class kind {kind!r}")
    return sorted(objs, key=to_text)


def count_class(kind: str, spec, n: int, limit=None) -> int:
    return len(enumerate_class(kind, spec, n, limit))


def equinumerosity_check(class_a, class_b, n_max: int, limit=None):
    """Per-size count table for two classes, each given as (kind, spec).

    Returns a list of (n, count_a, count_b, equal) rows for n = 1..n_max.
    """
    rows = []
    for n in range(1, n_max + 1):
        ca = count_class(class_a[0], class_a[1], n, limit)
        cb = count_class(class_b[0], class_b[1], n, limit)
        rows.append((n, ca, cb, ca == cb))
    return rows


# -- family table ----------------------------------------------------------------

INVSEQ_FAMILIES = {
    "cat": RelationTriple("geq", "dash", "geq"),
    "i-geq3": RelationTriple("geq", "geq", "geq"),
    "bax": RelationTriple("geq", "geq", "gt"),
    "semi": RelationTriple("geq", "gt", "dash"),
    "pcat": RelationTriple("eq", "gt", "gt"),
}

WORD_CHARACTERIZATIONS = {
    "cat": ("000", "100", "101", "110", "201", "210"),
    "i-geq3": ("000", "100", "110", "210"),
    "bax": ("100", "110", "210"),
    "semi": ("110", "210"),
    "pcat": ("110",),
}


def invseq_members(family: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Raw members of one of the five named inversion-sequence families."""
    return invseq_class_raw((INVSEQ_FAMILIES[family],), (), n)


def in_invseq_family(family: str, values) -> bool:
    return avoids_triple(InversionSequence(tuple(values)), INVSEQ_FAMILIES[family])
