"""Blueprints: the bracket subtree spanned by affected leaves plus its labelings.

A blueprint is stored in a canonical embedding of the bracket tree. Paths are
indexed by affected vertex (in FAS order): path 1 runs from the leftmost leaf
to the root, and every later path leaves its parent path through a right
child and then descends through left children only. Every subtree shape of
the bracket is isomorphic to exactly one such embedding, so the enumeration
never emits the same blueprint twice.

Labels are per-node vectors ``(l_1(v), ..., l_m(v))`` of type ranks (see
:mod:`tourfix.typesys`).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

from .bracket import BracketTree, evaluate_types_bracket
from .errors import CapExceeded
from .typesys import TypesDigraph, TypeSystem

__all__ = [
    "Blueprint",
    "ImportantVertexRecord",
    "DEFAULT_K_CAP",
    "check_blueprint",
    "enumerate_blueprints",
    "important_vertices",
    "blueprint_from_seeding",
    "canonicalize",
]

DEFAULT_K_CAP = 16

Labels = tuple[int, ...]


@dataclass(frozen=True)
class Blueprint:
    n: int
    leaf_order: tuple[int, ...]
    labels: tuple[tuple[int, Labels], ...]

    @cached_property
    def label_map(self) -> dict[int, Labels]:
        return dict(self.labels)

    @property
    def m(self) -> int:
        return len(self.labels[0][1])

    @property
    def tree(self) -> BracketTree:
        return BracketTree(self.n)

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(self.label_map)

    def children(self, v: int) -> list[int]:
        lm = self.label_map
        return [c for c in (2 * v, 2 * v + 1) if c in lm and v < self.n]

    def __getitem__(self, v: int) -> Labels:
        return self.label_map[v]

    @cached_property
    def path_nodes(self) -> tuple[tuple[int, ...], ...]:
        """Greedy path decomposition, each path listed leaf first."""
        lm = self.label_map
        leaf_of = {lm[v][0]: v for v in lm if v >= self.n}
        covered: set[int] = set()
        paths = []
        for j in range(len(self.leaf_order)):
            v = leaf_of[2 * j + 1]
            path = []
            while v >= 1 and v not in covered:
                path.append(v)
                v >>= 1
            covered.update(path)
            paths.append(tuple(path))
        return tuple(paths)

    @property
    def path_attach(self) -> tuple[tuple[int, int], ...]:
        """For paths 2.. : (index of parent path, height of the path's top)."""
        owner = {v: j for j, p in enumerate(self.path_nodes) for v in p}
        tree = self.tree
        out = []
        for path in self.path_nodes[1:]:
            top = path[-1]
            out.append((owner[top >> 1], tree.height(top)))
        return tuple(out)

    @property
    def label_runs(self) -> tuple[tuple[tuple[tuple[int, int], ...], ...], ...]:
        """Run-length labels along each extended path (leaf to root), per scenario."""
        lm = self.label_map
        out = []
        for path in self.path_nodes:
            ext = BracketTree(self.n).ancestors(path[0])
            per_scen = []
            for i in range(self.m):
                runs: list[list[int]] = []
                for v in ext:
                    t = lm[v][i]
                    if runs and runs[-1][0] == t:
                        runs[-1][1] += 1
                    else:
                        runs.append([t, 1])
                per_scen.append(tuple((t, c) for t, c in runs))
            out.append(tuple(per_scen))
        return tuple(out)

    @classmethod
    def from_encoding(cls, n, leaf_order, path_attach, label_runs) -> "Blueprint":
        """Rebuild from (path attachments, leaf order, label runs)."""
        tree = BracketTree(n)
        paths = [tree.ancestors(tree.leaf(0))]
        for parent, height in path_attach:
            anchor = next(v for v in paths[parent] if tree.height(v) == height + 1)
            top = 2 * anchor + 1
            leaf = top << height
            paths.append(tree.ancestors(leaf)[: height + 1])
        labels: dict[int, Labels] = {}
        for j, per_scen in enumerate(label_runs):
            ext = tree.ancestors(paths[j][0])
            cols = []
            for runs in per_scen:
                seq = [t for t, c in runs for _ in range(c)]
                if len(seq) != len(ext):
                    raise ValueError(f"runs of path {j} cover {len(seq)} nodes, expected {len(ext)}")
                cols.append(seq)
            for idx, v in enumerate(ext):
                vec = tuple(col[idx] for col in cols)
                if labels.setdefault(v, vec) != vec:
                    raise ValueError(f"paths disagree on node {v}")
        return cls(n, tuple(leaf_order), tuple(sorted(labels.items())))

    def dump(self) -> str:
        return f"{self.path_attach};{self.leaf_order};{self.label_runs}"


@dataclass(frozen=True)
class ImportantVertexRecord:
    j_tuples: tuple[tuple[int, int, int], ...]
    k_tuples: tuple[tuple[int, int, int, int], ...]


def _tables(digraphs: Sequence[TypesDigraph]):
    return tuple(d.table for d in digraphs)


def _combine(tables, a: Labels, b: Labels) -> Labels:
    return tuple(tab[x][y] for tab, x, y in zip(tables, a, b))


def check_blueprint(bp: Blueprint, digraphs: Sequence[TypesDigraph], ts: TypeSystem) -> bool:
    """Structural sanity plus the three local conditions on the labelings."""
    tables = _tables(digraphs)
    m = len(tables)
    lm = bp.label_map
    n = bp.n
    if 1 not in lm:
        return False
    leaf_labels = []
    for v, vec in lm.items():
        if not 1 <= v < 2 * n or len(vec) != m:
            return False
        if v > 1 and (v >> 1) not in lm:
            return False
        kids = bp.children(v)
        if len(kids) == 2:
            if vec != _combine(tables, lm[kids[0]], lm[kids[1]]):
                return False
        elif len(kids) == 1:
            child = lm[kids[0]]
            if not any(vec == _combine(tables, child, (t,) * m) for t in ts.flex):
                return False
        else:
            if v < n or len(set(vec)) != 1 or ts.is_flex(vec[0]):
                return False
            leaf_labels.append(vec[0])
    return sorted(leaf_labels) == list(ts.singular)


def important_vertices(bp: Blueprint) -> ImportantVertexRecord:
    lm = bp.label_map
    js, ks = [], []
    for v in sorted(lm):
        kids = bp.children(v)
        if len(kids) != 1 or v >= bp.n:
            continue
        u = kids[0]
        w = u ^ 1
        if lm[v] == lm[u]:
            js.append((u, v, w))
        else:
            i = next(i for i, (a, b) in enumerate(zip(lm[v], lm[u])) if a != b)
            ks.append((u, v, w, i))
    return ImportantVertexRecord(tuple(js), tuple(ks))


def canonicalize(n: int, label_map: dict[int, Labels], leaf_order) -> Blueprint:
    """Move an arbitrarily embedded labeled subtree into the canonical embedding."""
    out: dict[int, Labels] = {}

    def min_leaf(v):
        if v >= n:
            return label_map[v][0]
        return min(min_leaf(c) for c in (2 * v, 2 * v + 1) if c in label_map)

    def place(src, dst):
        out[dst] = label_map[src]
        if src >= n:
            return
        kids = [c for c in (2 * src, 2 * src + 1) if c in label_map]
        kids.sort(key=min_leaf)
        for off, c in enumerate(kids):
            place(c, 2 * dst + off)

    place(1, 1)
    return Blueprint(n, tuple(leaf_order), tuple(sorted(out.items())))


def blueprint_from_seeding(seeding: Sequence[int], digraphs: Sequence[TypesDigraph], ts: TypeSystem) -> Blueprint:
    """The blueprint generated by a player seeding, in canonical embedding."""
    n = len(seeding)
    beta = [ts.type_of[p] for p in seeding]
    brackets = [evaluate_types_bracket(beta, d) for d in digraphs]
    affected = set(ts.affected)
    keep: set[int] = set()
    for pos, p in enumerate(seeding):
        if p in affected:
            keep.update(BracketTree(n).ancestors(n + pos))
    label_map = {v: tuple(b[v] for b in brackets) for v in keep}
    return canonicalize(n, label_map, ts.affected)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _splits(S: int, cap: int):
    """Unordered splits of bitmask S into two nonempty parts of size <= cap.

    The part holding the lowest set bit comes first.
    """
    low = S & -S
    rest = S ^ low
    sub = rest
    while True:
        s1 = low | (rest ^ sub)
        s2 = sub
        if s2 and _popcount(s1) <= cap and _popcount(s2) <= cap:
            yield s1, s2
        if sub == 0:
            break
        sub = (sub - 1) & rest


def enumerate_blueprints(
    digraphs: Sequence[TypesDigraph],
    n: int,
    ts: TypeSystem,
    winner: int | None = None,
    k: int | None = None,
    k_cap: int = DEFAULT_K_CAP,
) -> Iterator[Blueprint]:
    """Lazily yield every blueprint consistent with the Types-digraphs.

    With ``winner`` (a player index) only blueprints whose root is labeled by
    that player in every scenario are produced. Each yielded blueprint
    satisfies :func:`check_blueprint`; no blueprint is produced twice.
    """
    if k is not None and k > k_cap:
        raise CapExceeded(f"parameter k = {k} exceeds cap {k_cap}")
    tree = BracketTree(n)
    H = tree.depth
    tables = _tables(digraphs)
    m = len(tables)
    ka = len(ts.affected)
    flex = ts.flex

    @lru_cache(maxsize=None)
    def reach(h: int, S: int) -> tuple[Labels, ...]:
        """Sorted label vectors achievable at a height-h node spanning S."""
        if _popcount(S) > (1 << h):
            return ()
        if h == 0:
            if _popcount(S) != 1:
                return ()
            j = S.bit_length() - 1
            return ((2 * j + 1,) * m,)
        res: set[Labels] = set()
        half = 1 << (h - 1)
        if _popcount(S) <= half:
            for lu in reach(h - 1, S):
                for t in flex:
                    res.add(_combine(tables, lu, (t,) * m))
        for s1, s2 in _splits(S, half):
            r2 = reach(h - 1, s2)
            for l1 in reach(h - 1, s1):
                for l2 in r2:
                    res.add(_combine(tables, l1, l2))
        return tuple(sorted(res))

    @lru_cache(maxsize=None)
    def reach_set(h: int, S: int) -> frozenset:
        return frozenset(reach(h, S))

    def gen(v: int, h: int, S: int, L: Labels):
        head = ((v, L),)
        if h == 0:
            yield head
            return
        half = 1 << (h - 1)
        if _popcount(S) <= half:
            below = reach(h - 1, S)
            if L in reach_set(h - 1, S):
                for sub in gen(2 * v, h - 1, S, L):
                    yield head + sub
            targets = sorted({x for x in L if ts.is_flex(x)})
            for lu in below:
                if lu == L:
                    continue
                if any(_combine(tables, lu, (t,) * m) == L for t in targets):
                    for sub in gen(2 * v, h - 1, S, lu):
                        yield head + sub
        for s1, s2 in _splits(S, half):
            r2 = reach(h - 1, s2)
            pairs = [(l1, l2) for l1 in reach(h - 1, s1) for l2 in r2 if _combine(tables, l1, l2) == L]
            for l1, l2 in pairs:
                for a in gen(2 * v, h - 1, s1, l1):
                    for b in gen(2 * v + 1, h - 1, s2, l2):
                        yield head + a + b

    full = (1 << ka) - 1
    if winner is not None:
        roots = [(ts.singular_type(winner),) * m]
        if roots[0] not in reach_set(H, full):
            return
    else:
        roots = list(reach(H, full))
    for L in roots:
        for nodes in gen(1, H, full, L):
            yield Blueprint(n, ts.affected, tuple(sorted(nodes)))
