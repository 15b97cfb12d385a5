"""Automorphism groups, canonical forms and isomorphism tests.

One backtracking search over the individualization-refinement tree produces
both the canonical labeling (lexicographically smallest adjacency encoding
over the tree's terminal leaves) and generators for the full automorphism
group.  Discovered automorphisms prune sibling branches; prefix comparisons
against the first leaf and the best leaf prune everything that can neither
improve the canonical candidate nor witness a new automorphism.
"""

from __future__ import annotations

import weakref
from collections import deque
from dataclasses import dataclass
from itertools import permutations

from .constructions import Graph, girth, is_bipartite
from .graph6 import encode_graph6_from_columns
from .permgroups import Permutation, PermGroup, _Chain


@dataclass(frozen=True)
class Certificate:
    """Canonical graph6 bytes plus the relabeling that produces them.

    ``graph.relabel(relabeling.images)`` is the canonically labeled graph.
    """

    graph6: bytes
    relabeling: Permutation


def is_automorphism(graph: Graph, perm: Permutation) -> bool:
    if perm.degree != graph.n:
        return False
    img = perm.images
    masks = graph.adjacency_masks
    for v in range(graph.n):
        target = 0
        for w in graph.neighbors(v):
            target |= 1 << img[w]
        if masks[img[v]] != target:
            return False
    return True


_PAIR_REFINE_MIN_CELL = 6


def _refine(masks: tuple[int, ...], parts: list[int], splitters: list[int]) -> list[int]:
    """Equitable refinement of an ordered cell-mask partition.

    Every newly created cell is pushed as a splitter, so every cell ends up
    with uniform neighbor counts into every other cell.  Cells split into
    count-ascending subcells, which keeps the procedure label-independent.
    While large cells survive that, a stronger pass splits by the multiset
    of common-neighbor counts against each cell; graphs with flat 1-WL
    colorings (design-like incidence structures) stall without it.
    """
    parts = list(parts)
    queue = deque(splitters)
    while True:
        while queue:
            w = queue.popleft()
            out = []
            for cell in parts:
                if cell & (cell - 1) == 0:
                    out.append(cell)
                    continue
                buckets: dict[int, int] = {}
                m = cell
                while m:
                    bit = m & -m
                    v = bit.bit_length() - 1
                    cnt = (masks[v] & w).bit_count()
                    buckets[cnt] = buckets.get(cnt, 0) | bit
                    m ^= bit
                if len(buckets) == 1:
                    out.append(cell)
                else:
                    for cnt in sorted(buckets):
                        sub = buckets[cnt]
                        out.append(sub)
                        queue.append(sub)
            parts = out
        if max((cell.bit_count() for cell in parts), default=0) < _PAIR_REFINE_MIN_CELL:
            return parts
        # common-neighbor signatures against every cell, in sequence order
        sig: dict[int, tuple] = {}
        for cell in parts:
            m = cell
            while m:
                bit = m & -m
                v = bit.bit_length() - 1
                mv = masks[v]
                row = []
                for other in parts:
                    counts = []
                    mm = other
                    while mm:
                        b2 = mm & -mm
                        counts.append((mv & masks[b2.bit_length() - 1]).bit_count())
                        mm ^= b2
                    counts.sort()
                    row.append(tuple(counts))
                sig[v] = tuple(row)
                m ^= bit
        out = []
        changed = False
        for cell in parts:
            if cell & (cell - 1) == 0:
                out.append(cell)
                continue
            buckets2: dict[tuple, int] = {}
            m = cell
            while m:
                bit = m & -m
                v = bit.bit_length() - 1
                buckets2[sig[v]] = buckets2.get(sig[v], 0) | bit
                m ^= bit
            if len(buckets2) == 1:
                out.append(cell)
            else:
                changed = True
                for key in sorted(buckets2):
                    sub = buckets2[key]
                    out.append(sub)
                    queue.append(sub)
        parts = out
        if not changed:
            return parts


_EQ, _DIFF, _LT, _GT = 0, 1, 2, 3


class _Search:
    """Shared state for one individualization-refinement tree walk."""

    def __init__(self, graph: Graph, seeds: tuple[Permutation, ...] = ()):
        self.n = graph.n
        self.masks = graph.adjacency_masks
        self.cols: list[int] = []
        self.lab: list[int] = []
        self.posof = [-1] * self.n
        self.prefix_mask = 0
        self.path: list[int] = []
        self.theta: tuple[tuple[int, ...], list[int]] | None = None
        self.zeta: tuple[tuple[int, ...], list[int]] | None = None
        self.zeta_version = 0
        self.gens: list[tuple[int, ...]] = []
        self._gen_seen: set[tuple[int, ...]] = set()
        self.graph = graph
        for s in seeds:
            self._add_gen(s.images, verify=False)

    # -- automorphism bookkeeping

    def _add_gen(self, images: tuple[int, ...], verify: bool = True):
        if images in self._gen_seen or all(i == x for i, x in enumerate(images)):
            return
        if verify:
            p = Permutation.__new__(Permutation)
            p.images = images
            if not is_automorphism(self.graph, p):
                raise AssertionError("search produced a non-automorphism; refinement is buggy")
        self._gen_seen.add(images)
        self.gens.append(images)

    def _path_stabilizer_gens(self) -> list[tuple[int, ...]]:
        """Generators of the subgroup of discovered automorphisms fixing the
        current individualization path pointwise.

        Plain generator filtering misses stabilizer elements that are only
        reachable as products, which cripples pruning on highly symmetric
        graphs, so when filtering loses anything a chain based along the
        path recovers the full stabilizer.
        """
        path = self.path
        direct = [g for g in self.gens if all(g[p] == p for p in path)]
        if not path or len(direct) == len(self.gens):
            return direct
        chain = _Chain(self.n, self.gens, base_hint=path)
        k = len(path)
        if k >= len(chain.sgd):
            return []
        return list(dict.fromkeys(chain.sgd[k]))

    def _orbit_closure(self, seed: set[int], gens: list[tuple[int, ...]]) -> set[int]:
        out = set(seed)
        queue = list(seed)
        while queue:
            x = queue.pop()
            for g in gens:
                y = g[x]
                if y not in out:
                    out.add(y)
                    queue.append(y)
        return out

    # -- prefix columns

    def _extend_prefix(self, parts: list[int]) -> tuple[int, bool]:
        """Add new leading singletons to the prefix; returns (#added, is_leaf).

        Refinement never disturbs existing leading singletons, so cells
        before the current prefix length are exactly the prefix itself.
        """
        added = 0
        leaf = True
        start = len(self.lab)
        for idx, cell in enumerate(parts):
            if cell & (cell - 1) != 0:
                leaf = False
                break
            if idx < start:
                continue
            v = cell.bit_length() - 1
            p = len(self.lab)
            col = 0
            m = self.masks[v] & self.prefix_mask
            posof = self.posof
            while m:
                bit = m & -m
                col |= 1 << (p - 1 - posof[bit.bit_length() - 1])
                m ^= bit
            self.lab.append(v)
            self.cols.append(col)
            self.posof[v] = p
            self.prefix_mask |= cell
            added += 1
        return added, leaf

    def _retract_prefix(self, count: int):
        for _ in range(count):
            v = self.lab.pop()
            self.cols.pop()
            self.posof[v] = -1
            self.prefix_mask ^= 1 << v

    # -- tree walk

    def run(self):
        parts = _refine(self.masks, [(1 << self.n) - 1] if self.n else [], [(1 << self.n) - 1] if self.n else [])
        self._explore(parts, _EQ, _EQ, 0)

    def _explore(self, parts: list[int], theta_cmp: int, zeta_cmp: int, zeta_ver: int):
        added, leaf = self._extend_prefix(parts)
        try:
            k = len(self.lab)
            new_lo = k - added
            if self.theta is not None:
                tcols = self.theta[0]
                if theta_cmp == _EQ:
                    for p in range(new_lo, k):
                        if self.cols[p] != tcols[p]:
                            theta_cmp = _DIFF
                            break
                zcols = self.zeta[0]
                if zeta_ver != self.zeta_version and zeta_cmp != _GT:
                    zeta_cmp = _EQ
                    zeta_ver = self.zeta_version
                    lo = 0
                else:
                    lo = new_lo
                if zeta_cmp == _EQ:
                    for p in range(lo, k):
                        if self.cols[p] < zcols[p]:
                            zeta_cmp = _LT
                            break
                        if self.cols[p] > zcols[p]:
                            zeta_cmp = _GT
                            break
                if theta_cmp == _DIFF and zeta_cmp == _GT:
                    return

            if leaf:
                self._handle_leaf(theta_cmp, zeta_cmp)
                return

            # first smallest non-singleton cell
            best_idx, best_size = -1, self.n + 1
            for idx, cell in enumerate(parts):
                size = cell.bit_count()
                if 1 < size < best_size:
                    best_idx, best_size = idx, size
            cell = parts[best_idx]
            candidates = []
            m = cell
            while m:
                bit = m & -m
                candidates.append(bit.bit_length() - 1)
                m ^= bit
            rest_template = parts[:best_idx] + [0, cell] + parts[best_idx + 1 :]

            done: set[int] = set()
            stab_gens: list[tuple[int, ...]] = []
            stab_version = -1
            for v in candidates:
                if done:
                    if stab_version != len(self.gens):
                        stab_gens = self._path_stabilizer_gens()
                        stab_version = len(self.gens)
                    if stab_gens and v in self._orbit_closure(done, stab_gens):
                        done.add(v)
                        continue
                child = list(rest_template)
                child[best_idx] = 1 << v
                child[best_idx + 1] = cell ^ (1 << v)
                refined = _refine(self.masks, child, [child[best_idx], child[best_idx + 1]])
                self.path.append(v)
                self._explore(refined, theta_cmp, zeta_cmp, zeta_ver)
                self.path.pop()
                done.add(v)
        finally:
            self._retract_prefix(added)

    def _handle_leaf(self, theta_cmp: int, zeta_cmp: int):
        encoding = tuple(self.cols)
        lab = list(self.lab)
        if self.theta is None:
            self.theta = (encoding, lab)
            self.zeta = (encoding, lab)
            self.zeta_version += 1
            return
        if theta_cmp == _EQ:
            ref = self.theta[1]
            images = [0] * self.n
            for pos in range(self.n):
                images[ref[pos]] = lab[pos]
            self._add_gen(tuple(images))
        if zeta_cmp == _LT:
            self.zeta = (encoding, lab)
            self.zeta_version += 1
        elif zeta_cmp == _EQ and theta_cmp != _EQ:
            ref = self.zeta[1]
            images = [0] * self.n
            for pos in range(self.n):
                images[ref[pos]] = lab[pos]
            self._add_gen(tuple(images))


_cache: "weakref.WeakKeyDictionary[Graph, tuple[bytes, Permutation, tuple[Permutation, ...]]]" = (
    weakref.WeakKeyDictionary()
)


def _search(graph: Graph, seeds: tuple[Permutation, ...] = ()) -> tuple[bytes, Permutation, tuple[Permutation, ...]]:
    try:
        hit = _cache.get(graph)
    except TypeError:
        hit = None
    if hit is not None:
        return hit
    if graph.n == 0:
        result = (encode_graph6_from_columns(0, []), Permutation(()), ())
    else:
        s = _Search(graph, seeds)
        s.run()
        cols, lab = s.zeta
        images = [0] * graph.n
        for pos, v in enumerate(lab):
            images[v] = pos
        relab = Permutation(images)
        gens = []
        for t in s.gens:
            p = Permutation.__new__(Permutation)
            p.images = t
            gens.append(p)
        # cols[0] is the empty column of position 0; graph6 starts at column 1
        result = (encode_graph6_from_columns(graph.n, list(cols)[1:]), relab, tuple(gens))
    try:
        _cache[graph] = result
    except TypeError:
        pass
    return result


def automorphism_group(graph: Graph, known: tuple[Permutation, ...] = ()) -> PermGroup:
    """Generators of the full automorphism group.

    `known` may carry externally obtained automorphisms to improve pruning;
    each is verified before use and the result is identical either way.
    """
    for p in known:
        if not is_automorphism(graph, p):
            raise ValueError("known automorphism does not preserve the edge set")
    _, _, gens = _search(graph, tuple(known))
    return PermGroup(list(gens) + list(known), degree=graph.n)


def canonical_form(graph: Graph) -> Certificate:
    cert, relab, _ = _search(graph)
    return Certificate(graph6=cert, relabeling=relab)


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Certificate equality behind cheap invariant screens."""
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    if is_bipartite(g1) != is_bipartite(g2):
        return False
    if girth(g1) != girth(g2):
        return False
    return canonical_form(g1).graph6 == canonical_form(g2).graph6


def brute_force_automorphisms(graph: Graph) -> PermGroup:
    """All vertex permutations filtered by adjacency preservation.

    Oracle only; hard-capped at 10 vertices.
    """
    if graph.n > 10:
        raise ValueError(f"brute force capped at 10 vertices, got {graph.n}")
    masks = graph.adjacency_masks
    edges = graph.edges()
    found = []
    for perm in permutations(range(graph.n)):
        ok = True
        for u, v in edges:
            if not (masks[perm[u]] >> perm[v]) & 1:
                ok = False
                break
        if ok:
            p = Permutation.__new__(Permutation)
            p.images = perm
            found.append(p)
    return PermGroup(found, degree=graph.n)
