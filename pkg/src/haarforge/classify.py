"""Symmetry classification: vertex/arc transitivity, Cayley and Haar tests.

The Cayley test searches the automorphism group for a subgroup acting
regularly on the vertices; the Haar test searches the part-preserving
subgroup for one acting regularly on each side of the bipartition.  Both
searches are exhaustive DFS over coset choices with semiregularity pruning,
so a negative answer is a certificate of absence, not a timeout.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .autsearch import automorphism_group, is_automorphism
from .constructions import (
    Bipartition,
    DoublePetersenLayout,
    Graph,
    bipartition,
    double_generalized_petersen,
    girth,
    haar_graph,
)
from .groups import FiniteGroup, group_automorphisms, semidirect_cyclic
from .permgroups import Permutation, PermGroup, _tmul


class SearchCapExceeded(RuntimeError):
    """Regular-subgroup search ran out of its stabilizer enumeration budget
    before it could either find a witness or certify absence."""


# --- regular subgroup search -------------------------------------------------

_ELEMENT_BUDGET = 1_000_000


def _closure_semiregular(
    gens: list[tuple[int, ...]], degree: int, cap: int
) -> list[tuple[int, ...]] | None:
    """Close a generator set, or None once it exceeds `cap` elements or
    contains a non-semiregular non-identity element.

    Elements of a group that is regular on the target point set have uniform
    cycle structure, so anything else certifies a dead branch.
    """
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = _tmul(p, g)
            if q in elems:
                continue
            if len(elems) >= cap:
                return None
            if not _is_uniform_nontrivial(q):
                return None
            elems.add(q)
            frontier.append(q)
    return sorted(elems)


def _cycle_length(p: tuple[int, ...]) -> int:
    """Cycle length of a uniform permutation (= its order)."""
    ln = 1
    j = p[0]
    while j != 0:
        j = p[j]
        ln += 1
    return ln


def _is_uniform_nontrivial(p: tuple[int, ...]) -> bool:
    n = len(p)
    seen = bytearray(n)
    length = 0
    for i in range(n):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = p[j]
            ln += 1
        if length == 0:
            length = ln
        elif ln != length:
            return False
    return length > 1


_PROBE_THRESHOLD = 10_000
_PROBE_SAMPLES = 8_192
_PROBE_CHUNK = 512


class _CandidatePool:
    """Lazy, shared filter of stabilizer-coset elements.

    The anchor stabilizer is enumerated at most once across the whole DFS
    (each pull charged against a budget), and per target point only the
    uniform-cycle elements of the corresponding coset are kept.  For huge
    stabilizers a probe phase tries seeded uniform random samples first, so
    searches that succeed never see most of the group; certifying absence
    still requires exhausting the systematic enumeration, which raises once
    the budget runs out.
    """

    def __init__(self, stab: PermGroup, reps: dict[int, tuple[int, ...]], budget: int):
        self._stab = stab
        self._stab_iter = stab.elements()
        self._stab_seen: list[tuple[int, ...]] = []
        self._stab_done = False
        self._budget = budget
        self._reps = reps
        self._lists: dict[int, list[tuple[int, ...]]] = {}
        self._sets: dict[int, set[tuple[int, ...]]] = {}
        self._filtered_to: dict[int, int] = {}
        self._probes: list[tuple[int, ...]] = []
        self._probed_to: dict[int, int] = {}
        self._probing = stab.order() > _PROBE_THRESHOLD
        if self._probing:
            self._rng = random.Random(0xA17)
            self._chain = stab._built_chain()

    def _sample_stab(self) -> tuple[int, ...]:
        out = tuple(range(self._stab.degree))
        for trans in self._chain.transversals:
            pick = self._rng.choice(sorted(trans))
            out = _tmul(out, trans[pick])
        return out

    def _pull(self) -> bool:
        if self._stab_done:
            return False
        if self._budget <= 0:
            raise SearchCapExceeded(
                "stabilizer enumeration budget exhausted before the search could finish"
            )
        self._budget -= 1
        try:
            h = next(self._stab_iter)
        except StopIteration:
            self._stab_done = True
            return False
        self._stab_seen.append(h.images)
        return True

    def _probe_chunk(self, x: int, lst: list, seen: set):
        """Scan one chunk of shared probe samples for coset hits, longest
        uniform cycles first: big cyclic steps cover the target set with
        far less backtracking than stacks of involutions."""
        j = self._probed_to.get(x, 0)
        end = min(j + _PROBE_CHUNK, _PROBE_SAMPLES)
        while len(self._probes) < end:
            self._probes.append(self._sample_stab())
        rep = self._reps[x]
        hits = []
        for h in self._probes[j:end]:
            g = _tmul(h, rep)
            if g not in seen and _is_uniform_nontrivial(g):
                hits.append(g)
                seen.add(g)
        hits.sort(key=lambda g: -_cycle_length(g))
        lst.extend(hits)
        self._probed_to[x] = end

    def candidates(self, x: int) -> Iterator[tuple[int, ...]]:
        lst = self._lists.setdefault(x, [])
        seen = self._sets.setdefault(x, set())
        rep = self._reps[x]
        i = 0
        while True:
            if i < len(lst):
                yield lst[i]
                i += 1
                continue
            if self._probing and self._probed_to.get(x, 0) < _PROBE_SAMPLES:
                self._probe_chunk(x, lst, seen)
                continue
            grew = False
            j = self._filtered_to.get(x, 0)
            while not grew:
                if j < len(self._stab_seen):
                    g = _tmul(self._stab_seen[j], rep)
                    j += 1
                    if g not in seen and _is_uniform_nontrivial(g):
                        lst.append(g)
                        seen.add(g)
                        grew = True
                elif not self._pull():
                    break
            self._filtered_to[x] = j
            if not grew:
                return


def iter_regular_subgroups(
    group: PermGroup,
    points: Sequence[int] | None = None,
    element_budget: int = _ELEMENT_BUDGET,
) -> Iterator[PermGroup]:
    """Yield every subgroup of `group` acting regularly on `points`.

    DFS over transversal choices: for the smallest point outside the orbit
    of the anchor, try each stabilizer-coset element mapping the anchor
    there, close, and backtrack on overshoot or a non-semiregular element.
    A regular subgroup contains exactly one element per choice, so each one
    is produced exactly once.  Exhaustion certifies absence.
    """
    degree = group.degree
    pts = sorted(range(degree) if points is None else set(points))
    if not pts:
        return
    pset = set(pts)
    for g in group.generators:
        for x in pts:
            if g.images[x] not in pset:
                raise ValueError("point set is not invariant under the group")
    anchor = pts[0]
    orbit = set(group.orbit(anchor))
    if orbit != pset:
        return  # not transitive on the points: no regular subgroup
    size = len(pts)

    stab = group.point_stabilizer(anchor)
    reps = {x: p.images for x, p in group.orbit_transversal(anchor).items()}
    pool = _CandidatePool(stab, reps, element_budget)

    def dfs(chosen: list[tuple[int, ...]], elements: list[tuple[int, ...]]) -> Iterator[PermGroup]:
        covered = {e[anchor] for e in elements}
        if len(elements) == size and covered == pset:
            perms = []
            for t in chosen:
                p = Permutation.__new__(Permutation)
                p.images = t
                perms.append(p)
            yield PermGroup(perms, degree=degree)
            return
        target = min(pset - covered)
        for g in pool.candidates(target):
            closed = _closure_semiregular(chosen + [g], degree, size)
            if closed is None or len(closed) > size:
                continue
            reached = {e[anchor] for e in closed}
            if len(reached) != len(closed):
                continue  # two elements agree on the anchor: not regular on pts
            yield from dfs(chosen + [g], closed)

    yield from dfs([], [tuple(range(degree))])


def find_regular_subgroup(
    group: PermGroup,
    points: Sequence[int] | None = None,
    element_budget: int = _ELEMENT_BUDGET,
) -> PermGroup | None:
    """First subgroup regular on `points`, or None when none exists."""
    for sub in iter_regular_subgroups(group, points, element_budget):
        return sub
    return None


# --- graph-level predicates ----------------------------------------------------


def is_vertex_transitive(graph: Graph) -> bool:
    if graph.n <= 1:
        return True
    return len(automorphism_group(graph).orbits()) == 1


def is_arc_transitive(graph: Graph) -> bool:
    """One orbit on ordered adjacent pairs, via generator closure of one arc."""
    if graph.edge_count == 0:
        raise ValueError("arc-transitivity is undefined for edgeless graphs")
    gens = [g.images for g in automorphism_group(graph).generators]
    u0 = next(v for v in range(graph.n) if graph.degree(v) > 0)
    start = (u0, graph.neighbors(u0)[0])
    seen = {start}
    queue = [start]
    while queue:
        u, v = queue.pop()
        for g in gens:
            arc = (g[u], g[v])
            if arc not in seen:
                seen.add(arc)
                queue.append(arc)
    return len(seen) == 2 * graph.edge_count


# --- Cayley witnesses over a Haar realization ---------------------------------


def _abelian_cayley_witness(group: FiniteGroup, graph: Graph) -> PermGroup | None:
    """Regular subgroup of Aut(H(G, S)) for abelian G: right translations
    extended by the inversion flip between the parts.  Verified before use."""
    n = group.order
    gens = []
    for a in group.generating_set():
        images = [0] * (2 * n)
        for x in range(n):
            images[x] = group.table[x][a]
            images[n + x] = n + group.table[x][a]
        gens.append(Permutation(images))
    flip = [0] * (2 * n)
    for x in range(n):
        flip[x] = n + group.inv[x]
        flip[n + x] = group.inv[x]
    gens.append(Permutation(flip))
    for p in gens:
        if not is_automorphism(graph, p):
            return None
    witness = PermGroup(gens, degree=2 * n)
    try:
        if witness.is_regular_on(range(2 * n)):
            return witness
    except ValueError:
        return None
    return None


def _translation_extension_witness(
    group: FiniteGroup,
    subset: Sequence[int],
    graph: Graph,
    group_auts: Sequence[Sequence[int]],
) -> PermGroup | None:
    """Regular subgroup containing the right-translation action, if any.

    A part-swapping element normalizing the translations is forced into the
    form (x, 0) -> (a*s(x), 1), (x, 1) -> (b*s(x), 0) for a group
    automorphism s, and that map preserves edges exactly when
    a * s(S)^-1 * b^-1 = S, so scanning (s, a, b) decides completely whether
    the translations extend to a vertex-regular group.
    """
    n = group.order
    t = group.table
    inv = group.inv
    sset = frozenset(subset)
    rho_gens = []
    for g in group.generating_set():
        images = [0] * (2 * n)
        for x in range(n):
            images[x] = t[x][g]
            images[n + x] = n + t[x][g]
        rho_gens.append(tuple(images))
    for sigma in group_auts:
        sig_inv_s = [sigma[inv[s]] for s in subset]  # sigma(S)^-1 elementwise
        x0 = sig_inv_s[0]
        for a in range(n):
            ax0 = t[a][x0]
            for target in sset:
                binv = t[inv[ax0]][target]
                if not all(t[t[a][x]][binv] in sset for x in sig_inv_s):
                    continue
                b = inv[binv]
                tau = [0] * (2 * n)
                for x in range(n):
                    tau[x] = n + t[a][sigma[x]]
                    tau[n + x] = t[b][sigma[x]]
                closed = _closure_semiregular(rho_gens + [tuple(tau)], 2 * n, 2 * n)
                if closed is None or len(closed) != 2 * n:
                    continue
                witness_gens = []
                for c in rho_gens + [tuple(tau)]:
                    p = Permutation.__new__(Permutation)
                    p.images = c
                    witness_gens.append(p)
                witness = PermGroup(witness_gens, degree=2 * n)
                if not all(is_automorphism(graph, p) for p in witness.generators):
                    continue
                if witness.is_regular_on(range(2 * n)):
                    return witness
    return None


def haar_structure(
    part_regular: PermGroup, graph: Graph, parts: Bipartition
) -> tuple[FiniteGroup, tuple[int, ...], Permutation]:
    """Read a Haar realization off a subgroup regular on both parts.

    Labels each side by the unique element carrying the side's base vertex
    there; the subgroup then acts by right translation, and the edges at the
    base vertex give the connection set.  Returns the abstract group, the
    connection set, and the vertex bijection onto haar_graph(group, subset).
    """
    half = len(parts.part0)
    elems = sorted(part_regular.elements(), key=lambda p: p.images)
    ident = Permutation.identity(graph.n)
    elems.remove(ident)
    elems.insert(0, ident)
    index_of = {p.images: i for i, p in enumerate(elems)}
    base0, base1 = parts.part0[0], parts.part1[0]
    label0 = {p.images[base0]: i for i, p in enumerate(elems)}
    label1 = {p.images[base1]: i for i, p in enumerate(elems)}
    table = tuple(
        tuple(index_of[(p * q).images] for q in elems) for p in elems
    )
    inv = [0] * half
    for i, row in enumerate(table):
        inv[i] = row.index(0)
    group = FiniteGroup(name=f"structure{half}", table=table, inv=tuple(inv))
    subset = tuple(sorted(label1[w] for w in graph.neighbors(base0)))
    phi = [0] * graph.n
    for v in parts.part0:
        phi[v] = label0[v]
    for w in parts.part1:
        phi[w] = half + label1[w]
    return group, subset, Permutation(phi)


def _bipartite_regular_subgroup(graph: Graph, aut: PermGroup, parts: Bipartition) -> PermGroup | None:
    """Vertex-regular subgroup for a connected balanced bipartite graph.

    Any such subgroup meets the part-preserving subgroup in a group regular
    on both parts, so the graph is a Haar graph over that half group and the
    full group is one of its affine extensions.  Enumerating the Haar
    structures and testing each for an extension therefore decides the
    question completely, without branching over cross-part choices.
    """
    sub = part_preserving_subgroup(aut, parts)
    for cand in iter_regular_subgroups(sub, parts.part0):
        if not cand.is_regular_on(parts.part1):  # pragma: no cover - uniform pruning
            continue
        group, subset, phi = haar_structure(cand, graph, parts)
        model = haar_graph(group, subset)
        witness = None
        if group.is_abelian():
            witness = _abelian_cayley_witness(group, model)
        if witness is None:
            witness = _translation_extension_witness(group, subset, model, group_automorphisms(group))
        if witness is not None:
            inv = phi.inverse()
            gens = [phi * p * inv for p in witness.generators]
            out = PermGroup(gens, degree=graph.n)
            if not all(is_automorphism(graph, p) for p in gens) or not out.is_regular_on(
                range(graph.n)
            ):
                raise AssertionError("transported regular witness failed verification")
            return out
    return None


def is_cayley(graph: Graph) -> tuple[bool, PermGroup | None]:
    """Whether some subgroup of Aut acts regularly on the vertices."""
    if graph.n == 0:
        return True, PermGroup.trivial(0)
    aut = automorphism_group(graph)
    if not aut.is_transitive():
        return False, None
    parts = bipartition(graph)
    if (
        parts is not None
        and graph.n >= 2
        and graph.is_connected()
        and len(parts.part0) == len(parts.part1)
    ):
        sub = _bipartite_regular_subgroup(graph, aut, parts)
        return (sub is not None), sub
    sub = find_regular_subgroup(aut)
    return (sub is not None), sub


def part_preserving_subgroup(aut: PermGroup, parts: Bipartition) -> PermGroup:
    """The index-<=2 subgroup fixing each side of the bipartition setwise."""
    side = [0] * aut.degree
    for v in parts.part1:
        side[v] = 1
    probe = parts.part0[0] if parts.part0 else 0

    def swaps(g: Permutation) -> bool:
        return side[g.images[probe]] != side[probe]

    for g in aut.generators:
        s = side[g.images[probe]] != side[probe]
        for v in range(aut.degree):
            if (side[g.images[v]] != side[v]) != s:
                raise ValueError("bipartition is not respected by the automorphism group")

    swapper = None
    for g in aut.generators:
        if swaps(g):
            swapper = g
            break
    if swapper is None:
        return aut
    inv = swapper.inverse()
    gens = []
    for g in aut.generators:
        if swaps(g):
            gens.append(g * inv)
            gens.append(swapper * g)
        else:
            gens.append(g)
            gens.append(swapper * g * inv)
    return PermGroup(gens, degree=aut.degree)


def is_haar(graph: Graph) -> tuple[bool, PermGroup | None]:
    """Whether the graph is bipartite with a subgroup regular on each part.

    Only connected graphs are analyzed: on a disconnected bipartite graph
    the bipartition is not unique and the set-stabilizer machinery this
    would need is out of scope, so that case raises.
    """
    parts = bipartition(graph)
    if parts is None:
        return False, None
    if graph.n == 0:
        return True, PermGroup.trivial(0)
    if not graph.is_connected():
        raise ValueError("haar recognition requires a connected graph")
    if len(parts.part0) != len(parts.part1):
        return False, None
    aut = automorphism_group(graph)
    sub = part_preserving_subgroup(aut, parts)
    part1 = set(parts.part1)
    for cand in iter_regular_subgroups(sub, parts.part0):
        # elements are uniform and |H| = |part1|, so regularity on the other
        # part only needs invariance, which part-preservation gives
        if cand.is_regular_on(parts.part1):
            return True, cand
        else:  # pragma: no cover - excluded by the uniform-cycle pruning
            continue
    return False, None


# --- classification report ------------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    order: int
    edges: int
    valency: int | None
    bipartite: bool
    girth: int | None
    aut_order: int
    orbit_count: int
    vertex_transitive: bool
    arc_transitive: bool
    cayley: bool
    haar: bool | None
    cayley_witness: tuple[tuple[int, ...], ...] | None
    haar_witness: tuple[tuple[int, ...], ...] | None
    aut_generators: tuple[tuple[int, ...], ...]

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "edges": self.edges,
            "valency": self.valency,
            "bipartite": self.bipartite,
            "girth": self.girth,
            "aut_order": self.aut_order,
            "orbit_count": self.orbit_count,
            "vertex_transitive": self.vertex_transitive,
            "arc_transitive": self.arc_transitive,
            "cayley": self.cayley,
            "haar": self.haar,
            "witnesses": {
                "cayley": [list(p) for p in self.cayley_witness] if self.cayley_witness else None,
                "haar": [list(p) for p in self.haar_witness] if self.haar_witness else None,
            },
            "aut_generators": [list(p) for p in self.aut_generators],
        }


def analyze(graph: Graph) -> ClassificationReport:
    """Full symmetry profile of one graph."""
    aut = automorphism_group(graph)
    orbs = aut.orbits()
    vt = len(orbs) <= 1
    if graph.edge_count > 0:
        at = is_arc_transitive(graph)
    else:
        at = True  # vacuous: no arcs to move
    cay, cay_wit = is_cayley(graph)
    g = girth(graph)
    try:
        haar, haar_wit = is_haar(graph)
    except ValueError:
        haar, haar_wit = None, None
    return ClassificationReport(
        order=graph.n,
        edges=graph.edge_count,
        valency=graph.regular_valency(),
        bipartite=bipartition(graph) is not None,
        girth=None if g == float("inf") else int(g),
        aut_order=aut.order(),
        orbit_count=len(orbs),
        vertex_transitive=vt,
        arc_transitive=at,
        cayley=cay,
        haar=haar,
        cayley_witness=tuple(p.images for p in cay_wit.generators) if cay_wit else None,
        haar_witness=tuple(p.images for p in haar_wit.generators) if haar_wit else None,
        aut_generators=tuple(p.images for p in aut.generators),
    )


# --- the named automorphisms of the double Petersen family ---------------------


def standard_automorphisms(n: int, r: int) -> tuple[Permutation, Permutation, Permutation]:
    """Rotation, outer flip and reflection of the double Petersen layout.

    Each is checked against the edge set before being returned.
    """
    graph, lay = double_generalized_petersen(n, r)
    rotation = Permutation(
        [lay.u(i + 1) for i in range(n)]
        + [lay.v(i + 1) for i in range(n)]
        + [lay.w(i + 1) for i in range(n)]
        + [lay.z(i + 1) for i in range(n)]
    )
    flip = Permutation(
        [lay.z(i) for i in range(n)]
        + [lay.w(i) for i in range(n)]
        + [lay.v(i) for i in range(n)]
        + [lay.u(i) for i in range(n)]
    )
    reflection = Permutation(
        [lay.u(-i) for i in range(n)]
        + [lay.v(-i) for i in range(n)]
        + [lay.w(-i) for i in range(n)]
        + [lay.z(-i) for i in range(n)]
    )
    for p in (rotation, flip, reflection):
        if not is_automorphism(graph, p):
            raise AssertionError("layout automorphism formula broke; vertex layout changed?")
    return rotation, flip, reflection


def normalize_crossing_params(n: int, r: int) -> tuple[int, Permutation | None]:
    """Reduce r to the odd representative in (0, n/2) used by the crossing map.

    Returns the normalized span and, when the graphs differ, the explicit
    isomorphism from the input graph onto the normalized one (an inner-layer
    half-turn; replacing r by n - r leaves the edge set untouched).
    """
    if n < 3 or n % 2 != 0:
        raise ValueError("crossing automorphism needs even n >= 4")
    m = n // 2
    r %= n
    if r == 0 or r == m:
        raise ValueError(f"span r = {r} is degenerate for n = {n}")
    if r > m:
        r = n - r  # same edge set, no relabeling needed
    iso = None
    if r % 2 == 0:
        if m % 2 == 0:
            raise ValueError(f"r = {r} even with m = {m} even: r^2 = -1 (mod m) is impossible")
        lay = DoublePetersenLayout(n, r)
        iso = Permutation(
            [lay.u(i) for i in range(n)]
            + [lay.v(i) for i in range(n)]
            + [lay.w(i + m) for i in range(n)]
            + [lay.z(i + m) for i in range(n)]
        )
        r = m - r
    if pow(r, 2, m) != (m - 1) % m:
        raise ValueError(f"r^2 = {r * r % m} != -1 (mod {m}); no crossing automorphism exists")
    return r, iso


def delta_automorphism(n: int, r: int) -> Permutation:
    """The block-crossing automorphism of D(n, r) for even n, r^2 = -1 (mod n/2).

    Built from the four-branch index formulas on the normalized span and
    transported back through the normalization isomorphism, so the returned
    permutation preserves the edge set of the graph built from the input
    parameters.
    """
    rn, iso = normalize_crossing_params(n, r)
    m = n // 2
    lay = DoublePetersenLayout(n, rn)
    images = [0] * (4 * n)
    for i in range(n):
        j = rn * i + 1
        if m % 2 == 1:
            if i % 2 == 0:
                images[lay.u(i)] = lay.v(j)
                images[lay.v(i)] = lay.u(j)
                images[lay.w(i)] = lay.z(j)
                images[lay.z(i)] = lay.w(j)
            else:
                images[lay.u(i)] = lay.w(j)
                images[lay.v(i)] = lay.z(j)
                images[lay.w(i)] = lay.u(j)
                images[lay.z(i)] = lay.v(j)
        else:
            if i % 2 == 0:
                images[lay.u(i)] = lay.v(j)
                images[lay.v(i)] = lay.u(j)
                images[lay.w(i)] = lay.z(j + m)
                images[lay.z(i)] = lay.w(j + m)
            else:
                images[lay.u(i)] = lay.w(j)
                images[lay.v(i)] = lay.z(j)
                images[lay.w(i)] = lay.u(j + m)
                images[lay.z(i)] = lay.v(j + m)
    delta = Permutation(images)
    norm_graph, _ = double_generalized_petersen(n, rn)
    if not is_automorphism(norm_graph, delta):
        raise AssertionError("crossing map fails to preserve the normalized edge set")
    if iso is not None:
        delta = iso * delta * iso.inverse()
    graph, _ = double_generalized_petersen(n, r)
    if not is_automorphism(graph, delta):
        raise AssertionError("transported crossing map fails on the input graph")
    parts = bipartition(graph)
    p0 = set(parts.part0)
    for v in parts.part0:
        if delta.images[v] not in p0:
            raise AssertionError("crossing map does not preserve the bipartition")
    return delta


@dataclass(frozen=True)
class HaarWitnessReport:
    n: int
    r: int
    normalized_r: int
    conjugation_exponent: int
    group_order: int
    regular_on_parts: bool
    matches_semidirect_model: bool

    @property
    def ok(self) -> bool:
        return (
            self.conjugation_exponent in (2 * self.r % self.n, -2 * self.r % self.n)
            and self.group_order == 2 * self.n
            and self.regular_on_parts
            and self.matches_semidirect_model
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "normalized_r": self.normalized_r,
            "conjugation_exponent": self.conjugation_exponent,
            "group_order": self.group_order,
            "regular_on_parts": self.regular_on_parts,
            "matches_semidirect_model": self.matches_semidirect_model,
            "ok": self.ok,
        }


def verify_haar_witness(n: int, r: int) -> HaarWitnessReport:
    """Check the crossing-map witness for D(n, r) being a Haar graph.

    Confirms that conjugating the double rotation by the crossing map powers
    it by +-2r, that the generated group has order 2n and acts regularly on
    both parts, and that its element orders match the cyclic-by-order-4
    semidirect model of the same parameters.
    """
    rn, _ = normalize_crossing_params(n, r)
    m = n // 2
    delta = delta_automorphism(n, r)
    rotation, _, _ = standard_automorphisms(n, r)
    alpha2 = rotation * rotation
    conj = delta.inverse() * alpha2 * delta

    exponent = -1
    power = Permutation.identity(4 * n)
    for k in range(n):
        if power == conj:
            exponent = 2 * k % n
            break
        power = power * alpha2
    if exponent == -1:
        raise AssertionError("conjugate of the double rotation is not one of its powers")

    witness = PermGroup([alpha2, delta])
    graph, _ = double_generalized_petersen(n, r)
    parts = bipartition(graph)
    regular = witness.is_regular_on(parts.part0) and witness.is_regular_on(parts.part1)

    model = semidirect_cyclic(m, 4, rn)
    model_orders = model.element_order_multiset()
    mine = tuple(sorted(p.order() for p in witness.elements()))
    matches = witness.order() == model.order and mine == model_orders

    return HaarWitnessReport(
        n=n,
        r=r % n,
        normalized_r=rn,
        conjugation_exponent=exponent,
        group_order=witness.order(),
        regular_on_parts=regular,
        matches_semidirect_model=matches,
    )


# --- the parameter trichotomy ----------------------------------------------------


@dataclass(frozen=True)
class DnrPrediction:
    n: int
    r: int
    m: int | None
    vertex_transitive: bool
    cayley: bool
    haar: bool
    branch: str


def predict_dnr(n: int, r: int) -> DnrPrediction:
    """Predicted (VT, Cayley, Haar) flags for D(n, r) from the parameters.

    For even n the residue of r^2 mod n/2 decides everything; the +1 branch
    takes precedence where both residues coincide (n = 4).  For odd n the
    only vertex-transitive members are the dodecahedral pair (5, +-2).
    """
    if n < 3 or not 0 < r % n < n:
        raise ValueError("invalid double Petersen parameters")
    r = r % n
    if n % 2 == 1:
        if n == 5 and r in (2, 3):
            return DnrPrediction(n, r, None, True, False, False, "dodecahedral-exception")
        return DnrPrediction(n, r, None, False, False, False, "odd-or-nonresidue")
    m = n // 2
    rr = pow(r, 2, m)
    if rr == 1 % m:
        return DnrPrediction(n, r, m, True, True, True, "square-residue")
    if rr == (m - 1) % m:
        return DnrPrediction(n, r, m, True, False, True, "negative-residue")
    return DnrPrediction(n, r, m, False, False, False, "odd-or-nonresidue")


@dataclass(frozen=True)
class SweepRow:
    n: int
    r: int
    computed_vt: bool
    computed_cayley: bool
    computed_haar: bool
    branch: str
    match: bool


@dataclass(frozen=True)
class TheoremSweep:
    max_n: int
    rows: tuple[SweepRow, ...]

    @property
    def mismatches(self) -> tuple[SweepRow, ...]:
        return tuple(row for row in self.rows if not row.match)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _sweep_pair(args: tuple[int, int]) -> SweepRow:
    n, r = args
    graph, _ = double_generalized_petersen(n, r)
    aut = automorphism_group(graph)
    vt = len(aut.orbits()) == 1
    cay, _ = is_cayley(graph)
    haar, _ = is_haar(graph)
    pred = predict_dnr(n, r)
    match = (vt, cay, haar) == (pred.vertex_transitive, pred.cayley, pred.haar)
    return SweepRow(n, r, vt, cay, haar, pred.branch, match)


def verify_theorems(max_n: int, workers: int | None = None) -> TheoremSweep:
    """Compare computed (VT, Cayley, Haar) with the predicted trichotomy
    for every 3 <= n <= max_n, 0 < r < n."""
    if max_n < 3:
        raise ValueError("need max_n >= 3")
    pairs = [(n, r) for n in range(3, max_n + 1) for r in range(1, n)]
    if workers is None:
        workers = int(os.environ.get("HAARFORGE_WORKERS", "0"))
    if workers and workers > 1:
        import multiprocessing

        with multiprocessing.Pool(workers) as pool:
            rows = pool.map(_sweep_pair, pairs, chunksize=8)
    else:
        rows = [_sweep_pair(p) for p in pairs]
    rows.sort(key=lambda row: (row.n, row.r))
    return TheoremSweep(max_n=max_n, rows=tuple(rows))
