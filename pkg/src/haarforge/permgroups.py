"""Permutations and finitely generated permutation groups.

Composition convention, used everywhere in this package: ``compose(p, q)``
applies p first, so ``compose(p, q)[i] == q[p[i]]`` and ``p * q`` means the
same thing.  Groups carry a deterministic Schreier-Sims stabilizer chain,
built lazily behind a lock; once built, queries are read-only.
"""

from __future__ import annotations

import threading
from typing import Iterable, Iterator, Sequence


class Permutation:
    """A bijection on 0..degree-1, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        imgs = tuple(int(x) for x in images)
        n = len(imgs)
        seen = [False] * n
        for x in imgs:
            if not 0 <= x < n or seen[x]:
                raise ValueError("images do not form a permutation")
            seen[x] = True
        self.images = imgs

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:]):
                images[a] = b
            if cyc:
                images[cyc[-1]] = cyc[0]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        oi = other.images
        p = Permutation.__new__(Permutation)
        p.images = tuple(oi[x] for x in self.images)
        return p

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x] = i
        p = Permutation.__new__(Permutation)
        p.images = tuple(inv)
        return p

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        seen = [False] * self.degree
        out = 1
        for i in range(self.degree):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            out = out * length // _gcd(out, length)
        return out

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i]:
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.images) if i == x)

    def uniform_cycle_length(self) -> int | None:
        """Common length of all cycles, or None if they differ.

        Non-identity elements of a group acting regularly all have uniform
        cycles, which makes this the pruning test in regular-subgroup search.
        """
        lengths = set()
        seen = [False] * self.degree
        for i in range(self.degree):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            lengths.add(length)
            if len(lengths) > 1:
                return None
        return lengths.pop() if lengths else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return f"Permutation(id, degree={self.degree})"
        text = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)
        return f"Permutation({text}, degree={self.degree})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p first, then q: compose(p, q)[i] == q[p[i]]."""
    return p * q


# --- raw tuple helpers (hot paths work on plain tuples) ---------------------


def _tmul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(q[x] for x in p)


def _tinv(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def generate_elements(
    gens: Iterable[Permutation], limit: int = 10_000
) -> set[Permutation] | None:
    """Brute-force closure of a generator set; None once it exceeds `limit`.

    Oracle-grade: no chain involved, just products until stable.
    """
    gen_list = [g for g in gens]
    if not gen_list:
        return {Permutation.identity(0)}
    degree = gen_list[0].degree
    ident = tuple(range(degree))
    gen_tuples = [g.images for g in gen_list]
    elems = {ident}
    frontier = [ident]
    while frontier:
        p = frontier.pop()
        for g in gen_tuples:
            q = _tmul(p, g)
            if q not in elems:
                if len(elems) >= limit:
                    return None
                elems.add(q)
                frontier.append(q)
    out = set()
    for t in elems:
        p = Permutation.__new__(Permutation)
        p.images = t
        out.add(p)
    return out


# --- stabilizer chain --------------------------------------------------------


class _Chain:
    """Deterministic Schreier-Sims stabilizer chain on tuple permutations.

    ``sgd[i]`` holds the strong generators fixing the first i base points;
    the verification loop processes levels deepest-first and jumps back to
    any level that receives a new generator, so on completion every level
    satisfies the Schreier condition with its final generator set.
    """

    def __init__(self, degree: int, gens: Iterable[tuple[int, ...]] = (), base_hint: Sequence[int] = ()):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.base: list[int] = []
        self.sgd: list[list[tuple[int, ...]]] = []
        self.transversals: list[dict[int, tuple[int, ...]]] = []
        for b in base_hint:
            self._append_level(b)
        self._build([g for g in gens if g != self.identity])

    def _append_level(self, base_point: int):
        self.base.append(base_point)
        self.sgd.append([])
        self.transversals.append({base_point: self.identity})

    def _first_moved(self, p: tuple[int, ...]) -> int:
        for b in range(self.degree):
            if p[b] != b:
                return b
        raise AssertionError("identity has no moved point")

    def _distribute(self, p: tuple[int, ...]) -> int:
        """Store p at every level whose base prefix it fixes; return its level."""
        j = 0
        while j < len(self.base) and p[self.base[j]] == self.base[j]:
            j += 1
        if j == len(self.base):
            self._append_level(self._first_moved(p))
        for l in range(j + 1):
            self.sgd[l].append(p)
        return j

    def _rebuild_transversal(self, i: int):
        b = self.base[i]
        trans = {b: self.identity}
        queue = [b]
        head = 0
        gens = self.sgd[i]
        while head < len(queue):
            x = queue[head]
            head += 1
            tx = trans[x]
            for g in gens:
                y = g[x]
                if y not in trans:
                    trans[y] = _tmul(tx, g)
                    queue.append(y)
        self.transversals[i] = trans

    def _build(self, gens: list[tuple[int, ...]]):
        for g in gens:
            self._distribute(g)
        for i in range(len(self.base)):
            self._rebuild_transversal(i)
        i = len(self.base) - 1
        while i >= 0:
            j = self._schreier_pass(i)
            if j is None:
                i -= 1
            else:
                i = j

    def _schreier_pass(self, i: int) -> int | None:
        """Verify level i; on a failed Schreier generator, add it and report
        the level it landed on.  None means the level is clean."""
        self._rebuild_transversal(i)
        trans = self.transversals[i]
        gens = self.sgd[i]
        for x in sorted(trans):
            tx = trans[x]
            for g in gens:
                ty = trans[g[x]]
                schreier = _tmul(_tmul(tx, g), _tinv(ty))
                if schreier == self.identity:
                    continue
                residue, j = self.sift(schreier, i + 1)
                if residue == self.identity:
                    continue
                if j == len(self.base):
                    self._append_level(self._first_moved(residue))
                for l in range(i + 1, j + 1):
                    self.sgd[l].append(residue)
                self._rebuild_transversal(j)
                return j
        return None

    def order(self) -> int:
        out = 1
        for trans in self.transversals:
            out *= len(trans)
        return out

    def sift(self, p: tuple[int, ...], start: int = 0) -> tuple[tuple[int, ...], int]:
        """Reduce p through the chain; returns (residue, failing level)."""
        for i in range(start, len(self.base)):
            x = p[self.base[i]]
            if x == self.base[i]:
                continue
            t = self.transversals[i].get(x)
            if t is None:
                return p, i
            p = _tmul(p, _tinv(t))
        return p, len(self.base)

    def element_iter(self, start: int = 0) -> Iterator[tuple[int, ...]]:
        """All elements of the level-`start` subgroup, via transversal products."""
        if start >= len(self.base):
            yield self.identity
            return
        trans = self.transversals[start]
        for rest in self.element_iter(start + 1):
            for x in sorted(trans):
                yield _tmul(rest, trans[x])

    def contains(self, p: tuple[int, ...]) -> bool:
        residue, _ = self.sift(p)
        return residue == self.identity


class PermGroup:
    """A finitely generated permutation group with cached stabilizer chain."""

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None):
        gens = [g for g in generators]
        if degree is None:
            if not gens:
                raise ValueError("degree required for a trivial group")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("generators have mixed degrees")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(g for g in gens if not g.is_identity())
        self._chain: _Chain | None = None
        self._chain_lock = threading.Lock()

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls([], degree=degree)

    def _built_chain(self) -> _Chain:
        if self._chain is None:
            with self._chain_lock:
                if self._chain is None:
                    self._chain = _Chain(self.degree, [g.images for g in self.generators])
        return self._chain

    def order(self) -> int:
        return self._built_chain().order()

    def base(self) -> tuple[int, ...]:
        return tuple(lv.base for lv in self._built_chain().levels)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} vs {self.degree}")
        return self._built_chain().contains(p.images)

    def elements(self) -> Iterator[Permutation]:
        for t in self._built_chain().element_iter():
            p = Permutation.__new__(Permutation)
            p.images = t
            yield p

    def orbit(self, point: int) -> tuple[int, ...]:
        seen = {point}
        queue = [point]
        gens = [g.images for g in self.generators]
        while queue:
            x = queue.pop()
            for g in gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def orbits(self) -> list[tuple[int, ...]]:
        remaining = set(range(self.degree))
        out = []
        while remaining:
            root = min(remaining)
            orb = self.orbit(root)
            out.append(orb)
            remaining.difference_update(orb)
        return out

    def orbit_transversal(self, point: int) -> dict[int, Permutation]:
        """For each orbit point x, one group element mapping `point` to x."""
        gens = [g.images for g in self.generators]
        ident = tuple(range(self.degree))
        reps = {point: ident}
        queue = [point]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            tx = reps[x]
            for g in gens:
                y = g[x]
                if y not in reps:
                    reps[y] = _tmul(tx, g)
                    queue.append(y)
        out = {}
        for x, t in reps.items():
            p = Permutation.__new__(Permutation)
            p.images = t
            out[x] = p
        return out

    def point_stabilizer(self, point: int) -> "PermGroup":
        """The subgroup fixing `point`, via a chain anchored there."""
        chain = _Chain(self.degree, [g.images for g in self.generators], base_hint=[point])
        gens = []
        if len(chain.base) > 1:
            seen = set()
            for t in chain.sgd[1]:
                if t not in seen:
                    seen.add(t)
                    p = Permutation.__new__(Permutation)
                    p.images = t
                    gens.append(p)
        return PermGroup(gens, degree=self.degree)

    def is_transitive(self, points: Iterable[int] | None = None) -> bool:
        pts = set(range(self.degree)) if points is None else set(points)
        if not pts:
            return True
        orb = set(self.orbit(min(pts)))
        return pts <= orb

    def is_regular_on(self, points: Iterable[int]) -> bool:
        """Transitive on the set with order equal to its size.

        Raises if some generator moves the set off itself.
        """
        pts = sorted(set(points))
        pset = set(pts)
        for g in self.generators:
            for x in pts:
                if g.images[x] not in pset:
                    raise ValueError(f"point set is not invariant: generator moves {x} to {g.images[x]}")
        if not pts:
            return self.order() == 1
        orb = set(self.orbit(pts[0]))
        if orb != pset:
            return False
        return self.order() == len(pts)

    def is_semiregular_on(self, points: Iterable[int]) -> bool:
        """No non-identity element fixes any of the given points.

        Checked via point stabilizers, not element enumeration.
        """
        for x in set(points):
            if self.point_stabilizer(x).order() != 1:
                return False
        return True

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, gens={len(self.generators)})"


# --- spec-surface wrappers ---------------------------------------------------


def group_order(group: PermGroup) -> int:
    return group.order()


def orbits(group: PermGroup) -> list[tuple[int, ...]]:
    return group.orbits()


def membership(group: PermGroup, p: Permutation) -> bool:
    return group.contains(p)


def is_regular_on(group: PermGroup, points: Iterable[int]) -> bool:
    return group.is_regular_on(points)
