"""Finite groups as explicit multiplication tables.

Every group here is a full n-by-n table over element indices 0..n-1 with the
identity fixed at index 0.  That is enough for all the graph families in this
package (orders stay well under a hundred) and keeps products O(1) in the hot
loops of the search code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence


class GroupTableError(ValueError):
    """A would-be multiplication table violates a group axiom."""


class CatalogError(ValueError):
    """A group catalog file is malformed."""


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[a][b]`` is the index of the product a*b, identity is index 0 and
    ``inv[x]`` is the inverse of x.  Instances are immutable and safe to share
    across worker processes.
    """

    name: str
    table: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def element_order_multiset(self) -> tuple[int, ...]:
        """Sorted element orders; a cheap isomorphism invariant."""
        return tuple(sorted(self.element_order(a) for a in self.elements()))

    def is_abelian(self) -> bool:
        t = self.table
        n = self.order
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))

    def commuting_witness(self) -> tuple[int, int] | None:
        """A pair (a, b) with a*b != b*a, or None for abelian groups."""
        t = self.table
        for a in self.elements():
            for b in self.elements():
                if t[a][b] != t[b][a]:
                    return (a, b)
        return None

    def _close(self, seed: set[int]) -> set[int]:
        span = set(seed)
        frontier = list(span)
        while frontier:
            y = frontier.pop()
            for z in list(span):
                for p in (self.table[y][z], self.table[z][y]):
                    if p not in span:
                        span.add(p)
                        frontier.append(p)
        return span

    def generating_set(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by element index."""
        gens: list[int] = []
        span = {0}
        for x in self.elements():
            if x in span:
                continue
            gens.append(x)
            span = self._close(span | {x})
            if len(span) == self.order:
                break
        return tuple(gens)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


@dataclass(frozen=True)
class ElementSubset:
    """A sorted, duplicate-free subset of a group's element indices."""

    group: FiniteGroup
    members: tuple[int, ...]

    @classmethod
    def of(cls, group: FiniteGroup, members: Iterable[int]) -> "ElementSubset":
        ms = sorted(set(int(m) for m in members))
        for m in ms:
            if not 0 <= m < group.order:
                raise ValueError(f"subset member {m} out of range for order {group.order}")
        return cls(group, tuple(ms))

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def is_inverse_closed(self) -> bool:
        return all(self.group.inv[m] in self.members for m in self.members)

    def contains_identity(self) -> bool:
        return 0 in self.members


def _subset(group: FiniteGroup, members) -> ElementSubset:
    if isinstance(members, ElementSubset):
        if members.group.table is not group.table:
            raise ValueError("subset belongs to a different group")
        return members
    return ElementSubset.of(group, members)


def validate_table(table: Sequence[Sequence[int]], name: str = "group") -> FiniteGroup:
    """Check the group axioms on a raw table and wrap it as a FiniteGroup.

    The identity must be index 0.  The first violated axiom is reported with
    the witnessing elements.
    """
    n = len(table)
    if n == 0:
        raise GroupTableError("empty table")
    rows = []
    for i, row in enumerate(table):
        row = tuple(int(x) for x in row)
        if len(row) != n:
            raise GroupTableError(f"row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if not 0 <= x < n:
                raise GroupTableError(f"entry table[{i}][{j}] = {x} out of range [0, {n})")
        rows.append(row)
    t = tuple(rows)

    for x in range(n):
        if t[0][x] != x:
            raise GroupTableError(f"index 0 is not a left identity: 0*{x} = {t[0][x]}")
        if t[x][0] != x:
            raise GroupTableError(f"index 0 is not a right identity: {x}*0 = {t[x][0]}")

    inv = [-1] * n
    for x in range(n):
        for y in range(n):
            if t[x][y] == 0:
                inv[x] = y
                break
        if inv[x] == -1:
            raise GroupTableError(f"element {x} has no inverse")
        if t[inv[x]][x] != 0:
            raise GroupTableError(f"inverse of {x} is one-sided: {inv[x]}*{x} = {t[inv[x]][x]}")

    for a in range(n):
        ta = t[a]
        for b in range(n):
            tab = t[ta[b]]
            tb = t[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    raise GroupTableError(
                        f"associativity fails at ({a}, {b}, {c}): "
                        f"({a}*{b})*{c} = {tab[c]} but {a}*({b}*{c}) = {ta[tb[c]]}"
                    )

    return FiniteGroup(name=name, table=t, inv=tuple(inv))


def is_abelian(group: FiniteGroup) -> bool:
    return group.is_abelian()


def cyclic(n: int) -> FiniteGroup:
    """The cyclic group Z_n with addition mod n."""
    if n < 1:
        raise ValueError(f"cyclic group order must be positive, got {n}")
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inv = tuple((-a) % n for a in range(n))
    return FiniteGroup(name=f"Z{n}", table=table, inv=inv)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """Componentwise product; element (a, b) gets index a*|h| + b."""
    nh = h.order
    n = g.order * nh

    def idx(a: int, b: int) -> int:
        return a * nh + b

    table = []
    for a1 in g.elements():
        for b1 in h.elements():
            row = [0] * n
            for a2 in g.elements():
                ga = g.table[a1][a2]
                hrow = h.table[b1]
                base = a2 * nh
                for b2 in h.elements():
                    row[base + b2] = idx(ga, hrow[b2])
            table.append(tuple(row))
    inv = tuple(idx(g.inv[a], h.inv[b]) for a in g.elements() for b in h.elements())
    return FiniteGroup(name=f"{g.name}x{h.name}", table=tuple(table), inv=inv)


def generalized_dihedral(a: FiniteGroup) -> FiniteGroup:
    """Extension of an abelian group by the involution that inverts it.

    Elements are pairs (x, e) with e in {0, 1}, indexed as 2x + e; the
    twist sends (x, 1)*(y, e) to (x * y^-1, 1 ^ e).
    """
    if not a.is_abelian():
        w = a.commuting_witness()
        raise ValueError(f"generalized dihedral base must be abelian; {w[0]}*{w[1]} != {w[1]}*{w[0]}")
    n = 2 * a.order

    def idx(x: int, e: int) -> int:
        return 2 * x + e

    table = [[0] * n for _ in range(n)]
    for x in a.elements():
        for e in (0, 1):
            for y in a.elements():
                yy = a.inv[y] if e == 1 else y
                for f in (0, 1):
                    table[idx(x, e)][idx(y, f)] = idx(a.table[x][yy], e ^ f)
    group = validate_table(table, name=f"Dih({a.name})")
    return group


def semidirect_cyclic(m: int, k: int, r: int) -> FiniteGroup:
    """Z_m extended by Z_k, where the Z_k generator conjugates t to r*t.

    Requires gcd(r, m) = 1 and r^k = 1 (mod m) so the action is by an
    automorphism of order dividing k.  Element (t, j) has index t*k + j.
    """
    if m < 1 or k < 1:
        raise ValueError("orders must be positive")
    r %= m
    if math.gcd(r, m) != 1:
        raise ValueError(f"r = {r} is not invertible mod {m}")
    if pow(r, k, m) != 1 % m:
        raise ValueError(f"r^{k} = {pow(r, k, m)} != 1 (mod {m}); action does not close")

    rpow = [1 % m]
    for _ in range(k - 1):
        rpow.append(rpow[-1] * r % m)

    n = m * k

    def idx(t: int, j: int) -> int:
        return t * k + j

    table = [[0] * n for _ in range(n)]
    for t1 in range(m):
        for j1 in range(k):
            rj = rpow[j1]
            for t2 in range(m):
                tt = (t1 + rj * t2) % m
                for j2 in range(k):
                    table[idx(t1, j1)][idx(t2, j2)] = idx(tt, (j1 + j2) % k)
    return validate_table(table, name=f"Z{m}:r{r}:Z{k}")


# --- catalog files ---------------------------------------------------------
#
# Plain-text format: line 1 is a single name token, line 2 the order n, then
# n lines of n whitespace-separated indices giving the table (identity must
# be index 0).  Optionally a line "automorphisms K" followed by K lines of n
# indices each, giving verified group automorphisms as image rows.  Anything
# else after the table is rejected.


@dataclass(frozen=True)
class CatalogGroup:
    group: FiniteGroup
    automorphisms: tuple[tuple[int, ...], ...]
    source: str = "<memory>"


def _is_group_automorphism(group: FiniteGroup, images: Sequence[int]) -> bool:
    n = group.order
    if sorted(images) != list(range(n)):
        return False
    t = group.table
    for a in range(n):
        ia = images[a]
        for b in range(n):
            if images[t[a][b]] != t[ia][images[b]]:
                return False
    return True


def parse_group_text(text: str, source: str = "<string>") -> CatalogGroup:
    lines = text.splitlines()

    def fail(lineno: int, msg: str):
        raise CatalogError(f"{source}:{lineno}: {msg}")

    pos = 0

    def next_line() -> tuple[int, str]:
        nonlocal pos
        while pos < len(lines):
            pos += 1
            stripped = lines[pos - 1].strip()
            if stripped:
                return pos, stripped
        return len(lines) + 1, ""

    lineno, name = next_line()
    if not name:
        fail(lineno, "missing name line")
    if len(name.split()) != 1:
        fail(lineno, f"name must be a single token, got {name!r}")

    lineno, order_line = next_line()
    try:
        n = int(order_line)
    except ValueError:
        fail(lineno, f"order line must be an integer, got {order_line!r}")
    if n < 1:
        fail(lineno, f"order must be positive, got {n}")

    rows = []
    for i in range(n):
        lineno, row_line = next_line()
        if not row_line:
            fail(lineno, f"missing table row {i} (expected {n} rows)")
        parts = row_line.split()
        if len(parts) != n:
            fail(lineno, f"table row {i} has {len(parts)} entries, expected {n}")
        try:
            rows.append([int(p) for p in parts])
        except ValueError:
            fail(lineno, f"table row {i} contains a non-integer token")

    try:
        group = validate_table(rows, name=name)
    except GroupTableError as exc:
        raise CatalogError(f"{source}: invalid group table: {exc}") from exc

    auts: list[tuple[int, ...]] = []
    lineno, extra = next_line()
    if extra:
        parts = extra.split()
        if parts[0] != "automorphisms" or len(parts) != 2:
            fail(lineno, f"trailing garbage after table: {extra!r}")
        try:
            count = int(parts[1])
        except ValueError:
            fail(lineno, f"automorphism count must be an integer, got {parts[1]!r}")
        for i in range(count):
            lineno, row_line = next_line()
            if not row_line:
                fail(lineno, f"missing automorphism row {i} (expected {count})")
            parts = row_line.split()
            if len(parts) != n:
                fail(lineno, f"automorphism row {i} has {len(parts)} entries, expected {n}")
            images = tuple(int(p) for p in parts)
            if not _is_group_automorphism(group, images):
                fail(lineno, f"declared automorphism {i} does not preserve the table")
            auts.append(images)
        lineno, extra = next_line()
        if extra:
            fail(lineno, f"trailing garbage after automorphisms: {extra!r}")

    return CatalogGroup(group=group, automorphisms=tuple(auts), source=source)


def format_group_file(group: FiniteGroup, automorphisms: Iterable[Sequence[int]] = ()) -> str:
    out = [group.name, str(group.order)]
    for row in group.table:
        out.append(" ".join(str(x) for x in row))
    auts = [tuple(a) for a in automorphisms]
    if auts:
        out.append(f"automorphisms {len(auts)}")
        for a in auts:
            if not _is_group_automorphism(group, a):
                raise ValueError("refusing to write a non-automorphism row")
            out.append(" ".join(str(x) for x in a))
    return "\n".join(out) + "\n"


def load_group_file(path: str | Path) -> CatalogGroup:
    p = Path(path)
    return parse_group_text(p.read_text(), source=str(p))


def load_catalog(path: str | Path) -> list[CatalogGroup]:
    """Load one .grp file or every .grp file under a directory.

    Entries are sorted by (order, name); names must be unique.
    """
    p = Path(path)
    if p.is_dir():
        files = sorted(p.glob("*.grp"))
        if not files:
            raise CatalogError(f"{p}: no .grp files found")
        entries = [load_group_file(f) for f in files]
    else:
        entries = [load_group_file(p)]
    entries.sort(key=lambda e: (e.group.order, e.group.name))
    names = [e.group.name for e in entries]
    if len(set(names)) != len(names):
        dup = sorted({n for n in names if names.count(n) > 1})
        raise CatalogError(f"duplicate group names in catalog: {dup}")
    return entries


def group_automorphisms(group: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms of a small group, by image backtracking on generators."""
    gens = group.generating_set()
    if not gens:
        return [tuple(range(group.order))]
    n = group.order
    orders = [group.element_order(x) for x in range(n)]

    # expand a generator-image assignment to a full homomorphism, or None
    def build(images: dict[int, int]) -> tuple[int, ...] | None:
        full = {0: 0}
        frontier = [0]
        # elements reachable as words; track as (element, image)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = group.table[x][g]
                img = group.table[full[x]][images[g]]
                if y in full:
                    if full[y] != img:
                        return None
                else:
                    full[y] = img
                    frontier.append(y)
        if len(full) != n:
            return None
        out = [full[x] for x in range(n)]
        if sorted(out) != list(range(n)):
            return None
        return tuple(out)

    results = []

    def rec(i: int, images: dict[int, int]):
        if i == len(gens):
            cand = build(images)
            if cand is not None and _is_group_automorphism(group, cand):
                results.append(cand)
            return
        g = gens[i]
        for y in range(n):
            if orders[y] != orders[g]:
                continue
            images[g] = y
            rec(i + 1, images)
        del images[g]

    rec(0, {})
    return results
