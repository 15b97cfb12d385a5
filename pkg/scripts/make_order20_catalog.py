#!/usr/bin/env python3
"""Regenerate the shipped order-20 group catalog.

Writes one .grp file per group of order 20 into src/haarforge/data/order20/,
each with a small verified generating set of its automorphism group attached
(used by the census to shrink the subset enumeration).  The five groups are
the cyclic group, the product of the order-10 cyclic with an involution, the
dihedral group, the order-20 Frobenius group and the dicyclic group; the
pairwise-distinct element-order multisets printed at the end certify that no
two files describe isomorphic groups.
"""

from __future__ import annotations

import sys
from collections import Counter
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from haarforge.groups import (
    FiniteGroup,
    cyclic,
    direct_product,
    format_group_file,
    generalized_dihedral,
    group_automorphisms,
    parse_group_text,
    semidirect_cyclic,
)
from haarforge.permgroups import Permutation, PermGroup


def reduce_generators(group_order: int, auts: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Greedy small generating set for the automorphism group."""
    full = PermGroup([Permutation(a) for a in auts], degree=group_order)
    target = full.order()
    chosen: list[tuple[int, ...]] = []
    current = PermGroup.trivial(group_order)
    for a in auts:
        p = Permutation(a)
        if current.contains(p):
            continue
        chosen.append(a)
        current = PermGroup([Permutation(c) for c in chosen], degree=group_order)
        if current.order() == target:
            break
    assert current.order() == target
    return chosen


def build() -> dict[str, FiniteGroup]:
    c20 = cyclic(20)
    c10xc2 = direct_product(cyclic(10), cyclic(2))
    dih10 = generalized_dihedral(cyclic(10))
    frob20 = semidirect_cyclic(5, 4, 2)
    dic5 = semidirect_cyclic(5, 4, 4)
    return {
        "C20": FiniteGroup("C20", c20.table, c20.inv),
        "C10xC2": FiniteGroup("C10xC2", c10xc2.table, c10xc2.inv),
        "D20": FiniteGroup("D20", dih10.table, dih10.inv),
        "F20": FiniteGroup("F20", frob20.table, frob20.inv),
        "Dic5": FiniteGroup("Dic5", dic5.table, dic5.inv),
    }


def main():
    out_dir = Path(__file__).resolve().parent.parent / "src" / "haarforge" / "data" / "order20"
    out_dir.mkdir(parents=True, exist_ok=True)
    groups = build()
    multisets = {}
    for name, group in groups.items():
        auts = group_automorphisms(group)
        gens = reduce_generators(group.order, auts)
        text = format_group_file(group, gens)
        parsed = parse_group_text(text, source=name)
        assert parsed.group.table == group.table
        path = out_dir / f"{name.lower()}.grp"
        path.write_text(text)
        multisets[name] = group.element_order_multiset()
        print(f"{path.name}: |Aut| = {len(auts)}, {len(gens)} generators kept")
    assert len(set(multisets.values())) == len(groups), "order multisets must be pairwise distinct"
    for name, ms in multisets.items():
        print(f"{name}: element orders {dict(Counter(ms))}")


if __name__ == "__main__":
    main()
