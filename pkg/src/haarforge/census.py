"""Census of Haar graphs over a group catalog, with dedup by certificate.

Phase 1 walks (group, valency) strata: connection sets are reduced to orbit
representatives under left/right translation and catalog-declared group
automorphisms (all isomorphism-preserving), each connected survivor is
canonicalized and its vertex-transitivity computed.  Phase 2 classifies each
certificate once, using every realization found for it across the catalog:
a graph of order 2n is Cayley exactly when one of its Haar realizations
(K, S) extends the right-translation action of K by a part-swapping affine
map, because a vertex-regular group meets the part-preserving subgroup in a
group regular on both parts, which is itself a catalog group when the
catalog is complete for order n.  That decision needs no backtracking in
the (possibly enormous) automorphism group.

Strata commit in a fixed order regardless of worker count, so candidate,
checkpoint and output files are deterministic.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .autsearch import automorphism_group, canonical_form
from .classify import _abelian_cayley_witness, _translation_extension_witness
from .constructions import haar_graph
from .groups import CatalogGroup, FiniteGroup, group_automorphisms, load_catalog

_FILTERS = ("all", "vt", "vt-noncayley")
_MAX_CATALOG_ORDER = 24  # subset reduction materializes 2^order masks


@dataclass(frozen=True)
class CensusRecord:
    certificate: str
    order: int
    valency: int
    group_name: str
    subset: tuple[int, ...]
    vertex_transitive: bool
    cayley: bool
    haar: bool = True
    stratum: str = ""

    def to_json_dict(self) -> dict:
        return {
            "stratum": self.stratum,
            "certificate": self.certificate,
            "order": self.order,
            "valency": self.valency,
            "group": self.group_name,
            "subset": list(self.subset),
            "vertex_transitive": self.vertex_transitive,
            "cayley": self.cayley,
            "haar": self.haar,
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "CensusRecord":
        return cls(
            certificate=d["certificate"],
            order=d["order"],
            valency=d["valency"],
            group_name=d["group"],
            subset=tuple(d["subset"]),
            vertex_transitive=d["vertex_transitive"],
            cayley=d["cayley"],
            haar=d.get("haar", True),
            stratum=d.get("stratum", ""),
        )


@dataclass
class CensusConfig:
    """Knobs for one census run.

    checkpoint_path, when set, names a pair of files: the checkpoint itself
    (completed stratum ids) and "<checkpoint>.candidates" holding the
    per-stratum enumeration results needed to resume.
    """

    catalog_path: str | Path
    min_order: int
    max_order: int
    min_valency: int
    max_valency: int
    filter: str = "all"
    workers: int = 0
    output_path: str | Path | None = None
    checkpoint_path: str | Path | None = None

    def validate(self):
        if self.filter not in _FILTERS:
            raise ValueError(f"filter must be one of {_FILTERS}, got {self.filter!r}")
        if self.min_order > self.max_order:
            raise ValueError("empty order range")
        if self.min_valency < 1:
            raise ValueError("valency range must start at 1 or above")
        if self.min_valency > self.max_valency:
            raise ValueError("empty valency range")


# --- subset orbit reduction ---------------------------------------------------


def _popcounts(arr: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(arr)
    table = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)
    return table[arr & 0xFFFF].astype(np.uint32) + table[arr >> 16]


def _move_table(perm: Sequence[int], n: int) -> np.ndarray:
    """Mask-level table of a position permutation, via two half lookups."""
    half = n // 2
    low_bits, high_bits = half, n - half
    low = np.zeros(1 << low_bits, dtype=np.uint32)
    for i in range(low_bits):
        img = np.uint32(1 << perm[i])
        idx = np.arange(1 << low_bits)
        low[(idx >> i) & 1 == 1] |= img
    high = np.zeros(1 << high_bits, dtype=np.uint32)
    for i in range(high_bits):
        img = np.uint32(1 << perm[half + i])
        idx = np.arange(1 << high_bits)
        high[(idx >> i) & 1 == 1] |= img
    masks = np.arange(1 << n, dtype=np.uint32)
    return low[masks & ((1 << low_bits) - 1)] | high[masks >> low_bits]


def subset_orbit_representatives(
    entry: CatalogGroup, sizes: Iterable[int]
) -> dict[int, list[int]]:
    """Minimal bitmask per subset orbit, keyed by subset size.

    Orbits are taken under S -> Sg, S -> gS for group generators g and under
    the catalog-declared automorphisms; all three preserve the isomorphism
    type of the resulting graph.
    """
    group = entry.group
    n = group.order
    if n > _MAX_CATALOG_ORDER:
        raise ValueError(f"subset reduction supports group order <= {_MAX_CATALOG_ORDER}, got {n}")
    wanted = sorted(set(sizes))
    moves: list[list[int]] = []
    for g in group.generating_set():
        moves.append([group.table[x][g] for x in range(n)])
        moves.append([group.table[g][x] for x in range(n)])
    for aut in entry.automorphisms:
        moves.append(list(aut))

    rep = np.arange(1 << n, dtype=np.uint32)
    tables = [_move_table(m, n) for m in moves]
    while True:
        prev = rep.copy()
        for t in tables:
            np.minimum(rep, rep[t], out=rep)
        np.minimum(rep, rep[rep], out=rep)
        if np.array_equal(rep, prev):
            break
    masks = np.arange(1 << n, dtype=np.uint32)
    is_rep = rep == masks
    pops = _popcounts(masks)
    out: dict[int, list[int]] = {}
    for k in wanted:
        sel = np.nonzero(is_rep & (pops == k))[0]
        out[k] = [int(x) for x in sel]
    return out


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return tuple(out)


# --- Cayley decision over a Haar realization ------------------------------------


def realization_is_cayley(
    group: FiniteGroup,
    subset: Sequence[int],
    group_auts: Sequence[Sequence[int]] | None = None,
) -> bool:
    """Whether H(group, subset) has a regular group containing the
    right translations (always true for abelian groups)."""
    graph = haar_graph(group, subset)
    if group.is_abelian():
        if _abelian_cayley_witness(group, graph) is not None:
            return True
    if group_auts is None:
        group_auts = group_automorphisms(group)
    return _translation_extension_witness(group, subset, graph, group_auts) is not None


# --- phase 1: per-stratum enumeration --------------------------------------------


def _stratum_id(group_name: str, k: int) -> str:
    return f"{group_name}:{k}"


def _run_stratum(args: tuple) -> list[dict]:
    """Enumerate one (group, valency) stratum.

    Returns one row per connected representative subset: its certificate
    and, for the first subset realizing each certificate here, the
    vertex-transitivity flag (rows for repeat certificates carry vt=None).
    """
    name, table, inv, k, rep_masks = args
    group = FiniteGroup(name=name, table=table, inv=inv)
    sid = _stratum_id(name, k)
    vt_by_cert: dict[str, bool] = {}
    rows: list[dict] = []
    for mask in rep_masks:
        subset = _bits(mask)
        graph = haar_graph(group, subset)
        if not graph.is_connected():
            continue
        cert = canonical_form(graph).graph6.decode("ascii")
        vt = vt_by_cert.get(cert)
        if vt is None:
            aut = automorphism_group(graph)
            vt = len(aut.orbits()) == 1
            vt_by_cert[cert] = vt
            first = True
        else:
            first = False
        rows.append(
            {
                "stratum": sid,
                "group": name,
                "subset": list(subset),
                "certificate": cert,
                "valency": k,
                "order": graph.n,
                "vt": vt if first else None,
            }
        )
    return rows


# --- phase 2: per-certificate classification --------------------------------------


def _classify_certificate(
    rows: list[dict],
    groups_by_name: dict[str, FiniteGroup],
    auts_by_name: dict[str, list[tuple[int, ...]]],
) -> CensusRecord:
    """Combine all realizations of one certificate into a final record.

    Cayley-ness: true as soon as one realization is over an abelian group or
    admits the affine part-swapping extension; certified false when every
    realization fails, by the regular-meets-part-preserving argument (this
    relies on the catalog containing every group of the half order).
    """
    head = rows[0]
    vt_flags = {r["vt"] for r in rows if r["vt"] is not None}
    assert len(vt_flags) == 1, f"inconsistent vertex-transitivity for {head['certificate']}"
    vt = vt_flags.pop()
    if not vt:
        cayley = False  # a Cayley graph is vertex-transitive
    else:
        cayley = False
        for r in rows:
            group = groups_by_name[r["group"]]
            if realization_is_cayley(group, tuple(r["subset"]), auts_by_name[r["group"]]):
                cayley = True
                break
    return CensusRecord(
        certificate=head["certificate"],
        order=head["order"],
        valency=head["valency"],
        group_name=head["group"],
        subset=tuple(head["subset"]),
        vertex_transitive=vt,
        cayley=cayley,
        stratum=head["stratum"],
    )


# --- the driver ------------------------------------------------------------------


def _candidate_path(cfg: CensusConfig) -> Path | None:
    if cfg.checkpoint_path is None:
        return None
    return Path(str(cfg.checkpoint_path) + ".candidates")


def _load_resume_state(cfg: CensusConfig) -> tuple[set[str], list[dict]]:
    done: set[str] = set()
    rows: list[dict] = []
    if cfg.checkpoint_path and Path(cfg.checkpoint_path).exists():
        for line in Path(cfg.checkpoint_path).read_text().splitlines():
            line = line.strip()
            if line:
                done.add(line)
    cand = _candidate_path(cfg)
    if cand and cand.exists():
        for line in cand.read_text().splitlines():
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            if row["stratum"] in done:
                rows.append(row)
    return done, rows


def enumerate_haar_census(
    cfg: CensusConfig, progress: Callable[[str], None] | None = None
) -> list[CensusRecord]:
    """Run the census described by `cfg`; returns deduplicated records.

    Phase-1 strata run on the worker pool and commit to the candidates file
    in a fixed order; phase 2 then emits one record per certificate to the
    output path as JSON lines.  HAARFORGE_WORKERS overrides cfg.workers.
    """
    cfg.validate()
    say = progress or (lambda msg: None)
    catalog = load_catalog(cfg.catalog_path)
    env_workers = os.environ.get("HAARFORGE_WORKERS")
    workers = int(env_workers) if env_workers else cfg.workers

    entries = [e for e in catalog if cfg.min_order <= 2 * e.group.order <= cfg.max_order]
    strata: list[tuple[CatalogGroup, int]] = []
    for entry in entries:
        top = min(cfg.max_valency, entry.group.order)
        for k in range(cfg.min_valency, top + 1):
            strata.append((entry, k))

    done, rows = _load_resume_state(cfg)
    todo = [(e, k) for (e, k) in strata if _stratum_id(e.group.name, k) not in done]
    say(f"census: {len(strata)} strata, {len(todo)} to run, {len(rows)} candidate rows resumed")

    cand_path = _candidate_path(cfg)
    cand_file = cand_path.open("a" if rows else "w") if cand_path else None
    ckpt_file = None
    if cfg.checkpoint_path:
        ckpt_file = Path(cfg.checkpoint_path).open("a" if done else "w")

    rep_cache: dict[str, dict[int, list[int]]] = {}
    for entry, _ in todo:
        name = entry.group.name
        if name not in rep_cache:
            ks = [k for e, k in todo if e.group.name == name]
            say(f"census: reducing subsets for {name}")
            rep_cache[name] = subset_orbit_representatives(entry, ks)

    def task_args(entry: CatalogGroup, k: int) -> tuple:
        g = entry.group
        return (g.name, g.table, g.inv, k, rep_cache[g.name][k])

    def commit(entry: CatalogGroup, k: int, new_rows: list[dict]):
        sid = _stratum_id(entry.group.name, k)
        rows.extend(new_rows)
        if cand_file:
            for row in new_rows:
                cand_file.write(json.dumps(row) + "\n")
            cand_file.flush()
        if ckpt_file:
            ckpt_file.write(sid + "\n")
            ckpt_file.flush()
        done.add(sid)
        say(f"census: {sid} enumerated, {len(new_rows)} candidate rows")

    try:
        if workers and workers > 1:
            import multiprocessing

            with multiprocessing.Pool(workers) as pool:
                results = pool.imap(_run_stratum, [task_args(e, k) for e, k in todo])
                for (entry, k), new_rows in zip(todo, results):
                    commit(entry, k, new_rows)
        else:
            for entry, k in todo:
                commit(entry, k, _run_stratum(task_args(entry, k)))
    finally:
        if cand_file:
            cand_file.close()
        if ckpt_file:
            ckpt_file.close()

    # group candidate rows by certificate, in first-appearance order
    order_index = {_stratum_id(e.group.name, k): i for i, (e, k) in enumerate(strata)}
    rows.sort(key=lambda r: order_index[r["stratum"]])
    by_cert: dict[str, list[dict]] = {}
    for row in rows:
        by_cert.setdefault(row["certificate"], []).append(row)

    groups_by_name = {e.group.name: e.group for e in entries}
    auts_by_name = {name: group_automorphisms(g) for name, g in groups_by_name.items()}

    say(f"census: classifying {len(by_cert)} certificates")
    out_file = Path(cfg.output_path).open("w") if cfg.output_path else None
    records: list[CensusRecord] = []
    try:
        for cert_rows in by_cert.values():
            rec = _classify_certificate(cert_rows, groups_by_name, auts_by_name)
            if cfg.filter in ("vt", "vt-noncayley") and not rec.vertex_transitive:
                continue
            if cfg.filter == "vt-noncayley" and rec.cayley:
                continue
            records.append(rec)
            if out_file:
                out_file.write(json.dumps(rec.to_json_dict()) + "\n")
                out_file.flush()
    finally:
        if out_file:
            out_file.close()
    say(f"census: {len(records)} records after filter {cfg.filter!r}")
    return records


def census_summary(records: Sequence[CensusRecord]) -> dict:
    by_valency: dict[int, int] = {}
    for r in records:
        by_valency[r.valency] = by_valency.get(r.valency, 0) + 1
    return {
        "classes": len(records),
        "valencies": {str(k): by_valency[k] for k in sorted(by_valency)},
        "vertex_transitive": sum(1 for r in records if r.vertex_transitive),
        "cayley": sum(1 for r in records if r.cayley),
    }
