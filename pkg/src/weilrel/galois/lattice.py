"""Subgroups up to conjugacy, with an on-disk JSON cache.

Cache format (one file per group key, e.g. ``w8.json``)::

    {"version": 1, "key": "w8", "order": 384,
     "elements": [[image of 0, ..., image of n-1], ...],   # index order
     "subgroups": [{"order": 1, "gens": [..], "elements": [..]}, ...],
     "maximal": [i, ...]}                                   # proper maximal reps

Subgroups are listed by increasing order; element lists are sorted indices
into ``elements``.  A cache file whose element table differs from the live
enumeration is ignored and rebuilt.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .groups import PermGroup

CACHE_VERSION = 1
_PACKAGE_DATA = Path(__file__).with_name("data")
_MEMO: dict[str, "SubgroupLattice"] = {}


def cache_dir() -> Path:
    env = os.environ.get("WEILREL_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "weilrel"


@dataclass
class SubgroupLattice:
    group: PermGroup
    subgroups: list[frozenset[int]]
    gens: list[list[int]]
    maximal: list[int]

    def class_sets(self) -> list[frozenset[int]]:
        return [self.group.class_set(s) for s in self.subgroups]

    @property
    def proper(self) -> list[int]:
        return [i for i, s in enumerate(self.subgroups) if len(s) < self.group.order]


def _invariant(group: PermGroup, elems) -> tuple:
    hist = Counter(int(c) for c in group.class_of[sorted(elems)])
    return len(elems), tuple(sorted(hist.items()))


def compute_lattice(group: PermGroup) -> SubgroupLattice:
    """Conjugacy classes of subgroups by cyclic extension."""
    n = group.order
    cyclic: dict[frozenset[int], int] = {}
    for x in range(n):
        c = group.closure([x])
        cyclic.setdefault(c, x)
    cyc_items = sorted(cyclic.items(), key=lambda kv: (len(kv[0]), kv[1]))

    reps: list[frozenset[int]] = [frozenset({0})]
    gens: list[list[int]] = [[]]
    buckets: dict[tuple, list[int]] = {_invariant(group, reps[0]): [0]}
    masks: list[np.ndarray] = []

    def mask_of(elems):
        m = np.zeros(n, dtype=bool)
        m[list(elems)] = True
        return m

    masks.append(mask_of(reps[0]))
    i = 0
    while i < len(reps):
        H, hg = reps[i], gens[i]
        for C, x in cyc_items:
            if C <= H:
                continue
            K = group.closure(hg + [x], start=H)
            inv = _invariant(group, K)
            found = False
            for j in buckets.get(inv, []):
                if group.conjugate_inside(sorted(K), masks[j]):
                    found = True
                    break
            if not found:
                buckets.setdefault(inv, []).append(len(reps))
                reps.append(K)
                gens.append(hg + [x])
                masks.append(mask_of(K))
        i += 1

    order = sorted(range(len(reps)), key=lambda k: (len(reps[k]), sorted(reps[k])))
    reps = [reps[k] for k in order]
    gens = [gens[k] for k in order]
    masks = [masks[k] for k in order]
    maximal = []
    for k, K in enumerate(reps):
        if len(K) == n:
            continue
        kl = sorted(K)
        bigger = any(
            len(L) > len(K) and len(L) < n and len(L) % len(K) == 0 and group.conjugate_inside(kl, masks[j])
            for j, L in enumerate(reps)
        )
        if not bigger:
            maximal.append(k)
    return SubgroupLattice(group, reps, gens, maximal)


def _to_json(lat: SubgroupLattice, key: str) -> dict:
    return {
        "version": CACHE_VERSION,
        "key": key,
        "order": lat.group.order,
        "elements": lat.group.perms.tolist(),
        "subgroups": [
            {"order": len(s), "gens": [int(x) for x in gs], "elements": sorted(int(x) for x in s)}
            for s, gs in zip(lat.subgroups, lat.gens)
        ],
        "maximal": lat.maximal,
    }


def _from_json(data: dict, group: PermGroup) -> SubgroupLattice | None:
    if data.get("version") != CACHE_VERSION or data.get("elements") != group.perms.tolist():
        return None
    subs = [frozenset(s["elements"]) for s in data["subgroups"]]
    gens = [list(s["gens"]) for s in data["subgroups"]]
    return SubgroupLattice(group, subs, gens, list(data["maximal"]))


def subgroup_lattice(group: PermGroup, key: str, *, use_cache: bool = True) -> SubgroupLattice:
    if key in _MEMO and _MEMO[key].group is group:
        return _MEMO[key]
    lat = None
    if use_cache:
        for base in (_PACKAGE_DATA, cache_dir()):
            path = base / f"{key}.json"
            if path.exists():
                try:
                    lat = _from_json(json.loads(path.read_text()), group)
                except (OSError, ValueError, KeyError):
                    lat = None
                if lat is not None:
                    break
    if lat is None:
        lat = compute_lattice(group)
        if use_cache:
            try:
                d = cache_dir()
                d.mkdir(parents=True, exist_ok=True)
                (d / f"{key}.json").write_text(json.dumps(_to_json(lat, key), separators=(",", ":")))
            except OSError:
                pass
    _MEMO[key] = lat
    return lat


def write_package_cache(group: PermGroup, key: str) -> Path:
    """Regenerate the shipped cache file for ``group``."""
    lat = compute_lattice(group)
    _PACKAGE_DATA.mkdir(parents=True, exist_ok=True)
    path = _PACKAGE_DATA / f"{key}.json"
    path.write_text(json.dumps(_to_json(lat, key), separators=(",", ":")))
    return path
