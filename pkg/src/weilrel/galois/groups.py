"""Finite permutation groups given by their full element list, and W_{2g}.

W_{2g} acts on 2g points 0..2g-1 where point i and point (i + g) mod 2g form
a pair; its elements are the permutations commuting with that pairing.
Products of k copies act blockwise on 2gk points.  Everything here is brute
force over element indices, which is fine up to a few hundred elements for
subgroup lattices and a few ten-thousand for class computations.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial

import numpy as np

from ..arith.intlinalg import rank
from ..errors import InvalidInput, TooLarge

#: largest g for which W_{2g} is enumerated element by element
MAX_ELEMENTS_G = 6
#: largest g for which the subgroup lattice is computed
MAX_LATTICE_G = 4

SignedCycleType = tuple[tuple[int, int], ...]


def signed_cycle_type(perm: Sequence[int], g: int, offset: int = 0) -> SignedCycleType:
    """Sorted ((length, sign), ...) of a pairing-preserving permutation on one block.

    ``perm`` acts on the points offset..offset+2g-1 of a possibly larger set.
    A cycle of length 2d containing a point and its partner is a negative
    d-cycle; two twin cycles of length d form a positive d-cycle.
    """
    seen = set()
    parts = []
    for start in range(g):
        x0 = offset + start
        if x0 in seen:
            continue
        partner0 = offset + (start + g) % (2 * g)
        cyc = [x0]
        x = perm[x0]
        while x != x0:
            cyc.append(x)
            x = perm[x]
        seen.update(cyc)
        if partner0 in cyc:
            parts.append((len(cyc) // 2, -1))
        else:
            parts.append((len(cyc), 1))
            y = partner0
            while True:
                seen.add(y)
                y = perm[y]
                if y == partner0:
                    break
    # points already seen only through twins are skipped above; each pair
    # contributes exactly once because start ranges over one point per pair
    return tuple(sorted(parts, key=lambda dp: (dp[0], -dp[1])))


def format_cycle_type(ct: SignedCycleType) -> str:
    return " ".join(f"{'+' if s > 0 else '-'}{d}" for d, s in ct) or "()"


def parse_cycle_type(text: str) -> SignedCycleType:
    parts = []
    for tok in text.split():
        sign = 1 if tok[0] == "+" else -1
        parts.append((int(tok[1:]), sign))
    return tuple(sorted(parts, key=lambda dp: (dp[0], -dp[1])))


@dataclass
class PermGroup:
    """A permutation group stored as an (order x degree) array of images.

    Element 0 is the identity.  ``label`` maps an element to a hashable
    conjugacy invariant that is assumed (and checked) to separate classes.
    """

    perms: np.ndarray
    blocks: int = 1
    g: int = 1
    name: str = ""
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.perms = np.asarray(self.perms, dtype=np.int16)
        self._index = {tuple(int(v) for v in p): i for i, p in enumerate(self.perms)}

    @property
    def order(self) -> int:
        return len(self.perms)

    @property
    def degree(self) -> int:
        return self.perms.shape[1]

    def index(self, perm: Sequence[int]) -> int:
        return self._index[tuple(int(v) for v in perm)]

    @cached_property
    def mul(self) -> np.ndarray:
        """mul[a, b] = index of a o b (apply b first)."""
        n = self.order
        base = self.degree
        weights = base ** np.arange(self.degree, dtype=np.int64)
        keys = self.perms.astype(np.int64) @ weights
        sorter = np.argsort(keys)
        sorted_keys = keys[sorter]
        table = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            comp = self.perms[a][self.perms]  # row b: a(b(x))
            k = comp.astype(np.int64) @ weights
            table[a] = sorter[np.searchsorted(sorted_keys, k)]
        return table

    @cached_property
    def inv(self) -> np.ndarray:
        return np.argmax(self.mul == 0, axis=1).astype(np.int32)

    @cached_property
    def conj(self) -> np.ndarray:
        """conj[h, x] = index of h x h^-1."""
        return self._conj_table()

    def _conj_table(self) -> np.ndarray:
        mul, inv = self.mul, self.inv
        hx = mul  # hx[h, x]
        out = np.empty_like(mul)
        for h in range(self.order):
            out[h] = mul[hx[h], inv[h]]
        return out

    def label(self, i: int):
        perm = self.perms[i]
        return tuple(signed_cycle_type(perm, self.g, b * 2 * self.g) for b in range(self.blocks))

    @cached_property
    def classes(self) -> list[list[int]]:
        """Conjugacy classes by brute-force conjugation, ordered by smallest member."""
        cls_of = np.full(self.order, -1, dtype=np.int32)
        out = []
        for x in range(self.order):
            if cls_of[x] >= 0:
                continue
            members = sorted(set(int(v) for v in self.conj[:, x]))
            cls_of[members] = len(out)
            out.append(members)
        return out

    @cached_property
    def class_of(self) -> np.ndarray:
        out = np.empty(self.order, dtype=np.int32)
        for c, members in enumerate(self.classes):
            out[members] = c
        return out

    @cached_property
    def class_labels(self) -> list:
        labels = [self.label(m[0]) for m in self.classes]
        if len(set(labels)) != len(labels):
            raise AssertionError("class labels do not separate conjugacy classes")
        return labels

    def class_of_label(self, lab) -> int:
        return self.class_labels.index(lab)

    # -- subgroups -------------------------------------------------------
    def closure(self, gens: Sequence[int], start: Sequence[int] = (0,)) -> frozenset[int]:
        mul = self._mul_rows
        elems = set(start) | {0}
        frontier = list(elems)
        gens = [int(x) for x in gens]
        while frontier:
            nxt = []
            for e in frontier:
                row = mul[e]
                for s in gens:
                    y = row[s]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    @cached_property
    def _mul_rows(self) -> list[list[int]]:
        return self.mul.tolist()

    def conjugate_inside(self, small: Sequence[int], big_mask: np.ndarray) -> bool:
        """True iff some conjugate of ``small`` is contained in the subgroup ``big_mask``."""
        images = self.conj[:, list(small)]
        return bool(big_mask[images].all(axis=1).any())

    def class_set(self, elems) -> frozenset[int]:
        return frozenset(int(c) for c in self.class_of[list(elems)])


def _w2g_perms(g: int) -> np.ndarray:
    rows = []
    for pi in itertools.permutations(range(g)):
        for signs in itertools.product((0, 1), repeat=g):
            img = [0] * (2 * g)
            for i in range(g):
                img[i] = pi[i] + g * signs[i]
                img[i + g] = pi[i] + g * (1 - signs[i])
            rows.append(img)
    rows.sort()
    return np.asarray(rows, dtype=np.int16)


@dataclass
class W2gGroup:
    """The hyperoctahedral group of order 2^g g! as a PermGroup plus metadata."""

    g: int
    group: PermGroup

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def elements(self) -> np.ndarray:
        return self.group.perms

    @property
    def classes(self) -> list[list[int]]:
        return self.group.classes

    @property
    def class_types(self) -> list[SignedCycleType]:
        return [lab[0] for lab in self.group.class_labels]

    def sign_kernel(self) -> list[int]:
        """Elements acting trivially on the set of pairs."""
        g = self.g
        return [i for i, p in enumerate(self.elements) if all(int(p[j]) % g == j for j in range(g))]

    def lattice(self):
        from .lattice import subgroup_lattice

        return subgroup_lattice(self.group, key=f"w{2 * self.g}")


def w2g_enumerate(g: int) -> W2gGroup:
    if g < 1:
        raise InvalidInput("g must be >= 1")
    if g > MAX_ELEMENTS_G:
        raise TooLarge(f"W_{2 * g} has {2**g * factorial(g)} elements; limit is g <= {MAX_ELEMENTS_G}")
    return _W_CACHE.setdefault(g, W2gGroup(g, PermGroup(_w2g_perms(g), blocks=1, g=g, name=f"W{2 * g}")))


_W_CACHE: dict[int, W2gGroup] = {}
_P_CACHE: dict[tuple[int, int], PermGroup] = {}


def product_group(g: int, k: int) -> PermGroup:
    """W_{2g}^k acting blockwise on 2gk points."""
    key = (g, k)
    if key not in _P_CACHE:
        base = _w2g_perms(g)
        n = 2 * g
        rows = []
        for combo in itertools.product(range(len(base)), repeat=k):
            rows.append(np.concatenate([base[c] + b * n for b, c in enumerate(combo)]))
        rows.sort(key=lambda r: tuple(r))
        _P_CACHE[key] = PermGroup(np.asarray(rows), blocks=k, g=g, name=f"W{n}^{k}")
    return _P_CACHE[key]


def orbit_count(g: int) -> int:
    """Number of W_{2g} orbits on ordered pairs of points."""
    W = w2g_enumerate(g)
    n = 2 * g
    seen = np.zeros((n, n), dtype=bool)
    orbits = 0
    perms = W.elements.astype(np.int64)
    for x in range(n):
        for y in range(n):
            if seen[x, y]:
                continue
            orbits += 1
            seen[perms[:, x], perms[:, y]] = True
    return orbits


def _subspace_bases(g: int) -> dict[str, list[list[int]]]:
    n = 2 * g
    one = [[1] * n]
    even_zero = []
    for i in range(g - 1):
        v = [0] * n
        v[i] = v[i + g] = 1
        v[i + 1] = v[i + 1 + g] = -1
        even_zero.append(v)
    odd = []
    for i in range(g):
        v = [0] * n
        v[i], v[i + g] = 1, -1
        odd.append(v)
    return {"one": one, "G": even_zero, "H": odd}


def decomposition_check(g: int) -> tuple[tuple[int, int, int], int]:
    """Invariant subspaces 1, G(M), H(M) of Q^{2g}: their dimensions and <chi, chi>.

    Invariance is checked for every group element by a rank test: the image
    of a basis under the permutation must not increase the rank of the span.
    """
    if g < 1:
        raise InvalidInput("g must be >= 1")
    W = w2g_enumerate(g)
    bases = _subspace_bases(g)
    dims = {}
    for name, basis in bases.items():
        r = rank(basis) if basis else 0
        for perm in W.elements:
            moved = [[v[int(perm[x])] for x in range(2 * g)] for v in basis]
            if basis and rank(basis + moved) != r:
                raise AssertionError(f"subspace {name} is not invariant")
        dims[name] = r
    total = rank(bases["one"] + bases["G"] + bases["H"])
    if total != 2 * g:
        raise AssertionError("subspaces do not span Q^M")
    fixed = (W.elements == np.arange(2 * g)[None, :]).sum(axis=1).astype(np.int64)
    inner, rem = divmod(int((fixed**2).sum()), W.order)
    if rem:
        raise AssertionError("character inner product is not an integer")
    return (dims["one"], dims["G"], dims["H"]), inner


def class_histogram(W: W2gGroup) -> Counter:
    return Counter({W.class_types[c]: len(m) for c, m in enumerate(W.classes)})
