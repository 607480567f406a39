"""Simplicial complexes as facet antichains over an ambient vertex universe.

The `vertices` field is the ambient universe and may be larger than the
union of the facets (needed so duality can invert complements); the derived
vertex set of the complex itself is ``used_vertices``.  Facet order is
significant because leaf orders are orders on the facet list; equality and
hashing use the canonical (sorted) form instead.

The leaf machinery runs on integer bitmasks internally; the public API
works with frozensets of vertex names.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .monomial import VariableSet

SUBSET_GUARD = 20  # 2^n / 2^q enumerations refuse to run past this


@dataclass(frozen=True)
class EmptyComplex:
    """Distinguished outcome: no nonempty faces (only the empty face)."""

    vertices: VariableSet


@dataclass(frozen=True)
class VoidComplex:
    """Distinguished outcome: no faces at all; Alexander dual of the full simplex."""

    vertices: VariableSet


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    vertices: VariableSet
    facets: tuple[frozenset[str], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "facets", tuple(frozenset(f) for f in self.facets)
        )
        if not self.facets:
            raise ValueError("a complex needs at least one facet")
        for f in self.facets:
            if not f:
                raise ValueError("facets must be nonempty")
            for v in f:
                if v not in self.vertices:
                    raise ValueError(f"facet vertex {v!r} outside the universe")
        for i, f in enumerate(self.facets):
            for j, g in enumerate(self.facets):
                if i != j and f <= g:
                    raise ValueError(
                        f"facets are not an antichain: {sorted(f)} within {sorted(g)}"
                    )

    # Equality and hashing use the canonical form; presentation order is
    # available via .facets for leaf-order semantics.
    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.vertices.names) == set(other.vertices.names) and set(
            self.facets
        ) == set(other.facets)

    def __hash__(self):
        return hash((frozenset(self.vertices.names), frozenset(self.facets)))

    @property
    def n(self) -> int:
        return self.vertices.n

    @property
    def q(self) -> int:
        return len(self.facets)

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    @cached_property
    def used_vertices(self) -> frozenset[str]:
        out: set[str] = set()
        for f in self.facets:
            out |= f
        return frozenset(out)

    @cached_property
    def _facet_masks(self) -> tuple[int, ...]:
        return tuple(self._mask(f) for f in self.facets)

    def _mask(self, vs: Iterable[str]) -> int:
        mask = 0
        for v in vs:
            mask |= 1 << self.vertices.index(v)
        return mask

    def _unmask(self, mask: int) -> frozenset[str]:
        return frozenset(
            self.vertices.names[i] for i in range(self.n) if mask >> i & 1
        )

    def canonical_facets(self) -> tuple[tuple[str, ...], ...]:
        keyed = sorted(
            tuple(sorted(f, key=self.vertices.index)) for f in self.facets
        )
        return tuple(keyed)

    def __repr__(self):
        facets = ", ".join(
            "{" + ",".join(sorted(f, key=self.vertices.index)) + "}"
            for f in self.facets
        )
        return f"<{facets}> on {{{', '.join(self.vertices.names)}}}"


def full_simplex(vertices: VariableSet) -> SimplicialComplex:
    return SimplicialComplex(vertices, (frozenset(vertices.names),))


def is_full_simplex(D: SimplicialComplex) -> bool:
    return D.q == 1 and D.facets[0] == frozenset(D.vertices.names)


# ---------------------------------------------------------------------------
# Mask-level leaf machinery.
# ---------------------------------------------------------------------------

def _joint_positions(masks: Sequence[int], i: int) -> list[int]:
    r = 0
    fi = masks[i]
    for j, m in enumerate(masks):
        if j != i:
            r |= fi & m
    return [j for j in range(len(masks)) if j != i and r & ~masks[j] == 0]


def _is_leaf(masks: Sequence[int], i: int) -> bool:
    return len(masks) == 1 or bool(_joint_positions(masks, i))


def _has_leaf(masks: Sequence[int]) -> bool:
    return any(_is_leaf(masks, i) for i in range(len(masks)))


def _maximal(masks: Iterable[int]) -> list[int]:
    distinct = set(masks)
    return [
        m for m in distinct
        if not any(m != other and m & ~other == 0 for other in distinct)
    ]


def _greedy_removal(masks: Sequence[int]):
    """Repeatedly remove the smallest-index leaf; None when stuck."""
    active = list(range(len(masks)))
    removal = []
    while active:
        sub = [masks[i] for i in active]
        leaf_pos = next(
            (p for p in range(len(active)) if _is_leaf(sub, p)), None
        )
        if leaf_pos is None:
            return None
        removal.append(active.pop(leaf_pos))
    return removal


def _backtracking_order(masks: Sequence[int]):
    """Some leaf order found by exploring all removal orders; None if none.

    The recursion peels a leaf of the active subcollection and appends it
    after the order of the remainder, so the returned list is already a
    leaf order (peeled-first comes last).
    """
    dead: set[frozenset[int]] = set()

    def go(active: frozenset[int]) -> list[int] | None:
        if not active:
            return []
        if active in dead:
            return None
        order = sorted(active)
        sub = [masks[i] for i in order]
        for p, idx in enumerate(order):
            if _is_leaf(sub, p):
                rest = go(active - {idx})
                if rest is not None:
                    return rest + [idx]
        dead.add(active)
        return None

    found = go(frozenset(range(len(masks))))
    return None if found is None else tuple(found)


def _all_leaf_orders(masks: Sequence[int]) -> Iterator[tuple[int, ...]]:
    def go(active: frozenset[int], acc: list[int]) -> Iterator[tuple[int, ...]]:
        if not active:
            yield tuple(reversed(acc))
            return
        order = sorted(active)
        sub = [masks[i] for i in order]
        for p, idx in enumerate(order):
            if _is_leaf(sub, p):
                acc.append(idx)
                yield from go(active - {idx}, acc)
                acc.pop()

    yield from go(frozenset(range(len(masks))), [])


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------

def faces(D: SimplicialComplex) -> frozenset[frozenset[str]]:
    """All nonempty faces; desk scale only."""
    if D.n > SUBSET_GUARD:
        raise ValueError(f"face enumeration guard exceeded (n={D.n})")
    out: set[frozenset[str]] = set()
    for f in D.facets:
        fl = sorted(f)
        for r in range(1, len(fl) + 1):
            out.update(frozenset(c) for c in itertools.combinations(fl, r))
    return frozenset(out)


def f_vector(D: SimplicialComplex) -> tuple[int, ...]:
    counts = [0] * (D.dim + 1)
    for face in faces(D):
        counts[len(face) - 1] += 1
    return tuple(counts)


def induced(D: SimplicialComplex, W: Iterable[str]):
    """Faces of D contained in W, in canonical facet form.

    The result's universe is the set of vertices actually present; if no
    face lands inside W the distinguished EmptyComplex comes back.
    """
    wset = frozenset(W)
    if not wset:
        raise ValueError("W must be nonempty")
    for v in wset:
        if v not in D.vertices:
            raise ValueError(f"W contains {v!r}, not a universe vertex")
    wmask = D._mask(wset)
    pieces = _maximal(m for m in (f & wmask for f in D._facet_masks) if m)
    if not pieces:
        sub_names = tuple(n for n in D.vertices.names if n in wset)
        return EmptyComplex(VariableSet(sub_names))
    present = 0
    for m in pieces:
        present |= m
    names = tuple(
        n for i, n in enumerate(D.vertices.names) if present >> i & 1
    )
    new_facets = sorted(
        (tuple(sorted(D._unmask(m), key=D.vertices.index)) for m in pieces),
    )
    return SimplicialComplex(
        VariableSet(names), tuple(frozenset(f) for f in new_facets)
    )


def subcollection(D: SimplicialComplex, indices: Iterable[int]) -> SimplicialComplex:
    """Complex generated by the selected facets, order preserved."""
    idx = list(indices)
    if not idx:
        raise ValueError("a subcollection needs at least one facet index")
    for i in idx:
        if not 0 <= i < D.q:
            raise ValueError(f"facet index {i} out of range")
    chosen = tuple(D.facets[i] for i in idx)
    present: set[str] = set()
    for f in chosen:
        present |= f
    names = tuple(n for n in D.vertices.names if n in present)
    return SimplicialComplex(VariableSet(names), chosen)


def _facet_index(D: SimplicialComplex, F: Iterable[str]) -> int:
    fset = frozenset(F)
    for i, f in enumerate(D.facets):
        if f == fset:
            return i
    raise ValueError(f"{sorted(fset)} is not a facet")


def joints(D: SimplicialComplex, F: Iterable[str]) -> list[frozenset[str]]:
    """Facets G != F with F∩H within G for every other facet H."""
    i = _facet_index(D, F)
    return [D.facets[j] for j in _joint_positions(D._facet_masks, i)]


def is_leaf(D: SimplicialComplex, F: Iterable[str]) -> bool:
    i = _facet_index(D, F)
    return _is_leaf(D._facet_masks, i)


def free_vertices(D: SimplicialComplex, F: Iterable[str]) -> frozenset[str]:
    """Vertices of F lying in no other facet."""
    i = _facet_index(D, F)
    others = 0
    for j, m in enumerate(D._facet_masks):
        if j != i:
            others |= m
    return D._unmask(D._facet_masks[i] & ~others)


def leaf_order(D: SimplicialComplex, mode: str = "greedy"):
    """A facet ordering where each facet is a leaf of the preceding prefix.

    None when no such order exists.  `greedy` peels the smallest-index
    leaf; `exhaustive` backtracks over every removal order and is the
    oracle the greedy strategy is tested against.
    """
    if mode == "greedy":
        removal = _greedy_removal(D._facet_masks)
        return None if removal is None else tuple(reversed(removal))
    if mode == "exhaustive":
        return _backtracking_order(D._facet_masks)
    raise ValueError(f"unknown mode {mode!r}")


def all_leaf_orders(D: SimplicialComplex) -> Iterator[tuple[int, ...]]:
    return _all_leaf_orders(D._facet_masks)


def is_leaf_order(D: SimplicialComplex, order: Sequence[int]) -> bool:
    order = list(order)
    if sorted(order) != list(range(D.q)):
        return False
    masks = D._facet_masks
    for i in range(len(order)):
        prefix = [masks[j] for j in order[: i + 1]]
        if not _is_leaf(prefix, i):
            return False
    return True


def is_quasi_forest_by_induced(D: SimplicialComplex) -> bool:
    """Every nonempty W of universe vertices induces a subcomplex with a leaf.

    Subsets missing every face induce the empty complex, which counts
    vacuously.  Brute force over 2^n subsets.
    """
    if D.n > SUBSET_GUARD:
        raise ValueError(f"induced-subcomplex guard exceeded (n={D.n})")
    fmasks = D._facet_masks
    for w in range(1, 1 << D.n):
        pieces = _maximal(m for m in (f & w for f in fmasks) if m)
        if pieces and not _has_leaf(pieces):
            return False
    return True


def is_simplicial_forest(D: SimplicialComplex) -> bool:
    """Every nonempty subcollection has a leaf; brute force over 2^q."""
    if D.q > SUBSET_GUARD:
        raise ValueError(f"subcollection guard exceeded (q={D.q})")
    masks = D._facet_masks
    for sel in range(1, 1 << D.q):
        sub = [masks[i] for i in range(D.q) if sel >> i & 1]
        if not _has_leaf(sub):
            return False
    return True


def connected_components(D: SimplicialComplex) -> tuple[frozenset[str], ...]:
    """Partition of the universe; unused ambient vertices are singletons."""
    parent = list(range(D.q))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(D.q):
        for j in range(i + 1, D.q):
            if D._facet_masks[i] & D._facet_masks[j]:
                parent[find(i)] = find(j)

    groups: dict[int, set[str]] = {}
    for i in range(D.q):
        groups.setdefault(find(i), set()).update(D.facets[i])
    parts = [frozenset(g) for g in groups.values()]
    for name in D.vertices.names:
        if name not in D.used_vertices:
            parts.append(frozenset({name}))
    parts.sort(key=lambda p: min(D.vertices.index(v) for v in p))
    return tuple(parts)


def is_connected(D: SimplicialComplex) -> bool:
    return len(connected_components(D)) == 1


# ---------------------------------------------------------------------------
# JSON form: {"vertices": [...], "facets": [[...], ...]}, facet order kept.
# ---------------------------------------------------------------------------

def complex_to_json(D) -> dict:
    if isinstance(D, EmptyComplex):
        return {"vertices": list(D.vertices.names), "facets": []}
    return {
        "vertices": list(D.vertices.names),
        "facets": [sorted(f, key=D.vertices.index) for f in D.facets],
    }


def complex_from_json(obj: dict):
    if not isinstance(obj, dict) or "vertices" not in obj or "facets" not in obj:
        raise ValueError("complex JSON needs 'vertices' and 'facets'")
    vars = VariableSet(tuple(obj["vertices"]))
    facets = tuple(frozenset(f) for f in obj["facets"])
    if not facets:
        return EmptyComplex(vars)
    return SimplicialComplex(vars, facets)
