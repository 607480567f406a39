"""Exhaustive small-complex census and the cross-verification battery.

A census instance is a simplicial complex whose universe is x1..xn and
whose facets cover every vertex; ranging n over 1..N captures all
complexes on at most N vertices.  Each instance is pushed through every
equivalence and round trip the package claims, with the homology oracle
as ground truth; any discrepancy is reported as a violation record that
the CLI turns into a reproducer file.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterator

from .complexes import (
    SimplicialComplex,
    connected_components,
    f_vector,
    induced,
    is_connected,
    is_full_simplex,
    is_quasi_forest_by_induced,
    is_simplicial_forest,
    leaf_order,
    complex_to_json,
)
from .duality import (
    ZeroIdeal,
    alexander_dual,
    dual_facets,
    dual_generators,
    sr_complex,
    sr_ideal,
)
from .homology import BETTI_GUARD, betti, reduced_homology_dims
from .monomial import VariableSet, divides, lcm
from .resolution import (
    build_tree,
    differentials_in_maximal_ideal,
    enumerate_trees,
    floystad_tree,
    frame,
    frame_to_graph,
    homogenize,
    is_minimal_support,
    supports_resolution,
    taylor,
)
from .homology import is_exact_frame


def antichain_covers(n: int) -> Iterator[tuple[int, ...]]:
    """All antichains of nonempty subsets of an n-set whose union covers it.

    Facet masks come back sorted by (size, value).  Classic next-element
    enumeration: each antichain is visited exactly once.
    """
    subsets = sorted(range(1, 1 << n), key=lambda m: (bin(m).count("1"), m))
    full = (1 << n) - 1

    def compatible(m: int, chosen: list[int]) -> bool:
        return all(m & ~c != 0 and c & ~m != 0 for c in chosen)

    def go(start: int, chosen: list[int], union: int):
        if chosen and union == full:
            yield tuple(chosen)
        for k in range(start, len(subsets)):
            m = subsets[k]
            if compatible(m, chosen):
                chosen.append(m)
                yield from go(k + 1, chosen, union | m)
                chosen.pop()

    yield from go(0, [], 0)


def complex_from_masks(n: int, masks: tuple[int, ...]) -> SimplicialComplex:
    vars = VariableSet(tuple(f"x{i + 1}" for i in range(n)))
    facets = tuple(
        frozenset(vars.names[i] for i in range(n) if m >> i & 1) for m in masks
    )
    return SimplicialComplex(vars, facets)


def enumerate_complexes(max_vertices: int) -> Iterator[SimplicialComplex]:
    for n in range(1, max_vertices + 1):
        for masks in antichain_covers(n):
            yield complex_from_masks(n, masks)


def _remap_mask(mask: int, perm: tuple[int, ...]) -> int:
    out = 0
    for i, p in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << p
    return out


def iso_key(n: int, masks: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical form up to vertex relabeling: minimal facet encoding."""
    return min(
        tuple(sorted(_remap_mask(m, perm) for m in masks))
        for perm in itertools.permutations(range(n))
    )


# ---------------------------------------------------------------------------
# Per-complex verification.
# ---------------------------------------------------------------------------

@dataclass
class ComplexReport:
    n: int
    masks: tuple[int, ...]
    quasi_forest: bool = False
    simplicial_forest: bool = False
    connected: bool = False
    full_simplex: bool = False
    pd_ideal: int | None = None
    violations: list[str] = field(default_factory=list)

    def facets_json(self):
        return complex_to_json(complex_from_masks(self.n, self.masks))


def _acyclic(n_vertices: int, edges) -> bool:
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def _pairwise_connected(tree_lc) -> bool:
    """Divisor-induced connectivity checked only at pairwise lcms."""
    D = tree_lc.complex
    labels = tree_lc.labels
    names = D.vertices.names
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            m = lcm(labels[i], labels[j])
            W = [v for v, lab in zip(names, labels) if divides(lab, m)]
            sub = induced(D, W)
            if isinstance(sub, SimplicialComplex) and len(connected_components(sub)) > 1:
                return False
    return True


def _degree_filtration_is_spanning(tree_lc) -> bool:
    """Every label-degree slice of the tree spans the same-degree slice of
    the complete generator graph (equal component partitions)."""
    labels = tree_lc.labels
    q = len(labels)
    D = tree_lc.complex
    idx = {v: i for i, v in enumerate(D.vertices.names)}
    tree_edges = [
        tuple(sorted(idx[v] for v in f)) for f in D.facets if len(f) == 2
    ]
    degrees = sorted(
        {m.degree() for m in labels}
        | {lcm(labels[i], labels[j]).degree() for i in range(q) for j in range(i + 1, q)}
    )

    def components(edges, verts):
        parent = {v: v for v in verts}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in edges:
            parent[find(a)] = find(b)
        groups: dict[int, set[int]] = {}
        for v in verts:
            groups.setdefault(find(v), set()).add(v)
        return sorted(frozenset(g) for g in groups.values())

    for d in degrees:
        verts = [i for i in range(q) if labels[i].degree() <= d]
        k_edges = [
            (i, j)
            for i in range(q)
            for j in range(i + 1, q)
            if i in verts and j in verts and lcm(labels[i], labels[j]).degree() <= d
        ]
        t_edges = [
            (a, b)
            for a, b in tree_edges
            if labels[a].degree() <= d
            and labels[b].degree() <= d
            and lcm(labels[a], labels[b]).degree() <= d
        ]
        if components(k_edges, verts) != components(t_edges, verts):
            return False
    return True


def check_complex(payload, full_trees: bool = True) -> ComplexReport:
    """Run every invariant on one census complex."""
    n, masks = payload
    D = complex_from_masks(n, masks)
    rep = ComplexReport(n=n, masks=tuple(masks))
    rep.full_simplex = is_full_simplex(D)
    rep.connected = is_connected(D)

    # Leaf-order recognizers must agree with each other and with the
    # induced-subcomplex characterization.
    greedy = leaf_order(D, "greedy") is not None
    exhaustive = leaf_order(D, "exhaustive") is not None
    induced_qf = is_quasi_forest_by_induced(D)
    if not (greedy == exhaustive == induced_qf):
        rep.violations.append(
            f"quasi-forest recognizers disagree: greedy={greedy} "
            f"exhaustive={exhaustive} induced={induced_qf}"
        )
    rep.quasi_forest = exhaustive
    rep.simplicial_forest = is_simplicial_forest(D)
    if rep.simplicial_forest and not rep.quasi_forest:
        rep.violations.append("simplicial forest without a leaf order")

    _check_duality(D, rep)
    _check_euler(D, rep)
    if not rep.full_simplex:
        _check_threeway(D, rep, full_trees=full_trees)
    return rep


def _check_duality(D: SimplicialComplex, rep: ComplexReport) -> None:
    I = sr_ideal(D)
    if isinstance(I, ZeroIdeal):
        if not rep.full_simplex:
            rep.violations.append("zero Stanley-Reisner ideal off the full simplex")
    else:
        back = sr_complex(I)
        if back != D:
            rep.violations.append("sr_complex(sr_ideal(D)) != D")
        if not isinstance(sr_ideal(back), ZeroIdeal) and not sr_ideal(back).same_ideal(I):
            rep.violations.append("sr_ideal round trip unstable")

    dd = alexander_dual(alexander_dual(D))
    if dd != D:
        rep.violations.append("alexander dual is not an involution")

    if not rep.full_simplex:
        J = dual_generators(D)
        if dual_facets(J) != D:
            rep.violations.append("dual_facets(dual_generators(D)) != D")
        if not dual_generators(dual_facets(J)).same_ideal(J):
            rep.violations.append("dual_generators round trip unstable")
        composite = sr_ideal(alexander_dual(D))
        if isinstance(composite, ZeroIdeal) or not composite.same_ideal(J):
            rep.violations.append(
                "complement generators disagree with sr_ideal of the dual"
            )


def _check_euler(D: SimplicialComplex, rep: ComplexReport) -> None:
    fv = f_vector(D)
    h = reduced_homology_dims(D)
    face_sum = -1 + sum(
        (1 if d % 2 == 0 else -1) * fv[d] for d in range(len(fv))
    )
    hom_sum = sum(
        (1 if (d - 1) % 2 == 0 else -1) * h[d] for d in range(len(h))
    )
    if face_sum != hom_sum:
        rep.violations.append(
            f"euler characteristic mismatch: faces {face_sum} vs homology {hom_sum}"
        )


def _check_threeway(D: SimplicialComplex, rep: ComplexReport, full_trees: bool) -> None:
    I = dual_generators(D)
    if I.q > BETTI_GUARD:
        # Oracle leg infeasible (facet counts past the Betti guard only
        # occur at six vertices); the combinatorial legs must still agree.
        if rep.quasi_forest:
            T = build_tree(D)
            if not (supports_resolution(T) and is_minimal_support(T)):
                rep.violations.append("quasi-forest whose tree fails the criteria")
        return
    table = betti(I)
    rep.pd_ideal = table.pd_quotient() - 1
    pd_le_1 = rep.pd_ideal <= 1

    tree_route = False
    if rep.quasi_forest:
        try:
            T = build_tree(D)
            tree_route = supports_resolution(T) and is_minimal_support(T)
        except ValueError as exc:
            rep.violations.append(f"build_tree failed on a quasi-forest: {exc}")
    if not (pd_le_1 == rep.quasi_forest == tree_route):
        rep.violations.append(
            f"three-way equivalence broken: pd<=1 is {pd_le_1}, "
            f"quasi-forest is {rep.quasi_forest}, tree route is {tree_route}"
        )

    # Taylor is always a resolution and bounds the Betti numbers.
    tay = taylor(I)
    if not tay.boundary_squares_to_zero():
        rep.violations.append("taylor differential does not square to zero")
    if not is_exact_frame(frame(tay)):
        rep.violations.append("taylor frame is not exact")
    totals = table.totals()
    for i, b in enumerate(totals):
        if i >= 1 and b > len(tay.modules[i]):
            rep.violations.append("betti numbers exceed the taylor ranks")
            break

    if rep.quasi_forest:
        _check_built_trees(D, I, table, rep, full_trees=full_trees)


def _check_built_trees(D, I, table, rep: ComplexReport, full_trees: bool) -> None:
    trees = enumerate_trees(D) if full_trees else [build_tree(D)]
    count = 0
    for T in trees:
        count += 1
        F = homogenize(T)
        if not F.boundary_squares_to_zero():
            rep.violations.append("homogenized tree differential squares nonzero")
        if not differentials_in_maximal_ideal(F):
            rep.violations.append("unit entry in a built tree's differential")
        sup = supports_resolution(T)
        if not sup:
            rep.violations.append("built tree does not support a resolution")
        if not is_minimal_support(T):
            rep.violations.append("built tree fails the subface-label criterion")
        if _pairwise_connected(T) and not sup:
            rep.violations.append("pairwise lcm connectivity did not imply full support")
        if not _degree_filtration_is_spanning(T):
            rep.violations.append("degree filtration is not a spanning forest chain")
        fr = frame(F)
        if not is_exact_frame(fr):
            rep.violations.append("built tree frame is not exact")
        if len(fr.dims) == 3:
            edges = frame_to_graph(fr)
            if edges is None or len(edges) != fr.dims[1] - 1 or not _acyclic(
                fr.dims[1], edges
            ):
                rep.violations.append("frame is not the chain complex of a tree")
        hdims = reduced_homology_dims(T.complex)
        if any(hdims[1:]):
            rep.violations.append("built tree has nonzero reduced homology")

    # Oracle totals agree with the f-vector ranks (1, f0, f1).
    first = build_tree(D)
    fv = f_vector(first.complex)
    expected = (1,) + fv
    if table.totals() != tuple(expected):
        rep.violations.append(
            f"betti totals {table.totals()} != (1, f-vector) {expected}"
        )

    # Degree-ordered spanning construction agrees with the criteria.
    ft = floystad_tree(I)
    if not (supports_resolution(ft) and is_minimal_support(ft)):
        rep.violations.append("degree-ordered spanning tree fails the criteria")


# ---------------------------------------------------------------------------
# Aggregation.
# ---------------------------------------------------------------------------

@dataclass
class CensusResult:
    max_vertices: int
    total: int = 0
    iso_classes: int = 0
    quasi_forests: int = 0
    simplicial_forests: int = 0
    quasi_trees: int = 0
    pd_le_1: int = 0
    full_simplices: int = 0
    violations: list[dict] = field(default_factory=list)
    strictness_witness: dict | None = None

    def summary_lines(self) -> list[str]:
        lines = [
            f"complexes on <= {self.max_vertices} vertices: {self.total} "
            f"({self.iso_classes} up to relabeling)",
            f"quasi-forests: {self.quasi_forests} "
            f"(quasi-trees: {self.quasi_trees})",
            f"simplicial forests: {self.simplicial_forests}",
            f"pd(ideal) <= 1 instances: {self.pd_le_1}",
            f"full simplices (skipped by the equivalence): {self.full_simplices}",
            f"violations: {len(self.violations)}",
        ]
        if self.strictness_witness:
            lines.append(
                "quasi-forest but not simplicial forest witness: "
                f"{self.strictness_witness['facets']}"
            )
        return lines


def _worker(payload):
    (n, masks), full_trees = payload
    return check_complex((n, masks), full_trees=full_trees)


def run_census(max_vertices: int, workers: int = 1, full_trees: bool = True) -> CensusResult:
    if max_vertices > 6:
        raise ValueError("census guard: max_vertices <= 6")
    payloads = [
        (n, masks)
        for n in range(1, max_vertices + 1)
        for masks in antichain_covers(n)
    ]
    result = CensusResult(max_vertices=max_vertices)
    iso_seen: set[tuple] = set()

    if workers > 1:
        with Pool(workers) as pool:
            reports = pool.map(
                _worker, [(p, full_trees) for p in payloads], chunksize=64
            )
    else:
        reports = [check_complex(p, full_trees=full_trees) for p in payloads]

    for rep in reports:
        result.total += 1
        key = (rep.n, iso_key(rep.n, rep.masks))
        if key not in iso_seen:
            iso_seen.add(key)
        if rep.quasi_forest:
            result.quasi_forests += 1
            if rep.connected:
                result.quasi_trees += 1
        if rep.simplicial_forest:
            result.simplicial_forests += 1
        if rep.full_simplex:
            result.full_simplices += 1
        if rep.pd_ideal is not None and rep.pd_ideal <= 1:
            result.pd_le_1 += 1
        if rep.quasi_forest and not rep.simplicial_forest and result.strictness_witness is None:
            result.strictness_witness = rep.facets_json()
        for message in rep.violations:
            result.violations.append(
                {
                    "invariant": message,
                    "complex": rep.facets_json(),
                }
            )
    result.iso_classes = len(iso_seen)
    return result
