"""Labeled complexes, homogenization into free complexes, the tree
constructions for projective-dimension-1 ideals, and frames.

Conventions: the vertices of a face are ordered by their universe index
and boundary signs alternate from that order, so signs are a basis choice.
Comparisons against externally printed matrices must therefore allow row
and column permutation and a global sign per column.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .complexes import (
    SimplicialComplex,
    _joint_positions,
    connected_components,
    faces,
    induced,
    is_leaf_order,
    is_simplicial_forest,
    leaf_order,
    all_leaf_orders,
)
from .duality import dual_facets, dual_generators
from .monomial import (
    Monomial,
    MonomialIdeal,
    VariableSet,
    divides,
    lcm,
    lcm_all,
    lcm_closure,
    parse_monomial,
    quotient,
)

TAYLOR_GUARD = 20


@dataclass(frozen=True)
class LabeledComplex:
    """Simplicial complex with one monomial label per universe vertex."""

    complex: SimplicialComplex
    labels: tuple[Monomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != self.complex.n:
            raise ValueError("need exactly one label per vertex")
        vars = self.labels[0].vars
        if any(m.vars != vars for m in self.labels):
            raise ValueError("labels over mixed variable sets")

    @property
    def label_vars(self) -> VariableSet:
        return self.labels[0].vars

    def label_of(self, vertex: str) -> Monomial:
        return self.labels[self.complex.vertices.index(vertex)]

    def face_label(self, face: Iterable[str]) -> Monomial:
        ms = [self.label_of(v) for v in face]
        if not ms:
            return Monomial.one(self.label_vars)
        return lcm_all(ms)

    def label_ideal(self) -> MonomialIdeal:
        return MonomialIdeal(self.label_vars, self.labels)


class Entry(NamedTuple):
    row: int
    col: int
    sign: int
    monomial: Monomial


@dataclass(frozen=True)
class FreeComplex:
    """Chain complex of multigraded free modules.

    ``modules[i]`` lists the multidegrees of the degree-i module
    (degree 0 is the single multidegree 1); ``differentials[i-1]`` is the
    sparse matrix of d_i with entries (row, col, sign, monomial).
    """

    vars: VariableSet
    modules: tuple[tuple[Monomial, ...], ...]
    differentials: tuple[tuple[Entry, ...], ...]

    def __post_init__(self):
        if not self.modules or self.modules[0] != (Monomial.one(self.vars),):
            raise ValueError("degree 0 must be the single multidegree 1")
        if len(self.differentials) != len(self.modules) - 1:
            raise ValueError("need one differential per positive degree")
        for i, entries in enumerate(self.differentials, start=1):
            rows, cols = len(self.modules[i - 1]), len(self.modules[i])
            for e in entries:
                if not (0 <= e.row < rows and 0 <= e.col < cols):
                    raise ValueError(f"entry out of shape in d_{i}")
                if e.sign not in (1, -1):
                    raise ValueError("entry signs must be +1 or -1")
                row_m, col_m = self.modules[i - 1][e.row], self.modules[i][e.col]
                if not divides(row_m, col_m) or quotient(col_m, row_m) != e.monomial:
                    raise ValueError(
                        f"entry monomial in d_{i} is not column/row multidegree"
                    )

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(len(m) for m in self.modules)

    def dense(self, i: int) -> list[list[Entry | None]]:
        """Row-major dense form of d_i (entries or None)."""
        rows, cols = len(self.modules[i - 1]), len(self.modules[i])
        out: list[list[Entry | None]] = [[None] * cols for _ in range(rows)]
        for e in self.differentials[i - 1]:
            out[e.row][e.col] = e
        return out

    def boundary_squares_to_zero(self) -> bool:
        """Symbolic check that consecutive differentials compose to zero."""
        for i in range(1, self.length):
            acc: dict[tuple[int, int, tuple[int, ...]], int] = {}
            inner = {}
            for e in self.differentials[i - 1]:
                inner.setdefault(e.col, []).append(e)
            for f in self.differentials[i]:
                for e in inner.get(f.row, ()):
                    mono = tuple(
                        a + b
                        for a, b in zip(e.monomial.exponents, f.monomial.exponents)
                    )
                    key = (e.row, f.col, mono)
                    acc[key] = acc.get(key, 0) + e.sign * f.sign
            if any(v != 0 for v in acc.values()):
                return False
        return True


def homogenize(L: LabeledComplex) -> FreeComplex:
    """Free complex of the labeled complex.

    Degree i has one summand per (i-1)-face, of multidegree the face
    label; d_i carries simplicial boundary signs and quotient monomials,
    with d_1 the row of vertex labels.
    """
    D = L.complex
    index = D.vertices.index
    by_dim: list[list[tuple[int, ...]]] = [[] for _ in range(D.dim + 1)]
    for face in faces(D):
        key = tuple(sorted(index(v) for v in face))
        by_dim[len(key) - 1].append(key)
    for bucket in by_dim:
        bucket.sort()
    position = [
        {face: p for p, face in enumerate(bucket)} for bucket in by_dim
    ]

    names = D.vertices.names
    modules: list[tuple[Monomial, ...]] = [(Monomial.one(L.label_vars),)]
    for bucket in by_dim:
        modules.append(
            tuple(L.face_label(names[i] for i in face) for face in bucket)
        )

    diffs: list[tuple[Entry, ...]] = []
    # d_1: boundary of a vertex is the empty face.
    diffs.append(
        tuple(
            Entry(0, p, 1, modules[1][p])
            for p in range(len(by_dim[0]))
        )
    )
    for d in range(1, D.dim + 1):
        entries = []
        for col, face in enumerate(by_dim[d]):
            big = modules[d + 1][col]
            for pos in range(len(face)):
                sub = face[:pos] + face[pos + 1:]
                row = position[d - 1][sub]
                small = modules[d][row]
                entries.append(
                    Entry(row, col, -1 if pos % 2 else 1, quotient(big, small))
                )
        diffs.append(tuple(entries))
    return FreeComplex(L.label_vars, tuple(modules), tuple(diffs))


def _generator_vertex_names(q: int) -> VariableSet:
    return VariableSet(tuple(f"v{i + 1}" for i in range(q)))


def taylor(I: MonomialIdeal) -> FreeComplex:
    """Homogenization of the full simplex on the generators."""
    if I.q > TAYLOR_GUARD:
        raise ValueError(f"taylor guard exceeded (q={I.q})")
    verts = _generator_vertex_names(I.q)
    D = SimplicialComplex(verts, (frozenset(verts.names),))
    return homogenize(LabeledComplex(D, I.generators))


def lcm_lattice(I: MonomialIdeal) -> frozenset[Monomial]:
    """All lcms of nonempty generator subsets."""
    if I.q > TAYLOR_GUARD:
        raise ValueError(f"lcm lattice guard exceeded (q={I.q})")
    return lcm_closure(I.generators)


def supports_resolution(L: LabeledComplex) -> bool:
    """Divisor-induced connectivity over the whole lcm lattice of the labels.

    Requires the underlying complex to be a simplicial forest; checks that
    for every lattice element the subcomplex induced on vertices whose
    labels divide it is connected (empty or one vertex counts).
    """
    if not is_simplicial_forest(L.complex):
        raise ValueError("not a simplicial forest")
    D = L.complex
    names = D.vertices.names
    for m in lcm_closure(L.labels):
        W = [v for v, lab in zip(names, L.labels) if divides(lab, m)]
        if not W:
            continue
        sub = induced(D, W)
        if isinstance(sub, SimplicialComplex) and len(connected_components(sub)) > 1:
            return False
    return True


def is_minimal_support(L: LabeledComplex) -> bool:
    """No face label equals the label of a proper subface.

    Labels grow monotonically along inclusions, so checking codimension-1
    subfaces (and vertices against the empty face's label 1) suffices.
    """
    index = L.complex.vertices.index
    names = L.complex.vertices.names
    for face in faces(L.complex):
        key = tuple(sorted(index(v) for v in face))
        big = L.face_label(names[i] for i in key)
        if len(key) == 1:
            if big.is_one():
                return False
            continue
        for pos in range(len(key)):
            sub = key[:pos] + key[pos + 1:]
            if L.face_label(names[i] for i in sub) == big:
                return False
    return True


def _tree_complex(q: int, edges: Sequence[tuple[int, int]]) -> SimplicialComplex:
    verts = _generator_vertex_names(q)
    if q == 1:
        return SimplicialComplex(verts, (frozenset({verts.names[0]}),))
    facets = tuple(
        frozenset({verts.names[a], verts.names[b]}) for a, b in edges
    )
    return SimplicialComplex(verts, facets)


def _resolve_order(D: SimplicialComplex, order):
    if order is not None:
        order = tuple(order)
        if not is_leaf_order(D, order):
            raise ValueError("the given order is not a leaf order")
        return order
    identity = tuple(range(D.q))
    if is_leaf_order(D, identity):
        return identity
    found = leaf_order(D, "greedy")
    if found is None:
        raise ValueError("not a quasi-forest: no leaf order exists")
    return found


def build_tree(D: SimplicialComplex, order=None, joint_choice: str = "smallest-index"):
    """Tree on one vertex per facet, labeled by the complement generators.

    Walks the leaf order; each new vertex is joined to a joint of its facet
    in the prefix subcollection.  ``smallest-index`` picks the earliest
    joint in the order and returns a single LabeledComplex;
    ``enumerate-all`` returns the tuple of all distinct trees obtainable
    across every leaf order and every joint choice.
    """
    if joint_choice == "enumerate-all":
        return tuple(enumerate_trees(D))
    if joint_choice != "smallest-index":
        raise ValueError(f"unknown joint choice {joint_choice!r}")
    labels = dual_generators(D).generators
    order = _resolve_order(D, order)
    masks = D._facet_masks
    edges = []
    for i in range(1, D.q):
        prefix = [masks[order[j]] for j in range(i + 1)]
        joint_pos = _joint_positions(prefix, i)
        u = min(joint_pos)
        edges.append((order[u], order[i]))
    return LabeledComplex(_tree_complex(D.q, edges), labels)


def enumerate_trees(D: SimplicialComplex) -> Iterator[LabeledComplex]:
    """Every distinct labeled tree the construction can produce."""
    labels = dual_generators(D).generators
    masks = D._facet_masks
    seen: set[frozenset[tuple[int, int]]] = set()

    for order in all_leaf_orders(D):
        choices_per_step = []
        for i in range(1, D.q):
            prefix = [masks[order[j]] for j in range(i + 1)]
            choices_per_step.append(
                [order[u] for u in _joint_positions(prefix, i)]
            )
        for picks in itertools.product(*choices_per_step):
            edges = tuple(
                (picks[i - 1], order[i]) for i in range(1, D.q)
            )
            key = frozenset(tuple(sorted(e)) for e in edges)
            if key in seen:
                continue
            seen.add(key)
            yield LabeledComplex(_tree_complex(D.q, edges), labels)


def floystad_tree(I: MonomialIdeal) -> LabeledComplex:
    """Spanning tree of the complete generator graph, grown degree by degree.

    Candidate edges are taken in (lcm total degree, row, col) order and
    added when they keep the subgraph acyclic, so every degree slice is a
    spanning forest of the corresponding label-degree subgraph.
    """
    if not I.is_squarefree():
        raise ValueError("needs a squarefree ideal; polarize first")
    q = I.q
    if q == 1:
        return LabeledComplex(_tree_complex(1, ()), I.generators)
    if leaf_order(dual_facets(I), "greedy") is None:
        raise ValueError("projective dimension exceeds 1: no spanning construction")
    gens = I.generators
    candidates = sorted(
        ((lcm(gens[i], gens[j]).degree(), i, j)
         for i in range(q) for j in range(i + 1, q)),
    )
    parent = list(range(q))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges: list[tuple[int, int]] = []
    for _, i, j in candidates:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            edges.append((i, j))
            if len(edges) == q - 1:
                break
    if len(edges) != q - 1:
        raise ValueError("spanning construction failed; precondition violated")
    return LabeledComplex(_tree_complex(q, edges), gens)


def differentials_in_maximal_ideal(F: FreeComplex) -> bool:
    """True iff every differential entry is a non-unit monomial."""
    return all(
        not e.monomial.is_one()
        for entries in F.differentials
        for e in entries
    )


# ---------------------------------------------------------------------------
# Frames: same shapes with every monomial set to 1.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Frame:
    dims: tuple[int, ...]
    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if len(self.matrices) != len(self.dims) - 1:
            raise ValueError("need one matrix per positive degree")
        for i, mat in enumerate(self.matrices, start=1):
            if len(mat) != self.dims[i - 1] or any(
                len(row) != self.dims[i] for row in mat
            ):
                raise ValueError(f"matrix shape mismatch in degree {i}")


def frame(F: FreeComplex) -> Frame:
    """Forget the monomials, keep the signs."""
    mats = []
    for i in range(1, F.length + 1):
        rows, cols = len(F.modules[i - 1]), len(F.modules[i])
        mat = [[0] * cols for _ in range(rows)]
        for e in F.differentials[i - 1]:
            mat[e.row][e.col] = e.sign
        mats.append(tuple(tuple(row) for row in mat))
    return Frame(F.ranks, tuple(mats))


def frame_to_graph(fr: Frame):
    """Vertices from degree 1, one edge per degree-2 column.

    Needs a length-2 frame whose degree-2 columns each hold exactly one +1
    and one -1; returns None when that shape fails.
    """
    if len(fr.dims) != 3:
        return None
    edges = []
    mat = fr.matrices[1]
    rows, cols = fr.dims[1], fr.dims[2]
    for c in range(cols):
        plus = [r for r in range(rows) if mat[r][c] == 1]
        minus = [r for r in range(rows) if mat[r][c] == -1]
        if len(plus) != 1 or len(minus) != 1:
            return None
        if any(mat[r][c] not in (-1, 0, 1) for r in range(rows)):
            return None
        edges.append((minus[0], plus[0]))
    return tuple(edges)


# ---------------------------------------------------------------------------
# Serialization.
# ---------------------------------------------------------------------------

def free_complex_to_json(F: FreeComplex) -> dict:
    return {
        "vars": list(F.vars.names),
        "ranks": list(F.ranks),
        "multidegrees": [
            [list(m.exponents) for m in module] for module in F.modules
        ],
        "differentials": [
            [
                {
                    "row": e.row,
                    "col": e.col,
                    "sign": e.sign,
                    "monomial": list(e.monomial.exponents),
                }
                for e in entries
            ]
            for entries in F.differentials
        ],
    }


def free_complex_from_json(obj: dict) -> FreeComplex:
    vars = VariableSet(tuple(obj["vars"]))
    modules = tuple(
        tuple(Monomial(vars, tuple(exps)) for exps in module)
        for module in obj["multidegrees"]
    )
    diffs = tuple(
        tuple(
            Entry(e["row"], e["col"], e["sign"], Monomial(vars, tuple(e["monomial"])))
            for e in entries
        )
        for entries in obj["differentials"]
    )
    F = FreeComplex(vars, modules, diffs)
    if list(F.ranks) != list(obj["ranks"]):
        raise ValueError("ranks disagree with module lists")
    return F


def labeled_complex_to_json(L: LabeledComplex) -> dict:
    D = L.complex
    return {
        "vars": list(L.label_vars.names),
        "vertices": list(D.vertices.names),
        "facets": [sorted(f, key=D.vertices.index) for f in D.facets],
        "labels": {
            v: str(m) for v, m in zip(D.vertices.names, L.labels)
        },
    }


def labeled_complex_from_json(obj: dict) -> LabeledComplex:
    vars = VariableSet(tuple(obj["vars"]))
    verts = VariableSet(tuple(obj["vertices"]))
    D = SimplicialComplex(verts, tuple(frozenset(f) for f in obj["facets"]))
    labels = tuple(
        parse_monomial(vars, obj["labels"][v]) for v in verts.names
    )
    return LabeledComplex(D, labels)


def tree_to_dot(L: LabeledComplex) -> str:
    """DOT graph: vertices labeled by their monomials, edges by lcms."""
    D = L.complex
    lines = ["graph tree {"]
    for v in D.vertices.names:
        lines.append(f'  {v} [label="{L.label_of(v)}"];')
    for f in D.facets:
        if len(f) == 2:
            a, b = sorted(f, key=D.vertices.index)
            lines.append(f'  {a} -- {b} [label="{L.face_label(f)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
