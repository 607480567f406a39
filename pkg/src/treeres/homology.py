"""Exact linear algebra over the rationals and the homology oracles.

Everything here is independent of the tree constructions it is used to
check: ranks come from fraction-free (Bareiss) elimination on integers,
reduced homology from augmented boundary matrices, and the graded Betti
numbers from strict-divisor subcomplexes of the labeled full simplex on
the generators.  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm as int_lcm
from typing import Iterable, Sequence

from .complexes import EmptyComplex, VoidComplex, faces
from .monomial import Monomial, MonomialIdeal, VariableSet, divides, lcm_closure
from .resolution import Frame

FACE_GUARD = 1 << 16
BETTI_GUARD = 12


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix of normalized rationals."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "entries",
            tuple(tuple(Fraction(x) for x in row) for row in self.entries),
        )
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise ValueError("entry grid does not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(Fraction(x) for x in r) for r in rows))

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols,
            self.rows,
            tuple(
                tuple(self.entries[r][c] for r in range(self.rows))
                for c in range(self.cols)
            ),
        )


def _integer_rows(M) -> list[list[int]]:
    if isinstance(M, ExactMatrix):
        rows = M.entries
    else:
        rows = [list(r) for r in M]
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        scale = 1
        for x in fracs:
            scale = int_lcm(scale, x.denominator)
        out.append([int(x * scale) for x in fracs])
    return out


def rank_exact(M) -> int:
    """Rank over the rationals by fraction-free Bareiss elimination.

    Row scaling clears denominators first; every intermediate division is
    exact, so the computation stays in the integers.
    """
    A = _integer_rows(M)
    if not A or not A[0]:
        return 0
    m, n = len(A), len(A[0])
    rank = 0
    prev = 1
    for k in range(min(m, n)):
        # Full pivoting: any nonzero entry in the trailing block.
        pivot = next(
            (
                (i, j)
                for i in range(k, m)
                for j in range(k, n)
                if A[i][j] != 0
            ),
            None,
        )
        if pivot is None:
            break
        pi, pj = pivot
        if pi != k:
            A[k], A[pi] = A[pi], A[k]
        if pj != k:
            for row in A:
                row[k], row[pj] = row[pj], row[k]
        rank += 1
        pk = A[k][k]
        for i in range(k + 1, m):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (pk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return rank


# ---------------------------------------------------------------------------
# Reduced simplicial homology over the rationals.
# ---------------------------------------------------------------------------

def _boundary_ranks(faces_by_dim: list[list[tuple[int, ...]]]) -> list[int]:
    """Ranks of the augmented boundary maps d_0, d_1, ..., d_top."""
    position = [
        {face: p for p, face in enumerate(bucket)} for bucket in faces_by_dim
    ]
    ranks = []
    # d_0: augmentation row of ones.
    ranks.append(1 if faces_by_dim[0] else 0)
    for d in range(1, len(faces_by_dim)):
        rows, cols = len(faces_by_dim[d - 1]), len(faces_by_dim[d])
        mat = [[0] * cols for _ in range(rows)]
        for c, face in enumerate(faces_by_dim[d]):
            for pos in range(len(face)):
                sub = face[:pos] + face[pos + 1:]
                mat[position[d - 1][sub]][c] = -1 if pos % 2 else 1
        ranks.append(rank_exact(mat))
    return ranks


def homology_dims_of_faces(face_sets: Iterable[frozenset[int]]) -> tuple[int, ...]:
    """Reduced homology dimensions, indexed from degree -1.

    The input lists the nonempty faces; the empty face always sits in
    degree -1, so an empty input is the complex with only the empty face
    and reports a single 1 there.
    """
    face_list = {frozenset(f) for f in face_sets}
    if not face_list:
        return (1,)
    if len(face_list) > FACE_GUARD:
        raise ValueError(f"homology guard exceeded ({len(face_list)} faces)")
    top = max(len(f) for f in face_list) - 1
    by_dim: list[list[tuple[int, ...]]] = [[] for _ in range(top + 1)]
    for f in face_list:
        by_dim[len(f) - 1].append(tuple(sorted(f)))
    for bucket in by_dim:
        bucket.sort()
    ranks = _boundary_ranks(by_dim)
    ranks.append(0)  # d_{top+1} = 0
    dims = [1 - ranks[0]]
    for d in range(top + 1):
        dims.append(len(by_dim[d]) - ranks[d] - ranks[d + 1])
    return tuple(dims)


def reduced_homology_dims(D) -> tuple[int, ...]:
    """Reduced rational homology of a complex, degrees -1 through dim.

    The empty complex (only the empty face) has a single 1 in degree -1;
    the void complex has no homology at all and yields the empty tuple.
    """
    if isinstance(D, VoidComplex):
        return ()
    if isinstance(D, EmptyComplex):
        return (1,)
    index = D.vertices.index
    return homology_dims_of_faces(
        frozenset(index(v) for v in f) for f in faces(D)
    )


# ---------------------------------------------------------------------------
# Frame exactness.
# ---------------------------------------------------------------------------

def is_exact_frame(fr: Frame) -> bool:
    """Homology of the frame vanishes in every positive degree.

    Demands d.d = 0 over the integers up front and then compares ranks:
    dim ker d_i = rank d_{i+1} for i >= 1.
    """
    length = len(fr.dims) - 1
    for i in range(1, length):
        a, b = fr.matrices[i - 1], fr.matrices[i]
        for r in range(fr.dims[i - 1]):
            for c in range(fr.dims[i + 1]):
                if sum(a[r][k] * b[k][c] for k in range(fr.dims[i])) != 0:
                    raise ValueError("frame differentials do not compose to zero")
    ranks = [rank_exact(mat) for mat in fr.matrices]
    ranks.append(0)
    for i in range(1, length + 1):
        if fr.dims[i] - ranks[i - 1] - ranks[i] != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Multigraded Betti numbers of S/I via strict-divisor subcomplexes.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BettiTable:
    """Map (homological degree, multidegree) -> count, plus derived totals."""

    vars: VariableSet
    entries: tuple[tuple[int, Monomial, int], ...]

    def __post_init__(self):
        for i, m, b in self.entries:
            if i < 0 or b <= 0:
                raise ValueError("entries must have i >= 0 and positive counts")
            if m.vars != self.vars:
                raise ValueError("multidegree over a different variable set")

    @cached_property
    def graded(self) -> dict[tuple[int, Monomial], int]:
        return {(i, m): b for i, m, b in self.entries}

    def beta(self, i: int, m: Monomial) -> int:
        return self.graded.get((i, m), 0)

    def totals(self) -> tuple[int, ...]:
        top = max(i for i, _, _ in self.entries)
        out = [0] * (top + 1)
        for i, _, b in self.entries:
            out[i] += b
        return tuple(out)

    def pd_quotient(self) -> int:
        return max(i for i, _, _ in self.entries)


def betti(I: MonomialIdeal) -> BettiTable:
    """Graded Betti numbers of S/I.

    For each lcm-lattice element m, beta_{i,m} is the reduced homology in
    degree i-2 of the faces of the labeled full simplex on the generators
    whose label strictly divides m; beta_0 is 1 at multidegree 1.  Valid
    for arbitrary (not only squarefree) monomial ideals.
    """
    if I.q > BETTI_GUARD:
        raise ValueError(f"betti guard exceeded (q={I.q})")
    gens = I.generators
    entries: list[tuple[int, Monomial, int]] = [
        (0, Monomial.one(I.vars), 1)
    ]
    for m in sorted(lcm_closure(gens), key=lambda x: (x.degree(), x.exponents)):
        divisor_idx = [k for k, g in enumerate(gens) if divides(g, m)]
        k = len(divisor_idx)
        # lcm of each subset by peeling the lowest bit.
        sub_lcm: list[tuple[int, ...] | None] = [None] * (1 << k)
        strict_faces: list[frozenset[int]] = []
        for mask in range(1, 1 << k):
            low = mask & -mask
            bit = low.bit_length() - 1
            rest = mask ^ low
            g = gens[divisor_idx[bit]].exponents
            if rest == 0:
                sub_lcm[mask] = g
            else:
                sub_lcm[mask] = tuple(map(max, sub_lcm[rest], g))
            if sub_lcm[mask] != m.exponents:
                strict_faces.append(
                    frozenset(
                        divisor_idx[b] for b in range(k) if mask >> b & 1
                    )
                )
        dims = homology_dims_of_faces(strict_faces)
        for i in range(1, k + 2):
            pos = i - 1  # dims is indexed from degree -1
            if 0 <= pos < len(dims) and dims[pos] > 0:
                entries.append((i, m, dims[pos]))
    entries.sort(key=lambda t: (t[0], t[1].degree(), t[1].exponents))
    return BettiTable(I.vars, tuple(entries))


def pd_quotient(I: MonomialIdeal) -> int:
    """Projective dimension of S/I."""
    return betti(I).pd_quotient()


def pd_ideal(I: MonomialIdeal) -> int:
    """Projective dimension of the ideal itself: pd(S/I) - 1."""
    return pd_quotient(I) - 1


def betti_to_json(table: BettiTable) -> dict:
    return {
        "vars": list(table.vars.names),
        "total": list(table.totals()),
        "graded": [
            {"i": i, "multidegree": list(m.exponents), "beta": b}
            for i, m, b in table.entries
        ],
    }


def betti_from_json(obj: dict) -> BettiTable:
    vars = VariableSet(tuple(obj["vars"]))
    entries = tuple(
        (e["i"], Monomial(vars, tuple(e["multidegree"])), e["beta"])
        for e in obj["graded"]
    )
    table = BettiTable(vars, entries)
    if list(table.totals()) != list(obj["total"]):
        raise ValueError("totals disagree with graded entries")
    return table
