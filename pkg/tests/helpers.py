"""Shared builders and the printed-matrix comparator used across tests."""

from __future__ import annotations

import random

from treeres.monomial import (
    Monomial,
    MonomialIdeal,
    VariableSet,
    minimalize,
    parse_ideal,
    parse_monomial,
)
from treeres.complexes import SimplicialComplex

SIX_VAR_IDEAL_TEXT = "vars x1 x2 x3 x4 x5 x6\nx1*x3*x6, x1*x4*x6, x1*x2*x4, x4*x5*x6\n"
STAR_IDEAL_TEXT = "vars x1 x2 x3 x4 x5\nx1*x2*x3, x1*x2*x4, x1*x3*x4, x2*x3*x4\n"


def six_var_ideal() -> MonomialIdeal:
    return parse_ideal(SIX_VAR_IDEAL_TEXT)


def star_ideal() -> MonomialIdeal:
    return parse_ideal(STAR_IDEAL_TEXT)


def mono(vars: VariableSet, text: str) -> Monomial:
    return parse_monomial(vars, text)


def cx(names, facets) -> SimplicialComplex:
    return SimplicialComplex(
        VariableSet(tuple(names)), tuple(frozenset(f) for f in facets)
    )


def hollow_triangle() -> SimplicialComplex:
    return cx("abc", [("a", "b"), ("b", "c"), ("c", "a")])


def column_fingerprint(F, degree: int = 2):
    """Degree-`degree` matrix of a FreeComplex, canonical up to row and
    column permutation and a global sign per column."""
    rows = F.modules[degree - 1]
    cols = F.modules[degree]
    per_col: dict[int, list] = {c: [] for c in range(len(cols))}
    for e in F.differentials[degree - 1]:
        per_col[e.col].append(
            (rows[e.row].exponents, e.monomial.exponents, e.sign)
        )
    out = []
    for c, entries in per_col.items():
        entries.sort()
        if entries and entries[0][2] == -1:
            entries = [(r, m, -s) for r, m, s in entries]
        out.append((cols[c].exponents, tuple(entries)))
    return tuple(sorted(out))


def printed_matrix_fingerprint(vars: VariableSet, columns) -> tuple:
    """Fingerprint of an explicitly given degree-2 matrix.

    ``columns`` maps a column multidegree string to a list of
    (row multidegree string, entry monomial string, sign) triples.
    """
    out = []
    for col_text, entries in columns:
        col = mono(vars, col_text)
        triples = sorted(
            (mono(vars, row).exponents, mono(vars, m).exponents, s)
            for row, m, s in entries
        )
        if triples and triples[0][2] == -1:
            triples = [(r, m, -s) for r, m, s in triples]
        out.append((col.exponents, tuple(triples)))
    return tuple(sorted(out))


def random_squarefree_ideal(rng: random.Random, max_vars: int = 6, max_gens: int = 5):
    n = rng.randint(2, max_vars)
    vars = VariableSet(tuple(f"x{i + 1}" for i in range(n)))
    k = rng.randint(1, max_gens)
    gens = []
    for _ in range(k):
        mask = rng.randint(1, (1 << n) - 1)
        gens.append(
            Monomial(vars, tuple(1 if mask >> i & 1 else 0 for i in range(n)))
        )
    return minimalize(gens)


def random_nonsquarefree_ideal(rng: random.Random):
    vars = VariableSet(("x", "y", "z"))
    while True:
        k = rng.randint(1, 4)
        gens = []
        for _ in range(k):
            exps = tuple(rng.randint(0, 2) for _ in range(3))
            if any(exps):
                gens.append(Monomial(vars, exps))
        if not gens:
            continue
        I = minimalize(gens)
        if I.q <= 4 and not I.is_squarefree():
            return I
