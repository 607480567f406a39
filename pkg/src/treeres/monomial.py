"""Exact monomial arithmetic over a named variable set.

Values are immutable and every operation is pure.  Generator order is
significant throughout the package: it fixes vertex indices in the tree
constructions downstream, so nothing here reorders a generating set
silently.  Equality of ideals as *sets* of generators is a separate
predicate (``MonomialIdeal.same_ideal``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class ParseError(ValueError):
    """Rejected input text; the message names the line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class VariableSet:
    """Ordered list of distinct variable names; index order is significant."""

    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not self.names:
            raise ValueError("a variable set needs at least one name")
        seen = set()
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad variable name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate variable name {name!r}")
            seen.add(name)

    @property
    def n(self) -> int:
        return len(self.names)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __iter__(self):
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)


@dataclass(frozen=True)
class Monomial:
    """Dense exponent vector over a VariableSet."""

    vars: VariableSet
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if len(self.exponents) != self.vars.n:
            raise ValueError(
                f"exponent vector of length {len(self.exponents)} over "
                f"{self.vars.n} variables"
            )
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")

    @classmethod
    def one(cls, vars: VariableSet) -> "Monomial":
        return cls(vars, (0,) * vars.n)

    @classmethod
    def from_powers(cls, vars: VariableSet, powers: Mapping[str, int]) -> "Monomial":
        exps = [0] * vars.n
        for name, e in powers.items():
            exps[vars.index(name)] += e
        return cls(vars, tuple(exps))

    def degree(self) -> int:
        return sum(self.exponents)

    def is_one(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    @cached_property
    def support_mask(self) -> int:
        mask = 0
        for i, e in enumerate(self.exponents):
            if e:
                mask |= 1 << i
        return mask

    def support(self) -> frozenset[str]:
        return frozenset(
            name for name, e in zip(self.vars.names, self.exponents) if e
        )

    def __str__(self) -> str:
        factors = []
        for name, e in zip(self.vars.names, self.exponents):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors) if factors else "1"


def _check_same_vars(a: Monomial, b: Monomial) -> None:
    if a.vars != b.vars:
        raise ValueError(f"mismatched variable sets: {a.vars.names} vs {b.vars.names}")


def divides(a: Monomial, b: Monomial) -> bool:
    """True iff every exponent of ``a`` is <= the matching exponent of ``b``."""
    _check_same_vars(a, b)
    if a.is_squarefree() and b.is_squarefree():
        return a.support_mask & ~b.support_mask == 0
    return all(x <= y for x, y in zip(a.exponents, b.exponents))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    """Componentwise max of exponents."""
    _check_same_vars(a, b)
    return Monomial(a.vars, tuple(map(max, a.exponents, b.exponents)))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    """Componentwise min of exponents."""
    _check_same_vars(a, b)
    return Monomial(a.vars, tuple(map(min, a.exponents, b.exponents)))


def quotient(a: Monomial, b: Monomial) -> Monomial:
    """Exact division a / b; requires b | a."""
    _check_same_vars(a, b)
    if not divides(b, a):
        raise ValueError(f"{b} does not divide {a}")
    return Monomial(a.vars, tuple(x - y for x, y in zip(a.exponents, b.exponents)))


def lcm_all(monomials: Iterable[Monomial]) -> Monomial:
    ms = list(monomials)
    if not ms:
        raise ValueError("lcm of an empty collection")
    out = ms[0]
    for m in ms[1:]:
        out = lcm(out, m)
    return out


def lcm_closure(monomials: Sequence[Monomial]) -> frozenset[Monomial]:
    """All lcms of nonempty subsets: the closure under pairwise lcm."""
    if not monomials:
        raise ValueError("lcm closure of an empty collection")
    closed: set[Monomial] = set(monomials)
    frontier = list(closed)
    while frontier:
        nxt = []
        for m in frontier:
            for g in monomials:
                v = lcm(m, g)
                if v not in closed:
                    closed.add(v)
                    nxt.append(v)
        frontier = nxt
    return frozenset(closed)


@dataclass(frozen=True)
class MonomialIdeal:
    """Proper monomial ideal given by its ordered minimal generating set."""

    vars: VariableSet
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not self.generators:
            raise ValueError("an ideal needs at least one generator")
        for g in self.generators:
            if g.vars != self.vars:
                raise ValueError("generator over a different variable set")
            if g.is_one():
                raise ValueError("the unit monomial cannot be a generator")
        for i, g in enumerate(self.generators):
            for j, h in enumerate(self.generators):
                if i != j and divides(h, g):
                    raise ValueError(
                        f"not an antichain: {h} divides {g}; minimalize first"
                    )

    @property
    def q(self) -> int:
        return len(self.generators)

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.generators)

    def same_ideal(self, other: "MonomialIdeal") -> bool:
        """Order-insensitive equality of minimal generating sets."""
        return self.vars == other.vars and set(self.generators) == set(
            other.generators
        )

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.generators)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


class _UnitIdeal:
    """Distinguished outcome: a restriction collapsed to the whole ring."""

    __slots__ = ()

    def __repr__(self):
        return "UNIT_IDEAL"


UNIT_IDEAL = _UnitIdeal()


def minimalize(gens: Sequence[Monomial]) -> MonomialIdeal:
    """Keep the divisibility-minimal generators, first occurrence wins.

    Relative order of the survivors is preserved.
    """
    if not gens:
        raise ValueError("cannot minimalize an empty generator list")
    vars = gens[0].vars
    for g in gens:
        if g.vars != vars:
            raise ValueError("mixed variable sets in generator list")
        if g.is_one():
            raise ValueError("the unit monomial cannot be a generator")
    keep = []
    for i, g in enumerate(gens):
        dominated = False
        for j, h in enumerate(gens):
            if i == j:
                continue
            if divides(h, g) and (h.exponents != g.exponents or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    return MonomialIdeal(vars, tuple(keep))


def polarize(I: MonomialIdeal) -> tuple[MonomialIdeal, dict[str, tuple[str, int]]]:
    """Standard polarization: x^a becomes the product of the first a copies.

    Variables with maximum exponent <= 1 keep their names, so a squarefree
    ideal comes back unchanged with the identity map.  Returns the new
    ideal and a map new-name -> (old-name, copy index).
    """
    max_exp = [0] * I.vars.n
    for g in I.generators:
        for i, e in enumerate(g.exponents):
            max_exp[i] = max(max_exp[i], e)
    if all(e <= 1 for e in max_exp):
        return I, {name: (name, 1) for name in I.vars.names}

    new_names: list[str] = []
    copies: list[list[int]] = []  # per old index, positions of its copies
    varmap: dict[str, tuple[str, int]] = {}
    for i, name in enumerate(I.vars.names):
        if max_exp[i] <= 1:
            copies.append([len(new_names)])
            varmap[name] = (name, 1)
            new_names.append(name)
        else:
            slots = []
            for j in range(1, max_exp[i] + 1):
                copy = f"{name}_{j}"
                varmap[copy] = (name, j)
                slots.append(len(new_names))
                new_names.append(copy)
            copies.append(slots)
    new_vars = VariableSet(tuple(new_names))

    new_gens = []
    for g in I.generators:
        exps = [0] * new_vars.n
        for i, e in enumerate(g.exponents):
            for j in range(e):
                exps[copies[i][j]] = 1
        new_gens.append(Monomial(new_vars, tuple(exps)))
    # Polarization preserves divisibility both ways, so minimality survives.
    return MonomialIdeal(new_vars, tuple(new_gens)), varmap


def restrict(I: MonomialIdeal, W: Iterable[str]):
    """Generators gcd(m_i, prod of W) over the variable set cut down to W.

    Returns UNIT_IDEAL when some generator is supported entirely outside W
    (its gcd is 1, so the restriction is the whole ring).
    """
    if not I.is_squarefree():
        raise ValueError("restrict needs a squarefree ideal; polarize first")
    wset = frozenset(W)
    if not wset:
        raise ValueError("W must be a nonempty subset of the variables")
    for name in wset:
        if name not in I.vars:
            raise ValueError(f"unknown variable {name!r} in W")
    w_mon = Monomial.from_powers(I.vars, {name: 1 for name in wset})
    cut = [gcd(g, w_mon) for g in I.generators]
    if any(g.is_one() for g in cut):
        return UNIT_IDEAL
    sub_names = tuple(name for name in I.vars.names if name in wset)
    sub_vars = VariableSet(sub_names)
    keep = [I.vars.index(name) for name in sub_names]
    moved = [Monomial(sub_vars, tuple(g.exponents[i] for i in keep)) for g in cut]
    return minimalize(moved)


# ---------------------------------------------------------------------------
# Text format: optional "vars x1 x2 ..." header, then generators separated by
# newlines or commas, each a '*'-separated product of name or name^k factors.
# ---------------------------------------------------------------------------

_FACTOR_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*(\d+))?\s*\Z")


def _tokenize_generators(lines: list[tuple[int, str]]):
    """Yield (line_no, column, generator_text) for comma-separated chunks."""
    for line_no, line in lines:
        col = 0
        for chunk in line.split(","):
            stripped = chunk.strip()
            if stripped:
                yield line_no, col + chunk.index(stripped[0]) + 1, stripped
            col += len(chunk) + 1


def parse_ideal(text: str) -> MonomialIdeal:
    """Parse the ideal text format; infers variables when no header is given."""
    raw_lines = text.splitlines()
    body: list[tuple[int, str]] = []
    header: list[str] | None = None
    for idx, line in enumerate(raw_lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if header is None and not body and stripped.startswith("vars"):
            rest = stripped[4:]
            if rest and not rest[0].isspace():
                raise ParseError("malformed vars header", idx, 1)
            header = rest.split()
            if not header:
                raise ParseError("empty vars header", idx, 1)
            continue
        body.append((idx, line))
    if not body:
        raise ParseError("no generators found", len(raw_lines) or 1, 1)

    # First pass: split into factors, remember positions for error messages.
    parsed: list[tuple[int, int, list[tuple[str, int]]]] = []
    for line_no, col, gen_text in _tokenize_generators(body):
        factors = []
        offset = col
        for piece in gen_text.split("*"):
            m = _FACTOR_RE.match(piece)
            if not m:
                raise ParseError(f"bad factor {piece.strip()!r}", line_no, offset)
            name, exp = m.group(1), int(m.group(2) or 1)
            factors.append((name, exp))
            offset += len(piece) + 1
        parsed.append((line_no, col, factors))

    if header is not None:
        vars = VariableSet(tuple(header))
        for line_no, col, factors in parsed:
            for name, _ in factors:
                if name not in vars:
                    raise ParseError(f"variable {name!r} not declared", line_no, col)
    else:
        order: list[str] = []
        for _, _, factors in parsed:
            for name, _ in factors:
                if name not in order:
                    order.append(name)
        vars = VariableSet(tuple(order))

    gens = []
    for line_no, col, factors in parsed:
        powers: dict[str, int] = {}
        for name, exp in factors:
            powers[name] = powers.get(name, 0) + exp
        mon = Monomial.from_powers(vars, powers)
        if mon.is_one():
            raise ParseError("generator equal to 1", line_no, col)
        gens.append(mon)
    try:
        return MonomialIdeal(vars, tuple(gens))
    except ValueError as exc:
        raise ValueError(f"not a minimal generating set: {exc}") from None


def format_ideal(I: MonomialIdeal) -> str:
    lines = ["vars " + " ".join(I.vars.names)]
    lines.extend(str(g) for g in I.generators)
    return "\n".join(lines) + "\n"


def parse_monomial(vars: VariableSet, text: str) -> Monomial:
    """Parse a single '*'-separated monomial over a known variable set."""
    stripped = text.strip()
    if stripped == "1":
        return Monomial.one(vars)
    powers: dict[str, int] = {}
    for piece in stripped.split("*"):
        m = _FACTOR_RE.match(piece)
        if not m:
            raise ValueError(f"bad factor {piece.strip()!r} in {text!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        powers[name] = powers.get(name, 0) + exp
    return Monomial.from_powers(vars, powers)
