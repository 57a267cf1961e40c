"""Strict partial orders on the 2n literals of n Boolean variables.

The orders of interest leave each literal incomparable to its own
negation and are symmetric under it: u < v holds exactly when
not-v < not-u.  Relations live in a 2n x 2n boolean matrix stored as one
bitmask row per literal; literal u maps to row/bit 2*(var-1) for the
positive occurrence and 2*(var-1)+1 for the negated one, so negation is
index XOR 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .boolfn import (
    Clause,
    Formula,
    Literal,
    ParseError,
    TruthTable,
    is_elementary,
    truth_table,
)

__all__ = [
    "CoverGraph",
    "LiteralPoset",
    "P_N_GUARD",
    "ResourceGuardError",
    "cover_relations",
    "enumerate_pn",
    "enumerate_pn_oracle",
    "format_poset",
    "implication_poset",
    "is_pn_member",
    "parse_poset",
    "poset_to_formula",
    "poset_to_function",
    "transitive_closure",
]

P_N_GUARD = 5
_ORACLE_GUARD = 4


class ResourceGuardError(RuntimeError):
    """An operation was asked to exceed its exact-search size cap."""


def lit_index(var: int, positive: bool) -> int:
    return 2 * (var - 1) + (0 if positive else 1)


def index_to_signed(idx: int) -> int:
    var = idx // 2 + 1
    return var if idx % 2 == 0 else -var


def signed_to_index(a: int) -> int:
    if a == 0:
        raise ValueError("0 is not a valid signed literal")
    return lit_index(abs(a), a > 0)


@dataclass(frozen=True)
class LiteralPoset:
    """Relation matrix over the 2n literals; bit v of rows[u] means u < v.

    The container only checks shape.  Semantic membership in the
    negation-symmetric poset family is decided by is_pn_member, which
    accepts arbitrary relation matrices.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("variable count must be >= 0")
        if len(self.rows) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} rows, got {len(self.rows)}")
        full = (1 << (2 * self.n)) - 1
        for r in self.rows:
            if not 0 <= r <= full:
                raise ValueError("row bits out of range")

    @classmethod
    def antichain(cls, n: int) -> "LiteralPoset":
        return cls(n, (0,) * (2 * n))

    @classmethod
    def from_relations(cls, n: int, relations: Iterable[tuple[int, int]]) -> "LiteralPoset":
        """Build from (u, v) literal-index pairs meaning u < v, adding the
        negation-symmetric duals and closing transitively."""
        rows = [0] * (2 * n)
        for u, v in relations:
            rows[u] |= 1 << v
            rows[v ^ 1] |= 1 << (u ^ 1)
        return cls(n, transitive_closure(tuple(rows)))

    def less(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def relation_pairs(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.rows):
            while row:
                low = row & -row
                yield (u, low.bit_length() - 1)
                row ^= low


@dataclass(frozen=True)
class CoverGraph:
    """Unordered covering pairs of a literal poset, as (u, v) with u < v
    in index order (not in the poset order)."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for u, v in self.edges:
            if not 0 <= u < v < 2 * self.n:
                raise ValueError(f"bad literal pair ({u}, {v})")
            if u ^ 1 == v:
                raise ValueError("a literal cannot cover its own negation")


def transitive_closure(rows: tuple[int, ...]) -> tuple[int, ...]:
    """Boolean Warshall closure over bitmask rows."""
    out = list(rows)
    for k in range(len(out)):
        rk = out[k]
        if not rk:
            continue
        bit = 1 << k
        for i in range(len(out)):
            if out[i] & bit:
                out[i] |= rk
    return tuple(out)


def is_pn_member(p: LiteralPoset) -> bool:
    """Strict-order axioms plus the two literal-specific requirements:
    each literal incomparable to its negation, and u < v iff not-v < not-u."""
    rows = p.rows
    size = len(rows)
    for u in range(size):
        if (rows[u] >> u) & 1:
            return False
        if (rows[u] >> (u ^ 1)) & 1:
            return False
    if transitive_closure(rows) != rows:
        return False
    for u in range(size):
        row = rows[u]
        while row:
            low = row & -row
            v = low.bit_length() - 1
            row ^= low
            if not (rows[v ^ 1] >> (u ^ 1)) & 1:
                return False
            if (rows[v] >> u) & 1:
                return False
    return True


def _clause_seed_relations(c: Clause) -> tuple[tuple[int, int], tuple[int, int]]:
    """A clause (a or b) asserts not-a < b and not-b < a."""
    a, b = c.literals()
    return (
        (a.negate().index, b.index),
        (b.negate().index, a.index),
    )


def implication_poset(f: Formula) -> LiteralPoset:
    """The implication order of a formula with an elementary function.

    Seeds u < v for each clause read as implications both ways, adds the
    negation duals and closes transitively.  Defined only when the
    formula's function is elementary; for such input the closure is
    guaranteed to stay a member of the poset family (asserted).
    """
    if not is_elementary(truth_table(f)):
        raise ValueError("implication poset is defined only for elementary functions")
    seeds = []
    for c in f.clauses:
        seeds.extend(_clause_seed_relations(c))
    p = LiteralPoset.from_relations(f.n, seeds)
    if not is_pn_member(p):
        raise AssertionError("closure left the poset family on elementary input")
    return p


def cover_relations(p: LiteralPoset) -> CoverGraph:
    """Covering pairs: u < v with nothing strictly between."""
    if not is_pn_member(p):
        raise ValueError("not a member of the literal-poset family")
    rows = p.rows
    size = len(rows)
    preds = [0] * size
    for u in range(size):
        row = rows[u]
        while row:
            low = row & -row
            preds[low.bit_length() - 1] |= 1 << u
            row ^= low
    edges = set()
    for u in range(size):
        row = rows[u]
        while row:
            low = row & -row
            v = low.bit_length() - 1
            row ^= low
            if rows[u] & preds[v] == 0:
                edges.add((u, v) if u < v else (v, u))
    return CoverGraph(p.n, frozenset(edges))


def poset_to_formula(p: LiteralPoset) -> Formula:
    """One clause (not-u or v) per relation u < v; the empty poset gives
    the empty conjunction.  All relations are used, not just covers, so
    the result does not depend on a choice of generating set."""
    if not is_pn_member(p):
        raise ValueError("not a member of the literal-poset family")
    clauses = []
    for u, v in p.relation_pairs():
        lu = Literal.from_index(u).negate()
        lv = Literal.from_index(v)
        clauses.append(Clause(lu, lv))
    return Formula.of(p.n, clauses)


def poset_to_function(p: LiteralPoset) -> TruthTable:
    return truth_table(poset_to_formula(p))


def enumerate_pn(n: int) -> Iterator[LiteralPoset]:
    """All members of the poset family on n variables, each exactly once.

    Walks colored graphs in their fixed enumeration order and emits each
    graph's posets; the graph map partitions the family, so no
    deduplication is needed.  Graphs with an odd-blue triangle are skipped
    outright (they admit no poset; the all-graphs verification sweep
    re-checks that claim at small n on every run).
    """
    if n > P_N_GUARD:
        raise ResourceGuardError(f"poset enumeration capped at n <= {P_N_GUARD}, got {n}")
    from . import cgraph

    for g in cgraph.enumerate_colored_graphs(n):
        if not cgraph.is_obtf(g):
            continue
        yield from cgraph.posets_of_graph(g)


def enumerate_pn_oracle(n: int) -> list[LiteralPoset]:
    """Independent enumeration by direct relation sweep.

    For each unordered variable pair there are two negation-symmetry
    orbits of literal pairs (same-polarity and mixed); a family member is
    determined by choosing <, > or incomparable per orbit, subject to the
    result being transitively closed.  Exhaustive over 3^(2*C(n,2))
    candidates, so capped lower than the graph-driven enumeration.
    """
    if n > _ORACLE_GUARD:
        raise ResourceGuardError(f"relation sweep capped at n <= {_ORACLE_GUARD}, got {n}")
    orbits = []
    for j in range(2, n + 1):
        for i in range(1, j):
            xi, xj = lit_index(i, True), lit_index(j, True)
            orbits.append((xi, xj))          # same polarity: x_i vs x_j
            orbits.append((xi, xj ^ 1))      # mixed: x_i vs not-x_j
    out = []
    for states in itertools.product((0, 1, 2), repeat=len(orbits)):
        rows = [0] * (2 * n)
        for (u, v), s in zip(orbits, states):
            if s == 1:
                rows[u] |= 1 << v
                rows[v ^ 1] |= 1 << (u ^ 1)
            elif s == 2:
                rows[v] |= 1 << u
                rows[u ^ 1] |= 1 << (v ^ 1)
        candidate = tuple(rows)
        if transitive_closure(candidate) == candidate:
            p = LiteralPoset(n, candidate)
            if is_pn_member(p):
                out.append(p)
    return out


def parse_poset(text: str) -> LiteralPoset:
    """Poset text format: `n <int>` then one relation per line as two
    signed integers `a b` meaning literal(a) < literal(b); relations not
    listed are implied by closure and negation symmetry."""
    n = None
    relations = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "n":
                raise ParseError(line_no, "expected header 'n <int>'")
            try:
                n = int(fields[1])
            except ValueError:
                raise ParseError(line_no, f"bad variable count {fields[1]!r}") from None
            if n < 0:
                raise ParseError(line_no, "variable count must be >= 0")
            continue
        if len(fields) != 2:
            raise ParseError(line_no, "expected two signed integers")
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(line_no, "expected two signed integers") from None
        for x in (a, b):
            if x == 0 or abs(x) > n:
                raise ParseError(line_no, f"literal {x} out of range for n={n}")
        relations.append((signed_to_index(a), signed_to_index(b)))
    if n is None:
        raise ParseError(1, "missing header 'n <int>'")
    p = LiteralPoset.from_relations(n, relations)
    if not is_pn_member(p):
        raise ParseError(1, "relations do not close to a member of the poset family")
    return p


def format_poset(p: LiteralPoset) -> str:
    """Covers only; the full order is their closure."""
    lines = [f"n {p.n}"]
    covers = cover_relations(p)
    directed = []
    for u, v in covers.edges:
        directed.append((u, v) if p.less(u, v) else (v, u))
    for u, v in sorted(directed):
        lines.append(f"{index_to_signed(u)} {index_to_signed(v)}")
    return "\n".join(lines) + "\n"
