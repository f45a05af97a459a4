"""Generalized geometric progressions and membership testing.

A progression is a base point times products of ratio powers with bounded
exponents: base * r_1^j_1 * ... * r_s^j_s, 0 <= j_i < J_i.  Membership is
decided exactly through prime-exponent linear algebra, with a bounded grid
enumeration as fallback when the ratios are multiplicatively dependent and
the linear system alone cannot pin down the exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import NamedTuple

from .exactset import FinSet, parse_token
from .limits import SetParseError, check_size
from .arith import exponent_matrix, mult_dim
from .verdicts import Verdict, unmet


@dataclass(frozen=True)
class ProgressionDesc:
    """base * prod(ratios[i] ** j_i) with 0 <= j_i < lengths[i]."""

    base: Fraction
    ratios: tuple[Fraction, ...]
    lengths: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", Fraction(self.base))
        object.__setattr__(
            self, "ratios", tuple(Fraction(r) for r in self.ratios)
        )
        object.__setattr__(self, "lengths", tuple(int(j) for j in self.lengths))
        if self.base <= 0:
            raise ValueError(f"base must be positive, got {self.base}")
        if len(self.ratios) != len(self.lengths):
            raise ValueError("one length per ratio is required")
        for r in self.ratios:
            if r <= 0:
                raise ValueError(f"ratios must be positive, got {r}")
        for j in self.lengths:
            if j < 1:
                raise ValueError(f"lengths must be >= 1, got {j}")

    @property
    def rank(self) -> int:
        return len(self.ratios)

    @property
    def nominal_size(self) -> int:
        return prod(self.lengths)

    def value_at(self, exponents: tuple[int, ...]) -> Fraction:
        v = self.base
        for r, j in zip(self.ratios, exponents):
            v *= r**j
        return v


class ContainsResult(NamedTuple):
    contained: bool
    witnesses: tuple[tuple[int, ...] | None, ...]


def parse_progression(text: str) -> ProgressionDesc:
    """First data line: the base.  Each further line: 'ratio length'."""
    base: Fraction | None = None
    ratios: list[Fraction] = []
    lengths: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if base is None:
                base = parse_token(line)
                continue
            parts = line.split()
            if len(parts) != 2:
                raise SetParseError("expected 'ratio length'")
            r = parse_token(parts[0])
            if not parts[1].isdigit():
                raise SetParseError(f"length must be a positive integer, got {parts[1]!r}")
            ratios.append(r)
            lengths.append(int(parts[1]))
        except SetParseError as exc:
            raise SetParseError(f"line {lineno}: {exc}") from None
    if base is None:
        raise SetParseError("progression file has no base line")
    try:
        return ProgressionDesc(base=base, ratios=tuple(ratios), lengths=tuple(lengths))
    except ValueError as exc:
        raise SetParseError(str(exc)) from None


def enumerate_progression(p: ProgressionDesc) -> FinSet:
    """All progression values as a set (collisions collapse)."""
    check_size(p.nominal_size, "progression enumeration")
    values = [p.base]
    for r, j in zip(p.ratios, p.lengths):
        powers = [r**e for e in range(j)]
        values = [v * w for v in values for w in powers]
    return FinSet(values)


def is_proper(p: ProgressionDesc) -> bool:
    """True when all nominal_size exponent tuples give distinct values."""
    return enumerate_progression(p).size == p.nominal_size


def _solve_rational(matrix: list[list[int]], rhs: list[int]):
    """Solve matrix @ x = rhs over Q.

    Returns ('unique', x), ('none', None), or ('many', None).
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(n):
        sel = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        piv = aug[r][col]
        aug[r] = [v / piv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append((r, col))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return "none", None
    if r < n:
        return "many", None
    x = [Fraction(0)] * n
    for row, col in pivots:
        x[col] = aug[row][n]
    return "unique", x


def _exponent_rows(values: list[Fraction]) -> tuple[tuple[int, ...], dict[Fraction, tuple[int, ...]]]:
    fs = FinSet(values)
    em = exponent_matrix(fs)
    table = dict(zip(em.source.elements, em.rows))
    return em.primes, table


def contains(p: ProgressionDesc, a: FinSet) -> ContainsResult:
    """Whether every element of a is hit by some in-range exponent tuple.

    witnesses[i] is one exponent tuple producing a's i-th element, or None.
    When the ratio exponent vectors are independent the witness comes from
    a linear solve; otherwise a capped enumeration of the exponent grid
    finds the lexicographically first witness.
    """
    if not a.is_positive:
        raise ValueError("membership needs strictly positive elements")
    if a.size == 0:
        return ContainsResult(True, ())
    needed = list(a.elements) + [p.base] + list(p.ratios)
    _, table = _exponent_rows(needed)
    base_row = table[p.base]
    ratio_rows = [table[r] for r in p.ratios]
    ncols = len(base_row)
    matrix = [[ratio_rows[s][c] for s in range(p.rank)] for c in range(ncols)]
    grid: dict[Fraction, tuple[int, ...]] | None = None
    witnesses: list[tuple[int, ...] | None] = []
    ok = True
    for elem in a.elements:
        target = [table[elem][c] - base_row[c] for c in range(ncols)]
        kind, x = _solve_rational(matrix, target)
        found: tuple[int, ...] | None = None
        if kind == "unique":
            assert x is not None
            if all(v.denominator == 1 and 0 <= v < j for v, j in zip(x, p.lengths)):
                found = tuple(int(v) for v in x)
        elif kind == "many":
            if grid is None:
                check_size(p.nominal_size, "progression membership fallback")
                grid = {}
                for tup in product(*(range(j) for j in p.lengths)):
                    v = p.value_at(tup)
                    grid.setdefault(v, tup)
            found = grid.get(elem)
        witnesses.append(found)
        if found is None:
            ok = False
    return ContainsResult(ok, tuple(witnesses))


def dim_chain_check(p: ProgressionDesc, a: FinSet) -> Verdict:
    """Check dim(a) <= dim(progression values) <= rank, given containment.

    Containment of a in the progression is the hypothesis; without it the
    verdict is 'hypothesis-not-met'.
    """
    inside = contains(p, a)
    values = enumerate_progression(p)
    m_p = mult_dim(values).dimension
    s = p.rank
    if not inside.contained:
        missing = tuple(
            e for e, w in zip(a.elements, inside.witnesses) if w is None
        )
        return unmet(
            "progression.dim_chain",
            None,
            s,
            {"missing": missing, "progression_dim": m_p},
        )
    m_a = mult_dim(a).dimension
    chain_ok = m_a <= m_p <= s
    witness = {"set_dim": m_a, "progression_dim": m_p, "rank": s}
    return Verdict(
        name="progression.dim_chain",
        hypothesis_met=True,
        lhs=m_a,
        rhs=s,
        holds="true" if chain_ok else "false",
        witness=witness,
    )
