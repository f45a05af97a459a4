"""Integer factorization, prime-exponent vectors, and multiplicative dimension.

The multiplicative dimension of a set of positive rationals is the affine
rank of its prime-exponent vectors: the dimension of the span of the
differences from any fixed member.  Rank is computed by fraction-free
integer elimination, so results are exact for arbitrarily large exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, prod

from .exactset import FinSet
from .limits import FactorizationBudgetExceeded, check_size

DEFAULT_TRIAL_BOUND = 10**6
DEFAULT_RHO_BUDGET = 2_000_000

# Witness bases making Miller-Rabin deterministic below this threshold.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic primality test for n below about 3.3e24.

    Larger inputs raise FactorizationBudgetExceeded instead of returning a
    probabilistic answer.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise FactorizationBudgetExceeded(
            f"primality of {n} is outside the deterministic witness range"
        )
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_step(n: int, c: int, budget: int) -> tuple[int | None, int]:
    """One Brent-cycle attempt at splitting composite n.

    Returns (factor, iterations used); factor is None if the budget ran out
    or the attempt degenerated.
    """
    y, r, q, g = 2, 1, 1, 1
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        used += r
        k = 0
        while k < r and g == 1:
            ys = y
            block = min(128, r - k)
            for _ in range(block):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += block
            used += block
        r *= 2
        if used > budget:
            return None, used
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            used += 1
            g = gcd(abs(x - ys), n)
            if used > budget:
                return None, used
    return (g if g != n else None), used


@lru_cache(maxsize=65536)
def factor_int(
    n: int,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_budget: int = DEFAULT_RHO_BUDGET,
) -> tuple[tuple[int, int], ...]:
    """Factor a positive integer into ((prime, exponent), ...) ascending.

    Trial division up to trial_bound, then Brent cycles with a shared
    iteration budget.  If a cofactor survives both, the call fails with
    FactorizationBudgetExceeded rather than guessing.
    """
    if n < 1:
        raise ValueError(f"need a positive integer, got {n}")
    factors: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    d = 5
    while d <= trial_bound and d * d <= n:
        for delta in (0, 2):
            p = d + delta
            while n % p == 0:
                factors[p] = factors.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        remaining = rho_budget
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                factors[m] = factors.get(m, 0) + 1
                continue
            root = isqrt(m)
            if root * root == m:
                stack += [root, root]
                continue
            split = None
            for c in range(1, 64):
                split, used = _brent_step(m, c, remaining)
                remaining -= used
                if remaining <= 0 and split is None:
                    raise FactorizationBudgetExceeded(
                        f"could not split {m} within the iteration budget"
                    )
                if split is not None:
                    break
            if split is None:
                raise FactorizationBudgetExceeded(
                    f"could not split {m} within the iteration budget"
                )
            stack += [split, m // split]
    return tuple(sorted(factors.items()))


def factor_fraction(
    q: Fraction,
    trial_bound: int = DEFAULT_TRIAL_BOUND,
    rho_budget: int = DEFAULT_RHO_BUDGET,
) -> dict[int, int]:
    """Signed prime exponents of a positive rational."""
    if q <= 0:
        raise ValueError(f"need a positive rational, got {q}")
    exps: dict[int, int] = {}
    for p, e in factor_int(q.numerator, trial_bound, rho_budget):
        exps[p] = exps.get(p, 0) + e
    for p, e in factor_int(q.denominator, trial_bound, rho_budget):
        exps[p] = exps.get(p, 0) - e
    return {p: e for p, e in exps.items() if e}


@dataclass(frozen=True)
class ExponentMatrix:
    """Rows of prime exponents, one row per element of source (ascending)."""

    primes: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    source: FinSet

    def row_for(self, value: Fraction) -> tuple[int, ...]:
        return self.rows[self.source.elements.index(Fraction(value))]


@dataclass(frozen=True)
class MultDim:
    """Affine rank of a set's exponent vectors, with supporting data.

    basis holds difference vectors (relative to the smallest element's row)
    spanning the direction space; projection lists the coordinates, as
    indices into primes, on which the exponent vectors are already
    injective.
    """

    dimension: int
    basepoint: Fraction
    basis: tuple[tuple[int, ...], ...]
    projection: tuple[int, ...]


def exponent_matrix(a: FinSet) -> ExponentMatrix:
    """Exponent vectors for a set of positive rationals.

    Column order follows the ascending primes that occur in any element.
    """
    if not a.is_positive:
        raise ValueError("exponent vectors need strictly positive elements")
    factored = [factor_fraction(e) for e in a]
    primes = tuple(sorted({p for f in factored for p in f}))
    rows = tuple(tuple(f.get(p, 0) for p in primes) for f in factored)
    return ExponentMatrix(primes=primes, rows=rows, source=a)


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError("fraction-free elimination produced a non-exact division")
    return q


def _row_reduce(rows: list[list[int]]) -> tuple[int, list[int], list[int]]:
    """Fraction-free (Bareiss) elimination with column pivoting.

    Returns (rank, pivot column indices, pivot row indices), the row indices
    referring to the input order.
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    origin = list(range(m))
    pivot_cols: list[int] = []
    pivot_rows: list[int] = []
    r = 0
    prev = 1
    for col in range(ncols):
        sel = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        origin[r], origin[sel] = origin[sel], origin[r]
        piv = rows[r][col]
        for i in range(r + 1, m):
            fac = rows[i][col]
            for j in range(col, ncols):
                rows[i][j] = _exact_div(rows[i][j] * piv - fac * rows[r][j], prev)
        pivot_cols.append(col)
        pivot_rows.append(origin[r])
        prev = piv
        r += 1
        if r == m:
            break
    return r, pivot_cols, pivot_rows


def mult_dim(a: FinSet) -> MultDim:
    """Multiplicative dimension of a set of positive rationals.

    Zero for singletons; in general the rank of the differences of the
    exponent rows from the smallest element's row.  The projection onto the
    returned pivot coordinates is injective on the set.
    """
    if a.size == 0:
        raise ValueError("multiplicative dimension needs a nonempty set")
    em = exponent_matrix(a)
    base = em.rows[0]
    diffs = [
        [row[j] - base[j] for j in range(len(em.primes))] for row in em.rows[1:]
    ]
    if not diffs:
        return MultDim(dimension=0, basepoint=a.elements[0], basis=(), projection=())
    rank, pivot_cols, pivot_rows = _row_reduce([list(d) for d in diffs])
    basis = tuple(tuple(diffs[i]) for i in sorted(pivot_rows))
    return MultDim(
        dimension=rank,
        basepoint=a.elements[0],
        basis=basis,
        projection=tuple(pivot_cols),
    )


def vector_simple_sum_count(a: FinSet) -> int:
    """Number of distinct subset sums of the set's exponent vectors.

    The empty subset counts, contributing the zero vector.  Equals the
    number of distinct subset products of the set itself.
    """
    em = exponent_matrix(a)
    frontier: set[tuple[int, ...]] = {tuple(0 for _ in em.primes)}
    for row in em.rows:
        frontier |= {tuple(v + r for v, r in zip(vec, row)) for vec in frontier}
        check_size(len(frontier), "vector subset sums")
    return len(frontier)


def first_primes(count: int) -> tuple[int, ...]:
    """The first `count` primes, by a growing sieve."""
    if count < 0:
        raise ValueError("count must be >= 0")
    if count == 0:
        return ()
    limit = max(16, count * 2)
    while True:
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for i in range(2, isqrt(limit) + 1):
            if sieve[i]:
                sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
        primes = [i for i in range(limit + 1) if sieve[i]]
        if len(primes) >= count:
            return tuple(primes[:count])
        limit *= 2


def radical(n: int) -> int:
    """Product of the distinct primes dividing n."""
    return prod(p for p, _ in factor_int(n))
