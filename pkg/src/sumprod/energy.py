"""Representation counts and additive energy, exact and by quadrature.

The h-fold representation count of n is the number of ordered h-tuples from
a set summing to n; the energy is the sum of its squares.  Two independent
exact paths are provided (direct enumeration and polynomial
self-convolution) plus a floating-point quadrature identity that is exact
for trigonometric polynomials up to rounding, and the p-adic layer
decompositions used by the norm inequalities.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import fsum, lcm

from .exactset import FinSet
from .limits import check_size
from .arith import is_prime
from .verdicts import (
    GUARD_BAND,
    Enclosure,
    Verdict,
    power_of,
    verdict_from_compare,
)

DENSE_RANGE_LIMIT = 2**24


@dataclass(frozen=True)
class RepCounts:
    """Representation counts of h-fold sums from base: value -> count."""

    base: FinSet
    h: int
    counts: tuple[tuple[Fraction, int], ...]

    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.counts)

    def total(self) -> int:
        return sum(c for _, c in self.counts)

    def energy(self) -> int:
        return sum(c * c for _, c in self.counts)


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative rational weights, one per element of an ascending set."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "weights", tuple(Fraction(w) for w in self.weights)
        )
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        if self.weights and not any(w > 0 for w in self.weights):
            raise ValueError("at least one weight must be positive")

    @classmethod
    def ones(cls, n: int) -> "WeightVector":
        return cls(tuple(Fraction(1) for _ in range(n)))

    def __len__(self) -> int:
        return len(self.weights)


def _scaled_values(a: FinSet) -> tuple[list[int], int]:
    """Clear denominators: integer values v with element = v / scale."""
    scale = lcm(*(e.denominator for e in a)) if a.size else 1
    return [int(e * scale) for e in a], scale


def _convolve_sparse(p: dict[int, object], q: dict[int, object]) -> dict:
    out: dict = {}
    for u, cu in p.items():
        for v, cv in q.items():
            w = u + v
            prev = out.get(w)
            out[w] = cu * cv if prev is None else prev + cu * cv
    return out


def _convolve_dense(p: dict[int, object], q: dict[int, object], zero) -> dict:
    pmin, pmax = min(p), max(p)
    qmin, qmax = min(q), max(q)
    out = [zero] * (pmax + qmax - pmin - qmin + 1)
    base = pmin + qmin
    for u, cu in p.items():
        ou = u - pmin
        for v, cv in q.items():
            out[ou + v - qmin] += cu * cv
    return {base + i: c for i, c in enumerate(out) if c}


def _self_convolve(values: list[int], weights: list, h: int) -> dict:
    """Coefficients of (sum_i w_i X^{v_i})^h keyed by exponent."""
    zero = weights[0] * 0 if weights else 0
    poly: dict[int, object] = {}
    for v, w in zip(values, weights):
        poly[v] = poly.get(v, zero) + w
    result = poly
    span = max(values) - min(values) if values else 0
    dense = span * h <= DENSE_RANGE_LIMIT
    for _ in range(h - 1):
        if dense and span:
            result = _convolve_dense(result, poly, zero)
        else:
            result = _convolve_sparse(result, poly)
    return result


def rep_counts(a: FinSet, h: int) -> RepCounts:
    """Exact h-fold representation counts by polynomial self-convolution."""
    if h < 1:
        raise ValueError(f"fold count must be >= 1, got {h}")
    if a.size == 0:
        return RepCounts(base=a, h=h, counts=())
    values, scale = _scaled_values(a)
    conv = _self_convolve(values, [1] * len(values), h)
    counts = tuple(
        (Fraction(v, scale), c) for v, c in sorted(conv.items())
    )
    return RepCounts(base=a, h=h, counts=counts)


def energy(a: FinSet, h: int, path: str = "convolve") -> int:
    """h-fold additive energy: the sum of squared representation counts.

    path='convolve' squares convolution coefficients; path='enumerate'
    counts ordered h-tuples directly (cost |a|^h, cap-checked).
    """
    if h < 1:
        raise ValueError(f"fold count must be >= 1, got {h}")
    if path == "convolve":
        if a.size == 0:
            return 0
        values, _ = _scaled_values(a)
        conv = _self_convolve(values, [1] * len(values), h)
        return sum(c * c for c in conv.values())
    if path == "enumerate":
        if a.size:
            check_size(a.size**h, "energy enumeration")
        counts: dict[Fraction, int] = {}
        for tup in product(a.elements, repeat=h):
            s = sum(tup)
            counts[s] = counts.get(s, 0) + 1
        return sum(c * c for c in counts.values())
    raise ValueError(f"path must be 'convolve' or 'enumerate', got {path!r}")


def weighted_energy(a: FinSet, d: WeightVector, h: int) -> Fraction:
    """Energy with elementwise weights: sum over n of (weighted count)^2."""
    if h < 1:
        raise ValueError(f"fold count must be >= 1, got {h}")
    if len(d) != a.size:
        raise ValueError(f"{len(d)} weights for a set of size {a.size}")
    if a.size == 0:
        return Fraction(0)
    values, _ = _scaled_values(a)
    conv = _self_convolve(values, list(d.weights), h)
    return sum((c * c for c in conv.values()), Fraction(0))


def quadrature_energy(a: FinSet, h: int, d: WeightVector | None = None) -> float:
    """Energy as a trigonometric mean, in floating point.

    Averages |sum_j d_j e(a_j x)|^(2h) over 2h*max(a)+1 equally spaced
    points; that node count makes the average exact for the underlying
    degree-h*max(a) trigonometric polynomial, so the only error is float
    roundoff.  Needs positive integer elements.
    """
    if h < 1:
        raise ValueError(f"fold count must be >= 1, got {h}")
    if not (a.is_integer and a.is_positive):
        raise ValueError("quadrature path needs positive integer elements")
    if a.size == 0:
        return 0.0
    if d is None:
        d = WeightVector.ones(a.size)
    if len(d) != a.size:
        raise ValueError(f"{len(d)} weights for a set of size {a.size}")
    values = [int(e) for e in a]
    weights = [float(w) for w in d.weights]
    m = 2 * h * max(values) + 1
    roots = [cmath.exp(2j * cmath.pi * t / m) for t in range(m)]
    terms = []
    for j in range(m):
        z = sum(w * roots[(v * j) % m] for v, w in zip(values, weights))
        mag2 = z.real * z.real + z.imag * z.imag
        terms.append(mag2**h)
    return fsum(terms) / m


@dataclass(frozen=True)
class LayerDecomposition:
    """Partition of a set by the vector of p-adic valuations."""

    primes: tuple[int, ...]
    layers: tuple[tuple[tuple[int, ...], FinSet], ...]

    def as_dict(self) -> dict[tuple[int, ...], FinSet]:
        return dict(self.layers)

    def __len__(self) -> int:
        return len(self.layers)


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def layer_partition(a: FinSet, primes: tuple[int, ...] | list[int]) -> LayerDecomposition:
    """Split a positive-integer set by valuation vectors at the given primes."""
    if not (a.is_integer and a.is_positive):
        raise ValueError("layer partition needs positive integer elements")
    primes = tuple(primes)
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be distinct")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    buckets: dict[tuple[int, ...], list[int]] = {}
    for e in a:
        n = int(e)
        key = tuple(_valuation(n, p) for p in primes)
        buckets.setdefault(key, []).append(n)
    layers = tuple(
        (key, FinSet(vals)) for key, vals in sorted(buckets.items())
    )
    return LayerDecomposition(primes=primes, layers=layers)


def layer_inequality_check(
    a: FinSet, primes: tuple[int, ...] | list[int], h: int
) -> Verdict:
    """Check E_h(a)^(1/h) <= c_h^t * sum over layers of E_h(layer)^(1/h).

    c_h = 2h^2 - h and t is the number of primes.  Roots are enclosed at
    200-bit precision; a margin inside the guard band gives 'inconclusive'.
    """
    if h < 1:
        raise ValueError(f"fold count must be >= 1, got {h}")
    decomp = layer_partition(a, primes)
    t = len(decomp.primes)
    c_h = 2 * h * h - h
    e_total = energy(a, h)
    layer_data = tuple(
        (key, energy(part, h)) for key, part in decomp.layers
    )
    lhs = power_of(e_total, Fraction(1, h))
    zero = Enclosure(Fraction(0), Fraction(0))
    root_sum = sum(
        (power_of(e, Fraction(1, h)) for _, e in layer_data), start=zero
    )
    rhs = power_of(c_h, t) * root_sum
    witness = {
        "h": h,
        "c_h": c_h,
        "layer_count": len(layer_data),
        "energy": e_total,
        "layers": tuple((key, e) for key, e in layer_data),
    }
    return verdict_from_compare(
        "energy.layer_bound", lhs, rhs, "<=", witness, band=GUARD_BAND
    )


def tail_monotonicity_check(a: FinSet, p: int, j: int, h: int) -> Verdict:
    """Check E_h(a) >= E_h of the subset divisible by p^j.  Exact."""
    if h < 1:
        raise ValueError(f"fold count must be >= 1, got {h}")
    if j < 0:
        raise ValueError(f"valuation threshold must be >= 0, got {j}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not (a.is_integer and a.is_positive):
        raise ValueError("tail check needs positive integer elements")
    q = p**j
    tail = FinSet(e for e in a if int(e) % q == 0)
    lhs = energy(a, h)
    rhs = energy(tail, h)
    witness = {"p": p, "j": j, "h": h, "tail_size": tail.size}
    return verdict_from_compare(
        "energy.tail_monotonicity", lhs, rhs, ">=", witness
    )
