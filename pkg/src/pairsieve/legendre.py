"""Whole-range prime and composite counting over primes <= sqrt(n).

Three interchangeable formulations of the same inclusion-exclusion
count, kept separate so they can cross-check each other:

* ``"legendre"``  -- signed floor-division sums over squarefree subset
  products of the basis primes;
* ``"theta-sum"`` -- count integers hit by at least one basis prime
  (residue-class marking), then correct by the basis size;
* ``"direct-mark"`` / ``"survivor"`` -- classical marking sieves.

All of them are validated against the oracle module in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .oracle import PrimeTable, is_prime_trial
from .theta import EXACT, ThetaMode, theta_sin

__all__ = [
    "SieveBasis",
    "make_basis",
    "count_multiples",
    "theta_sum_multiples",
    "varpi_p",
    "varpi_pq",
    "subset_products",
    "composite_count",
    "prime_count",
    "COMPOSITE_METHODS",
    "PRIME_METHODS",
]

COMPOSITE_METHODS = ("legendre", "theta-sum", "direct-mark")
PRIME_METHODS = ("legendre", "theta-sum", "survivor")


@dataclass(frozen=True)
class SieveBasis:
    """The primes p <= floor(sqrt(n)) used to sieve [1, n].

    Attributes
    ----------
    n : int
        Even integer >= 4 whose range is being sieved.
    sqrt_n : int
        floor(sqrt(n)).
    primes : tuple of int
        Ascending primes <= sqrt_n.
    l : int
        len(primes).
    """

    n: int
    sqrt_n: int
    primes: tuple[int, ...]
    l: int


def _require_even(n: int, minimum: int = 4) -> None:
    if n < minimum or n % 2 != 0:
        raise ValueError(f"n must be an even integer >= {minimum}, got {n}")


def make_basis(n: int, table: PrimeTable) -> SieveBasis:
    """Basis of primes <= floor(sqrt(n)) for an even n >= 4."""
    _require_even(n)
    r = math.isqrt(n)
    if table.limit < r:
        raise ValueError(f"table covers only {table.limit}, need {r}")
    ps = tuple(int(p) for p in table.primes[table.primes <= r])
    return SieveBasis(n=n, sqrt_n=r, primes=ps, l=len(ps))


def count_multiples(a: int, b: int, d: int) -> int:
    """Number of multiples of d in the inclusive interval [a, b]."""
    if d == 0:
        raise ValueError("d must be nonzero")
    if not 1 <= a <= b:
        raise ValueError(f"need 1 <= a <= b, got a={a}, b={b}")
    return b // d - (a - 1) // d


def theta_sum_multiples(n: int, d: int, mode: ThetaMode = EXACT) -> int:
    """Multiples of d in [1, n] counted term by term through theta_sin.

    Literal summation; equals ``count_multiples(1, n, d)``. In float
    mode every term is guard-checked.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return sum(theta_sin(x, d, mode) for x in range(1, n + 1))


def varpi_p(n: int, p: int) -> int:
    """Multiples of prime p in [1, n] excluding p itself: floor(n/p) - 1."""
    _require_even(n)
    if p > math.isqrt(n):
        raise ValueError(f"p must be <= floor(sqrt(n)) = {math.isqrt(n)}, got {p}")
    if not is_prime_trial(p):
        raise ValueError(f"p must be prime, got {p}")
    return n // p - 1


def varpi_pq(n: int, p: int, q: int) -> int:
    """Integers in [1, n] divisible by p or q, minus the two primes.

    Symmetric in p and q: floor(n/p) + floor(n/q) - floor(n/pq) - 2.
    """
    _require_even(n)
    if p == q:
        raise ValueError("p and q must be distinct primes")
    r = math.isqrt(n)
    for v in (p, q):
        if v > r:
            raise ValueError(f"primes must be <= floor(sqrt(n)) = {r}, got {v}")
        if not is_prime_trial(v):
            raise ValueError(f"expected a prime, got {v}")
    return n // p + n // q - n // (p * q) - 2


def subset_products(primes: Sequence[int], bound: int) -> Iterator[tuple[int, int]]:
    """Yield (product, factor_count) for every nonempty squarefree product
    of distinct primes that stays <= bound.

    Depth-first by ascending prime index, so the order is deterministic:
    each product is followed by its extensions before its successors.
    Primes must be distinct and ascending; since they ascend, a branch is
    pruned as soon as one extension exceeds the bound.
    """
    ps = list(primes)
    if any(ps[i] >= ps[i + 1] for i in range(len(ps) - 1)):
        raise ValueError("primes must be distinct and ascending")

    def rec(start: int, prod: int, k: int) -> Iterator[tuple[int, int]]:
        for i in range(start, len(ps)):
            q = prod * ps[i]
            if q > bound:
                break
            yield q, k + 1
            yield from rec(i + 1, q, k + 1)

    yield from rec(0, 1, 0)


# One entry per basis-primes tuple: (cap, sorted products, signs). Products
# are enumerated once up to a power-of-two cap and re-used for every n
# below it; the cap grows geometrically when a larger n shows up.
_PRODUCT_CACHE: dict[tuple[int, ...], tuple[int, np.ndarray, np.ndarray]] = {}


def _signed_products(primes: tuple[int, ...], bound: int) -> tuple[np.ndarray, np.ndarray]:
    entry = _PRODUCT_CACHE.get(primes)
    if entry is None or entry[0] < bound:
        cap = 1 << max(bound.bit_length(), 4)
        items = sorted(subset_products(primes, cap))
        prods = np.array([p for p, _ in items], dtype=np.int64)
        signs = np.array([1 if k % 2 else -1 for _, k in items], dtype=np.int64)
        entry = (cap, prods, signs)
        _PRODUCT_CACHE[primes] = entry
    cap, prods, signs = entry
    cut = int(np.searchsorted(prods, bound, side="right"))
    return prods[:cut], signs[:cut]


def _basis_for(n: int) -> SieveBasis:
    from .oracle import build_prime_table

    return make_basis(n, build_prime_table(max(math.isqrt(n), 2)))


def _floor_ie_composites(basis: SieveBasis) -> int:
    # signed sum of floor(n/prod) over squarefree subset products <= n,
    # then subtract l to turn the single-prime terms into floor((n-p)/p)
    prods, signs = _signed_products(basis.primes, basis.n)
    return int(np.sum(signs * (basis.n // prods))) - basis.l


def _mark_residue_zero(n: int, primes: Sequence[int]) -> np.ndarray:
    # marked[x] for x in [0, n]: some basis prime divides x
    marked = np.zeros(n + 1, dtype=bool)
    for p in primes:
        marked[p::p] = True
    return marked


def composite_count(n: int, method: str = "legendre") -> int:
    """Number of composites in [4, n] for even n >= 4.

    ``"legendre"`` evaluates the signed floor sums, ``"theta-sum"``
    counts integers divisible by some basis prime and subtracts the
    basis size, ``"direct-mark"`` marks composites outright. The three
    agree identically.
    """
    _require_even(n)
    if method not in COMPOSITE_METHODS:
        raise ValueError(f"method must be one of {COMPOSITE_METHODS}, got {method!r}")
    basis = _basis_for(n)
    if method == "legendre":
        return _floor_ie_composites(basis)
    if method == "theta-sum":
        marked = _mark_residue_zero(n, basis.primes)
        return int(np.count_nonzero(marked[1:])) - basis.l
    marked = np.zeros(n + 1, dtype=bool)
    for p in basis.primes:
        marked[p * p :: p] = True
    return int(np.count_nonzero(marked))


def prime_count(n: int, method: str = "legendre") -> int:
    """Number of primes <= n for even n >= 4.

    ``"legendre"`` is n - 1 minus the signed floor sums; ``"theta-sum"``
    subtracts the divisible count and adds back the basis size;
    ``"survivor"`` counts integers no basis prime divides, then adds
    l - 1 (the survivors are 1 and the primes above sqrt(n)).
    """
    _require_even(n)
    if method not in PRIME_METHODS:
        raise ValueError(f"method must be one of {PRIME_METHODS}, got {method!r}")
    basis = _basis_for(n)
    if method == "legendre":
        return n - 1 - _floor_ie_composites(basis)
    marked = _mark_residue_zero(n, basis.primes)
    if method == "theta-sum":
        return n - 1 - int(np.count_nonzero(marked[1:])) + basis.l
    survivors = n - int(np.count_nonzero(marked[1:]))
    return survivors + basis.l - 1
