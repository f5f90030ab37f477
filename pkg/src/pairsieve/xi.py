"""Interval prime-pair machinery.

An even n splits every x in [1, n-1] into the pair (x, n-x). Writing
m_p = n mod p for each prime p <= sqrt(n), the pair is free of small
factors exactly when x avoids the two residue classes {0, m_p} modulo
every such p — class 0 guards x itself, class m_p guards n - x. The
double sieve marks both classes per prime over an interval; survivors
are precisely the x with x and n - x both prime.

Positions knocked out by a prime dividing n are counted as ``hat``,
positions knocked out only by non-dividing primes as ``tilde``; the two
are disjoint by construction, so hat + tilde + survivors partitions the
interval. A scanner compares the survivor count per n against the
analytic lower bound (n - 4*sqrt(n)) / ln^2(n - sqrt(n)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .legendre import count_multiples, subset_products
from .oracle import PrimeTable, build_prime_table, is_prime_trial

__all__ = [
    "DEFAULT_BLOCK",
    "ONE",
    "PRIME",
    "COMPOSITE",
    "ResidueEntry",
    "ResidueBasis",
    "PairClass",
    "PairCounts",
    "BoundReport",
    "ScanSummary",
    "default_interval",
    "make_residue_basis",
    "xi_identity",
    "classify_pair",
    "double_sieve",
    "hat_composite_pairs",
    "tilde_composite_pairs",
    "tilde_composite_pairs_ie",
    "pair_counts",
    "prime_pair_list",
    "bound_value",
    "check_bound",
    "scan_bounds",
    "iter_pair_counts",
]

#: Positions per sieve segment; cache-resident, and results are identical
#: for any block size >= 1.
DEFAULT_BLOCK = 1 << 16

ONE = "one"
PRIME = "prime"
COMPOSITE = "composite"


class ResidueEntry(NamedTuple):
    p: int
    m: int
    divides_n: bool


@dataclass(frozen=True)
class ResidueBasis:
    """Sieving data for one even n: primes <= sqrt(n) with n's residues.

    ``interval`` defaults to the inclusive [ceil(sqrt(n)), n - ceil(sqrt(n))]
    but may be overridden.
    """

    n: int
    interval: tuple[int, int]
    entries: tuple[ResidueEntry, ...]

    def __post_init__(self) -> None:
        a, b = self.interval
        if not 1 <= a <= b <= self.n - 1:
            raise ValueError(f"interval must satisfy 1 <= a <= b <= {self.n - 1}, got [{a}, {b}]")
        for p, m, div in self.entries:
            if not 0 <= m < p:
                raise ValueError(f"residue {m} out of range for modulus {p}")
            if div != (m == 0):
                raise ValueError(f"divides flag inconsistent for p={p}, m={m}")

    @property
    def a(self) -> int:
        return self.interval[0]

    @property
    def b(self) -> int:
        return self.interval[1]

    @property
    def length(self) -> int:
        return self.b - self.a + 1

    @property
    def dividing(self) -> tuple[int, ...]:
        return tuple(e.p for e in self.entries if e.divides_n)

    @property
    def nondividing(self) -> tuple[ResidueEntry, ...]:
        return tuple(e for e in self.entries if not e.divides_n)


class PairClass(NamedTuple):
    left: str
    right: str


@dataclass(frozen=True)
class PairCounts:
    """Partition of an interval into hat / tilde / prime-pair positions."""

    n: int
    interval: tuple[int, int]
    length: int
    hat: int
    tilde: int
    composite_pairs: int
    prime_pairs: int

    def __post_init__(self) -> None:
        if min(self.hat, self.tilde, self.composite_pairs, self.prime_pairs) < 0:
            raise ValueError("counts must be nonnegative")
        if self.hat + self.tilde != self.composite_pairs:
            raise ValueError("hat + tilde must equal composite_pairs")
        if self.composite_pairs + self.prime_pairs != self.length:
            raise ValueError("composite_pairs + prime_pairs must equal interval length")


@dataclass(frozen=True)
class BoundReport:
    """One n compared against the analytic prime-pair lower bound."""

    n: int
    prime_pairs: int
    bound: float
    margin: float
    holds: bool

    def __post_init__(self) -> None:
        if self.holds != (self.prime_pairs > self.bound):
            raise ValueError("holds flag inconsistent with prime_pairs vs bound")


@dataclass
class ScanSummary:
    """Streaming aggregate over BoundReports."""

    count: int = 0
    violations: int = 0
    min_margin: float = math.inf
    min_margin_n: int | None = None

    def add(self, report: BoundReport) -> None:
        self.count += 1
        if not report.holds:
            self.violations += 1
        if report.margin < self.min_margin:
            self.min_margin = report.margin
            self.min_margin_n = report.n


def default_interval(n: int) -> tuple[int, int]:
    """Inclusive [ceil(sqrt(n)), n - ceil(sqrt(n))]."""
    a = math.isqrt(n - 1) + 1
    return a, n - a


def make_residue_basis(
    n: int, table: PrimeTable, interval: tuple[int, int] | None = None
) -> ResidueBasis:
    """Residue basis for an even n >= 8: one entry per prime <= sqrt(n).

    Parameters
    ----------
    n : int
        Even integer >= 8.
    table : PrimeTable
        Must cover floor(sqrt(n)).
    interval : (int, int), optional
        Inclusive override; defaults to ``default_interval(n)``.
    """
    if n < 8 or n % 2 != 0:
        raise ValueError(f"n must be an even integer >= 8, got {n}")
    r = math.isqrt(n)
    if table.limit < r:
        raise ValueError(f"table covers only {table.limit}, need {r}")
    entries = tuple(
        ResidueEntry(p=int(p), m=n % int(p), divides_n=n % int(p) == 0)
        for p in table.primes[table.primes <= r]
    )
    return ResidueBasis(n=n, interval=interval or default_interval(n), entries=entries)


def xi_identity(z: int, n: int) -> int:
    """Forward plus backward reading of position z: z + (n - z) = n."""
    if not 1 <= z <= n - 1:
        raise ValueError(f"z must be in [1, {n - 1}], got {z}")
    forward = z
    backward = n - z
    return forward + backward


def _classify(v: int) -> str:
    if v == 1:
        return ONE
    return PRIME if is_prime_trial(v) else COMPOSITE


def classify_pair(x: int, n: int) -> PairClass:
    """Classify (x, n - x) as one/prime/composite on each side."""
    if not 1 <= x <= n - 1:
        raise ValueError(f"x must be in [1, {n - 1}], got {x}")
    return PairClass(left=_classify(x), right=_classify(n - x))


# ---------------------------------------------------------------------------
# segmented marking cores
# ---------------------------------------------------------------------------


def _survivor_blocks(
    a: int, b: int, ps: Sequence[int], ms: Sequence[int], block_size: int
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (lo, forbidden_mask) per segment. The mask is a view into a
    reused scratch buffer: consume it before advancing the iterator."""
    scratch = np.empty(block_size, dtype=bool)
    lo = a
    while lo <= b:
        hi = min(lo + block_size - 1, b)
        mask = scratch[: hi - lo + 1]
        mask[:] = False
        for p, m in zip(ps, ms):
            mask[(-lo) % p :: p] = True
            if m:
                mask[(m - lo) % p :: p] = True
        yield lo, mask
        lo = hi + 1


def _classified_blocks(
    a: int,
    b: int,
    div_ps: Sequence[int],
    nd_ps: Sequence[int],
    nd_ms: Sequence[int],
    block_size: int,
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield (lo, hat_mask, nondividing_mask) per segment; scratch-backed."""
    scratch_hat = np.empty(block_size, dtype=bool)
    scratch_oth = np.empty(block_size, dtype=bool)
    lo = a
    while lo <= b:
        hi = min(lo + block_size - 1, b)
        span = hi - lo + 1
        hat = scratch_hat[:span]
        oth = scratch_oth[:span]
        hat[:] = False
        oth[:] = False
        for p in div_ps:
            hat[(-lo) % p :: p] = True
        for p, m in zip(nd_ps, nd_ms):
            oth[(-lo) % p :: p] = True
            oth[(m - lo) % p :: p] = True
        yield lo, hat, oth
        lo = hi + 1


def _entry_arrays(basis: ResidueBasis) -> tuple[list[int], list[int]]:
    return [e.p for e in basis.entries], [e.m for e in basis.entries]


def double_sieve(basis: ResidueBasis, block_size: int = DEFAULT_BLOCK) -> np.ndarray:
    """Survivor bitmap over the basis interval, sieved in segments.

    Position i covers x = a + i; True means x and n - x have no prime
    factor <= sqrt(n). Working memory is one block plus the basis,
    independent of n; the result itself spans the interval.
    """
    if block_size < 1:
        raise ValueError(f"block_size must be >= 1, got {block_size}")
    ps, ms = _entry_arrays(basis)
    out = np.empty(basis.length, dtype=bool)
    a = basis.a
    for lo, mask in _survivor_blocks(a, basis.b, ps, ms, block_size):
        np.logical_not(mask, out=out[lo - a : lo - a + mask.size])
    return out


def _hat_inclusion_exclusion(basis: ResidueBasis) -> int:
    a, b = basis.interval
    total = 0
    for prod, k in subset_products(basis.dividing, b):
        total += (1 if k % 2 else -1) * count_multiples(a, b, prod)
    return total


def hat_composite_pairs(basis: ResidueBasis, block_size: int = DEFAULT_BLOCK) -> int:
    """Positions hit by a prime dividing n, counted by marking.

    The same count is recomputed by signed subset products over the
    dividing primes; a disagreement means a broken sieve and raises.
    """
    div = list(basis.dividing)
    marked = 0
    for _, hat, _oth in _classified_blocks(basis.a, basis.b, div, (), (), block_size):
        marked += int(np.count_nonzero(hat))
    ie = _hat_inclusion_exclusion(basis)
    if marked != ie:
        raise RuntimeError(f"hat marking {marked} != inclusion-exclusion {ie} for n={basis.n}")
    return marked


def tilde_composite_pairs(basis: ResidueBasis, block_size: int = DEFAULT_BLOCK) -> int:
    """Positions missed by every dividing prime but hit through some
    non-dividing prime's class 0 or class m. Marking implementation."""
    div = list(basis.dividing)
    nd_ps = [e.p for e in basis.nondividing]
    nd_ms = [e.m for e in basis.nondividing]
    total = 0
    for _, hat, oth in _classified_blocks(basis.a, basis.b, div, nd_ps, nd_ms, block_size):
        total += int(np.count_nonzero(oth & ~hat))
    return total


# ---------------------------------------------------------------------------
# exact inclusion-exclusion cross-check for the tilde count
# ---------------------------------------------------------------------------

_INV_CACHE: dict[int, np.ndarray] = {}


def _inverse_table(p: int) -> np.ndarray:
    tab = _INV_CACHE.get(p)
    if tab is None:
        tab = np.array([0] + [pow(v, -1, p) for v in range(1, p)], dtype=np.int64)
        _INV_CACHE[p] = tab
    return tab


def _union_count(
    nd: Sequence[tuple[int, int]], a: int, b: int, base_mod: int
) -> int:
    """Exact count of x in [a, b] with x ≡ 0 (mod base_mod) lying in at
    least one class {0, m} of the given (p, m) pairs.

    Signed sum over class systems: every node of the search is one
    residue class (CRT of at most one class choice per prime). A class
    with no element in [a, b] has only empty refinements, so its whole
    subtree is pruned; that keeps the expansion exact and small.
    """
    if (b // base_mod) - ((a - 1) // base_mod) <= 0:
        return 0
    mods = np.array([base_mod], dtype=np.int64)
    residues = np.array([0], dtype=np.int64)
    signs = np.array([-1], dtype=np.int64)  # root: empty selection
    total = 0
    for p, m in nd:
        inv = _inverse_table(p)
        cur_m, cur_r, cur_s = mods, residues, signs
        ext_m = cur_m * p
        inv_cur = inv[cur_m % p]
        keep_m, keep_r, keep_s = [mods], [residues], [signs]
        for c in (0, m):
            k = (c - cur_r) % p * inv_cur % p
            r_new = cur_r + cur_m * k
            cnt = (b - r_new) // ext_m - (a - 1 - r_new) // ext_m
            nonzero = cnt > 0
            if not nonzero.any():
                continue
            total += int(np.sum(-cur_s[nonzero] * cnt[nonzero]))
            keep_m.append(ext_m[nonzero])
            keep_r.append(r_new[nonzero])
            keep_s.append(-cur_s[nonzero])
        mods = np.concatenate(keep_m)
        residues = np.concatenate(keep_r)
        signs = np.concatenate(keep_s)
    return total


def tilde_composite_pairs_ie(basis: ResidueBasis) -> int:
    """The tilde count by exact inclusion-exclusion instead of marking.

    Each subset of non-dividing primes contributes one class system per
    way of forbidding class 0 or class m at each chosen prime, counted
    exactly over the interval; the restriction to x coprime to the
    dividing primes is a signed sum over their subset products. Agrees
    with ``tilde_composite_pairs`` identically; intended for cross-checks
    at moderate n.
    """
    nd = [(e.p, e.m) for e in basis.nondividing]
    if not nd:
        return 0
    a, b = basis.interval
    total = _union_count(nd, a, b, 1)
    for prod, k in subset_products(basis.dividing, b):
        total += (-1 if k % 2 else 1) * _union_count(nd, a, b, prod)
    return total


# ---------------------------------------------------------------------------
# pair counts, survivor lists, bound reports
# ---------------------------------------------------------------------------


def pair_counts(
    n: int,
    table: PrimeTable,
    interval: tuple[int, int] | None = None,
    block_size: int = DEFAULT_BLOCK,
) -> PairCounts:
    """Full hat/tilde/prime-pair partition of the interval for even n >= 8.

    One segmented pass computes all three counts; the hat count is then
    re-derived by inclusion-exclusion as a consistency check.
    """
    basis = make_residue_basis(n, table, interval)
    div = list(basis.dividing)
    nd_ps = [e.p for e in basis.nondividing]
    nd_ms = [e.m for e in basis.nondividing]
    hat = tilde = 0
    for _, hat_mask, oth in _classified_blocks(basis.a, basis.b, div, nd_ps, nd_ms, block_size):
        hat += int(np.count_nonzero(hat_mask))
        tilde += int(np.count_nonzero(oth & ~hat_mask))
    ie = _hat_inclusion_exclusion(basis)
    if hat != ie:
        raise RuntimeError(f"hat marking {hat} != inclusion-exclusion {ie} for n={n}")
    length = basis.length
    return PairCounts(
        n=n,
        interval=basis.interval,
        length=length,
        hat=hat,
        tilde=tilde,
        composite_pairs=hat + tilde,
        prime_pairs=length - hat - tilde,
    )


def prime_pair_list(
    n: int,
    table: PrimeTable,
    interval: tuple[int, int] | None = None,
    block_size: int = DEFAULT_BLOCK,
) -> list[int]:
    """Ascending survivors of the double sieve: every x with x and n - x
    prime over the interval."""
    basis = make_residue_basis(n, table, interval)
    ps, ms = _entry_arrays(basis)
    out: list[int] = []
    for lo, mask in _survivor_blocks(basis.a, basis.b, ps, ms, block_size):
        out.extend((np.flatnonzero(~mask) + lo).tolist())
    return out


def _survivor_count_raw(
    a: int, b: int, ps: Sequence[int], ms: Sequence[int], block_size: int
) -> int:
    total = 0
    for _, mask in _survivor_blocks(a, b, ps, ms, block_size):
        total += mask.size - int(np.count_nonzero(mask))
    return total


def bound_value(n: int) -> float:
    """(n - 4*sqrt(n)) / ln(n - sqrt(n))^2 with real square roots."""
    if n < 26 or n % 2 != 0:
        raise ValueError(f"n must be an even integer >= 26, got {n}")
    root = math.sqrt(n)
    return (n - 4.0 * root) / math.log(n - root) ** 2


def check_bound(
    n: int, table: PrimeTable, block_size: int = DEFAULT_BLOCK
) -> BoundReport:
    """Compare the sieved prime-pair count of n against the lower bound."""
    bound = bound_value(n)
    basis = make_residue_basis(n, table)
    ps, ms = _entry_arrays(basis)
    pairs = _survivor_count_raw(basis.a, basis.b, ps, ms, block_size)
    return BoundReport(
        n=n, prime_pairs=pairs, bound=bound, margin=pairs - bound, holds=pairs > bound
    )


# ---------------------------------------------------------------------------
# scanning (optionally parallel over n; output order is always ascending)
# ---------------------------------------------------------------------------

_WORKER_PRIMES: np.ndarray | None = None


def _scan_init(limit: int) -> None:
    global _WORKER_PRIMES
    _WORKER_PRIMES = build_prime_table(limit).primes


def _basis_arrays_from_primes(
    n: int, primes: np.ndarray
) -> tuple[int, int, list[int], list[int]]:
    a, b = default_interval(n)
    cut = int(np.searchsorted(primes, math.isqrt(n), side="right"))
    ps = primes[:cut]
    ms = n % ps
    return a, b, ps.tolist(), ms.tolist()


def _scan_survivors_span(span: tuple[int, int, int, int]) -> list[tuple[int, int]]:
    start, end, step, block_size = span
    out = []
    for n in range(start, end + 1, step):
        a, b, ps, ms = _basis_arrays_from_primes(n, _WORKER_PRIMES)
        out.append((n, _survivor_count_raw(a, b, ps, ms, block_size)))
    return out


def _scan_classified_span(
    span: tuple[int, int, int, int]
) -> list[tuple[int, int, int, int, int]]:
    start, end, step, block_size = span
    out = []
    for n in range(start, end + 1, step):
        a, b, ps, ms = _basis_arrays_from_primes(n, _WORKER_PRIMES)
        div = [p for p, m in zip(ps, ms) if m == 0]
        nd_ps = [p for p, m in zip(ps, ms) if m != 0]
        nd_ms = [m for m in ms if m != 0]
        hat = tilde = 0
        for _, hat_mask, oth in _classified_blocks(a, b, div, nd_ps, nd_ms, block_size):
            hat += int(np.count_nonzero(hat_mask))
            tilde += int(np.count_nonzero(oth & ~hat_mask))
        ie = sum((1 if k % 2 else -1) * count_multiples(a, b, prod)
                 for prod, k in subset_products(div, b))
        if hat != ie:
            raise RuntimeError(f"hat marking {hat} != inclusion-exclusion {ie} for n={n}")
        out.append((n, a, b, hat, tilde))
    return out


def _spans(start: int, end: int, step: int, chunk: int) -> Iterator[tuple[int, int, int]]:
    n = start
    while n <= end:
        last = min(n + step * (chunk - 1), end)
        yield n, last, step
        n = last + step


def _chunk_size(start: int, end: int, step: int, workers: int) -> int:
    # several chunks per worker for load balance, capped to keep task
    # dispatch overhead negligible on long scans
    total = (end - start) // step + 1
    return max(16, min(512, total // (workers * 4) or 1))


def _parallel_spans(
    start: int,
    end: int,
    step: int,
    workers: int,
    block_size: int,
    worker_fn,
) -> Iterator[list]:
    chunk = _chunk_size(start, end, step, workers)
    spans = [(lo, hi, st, block_size) for lo, hi, st in _spans(start, end, step, chunk)]
    with Pool(workers, initializer=_scan_init, initargs=(max(math.isqrt(end), 2),)) as pool:
        yield from pool.imap(worker_fn, spans)


def _validate_scan_range(start: int, end: int, step: int, minimum: int) -> None:
    if start % 2 or end % 2:
        raise ValueError(f"start and end must be even, got {start}, {end}")
    if not minimum <= start <= end:
        raise ValueError(f"need {minimum} <= start <= end, got start={start}, end={end}")
    if step < 2 or step % 2:
        raise ValueError(f"step must be a positive even integer, got {step}")


def scan_bounds(
    start: int,
    end: int,
    step: int = 2,
    *,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK,
) -> Iterator[BoundReport]:
    """Yield a BoundReport for every even n in [start, end] by ``step``.

    Reports come out in ascending n regardless of ``workers``: parallel
    chunks are consumed in submission order. Use ``ScanSummary.add`` on
    the stream for the aggregate (minimum margin, violation count).
    """
    _validate_scan_range(start, end, step, minimum=26)

    def report(n: int, pairs: int) -> BoundReport:
        bound = bound_value(n)
        return BoundReport(
            n=n, prime_pairs=pairs, bound=bound, margin=pairs - bound, holds=pairs > bound
        )

    if workers <= 1:
        primes = build_prime_table(max(math.isqrt(end), 2)).primes
        for n in range(start, end + 1, step):
            a, b, ps, ms = _basis_arrays_from_primes(n, primes)
            yield report(n, _survivor_count_raw(a, b, ps, ms, block_size))
        return
    for chunk in _parallel_spans(start, end, step, workers, block_size, _scan_survivors_span):
        for n, pairs in chunk:
            yield report(n, pairs)


def iter_pair_counts(
    start: int,
    end: int,
    step: int = 2,
    *,
    workers: int = 1,
    block_size: int = DEFAULT_BLOCK,
) -> Iterator[PairCounts]:
    """PairCounts for every even n in [start, end], ascending; parallel-safe
    in the same way as ``scan_bounds``. Minimum start is 8."""
    _validate_scan_range(start, end, step, minimum=8)

    def build(n: int, a: int, b: int, hat: int, tilde: int) -> PairCounts:
        length = b - a + 1
        return PairCounts(
            n=n,
            interval=(a, b),
            length=length,
            hat=hat,
            tilde=tilde,
            composite_pairs=hat + tilde,
            prime_pairs=length - hat - tilde,
        )

    if workers <= 1:
        _scan_init(max(math.isqrt(end), 2))
        for chunk_span in _spans(start, end, step, 512):
            for item in _scan_classified_span((*chunk_span, block_size)):
                yield build(*item)
        return
    for chunk in _parallel_spans(start, end, step, workers, block_size, _scan_classified_span):
        for item in chunk:
            yield build(*item)
