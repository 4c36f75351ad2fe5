"""Number-theoretic backbone: divisor-sum sieve, Gaussian binomials, inequality scans."""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import LimitTooLarge

# sigma(n) < n * (1 + ln n) stays far below 2**63 for any limit we allow,
# so the sieve table can live in a machine-word array.
MAX_SIEVE_LIMIT = 50_000_000

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for all n below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes() -> Iterator[int]:
    """Yield 2, 3, 5, ... indefinitely."""
    yield 2
    n = 3
    while True:
        if is_prime(n):
            yield n
        n += 2


def nth_prime(n: int) -> int:
    """The n-th prime, 1-indexed (nth_prime(1) == 2)."""
    if n < 1:
        raise ValueError(f"prime index must be positive, got {n}")
    for i, p in enumerate(primes(), start=1):
        if i == n:
            return p
    raise AssertionError("unreachable")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; intended for n within group-order caps."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def divisor_sigma(n: int) -> int:
    """sigma(n): the sum of all positive divisors of n."""
    total = 1
    for p, a in factorize(n).items():
        total *= (p ** (a + 1) - 1) // (p - 1)
    return total


@dataclass
class SigmaSieve:
    """Table of sigma(n) for 1 <= n <= limit (index 0 unused)."""

    limit: int
    table: array = field(repr=False)

    def sigma(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside sieve range 1..{self.limit}")
        return int(self.table[n])


def build_sieve(limit: int) -> SigmaSieve:
    """Compute sigma(n) for all n <= limit with a linear smallest-prime-factor sieve.

    Each composite is visited exactly once, via n = spf(n) * m; sigma is
    accumulated multiplicatively from the running spf-power divisor sum.
    """
    if limit < 1:
        raise ValueError(f"sieve limit must be >= 1, got {limit}")
    if limit > MAX_SIEVE_LIMIT:
        raise LimitTooLarge(f"sieve limit {limit} exceeds supported maximum {MAX_SIEVE_LIMIT}")
    sigma = array("q", bytes(8 * (limit + 1)))
    spf_sum = array("q", bytes(8 * (limit + 1)))  # 1 + p + ... + p^a for p^a || n, p = spf(n)
    spf = array("q", bytes(8 * (limit + 1)))
    sigma[1] = 1
    spf_sum[1] = 1
    prime_list: list[int] = []
    append_prime = prime_list.append
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = i
            append_prime(i)
            sigma[i] = i + 1
            spf_sum[i] = i + 1
        si = spf[i]
        for p in prime_list:
            m = i * p
            if m > limit:
                break
            spf[m] = p
            if p == si:
                t = spf_sum[i] * p + 1
                spf_sum[m] = t
                sigma[m] = sigma[i] // spf_sum[i] * t
                break
            spf_sum[m] = p + 1
            sigma[m] = sigma[i] * (p + 1)
    return SigmaSieve(limit=limit, table=sigma)


@dataclass(frozen=True)
class ThresholdScan:
    """Partition of 1..limit by the sign of sigma(n) - (2n + 4)."""

    limit: int
    below_count: int
    above_count: int
    equal: tuple[int, ...]


def scan_threshold(sieve: SigmaSieve) -> ThresholdScan:
    """Classify every n <= limit by sigma(n) versus 2n + 4."""
    below = above = 0
    equal: list[int] = []
    table = sieve.table
    for n in range(1, sieve.limit + 1):
        diff = table[n] - 2 * n - 4
        if diff < 0:
            below += 1
        elif diff > 0:
            above += 1
        else:
            equal.append(n)
    return ThresholdScan(sieve.limit, below, above, tuple(equal))


def gaussian_subgroup_count(k: int, p: int, i: int) -> int:
    """Number of subgroups of order p^i in the elementary abelian group of rank k.

    Evaluates the Gaussian binomial prod_{j=1}^{i} (p^(k-i+j) - 1) / (p^j - 1)
    with interleaved multiply/divide; every prefix is itself a Gaussian
    binomial, so each division is exact (asserted).
    """
    if not 0 <= i <= k:
        raise ValueError(f"need 0 <= i <= k, got i={i}, k={k}")
    count = 1
    for j in range(1, i + 1):
        count *= p ** (k - i + j) - 1
        count, rem = divmod(count, p ** j - 1)
        if rem:
            raise AssertionError(f"non-integral Gaussian binomial prefix at k={k}, p={p}, i={i}, j={j}")
    return count


@dataclass(frozen=True)
class OddPartScanReport:
    """Result of checking 11*sigma(n') > 8n' + 4 over odd n' in (1, limit]."""

    limit: int
    checked: int
    violations: tuple[int, ...]


def odd_part_inequality_scan(limit: int, sieve: SigmaSieve | None = None) -> OddPartScanReport:
    """Verify 11*sigma(n') > 8n' + 4 (hence also != ) for every odd n' with 1 < n' <= limit.

    n' = 1 is excluded: it corresponds to the bare rank-2 group of order 4,
    which the classification handles separately.
    """
    if sieve is None or sieve.limit < limit:
        sieve = build_sieve(limit)
    table = sieve.table
    checked = 0
    violations: list[int] = []
    for n in range(3, limit + 1, 2):
        checked += 1
        if 11 * table[n] <= 8 * n + 4:
            violations.append(n)
    return OddPartScanReport(limit=limit, checked=checked, violations=tuple(violations))


def rank_bound_exceeds_threshold(p: int, n: int, k: int) -> bool:
    """Evaluate the subgroup-order lower bound for a rank-k group of order p^n.

    Returns True when the bound strictly exceeds the threshold 2 + 4/p^n,
    i.e. when a non-cyclic group with these parameters cannot sit at or
    below the threshold.  k is the minimal generator count (rank of the
    quotient by the Frattini subgroup); requires k >= 2 and n >= k.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if k < 2 or n < k:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    threshold = Fraction(2) + Fraction(4, p ** n)
    if k >= 3:
        # trivial subgroup, the rank-many smallest and largest proper layers, and the group
        a1 = (p**k - 1) // (p - 1)
        bound = Fraction(1 + a1 * p + a1 * p ** (k - 1) + p**k, p**k)
    elif n > 2:
        bound = Fraction(1 + (p + 1) * p ** (n - 1) + p ** (n - 2) + p**n, p**n)
    else:
        # k == n == 2: the exact value for the rank-2 group of order p^2
        bound = Fraction(1 + (p + 1) * p + p * p, p * p)
    return bound > threshold
