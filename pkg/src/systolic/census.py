"""Exact counts of determinant-1 non-negative integer matrices by trace.

For a trace m >= 3 the count is

    n(m) = sum over a in [1, m-1] of d(a*(m-a) - 1)

where d is the number-of-divisors function: the trace fixes d = m - a, and
the determinant relation forces b*c = a*d - 1, so b runs over the divisors
of a*(m-a) - 1.  The same count can be reproduced a third way by walking
the binary tree of words in L and R, pruning on the monotone trace, which
is what ``count_words_by_trace`` does; the three routes are compared by
``CensusTable.build(check=True)``.

Trace 2 is the infinite family of pure powers of L and of R and is
represented by the ``INFINITE`` sentinel, never by a number.

The divisor sieve is built once and then read-only; table rows are
independent and assembled in deterministic order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .words import UniMat

__all__ = [
    "INFINITE",
    "divisor_count",
    "DivisorSieve",
    "n_by_formula",
    "n_by_enumeration",
    "n_of",
    "N_of",
    "count_words_by_trace",
    "CensusMismatch",
    "CensusRow",
    "CensusTable",
    "GrowthRow",
    "GrowthReport",
    "growth_report",
]


class _InfiniteCount:
    """Sentinel for the infinitely many trace-2 elements (powers of L or R)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "infinite"


INFINITE = _InfiniteCount()


def divisor_count(n: int) -> int:
    """Number of positive divisors, by trial division (one-off queries)."""
    if n < 1:
        raise ValueError(f"divisor_count needs n >= 1, got {n}")
    count = 0
    i = 1
    while i * i <= n:
        if n % i == 0:
            count += 1 if i * i == n else 2
        i += 1
    return count


class DivisorSieve:
    """Smallest-prime-factor table supporting bulk divisor queries.

    Memory is O(limit); for a census up to trace m the arguments reach
    roughly m*m/4, so the table for m = 300 holds ~22500 entries.
    """

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError(f"sieve limit must be >= 1, got {limit}")
        self.limit = limit
        spf = list(range(limit + 1))
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == p:
                for multiple in range(p * p, limit + 1, p):
                    if spf[multiple] == multiple:
                        spf[multiple] = p
        self._spf = spf

    def _require(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside sieve range [1, {self.limit}]")

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization as (prime, exponent) pairs, primes ascending."""
        self._require(n)
        out: list[tuple[int, int]] = []
        spf = self._spf
        while n > 1:
            p = spf[n]
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def divisor_count(self, n: int) -> int:
        count = 1
        for _, e in self.factorize(n):
            count *= e + 1
        return count

    def divisors(self, n: int) -> list[int]:
        """All positive divisors, ascending."""
        out = [1]
        for p, e in self.factorize(n):
            out = [d * p**i for d in out for i in range(e + 1)]
        return sorted(out)


def _require_trace(m: int) -> None:
    if m <= 2:
        raise ValueError(f"trace {m} rejected: the count is only finite for traces >= 3")


def _sieve_for(m: int, sieve: DivisorSieve | None) -> DivisorSieve:
    need = max(1, (m * m) // 4)
    if sieve is not None:
        if sieve.limit < need:
            raise ValueError(f"sieve limit {sieve.limit} too small for trace {m} (needs {need})")
        return sieve
    return DivisorSieve(need)


def n_by_formula(m: int, sieve: DivisorSieve | None = None) -> int:
    """Count of trace-m elements via the divisor-sum formula."""
    _require_trace(m)
    sieve = _sieve_for(m, sieve)
    return sum(sieve.divisor_count(a * (m - a) - 1) for a in range(1, m))


def n_by_enumeration(
    m: int,
    sieve: DivisorSieve | None = None,
    with_matrices: bool = False,
):
    """Count trace-m elements by constructing them.

    For each diagonal (a, m-a) the off-diagonal entries run over the
    factorizations b*c = a*(m-a) - 1.  Every constructed quadruple is
    checked against the determinant relation.
    """
    _require_trace(m)
    sieve = _sieve_for(m, sieve)
    count = 0
    matrices: list[UniMat] = []
    for a in range(1, m):
        d = m - a
        k = a * d - 1
        for b in sieve.divisors(k):
            c = k // b
            if a * d - b * c != 1:
                raise AssertionError(f"enumeration produced a bad matrix ({a},{b},{c},{d})")
            count += 1
            if with_matrices:
                matrices.append(UniMat(a, b, c, d))
    if with_matrices:
        return count, matrices
    return count


def n_of(m: int, sieve: DivisorSieve | None = None):
    """n(m) for m >= 3; the INFINITE sentinel for the trace-2 families."""
    if m < 2:
        raise ValueError(f"trace {m} rejected: traces start at 2")
    if m == 2:
        return INFINITE
    return n_by_formula(m, sieve)


def N_of(m: int, sieve: DivisorSieve | None = None) -> int:
    """Cumulative count over traces 3..m; empty (0) at m = 2."""
    if m < 2:
        raise ValueError(f"N is defined for m >= 2, got {m}")
    if m == 2:
        return 0
    sieve = _sieve_for(m, sieve)
    return sum(n_by_formula(j, sieve) for j in range(3, m + 1))


def count_words_by_trace(max_trace: int) -> dict[int, int]:
    """Histogram of word counts per trace in [3, max_trace] by tree search.

    Walks the binary tree of words, abandoning a branch once its trace
    exceeds the bound (appending letters never lowers the trace) and capping
    the depth at max_trace - 1 (a word that is not a pure letter power has
    trace at least length + 1, and letter powers stay at trace 2).  Distinct
    words have distinct matrices, so this is an independent oracle for the
    divisor-based counts.
    """
    if max_trace < 3:
        raise ValueError(f"max_trace must be >= 3, got {max_trace}")
    counts = {m: 0 for m in range(3, max_trace + 1)}
    max_len = max_trace - 1
    stack = [(1, 0, 0, 1, 0)]
    while stack:
        a, b, c, d, n = stack.pop()
        if n == max_len:
            continue
        for na, nb, nc, nd in ((a, a + b, c, c + d), (a + b, b, c + d, d)):
            t = na + nd
            if t > max_trace:
                continue
            if t >= 3:
                counts[t] += 1
            stack.append((na, nb, nc, nd, n + 1))
    return counts


class CensusMismatch(Exception):
    """Raised when the three counting routes disagree at some trace."""

    def __init__(self, trace: int, formula: int, enumeration: int, words: int):
        self.trace = trace
        self.formula = formula
        self.enumeration = enumeration
        self.words = words
        super().__init__(
            f"census mismatch at trace {trace}: formula={formula} "
            f"enumeration={enumeration} word-search={words}"
        )


@dataclass(frozen=True)
class CensusRow:
    m: int
    n: int
    N: int
    checked: bool


@dataclass(frozen=True)
class GrowthRow:
    m: int
    n: int
    N: int
    ratio_mlogm: float
    ratio_mloglogm: float
    quad_ratio: float


@dataclass(frozen=True)
class GrowthReport:
    rows: tuple[GrowthRow, ...]
    #: traces where N(m)/m^2 dropped below the previous row (report only,
    #: never asserted: the growth statements hide unspecified constants).
    quad_ratio_violations: tuple[int, ...]


@dataclass
class CensusTable:
    """Rows n(m), N(m) for 3 <= m <= m_max with optional triple cross-check."""

    m_max: int
    rows: list[CensusRow] = field(default_factory=list)

    @classmethod
    def build(
        cls,
        m_max: int,
        *,
        check: bool = False,
        sieve: DivisorSieve | None = None,
    ) -> "CensusTable":
        _require_trace(m_max)
        sieve = _sieve_for(m_max, sieve)
        word_counts = count_words_by_trace(m_max) if check else None
        rows: list[CensusRow] = []
        running = 0
        for m in range(3, m_max + 1):
            n_formula = n_by_formula(m, sieve)
            checked = False
            if check:
                n_enum = n_by_enumeration(m, sieve)
                n_words = word_counts[m]
                if not (n_formula == n_enum == n_words):
                    raise CensusMismatch(m, n_formula, n_enum, n_words)
                checked = True
            running += n_formula
            rows.append(CensusRow(m, n_formula, running, checked))
        return cls(m_max=m_max, rows=rows)

    def growth(self) -> GrowthReport:
        grows: list[GrowthRow] = []
        violations: list[int] = []
        prev_quad = None
        for row in self.rows:
            m = row.m
            quad = row.N / (m * m)
            grows.append(
                GrowthRow(
                    m=m,
                    n=row.n,
                    N=row.N,
                    ratio_mlogm=row.N / (m * m * math.log(m)),
                    ratio_mloglogm=row.N / (m * m * math.log(math.log(m))),
                    quad_ratio=quad,
                )
            )
            if prev_quad is not None and quad < prev_quad:
                violations.append(m)
            prev_quad = quad
        return GrowthReport(rows=tuple(grows), quad_ratio_violations=tuple(violations))

    def to_csv(self) -> str:
        """CSV with header m,n,N,ratio_mlogm,ratio_mloglogm and one row per trace."""
        lines = ["m,n,N,ratio_mlogm,ratio_mloglogm"]
        for g in self.growth().rows:
            lines.append(f"{g.m},{g.n},{g.N},{g.ratio_mlogm:.12g},{g.ratio_mloglogm:.12g}")
        return "\n".join(lines) + "\n"


def growth_report(m_max: int, sieve: DivisorSieve | None = None) -> GrowthReport:
    """Diagnostic growth ratios for N(m); values are reported, never judged."""
    if m_max < 10:
        raise ValueError(f"growth report needs m_max >= 10, got {m_max}")
    return CensusTable.build(m_max, sieve=sieve).growth()
