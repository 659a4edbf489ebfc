"""Exact and sampled evaluation of the family randomness measures.

Measures: the covering complexity ``f_complexity`` (largest pattern
size realized at every position tuple), the windowed product
correlation ``cross_correlation`` and its zero-shift full-window
restriction ``cross_correlation_circ`` for binary families, and the
k-symbol measures ``gamma``/``gamma_circ`` (pattern-count deviation
from M/k^ell) and ``big_gamma`` (root-of-unity relabelings).

Shift/index admissibility, shared by all correlation measures: shifts
are non-decreasing with the window fitting inside the rows, and two
tuple positions selecting equal row contents must use distinct shifts.
With all shifts zero this forbids repeated and duplicate-content rows.

Every exact search precomputes a loop-count estimate and refuses with a
``BudgetError`` rather than running unbounded.  Searches report a
witness; ties are broken toward the lexicographically smallest
(I, D, M, pattern) tuple, which makes one- and many-threaded runs
byte-identical.  Witnesses use 1-based row indices and positions.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Optional, Union

from .construct import Family
from .errors import BudgetError, InternalError, ParameterError

__all__ = [
    "CorrelationSpec",
    "PatternWitness",
    "MeasureResult",
    "f_complexity",
    "cross_correlation",
    "cross_correlation_circ",
    "gamma",
    "gamma_circ",
    "big_gamma",
    "evaluate_witness",
    "DEFAULT_BUDGET",
]

# Loop-count cap for exact searches; sized so ell <= 3, N <= 32, F <= 12
# always runs.
DEFAULT_BUDGET = 10**9

MODE_EXACT = "exact"
MODE_SAMPLED = "sampled-lower-bound"
MODE_VERIFIED_LB = "verified-lower-bound"

Value = Union[int, Fraction, float]


@dataclass(frozen=True)
class CorrelationSpec:
    """A correlation witness: order, window length M, shifts D, row
    indices I (1-based), and for the k-symbol measures the pattern W or
    the root relabelings."""

    ell: int
    window: int
    shifts: tuple[int, ...]
    rows: tuple[int, ...]
    pattern: Optional[tuple[int, ...]] = None
    root_maps: Optional[tuple[tuple[int, ...], ...]] = None

    def validate(self, fam: Family) -> None:
        ell, m, d, i = self.ell, self.window, self.shifts, self.rows
        if ell < 1 or len(d) != ell or len(i) != ell:
            raise ParameterError("shift/index tuples must have length ell")
        if any(d[j] > d[j + 1] for j in range(ell - 1)) or d[0] < 0:
            raise ParameterError("shifts must satisfy 0 <= d_1 <= ... <= d_ell")
        if m < 1 or m + d[-1] > fam.length:
            raise ParameterError("window must satisfy 1 <= M and M + d_ell <= N")
        if not all(1 <= idx <= fam.size for idx in i):
            raise ParameterError("row indices must lie in 1..F")
        for a in range(ell):
            for b in range(a + 1, ell):
                if fam.rows[i[a] - 1] == fam.rows[i[b] - 1] and d[a] == d[b]:
                    raise ParameterError(
                        "equal rows must carry distinct shifts")
        if self.pattern is not None and len(self.pattern) != ell:
            raise ParameterError("pattern length must equal ell")
        if self.root_maps is not None and len(self.root_maps) != ell:
            raise ParameterError("one root relabeling per tuple position")


@dataclass(frozen=True)
class PatternWitness:
    """An uncovered specification: positions (1-based, increasing) and
    the symbol pattern no family row realizes there."""

    positions: tuple[int, ...]
    pattern: tuple[int, ...]


@dataclass(frozen=True)
class MeasureResult:
    """A measure value with its certificate.

    ``witness`` re-evaluates to ``value`` exactly (``evaluate_witness``);
    it is ``None`` when the value comes from an a-priori cap or an empty
    admissible space.  ``mode`` is "exact" or "sampled-lower-bound".
    ``err_bound`` is the floating-point slack of the reported magnitude
    (zero whenever the value is exact integer/rational arithmetic).
    """

    name: str
    order: int
    value: Value
    mode: str
    witness: Union[CorrelationSpec, PatternWitness, None]
    subject: str = "external"
    err_bound: float = 0.0


class _Best:
    """Deterministic max-tracker: highest value wins, ties go to the
    lexicographically smallest key.  Thread-schedule independent."""

    __slots__ = ("value", "key")

    def __init__(self):
        self.value = None
        self.key = None

    def offer(self, value, key) -> None:
        if (self.value is None or value > self.value
                or (value == self.value and key < self.key)):
            self.value = value
            self.key = key

    def merge(self, other: "_Best") -> None:
        if other.value is not None:
            self.offer(other.value, other.key)


def _run_chunks(worker, chunk_args, n_jobs: int) -> _Best:
    best = _Best()
    if n_jobs <= 1:
        for arg in chunk_args:
            best.merge(worker(arg))
    else:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            for local in pool.map(worker, chunk_args):
                best.merge(local)
    return best


def _content_ids(fam: Family) -> list[int]:
    ids: dict[tuple[int, ...], int] = {}
    out = []
    for row in fam.rows:
        out.append(ids.setdefault(row, len(ids)))
    return out


def _admissible(ids: list[int], I: tuple[int, ...], D: tuple[int, ...]) -> bool:
    ell = len(I)
    for a in range(ell):
        ia = ids[I[a]]
        da = D[a]
        for b in range(a + 1, ell):
            if ids[I[b]] == ia and D[b] == da:
                return False
    return True


def _check_budget(estimate: int, budget: Optional[int], what: str) -> None:
    budget = DEFAULT_BUDGET if budget is None else budget
    if estimate > budget:
        raise BudgetError(
            f"exact {what} needs an estimated {estimate} loop steps, "
            f"budget is {budget}", estimate=estimate, budget=budget)


def _shift_tuples(ell: int, n: int) -> list[tuple[int, ...]]:
    return list(combinations_with_replacement(range(n), ell))


def _require_order(ell: int) -> None:
    if not isinstance(ell, int) or ell < 1:
        raise ParameterError(f"order must be an integer >= 1, got {ell}")


# ---------------------------------------------------------------------------
# covering complexity


def f_complexity(fam: Family, budget: Optional[int] = None) -> MeasureResult:
    """Largest j such that every symbol pattern at every increasing
    j-tuple of positions is realized by some row.

    Ascends j from 1 and stops at the first failing level, returning
    j-1 with the uncovered (positions, pattern) pair as witness.  Since
    k^C <= F, any level past floor(log_k F) fails at its very first
    position tuple, so the full scans are capped a priori by that bound
    and the final certificate costs one projection.  When every level
    up to N passes (witness None) the value is N.  Exceeding the budget
    raises a ``BudgetError`` whose ``verified_lower_bound`` holds the
    last fully certified level.
    """
    n, f, k = fam.length, fam.size, fam.k
    budget = DEFAULT_BUDGET if budget is None else budget
    if k == 1:
        return MeasureResult("f_complexity", 0, n, MODE_EXACT, None,
                             subject=fam.construction)
    spent = 0
    for j in range(1, n + 1):
        full_scan = k**j <= f
        level_cost = (math.comb(n, j) if full_scan else 1) * (f * j + k**j)
        if spent + level_cost > budget:
            raise BudgetError(
                f"certifying level {j} needs ~{level_cost} more steps "
                f"(budget {budget}); value >= {j - 1} is certified",
                estimate=spent + level_cost, budget=budget,
                verified_lower_bound=j - 1)
        spent += level_cost
        for positions in combinations(range(n), j):
            realized = {tuple(row[q] for q in positions) for row in fam.rows}
            if len(realized) == k**j:
                continue
            for pat in product(range(k), repeat=j):
                if pat not in realized:
                    witness = PatternWitness(
                        positions=tuple(q + 1 for q in positions), pattern=pat)
                    return MeasureResult("f_complexity", 0, j - 1, MODE_EXACT,
                                         witness, subject=fam.construction)
    return MeasureResult("f_complexity", 0, n, MODE_EXACT, None,
                         subject=fam.construction)


# ---------------------------------------------------------------------------
# binary product correlation


def _phi_scan(slices) -> tuple[int, int]:
    """Max |prefix sum of termwise products| and its earliest window
    length, over windows 1..len."""
    best = -1
    best_m = 0
    acc = 0
    if len(slices) == 1:
        it = enumerate(slices[0], start=1)
        for m, a in it:
            acc += a
            v = acc if acc >= 0 else -acc
            if v > best:
                best, best_m = v, m
    elif len(slices) == 2:
        for m, (a, b) in enumerate(zip(slices[0], slices[1]), start=1):
            acc += a * b
            v = acc if acc >= 0 else -acc
            if v > best:
                best, best_m = v, m
    elif len(slices) == 3:
        for m, (a, b, c) in enumerate(zip(slices[0], slices[1], slices[2]),
                                      start=1):
            acc += a * b * c
            v = acc if acc >= 0 else -acc
            if v > best:
                best, best_m = v, m
    else:
        for m, terms in enumerate(zip(*slices), start=1):
            acc += math.prod(terms)
            v = acc if acc >= 0 else -acc
            if v > best:
                best, best_m = v, m
    return best, best_m


def cross_correlation(fam: Family, ell: int, mode: str = MODE_EXACT, *,
                      budget: Optional[int] = None, seed: int = 0,
                      samples: int = 1000, n_jobs: int = 1) -> MeasureResult:
    """Maximum absolute windowed product-sum over all admissible
    (window, shifts, rows) choices of a binary family.

    Exact mode enumerates the full space; sampled mode draws a seeded
    random subset and reports a lower bound of the maximum.
    """
    _require_order(ell)
    pm = fam.pm_rows()
    n, f = fam.length, fam.size
    ids = _content_ids(fam)

    if mode == MODE_EXACT:
        shift_tuples = _shift_tuples(ell, n)
        _check_budget(len(shift_tuples) * f**ell * n, budget,
                      f"order-{ell} correlation")

        def scan_chunk(i1: int) -> _Best:
            local = _Best()
            for rest in product(range(f), repeat=ell - 1):
                I = (i1,) + rest
                sel = [pm[i] for i in I]
                for D in shift_tuples:
                    if not _admissible(ids, I, D):
                        continue
                    mmax = n - D[-1]
                    slices = [sel[j][D[j]:D[j] + mmax] for j in range(ell)]
                    val, m = _phi_scan(slices)
                    if val >= 0:
                        local.offer(val, (I, D, m))
            return local

        best = _run_chunks(scan_chunk, range(f), n_jobs)
    elif mode == MODE_SAMPLED:
        _check_budget(samples * n, budget, f"sampled order-{ell} correlation")
        rng = random.Random(seed)
        best = _Best()
        for _ in range(samples):
            I = tuple(rng.randrange(f) for _ in range(ell))
            D = tuple(sorted(rng.randrange(n) for _ in range(ell)))
            if not _admissible(ids, I, D):
                continue
            mmax = n - D[-1]
            slices = [pm[I[j]][D[j]:D[j] + mmax] for j in range(ell)]
            val, m = _phi_scan(slices)
            if val >= 0:
                best.offer(val, (I, D, m))
    else:
        raise ParameterError(f"unknown mode {mode!r}")

    if best.value is None:
        return MeasureResult("phi", ell, 0, mode, None,
                             subject=fam.construction)
    I, D, m = best.key
    witness = CorrelationSpec(ell=ell, window=m, shifts=D,
                              rows=tuple(i + 1 for i in I))
    return MeasureResult("phi", ell, best.value, mode, witness,
                         subject=fam.construction)


def cross_correlation_circ(fam: Family, ell: int, *,
                           budget: Optional[int] = None,
                           n_jobs: int = 1) -> MeasureResult:
    """The correlation restricted to the full window and all shifts
    zero, maximized over row tuples only.  The shared admissibility rule
    then requires pairwise distinct row contents, so this is always a
    restriction of the unrestricted maximum."""
    _require_order(ell)
    pm = fam.pm_rows()
    n, f = fam.length, fam.size
    ids = _content_ids(fam)
    _check_budget(f**ell * n, budget, f"order-{ell} zero-shift correlation")
    zeros = (0,) * ell

    def scan_chunk(i1: int) -> _Best:
        local = _Best()
        for rest in product(range(f), repeat=ell - 1):
            I = (i1,) + rest
            if not _admissible(ids, I, zeros):
                continue
            slices = [pm[i] for i in I]
            acc = 0
            for terms in zip(*slices):
                acc += math.prod(terms)
            local.offer(abs(acc), (I,))
        return local

    best = _run_chunks(scan_chunk, range(f), n_jobs)
    if best.value is None:
        return MeasureResult("phi_circ", ell, 0, MODE_EXACT, None,
                             subject=fam.construction)
    (I,) = best.key
    witness = CorrelationSpec(ell=ell, window=n, shifts=zeros,
                              rows=tuple(i + 1 for i in I))
    return MeasureResult("phi_circ", ell, best.value, MODE_EXACT, witness,
                         subject=fam.construction)


# ---------------------------------------------------------------------------
# k-symbol pattern-count measure


def _gamma_scan(slices, k: int, ell: int, all_patterns) -> tuple[int, int, tuple]:
    """Scaled deviation max_{M,W} |k^ell * count_W(M) - M| with the
    earliest window and smallest pattern attaining it."""
    kl = k**ell
    counts: dict[tuple, int] = {}
    best_s = -1
    best_m = 0
    best_w = None
    m = 0
    for pattern in zip(*slices):
        m += 1
        counts[pattern] = counts.get(pattern, 0) + 1
        for w in all_patterns:
            s = kl * counts.get(w, 0) - m
            if s < 0:
                s = -s
            if s > best_s:
                best_s, best_m, best_w = s, m, w
    return best_s, best_m, best_w


def gamma(fam: Family, ell: int, mode: str = MODE_EXACT, *,
          budget: Optional[int] = None, seed: int = 0, samples: int = 1000,
          n_jobs: int = 1) -> MeasureResult:
    """Maximum deviation |count of a pattern in a window - M/k^ell| over
    all admissible (pattern, window, shifts, rows) choices.  The value
    is an exact rational with denominator dividing k^ell."""
    _require_order(ell)
    n, f, k = fam.length, fam.size, fam.k
    ids = _content_ids(fam)
    kl = k**ell
    all_patterns = list(product(range(k), repeat=ell))

    if mode == MODE_EXACT:
        shift_tuples = _shift_tuples(ell, n)
        _check_budget(len(shift_tuples) * f**ell * n * kl, budget,
                      f"order-{ell} pattern deviation")

        def scan_chunk(i1: int) -> _Best:
            local = _Best()
            for rest in product(range(f), repeat=ell - 1):
                I = (i1,) + rest
                sel = [fam.rows[i] for i in I]
                for D in shift_tuples:
                    if not _admissible(ids, I, D):
                        continue
                    mmax = n - D[-1]
                    slices = [sel[j][D[j]:D[j] + mmax] for j in range(ell)]
                    s, m, w = _gamma_scan(slices, k, ell, all_patterns)
                    if s >= 0:
                        local.offer(s, (I, D, m, w))
            return local

        best = _run_chunks(scan_chunk, range(f), n_jobs)
    elif mode == MODE_SAMPLED:
        _check_budget(samples * n * kl, budget,
                      f"sampled order-{ell} pattern deviation")
        rng = random.Random(seed)
        best = _Best()
        for _ in range(samples):
            I = tuple(rng.randrange(f) for _ in range(ell))
            D = tuple(sorted(rng.randrange(n) for _ in range(ell)))
            if not _admissible(ids, I, D):
                continue
            mmax = n - D[-1]
            slices = [fam.rows[I[j]][D[j]:D[j] + mmax] for j in range(ell)]
            s, m, w = _gamma_scan(slices, k, ell, all_patterns)
            if s >= 0:
                best.offer(s, (I, D, m, w))
    else:
        raise ParameterError(f"unknown mode {mode!r}")

    if best.value is None:
        return MeasureResult("gamma", ell, Fraction(0), mode, None,
                             subject=fam.construction)
    I, D, m, w = best.key
    witness = CorrelationSpec(ell=ell, window=m, shifts=D,
                              rows=tuple(i + 1 for i in I), pattern=w)
    return MeasureResult("gamma", ell, Fraction(best.value, kl), mode, witness,
                         subject=fam.construction)


def gamma_circ(fam: Family, ell: int, *, budget: Optional[int] = None,
               n_jobs: int = 1) -> MeasureResult:
    """Pattern-count deviation restricted to the full window and all
    shifts zero, maximized over row tuples and patterns."""
    _require_order(ell)
    n, f, k = fam.length, fam.size, fam.k
    ids = _content_ids(fam)
    kl = k**ell
    all_patterns = list(product(range(k), repeat=ell))
    _check_budget(f**ell * n * kl, budget,
                  f"order-{ell} zero-shift pattern deviation")
    zeros = (0,) * ell

    def scan_chunk(i1: int) -> _Best:
        local = _Best()
        for rest in product(range(f), repeat=ell - 1):
            I = (i1,) + rest
            if not _admissible(ids, I, zeros):
                continue
            counts: dict[tuple, int] = {}
            for pattern in zip(*(fam.rows[i] for i in I)):
                counts[pattern] = counts.get(pattern, 0) + 1
            for w in all_patterns:
                s = abs(kl * counts.get(w, 0) - n)
                local.offer(s, (I, w))
        return local

    best = _run_chunks(scan_chunk, range(f), n_jobs)
    if best.value is None:
        return MeasureResult("gamma_circ", ell, Fraction(0), MODE_EXACT, None,
                             subject=fam.construction)
    I, w = best.key
    witness = CorrelationSpec(ell=ell, window=n, shifts=zeros,
                              rows=tuple(i + 1 for i in I), pattern=w)
    return MeasureResult("gamma_circ", ell, Fraction(best.value, kl),
                         MODE_EXACT, witness, subject=fam.construction)


# ---------------------------------------------------------------------------
# k-symbol root-of-unity measure


def _root_tables(k: int) -> tuple[list[float], list[float]]:
    cos = [math.cos(2.0 * math.pi * j / k) for j in range(k)]
    sin = [math.sin(2.0 * math.pi * j / k) for j in range(k)]
    return cos, sin


def _magnitude(counts: list[int], cos: list[float], sin: list[float]) -> float:
    re = 0.0
    im = 0.0
    for j, c in enumerate(counts):
        if c:
            re += c * cos[j]
            im += c * sin[j]
    return math.hypot(re, im)


def big_gamma(fam: Family, ell: int, budget: Optional[int] = None,
              mode: str = MODE_EXACT, *, seed: int = 0, samples: int = 1000,
              n_jobs: int = 1) -> MeasureResult:
    """Maximum absolute windowed sum of products of k-th roots of
    unity, over all bijective symbol relabelings per tuple position and
    all admissible (window, shifts, rows) choices.

    Products of roots reduce to index sums mod k, accumulated as exact
    integer counts; only the final magnitude uses floating point, which
    is exact for k <= 2 (the value is then an integer and equals the
    binary product correlation).
    """
    _require_order(ell)
    n, f, k = fam.length, fam.size, fam.k
    ids = _content_ids(fam)
    perms = list(permutations(range(k)))
    nperm = len(perms)
    cos, sin = _root_tables(k)
    exact_mag = k <= 2
    err = 0.0 if exact_mag else ell * n * 2.0**-50

    def window_values(slices, phi):
        """Yield (value, M) per window length for one relabeling."""
        if exact_mag:
            acc = 0
            for m, syms in enumerate(zip(*slices), start=1):
                idx = 0
                for j, s in enumerate(syms):
                    idx += phi[j][s]
                acc += 1 if idx % k == 0 else -1
                yield (acc if acc >= 0 else -acc), m
        else:
            counts = [0] * k
            for m, syms in enumerate(zip(*slices), start=1):
                idx = 0
                for j, s in enumerate(syms):
                    idx += phi[j][s]
                counts[idx % k] += 1
                yield _magnitude(counts, cos, sin), m

    if mode == MODE_EXACT:
        shift_tuples = _shift_tuples(ell, n)
        _check_budget(len(shift_tuples) * f**ell * n * nperm**ell, budget,
                      f"order-{ell} root-relabeling correlation")

        def scan_chunk(i1: int) -> _Best:
            local = _Best()
            for rest in product(range(f), repeat=ell - 1):
                I = (i1,) + rest
                sel = [fam.rows[i] for i in I]
                for D in shift_tuples:
                    if not _admissible(ids, I, D):
                        continue
                    mmax = n - D[-1]
                    slices = [sel[j][D[j]:D[j] + mmax] for j in range(ell)]
                    for phi in product(perms, repeat=ell):
                        for val, m in window_values(slices, phi):
                            local.offer(val, (I, D, m, phi))
            return local

        best = _run_chunks(scan_chunk, range(f), n_jobs)
    elif mode == MODE_SAMPLED:
        _check_budget(samples * n, budget,
                      f"sampled order-{ell} root-relabeling correlation")
        rng = random.Random(seed)
        best = _Best()
        for _ in range(samples):
            I = tuple(rng.randrange(f) for _ in range(ell))
            D = tuple(sorted(rng.randrange(n) for _ in range(ell)))
            if not _admissible(ids, I, D):
                continue
            phi = tuple(perms[rng.randrange(nperm)] for _ in range(ell))
            mmax = n - D[-1]
            slices = [fam.rows[I[j]][D[j]:D[j] + mmax] for j in range(ell)]
            for val, m in window_values(slices, phi):
                best.offer(val, (I, D, m, phi))
    else:
        raise ParameterError(f"unknown mode {mode!r}")

    if best.value is None:
        zero: Value = 0 if exact_mag else 0.0
        return MeasureResult("big_gamma", ell, zero, mode, None,
                             subject=fam.construction, err_bound=err)
    I, D, m, phi = best.key
    witness = CorrelationSpec(ell=ell, window=m, shifts=D,
                              rows=tuple(i + 1 for i in I), root_maps=phi)
    return MeasureResult("big_gamma", ell, best.value, mode, witness,
                         subject=fam.construction, err_bound=err)


# ---------------------------------------------------------------------------
# independent witness re-evaluation


def evaluate_witness(fam: Family, result: MeasureResult) -> Value:
    """Recompute the value certified by a result's witness with a
    literal, unoptimized pass; the certificate-soundness oracle.

    For correlation measures this evaluates the witnessed window sum,
    count deviation, or root-sum magnitude directly from the stated
    (M, D, I, pattern) tuple.  For the covering complexity it checks
    that no row realizes the uncovered specification (value = pattern
    size - 1), or re-derives the a-priori cap when the search exhausted
    every level.
    """
    w = result.witness
    if result.name == "f_complexity":
        if w is None:
            # only reached when every level passes (or k = 1)
            return fam.length
        if len(w.positions) != len(w.pattern):
            raise InternalError("witness positions/pattern lengths differ")
        if list(w.positions) != sorted(set(w.positions)):
            raise InternalError("witness positions must strictly increase")
        if not all(1 <= q <= fam.length for q in w.positions):
            raise InternalError("witness positions out of range")
        for row in fam.rows:
            if all(row[q - 1] == s for q, s in zip(w.positions, w.pattern)):
                raise InternalError(
                    "witness specification is realized; certificate is unsound")
        return len(w.positions) - 1

    if w is None:
        return result.value  # empty admissible space; nothing to re-run
    w.validate(fam)
    ell, m = w.ell, w.window
    sel = [fam.rows[i - 1] for i in w.rows]

    if result.name in ("phi", "phi_circ"):
        pm = [[1 - 2 * s for s in row] for row in sel]
        total = 0
        for n_ in range(m):
            term = 1
            for j in range(ell):
                term *= pm[j][n_ + w.shifts[j]]
            total += term
        return abs(total)

    if result.name in ("gamma", "gamma_circ"):
        count = 0
        for n_ in range(m):
            if all(sel[j][n_ + w.shifts[j]] == w.pattern[j]
                   for j in range(ell)):
                count += 1
        kl = fam.k**ell
        return abs(Fraction(count) - Fraction(m, kl))

    if result.name == "big_gamma":
        k = fam.k
        counts = [0] * k
        for n_ in range(m):
            idx = sum(w.root_maps[j][sel[j][n_ + w.shifts[j]]]
                      for j in range(ell))
            counts[idx % k] += 1
        if k <= 2:
            return abs(counts[0] - (counts[1] if k == 2 else 0))
        cos, sin = _root_tables(k)
        return _magnitude(counts, cos, sin)

    raise ParameterError(f"unknown measure name {result.name!r}")
