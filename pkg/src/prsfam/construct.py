"""Construction and serialization of the sequence families.

A family is F rows of length N over the alphabet {0, ..., k-1}.  Binary
families use k = 2 with symbol 0 standing for +1 and symbol 1 for -1.
Three builders are provided:

* ``family_f1``  -- residue-symbol rows of the scaled polynomials
  i^d * f(x/i) of a fixed irreducible base polynomial, one row per
  nonzero scale factor i;
* ``family_f2``  -- residue-symbol rows of every monic irreducible
  degree-d polynomial with zero second-highest coefficient;
* ``family_k_symbol`` -- order-k character rows of the minimal
  polynomials of trace-zero conjugacy representatives.

All builders verify at build time that no row contains a zero symbol,
check row distinctness exhaustively (recording the outcome, since it
can genuinely fail at small parameters; see ``_distinct``), then freeze
the result.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from itertools import product
from typing import IO, Mapping, Union

from . import poly as _poly
from .errors import InternalError, ParameterError, ParseError
from .ff import char_k, is_prime, legendre
from .poly import (
    Poly,
    conjugacy_representatives,
    is_irreducible,
    minimal_polynomial,
    scale_poly,
)

__all__ = [
    "Family",
    "family_f1",
    "family_f2",
    "family_k_symbol",
    "dual",
    "dual_tag",
    "write_family",
    "read_family",
    "FILE_MAGIC",
]

FILE_MAGIC = "#PRSFAM v1"

_BASE_TAGS = {"f1", "f2", "ksym", "external"}


def _check_tag(tag: str) -> None:
    inner = tag
    while inner.startswith("dual(") and inner.endswith(")"):
        inner = inner[5:-1]
    if inner not in _BASE_TAGS:
        raise ParameterError(f"unknown construction tag {tag!r}")


@dataclass(frozen=True)
class Family:
    """Immutable family of sequences over a k-symbol alphabet.

    ``params`` carries builder metadata (base polynomial and the like)
    and is excluded from equality; the family file format only records
    the construction tag.
    """

    p: int
    d: int
    k: int
    rows: tuple[tuple[int, ...], ...]
    construction: str = "external"
    params: Mapping = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        _check_tag(self.construction)
        if self.k < 1:
            raise ParameterError(f"alphabet size must be >= 1, got {self.k}")
        if not self.rows:
            raise ParameterError("a family needs at least one row")
        n = len(self.rows[0])
        if n < 1:
            raise ParameterError("rows must be nonempty")
        for r in self.rows:
            if len(r) != n:
                raise ParameterError("rows must all have the same length")
            for s in r:
                if not 0 <= s < self.k:
                    raise ParameterError(
                        f"symbol {s} out of range for alphabet size {self.k}")

    @property
    def size(self) -> int:
        """Number of rows (the family size F)."""
        return len(self.rows)

    @property
    def length(self) -> int:
        """Common row length N."""
        return len(self.rows[0])

    def pm_rows(self) -> tuple[tuple[int, ...], ...]:
        """Rows as +/-1 values (binary families only; 0 -> +1, 1 -> -1)."""
        if self.k != 2:
            raise ParameterError(
                f"the +/-1 view needs a binary family, alphabet size is {self.k}")
        return tuple(tuple(1 - 2 * s for s in row) for row in self.rows)

    def distinct_rows(self) -> bool:
        return len(set(self.rows)) == len(self.rows)


def _encode_pm(value: int) -> int:
    # value is a residue symbol in {-1, +1}
    return 0 if value == 1 else 1


def _symbol_rows_from_polys(polys, p: int) -> tuple[tuple[int, ...], ...]:
    rows = []
    for f in polys:
        row = []
        for n in range(1, p):
            v = legendre(f.eval(n), p)
            if v == 0:
                raise InternalError(
                    f"{f} vanished at {n}; irreducible inputs cannot")
            row.append(_encode_pm(v))
        rows.append(tuple(row))
    return tuple(rows)


def _distinct(rows) -> bool:
    """Exhaustive build-time distinctness check.

    The supporting character-sum argument needs p large against the
    degree (roughly p > (2d-1)^2), and below that range equal rows can
    genuinely occur: over F_7 the trace-zero irreducible cubics x^3+2
    and x^3+5 give the same residue-symbol row.  Builders therefore
    record the outcome in params["distinct_rows"] instead of refusing;
    the bound verifier reports a violation.
    """
    return len(set(rows)) == len(rows)


def _find_base_poly(p: int, d: int, budget: int) -> Poly:
    """Deterministic default base for family_f1: the lexicographically
    first monic irreducible of degree d with zero x^(d-1) coefficient
    and nonzero x^(d-2), x^(d-3) coefficients."""
    tried = 0
    for rest in product(range(p), repeat=d - 1):
        # rest = (coeff of x^(d-2), ..., coeff of x^0)
        if rest[0] == 0 or rest[1] == 0:
            continue
        tried += 1
        if tried > budget:
            raise ParameterError(
                f"no valid base polynomial found within budget {budget}")
        coeffs = [0] * (d + 1)
        coeffs[d] = 1
        for idx, c in enumerate(rest):
            coeffs[d - 2 - idx] = c
        f = Poly(coeffs, p)
        if is_irreducible(f):
            return f
    raise ParameterError(
        f"no monic irreducible degree-{d} base with the required "
        f"coefficient pattern exists over F_{p}")


def _validate_base(base: Poly, p: int, d: int) -> None:
    if base.p != p:
        raise ParameterError("base polynomial is over the wrong prime field")
    if base.degree != d or not base.is_monic:
        raise ParameterError(f"base must be monic of degree {d}, got {base}")
    coeffs = base.coeffs
    if coeffs[d - 1] != 0:
        raise ParameterError("base must have zero x^(d-1) coefficient")
    if coeffs[d - 2] == 0:
        raise ParameterError("base must have nonzero x^(d-2) coefficient")
    if coeffs[d - 3] == 0:
        raise ParameterError("base must have nonzero x^(d-3) coefficient")
    if not is_irreducible(base):
        raise ParameterError(f"base {base} is reducible over F_{p}")


def family_f1(p: int, d: int, base: Poly | None = None,
              budget: int | None = None) -> Family:
    """Binary family with one row per scale factor i in 1..p-1; row i is
    the residue-symbol sequence of i^d * base(x/i) at x = 1..p-1.

    Requires d >= 5, p not dividing d, and a base polynomial that is
    monic irreducible with zero x^(d-1) coefficient and nonzero
    x^(d-2), x^(d-3) coefficients (searched deterministically when not
    given).
    """
    if not is_prime(p) or p < 3:
        raise ParameterError(f"p must be an odd prime, got {p}")
    if d < 5:
        raise ParameterError(f"degree must be >= 5, got {d}")
    if d % p == 0:
        raise ParameterError(f"p={p} must not divide d={d}")
    budget = _poly.DEFAULT_ENUM_BUDGET if budget is None else budget
    if base is None:
        base = _find_base_poly(p, d, budget)
    else:
        _validate_base(base, p, d)
    rows = _symbol_rows_from_polys(
        (scale_poly(base, i) for i in range(1, p)), p)
    return Family(p=p, d=d, k=2, rows=rows, construction="f1",
                  params={"base": base.coeffs,
                          "distinct_rows": _distinct(rows)})


def family_f2(p: int, d: int, trace_zero: bool = True,
              budget: int | None = None) -> Family:
    """Binary family with one row per monic irreducible degree-d
    polynomial (zero x^(d-1) coefficient by default), in lexicographic
    polynomial order; row entries are the residue symbols at 1..p-1."""
    if not is_prime(p) or p < 3:
        raise ParameterError(f"p must be an odd prime, got {p}")
    if d < 2:
        raise ParameterError(f"degree must be >= 2, got {d}")
    if trace_zero:
        polys = _poly.enumerate_trace_zero_irreducibles(p, d, budget=budget)
    else:
        polys = _enumerate_all_irreducibles(p, d, budget=budget)
    rows = _symbol_rows_from_polys(polys, p)
    return Family(p=p, d=d, k=2, rows=rows, construction="f2",
                  params={"trace_zero": trace_zero,
                          "distinct_rows": _distinct(rows)})


def _enumerate_all_irreducibles(p: int, d: int,
                                budget: int | None = None) -> list[Poly]:
    budget = _poly.DEFAULT_ENUM_BUDGET if budget is None else budget
    if p**d > budget:
        from .errors import BudgetError
        raise BudgetError(
            f"enumeration needs {p**d} candidates, budget is {budget}",
            estimate=p**d, budget=budget)
    out = []
    for rest in product(range(p), repeat=d):
        f = Poly(tuple(reversed(rest)) + (1,), p)
        if is_irreducible(f):
            out.append(f)
    return out


def family_k_symbol(p: int, d: int, k: int, require_coprime: bool = True,
                    budget: int | None = None) -> Family:
    """k-symbol family: one row per trace-zero conjugacy representative
    beta of degree exactly d, with entries the order-k character of the
    minimal polynomial of beta evaluated at 1..p-1.

    Requires d prime with p != d, 2 <= k dividing p-1, and (by default)
    gcd(k, (p^d-1)/(p-1)) = 1.  The coprimality hypothesis underwrites
    the correlation bound, not the construction itself; pass
    ``require_coprime=False`` to build the family without it.
    """
    if not is_prime(p) or p < 3:
        raise ParameterError(f"p must be an odd prime, got {p}")
    if not is_prime(d):
        raise ParameterError(f"degree must be prime, got {d}")
    if p == d:
        raise ParameterError(
            f"p = d = {p} degenerates the trace-zero count; choose p != d")
    if k < 2:
        raise ParameterError(f"alphabet size must be >= 2, got {k}")
    if (p - 1) % k != 0:
        raise ParameterError(f"order k={k} must divide p-1 = {p - 1}")
    subgroup = (p**d - 1) // (p - 1)
    if require_coprime and math.gcd(k, subgroup) != 1:
        raise ParameterError(
            f"gcd(k, (p^d-1)/(p-1)) = gcd({k}, {subgroup}) = "
            f"{math.gcd(k, subgroup)} != 1")
    reps = conjugacy_representatives(p, d, trace_zero_only=True, budget=budget)
    rows = []
    for beta in reps:
        f = minimal_polynomial(beta)
        row = []
        for n in range(1, p):
            v = f.eval(n)
            if v == 0:
                raise InternalError(
                    f"{f} vanished at {n}; irreducible inputs cannot")
            row.append(char_k(v, k, p))
        rows.append(tuple(row))
    rows = tuple(rows)
    expected = (p**d - p) // (d * p)
    if len(rows) != expected:
        raise InternalError(
            f"family size {len(rows)} != (p^d-p)/(dp) = {expected}")
    return Family(p=p, d=d, k=k, rows=rows, construction="ksym",
                  params={"require_coprime": require_coprime,
                          "distinct_rows": _distinct(rows)})


def dual_tag(tag: str) -> str:
    """The construction tag of the transposed family; unwraps an
    existing dual so that dualizing is an involution on tags."""
    if tag.startswith("dual(") and tag.endswith(")"):
        return tag[5:-1]
    return f"dual({tag})"


def dual(fam: Family) -> Family:
    """Transpose: row n of the dual reads symbol n of every member.
    Applying it twice returns the original family."""
    rows = tuple(zip(*fam.rows))
    return Family(p=fam.p, d=fam.d, k=fam.k, rows=rows,
                  construction=dual_tag(fam.construction),
                  params=dict(fam.params))


_HEADER_RE = re.compile(
    r"^#PRSFAM v1 p=(\d+) d=(\d+) k=(\d+) N=(\d+) F=(\d+) construction=(\S+)$")


def write_family(fam: Family, sink: Union[str, IO[str]]) -> None:
    """Write the text format: one header line, then F rows of N
    space-separated symbols.  LF line endings, UTF-8."""
    header = (f"{FILE_MAGIC} p={fam.p} d={fam.d} k={fam.k} "
              f"N={fam.length} F={fam.size} construction={fam.construction}")
    lines = [header]
    lines.extend(" ".join(str(s) for s in row) for row in fam.rows)
    text = "\n".join(lines) + "\n"
    if isinstance(sink, str):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sink.write(text)


def read_family(source: Union[str, IO[str]]) -> Family:
    """Parse a family file; the inverse of ``write_family``."""
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = source.read()
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty family file", line=1)
    m = _HEADER_RE.match(lines[0])
    if not m:
        raise ParseError(f"malformed header {lines[0]!r}", line=1)
    p, d, k, n, f = (int(m.group(i)) for i in range(1, 6))
    tag = m.group(6)
    try:
        _check_tag(tag)
    except ParameterError as exc:
        raise ParseError(str(exc), line=1) from None
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != f:
        raise ParseError(
            f"header says F={f} but file has {len(body)} rows", line=1)
    rows = []
    for idx, ln in enumerate(body, start=2):
        try:
            row = tuple(int(tok) for tok in ln.split())
        except ValueError:
            raise ParseError(f"non-integer symbol in {ln!r}", line=idx) from None
        if len(row) != n:
            raise ParseError(
                f"row has {len(row)} symbols, header says N={n}", line=idx)
        for s in row:
            if not 0 <= s < k:
                raise ParseError(
                    f"symbol {s} out of range for alphabet size {k}", line=idx)
        rows.append(row)
    try:
        return Family(p=p, d=d, k=k, rows=tuple(rows), construction=tag)
    except ParameterError as exc:
        raise ParseError(str(exc)) from None
