"""Theoretical bounds as explicit functions, and verification reports
comparing them against measured values.

Three kinds of report are produced:

* ``exact``      -- identities and inequalities that hold with no
  unspecified constant (family sizes, row distinctness, the capacity
  bound k^C <= F, the dual-correlation lower bound on the covering
  complexity, complete character sums).  These are asserted.
* ``envelope``   -- upper bounds of the shape c * (formula) where the
  scale constant c is a free parameter (default 10); violations are
  surfaced as warnings, never hidden.
* ``asymptotic`` -- lower-bound envelopes with vanishing terms dropped;
  reported for context only, never asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .construct import Family, dual_tag
from .errors import ParameterError
from .ff import legendre
from .measures import MeasureResult
from .poly import Poly, count_trace_zero_irreducibles, mobius, poly_gcd

__all__ = [
    "BoundReport",
    "KIND_EXACT",
    "KIND_ENVELOPE",
    "KIND_ASYMPTOTIC",
    "fc_lower_bound_from_dual",
    "phi_envelope",
    "gamma_envelope",
    "dual_gamma_circ_envelope",
    "fc_envelope_f1",
    "fc_envelope_f2",
    "fc_envelope_ksym",
    "weil_check",
    "verify_family",
]

KIND_EXACT = "exact"
KIND_ENVELOPE = "envelope"
KIND_ASYMPTOTIC = "asymptotic"

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class BoundReport:
    """One comparison of a measured value against a theoretical one.

    ``satisfied`` means measured <= theoretical for upper bounds and
    measured >= theoretical for lower bounds, compared exactly whenever
    both sides are exact.  ``ratio`` is measured over theoretical where
    that is meaningful.
    """

    name: str
    kind: str
    params: dict = field(compare=False)
    theoretical: Number = 0
    measured: Number = 0
    satisfied: bool = True
    ratio: Optional[float] = None
    note: str = ""


def _ratio(measured: Number, theoretical: Number) -> Optional[float]:
    if theoretical == 0:
        return None
    return float(measured) / float(theoretical)


def _ceil_log_ratio(num: Number, den: Number, base: int) -> int:
    """Smallest integer t with den * base**t >= num, computed with
    exact rational arithmetic (num, den > 0)."""
    if den <= 0 or num <= 0:
        raise ParameterError("log ratio needs positive arguments")
    num = Fraction(num)
    den = Fraction(den)

    def ok(t: int) -> bool:
        return den * Fraction(base) ** t >= num

    t = 0
    while not ok(t):
        t += 1
    while ok(t - 1):
        t -= 1
    return t


def fc_lower_bound_from_dual(family_size: int, max_corr: Number,
                             alphabet_k: int = 2,
                             variant: str = "binary") -> int:
    """Covering-complexity lower bound from the largest dual-family
    correlation, clamped at 0.

    Variants (all coincide for k = 2):

    * ``binary``     -- ceil(log2 F - log2 max_corr) - 1, exact.
    * ``kary_logk``  -- ceil(log_k F - log_k max_corr) - 1, exact;
      the single-base reading.
    * ``kary_log2``  -- ceil(log_k F - log2 max_corr) - 1, mixed bases,
      evaluated in double precision; reported, never asserted.
    """
    if family_size < 2:
        raise ParameterError("family size must be >= 2")
    if max_corr <= 0:
        raise ParameterError("max correlation must be positive")
    if variant == "binary":
        t = _ceil_log_ratio(family_size, max_corr, 2)
    elif variant == "kary_logk":
        t = _ceil_log_ratio(family_size, max_corr, alphabet_k)
    elif variant == "kary_log2":
        v = (math.log(family_size, alphabet_k)
             - math.log2(float(max_corr)))
        t = math.ceil(v)
    else:
        raise ParameterError(f"unknown variant {variant!r}")
    return max(t - 1, 0)


def phi_envelope(p: int, d: int, ell: int, c: float = 10.0) -> float:
    """Upper envelope c * d * ell * sqrt(p) * ln(p) for the order-ell
    correlation of the polynomial residue-symbol families."""
    if p < 3 or d < 1 or ell < 1 or c < 0:
        raise ParameterError("need p >= 3, d >= 1, ell >= 1, c >= 0")
    return c * d * ell * math.sqrt(p) * math.log(p)


def gamma_envelope(p: int, ell: int, c: float = 10.0) -> float:
    """Upper envelope c * ell * sqrt(p) * ln(p) for the order-ell
    pattern deviation of the k-symbol family."""
    if p < 3 or c < 0:
        raise ParameterError("need p >= 3 and c >= 0")
    if ell < 1:
        return 0.0
    return c * ell * math.sqrt(p) * math.log(p)


def dual_gamma_circ_envelope(p: int, d: int, ell: int,
                             c: float = 10.0) -> float:
    """Upper envelope c * ((ell*p - 1) * p^(d/2) + p) / (d*p) for the
    zero-shift pattern deviation of the k-symbol family's dual."""
    if p < 3 or d < 1 or ell < 1 or c < 0:
        raise ParameterError("need p >= 3, d >= 1, ell >= 1, c >= 0")
    return c * ((ell * p - 1) * p ** (d / 2) + p) / (d * p)


def fc_envelope_f1(p: int, d: int) -> float:
    """Asymptotic covering-complexity envelope (1/2) log2(p / d^2) for
    the scaled-polynomial family, vanishing terms dropped; 0 when
    p <= d^2."""
    if p <= d * d:
        return 0.0
    return 0.5 * math.log2(p / (d * d))


def fc_envelope_f2(p: int, d: int) -> float:
    """Asymptotic covering-complexity envelope (1/2) log2(p^d / d^2)
    for the irreducible-polynomial family (grouping read as the
    logarithm of the full quotient)."""
    if p**d <= d * d:
        return 0.0
    return 0.5 * math.log2(p**d / (d * d))


def fc_envelope_ksym(p: int, d: int) -> float:
    """Asymptotic covering-complexity envelope
    (d/2 - 1) log2 p - log2((d-1) log2 p) for the k-symbol family;
    may be negative (callers clamp for display)."""
    if d < 2 or p < 3:
        raise ParameterError("need d >= 2 and p >= 3")
    return (d / 2 - 1) * math.log2(p) - math.log2((d - 1) * math.log2(p))


def weil_check(h: Poly, p: int) -> BoundReport:
    """Complete residue-symbol sum of a square-free polynomial checked
    against (deg h - 1) * sqrt(p); the comparison is exact (squared
    integer inequality), the report shows the float envelope."""
    if h.degree < 1:
        raise ParameterError("need a nonconstant polynomial")
    if h.p != p:
        raise ParameterError("polynomial is over the wrong prime field")
    if poly_gcd(h, h.derivative()).degree != 0:
        raise ParameterError(f"{h} is not square-free over F_{p}")
    total = sum(legendre(h.eval(n), p) for n in range(p))
    m = h.degree
    measured = abs(total)
    theoretical = (m - 1) * math.sqrt(p)
    satisfied = measured * measured <= (m - 1) * (m - 1) * p
    return BoundReport(
        name="weil_complete_sum", kind=KIND_EXACT,
        params={"p": p, "degree": m, "poly": list(h.coeffs)},
        theoretical=theoretical, measured=measured, satisfied=satisfied,
        ratio=_ratio(measured, theoretical),
        note="|sum over F_p of residue symbols| vs (deg-1) sqrt(p), "
             "decided by exact squared comparison")


def _index(measures: Sequence[MeasureResult]):
    by_key: dict[tuple[str, str, int], MeasureResult] = {}
    for m in measures:
        by_key.setdefault((m.subject, m.name, m.order), m)
    return by_key


def _floor_log(n: int, base: int) -> int:
    t = 0
    while base ** (t + 1) <= n:
        t += 1
    return t


def verify_family(fam: Family, measures: Sequence[MeasureResult],
                  c: float = 10.0) -> list[BoundReport]:
    """Build one report per applicable bound for a constructed family.

    Requires, among ``measures``: the covering complexity of the family
    and, when F >= 2, the dual family's order-i correlations (binary:
    the product correlation; k >= 3: the pattern deviation) for
    i = 1 .. floor(log_2 F) (resp. log_k).  Additionally supplied
    correlation measures of the family itself produce envelope reports.
    Raises ``ParameterError`` listing anything missing.
    """
    tag = fam.construction
    dtag = dual_tag(tag)
    p, d, k, f_size, n_len = fam.p, fam.d, fam.k, fam.size, fam.length
    by_key = _index(measures)
    reports: list[BoundReport] = []

    # --- structural identities (computed here, always available) ---
    if tag in ("f1", "f2", "ksym"):
        trace_zero = fam.params.get("trace_zero", True)
        if tag == "f1":
            expected = p - 1
            formula = "F = p - 1"
        elif tag == "f2" and trace_zero:
            expected = count_trace_zero_irreducibles(p, d)
            formula = "F = (1/d) * #(trace-zero degree-d elements)"
        elif tag == "f2":
            expected = sum(mobius(t) * p ** (d // t)
                           for t in range(1, d + 1) if d % t == 0) // d
            formula = "F = #(monic irreducible degree-d polynomials)"
        else:
            expected = (p**d - p) // (d * p)
            formula = "F = (p^d - p)/(d p)"
        reports.append(BoundReport(
            name="family_size", kind=KIND_EXACT,
            params={"p": p, "d": d, "k": k, "formula": formula},
            theoretical=expected, measured=f_size,
            satisfied=f_size == expected,
            ratio=_ratio(f_size, expected), note=formula))
        if tag == "f2" and trace_zero:
            lead = p ** (d - 1) / d
            corr = Fraction(3, 2) * p ** (d // 2)
            # exact: 2*d*F >= 2*p^(d-1) - 3*d*p^(floor(d/2))
            ok = 2 * d * f_size >= 2 * p ** (d - 1) - 3 * d * p ** (d // 2)
            reports.append(BoundReport(
                name="family_size_leading_term", kind=KIND_EXACT,
                params={"p": p, "d": d, "leading": lead,
                        "correction": float(corr)},
                theoretical=lead - float(corr), measured=f_size,
                satisfied=ok, ratio=_ratio(f_size, lead),
                note="exact count vs leading term p^(d-1)/d with "
                     "correction (3/2) p^floor(d/2)"))

    distinct = fam.distinct_rows()
    reports.append(BoundReport(
        name="rows_distinct", kind=KIND_EXACT,
        params={"F": f_size, "N": n_len},
        theoretical=f_size, measured=len(set(fam.rows)),
        satisfied=distinct, ratio=None,
        note="all rows pairwise distinct"))

    # --- capacity bound k^C <= F ---
    missing: list[str] = []
    fc = by_key.get((tag, "f_complexity", 0))
    if fc is None:
        missing.append("f_complexity on the family")
    else:
        cval = fc.value
        reports.append(BoundReport(
            name="fc_capacity", kind=KIND_EXACT,
            params={"k": k, "C": cval},
            theoretical=f_size, measured=k**cval,
            satisfied=k**cval <= f_size,
            ratio=_ratio(k**cval, f_size),
            note="k^C <= F"))

    # --- covering complexity vs dual correlations ---
    if k == 2:
        imax = _floor_log(f_size, 2) if f_size >= 2 else 0
        dual_name = "phi"
    else:
        imax = _floor_log(f_size, k) if f_size >= 2 else 0
        dual_name = "gamma"
    imax = max(imax, 1) if f_size >= 2 else 0
    dual_vals = []
    for i in range(1, imax + 1):
        r = by_key.get((dtag, dual_name, i))
        if r is None:
            missing.append(f"{dual_name} order {i} on the dual family")
        else:
            dual_vals.append(r.value)
    if missing:
        raise ParameterError(
            "verify_family needs more measures; missing: "
            + "; ".join(missing))

    if f_size >= 2 and dual_vals:
        max_corr = max(dual_vals)
        if max_corr > 0:
            cval = fc.value
            if k == 2:
                bound = fc_lower_bound_from_dual(f_size, max_corr, 2, "binary")
                reports.append(BoundReport(
                    name="fc_dual_lower_bound", kind=KIND_EXACT,
                    params={"F": f_size, "max_dual_phi": max_corr,
                            "orders": imax},
                    theoretical=bound, measured=cval,
                    satisfied=cval >= bound,
                    ratio=_ratio(cval, bound),
                    note="C >= ceil(log2 F - log2 max phi(dual)) - 1"))
            else:
                # mixed/single log-base readings; reported, not asserted
                for variant in ("kary_logk", "kary_log2"):
                    bound = fc_lower_bound_from_dual(
                        f_size, max_corr, k, variant)
                    reports.append(BoundReport(
                        name=f"fc_dual_lower_bound_{variant}",
                        kind=KIND_ASYMPTOTIC,
                        params={"F": f_size, "k": k,
                                "max_dual_gamma": str(max_corr),
                                "orders": imax},
                        theoretical=bound, measured=cval,
                        satisfied=cval >= bound,
                        ratio=_ratio(cval, bound),
                        note=f"k-ary variant {variant}; reported, "
                             "not asserted"))

    # --- scale-constant envelopes for supplied correlation measures ---
    for m in measures:
        if m.name == "phi" and m.subject == tag and tag in ("f1", "f2"):
            theo = phi_envelope(p, d, m.order, c)
            reports.append(BoundReport(
                name="phi_envelope", kind=KIND_ENVELOPE,
                params={"p": p, "d": d, "ell": m.order, "c": c},
                theoretical=theo, measured=m.value,
                satisfied=float(m.value) <= theo,
                ratio=_ratio(m.value, theo),
                note="phi_ell <= c * d * ell * sqrt(p) * ln p"))
        elif m.name == "phi" and m.subject == dtag and tag == "f1":
            theo = phi_envelope(p, d, m.order, c)
            reports.append(BoundReport(
                name="dual_phi_envelope", kind=KIND_ENVELOPE,
                params={"p": p, "d": d, "ell": m.order, "c": c},
                theoretical=theo, measured=m.value,
                satisfied=float(m.value) <= theo,
                ratio=_ratio(m.value, theo),
                note="dual family phi_ell <= c * d * ell * sqrt(p) * ln p"))
        elif m.name == "gamma" and m.subject == tag and tag == "ksym":
            theo = gamma_envelope(p, m.order, c)
            reports.append(BoundReport(
                name="gamma_envelope", kind=KIND_ENVELOPE,
                params={"p": p, "ell": m.order, "c": c},
                theoretical=theo, measured=float(m.value),
                satisfied=float(m.value) <= theo,
                ratio=_ratio(m.value, theo),
                note="gamma_ell <= c * ell * sqrt(p) * ln p"))
        elif m.name == "gamma_circ" and m.subject == dtag and tag == "ksym":
            theo = dual_gamma_circ_envelope(p, d, m.order, c)
            reports.append(BoundReport(
                name="dual_gamma_circ_envelope", kind=KIND_ENVELOPE,
                params={"p": p, "d": d, "ell": m.order, "c": c},
                theoretical=theo, measured=float(m.value),
                satisfied=float(m.value) <= theo,
                ratio=_ratio(m.value, theo),
                note="zero-shift gamma of the dual vs "
                     "c * ((ell p - 1) p^(d/2) + p)/(d p)"))

    # --- asymptotic covering-complexity envelopes ---
    if fc is not None and tag in ("f1", "f2", "ksym"):
        if tag == "f1":
            theo = fc_envelope_f1(p, d)
            note = "(1/2) log2(p/d^2), vanishing terms dropped"
        elif tag == "f2":
            theo = fc_envelope_f2(p, d)
            note = "(1/2) log2(p^d/d^2), vanishing terms dropped"
        else:
            theo = fc_envelope_ksym(p, d)
            note = "(d/2 - 1) log2 p - log2((d-1) log2 p); negative " \
                   "values clamp to 0 for comparison"
        clamped = max(theo, 0.0)
        reports.append(BoundReport(
            name="fc_asymptotic", kind=KIND_ASYMPTOTIC,
            params={"p": p, "d": d, "raw": theo},
            theoretical=clamped, measured=fc.value,
            satisfied=fc.value >= clamped,
            ratio=_ratio(fc.value, clamped), note=note))

    return reports
