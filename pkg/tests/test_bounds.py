import math
import random
from fractions import Fraction

import pytest

from prsfam.bounds import (
    KIND_ASYMPTOTIC,
    KIND_ENVELOPE,
    KIND_EXACT,
    dual_gamma_circ_envelope,
    fc_envelope_f1,
    fc_envelope_f2,
    fc_envelope_ksym,
    fc_lower_bound_from_dual,
    gamma_envelope,
    phi_envelope,
    verify_family,
    weil_check,
)
from prsfam.construct import dual, family_f1, family_f2, family_k_symbol
from prsfam.errors import ParameterError
from prsfam.ff import legendre
from prsfam.measures import cross_correlation, f_complexity, gamma, gamma_circ
from prsfam.poly import Poly, is_irreducible, poly_gcd


# --- covering-complexity lower bound ----------------------------------------


def test_fc_lower_bound_examples():
    assert fc_lower_bound_from_dual(16, 2, 2, "binary") == 2
    assert fc_lower_bound_from_dual(16, 16, 2, "binary") == 0  # clamped
    assert fc_lower_bound_from_dual(9, 3, 3, "kary_logk") == 0


def test_fc_lower_bound_exact_at_power_boundaries():
    # ceil is computed with integer arithmetic, so exact powers do not
    # wobble with floating point
    assert fc_lower_bound_from_dual(2**20, 2, 2, "binary") == 18
    assert fc_lower_bound_from_dual(2**20 + 1, 2, 2, "binary") == 19
    assert fc_lower_bound_from_dual(8, Fraction(1, 2), 2, "binary") == 3


def test_fc_lower_bound_variants_coincide_for_binary_alphabet():
    rng = random.Random(20)
    for _ in range(50):
        f = rng.randint(2, 500)
        corr = rng.randint(1, 40)
        a = fc_lower_bound_from_dual(f, corr, 2, "binary")
        b = fc_lower_bound_from_dual(f, corr, 2, "kary_logk")
        c = fc_lower_bound_from_dual(f, corr, 2, "kary_log2")
        assert a == b == c


def test_fc_lower_bound_rejects_bad_inputs():
    with pytest.raises(ParameterError):
        fc_lower_bound_from_dual(16, 0, 2, "binary")
    with pytest.raises(ParameterError):
        fc_lower_bound_from_dual(1, 2, 2, "binary")
    with pytest.raises(ParameterError):
        fc_lower_bound_from_dual(16, 2, 2, "nope")


# --- envelopes ---------------------------------------------------------------


def test_phi_envelope_example():
    assert phi_envelope(11, 5, 2, 10) == pytest.approx(795.3, abs=0.05)
    assert phi_envelope(11, 5, 2, 0) == 0
    # monotone in each argument
    assert phi_envelope(13, 5, 2, 10) > phi_envelope(11, 5, 2, 10)
    assert phi_envelope(11, 6, 2, 10) > phi_envelope(11, 5, 2, 10)
    assert phi_envelope(11, 5, 3, 10) > phi_envelope(11, 5, 2, 10)


def test_gamma_envelope_example():
    assert gamma_envelope(13, 2, 10) == pytest.approx(184.9, abs=0.1)
    assert gamma_envelope(13, 0, 10) == 0
    assert gamma_envelope(52, 2, 10) / gamma_envelope(13, 2, 10) == \
        pytest.approx(2 * math.log(52) / math.log(13), rel=1e-12)


def test_fc_envelopes():
    assert fc_envelope_f1(101, 5) == pytest.approx(1.007, abs=0.001)
    assert fc_envelope_f1(25, 5) == 0.0  # p = d^2 boundary
    assert fc_envelope_f1(50, 5) + 0.5 == pytest.approx(fc_envelope_f1(100, 5))
    assert fc_envelope_f2(5, 3) == pytest.approx(1.898, abs=0.001)
    assert fc_envelope_f2(3, 2) == pytest.approx(0.585, abs=0.001)
    assert fc_envelope_ksym(5, 3) == pytest.approx(-1.055, abs=0.001)
    assert fc_envelope_ksym(101, 5) == pytest.approx(5.250, abs=0.01)


def test_dual_gamma_circ_envelope_shape():
    assert dual_gamma_circ_envelope(5, 3, 2, 1.0) == \
        pytest.approx(((2 * 5 - 1) * 5**1.5 + 5) / 15)


# --- complete character sums -------------------------------------------------


def test_weil_hand_case():
    r = weil_check(Poly((1, 0, 1), 5), 5)
    assert r.measured == 1
    assert r.theoretical == pytest.approx(math.sqrt(5))
    assert r.satisfied and r.kind == KIND_EXACT


def test_weil_linear_sums_vanish():
    for p in (5, 7, 11, 13, 101):
        r = weil_check(Poly((0, 1), p), p)
        assert r.measured == 0 and r.satisfied


def test_weil_two_quadratics():
    h = Poly((1, 0, 1), 7) * Poly((2, 0, 1), 7)
    assert is_irreducible(Poly((1, 0, 1), 7))
    r = weil_check(h, 7)
    assert r.theoretical == pytest.approx(3 * math.sqrt(7))
    assert r.measured <= 3 * math.sqrt(7)
    assert r.satisfied


def test_weil_rejects_non_squarefree():
    h = Poly((1, 1), 7) * Poly((1, 1), 7)
    with pytest.raises(ParameterError):
        weil_check(h, 7)
    with pytest.raises(ParameterError):
        weil_check(Poly((3,), 7), 7)


def test_weil_on_scaled_shifted_products():
    # the correlation estimate's inner object: a product of shifted
    # scaled copies of an irreducible base stays within the sum bound
    from prsfam.poly import scale_poly
    base = Poly((4, 0, 1, 1, 0, 1), 11)
    h = scale_poly(base, 2) * scale_poly(base, 3).shifted(1)
    r = weil_check(h, 11)
    assert r.satisfied
    assert r.theoretical == pytest.approx(9 * math.sqrt(11))


def test_weil_seeded_squarefree_suite():
    rng = random.Random(99)
    checked = 0
    while checked < 60:
        p = rng.choice([5, 7, 11, 13, 101])
        d = rng.randint(1, 6)
        h = Poly([rng.randrange(p) for _ in range(d)] + [rng.randrange(1, p)],
                 p)
        if poly_gcd(h, h.derivative()).degree != 0:
            continue
        r = weil_check(h, p)
        assert r.satisfied, (h, p, r.measured, r.theoretical)
        # independent recomputation of the sum
        assert r.measured == abs(sum(legendre(h.eval(n), p) for n in range(p)))
        checked += 1


# --- family verification -----------------------------------------------------


def _measures_for(fam, orders=(1, 2)):
    dl = dual(fam)
    out = [f_complexity(fam)]
    base = fam.k if fam.k >= 3 else 2
    imax = 0
    while base ** (imax + 1) <= fam.size:
        imax += 1
    imax = max(imax, 1) if fam.size >= 2 else 0
    for i in range(1, imax + 1):
        if fam.k == 2:
            out.append(cross_correlation(dl, i))
        else:
            out.append(gamma(dl, i))
    for ell in orders:
        if fam.k == 2:
            out.append(cross_correlation(fam, ell))
        else:
            out.append(gamma(fam, ell))
            out.append(gamma_circ(dl, ell))
    return out


def test_verify_f2_all_exact_reports_satisfied():
    fam = family_f2(5, 3)
    reports = verify_family(fam, _measures_for(fam))
    exact = [r for r in reports if r.kind == KIND_EXACT]
    assert exact and all(r.satisfied for r in exact)
    names = {r.name for r in reports}
    assert {"family_size", "rows_distinct", "fc_capacity",
            "fc_dual_lower_bound", "phi_envelope"} <= names


def test_verify_f1_envelopes_with_default_constant():
    fam = family_f1(11, 5)
    reports = verify_family(fam, _measures_for(fam))
    assert all(r.satisfied for r in reports if r.kind == KIND_EXACT)
    assert all(r.satisfied for r in reports if r.kind == KIND_ENVELOPE)


def test_verify_ksym_reports():
    fam = family_k_symbol(13, 2, 3)
    reports = verify_family(fam, _measures_for(fam))
    assert all(r.satisfied for r in reports if r.kind == KIND_EXACT)
    names = {r.name for r in reports}
    assert "family_size" in names
    assert "gamma_envelope" in names
    assert "dual_gamma_circ_envelope" in names
    assert "fc_dual_lower_bound_kary_logk" in names
    kary = [r for r in reports if r.name.startswith("fc_dual_lower_bound_")]
    assert all(r.kind == KIND_ASYMPTOTIC for r in kary)


def test_verify_size_identities_via_formula():
    # (p^d - p)/(dp) for the k-symbol family, exact
    fam = family_k_symbol(5, 3, 2)
    reports = verify_family(fam, _measures_for(fam))
    size = next(r for r in reports if r.name == "family_size")
    assert size.measured == 8 and size.theoretical == (5**3 - 5) // 15
    assert size.satisfied


def test_verify_f2_without_trace_restriction_sizes():
    fam = family_f2(5, 2, trace_zero=False)
    reports = verify_family(fam, _measures_for(fam))
    size = next(r for r in reports if r.name == "family_size")
    assert size.theoretical == 10 and size.satisfied
    assert not any(r.name == "family_size_leading_term" for r in reports)


def test_verify_missing_measures_listed():
    fam = family_f2(5, 3)
    with pytest.raises(ParameterError) as exc:
        verify_family(fam, [f_complexity(fam)])
    msg = str(exc.value)
    assert "phi order 1 on the dual family" in msg
    assert "phi order 3 on the dual family" in msg
    with pytest.raises(ParameterError, match="f_complexity"):
        verify_family(fam, [])


def test_verify_surfaces_envelope_violation():
    # a tiny scale constant must flag the envelope without failing exact
    fam = family_f2(5, 3)
    reports = verify_family(fam, _measures_for(fam), c=1e-9)
    env = [r for r in reports if r.kind == KIND_ENVELOPE]
    assert env and not any(r.satisfied for r in env)
    assert all(r.satisfied for r in reports if r.kind == KIND_EXACT)
