"""Tests for the spin-labelled polynomial families and their product law."""

import random
from fractions import Fraction

import pytest

from uhsl2.scalar import (HSeries, HalfInt, RadicalSum, half_range, spins_up_to,
                          sqrt_fraction, weights)
from uhsl2.symplecton import (decompose_twisted, generating_function_check,
                              generator_reconstruction_check, h_symplecton_forms_check,
                              hypergeometric_form, pairing_check,
                              product_intermediate_check, product_law_suite,
                              product_oracle, product_support_check, ratio_table,
                              symmetry_check, tensor_operator_check,
                              twist_conjugation_check, twisted_sum_collapse_check,
                              weight_one_commutator_check)
from uhsl2.weyl import WeylElement, classical_symplecton, h_symplecton


def test_reflection_symmetry():
    assert symmetry_check(HalfInt(4), 0), "reflection symmetry fails below spin 2"


def test_hypergeometric_form_matches_basis():
    for j in spins_up_to(HalfInt(4)):
        for m in weights(j):
            if m > 0:
                continue
            got = hypergeometric_form(j, m, 0)
            want = classical_symplecton(j, m, 0)
            assert got == want, f"hypergeometric form differs at j={j}, m={m}"


def test_hypergeometric_form_rejects_positive_weight():
    with pytest.raises(ValueError):
        hypergeometric_form(HalfInt(2), HalfInt(2), 0)


def test_deformed_closed_forms():
    ok, detail = h_symplecton_forms_check(HalfInt(4), 4)
    assert ok, detail


def test_tensor_operator_suite():
    ok, detail = tensor_operator_check(HalfInt(3), 4)
    assert ok, detail


def test_decompose_twisted_roundtrip():
    rng = random.Random(20240817)
    H = 4
    labels = [(j, m) for j in spins_up_to(HalfInt(3), HalfInt(1)) for m in weights(j)]
    for _ in range(8):
        picks = rng.sample(labels, 3)
        want = {}
        total = WeylElement.zero(H)
        for (j, m) in picks:
            t = rng.randrange(0, 3)
            c = Fraction(rng.randrange(-6, 7), rng.randrange(1, 5))
            if c == 0:
                continue
            coeff = HSeries.h_power(t, H, c)
            want[(j, m)] = want.get((j, m), HSeries.zero(H)) + coeff
            total = total + h_symplecton(j, m, H).scale(coeff)
        want = {k: v for k, v in want.items() if not v.is_zero()}
        got = decompose_twisted(total)
        assert got == want, f"round trip failed for picks {picks}"


def test_product_intermediate_identity():
    for j in (HalfInt(1), HalfInt(2)):
        for jp in (HalfInt(1), HalfInt(2)):
            for m in weights(j):
                for mp in weights(jp):
                    assert product_intermediate_check(j, m, jp, mp, 4), \
                        f"intermediate identity fails at ({j},{m};{jp},{mp})"


def test_product_support():
    ok, detail = product_support_check(HalfInt(2), HalfInt(2), 4)
    assert ok, detail
    ok, detail = product_support_check(HalfInt(1), HalfInt(3), 4)
    assert ok, detail


def test_twisted_sum_collapse():
    ok, detail = twisted_sum_collapse_check(HalfInt(1), HalfInt(1), 4)
    assert ok, detail
    ok, detail = twisted_sum_collapse_check(HalfInt(2), HalfInt(1), 4)
    assert ok, detail


def test_twist_conjugation():
    ok, detail = twist_conjugation_check(HalfInt(2), 5)
    assert ok, detail
    ok, detail = twist_conjugation_check(HalfInt(3), 4)
    assert ok, detail


def test_ratio_table_values():
    table = ratio_table(HalfInt(2), 4)
    half = HalfInt(1)
    one = HalfInt(2)
    assert table[(half, half, HalfInt(0))] == RadicalSum.one(), \
        "spin (1/2,1/2)->0 calibration should be 1"
    assert table[(half, half, one)] == sqrt_fraction(Fraction(1, 2)), \
        "spin (1/2,1/2)->1 calibration should be 1/sqrt(2)"
    for j in (half, one):
        for jp in (half, one):
            lo = HalfInt(abs(j.twice - jp.twice))
            for k in half_range(lo, j + jp):
                assert (j, jp, k) in table, f"missing calibration for ({j},{jp},{k})"


def test_scalar_pairing():
    ok, detail, consts = pairing_check(HalfInt(2), 4)
    assert ok, detail
    assert consts[HalfInt(1)] == RadicalSum.from_rational(Fraction(1, 2)), \
        "spin-1/2 pairing constant should be 1/2"
    assert consts[HalfInt(2)] == RadicalSum.from_rational(Fraction(1, 2)), \
        "spin-1 pairing constant should be 1/2"


def test_weight_one_commutators():
    ok, detail = weight_one_commutator_check(5)
    assert ok, detail


def test_generator_reconstruction_variants():
    got = generator_reconstruction_check(6)
    assert got["j0"], "weight generator reconstruction fails"
    assert got["jminus"], "lowering generator reconstruction fails"
    assert got["dressing_is_exp_sigma"], "dressing factor is not the twist exponential"
    assert got["jplus_inverse_dressing"], \
        "raising generator needs the inverse dressing factor"
    assert not got["jplus_direct_dressing"], \
        "direct dressing unexpectedly works for the raising generator"


def test_generating_functions():
    ok, detail = generating_function_check(HalfInt(2), 4)
    assert ok, detail


def test_product_law_suite_spin_half():
    out = product_law_suite(HalfInt(1), 4)
    for check, (ok, detail) in sorted(out.items()):
        assert ok, f"{check}: {detail}"


def test_product_oracle_classical_limit():
    # a * abar = P(1,0)/sqrt(2) - 1/2 classically; the twisted correction
    # enters only at order h and the scalar piece stays put.
    decomp = product_oracle(HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(-1), 3)
    c_one = decomp[(HalfInt(2), HalfInt(0))]
    c_zero = decomp[(HalfInt(0), HalfInt(0))]
    assert c_one == HSeries.constant(sqrt_fraction(Fraction(1, 2)), 3), \
        "spin-1 part wrong"
    assert c_zero == HSeries.constant(Fraction(-1, 2), 3), \
        "scalar part should stay -1/2"
