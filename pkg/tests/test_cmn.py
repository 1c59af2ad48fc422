"""Twisted-correction coefficients and the twisted mode engine.

The oracle for the coefficient table is an independent series expansion via
sympy (nested Taylor expansions of the closed-form generating function),
computed here and compared against the package's rational-series route.
"""

from fractions import Fraction

import pytest
import sympy

from heisenfock import (FockVector, FreeMonomial, LambdaSequence, Sector,
                        SectorMismatchError, bilinear, cmn_table,
                        delta_z_apply, omega, twisted_mode_apply,
                        twisted_virasoro_mode, virasoro_bracket_check)
from heisenfock.sampling import random_fock, random_lambda

from conftest import lam_of, one, sc, x

HALF = Fraction(1, 2)


def sympy_cmn_oracle(order):
    """Taylor coefficients of -log(((1+z)^(1/2) + (1+w)^(1/2)) / 2)."""
    z, w = sympy.symbols("z w")
    expr = -sympy.log(((1 + z) ** sympy.Rational(1, 2)
                       + (1 + w) ** sympy.Rational(1, 2)) / 2)
    poly_z = sympy.series(expr, z, 0, order + 1).removeO()
    table = {}
    for m in range(order + 1):
        coeff_m = poly_z.coeff(z, m)
        poly_w = sympy.series(coeff_m, w, 0, order + 1).removeO()
        for n in range(order + 1):
            val = sympy.nsimplify(sympy.expand(poly_w).coeff(w, n))
            table[(m, n)] = Fraction(int(sympy.numer(val)), int(sympy.denom(val)))
    return table


class TestCmnTable:
    def test_against_series_oracle(self):
        oracle = sympy_cmn_oracle(6)
        table = cmn_table(6)
        for m in range(7):
            for n in range(7):
                assert table.c(m, n) == oracle[(m, n)], (m, n)

    def test_frozen_values(self):
        table = cmn_table(2)
        assert table.c(0, 0) == 0
        assert table.c(1, 0) == Fraction(-1, 4)
        assert table.c(1, 1) == Fraction(1, 16)

    def test_symmetric(self):
        table = cmn_table(6)
        for m in range(7):
            for n in range(7):
                assert table.c(m, n) == table.c(n, m)

    def test_restriction_consistency(self):
        big = cmn_table(6)
        small = cmn_table(3)
        for m in range(4):
            for n in range(4):
                assert big.c(m, n) == small.c(m, n)


class TestDeltaZ:
    def test_single_oscillator_uncorrected(self):
        u = FreeMonomial(((1, 1),)).to_polynomial(2)
        assert delta_z_apply(u) == {0: u}

    def test_conformal_state_shift(self):
        for rank in (1, 2, 3):
            out = delta_z_apply(omega(rank))
            shift = FockVector.constant(1, rank).scaled_fraction(
                Fraction(rank, 16))
            assert out == {0: omega(rank), 2: shift}

    def test_vacuum_uncorrected(self):
        vac = FockVector.constant(1, 1)
        assert delta_z_apply(vac) == {0: vac}

    def test_order_zero_part_is_the_state(self, rng):
        for _ in range(10):
            u = random_fock(rng, 2, Sector.UNTWISTED, max_degree=4)
            assert delta_z_apply(u)[0] == u

    def test_truncation_at_weight_is_exact(self, rng):
        # any order >= weight(u) gives the same (exact) answer
        for _ in range(10):
            u = random_fock(rng, 2, Sector.UNTWISTED, max_degree=4)
            weight = int(u.degree)
            reference = delta_z_apply(u, order=weight)
            assert delta_z_apply(u) == reference
            assert delta_z_apply(u, order=weight + 3) == reference

    def test_exponential_terminates_with_quartic(self):
        # weight-4 diagonal state needs the squared lowering term:
        # dd x^4 = 12 x^2, so the first-order part is 12 c11 x^2 z^-2 and
        # the second-order part (1/2) * 12 c11 * (dd x^2) c11 = 12 c11^2 z^-4
        u = x(1, 1, 1) * x(1, 1, 1) * x(1, 1, 1) * x(1, 1, 1)
        out = delta_z_apply(u)
        assert set(out) == {0, 2, 4}
        assert out[2] == (x(1, 1, 1) * x(1, 1, 1)).scaled_fraction(
            12 * Fraction(1, 16))
        assert out[4] == FockVector.constant(1, 1).scaled_fraction(
            12 * Fraction(1, 16) ** 2)


class TestTwistedModes:
    def test_constant_shift_enters_l0(self):
        # rank 1: the z^-2 correction contributes exactly 1/16 on the vacuum
        lam = LambdaSequence.zero(1, Sector.TWISTED)
        f = one(1, Sector.TWISTED)
        assert twisted_mode_apply(omega(1), 1, f, lam) == f.scaled_fraction(
            Fraction(1, 16))

    def test_constant_shift_scales_with_rank(self):
        for rank in (2, 3):
            lam = LambdaSequence.zero(rank, Sector.TWISTED)
            f = one(rank, Sector.TWISTED)
            got = twisted_mode_apply(omega(rank), 1, f, lam)
            assert got == f.scaled_fraction(Fraction(rank, 16))

    def test_eigenvalues_on_cyclic_vector(self, rng):
        for _ in range(15):
            lam = random_lambda(rng, 2, Sector.TWISTED, max_r=3)
            r = lam.support_bound
            v = one(2, Sector.TWISTED)
            for j in range(r + 1, 2 * r + 1):
                acc = sc(0)
                for m2 in range(1, 2 * r, 2):
                    n2 = 2 * (j - 1) - m2
                    if 1 <= n2 <= 2 * r - 1:
                        acc = acc + bilinear(lam.entry2(m2), lam.entry2(n2))
                assert twisted_mode_apply(omega(2), j, v, lam) == v.scaled(acc / 2)

    def test_top_eigenvalue(self, rng):
        for _ in range(15):
            lam = random_lambda(rng, 2, Sector.TWISTED, max_r=3)
            r = lam.support_bound
            top = lam.entry2(2 * r - 1)
            got = twisted_mode_apply(omega(2), 2 * r, one(2, Sector.TWISTED), lam)
            assert got == one(2, Sector.TWISTED).scaled(bilinear(top, top) / 2)

    def test_truncation(self, rng):
        for _ in range(10):
            lam = random_lambda(rng, 2, Sector.TWISTED, max_r=3)
            r = lam.support_bound
            for j in range(2 * r + 1, 2 * r + 5):
                assert not twisted_mode_apply(omega(2), j, one(2, Sector.TWISTED), lam)

    def test_twisted_virasoro_brackets(self, rng):
        for _ in range(40):
            lam = random_lambda(rng, 2, Sector.TWISTED, max_r=2)
            f = random_fock(rng, 2, Sector.TWISTED, max_degree=4, max_terms=2)
            m, n = rng.randint(-3, 3), rng.randint(-3, 3)
            assert virasoro_bracket_check(m, n, f, lam)

    def test_untwisted_vector_rejected(self):
        lam = LambdaSequence.zero(1)
        with pytest.raises(SectorMismatchError):
            twisted_mode_apply(omega(1), 1, one(1), lam)

    def test_half_mode_of_single_field(self, rng):
        # a single twisted free field has plain oscillator modes
        from heisenfock import act_mode
        u = FreeMonomial(((1, 1),))
        for _ in range(10):
            lam = random_lambda(rng, 2, Sector.TWISTED)
            f = random_fock(rng, 2, Sector.TWISTED, max_degree=4)
            for k2 in range(-5, 6, 2):
                k = Fraction(k2, 2)
                assert twisted_mode_apply(u, k, f, lam) == act_mode(lam, 1, k, f)
