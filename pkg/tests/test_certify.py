from dataclasses import replace
from fractions import Fraction

import pytest

from heisenfock import (FockVector, HighestWeightError, LambdaSequence,
                        QuadraticElement, Scalar, Sector, certify_cyclic,
                        quadratic_act, reduce_step, verify_certificate,
                        weighted_partial)
from heisenfock.certify import ReductionCertificate
from heisenfock.errors import PreconditionError
from heisenfock.sampling import random_fock, random_lambda

from conftest import lam_of, one, sc, x

HALF = Fraction(1, 2)


class TestReduceStep:
    def test_diagonal_case(self):
        lam = lam_of(Sector.UNTWISTED, 1, [0], [1])
        step, b = reduce_step(lam, x(1, 1, 1))
        assert step.case == "3a"
        assert (step.element.i, step.element.j) == (1, 1)
        assert (step.element.m.value, step.element.n.value) == (1, 1)
        assert b == 2 * one(1)

    def test_off_diagonal_case(self):
        lam = lam_of(Sector.UNTWISTED, 2, [0, 0], [0, 1])
        step, b = reduce_step(lam, x(1, 1, 2))
        assert step.case == "3b"
        assert (step.element.i, step.element.j) == (1, 2)
        assert b == one(2)

    def test_low_mode_case(self):
        lam = lam_of(Sector.UNTWISTED, 1, [0], [1], [0])
        step, b = reduce_step(lam, x(1, 2, 1))
        assert step.case == "2"
        assert (step.element.m.value, step.element.n.value) == (2, 1)
        assert b == 2 * one(1)

    def test_high_mode_case(self):
        lam = lam_of(Sector.UNTWISTED, 1, [0], [0], [1])
        step, b = reduce_step(lam, x(1, 1, 1))
        assert step.case == "1"
        assert (step.element.m.value, step.element.n.value) == (1, 2)
        assert b

    def test_degree_strictly_decreases(self, rng):
        for sector in (Sector.UNTWISTED, Sector.TWISTED):
            for _ in range(30):
                lam = random_lambda(rng, 2, sector)
                a = random_fock(rng, 2, sector, max_degree=8)
                if a.degree <= 0:
                    continue
                step, b = reduce_step(lam, a)
                assert b
                assert step.degree_after < step.degree_before == a.degree
                assert b.degree == step.degree_after

    def test_highest_weight_rejected(self):
        lam = lam_of(Sector.UNTWISTED, 1, [5])
        with pytest.raises(HighestWeightError):
            reduce_step(lam, x(1, 1, 1))

    def test_constant_rejected(self):
        lam = lam_of(Sector.UNTWISTED, 1, [0], [1])
        with pytest.raises(PreconditionError):
            reduce_step(lam, one(1))


class TestCertify:
    def test_constant_input(self):
        lam = lam_of(Sector.UNTWISTED, 1, [0], [1])
        cert = certify_cyclic(lam, FockVector.constant(5, 1))
        assert cert.steps == ()
        assert cert.terminal == sc(5)
        assert verify_certificate(lam, FockVector.constant(5, 1), cert)

    def test_single_step(self):
        lam = lam_of(Sector.UNTWISTED, 1, [0], [1])
        cert = certify_cyclic(lam, x(1, 1, 1))
        assert len(cert.steps) == 1
        assert cert.terminal == sc(2)

    def test_zero_rejected(self):
        lam = lam_of(Sector.UNTWISTED, 1, [0], [1])
        with pytest.raises(PreconditionError):
            certify_cyclic(lam, FockVector.zero(1))

    def test_randomized_replay(self, rng):
        for sector in (Sector.UNTWISTED, Sector.TWISTED):
            for _ in range(40):
                lam = random_lambda(rng, 2, sector)
                a = random_fock(rng, 2, sector, max_degree=10, max_terms=5)
                cert = certify_cyclic(lam, a)
                assert cert.terminal
                assert verify_certificate(lam, a, cert)
                degrees = [s.degree_before for s in cert.steps]
                assert degrees == sorted(degrees, reverse=True)

    def test_termination_bound(self, rng):
        for sector, min_mode in ((Sector.UNTWISTED, 1), (Sector.TWISTED, HALF)):
            for _ in range(20):
                lam = random_lambda(rng, 2, sector)
                a = random_fock(rng, 2, sector, max_degree=10)
                if a.degree <= 0:
                    continue
                cert = certify_cyclic(lam, a)
                assert len(cert.steps) <= 2 * a.degree / min_mode

    def test_case2_term_vanishes(self, rng):
        # whenever the low-mode case fires, the dropped derivative term is 0
        seen = 0
        for _ in range(200):
            lam = random_lambda(rng, 2, Sector.UNTWISTED, max_r=1)
            a = random_fock(rng, 2, Sector.UNTWISTED, max_degree=8)
            if a.degree <= 0:
                continue
            cert = certify_cyclic(lam, a)
            current = a
            for step in cert.steps:
                if step.case == "2":
                    q = step.element
                    assert not weighted_partial(q.j, q.n.value, current)
                    seen += 1
                current = quadratic_act(lam, step.element, current)
        assert seen > 0

    def test_isotropic_entries_supported(self):
        # a nonzero top entry pairing to zero with itself still reduces
        lam = lam_of(Sector.UNTWISTED, 2, [0, 0], [sc(1), sc(0, 1)])
        a = x(1, 1, 2) * x(2, 1, 2) + x(1, 2, 2)
        cert = certify_cyclic(lam, a)
        assert cert.terminal
        assert verify_certificate(lam, a, cert)


class TestVerification:
    def _cert(self):
        lam = lam_of(Sector.UNTWISTED, 1, [0], [1])
        a = x(1, 1, 1) * x(1, 1, 1) + x(1, 2, 1)
        return lam, a, certify_cyclic(lam, a)

    def test_round_trip(self):
        lam, a, cert = self._cert()
        assert verify_certificate(lam, a, cert)

    def test_tampered_shift_fails(self):
        lam, a, cert = self._cert()
        step = cert.steps[0]
        bad_q = QuadraticElement(step.element.i, step.element.j,
                                 step.element.m, step.element.n,
                                 step.element.shift + 1)
        bad = ReductionCertificate(
            cert.initial,
            (replace(step, element=bad_q),) + cert.steps[1:],
            cert.terminal)
        assert not verify_certificate(lam, a, bad)

    def test_tampered_terminal_fails(self):
        lam, a, cert = self._cert()
        bad = ReductionCertificate(cert.initial, cert.steps, cert.terminal + 1)
        assert not verify_certificate(lam, a, bad)

    def test_wrong_vector_fails(self):
        lam, a, cert = self._cert()
        other = x(1, 1, 1) * x(1, 1, 1) * 3 + x(1, 2, 1)
        assert not verify_certificate(lam, other, cert)

    def test_degree_ledger_checked(self):
        lam, a, cert = self._cert()
        step = cert.steps[0]
        bad = ReductionCertificate(
            cert.initial,
            (replace(step, degree_after=step.degree_after + 1),) + cert.steps[1:],
            cert.terminal)
        assert not verify_certificate(lam, a, bad)
