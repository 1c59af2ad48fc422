from fractions import Fraction
from random import Random

import pytest

from heisenfock import FockVector, LambdaSequence, Scalar, Sector


@pytest.fixture
def rng():
    return Random(20260810)


def sc(re, im=0):
    return Scalar(Fraction(re), Fraction(im))


def x(i, mode, rank, sector=Sector.UNTWISTED):
    return FockVector.variable(i, Fraction(mode), rank, sector)


def one(rank, sector=Sector.UNTWISTED):
    return FockVector.constant(1, rank, sector)


def lam_of(sector, rank, *rows):
    return LambdaSequence.make(sector, rank, [list(r) for r in rows])
