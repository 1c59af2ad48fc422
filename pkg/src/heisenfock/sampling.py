"""Seeded random generators for the randomized identity suites.

Everything here is driven by a caller-supplied ``random.Random`` so that a
seed fully determines a run, in the CLI relations suite and in the tests
alike.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random
from typing import Optional

from .fock import FockVector, Sector
from .heisenberg import LambdaSequence
from .scalars import Scalar
from .whittaker import bilinear


def random_rational(rng: Random, span: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice((1, 2, 3)))


def random_scalar(rng: Random, span: int = 3, imaginary: bool = True) -> Scalar:
    re = random_rational(rng, span)
    im = random_rational(rng, span) if imaginary and rng.random() < 0.5 else 0
    return Scalar(re, im)


def random_nonzero_scalar(rng: Random, span: int = 3) -> Scalar:
    while True:
        s = random_scalar(rng, span)
        if s:
            return s


def _random_mode2(rng: Random, sector: Sector, budget2: int) -> Optional[int]:
    if sector is Sector.UNTWISTED:
        if budget2 < 2:
            return None
        return 2 * rng.randint(1, budget2 // 2)
    if budget2 < 1:
        return None
    return 2 * rng.randint(0, (budget2 - 1) // 2) + 1


def random_fock(rng: Random, rank: int, sector: Sector,
                max_degree: int = 8, max_terms: int = 4,
                nonzero: bool = True) -> FockVector:
    """Random sparse vector with weight at most ``max_degree``."""
    while True:
        out = FockVector.zero(rank, sector)
        for _ in range(rng.randint(1, max_terms)):
            term = FockVector.constant(random_nonzero_scalar(rng), rank, sector)
            budget2 = 2 * max_degree
            for _ in range(rng.randint(0, 3)):
                d2 = _random_mode2(rng, sector, budget2)
                if d2 is None:
                    break
                term = term.times_variable(rng.randint(1, rank), d2)
                budget2 -= d2
            out = out + term
        if out or not nonzero:
            return out


def random_lambda(rng: Random, rank: int, sector: Sector,
                  max_r: int = 3, proper: bool = True,
                  anisotropic_top: bool = False) -> LambdaSequence:
    """Random finitely supported lambda data.

    ``proper`` forces a nonzero entry at a positive mode index;
    ``anisotropic_top`` additionally re-draws until the top entry pairs to a
    nonzero value with itself (so a Whittaker type exists).
    """
    while True:
        if sector is Sector.UNTWISTED:
            r = rng.randint(1 if proper else 0, max_r)
            count = r + 1
        else:
            r = rng.randint(1, max_r)
            count = r
        entries = []
        for _ in range(count):
            entries.append([random_scalar(rng) if rng.random() < 0.7 else 0
                            for _ in range(rank)])
        while not any(entries[-1]):
            entries[-1] = [random_scalar(rng) for _ in range(rank)]
        lam = LambdaSequence.make(sector, rank, entries)
        if proper and not lam.is_proper:
            continue
        if anisotropic_top:
            top = lam.entry2(lam.top_doubled)
            if not bilinear(top, top):
                continue
        return lam
