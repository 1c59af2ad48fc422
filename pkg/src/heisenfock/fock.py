"""Sparse exact polynomials in the mode variables x[i,n].

A Fock vector is a finite linear combination of monomials in variables
``x[i,n]``, where ``i`` is a boson index in ``1..rank`` and ``n`` a positive
mode: a positive integer in the untwisted sector, a positive half-odd
integer in the twisted sector.  Monomials are graded by weight, with
``deg x[i,n] = n``; the zero vector has degree -inf.

All mode bookkeeping is done on *doubled* integers (``2n``) so that both
sectors share exact integer arithmetic: untwisted modes have even doubled
values, twisted modes odd ones.

Values are immutable after construction; every operation returns a new
vector, so sharing across threads is safe.

    >>> f = FockVector.variable(1, 1, rank=2)
    >>> g = f * f + 3 * FockVector.variable(2, 2, rank=2)
    >>> g.degree
    Fraction(2, 1)
    >>> weighted_partial(1, 1, g) == 2 * f
    True
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

from .errors import BosonIndexError, ModeRangeError, SectorMismatchError
from .scalars import Scalar, as_scalar

# A monomial maps each variable to its exponent, stored as a sorted tuple of
# (boson index, doubled mode, exponent) triples.  The empty tuple is the
# constant monomial 1.
Monomial = Tuple[Tuple[int, int, int], ...]

ModeLike = Union[int, Fraction]

NEG_INFINITY = float("-inf")


class Sector(str, Enum):
    UNTWISTED = "untwisted"
    TWISTED = "twisted"


def doubled_mode(mode: ModeLike, sector: Sector) -> int:
    """Convert a mode in (1/2)Z to its doubled integer, checking parity."""
    if isinstance(mode, int):
        d2 = 2 * mode
    else:
        doubled = 2 * Fraction(mode)
        if doubled.denominator != 1:
            raise ModeRangeError(f"mode {mode} is not in (1/2)Z")
        d2 = int(doubled)
    if sector is Sector.UNTWISTED:
        if d2 % 2 != 0:
            raise ModeRangeError(f"mode {mode} is not an integer (untwisted)")
    else:
        if d2 % 2 == 0:
            raise ModeRangeError(f"mode {mode} is not half-odd (twisted)")
    return d2


def mode_value(d2: int) -> Fraction:
    return Fraction(d2, 2)


def mode_text(d2: int) -> str:
    """Mode as an integer or ``k/2`` string."""
    return str(Fraction(d2, 2))


@dataclass(frozen=True)
class Mode:
    """A positive mode index together with its sector."""

    doubled: int
    sector: Sector

    def __post_init__(self):
        if self.doubled <= 0:
            raise ModeRangeError(f"mode must be positive, got {self.value}")
        if self.sector is Sector.UNTWISTED and self.doubled % 2 != 0:
            raise ModeRangeError("untwisted mode must be an integer")
        if self.sector is Sector.TWISTED and self.doubled % 2 == 0:
            raise ModeRangeError("twisted mode must be half-odd")

    @classmethod
    def of(cls, mode: ModeLike, sector: Sector) -> "Mode":
        return cls(doubled_mode(mode, sector), sector)

    @property
    def value(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __str__(self) -> str:
        return mode_text(self.doubled)


def monomial_degree2(mono: Monomial) -> int:
    return sum(d2 * e for _, d2, e in mono)


def monomial_key(mono: Monomial):
    """Graded-lexicographic sort key: degree, then boson index, then mode."""
    flat = tuple((i, d2) for i, d2, e in mono for _ in range(e))
    return (monomial_degree2(mono), flat)


class FockVector:
    """Finite exact linear combination of x[i,n] monomials of one sector."""

    __slots__ = ("rank", "sector", "terms")

    def __init__(self, rank: int, sector: Sector, terms: Dict[Monomial, Scalar]):
        if rank < 1:
            raise BosonIndexError(f"rank must be >= 1, got {rank}")
        self.rank = rank
        self.sector = sector
        self.terms = terms  # never mutated after construction

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, rank: int, sector: Sector = Sector.UNTWISTED) -> "FockVector":
        return cls(rank, sector, {})

    @classmethod
    def constant(cls, value, rank: int,
                 sector: Sector = Sector.UNTWISTED) -> "FockVector":
        c = as_scalar(value)
        return cls(rank, sector, {(): c} if c else {})

    @classmethod
    def variable(cls, i: int, mode: ModeLike, rank: int,
                 sector: Sector = Sector.UNTWISTED) -> "FockVector":
        """The single variable x[i, mode]."""
        d2 = doubled_mode(mode, sector)
        if d2 <= 0:
            raise ModeRangeError(f"variable mode must be positive, got {mode}")
        _check_boson(i, rank)
        return cls(rank, sector, {((i, d2, 1),): as_scalar(1)})

    @classmethod
    def from_terms(cls, rank: int, sector: Sector,
                   terms: Iterable[Tuple[Monomial, Scalar]]) -> "FockVector":
        acc: Dict[Monomial, Scalar] = {}
        for mono, c in terms:
            _accumulate(acc, mono, c)
        return cls(rank, sector, acc)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other) -> "FockVector":
        if not isinstance(other, FockVector):
            return NotImplemented
        self._check_compatible(other)
        acc = dict(self.terms)
        for mono, c in other.terms.items():
            _accumulate(acc, mono, c)
        return FockVector(self.rank, self.sector, acc)

    def __sub__(self, other) -> "FockVector":
        if not isinstance(other, FockVector):
            return NotImplemented
        self._check_compatible(other)
        acc = dict(self.terms)
        for mono, c in other.terms.items():
            _accumulate(acc, mono, -c)
        return FockVector(self.rank, self.sector, acc)

    def __neg__(self) -> "FockVector":
        return FockVector(self.rank, self.sector,
                          {m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "FockVector":
        if isinstance(other, FockVector):
            self._check_compatible(other)
            acc: Dict[Monomial, Scalar] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    _accumulate(acc, _merge_monomials(m1, m2), c1 * c2)
            return FockVector(self.rank, self.sector, acc)
        return self.scaled(other)

    def __rmul__(self, other) -> "FockVector":
        return self.scaled(other)

    def scaled(self, value) -> "FockVector":
        c = as_scalar(value)
        if not c:
            return FockVector.zero(self.rank, self.sector)
        return FockVector(self.rank, self.sector,
                          {m: v * c for m, v in self.terms.items()})

    def scaled_fraction(self, q: Fraction) -> "FockVector":
        if not q:
            return FockVector.zero(self.rank, self.sector)
        return FockVector(self.rank, self.sector,
                          {m: Scalar(v.re * q, v.im * q)
                           for m, v in self.terms.items()})

    def times_variable(self, i: int, d2: int) -> "FockVector":
        """Multiply by x[i, d2/2]; fast path used by creation operators."""
        _check_boson(i, self.rank)
        return FockVector(self.rank, self.sector,
                          {_insert_variable(m, i, d2): c
                           for m, c in self.terms.items()})

    # -- structure -------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return (self.rank == other.rank and self.sector == other.sector
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.rank, self.sector, frozenset(self.terms.items())))

    @property
    def degree2(self) -> Union[int, float]:
        """Doubled degree, or -inf for the zero vector."""
        if not self.terms:
            return NEG_INFINITY
        return max(monomial_degree2(m) for m in self.terms)

    @property
    def degree(self) -> Union[Fraction, float]:
        d2 = self.degree2
        return d2 if d2 == NEG_INFINITY else Fraction(d2, 2)

    @property
    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_coefficient(self) -> Scalar:
        return self.terms.get((), as_scalar(0))

    def max_mode2(self) -> int:
        """Largest doubled mode of any variable present (0 if constant/zero)."""
        best = 0
        for mono in self.terms:
            for _, d2, _ in mono:
                if d2 > best:
                    best = d2
        return best

    def min_mode2(self) -> int:
        """Smallest doubled mode present, or 0 when no variables occur."""
        best = 0
        for mono in self.terms:
            for _, d2, _ in mono:
                if best == 0 or d2 < best:
                    best = d2
        return best

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero vector has no leading monomial")
        return max(self.terms, key=monomial_key)

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order (leading first)."""
        return sorted(self.terms.items(), key=lambda kv: monomial_key(kv[0]),
                      reverse=True)

    def _check_compatible(self, other: "FockVector"):
        if self.sector is not other.sector:
            raise SectorMismatchError(
                f"cannot combine {self.sector.value} and {other.sector.value} vectors")
        if self.rank != other.rank:
            raise BosonIndexError(
                f"cannot combine vectors of rank {self.rank} and {other.rank}")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            cs = str(c)
            if any(ch in cs[1:] for ch in "+-") or "i" in cs:
                cs = f"({cs})"
            parts.append(cs if mono == () else f"{cs}*{monomial_text(mono)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<FockVector {self}>"


def monomial_text(mono: Monomial) -> str:
    """Canonical text form: ``x[i,n]^e`` factors joined by ``*``; ``1`` if empty."""
    if not mono:
        return "1"
    parts = []
    for i, d2, e in mono:
        base = f"x[{i},{mode_text(d2)}]"
        parts.append(base if e == 1 else f"{base}^{e}")
    return "*".join(parts)


def _check_boson(i: int, rank: int):
    if not 1 <= i <= rank:
        raise BosonIndexError(f"boson index {i} outside 1..{rank}")


def _accumulate(acc: Dict[Monomial, Scalar], mono: Monomial, c: Scalar):
    prev = acc.get(mono)
    if prev is None:
        if c:
            acc[mono] = c
        return
    s = prev + c
    if s:
        acc[mono] = s
    else:
        del acc[mono]


def _merge_monomials(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps: Dict[Tuple[int, int], int] = {}
    for i, d2, e in m1:
        exps[(i, d2)] = e
    for i, d2, e in m2:
        exps[(i, d2)] = exps.get((i, d2), 0) + e
    return tuple((i, d2, e) for (i, d2), e in sorted(exps.items()))


def _insert_variable(mono: Monomial, i: int, d2: int) -> Monomial:
    key = (i, d2)
    for pos, (bi, bd2, e) in enumerate(mono):
        if (bi, bd2) == key:
            return mono[:pos] + ((bi, bd2, e + 1),) + mono[pos + 1:]
        if (bi, bd2) > key:
            return mono[:pos] + ((i, d2, 1),) + mono[pos:]
    return mono + ((i, d2, 1),)


def weighted_partial(i: int, mode: ModeLike, f: FockVector) -> FockVector:
    """Apply the weighted derivation n * d/dx[i,n] with n = mode.

    Every surviving term drops in degree by exactly n.
    """
    d2 = doubled_mode(mode, f.sector)
    if d2 <= 0:
        raise ModeRangeError(f"derivation mode must be positive, got {mode}")
    _check_boson(i, f.rank)
    weight = Fraction(d2, 2)
    acc: Dict[Monomial, Scalar] = {}
    for mono, c in f.terms.items():
        for pos, (bi, bd2, e) in enumerate(mono):
            if bi == i and bd2 == d2:
                if e == 1:
                    reduced = mono[:pos] + mono[pos + 1:]
                else:
                    reduced = mono[:pos] + ((bi, bd2, e - 1),) + mono[pos + 1:]
                _accumulate(acc, reduced, c.scale(weight * e))
                break
    return FockVector(f.rank, f.sector, acc)


def degree(f: FockVector) -> Union[Fraction, float]:
    """Weight of the leading block; -inf for the zero vector."""
    return f.degree
