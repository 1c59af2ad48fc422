"""Oscillator-mode actions on the polynomial Fock spaces.

The rank-l Heisenberg modes act on a Fock vector f through a finitely
supported sequence of vectors lambda_n in C^l:

* negative modes create:      h_i(-n) f = x[i,n] * f
* nonnegative modes annihilate:  h_i(n) f = (n * d/dx[i,n]) f + (lambda_n)_i * f

The basis h_1..h_l is orthonormal for the standard symmetric form, so every
pairing (lambda_n, h_i) is a plain coordinate lookup.  The central element
acts as the identity throughout (level one); it never appears explicitly.

The quadratic elements h_i(m) h_j(n) - (lambda_m, h_i)(lambda_n, h_j) with
positive m, n act by pure differential operators; ``quadratic_act`` applies
that closed form directly, while the two-step composition is kept as an
independent cross-check (``commutator_check`` and the test suites).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence, Tuple

from .errors import (HighestWeightError, ModeRangeError, SchemaError,
                     SectorMismatchError)
from .fock import (FockVector, Mode, ModeLike, Sector, _accumulate,
                   doubled_mode, weighted_partial)
from .scalars import Scalar, as_scalar

ZERO = as_scalar(0)


@dataclass(frozen=True)
class LambdaSequence:
    """Finitely supported sequence of C^l vectors indexing a Fock action.

    Untwisted entries sit at modes 0, 1, ..., r; twisted entries at
    1/2, 3/2, ..., r - 1/2.  Trailing zero vectors are trimmed on
    construction, so the last stored entry is always nonzero.
    """

    sector: Sector
    rank: int
    entries: Tuple[Tuple[Scalar, ...], ...]

    @classmethod
    def make(cls, sector: Sector, rank: int,
             entries: Sequence[Sequence] = ()) -> "LambdaSequence":
        rows = []
        for entry in entries:
            row = tuple(as_scalar(v) for v in entry)
            if len(row) != rank:
                raise SchemaError(
                    f"lambda entry of length {len(row)} does not match rank {rank}")
            rows.append(row)
        while rows and not any(rows[-1]):
            rows.pop()
        return cls(sector, rank, tuple(rows))

    @classmethod
    def zero(cls, rank: int, sector: Sector = Sector.UNTWISTED) -> "LambdaSequence":
        return cls(sector, rank, ())

    # -- indexing -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @property
    def support_bound(self) -> int:
        """The bound r: top mode is r (untwisted) or r - 1/2 (twisted)."""
        if self.sector is Sector.UNTWISTED:
            return max(0, len(self.entries) - 1)
        return len(self.entries)

    @property
    def top_doubled(self) -> int:
        """Doubled index of the last stored entry; 0 when empty."""
        if not self.entries:
            return 0
        if self.sector is Sector.UNTWISTED:
            return 2 * (len(self.entries) - 1)
        return 2 * len(self.entries) - 1

    @property
    def is_proper(self) -> bool:
        """True when the top nonzero entry has positive mode index."""
        return self.top_doubled > 0

    def _slot(self, d2: int) -> Optional[int]:
        if self.sector is Sector.UNTWISTED:
            if d2 % 2 != 0:
                raise ModeRangeError(f"mode {Fraction(d2,2)} not untwisted")
            idx = d2 // 2
        else:
            if d2 % 2 == 0:
                raise ModeRangeError(f"mode {Fraction(d2,2)} not twisted")
            idx = (d2 - 1) // 2
        return idx if 0 <= idx < len(self.entries) else None

    def entry2(self, d2: int) -> Tuple[Scalar, ...]:
        """The vector lambda_n for doubled mode d2 (zero beyond the support)."""
        slot = self._slot(d2)
        if slot is None:
            return tuple(ZERO for _ in range(self.rank))
        return self.entries[slot]

    def pair2(self, d2: int, i: int) -> Scalar:
        """(lambda_n, h_i) for the doubled mode d2: the i-th coordinate."""
        slot = self._slot(d2)
        if slot is None:
            return ZERO
        return self.entries[slot][i - 1]

    def pair(self, mode: ModeLike, i: int) -> Scalar:
        return self.pair2(doubled_mode(mode, self.sector), i)

    def positive_support2(self) -> Iterator[int]:
        """Doubled indices n > 0 with lambda_n nonzero, ascending."""
        for slot, row in enumerate(self.entries):
            d2 = 2 * slot if self.sector is Sector.UNTWISTED else 2 * slot + 1
            if d2 > 0 and any(row):
                yield d2

    def _check_vector(self, f: FockVector):
        if f.sector is not self.sector:
            raise SectorMismatchError(
                f"{self.sector.value} lambda data cannot act on a "
                f"{f.sector.value} vector")
        if f.rank != self.rank:
            raise SchemaError(
                f"lambda rank {self.rank} does not match vector rank {f.rank}")


# -- mode actions --------------------------------------------------------------

def act_creation(i: int, mode: ModeLike, f: FockVector) -> FockVector:
    """h_i(-n) f = x[i,n] f for positive n."""
    d2 = doubled_mode(mode, f.sector)
    if d2 <= 0:
        raise ModeRangeError(f"creation mode must be positive, got {mode}")
    return f.times_variable(i, d2)


def act_annihilation(lam: LambdaSequence, i: int, mode: ModeLike,
                     f: FockVector) -> FockVector:
    """h_i(n) f = (n d/dx[i,n]) f + (lambda_n, h_i) f for n >= 0 in sector."""
    lam._check_vector(f)
    d2 = doubled_mode(mode, f.sector)
    if d2 < 0:
        raise ModeRangeError(f"annihilation mode must be >= 0, got {mode}")
    if d2 == 0:
        # the weighted derivation 0 * d/dx[i,0] vanishes identically
        return f.scaled(lam.pair2(0, i))
    out = weighted_partial(i, mode, f)
    coeff = lam.pair2(d2, i)
    if coeff:
        out = out + f.scaled(coeff)
    return out


def act_mode(lam: LambdaSequence, i: int, mode: ModeLike,
             f: FockVector) -> FockVector:
    """Dispatch h_i(mode): negative modes create, the rest annihilate."""
    d2 = doubled_mode(mode, f.sector)
    if d2 < 0:
        return act_creation(i, Fraction(-d2, 2), f)
    return act_annihilation(lam, i, Fraction(d2, 2), f)


def act_mode2(lam: LambdaSequence, i: int, d2: int, f: FockVector) -> FockVector:
    """Doubled-integer fast path of ``act_mode`` (no parity re-checks)."""
    if d2 < 0:
        return f.times_variable(i, -d2)
    if d2 == 0:
        return f.scaled(lam.pair2(0, i))
    coeff = lam.pair2(d2, i)
    weight = Fraction(d2, 2)
    acc = {}
    for mono, c in f.terms.items():
        if coeff:
            _accumulate(acc, mono, c * coeff)
        for pos, (bi, bd2, e) in enumerate(mono):
            if bi == i and bd2 == d2:
                if e == 1:
                    reduced = mono[:pos] + mono[pos + 1:]
                else:
                    reduced = mono[:pos] + ((bi, bd2, e - 1),) + mono[pos + 1:]
                _accumulate(acc, reduced, c.scale(weight * e))
                break
    return FockVector(f.rank, f.sector, acc)


def commutator_check(i: int, j: int, m: ModeLike, n: ModeLike,
                     f: FockVector, lam: LambdaSequence) -> bool:
    """Exact check of [h_i(m), h_j(n)] f = m delta(m+n) delta(i,j) f."""
    md2 = doubled_mode(m, f.sector)
    nd2 = doubled_mode(n, f.sector)
    lhs = (act_mode2(lam, i, md2, act_mode2(lam, j, nd2, f))
           - act_mode2(lam, j, nd2, act_mode2(lam, i, md2, f)))
    if md2 + nd2 == 0 and i == j:
        rhs = f.scaled_fraction(Fraction(md2, 2))
    else:
        rhs = FockVector.zero(f.rank, f.sector)
    return lhs == rhs


# -- quadratic elements ----------------------------------------------------------

@dataclass(frozen=True)
class QuadraticElement:
    """h_i(m) h_j(n) - shift, with positive annihilation modes m, n."""

    i: int
    j: int
    m: Mode
    n: Mode
    shift: Scalar

    def __post_init__(self):
        if self.m.sector is not self.n.sector:
            raise SectorMismatchError("quadratic element mixes sectors")

    @property
    def sector(self) -> Sector:
        return self.m.sector

    @classmethod
    def build(cls, lam: LambdaSequence, i: int, j: int,
              m: ModeLike, n: ModeLike) -> "QuadraticElement":
        """Construct with the canonical shift (lambda_m, h_i)(lambda_n, h_j)."""
        mm = Mode.of(m, lam.sector)
        nn = Mode.of(n, lam.sector)
        shift = lam.pair2(mm.doubled, i) * lam.pair2(nn.doubled, j)
        return cls(i, j, mm, nn, shift)


def quadratic_act(lam: LambdaSequence, q: QuadraticElement,
                  f: FockVector) -> FockVector:
    """Apply h_i(m) h_j(n) - (lambda_m,h_i)(lambda_n,h_j) in closed form.

    The closed form is the pure differential operator
    (lambda_m,h_i) d_jn + (lambda_n,h_j) d_im + d_im d_jn
    with d_in the weighted derivation; it agrees exactly with the two-step
    composition minus the canonical shift.
    """
    lam._check_vector(f)
    if q.sector is not f.sector:
        raise SectorMismatchError("quadratic element sector does not match vector")
    m_val = q.m.value
    n_val = q.n.value
    dj = weighted_partial(q.j, n_val, f)
    out = weighted_partial(q.i, m_val, dj)
    cm = lam.pair2(q.m.doubled, q.i)
    if cm:
        out = out + dj.scaled(cm)
    cn = lam.pair2(q.n.doubled, q.j)
    if cn:
        out = out + weighted_partial(q.i, m_val, f).scaled(cn)
    return out


# -- involutions and generators ---------------------------------------------------

def theta_involution(f: FockVector) -> FockVector:
    """Negate every generator: each monomial picks up (-1)^(variable count).

    On the untwisted vacuum space this is the order-two graph automorphism;
    on a twisted space it is the corresponding negation involution.  Either
    way it is an exact algebra involution.
    """
    terms = {}
    for mono, c in f.terms.items():
        k = sum(e for _, _, e in mono)
        terms[mono] = -c if k % 2 else c
    return FockVector(f.rank, f.sector, terms)


def j_generator(a: int, rank: int) -> FockVector:
    """The degree-four invariant x[a,1]^4 - 2 x[a,3] x[a,1] + (3/2) x[a,2]^2."""
    x1 = FockVector.variable(a, 1, rank)
    x2 = FockVector.variable(a, 2, rank)
    x3 = FockVector.variable(a, 3, rank)
    return x1 * x1 * x1 * x1 - 2 * (x3 * x1) + Fraction(3, 2) * (x2 * x2)


def require_positive_support(lam: LambdaSequence) -> None:
    """Raise unless some positive-index entry is nonzero."""
    if next(lam.positive_support2(), None) is None:
        raise HighestWeightError(
            "all positive-index lambda entries vanish (highest-weight data)")
