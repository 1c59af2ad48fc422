"""Vertex-operator modes on the polynomial Fock spaces.

A state of the free-boson algebra is a polynomial in the untwisted vacuum
variables (``FreeMonomial`` lists its creation factors).  Its field is the
normal-ordered product of derivative fields; the ``k``-th mode of that field
applied to a concrete Fock vector is a *finite* sum of ordinary oscillator
monomials, because annihilation modes beyond the vector's weight (and beyond
the lambda support) act by zero and creation modes are then capped by the
output weight.  ``mode_apply`` performs exactly that finite expansion.

On twisted vectors the field first acquires the lowering correction

    exp( sum_i sum_{m,n} c[m,n] h_i(m) h_i(n) z^(-m-n) )

whose rational coefficients come from the generating function
-log(((1+z)^(1/2) + (1+w)^(1/2))/2); ``cmn_table`` computes them exactly by
truncated bivariate series arithmetic and ``delta_z_apply`` applies the
(terminating) exponential.  ``twisted_mode_apply`` then reads the requested
mode off the shifted Laurent expansion.

All Virasoro operators are modes of the quadratic state
omega = (1/2) sum_i x[i,1]^2, so both sectors run through the same engine.

Everything here is a pure function of immutable values; the only shared
state is the memoized coefficient table (and the omega state), both
immutable once built, so concurrent use is safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, List, Tuple, Union

from ._linalg import determinant
from .errors import ModeRangeError, PreconditionError, SectorMismatchError
from .fock import FockVector, ModeLike, Monomial, Sector, _accumulate
from .heisenberg import LambdaSequence, act_mode2
from .scalars import Scalar

__all__ = [
    "FreeMonomial", "CmnTable", "omega", "mode_apply", "twisted_mode_apply",
    "virasoro_mode", "twisted_virasoro_mode", "virasoro_bracket_check",
    "cmn_table", "delta_z_apply", "binom_mode_identity_check",
    "binom_transfer_matrix", "determinant",
]


def _gbinom(top: Union[int, Fraction], k: int) -> Fraction:
    """Generalized binomial coefficient (top choose k) for k >= 0."""
    if k < 0:
        raise ValueError("lower index must be nonnegative")
    num = Fraction(1)
    for s in range(k):
        num *= top - s
    return num / factorial(k)


@dataclass(frozen=True)
class FreeMonomial:
    """Creation-factor list (a_1, n_1)...(a_r, n_r) applied to the vacuum."""

    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        for a, n in self.factors:
            if n < 1 or int(n) != n:
                raise ModeRangeError(f"creation weight must be a positive integer, got {n}")
            if a < 1:
                raise PreconditionError(f"bad boson index {a}")

    @property
    def weight(self) -> int:
        return sum(n for _, n in self.factors)

    def to_polynomial(self, rank: int) -> FockVector:
        out = FockVector.constant(1, rank)
        for a, n in self.factors:
            out = out.times_variable(a, 2 * n)
        return out

    def __str__(self) -> str:
        if not self.factors:
            return "|0>"
        return "".join(f"h[{a}](-{n})" for a, n in self.factors) + "|0>"


StateLike = Union[FockVector, FreeMonomial]


def _as_state(u: StateLike, rank: int) -> FockVector:
    if isinstance(u, FreeMonomial):
        return u.to_polynomial(rank)
    if not isinstance(u, FockVector):
        raise TypeError(f"cannot interpret {u!r} as a free-boson state")
    if u.sector is not Sector.UNTWISTED:
        raise SectorMismatchError("free-boson states live in the untwisted sector")
    if u.rank != rank:
        raise PreconditionError(f"state rank {u.rank} does not match {rank}")
    return u


@lru_cache(maxsize=None)
def omega(rank: int) -> FockVector:
    """The conformal state (1/2) sum_i x[i,1]^2."""
    acc = FockVector.zero(rank)
    for i in range(1, rank + 1):
        xi = FockVector.variable(i, 1, rank)
        acc = acc + (xi * xi).scaled_fraction(Fraction(1, 2))
    return acc


def _doubled_target(k: ModeLike) -> int:
    if isinstance(k, int):
        return 2 * k
    k2 = 2 * Fraction(k)
    if k2.denominator != 1:
        raise ModeRangeError(f"mode {k} is not in (1/2)Z")
    return int(k2)


def _monomial_factors(mono: Monomial) -> List[Tuple[int, int]]:
    out = []
    for i, d2, e in mono:
        out.extend([(i, d2 // 2)] * e)
    return out


# -- the normal-ordered derivative-field engine --------------------------------

def _y0_apply(state: FockVector, k: ModeLike, f: FockVector,
              lam: LambdaSequence) -> FockVector:
    """Coefficient of z^(-k-1) in the normal-ordered field of ``state`` on f."""
    acc: Dict[Monomial, Scalar] = {}
    if f.terms:
        k2 = _doubled_target(k)
        twisted = f.sector is Sector.TWISTED
        cap2 = max(f.max_mode2(), lam.top_doubled, 0)
        if twisted and cap2 % 2 == 0:
            cap2 -= 1  # no mode 0 in the twisted sector; may leave no annihilators
        for mono, coeff in state.terms.items():
            _field_mode_on(coeff, _monomial_factors(mono), k2, f, lam,
                           cap2, twisted, acc)
    return FockVector(f.rank, f.sector, acc)


def _field_mode_on(coeff: Scalar, factors: List[Tuple[int, int]], k2: int,
                   f: FockVector, lam: LambdaSequence, cap2: int,
                   twisted: bool, acc: Dict[Monomial, Scalar]) -> None:
    r = len(factors)
    # total doubled oscillator mode forced by the z-power bookkeeping
    target2 = k2 + 2 - 2 * sum(n for _, n in factors)
    if r == 0:
        # the vacuum state's field is the identity
        if target2 == 0:
            for mono, c in f.terms.items():
                _accumulate(acc, mono, c * coeff)
        return
    lo2 = target2 - (r - 1) * cap2
    want = 1 if twisted else 0
    if lo2 % 2 != want:
        lo2 += 1
    if lo2 > cap2:
        return
    choices = range(lo2, cap2 + 1, 2)
    for prefix in itertools.product(choices, repeat=r - 1):
        last = target2 - sum(prefix)
        if last < lo2 or last > cap2:
            continue
        modes2 = prefix + (last,)
        weight = Fraction(1)
        for (_, n), d2 in zip(factors, modes2):
            if n > 1:
                weight *= _gbinom(Fraction(-d2 - 2, 2), n - 1)
                if not weight:
                    break
        if not weight:
            continue
        # annihilators act first (normal ordering), then the creators
        g = f
        for (a, _), d2 in zip(factors, modes2):
            if d2 >= 0:
                g = act_mode2(lam, a, d2, g)
                if not g:
                    break
        if not g:
            continue
        for (a, _), d2 in zip(factors, modes2):
            if d2 < 0:
                g = g.times_variable(a, -d2)
        scale = coeff * weight
        for mono, c in g.terms.items():
            _accumulate(acc, mono, c * scale)


def mode_apply(u: StateLike, k: ModeLike, f: FockVector,
               lam: LambdaSequence) -> FockVector:
    """The k-th mode of the state u acting on the untwisted vector f."""
    if lam.sector is not Sector.UNTWISTED:
        raise SectorMismatchError("twisted data passed; use twisted_mode_apply")
    lam._check_vector(f)
    return _y0_apply(_as_state(u, f.rank), k, f, lam)


def twisted_mode_apply(u: StateLike, k: ModeLike, f: FockVector,
                       lam: LambdaSequence) -> FockVector:
    """The k-th twisted mode of u on f, including the exp(Delta_z) correction."""
    if lam.sector is not Sector.TWISTED:
        raise SectorMismatchError("untwisted data passed; use mode_apply")
    lam._check_vector(f)
    state = _as_state(u, f.rank)
    acc = FockVector.zero(f.rank, f.sector)
    for j, v in delta_z_apply(state).items():
        part = _y0_apply(v, k - j, f, lam)
        if part:
            acc = acc + part
    return acc


# -- Virasoro operators -----------------------------------------------------------

def virasoro_mode(n: int, f: FockVector, lam: LambdaSequence) -> FockVector:
    """L_n on an untwisted vector: the (n+1)-st mode of omega."""
    return mode_apply(omega(f.rank), n + 1, f, lam)


def twisted_virasoro_mode(n: int, f: FockVector, lam: LambdaSequence) -> FockVector:
    """L_n on a twisted vector; the rank/16 shift enters through Delta_z."""
    return twisted_mode_apply(omega(f.rank), n + 1, f, lam)


def virasoro_bracket_check(m: int, n: int, f: FockVector, lam: LambdaSequence,
                           limit: int = 6) -> bool:
    """Exact check of [L_m, L_n] = (m-n) L_{m+n} + (m^3-m)/12 delta(m+n) * rank.

    The central charge equals the rank in both sectors.
    """
    if max(abs(m), abs(n)) > limit:
        raise PreconditionError(f"|modes| > configured limit {limit}")
    ell = (virasoro_mode if lam.sector is Sector.UNTWISTED
           else twisted_virasoro_mode)
    lhs = ell(m, ell(n, f, lam), lam) - ell(n, ell(m, f, lam), lam)
    rhs = ell(m + n, f, lam).scaled(m - n)
    if m + n == 0:
        rhs = rhs + f.scaled_fraction(Fraction(m ** 3 - m, 12) * f.rank)
    return lhs == rhs


# -- the twisted correction -------------------------------------------------------

@dataclass(frozen=True)
class CmnTable:
    """Exact rational coefficients c[m,n] of the twisted lowering operator."""

    order: int
    values: Tuple[Tuple[Fraction, ...], ...]

    def c(self, m: int, n: int) -> Fraction:
        return self.values[m][n]


@lru_cache(maxsize=None)
def cmn_table(order: int) -> CmnTable:
    """Table of c[m,n] for 0 <= m,n <= order.

    Computed by rectangle-truncated bivariate series arithmetic over the
    rationals: binomial series for the square roots, then the logarithm
    series; both terminate at this truncation.
    """
    if order < 0:
        raise PreconditionError("order must be >= 0")
    # u(z,w) = ((1+z)^(1/2) + (1+w)^(1/2))/2 - 1 has no constant term
    u: Dict[Tuple[int, int], Fraction] = {}
    for a in range(1, order + 1):
        half = _gbinom(Fraction(1, 2), a) / 2
        u[(a, 0)] = half
        u[(0, a)] = half
    acc: Dict[Tuple[int, int], Fraction] = {}
    power: Dict[Tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
    for k in range(1, 2 * order + 1):
        power = _series_mul(power, u, order)
        if not power:
            break
        factor = Fraction(-1 if k % 2 else 1, k)
        for key, v in power.items():
            acc[key] = acc.get(key, Fraction(0)) + factor * v
    values = tuple(tuple(acc.get((m, n), Fraction(0)) for n in range(order + 1))
                   for m in range(order + 1))
    return CmnTable(order, values)


def _series_mul(p: Dict[Tuple[int, int], Fraction],
                q: Dict[Tuple[int, int], Fraction],
                order: int) -> Dict[Tuple[int, int], Fraction]:
    out: Dict[Tuple[int, int], Fraction] = {}
    for (a1, b1), v1 in p.items():
        for (a2, b2), v2 in q.items():
            a, b = a1 + a2, b1 + b2
            if a > order or b > order:
                continue
            key = (a, b)
            s = out.get(key, Fraction(0)) + v1 * v2
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    return out


def delta_z_apply(u: StateLike, order: int = None, rank: int = None) -> Dict[int, FockVector]:
    """exp(Delta_z) u as a map {j: coefficient of z^(-j)}.

    Each application of the quadratic lowering operator strictly reduces the
    weight (by m+n >= 2), so the exponential terminates; the default
    truncation order weight(u) is provably exact.
    """
    if isinstance(u, FreeMonomial):
        if rank is None:
            rank = max((a for a, _ in u.factors), default=1)
        u = u.to_polynomial(rank)
    state = _as_state(u, u.rank)
    result: Dict[int, FockVector] = {0: state}
    if not state:
        return result
    weight = state.degree2 // 2
    if order is None:
        order = weight
    table = cmn_table(order)
    from .fock import weighted_partial  # local import to avoid cycle noise
    term: Dict[int, FockVector] = {0: state}
    k = 0
    while term:
        k += 1
        nxt: Dict[int, FockVector] = {}
        for j, v in term.items():
            for i in range(1, state.rank + 1):
                for n in range(1, order + 1):
                    dn = weighted_partial(i, n, v)
                    if not dn:
                        continue
                    for m in range(1, order + 1):
                        c = table.c(m, n)
                        if not c:
                            continue
                        dd = weighted_partial(i, m, dn)
                        if not dd:
                            continue
                        key = j + m + n
                        add = dd.scaled_fraction(c)
                        nxt[key] = nxt.get(key, FockVector.zero(state.rank)) + add
        term = {}
        for j, v in nxt.items():
            v = v.scaled_fraction(Fraction(1, k))
            if v:
                term[j] = v
                result[j] = result.get(j, FockVector.zero(state.rank)) + v
    return {j: v for j, v in result.items() if v or j == 0}


# -- quadratic-state transfer identity ----------------------------------------------

def binom_mode_identity_check(a: int, b: int, p: int, q: int, n: int,
                              u: FockVector, lam: LambdaSequence,
                              ann_bound: int) -> bool:
    """Check the quadratic-state mode against its normal-ordered expansion.

    Both sides act on ``u``; ``ann_bound`` must satisfy h(i) u = 0 for every
    mode i > ann_bound (no variable above it, no lambda entry above it).
    The right-hand side sums n.o. quadratics over i + j = 2*ann_bound - n + p + q
    with binomial weights; agreement is exact.
    """
    if lam.sector is not Sector.UNTWISTED or u.sector is not Sector.UNTWISTED:
        raise SectorMismatchError("the transfer identity is an untwisted check")
    if p < 0 or q < 0:
        raise PreconditionError("derivative orders p, q must be >= 0")
    if u.max_mode2() > 2 * ann_bound or lam.top_doubled > 2 * ann_bound:
        raise PreconditionError(
            f"annihilation bound {ann_bound} is invalid for this vector/lambda")
    state = (FockVector.variable(a, p + 1, u.rank)
             .times_variable(b, 2 * (q + 1)))
    lhs = mode_apply(state, n + 1, u, lam)
    total = 2 * ann_bound - n + p + q
    rhs = FockVector.zero(u.rank)
    for i in range(0, total + 1):
        j = total - i
        w = _gbinom(i - ann_bound - 1, p) * _gbinom(j - ann_bound - 1, q)
        if not w:
            continue
        g = u
        for idx, mode in ((a, ann_bound - i), (b, ann_bound - j)):
            if mode >= 0:
                g = act_mode2(lam, idx, 2 * mode, g)
                if not g:
                    break
        if not g:
            continue
        for idx, mode in ((a, ann_bound - i), (b, ann_bound - j)):
            if mode < 0:
                g = g.times_variable(idx, -2 * mode)
        rhs = rhs + g.scaled_fraction(w)
    return lhs == rhs


def binom_transfer_matrix(ann_bound: int, size: int) -> List[List[Fraction]]:
    """Binomial-weight matrix tying quadratic-state modes to n.o. quadratics.

    Entry (p, i) is binom(i - ann_bound - 1, p) for p, i = 0..size-1: the
    weights the p-th derivative field places on the normal-ordered
    quadratics along one mode diagonal.  Row p is a degree-p polynomial in
    the column abscissa, so the matrix is nonsingular for every bound; its
    invertibility is what lets each normal-ordered quadratic be recovered
    from quadratic-state modes.
    """
    if size < 1:
        raise PreconditionError("size must be >= 1")
    return [[_gbinom(i - ann_bound - 1, pp) for i in range(size)]
            for pp in range(size)]
