"""Virasoro Whittaker types of lambda data, and the fiber solver.

``whittaker_type_of`` maps a lambda sequence with support bound r to the
eigenvalue list zeta = (zeta_{r+1}, ..., zeta_{2r+eps}) of the high Virasoro
modes on the cyclic vector, with eps = 1 untwisted and 0 twisted:

    zeta_i = (1/2) * sum_{m+n=i-1} (lambda_m, lambda_n)

``solve_fiber`` inverts the map: the quadratic top equation
(lambda_top, lambda_top) = 2*zeta_top puts lambda_top on a scaled complex
sphere, after which each remaining equation is affine in one unknown vector
with an (rank-1)-dimensional solution space.  The fiber is therefore a
complex sphere times an affine space; ``fiber_dimension`` reports the pair.

Exact mode stays inside Q(i) and demands an exact square root (or an exactly
scaled top vector); numeric mode works in double-precision complex with one
refinement sweep on the triangular system.
"""

from __future__ import annotations

import cmath
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ._linalg import solve as _solve_linear
from .errors import (IsotropicTopError, NonSquareError, NumericFailure,
                     PreconditionError, SchemaError)
from .fock import FockVector, Sector
from .heisenberg import LambdaSequence
from .scalars import Scalar, as_scalar, scalar_sqrt
from .vertex import omega, mode_apply, twisted_mode_apply

TOLERANCE_ENV = "HEISENFOCK_TOLERANCE"
DEFAULT_TOLERANCE = 1e-10

ZERO = as_scalar(0)


def default_tolerance() -> float:
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None:
        return DEFAULT_TOLERANCE
    try:
        return float(raw)
    except ValueError as exc:
        raise SchemaError(f"bad {TOLERANCE_ENV} value {raw!r}") from exc


def epsilon_of(sector: Sector) -> int:
    return 1 if sector is Sector.UNTWISTED else 0


def bilinear(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    """Standard symmetric form sum_j u_j v_j (no conjugation)."""
    acc = ZERO
    for a, b in zip(u, v):
        acc = acc + a * b
    return acc


def _bilinear_c(u: Sequence[complex], v: Sequence[complex]) -> complex:
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class WhittakerType:
    """Eigenvalue data (r, zeta_{r+1..2r+eps}) with nonzero last entry."""

    sector: Sector
    r: int
    zeta: Tuple
    exact: bool = True

    def __post_init__(self):
        eps = epsilon_of(self.sector)
        if self.sector is Sector.TWISTED and self.r < 1:
            raise PreconditionError("twisted type needs r >= 1")
        if self.r < 0:
            raise PreconditionError("r must be >= 0")
        if len(self.zeta) != self.r + eps:
            raise PreconditionError(
                f"expected {self.r + eps} eigenvalues, got {len(self.zeta)}")
        if not self.zeta or not self.zeta[-1]:
            raise PreconditionError("top eigenvalue must be nonzero")

    @property
    def epsilon(self) -> int:
        return epsilon_of(self.sector)

    @property
    def first_index(self) -> int:
        return self.r + 1

    @property
    def last_index(self) -> int:
        return 2 * self.r + self.epsilon

    def value(self, i: int):
        if not self.first_index <= i <= self.last_index:
            raise IndexError(f"index {i} outside {self.first_index}..{self.last_index}")
        return self.zeta[i - self.first_index]


def type_eigenvalues(lam: LambdaSequence) -> Dict[int, Scalar]:
    """Raw eigenvalue sums zeta_i for i = r+1 .. 2r+eps (no validity check)."""
    r = lam.support_bound
    eps = epsilon_of(lam.sector)
    top2 = lam.top_doubled
    out: Dict[int, Scalar] = {}
    for i in range(r + 1, 2 * r + eps + 1):
        total2 = 2 * (i - 1)
        acc = ZERO
        start = 0 if lam.sector is Sector.UNTWISTED else 1
        for m2 in range(start, top2 + 1, 2):
            n2 = total2 - m2
            if n2 < start or n2 > top2:
                continue
            acc = acc + bilinear(lam.entry2(m2), lam.entry2(n2))
        out[i] = acc / 2
    return out


def whittaker_type_of(lam: LambdaSequence) -> WhittakerType:
    """The Whittaker type of a lambda sequence with nonzero top entry.

    Raises IsotropicTopError when the top entry pairs to zero with itself:
    the candidate type would violate the nonzero-last-eigenvalue requirement,
    and that case is surfaced rather than silently accepted.
    """
    if lam.is_zero:
        raise PreconditionError("the zero sequence has no Whittaker type")
    r = lam.support_bound
    eps = epsilon_of(lam.sector)
    eig = type_eigenvalues(lam)
    zeta = tuple(eig[i] for i in range(r + 1, 2 * r + eps + 1))
    if not zeta[-1]:
        raise IsotropicTopError(
            "top lambda entry is isotropic: (lambda_top, lambda_top) = 0")
    return WhittakerType(lam.sector, r, zeta, exact=True)


# -- eigenvector verification ---------------------------------------------------

@dataclass(frozen=True)
class ReportRow:
    index: int
    expected: Scalar
    actual: str
    ok: bool


@dataclass(frozen=True)
class WhittakerReport:
    sector: Sector
    r: int
    epsilon: int
    bound: int
    valid_type: bool
    rows: Tuple[ReportRow, ...]

    @property
    def all_ok(self) -> bool:
        return all(row.ok for row in self.rows)


def verify_whittaker_vector(lam: LambdaSequence, bound: int) -> WhittakerReport:
    """Check the Virasoro mode spectrum on the constant vector 1.

    For i = r+1 .. bound the i-th omega mode of 1 is computed through the
    vertex engine and compared against the closed-form eigenvalue (zero
    beyond 2r+eps).  Exact equality per row.
    """
    r = lam.support_bound
    eps = epsilon_of(lam.sector)
    eig = type_eigenvalues(lam)
    one = FockVector.constant(1, lam.rank, lam.sector)
    apply = mode_apply if lam.sector is Sector.UNTWISTED else twisted_mode_apply
    om = omega(lam.rank)
    rows: List[ReportRow] = []
    for i in range(r + 1, bound + 1):
        got = apply(om, i, one, lam)
        expected = eig.get(i, ZERO)
        ok = got == one.scaled(expected)
        rows.append(ReportRow(i, expected, str(got), ok))
    top = eig.get(2 * r + eps, ZERO)
    return WhittakerReport(lam.sector, r, eps, bound, bool(top), tuple(rows))


# -- the fiber over a type --------------------------------------------------------

@dataclass(frozen=True)
class FiberPoint:
    """One solution lambda over a type, with its parameterization data.

    ``free_params`` follow the back-substitution order: index 0 belongs to
    the highest unknown below the top entry, descending from there.
    """

    sector: Sector
    rank: int
    r: int
    exact: bool
    sphere_point: Optional[Tuple]
    top_vector: Tuple
    free_params: Tuple[Tuple, ...]
    lambda_entries: Tuple[Tuple, ...]
    residual: Union[Fraction, float]

    def to_lambda(self) -> LambdaSequence:
        if not self.exact:
            raise PreconditionError("numeric fiber point has no exact lambda")
        return LambdaSequence.make(self.sector, self.rank, self.lambda_entries)


def fiber_dimension(rank: int, r: int, sector: Sector) -> Tuple[int, int]:
    """(sphere dimension, affine dimension) of the fiber over a type."""
    if rank < 1:
        raise PreconditionError("rank must be >= 1")
    if sector is Sector.UNTWISTED:
        if r < 0:
            raise PreconditionError("r must be >= 0")
        return (rank - 1, (rank - 1) * r)
    if r < 1:
        raise PreconditionError("twisted r must be >= 1")
    return (rank - 1, (rank - 1) * (r - 1))


def _unknown_modes2(sector: Sector, r: int) -> List[int]:
    """Doubled modes of the unknown entries, ascending (top last)."""
    if sector is Sector.UNTWISTED:
        return [2 * t for t in range(r + 1)]
    return [2 * t + 1 for t in range(r)]


def _steps_below_top(sector: Sector, r: int) -> int:
    return r if sector is Sector.UNTWISTED else r - 1


def _standard_basis(rank: int, exact: bool):
    if exact:
        return [tuple(as_scalar(1 if c == s else 0) for c in range(rank))
                for s in range(rank)]
    return [tuple(1.0 + 0j if c == s else 0.0 + 0j for c in range(rank))
            for s in range(rank)]


def _complement_basis_exact(top: Tuple[Scalar, ...]) -> List[Tuple[Scalar, ...]]:
    """Deterministic orthogonal complement basis of a non-isotropic vector.

    Gram-Schmidt seeded from the standard basis (no normalization: square
    roots may not exist in Q(i)); if isotropic intermediates starve it,
    fall back to the pivot hyperplane basis, which is always valid.
    """
    rank = len(top)
    tt = bilinear(top, top)
    accepted: List[Tuple[Scalar, ...]] = []
    for e in _standard_basis(rank, exact=True):
        v = list(e)
        coef = bilinear(e, top) / tt
        v = [a - coef * b for a, b in zip(v, top)]
        for w in accepted:
            ww = bilinear(w, w)
            coef = bilinear(tuple(v), w) / ww
            v = [a - coef * b for a, b in zip(v, w)]
        vt = tuple(v)
        if any(vt) and bilinear(vt, vt):
            accepted.append(vt)
        if len(accepted) == rank - 1:
            return accepted
    # pivot fallback: e_s - (top_s / top_j*) e_j*
    jstar = next(idx for idx, c in enumerate(top) if c)
    basis = []
    for s in range(rank):
        if s == jstar:
            continue
        v = [ZERO] * rank
        v[s] = as_scalar(1)
        v[jstar] = -(top[s] / top[jstar])
        basis.append(tuple(v))
    return basis


def _complement_basis_numeric(top: Tuple[complex, ...]) -> List[Tuple[complex, ...]]:
    rank = len(top)
    tt = _bilinear_c(top, top)
    accepted: List[Tuple[complex, ...]] = []
    for e in _standard_basis(rank, exact=False):
        v = [a - (_bilinear_c(e, top) / tt) * b for a, b in zip(e, top)]
        for w in accepted:
            coef = _bilinear_c(tuple(v), w)  # accepted vectors are normalized
            v = [a - coef * b for a, b in zip(v, w)]
        norm2 = _bilinear_c(tuple(v), tuple(v))
        if abs(norm2) > 1e-12:
            scale = 1 / cmath.sqrt(norm2)
            accepted.append(tuple(scale * a for a in v))
        if len(accepted) == rank - 1:
            return accepted
    jstar = max(range(rank), key=lambda idx: abs(top[idx]))
    basis = []
    for s in range(rank):
        if s == jstar:
            continue
        v = [0j] * rank
        v[s] = 1.0 + 0j
        v[jstar] = -(top[s] / top[jstar])
        basis.append(tuple(v))
    return basis


def _known_sum(entries: Dict[int, Sequence], total2: int, t2: int, top2: int,
               exact: bool):
    """(1/2) sum of pairings over solved modes strictly between t and top."""
    acc = ZERO if exact else 0j
    for m2 in range(t2 + 2, top2, 2):
        n2 = total2 - m2
        if n2 <= t2 or n2 >= top2:
            continue
        if exact:
            acc = acc + bilinear(entries[m2], entries[n2])
        else:
            acc = acc + _bilinear_c(entries[m2], entries[n2])
    return acc / 2


def solve_fiber(zeta: WhittakerType, rank: int,
                sphere_point: Optional[Sequence] = None,
                free_params: Optional[Sequence[Sequence]] = None,
                exact: bool = False,
                top_vector: Optional[Sequence] = None,
                tolerance: Optional[float] = None) -> FiberPoint:
    """Produce one lambda sequence whose Whittaker type is ``zeta``.

    The top entry is sqrt(2*zeta_top) times a point on the complex unit
    sphere; each lower entry solves one affine equation, with its free
    (rank-1)-dimensional part taken from ``free_params`` in the deterministic
    complement basis of the top entry.  In exact mode a caller who already
    owns an exactly scaled top vector may pass it as ``top_vector`` to avoid
    the square-root requirement.
    """
    if rank < 1:
        raise PreconditionError("rank must be >= 1")
    r = zeta.r
    steps = _steps_below_top(zeta.sector, r)
    if free_params is None:
        free_params = [[0] * (rank - 1) for _ in range(steps)]
    if len(free_params) != steps or any(len(p) != rank - 1 for p in free_params):
        raise PreconditionError(
            f"free_params must be {steps} vectors of length {rank - 1}")
    modes2 = _unknown_modes2(zeta.sector, r)
    top2 = modes2[-1]
    if exact:
        return _solve_exact(zeta, rank, sphere_point, free_params, top_vector,
                            modes2, top2)
    tol = default_tolerance() if tolerance is None else tolerance
    return _solve_numeric(zeta, rank, sphere_point, free_params, top_vector,
                          modes2, top2, tol)


def _solve_exact(zeta, rank, sphere_point, free_params, top_vector,
                 modes2, top2) -> FiberPoint:
    two_top = as_scalar(2) * as_scalar(zeta.zeta[-1])
    s = scalar_sqrt(two_top)
    if top_vector is not None:
        top = tuple(as_scalar(c) for c in top_vector)
        if len(top) != rank:
            raise PreconditionError("top_vector has wrong length")
        if bilinear(top, top) != two_top:
            raise PreconditionError(
                "top_vector does not satisfy (T, T) = 2 * zeta_top")
    else:
        if sphere_point is not None:
            sp = tuple(as_scalar(c) for c in sphere_point)
            if len(sp) != rank:
                raise PreconditionError("sphere_point has wrong length")
            if bilinear(sp, sp) != as_scalar(1):
                raise PreconditionError("sphere_point is not on the unit sphere")
        else:
            sp = tuple(as_scalar(1 if c == 0 else 0) for c in range(rank))
        if s is None:
            raise NonSquareError(
                "2 * zeta_top has no square root in Q(i); supply top_vector")
        top = tuple(s * c for c in sp)
    sphere = tuple(c / s for c in top) if s else None
    basis = _complement_basis_exact(top)
    entries: Dict[int, Tuple[Scalar, ...]] = {top2: top}
    params_out = []
    for step, t2 in enumerate(reversed(modes2[:-1])):
        i = ((t2 + top2) // 2) + 1  # the eigenvalue index tied to this unknown
        rhs = as_scalar(zeta.value(i)) - _known_sum(entries, 2 * (i - 1), t2,
                                                    top2, exact=True)
        coef = rhs / two_top
        vec = [coef * c for c in top]
        row = tuple(as_scalar(c) for c in free_params[step])
        for c, w in zip(row, basis):
            if c:
                vec = [a + c * b for a, b in zip(vec, w)]
        entries[t2] = tuple(vec)
        params_out.append(row)
    lam_entries = tuple(entries[m2] for m2 in modes2)
    lam = LambdaSequence.make(zeta.sector, rank, lam_entries)
    if whittaker_type_of(lam) != WhittakerType(zeta.sector, zeta.r,
                                               tuple(as_scalar(z) for z in zeta.zeta)):
        raise NumericFailure("exact fiber solve failed to reproduce the type")
    return FiberPoint(zeta.sector, rank, zeta.r, True, sphere, top,
                      tuple(params_out), lam_entries, Fraction(0))


def _solve_numeric(zeta, rank, sphere_point, free_params, top_vector,
                   modes2, top2, tol) -> FiberPoint:
    zvals = [complex(z) for z in zeta.zeta]
    two_top = 2 * zvals[-1]
    if top_vector is not None:
        top = tuple(complex(c) for c in top_vector)
    else:
        if sphere_point is not None:
            sp = [complex(c) for c in sphere_point]
            norm2 = _bilinear_c(sp, sp)
            if abs(norm2) < 1e-14:
                raise PreconditionError("sphere_point is numerically isotropic")
            sp = [c / cmath.sqrt(norm2) for c in sp]
        else:
            sp = [1.0 + 0j if c == 0 else 0j for c in range(rank)]
        top = tuple(cmath.sqrt(two_top) * c for c in sp)
    basis = _complement_basis_numeric(top)
    params = [tuple(complex(c) for c in row) for row in free_params]

    def back_substitute(top_now, entries):
        entries[top2] = top_now
        tt = _bilinear_c(top_now, top_now)
        for step, t2 in enumerate(reversed(modes2[:-1])):
            i = ((t2 + top2) // 2) + 1
            rhs = zvals[i - (zeta.r + 1)] - _known_sum(entries, 2 * (i - 1),
                                                       t2, top2, exact=False)
            prev = entries.get(t2)
            if prev is None:
                vec = [(rhs / tt) * c for c in top_now]
                for c, w in zip(params[step], basis):
                    vec = [a + c * b for a, b in zip(vec, w)]
            else:
                # refinement: correct only along the top direction
                delta = (rhs - _bilinear_c(prev, top_now)) / tt
                vec = [a + delta * c for a, c in zip(prev, top_now)]
            entries[t2] = tuple(vec)

    entries: Dict[int, Tuple[complex, ...]] = {}
    back_substitute(top, entries)
    # one refinement sweep: rescale the top onto its quadric, re-correct the rest
    tt = _bilinear_c(entries[top2], entries[top2])
    scale = cmath.sqrt(two_top / tt)
    top = tuple(scale * c for c in entries[top2])
    back_substitute(top, entries)

    lam_entries = tuple(entries[m2] for m2 in modes2)
    residual = numeric_type_residual(lam_entries, zeta)
    if residual > tol:
        raise NumericFailure(
            f"fiber residual {residual:.3e} exceeds tolerance {tol:.3e}")
    tt = _bilinear_c(top, top)
    sphere = tuple(c / cmath.sqrt(tt) for c in top)
    return FiberPoint(zeta.sector, rank, zeta.r, False, sphere, top,
                      tuple(params), lam_entries, residual)


def numeric_type_eigenvalues(entries: Sequence[Sequence[complex]],
                             sector: Sector) -> Dict[int, complex]:
    """Floating-point version of the eigenvalue sums, for residual checks."""
    count = len(entries)
    if sector is Sector.UNTWISTED:
        r = max(0, count - 1)
        top2 = 2 * (count - 1) if count else 0
        start = 0
    else:
        r = count
        top2 = 2 * count - 1 if count else 0
        start = 1
    eps = epsilon_of(sector)
    table = {}
    for idx2 in range(start, top2 + 1, 2):
        slot = idx2 // 2 if sector is Sector.UNTWISTED else (idx2 - 1) // 2
        table[idx2] = entries[slot]
    out: Dict[int, complex] = {}
    for i in range(r + 1, 2 * r + eps + 1):
        total2 = 2 * (i - 1)
        acc = 0j
        for m2 in range(start, top2 + 1, 2):
            n2 = total2 - m2
            if n2 < start or n2 > top2:
                continue
            acc += _bilinear_c(table[m2], table[n2])
        out[i] = acc / 2
    return out


def numeric_type_residual(entries: Sequence[Sequence[complex]],
                          zeta: WhittakerType) -> float:
    got = numeric_type_eigenvalues(entries, zeta.sector)
    worst = 0.0
    for i in range(zeta.first_index, zeta.last_index + 1):
        worst = max(worst, abs(got[i] - complex(zeta.value(i))))
    return worst


def extract_fiber_data(lam: LambdaSequence) -> Tuple[Tuple[Scalar, ...],
                                                     List[Tuple[Scalar, ...]]]:
    """Recover (top_vector, free_params) so that solve_fiber reproduces lam.

    Exact inverse of the parameterization on its own image; requires the top
    entry to be non-isotropic.
    """
    if lam.is_zero:
        raise PreconditionError("zero sequence")
    modes2 = _unknown_modes2(lam.sector, lam.support_bound)
    top = lam.entry2(modes2[-1])
    tt = bilinear(top, top)
    if not tt:
        raise IsotropicTopError("top entry is isotropic")
    basis = _complement_basis_exact(top)
    params: List[Tuple[Scalar, ...]] = []
    for t2 in reversed(modes2[:-1]):
        v = lam.entry2(t2)
        coef = bilinear(v, top) / tt
        resid = [a - coef * b for a, b in zip(v, top)]
        matrix = [[basis[s][row] for s in range(len(basis))]
                  for row in range(lam.rank)]
        coords = _solve_linear(matrix, resid)
        if coords is None:
            raise PreconditionError("entry does not lie in the parameterized space")
        params.append(tuple(coords))
    return top, params
