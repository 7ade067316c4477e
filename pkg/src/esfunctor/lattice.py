"""Period lattices, the modular parameter tau and SL2(Z) reduction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DegenerateLatticeError, DeterminantError, NotInUpperHalfPlaneError
from .exact import ComplexQuadratic, UnimodularMatrix, mobius


@dataclass(frozen=True)
class Lattice:
    """The lattice ``Z*omega1 + Z*omega2`` in C."""

    omega1: ComplexQuadratic
    omega2: ComplexQuadratic

    def __post_init__(self) -> None:
        w1 = ComplexQuadratic._coerce(self.omega1)
        w2 = ComplexQuadratic._coerce(self.omega2)
        object.__setattr__(self, "omega1", w1)
        object.__setattr__(self, "omega2", w2)
        if not w1 or not w2:
            raise DegenerateLatticeError("lattice periods must be non-zero")
        if (w2 / w1).imag_sign() == 0:
            raise DegenerateLatticeError("periods are linearly dependent over R")


@dataclass(frozen=True)
class ModuliPoint:
    tau: ComplexQuadratic

    def __post_init__(self) -> None:
        t = ComplexQuadratic._coerce(self.tau)
        object.__setattr__(self, "tau", t)
        if t.imag_sign() <= 0:
            raise NotInUpperHalfPlaneError(f"Im(tau) must be positive, got tau = {t}")

    def __str__(self) -> str:
        return str(self.tau)


PointLike = Union[ModuliPoint, ComplexQuadratic]


def _point(t: PointLike) -> ModuliPoint:
    return t if isinstance(t, ModuliPoint) else ModuliPoint(t)


def _require_special(m: UnimodularMatrix) -> None:
    if m.det != 1:
        raise DeterminantError("an orientation-preserving basis change needs det = +1")


def normalize(lat: Lattice) -> ModuliPoint:
    """Send ``omega2/omega1`` into the upper half plane, flipping sign if needed."""
    ratio = lat.omega2 / lat.omega1
    return ModuliPoint(ratio if ratio.imag_sign() > 0 else -ratio)


def basis_change(lat: Lattice, m: UnimodularMatrix) -> Lattice:
    """New periods ``(a w1 + b w2, c w1 + d w2)`` for the new homology basis."""
    _require_special(m)
    w1, w2 = lat.omega1, lat.omega2
    return Lattice(m.a * w1 + m.b * w2, m.c * w1 + m.d * w2)


def induced_tau(m: UnimodularMatrix, tau: PointLike) -> ModuliPoint:
    """``tau -> (c + d tau) / (a + b tau)``, the action of a basis change on tau.

    This is the generic Moebius action of ``m.swapped()``; it composes as a
    left action, ``induced_tau(A, induced_tau(B, t)) == induced_tau(A @ B, t)``.
    """
    _require_special(m)
    t = _point(tau).tau
    return ModuliPoint(mobius(m.swapped(), t))


def in_fundamental_domain(tau: PointLike) -> bool:
    t = _point(tau).tau
    re, n2 = t.real, t.norm()
    if not (Fraction(-1, 2) <= re < Fraction(1, 2)):
        return False
    return n2 > 1 or (n2 == 1 and re <= 0)


def reduce_fundamental(tau: PointLike) -> tuple[ModuliPoint, UnimodularMatrix]:
    """Reduce ``tau`` into the standard fundamental domain.

    Returns ``(tau_red, m)`` with ``tau_red == induced_tau(m, tau)``.  The
    domain keeps ``-1/2 <= Re < 1/2`` with ``|tau| > 1``, plus the left half
    of the unit arc.
    """
    t = _point(tau).tau
    g = UnimodularMatrix.identity()  # generic Moebius accumulator
    half = Fraction(1, 2)
    while True:
        n = (t.real + half).__floor__()
        if n:
            t = t - n
            g = UnimodularMatrix.T(-n) @ g
        n2 = t.norm()
        if n2 < 1 or (n2 == 1 and t.real > 0):
            t = -1 / t
            g = UnimodularMatrix.S() @ g
            continue
        break
    return ModuliPoint(t), g.swapped()


def tori_isomorphic(t1: PointLike, t2: PointLike) -> Optional[UnimodularMatrix]:
    """Witness ``m`` with ``induced_tau(m, t1) == t2``, or ``None``."""
    r1, m1 = reduce_fundamental(t1)
    r2, m2 = reduce_fundamental(t2)
    if r1 != r2:
        return None
    return m2.inverse() @ m1
