"""Rank-2 pseudo-lattices and the measured foliations of the torus they encode."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DeterminantError, PositivityError
from .exact import QuadraticReal, UnimodularMatrix


def _positive(name: str, v) -> QuadraticReal:
    v = QuadraticReal._coerce(v)
    if v.sign() <= 0:
        raise PositivityError(f"{name} must be positive, got {v}")
    return v


@dataclass(frozen=True)
class PseudoLattice:
    """Homomorphism ``Z^2 -> R`` given by ``(1,0) -> lambda1``, ``(0,1) -> lambda2``."""

    lambda1: QuadraticReal
    lambda2: QuadraticReal

    def __post_init__(self) -> None:
        object.__setattr__(self, "lambda1", _positive("lambda1", self.lambda1))
        object.__setattr__(self, "lambda2", _positive("lambda2", self.lambda2))

    def scaled(self, s) -> PseudoLattice:
        return PseudoLattice(self.lambda1 * s, self.lambda2 * s)


@dataclass(frozen=True)
class MeasuredFoliation:
    """Parallel lines of slope ``slope`` with transverse measure ``measure``."""

    slope: QuadraticReal
    measure: QuadraticReal

    def __post_init__(self) -> None:
        object.__setattr__(self, "slope", _positive("slope", self.slope))
        object.__setattr__(self, "measure", _positive("measure", self.measure))


def to_foliation(pl: PseudoLattice) -> MeasuredFoliation:
    return MeasuredFoliation(slope=pl.lambda2 / pl.lambda1, measure=pl.lambda1)


def from_foliation(f: MeasuredFoliation) -> PseudoLattice:
    return PseudoLattice(f.measure, f.measure * f.slope)


def slope(pl: PseudoLattice) -> QuadraticReal:
    return pl.lambda2 / pl.lambda1


def basis_change_pl(pl: PseudoLattice, m: UnimodularMatrix) -> PseudoLattice:
    """Periods of the same closed form over the new basis ``(a g1 + b g2, c g1 + d g2)``.

    Raises PositivityError when either new period is not positive; such a
    matrix does not act inside the cone of positive pseudo-lattices.
    """
    if m.det != 1:
        raise DeterminantError("an orientation-preserving basis change needs det = +1")
    l1 = m.a * pl.lambda1 + m.b * pl.lambda2
    l2 = m.c * pl.lambda1 + m.d * pl.lambda2
    if l1.sign() <= 0 or l2.sign() <= 0:
        raise PositivityError(
            f"basis change ({m.a},{m.b};{m.c},{m.d}) leaves the positive cone: "
            f"lambda1' = {l1}, lambda2' = {l2}"
        )
    return PseudoLattice(l1, l2)
