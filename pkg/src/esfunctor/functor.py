"""The functor from complex tori to Effros-Shen algebras.

Objects: a pseudo-lattice ``(lambda1, lambda2)`` goes to the projective
pseudo-lattice ``theta = lambda2 / lambda1``.  Morphisms: a basis change
matrix goes to itself.  ``pipeline`` runs the whole chain on a torus and a
foliation whose periods are taken over one shared homology basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bratteli import BratteliDiagram, build_diagram
from .contfrac import ContinuedFraction, cf_expand
from .errors import DeterminantError, PositivityError
from .exact import QuadraticReal, UnimodularMatrix
from .lattice import Lattice, ModuliPoint, basis_change, normalize, reduce_fundamental
from .pseudolattice import PseudoLattice, basis_change_pl


@dataclass(frozen=True)
class ProjectivePseudoLattice:
    """``(1, 0) -> 1``, ``(0, 1) -> theta``: a pseudo-lattice up to scaling."""

    theta: QuadraticReal

    def __post_init__(self) -> None:
        t = QuadraticReal._coerce(self.theta)
        object.__setattr__(self, "theta", t)
        if t.sign() <= 0:
            raise PositivityError(f"theta must be positive, got {t}")

    @property
    def is_rational(self) -> bool:
        # rational theta has no Effros-Shen algebra; kept but flagged
        return self.theta.is_rational()


def f_object(pl: PseudoLattice) -> ProjectivePseudoLattice:
    return ProjectivePseudoLattice(pl.lambda2 / pl.lambda1)


def f_morphism(m: UnimodularMatrix) -> UnimodularMatrix:
    if m.det != 1:
        raise DeterminantError("the functor is defined on orientation-preserving isomorphisms")
    return m


F_object = f_object
F_morphism = f_morphism


@dataclass(frozen=True)
class MarkedPair:
    """A torus and a foliation with periods over the same basis ``gamma1, gamma2``."""

    lattice: Lattice
    pl: PseudoLattice

    def basis_change(self, m: UnimodularMatrix) -> MarkedPair:
        return MarkedPair(basis_change(self.lattice, m), basis_change_pl(self.pl, m))


@dataclass(frozen=True)
class PipelineResult:
    tau: ModuliPoint
    tau_reduced: ModuliPoint
    reduction: UnimodularMatrix
    theta: ProjectivePseudoLattice
    cf: ContinuedFraction
    diagram: Optional[BratteliDiagram]


def pipeline(mp: MarkedPair, levels: int) -> PipelineResult:
    """Torus side: normalize and reduce.  Foliation side: theta, its expansion, the diagram.

    For rational theta the expansion is finite and ``diagram`` is ``None``.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    tau = normalize(mp.lattice)
    tau_red, m = reduce_fundamental(tau)
    theta = f_object(mp.pl)
    cf = cf_expand(theta.theta)
    diagram = None if cf.is_finite() else build_diagram(cf, levels)
    return PipelineResult(tau, tau_red, m, theta, cf, diagram)
