"""Exact computations for the functor from complex tori to Effros-Shen algebras."""

from .bratteli import (
    BratteliDiagram,
    DimensionGroup,
    build_diagram,
    export_diagram,
    k0_group,
    level_dimensions,
    stable_isomorphic,
)
from .contfrac import (
    ContinuedFraction,
    Convergent,
    EquivalenceVerdict,
    SurdState,
    cf_expand,
    cf_value,
    convergents,
    equivalence_decide,
    recover_matrix,
    tail_equivalent,
)
from .errors import DomainError
from .exact import ComplexQuadratic, QuadraticReal, Rational, UnimodularMatrix, arith, floor, mobius, sign
from .functor import MarkedPair, ProjectivePseudoLattice, f_morphism, f_object, pipeline
from .lattice import (
    Lattice,
    ModuliPoint,
    basis_change,
    induced_tau,
    normalize,
    reduce_fundamental,
    tori_isomorphic,
)
from .pseudolattice import MeasuredFoliation, PseudoLattice, basis_change_pl, from_foliation, to_foliation

__version__ = "0.1.0"
