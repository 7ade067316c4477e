"""Effros-Shen Bratteli diagrams, their dimension groups and exports.

Level ``n >= 1`` has an upper and a lower vertex; the transition into level
``n`` has incidence matrix ``(a_n, 1; 1, 0)``.  Level 0 is the root, whose
dimension vector is ``(q_0, q_{-1}) = (1, 0)``: only the upper slot carries a
vertex.  With this indexing the dimensions at level ``n`` are the convergent
denominators ``(q_n, q_{n-1})``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import islice

from .contfrac import ContinuedFraction, EquivalenceVerdict, cf_expand, equivalence_decide
from .errors import DomainError, RationalThetaError
from .exact import QuadraticReal

FORMAT_VERSION = 1
CONE_SAMPLE_BOUND = 50
CONE_SAMPLE_SIZE = 400


@dataclass(frozen=True)
class BratteliDiagram:
    """Truncation of the Effros-Shen diagram to ``depth`` levels below the root.

    ``quotients`` holds ``a_0 .. a_depth``; the transition into level ``n``
    uses ``quotients[n]``.  ``a_0`` is kept for reference only, since the
    algebra does not depend on the integer part of theta.
    """

    depth: int
    quotients: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "quotients", tuple(self.quotients))
        if self.depth < 1:
            raise ValueError("a diagram needs at least one level")
        if len(self.quotients) != self.depth + 1:
            raise ValueError("need exactly depth + 1 partial quotients")
        if any(a < 1 for a in self.quotients[1:]):
            raise ValueError("edge multiplicities a_n must be positive for n >= 1")

    @property
    def levels(self) -> int:
        return self.depth

    def multiplicity(self, n: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """Incidence matrix of the transition into level ``n``.

        Rows index the target (upper, lower), columns the source (upper, lower).
        For ``n == 1`` the source lower vertex does not exist.
        """
        if not 1 <= n <= self.depth:
            raise IndexError(n)
        return ((self.quotients[n], 1), (1, 0))

    def vertices(self) -> list[str]:
        out = ["v0_u"]
        for n in range(1, self.depth + 1):
            out += [f"v{n}_u", f"v{n}_l"]
        return out

    def edges(self) -> list[tuple[str, str, int]]:
        """``(source, target, multiplicity)`` with zero-multiplicity pairs omitted."""
        out = []
        for n in range(1, self.depth + 1):
            (uu, ul), (lu, _) = self.multiplicity(n)
            out.append((f"v{n - 1}_u", f"v{n}_u", uu))
            out.append((f"v{n - 1}_u", f"v{n}_l", lu))
            if n > 1:
                out.append((f"v{n - 1}_l", f"v{n}_u", ul))
        return out


# Spelling used by some callers.
BrattelliDiagram = BratteliDiagram


def build_diagram(cf: ContinuedFraction, levels: int) -> BratteliDiagram:
    if cf.is_finite():
        raise RationalThetaError("the Effros-Shen algebra requires an irrational theta")
    if levels < 1:
        raise ValueError("levels must be >= 1")
    return BratteliDiagram(levels, tuple(islice(cf.terms(), levels + 1)))


def level_dimensions(dg: BratteliDiagram) -> list[tuple[int, int]]:
    """Dimension vectors ``(upper, lower)`` for levels ``0 .. depth``.

    Entry 0 is the root ``(1, 0)``; the lower slot there is empty.
    """
    upper, lower = 1, 0
    out = [(upper, lower)]
    for n in range(1, dg.depth + 1):
        (uu, ul), (lu, ll) = dg.multiplicity(n)
        upper, lower = uu * upper + ul * lower, lu * upper + ll * lower
        out.append((upper, lower))
    return out


@dataclass(frozen=True)
class DimensionGroup:
    """Ordered group ``Z + Z*theta``; ``(p, q)`` stands for ``p + q*theta``."""

    theta: QuadraticReal
    rank: int = 2

    def contains(self, p: int, q: int) -> bool:
        """Positive-cone membership, ``(0, 0)`` included."""
        return (p == 0 and q == 0) or (p + q * self.theta).sign() > 0

    def __contains__(self, pq) -> bool:
        return self.contains(*pq)


def k0_group(theta) -> DimensionGroup:
    theta = QuadraticReal._coerce(theta)
    if theta.is_rational():
        raise RationalThetaError("K0 of an Effros-Shen algebra needs an irrational theta")
    if theta.sign() <= 0:
        raise DomainError("theta must be positive")
    return DimensionGroup(theta)


def _order_isomorphic(verdict: EquivalenceVerdict, g1: DimensionGroup, g2: DimensionGroup, seed: int = 0) -> bool:
    # theta2 = (a t1 + b)/(c t1 + d); multiplying by c t1 + d > 0 sends
    # p + q theta2  to  (p d + q b) + (p c + q a) theta1
    m = verdict.witness
    rng = random.Random(seed)
    b = CONE_SAMPLE_BOUND
    pts = [(rng.randint(-b, b), rng.randint(-b, b)) for _ in range(CONE_SAMPLE_SIZE)]
    pts += [(1, 0), (0, 1), (-1, 0), (0, -1), (0, 0)]
    for p, q in pts:
        if g2.contains(p, q) != g1.contains(p * m.d + q * m.b, p * m.c + q * m.a):
            return False
    return True


def stable_isomorphic(t1, t2) -> EquivalenceVerdict:
    """Decide stable isomorphism of the Effros-Shen algebras of ``t1`` and ``t2``.

    The witness is additionally checked to induce an order isomorphism of
    the two dimension groups on a sample of lattice points.
    """
    g1, g2 = k0_group(t1), k0_group(t2)
    verdict = equivalence_decide(g1.theta, g2.theta)
    if verdict.witness is not None and not _order_isomorphic(verdict, g1, g2):
        raise AssertionError("witness failed to preserve the positive cones")
    return verdict


def diagram_to_dict(dg: BratteliDiagram) -> dict:
    dims = level_dimensions(dg)
    return {
        "format_version": FORMAT_VERSION,
        "depth": dg.depth,
        "quotients": list(dg.quotients),
        "root": {"vertex": "v0_u", "dimension": 1},
        "levels": [
            {
                "level": n,
                "a": dg.quotients[n],
                "multiplicity": [list(r) for r in dg.multiplicity(n)],
                "dimensions": {"upper": dims[n][0], "lower": dims[n][1]},
            }
            for n in range(1, dg.depth + 1)
        ],
    }


def diagram_from_dict(obj: dict) -> BratteliDiagram:
    if obj.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported diagram format_version {obj.get('format_version')!r}")
    dg = BratteliDiagram(int(obj["depth"]), tuple(int(a) for a in obj["quotients"]))
    for lv in obj.get("levels", []):
        if [list(r) for r in dg.multiplicity(lv["level"])] != lv["multiplicity"]:
            raise ValueError(f"multiplicity mismatch at level {lv['level']}")
    return dg


def _to_dot(dg: BratteliDiagram) -> str:
    lines = [
        "digraph effros_shen {",
        f'  label="Effros-Shen Bratteli diagram, truncated at depth {dg.depth}";',
        "  rankdir=LR;",
        "  node [shape=circle, label=\"\", width=0.15];",
        "  subgraph level_0 { rank=same; v0_u; }",
    ]
    for n in range(1, dg.depth + 1):
        lines.append(f"  subgraph level_{n} {{ rank=same; v{n}_u; v{n}_l; }}")
    for src, dst, k in dg.edges():
        lines.extend(f"  {src} -> {dst};" for _ in range(k))
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_diagram(dg: BratteliDiagram, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(diagram_to_dict(dg), indent=2, sort_keys=True) + "\n"
    if fmt == "dot":
        return _to_dot(dg)
    raise ValueError(f"unknown export format {fmt!r}")


def diagram_for(theta, levels: int) -> BratteliDiagram:
    return build_diagram(cf_expand(theta), levels)
