"""Complete and partial sum/difference/product/ratio sets over F_p.

Partial variants restrict the pairwise operation to the edges of a bipartite
graph E over A x B; they are always contained in the complete set and agree
with it when E = A x B.  Ratio sets can either reject zero divisors (default)
or exclude them, since pipeline outputs may legitimately contain 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Tuple

from .field import FieldElement, PrimeContext

SET_OPS = ("+", "-", "*", "/")
ZERO_POLICIES = ("error", "exclude")


class ZeroDivisorError(ValueError):
    """A ratio-set operation hit a zero divisor under the 'error' policy."""


def _ctx_of(elements: Iterable[FieldElement]) -> PrimeContext:
    ctx = None
    for e in elements:
        if ctx is None:
            ctx = e.ctx
        elif e.ctx.p != ctx.p:
            raise ValueError(f"mixed moduli {ctx.p} and {e.ctx.p}")
    if ctx is None:
        raise ValueError("empty collection has no context")
    return ctx


def _combine(op: str, p: int, a: int, b: int, inv) -> int:
    if op == "+":
        return (a + b) % p
    if op == "-":
        return (a - b) % p
    if op == "*":
        return a * b % p
    return a * inv(b) % p


def full_set(
    op: str,
    a_side: Iterable[FieldElement],
    b_side: Iterable[FieldElement],
    zero_policy: str = "error",
) -> FrozenSet[FieldElement]:
    """All pairwise results {a op b : a in A, b in B} as a set."""
    if op not in SET_OPS:
        raise ValueError(f"unknown set operation {op!r}")
    if zero_policy not in ZERO_POLICIES:
        raise ValueError(f"unknown zero policy {zero_policy!r}")
    a_vals = sorted({e.value for e in a_side})
    b_list = list(b_side)
    if not a_vals or not b_list:
        return frozenset()
    ctx = _ctx_of(b_list)
    b_vals = sorted({e.value for e in b_list})
    if op == "/":
        if 0 in b_vals:
            if zero_policy == "error":
                raise ZeroDivisorError("0 in the divisor side of a ratio set")
            b_vals = [v for v in b_vals if v]
            if not b_vals:
                return frozenset()
    p = ctx.p
    inv = ctx.inv
    out = {_combine(op, p, a, b, inv) for a in a_vals for b in b_vals}
    return frozenset(FieldElement(v, ctx) for v in out)


class BipartiteEdgeSet:
    """E subset of A x B over field elements, with optional padded elements.

    A and B are derived from the edges; padded elements enlarge a side's
    cardinality without carrying any edge and are tracked separately.
    """

    __slots__ = (
        "ctx",
        "a_side",
        "b_side",
        "edges",
        "padding_a",
        "padding_b",
        "_nbr_a",
        "_nbr_b",
    )

    def __init__(
        self,
        edges: Iterable[Tuple[FieldElement, FieldElement]],
        padding_a: Iterable[FieldElement] = (),
        padding_b: Iterable[FieldElement] = (),
    ):
        edge_list = sorted(set(edges), key=lambda e: (e[0].value, e[1].value))
        if not edge_list and not (padding_a or padding_b):
            raise ValueError("edge set needs at least one edge or padded element")
        flat = [e[0] for e in edge_list] + [e[1] for e in edge_list]
        flat += list(padding_a) + list(padding_b)
        self.ctx = _ctx_of(flat)
        self.padding_a = frozenset(padding_a)
        self.padding_b = frozenset(padding_b)
        core_a = {a for a, _ in edge_list}
        core_b = {b for _, b in edge_list}
        overlap_a = core_a & self.padding_a
        overlap_b = core_b & self.padding_b
        if overlap_a or overlap_b:
            raise ValueError(
                f"padded elements may not carry edges: {sorted(overlap_a | overlap_b)}"
            )
        self.a_side = frozenset(core_a | self.padding_a)
        self.b_side = frozenset(core_b | self.padding_b)
        self.edges = tuple(edge_list)
        nbr_a: Dict[FieldElement, set] = {a: set() for a in self.a_side}
        nbr_b: Dict[FieldElement, set] = {b: set() for b in self.b_side}
        for a, b in edge_list:
            nbr_a[a].add(b)
            nbr_b[b].add(a)
        self._nbr_a = {a: frozenset(s) for a, s in nbr_a.items()}
        self._nbr_b = {b: frozenset(s) for b, s in nbr_b.items()}

    @classmethod
    def complete(cls, a_side: Iterable[FieldElement], b_side: Iterable[FieldElement]):
        a_list = sorted(set(a_side), key=lambda e: e.value)
        b_list = sorted(set(b_side), key=lambda e: e.value)
        return cls([(a, b) for a in a_list for b in b_list])

    @classmethod
    def from_value_pairs(cls, ctx: PrimeContext, pairs, padding_a=(), padding_b=()):
        return cls(
            [(ctx.element(a), ctx.element(b)) for a, b in pairs],
            padding_a=[ctx.element(v) for v in padding_a],
            padding_b=[ctx.element(v) for v in padding_b],
        )

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, a: FieldElement) -> FrozenSet[FieldElement]:
        """N(a): the b in B with (a, b) an edge."""
        if a not in self._nbr_a:
            raise ValueError(f"{a!r} is not on the A side")
        return self._nbr_a[a]

    def co_neighbors(self, b: FieldElement) -> FrozenSet[FieldElement]:
        if b not in self._nbr_b:
            raise ValueError(f"{b!r} is not on the B side")
        return self._nbr_b[b]

    def __contains__(self, edge) -> bool:
        a, b = edge
        return a in self._nbr_a and b in self._nbr_a[a]

    def __repr__(self):
        return (
            f"BipartiteEdgeSet(|A|={len(self.a_side)}, |B|={len(self.b_side)}, "
            f"|E|={self.n_edges})"
        )


def partial_set(
    op: str, graph: BipartiteEdgeSet, zero_policy: str = "error"
) -> FrozenSet[FieldElement]:
    """{a op b : (a, b) an edge}; a subset of the corresponding full set."""
    if op not in SET_OPS:
        raise ValueError(f"unknown set operation {op!r}")
    if zero_policy not in ZERO_POLICIES:
        raise ValueError(f"unknown zero policy {zero_policy!r}")
    ctx = graph.ctx
    p = ctx.p
    inv = ctx.inv
    out = set()
    for a, b in graph.edges:
        if op == "/" and b.value == 0:
            if zero_policy == "error":
                raise ZeroDivisorError(f"edge ({a.value}, 0) divides by zero")
            continue
        out.add(_combine(op, p, a.value, b.value, inv))
    return frozenset(FieldElement(v, ctx) for v in out)


def zero_divisor_edge_count(graph: BipartiteEdgeSet) -> int:
    """Edges whose B endpoint is 0 (excluded from ratio partial sets)."""
    return sum(1 for _, b in graph.edges if b.value == 0)


@dataclass(frozen=True)
class RudnevMeasurement:
    """Measured difference/ratio growth of a single set.

    growth_ratio is max(|A-A|, |A/A|) / |A|^(12/11) as a float; the set sizes
    themselves are exact.  This is a measurement harness, not a verification
    of the sum-product constant.
    """

    difference_size: int
    ratio_size: int
    growth_ratio: float
    large_set_warning: bool


def rudnev_ratio(a_set: Iterable[FieldElement]) -> RudnevMeasurement:
    """Exact |A-A| and |A/A| (zeros excluded from the divisor side) plus the
    growth ratio against |A|^(12/11).  Warns when |A| >= sqrt(p), outside the
    regime where the lower bound is meaningful."""
    elements = list(a_set)
    if not elements:
        raise ValueError("rudnev_ratio needs a nonempty set")
    ctx = _ctx_of(elements)
    p = ctx.p
    vals = sorted({e.value for e in elements})
    diffs = {(a - b) % p for a in vals for b in vals}
    inv = ctx.inv
    divisors = [v for v in vals if v]
    ratios = {a * inv(b) % p for a in vals for b in divisors}
    n = len(vals)
    top = max(len(diffs), len(ratios))
    return RudnevMeasurement(
        difference_size=len(diffs),
        ratio_size=len(ratios),
        growth_ratio=top / n ** (12 / 11),
        large_set_warning=n * n >= p,
    )
