"""Incidence counting, degree tables, degree truncation and dyadic selection.

Two counting algorithms are provided: a pairwise brute force and a bucketed
count that groups lines by slope and looks points up by intercept.  They are
independent code paths and must agree on every instance; the test suite uses
that agreement as its primary oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .field import PrimeContext
from .plane import ProjLine, ProjPoint

COUNT_METHODS = ("bruteforce", "bucketed")


class DuplicateError(ValueError):
    """An instance was given the same point or line twice."""


class Instance:
    """A finite set of points and lines over one prime context.

    Duplicates (after canonicalization) are rejected at construction.  Points
    and lines are kept sorted by canonical triple so that every downstream
    choice that breaks ties "by canonical order" is deterministic.
    """

    __slots__ = ("ctx", "points", "lines")

    def __init__(
        self,
        ctx: PrimeContext,
        points: Iterable[ProjPoint],
        lines: Iterable[ProjLine],
    ):
        pts = list(points)
        lns = list(lines)
        for pt in pts:
            if pt.ctx.p != ctx.p:
                raise ValueError(f"point {pt.triple} has modulus {pt.ctx.p}, not {ctx.p}")
        for ln in lns:
            if ln.ctx.p != ctx.p:
                raise ValueError(f"line {ln.triple} has modulus {ln.ctx.p}, not {ctx.p}")
        seen = set()
        for pt in pts:
            if pt.triple in seen:
                raise DuplicateError(f"duplicate point {pt.triple}")
            seen.add(pt.triple)
        seen = set()
        for ln in lns:
            if ln.triple in seen:
                raise DuplicateError(f"duplicate line {ln.triple}")
            seen.add(ln.triple)
        self.ctx = ctx
        self.points: Tuple[ProjPoint, ...] = tuple(sorted(pts, key=lambda q: q.triple))
        self.lines: Tuple[ProjLine, ...] = tuple(sorted(lns, key=lambda l: l.triple))

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_lines(self) -> int:
        return len(self.lines)

    @property
    def n_value(self) -> int:
        """N = max(|P|, |L|)."""
        return max(self.n_points, self.n_lines)

    @property
    def warn_n_ge_p(self) -> bool:
        """True when the N < p hypothesis of the headline regime fails."""
        return self.n_value >= self.ctx.p

    @property
    def has_infinite_elements(self) -> bool:
        return any(pt.at_infinity for pt in self.points) or any(
            ln.is_at_infinity for ln in self.lines
        )

    def replace(self, points=None, lines=None) -> "Instance":
        return Instance(
            self.ctx,
            self.points if points is None else points,
            self.lines if lines is None else lines,
        )

    def __eq__(self, other):
        if isinstance(other, Instance):
            return (
                self.ctx.p == other.ctx.p
                and self.points == other.points
                and self.lines == other.lines
            )
        return NotImplemented

    def __repr__(self):
        return f"Instance(p={self.ctx.p}, |P|={self.n_points}, |L|={self.n_lines})"


@dataclass
class DegreeTables:
    """Per-point and per-line incidence degrees plus the total count."""

    point_degrees: Dict[ProjPoint, int]
    line_degrees: Dict[ProjLine, int]
    total: int

    def check_consistent(self) -> None:
        s_pt = sum(self.point_degrees.values())
        s_ln = sum(self.line_degrees.values())
        if not (s_pt == s_ln == self.total):
            raise AssertionError(
                f"degree sums disagree: points {s_pt}, lines {s_ln}, total {self.total}"
            )


def _degree_arrays(
    p: int, point_triples: Sequence[Tuple[int, int, int]], line_triples: Sequence[Tuple[int, int, int]]
) -> Tuple[List[int], List[int], int]:
    """Brute-force degrees over raw triples (the hot loop)."""
    pt_deg = [0] * len(point_triples)
    ln_deg = [0] * len(line_triples)
    total = 0
    for i, (a, b, c) in enumerate(line_triples):
        d = 0
        for j, (x, y, z) in enumerate(point_triples):
            if (a * x + b * y + c * z) % p == 0:
                pt_deg[j] += 1
                d += 1
        ln_deg[i] = d
        total += d
    return pt_deg, ln_deg, total


def _count_bruteforce(inst: Instance) -> DegreeTables:
    p = inst.ctx.p
    pts = [q.triple for q in inst.points]
    lns = [l.triple for l in inst.lines]
    pt_deg, ln_deg, total = _degree_arrays(p, pts, lns)
    return DegreeTables(
        {q: d for q, d in zip(inst.points, pt_deg)},
        {l: d for l, d in zip(inst.lines, ln_deg)},
        total,
    )


def _count_bucketed(inst: Instance) -> DegreeTables:
    """Group lines by slope, then look points up by intercept.

    Affine points cost one dictionary probe per distinct slope instead of one
    test per line; infinite points reduce to whole-pencil lookups.
    """
    p = inst.ctx.p
    pt_deg = [0] * inst.n_points
    ln_deg = [0] * inst.n_lines

    slope_buckets: Dict[int, Dict[int, int]] = {}
    verticals: Dict[int, int] = {}
    infinity_idx = None
    for i, ln in enumerate(inst.lines):
        a, b, c = ln.triple
        if b:
            b_inv = pow(b, -1, p)
            m = -a * b_inv % p
            k = -c * b_inv % p
            slope_buckets.setdefault(m, {})[k] = i
        elif a:
            verticals[-c * pow(a, -1, p) % p] = i
        else:
            infinity_idx = i

    for j, pt in enumerate(inst.points):
        x, y, z = pt.triple
        if z == 1:
            for m, bucket in slope_buckets.items():
                i = bucket.get((y - m * x) % p)
                if i is not None:
                    pt_deg[j] += 1
                    ln_deg[i] += 1
            i = verticals.get(x)
            if i is not None:
                pt_deg[j] += 1
                ln_deg[i] += 1
        else:
            # Infinite point: on the line at infinity, plus one whole pencil.
            if infinity_idx is not None:
                pt_deg[j] += 1
                ln_deg[infinity_idx] += 1
            if y == 1:
                if x == 0:
                    hits = verticals.values()
                else:
                    hits = slope_buckets.get(pow(x, -1, p), {}).values()
            else:  # canonical (1, 0, 0): direction of horizontal lines
                hits = slope_buckets.get(0, {}).values()
            for i in hits:
                pt_deg[j] += 1
                ln_deg[i] += 1

    total = sum(ln_deg)
    return DegreeTables(
        {q: d for q, d in zip(inst.points, pt_deg)},
        {l: d for l, d in zip(inst.lines, ln_deg)},
        total,
    )


def count_incidences(inst: Instance, method: str = "bruteforce") -> DegreeTables:
    if method == "bruteforce":
        tables = _count_bruteforce(inst)
    elif method == "bucketed":
        tables = _count_bucketed(inst)
    else:
        raise ValueError(f"unknown counting method {method!r}")
    tables.check_consistent()
    return tables


def cauchy_schwarz_ok(n_points: int, n_lines: int, total: int) -> Tuple[bool, bool]:
    """Exact integer checks of I <= sqrt(|L|)|P| + |L| and the dual bound."""

    def side(i: int, a: int, b: int) -> bool:
        # i <= sqrt(a)*b + a, without floating point
        return i <= a or (i - a) ** 2 <= a * b * b

    return side(total, n_lines, n_points), side(total, n_points, n_lines)


def truncate_high_degree(inst: Instance, k_max: int, fixpoint: bool = True) -> Instance:
    """Remove points then lines of degree above k_max, optionally to a fixpoint.

    Removal is all-at-once per pass, so the result does not depend on
    enumeration order.  With fixpoint=False a single point pass and a single
    line pass are made.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    p = inst.ctx.p
    points = list(inst.points)
    lines = list(inst.lines)
    while True:
        pt_deg, _, _ = _degree_arrays(p, [q.triple for q in points], [l.triple for l in lines])
        kept_points = [q for q, d in zip(points, pt_deg) if d <= k_max]
        removed = len(kept_points) != len(points)
        points = kept_points
        _, ln_deg, _ = _degree_arrays(p, [q.triple for q in points], [l.triple for l in lines])
        kept_lines = [l for l, d in zip(lines, ln_deg) if d <= k_max]
        removed = removed or len(kept_lines) != len(lines)
        lines = kept_lines
        if not fixpoint or not removed:
            break
    return inst.replace(points=points, lines=lines)


def dyadic_select(inst: Instance, d_min: int) -> Tuple[Tuple[ProjPoint, ...], int]:
    """Pick the dyadic degree bucket carrying the most incidence mass.

    Points of degree >= d_min are grouped by degree in [2^j, 2^(j+1)); the
    bucket maximizing the degree sum wins, ties going to the smaller j.
    Returns (points, K) with K = 2^j, or ((), 0) when nothing reaches d_min.
    """
    if d_min < 1:
        raise ValueError("d_min must be >= 1")
    tables = count_incidences(inst, "bruteforce")
    buckets: Dict[int, List[ProjPoint]] = {}
    masses: Dict[int, int] = {}
    for pt, d in tables.point_degrees.items():
        if d < d_min:
            continue
        j = d.bit_length() - 1
        buckets.setdefault(j, []).append(pt)
        masses[j] = masses.get(j, 0) + d
    if not buckets:
        return (), 0
    best_j = None
    best_mass = -1
    for j in sorted(masses):
        if masses[j] > best_mass:
            best_j = j
            best_mass = masses[j]
    chosen = tuple(sorted(buckets[best_j], key=lambda q: q.triple))
    return chosen, 1 << best_j
