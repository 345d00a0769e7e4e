"""Instance generators: extremal grids, random instances, full planes."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict

from .field import PrimeContext
from .incidence import Instance
from .plane import ProjLine, ProjPoint, all_lines, all_points, line_through


def elekes_grid(n: int, p: int) -> Instance:
    """The grid construction achieving Theta(N^(4/3)) incidences.

    P = [0, n) x [0, 2n^2), L = {y = m*x + c : m in [0, n), c in [0, n^2)}.
    Every line meets the grid in exactly n points, so I = n^4, with
    |P| = 2n^3 and |L| = n^3.  Requires p > 2n^2 so no coordinate wraps.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    ctx = PrimeContext(p)
    if p <= 2 * n * n:
        raise ValueError(f"need p > 2n^2 = {2 * n * n} to avoid wraparound, got {p}")
    points = [
        ProjPoint.affine(ctx, x, y) for x in range(n) for y in range(2 * n * n)
    ]
    lines = [
        ProjLine.from_slope_intercept(ctx, m, c)
        for m in range(n)
        for c in range(n * n)
    ]
    return Instance(ctx, points, lines)


def random_instance(n: int, p: int, seed: int = 0) -> Instance:
    """n distinct uniform affine points and n distinct uniform affine lines."""
    ctx = PrimeContext(p)
    if n > p * p:
        raise ValueError(f"cannot pick {n} distinct points in a plane of {p * p}")
    if n > p * p + p:
        raise ValueError(f"cannot pick {n} distinct lines from {p * p + p}")
    rng = random.Random(seed)
    points = []
    for idx in rng.sample(range(p * p), n):
        x, y = divmod(idx, p)
        points.append(ProjPoint.affine(ctx, x, y))
    lines = []
    for idx in rng.sample(range(p * p + p), n):
        if idx < p * p:
            m, c = divmod(idx, p)
            lines.append(ProjLine.from_slope_intercept(ctx, m, c))
        else:
            lines.append(ProjLine.vertical(ctx, idx - p * p))
    return Instance(ctx, points, lines)


def full_plane(p: int, affine_only: bool = True) -> Instance:
    """All points and lines of the affine plane, or of full PG(2, p)."""
    ctx = PrimeContext(p)
    if affine_only:
        points = [ProjPoint.affine(ctx, x, y) for x in range(p) for y in range(p)]
        lines = [
            ProjLine.from_slope_intercept(ctx, m, c)
            for m in range(p)
            for c in range(p)
        ] + [ProjLine.vertical(ctx, x) for x in range(p)]
        return Instance(ctx, points, lines)
    return Instance(ctx, all_points(ctx), all_lines(ctx))


def cartesian_product_instance(nx: int, ny: int, p: int) -> Instance:
    """An nx * ny grid of points together with every line it spans."""
    if nx < 1 or ny < 1:
        raise ValueError("grid dimensions must be positive")
    ctx = PrimeContext(p)
    if nx > p or ny > p:
        raise ValueError("grid does not fit in the plane")
    points = [ProjPoint.affine(ctx, x, y) for x in range(nx) for y in range(ny)]
    lines = set()
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            lines.add(line_through(points[i], points[j]))
    return Instance(ctx, points, sorted(lines, key=lambda l: l.triple))


_KINDS = ("elekes", "random", "full_plane", "cartesian_product")


@dataclass(frozen=True)
class GenSpec:
    """A declarative instance request, expressible through CLI flags."""

    kind: str
    params: Dict[str, int] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; choose from {_KINDS}")


def generate(spec: GenSpec) -> Instance:
    params = dict(spec.params)

    def need(*names):
        missing = [k for k in names if k not in params]
        if missing:
            raise ValueError(f"generator {spec.kind!r} requires parameters {missing}")
        return [params[k] for k in names]

    if spec.kind == "elekes":
        n, p = need("n", "p")
        return elekes_grid(n, p)
    if spec.kind == "random":
        n, p = need("n", "p")
        return random_instance(n, p, seed=spec.seed)
    if spec.kind == "full_plane":
        (p,) = need("p")
        return full_plane(p, affine_only=bool(params.get("affine", 1)))
    n_x, n_y, p = need("nx", "ny", "p")
    return cartesian_product_instance(n_x, n_y, p)
