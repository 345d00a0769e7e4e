"""The projective plane PG(2, p): points, lines, incidence, and plane maps.

Points and lines are homogeneous triples over a prime context, stored in a
canonical scaling where the rightmost nonzero coordinate equals 1.  Affine
points are (x, y, 1); the line at infinity is (0, 0, 1).  Maps act on points
by matrix-vector product and on lines by the inverse-transpose, which makes
incidence preservation an identity rather than a recomputation.
"""

from __future__ import annotations

from typing import Iterator, Sequence, Tuple

from .field import ContextMismatchError, FieldElement, PrimeContext

Triple = Tuple[int, int, int]


class DegenerateError(ValueError):
    """A geometric construction received degenerate input."""


def _canonicalize(p: int, x: int, y: int, z: int) -> Triple:
    x, y, z = x % p, y % p, z % p
    if z:
        s = pow(z, -1, p) if z != 1 else 1
    elif y:
        s = pow(y, -1, p) if y != 1 else 1
    elif x:
        s = pow(x, -1, p) if x != 1 else 1
    else:
        raise DegenerateError("homogeneous triple must not be all zero")
    if s == 1:
        return (x, y, z)
    return (x * s % p, y * s % p, z * s % p)


class ProjPoint:
    """A point of PG(2, p) in canonical homogeneous coordinates."""

    __slots__ = ("ctx", "x", "y", "z")

    def __init__(self, ctx: PrimeContext, x: int, y: int, z: int):
        self.ctx = ctx
        self.x, self.y, self.z = _canonicalize(ctx.p, x, y, z)

    @classmethod
    def affine(cls, ctx: PrimeContext, x: int, y: int) -> "ProjPoint":
        return cls(ctx, x, y, 1)

    @property
    def triple(self) -> Triple:
        return (self.x, self.y, self.z)

    @property
    def is_affine(self) -> bool:
        return self.z == 1

    @property
    def at_infinity(self) -> bool:
        return self.z == 0

    def affine_xy(self) -> Tuple[int, int]:
        if not self.is_affine:
            raise DegenerateError(f"point {self.triple} is at infinity")
        return (self.x, self.y)

    def __eq__(self, other):
        if isinstance(other, ProjPoint):
            return self.ctx.p == other.ctx.p and self.triple == other.triple
        return NotImplemented

    def __hash__(self):
        return hash(("pt", self.ctx.p, self.x, self.y, self.z))

    def __lt__(self, other):
        return self.triple < other.triple

    def __repr__(self):
        return f"ProjPoint{self.triple}"


class ProjLine:
    """A line of PG(2, p); (a, b, c) meets point (x, y, z) iff ax+by+cz = 0."""

    __slots__ = ("ctx", "a", "b", "c")

    def __init__(self, ctx: PrimeContext, a: int, b: int, c: int):
        self.ctx = ctx
        self.a, self.b, self.c = _canonicalize(ctx.p, a, b, c)

    @classmethod
    def from_slope_intercept(cls, ctx: PrimeContext, m: int, c: int) -> "ProjLine":
        """The affine line y = m*x + c."""
        return cls(ctx, m, -1, c)

    @classmethod
    def vertical(cls, ctx: PrimeContext, x0: int) -> "ProjLine":
        """The affine line x = x0."""
        return cls(ctx, 1, 0, -x0)

    @classmethod
    def at_infinity(cls, ctx: PrimeContext) -> "ProjLine":
        return cls(ctx, 0, 0, 1)

    @property
    def triple(self) -> Triple:
        return (self.a, self.b, self.c)

    @property
    def is_at_infinity(self) -> bool:
        return self.a == 0 and self.b == 0

    def slope(self) -> int:
        """Gradient of a non-vertical affine line."""
        p = self.ctx.p
        if self.b == 0:
            raise DegenerateError("vertical line has no finite gradient")
        return -self.a * pow(self.b, -1, p) % p

    def __eq__(self, other):
        if isinstance(other, ProjLine):
            return self.ctx.p == other.ctx.p and self.triple == other.triple
        return NotImplemented

    def __hash__(self):
        return hash(("ln", self.ctx.p, self.a, self.b, self.c))

    def __lt__(self, other):
        return self.triple < other.triple

    def __repr__(self):
        return f"ProjLine{self.triple}"


def _shared_ctx(u, v) -> PrimeContext:
    if u.ctx.p != v.ctx.p:
        raise ContextMismatchError(f"mixed moduli {u.ctx.p} and {v.ctx.p}")
    return u.ctx


def incident(pt: ProjPoint, ln: ProjLine) -> bool:
    ctx = _shared_ctx(pt, ln)
    return (ln.a * pt.x + ln.b * pt.y + ln.c * pt.z) % ctx.p == 0


def line_through(p: ProjPoint, q: ProjPoint) -> ProjLine:
    """The unique line through two distinct points (cross product)."""
    ctx = _shared_ctx(p, q)
    m = ctx.p
    a = (p.y * q.z - p.z * q.y) % m
    b = (p.z * q.x - p.x * q.z) % m
    c = (p.x * q.y - p.y * q.x) % m
    if a == 0 and b == 0 and c == 0:
        raise DegenerateError(f"points coincide: {p.triple}")
    return ProjLine(ctx, a, b, c)


Matrix = Tuple[Triple, Triple, Triple]


def _det3(m: Matrix, p: int) -> int:
    (a, b, c), (d, e, f), (g, h, i) = m
    return (a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)) % p


def _adjugate(m: Matrix, p: int) -> Matrix:
    (a, b, c), (d, e, f), (g, h, i) = m
    return (
        ((e * i - f * h) % p, (c * h - b * i) % p, (b * f - c * e) % p),
        ((f * g - d * i) % p, (a * i - c * g) % p, (c * d - a * f) % p),
        ((d * h - e * g) % p, (b * g - a * h) % p, (a * e - b * d) % p),
    )


def _matmul(m: Matrix, n: Matrix, p: int) -> Matrix:
    return tuple(
        tuple(sum(m[r][k] * n[k][c] for k in range(3)) % p for c in range(3))
        for r in range(3)
    )  # type: ignore[return-value]


def _matvec(m: Matrix, v: Triple, p: int) -> Triple:
    return tuple(sum(m[r][k] * v[k] for k in range(3)) % p for r in range(3))  # type: ignore[return-value]


def _scale_matrix(m: Matrix, p: int) -> Matrix:
    # Projective maps are defined up to a scalar; normalize so the first
    # nonzero entry in row-major order equals 1.
    for row in m:
        for entry in row:
            if entry:
                if entry == 1:
                    return m
                s = pow(entry, -1, p)
                return tuple(
                    tuple(e * s % p for e in row_) for row_ in m
                )  # type: ignore[return-value]
    raise DegenerateError("zero matrix")


class ProjMap:
    """An invertible projective transformation of PG(2, p)."""

    __slots__ = ("ctx", "m", "m_inv")

    def __init__(self, ctx: PrimeContext, rows: Sequence[Sequence[int]]):
        p = ctx.p
        m = tuple(tuple(int(e) % p for e in row) for row in rows)
        if len(m) != 3 or any(len(row) != 3 for row in m):
            raise ValueError("projective map needs a 3x3 matrix")
        m = _scale_matrix(m, p)
        det = _det3(m, p)
        if det == 0:
            raise DegenerateError("singular matrix does not define a projective map")
        s = pow(det, -1, p)
        adj = _adjugate(m, p)
        self.ctx = ctx
        self.m = m
        self.m_inv = tuple(
            tuple(e * s % p for e in row) for row in adj
        )  # type: ignore[assignment]

    @classmethod
    def identity(cls, ctx: PrimeContext) -> "ProjMap":
        return cls(ctx, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    @classmethod
    def translation(cls, ctx: PrimeContext, t1: int, t2: int) -> "ProjMap":
        """Affine translation (x, y) -> (x + t1, y + t2)."""
        return cls(ctx, ((1, 0, t1), (0, 1, t2), (0, 0, 1)))

    @classmethod
    def scale_y(cls, ctx: PrimeContext, lam: int) -> "ProjMap":
        """Single-axis scaling (x, y) -> (x, lam*y); lam must be nonzero."""
        if lam % ctx.p == 0:
            raise DegenerateError("scale factor 0 is singular")
        return cls(ctx, ((1, 0, 0), (0, lam, 0), (0, 0, 1)))

    def apply(self, pt: ProjPoint) -> ProjPoint:
        v = _matvec(self.m, pt.triple, self.ctx.p)
        return ProjPoint(self.ctx, *v)

    def apply_line(self, ln: ProjLine) -> ProjLine:
        # Inverse-transpose action keeps a*x+b*y+c*z = 0 invariant.
        p = self.ctx.p
        a, b, c = ln.triple
        mi = self.m_inv
        u = (mi[0][0] * a + mi[1][0] * b + mi[2][0] * c) % p
        v = (mi[0][1] * a + mi[1][1] * b + mi[2][1] * c) % p
        w = (mi[0][2] * a + mi[1][2] * b + mi[2][2] * c) % p
        return ProjLine(self.ctx, u, v, w)

    def inverse(self) -> "ProjMap":
        return ProjMap(self.ctx, self.m_inv)

    def __matmul__(self, other: "ProjMap") -> "ProjMap":
        """(f @ g) applies g first, then f."""
        if self.ctx.p != other.ctx.p:
            raise ContextMismatchError("maps over different moduli")
        return ProjMap(self.ctx, _matmul(self.m, other.m, self.ctx.p))

    def __eq__(self, other):
        if isinstance(other, ProjMap):
            return self.ctx.p == other.ctx.p and self.m == other.m
        return NotImplemented

    def __hash__(self):
        return hash(("map", self.ctx.p, self.m))

    def __repr__(self):
        return f"ProjMap({self.m})"


def translate(ctx: PrimeContext, t: Tuple[int, int]) -> ProjMap:
    return ProjMap.translation(ctx, t[0], t[1])


def scale_y(ctx: PrimeContext, lam: int) -> ProjMap:
    return ProjMap.scale_y(ctx, lam)


# Off-line probe points used to complete a projective frame: no line of
# PG(2, p) contains all three.
_FRAME_CANDIDATES = ((0, 0, 1), (1, 0, 1), (0, 1, 1))


def normalizing_map(common_line: ProjLine, p3: ProjPoint, p4: ProjPoint) -> ProjMap:
    """An invertible map sending common_line to the line at infinity with
    p3 -> (1,0,0) (pencil of horizontal lines) and p4 -> (0,1,0) (pencil of
    vertical lines).

    The map is not unique; this construction completes {p3, p4} to a frame
    with a deterministic third point off the common line and inverts the
    column matrix.  Postconditions are re-checked before returning.
    """
    ctx = common_line.ctx
    if p3 == p4:
        raise DegenerateError("p3 and p4 must be distinct")
    if not incident(p3, common_line) or not incident(p4, common_line):
        raise ValueError("p3 and p4 must both lie on the common line")
    p5 = None
    for cand in _FRAME_CANDIDATES:
        pt = ProjPoint(ctx, *cand)
        if not incident(pt, common_line):
            p5 = pt
            break
    assert p5 is not None  # three non-collinear candidates cannot all lie on one line
    columns = ProjMap(
        ctx,
        (
            (p3.x, p4.x, p5.x),
            (p3.y, p4.y, p5.y),
            (p3.z, p4.z, p5.z),
        ),
    )
    result = columns.inverse()
    assert result.apply(p3).triple == (1, 0, 0)
    assert result.apply(p4).triple == (0, 1, 0)
    assert result.apply_line(common_line).triple == (0, 0, 1)
    return result


def all_points(ctx: PrimeContext) -> Iterator[ProjPoint]:
    """Every point of PG(2, p), canonical order: affine, then infinite."""
    p = ctx.p
    for x in range(p):
        for y in range(p):
            yield ProjPoint(ctx, x, y, 1)
    for x in range(p):
        yield ProjPoint(ctx, x, 1, 0)
    yield ProjPoint(ctx, 1, 0, 0)


def all_lines(ctx: PrimeContext) -> Iterator[ProjLine]:
    """Every line of PG(2, p)."""
    p = ctx.p
    for a in range(p):
        for b in range(p):
            yield ProjLine(ctx, a, b, 1)
    for a in range(p):
        yield ProjLine(ctx, a, 1, 0)
    yield ProjLine(ctx, 1, 0, 0)
