"""Exact arithmetic in F_p with validated prime moduli and canonical residues."""

from __future__ import annotations

from typing import Iterable, Union

# Witness set is deterministic for every n below 3.3e24, far above MAX_PRIME.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Cap keeps (p-1)^2 comfortably inside a machine double-word and keeps the
# Miller-Rabin witness set deterministic.
MAX_PRIME = (1 << 31) - 1


class ContextMismatchError(ValueError):
    """Two elements from different prime contexts met in one operation."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin test, exact for all n <= MAX_PRIME."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeContext:
    """A validated prime modulus; all residues live in [0, p)."""

    __slots__ = ("p", "_inverses")

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError(f"modulus must be an int, got {type(p).__name__}")
        if p > MAX_PRIME:
            raise ValueError(f"modulus {p} exceeds supported bound {MAX_PRIME}")
        if p < 2 or not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self._inverses = None

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value, self)

    def elements(self, values: Iterable[int]) -> frozenset:
        return frozenset(FieldElement(v, self) for v in values)

    def inv(self, value: int) -> int:
        """Inverse of a nonzero residue; table-backed for small p."""
        value %= self.p
        if value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        if self.p <= 4096:
            if self._inverses is None:
                self._inverses = [0] + [pow(v, -1, self.p) for v in range(1, self.p)]
            return self._inverses[value]
        return pow(value, -1, self.p)

    def __eq__(self, other):
        if isinstance(other, PrimeContext):
            return self.p == other.p
        return NotImplemented

    def __hash__(self):
        return hash(("PrimeContext", self.p))

    def __repr__(self):
        return f"PrimeContext({self.p})"


class FieldElement:
    """Canonical residue mod p. Arithmetic is exact; ints coerce on the fly."""

    __slots__ = ("value", "ctx")

    def __init__(self, value: int, ctx: PrimeContext):
        self.value = value % ctx.p
        self.ctx = ctx

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.ctx.p != self.ctx.p:
                raise ContextMismatchError(
                    f"mixed moduli {self.ctx.p} and {other.ctx.p}"
                )
            return other
        if isinstance(other, int):
            return FieldElement(other, self.ctx)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value + other.value, self.ctx)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value - other.value, self.ctx)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * other.value, self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * self.ctx.inv(other.value), self.ctx)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return FieldElement(-self.value, self.ctx)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return FieldElement(
                pow(self.ctx.inv(self.value), -exponent, self.ctx.p), self.ctx
            )
        return FieldElement(pow(self.value, exponent, self.ctx.p), self.ctx)

    def inv(self) -> "FieldElement":
        return FieldElement(self.ctx.inv(self.value), self.ctx)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx.p == other.ctx.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.ctx.p))

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.value < other.value

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.ctx.p})"


OpName = Union[str]

_OP_ALIASES = {
    "add": "+",
    "sub": "-",
    "mul": "*",
    "+": "+",
    "-": "-",
    "*": "*",
}


def field_op(op: str, a: FieldElement, b: FieldElement) -> FieldElement:
    """Dispatch add/sub/mul by name; raises on mismatched contexts."""
    try:
        token = _OP_ALIASES[op]
    except KeyError:
        raise ValueError(f"unknown field operation {op!r}") from None
    if token == "+":
        return a + b
    if token == "-":
        return a - b
    return a * b
