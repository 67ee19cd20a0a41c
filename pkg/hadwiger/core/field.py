"""Exact arithmetic in Q(sqrt2, sqrt3) with certified sign decisions."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterator, Sequence, Union

LOGGER = logging.getLogger(__name__)

__all__ = [
    "FieldScalar",
    "RationalInterval",
    "SurdScalar",
    "ScalarLike",
    "field_arith",
    "field_sign",
    "field_enclosure",
    "format_rational",
    "parse_rational",
]

ScalarLike = Union["FieldScalar", Fraction, int]

# Radicands of the basis 1, sqrt2, sqrt3, sqrt6.
_RADICANDS = (1, 2, 3, 6)

# _PRODUCT[i][j] = (k, m): basis_i * basis_j = m * basis_k
_PRODUCT = (
    ((0, 1), (1, 1), (2, 1), (3, 1)),
    ((1, 1), (0, 2), (3, 1), (2, 2)),
    ((2, 1), (3, 1), (0, 3), (1, 3)),
    ((3, 1), (2, 2), (1, 3), (0, 6)),
)

_START_BITS = 64

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)
_SQRT6 = math.sqrt(6.0)


@lru_cache(maxsize=512)
def _root_floor(radicand: int, k: int) -> int:
    """floor(sqrt(radicand) * 2**k)."""

    return math.isqrt(radicand << (2 * k))


def _floor_div(num: int, den: int) -> int:
    return num // den


def _ceil_div(num: int, den: int) -> int:
    return -((-num) // den)


def format_rational(value: Fraction) -> str:
    """Render a reduced fraction, omitting ``/1`` for integers."""

    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(token: str) -> Fraction:
    """Parse ``p`` or ``p/q``; raises ``ValueError`` or ``ZeroDivisionError``."""

    text = token.strip()
    if "/" in text:
        num_text, den_text = text.split("/", 1)
        if not _is_integer(num_text) or not _is_integer(den_text):
            raise ValueError(f"not a rational: {token!r}")
        den = int(den_text)
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {token!r}")
        return Fraction(int(num_text), den)
    if not _is_integer(text):
        raise ValueError(f"not a rational: {token!r}")
    return Fraction(int(text))


def _is_integer(text: str) -> bool:
    body = text[1:] if text[:1] in "+-" else text
    return body.isdigit()


@dataclass(frozen=True, slots=True)
class RationalInterval:
    """Closed interval with rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: Fraction | int) -> "RationalInterval":
        value = Fraction(value)
        return cls(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, value: Fraction | int | float) -> bool:
        return self.lo <= value <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def __add__(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    def __neg__(self) -> "RationalInterval":
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other: "RationalInterval") -> "RationalInterval":
        return self + (-other)

    def __mul__(self, other: "RationalInterval") -> "RationalInterval":
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RationalInterval(min(products), max(products))

    def scale(self, factor: Fraction) -> "RationalInterval":
        if factor >= 0:
            return RationalInterval(self.lo * factor, self.hi * factor)
        return RationalInterval(self.hi * factor, self.lo * factor)

    def sqrt(self, k: int) -> "RationalInterval":
        """Enclose the square root of a nonnegative interval at ``2**-k`` resolution."""

        if self.lo < 0:
            raise ValueError("square root of an interval reaching below zero")
        scale = 1 << k
        lo_scaled = _floor_div(self.lo.numerator << (2 * k), self.lo.denominator)
        hi_scaled = _ceil_div(self.hi.numerator << (2 * k), self.hi.denominator)
        lo_root = math.isqrt(lo_scaled)
        hi_root = math.isqrt(hi_scaled)
        if hi_root * hi_root != hi_scaled:
            hi_root += 1
        return RationalInterval(Fraction(lo_root, scale), Fraction(hi_root, scale))


def _coerce(value: object) -> "FieldScalar | None":
    if isinstance(value, FieldScalar):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return FieldScalar(value)
    return None


@total_ordering
class FieldScalar:
    """Element a + b*sqrt2 + c*sqrt3 + d*sqrt6 with rational coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(
        self,
        a: Fraction | int = 0,
        b: Fraction | int = 0,
        c: Fraction | int = 0,
        d: Fraction | int = 0,
    ) -> None:
        self._coeffs: tuple[Fraction, Fraction, Fraction, Fraction] = (
            Fraction(a),
            Fraction(b),
            Fraction(c),
            Fraction(d),
        )

    @classmethod
    def _raw(cls, coeffs: Sequence[Fraction]) -> "FieldScalar":
        obj = cls.__new__(cls)
        obj._coeffs = (coeffs[0], coeffs[1], coeffs[2], coeffs[3])
        return obj

    @classmethod
    def from_text(cls, tokens: Sequence[str]) -> "FieldScalar":
        """Build from four rational tokens ``a b c d``."""

        if len(tokens) != 4:
            raise ValueError(f"expected four coefficients, got {len(tokens)}")
        return cls(*(parse_rational(token) for token in tokens))

    # Accessors -------------------------------------------------------------
    @property
    def a(self) -> Fraction:
        return self._coeffs[0]

    @property
    def b(self) -> Fraction:
        return self._coeffs[1]

    @property
    def c(self) -> Fraction:
        return self._coeffs[2]

    @property
    def d(self) -> Fraction:
        return self._coeffs[3]

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self._coeffs

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._coeffs)

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def is_rational(self) -> bool:
        return not (self._coeffs[1] or self._coeffs[2] or self._coeffs[3])

    # Ring operations ---------------------------------------------------------
    def __add__(self, other: object) -> "FieldScalar":
        rhs = _coerce(other)
        if rhs is None:
            return NotImplemented
        x, y = self._coeffs, rhs._coeffs
        return FieldScalar._raw((x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]))

    __radd__ = __add__

    def __sub__(self, other: object) -> "FieldScalar":
        rhs = _coerce(other)
        if rhs is None:
            return NotImplemented
        x, y = self._coeffs, rhs._coeffs
        return FieldScalar._raw((x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]))

    def __rsub__(self, other: object) -> "FieldScalar":
        lhs = _coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __neg__(self) -> "FieldScalar":
        x = self._coeffs
        return FieldScalar._raw((-x[0], -x[1], -x[2], -x[3]))

    def __pos__(self) -> "FieldScalar":
        return self

    def __mul__(self, other: object) -> "FieldScalar":
        rhs = _coerce(other)
        if rhs is None:
            return NotImplemented
        x, y = self._coeffs, rhs._coeffs
        if rhs.is_rational():
            k = y[0]
            return FieldScalar._raw((x[0] * k, x[1] * k, x[2] * k, x[3] * k))
        if self.is_rational():
            k = x[0]
            return FieldScalar._raw((y[0] * k, y[1] * k, y[2] * k, y[3] * k))
        out = [Fraction(0)] * 4
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = _PRODUCT[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                k, m = row[j]
                out[k] += m * xi * yj
        return FieldScalar._raw(out)

    __rmul__ = __mul__

    def conjugate2(self) -> "FieldScalar":
        """Image under sqrt2 -> -sqrt2."""

        x = self._coeffs
        return FieldScalar._raw((x[0], -x[1], x[2], -x[3]))

    def conjugate3(self) -> "FieldScalar":
        """Image under sqrt3 -> -sqrt3."""

        x = self._coeffs
        return FieldScalar._raw((x[0], x[1], -x[2], -x[3]))

    def inverse(self) -> "FieldScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(sqrt2, sqrt3)")
        if self.is_rational():
            return FieldScalar(1 / self._coeffs[0])
        # x * conj3(x) lies in Q(sqrt2); multiplying by its conjugate lands in Q.
        partial = self.conjugate3()
        norm_two = self * partial
        second = norm_two.conjugate2()
        norm = (norm_two * second).a
        return partial * second * FieldScalar(1 / norm)

    def __truediv__(self, other: object) -> "FieldScalar":
        rhs = _coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs.is_rational():
            if not rhs.a:
                raise ZeroDivisionError("division by zero in Q(sqrt2, sqrt3)")
            k = 1 / rhs.a
            x = self._coeffs
            return FieldScalar._raw((x[0] * k, x[1] * k, x[2] * k, x[3] * k))
        return self * rhs.inverse()

    def __rtruediv__(self, other: object) -> "FieldScalar":
        lhs = _coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs / self

    def square(self) -> "FieldScalar":
        return self * self

    # Comparison ------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        rhs = _coerce(other)
        if rhs is None:
            return NotImplemented
        return self._coeffs == rhs._coeffs

    def __lt__(self, other: object) -> bool:
        rhs = _coerce(other)
        if rhs is None:
            return NotImplemented
        return (self - rhs).sign() < 0

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self._coeffs[0])
        return hash(self._coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sign(self) -> int:
        return field_sign(self)

    def __abs__(self) -> "FieldScalar":
        return -self if self.sign() < 0 else self

    # Approximation -----------------------------------------------------------
    def enclosure(self, bits: int) -> RationalInterval:
        return field_enclosure(self, bits)

    def approx(self) -> float:
        """Plain float value; used only for rendering and candidate filtering."""

        a, b, c, d = self._coeffs
        return float(a) + float(b) * _SQRT2 + float(c) * _SQRT3 + float(d) * _SQRT6

    def __float__(self) -> float:
        return self.approx()

    def sqrt_exact(self) -> "FieldScalar | None":
        """Square root inside the field for rational radicands, else ``None``."""

        if not self.is_rational() or self.a < 0:
            return None
        value = self.a
        for index, radicand in enumerate(_RADICANDS):
            scaled = value * radicand
            num_root = math.isqrt(scaled.numerator)
            den_root = math.isqrt(scaled.denominator)
            if num_root * num_root != scaled.numerator or den_root * den_root != scaled.denominator:
                continue
            # sqrt(value) = sqrt(value * k) / sqrt(k) = root * sqrt(k) / k
            coeffs = [Fraction(0)] * 4
            coeffs[index] = Fraction(num_root, den_root) / radicand
            return FieldScalar._raw(coeffs)
        return None

    # Text ------------------------------------------------------------------
    def to_text(self) -> str:
        return " ".join(format_rational(value) for value in self._coeffs)

    def __repr__(self) -> str:
        return f"FieldScalar({self.to_text()})"

    def __str__(self) -> str:
        parts = []
        for value, radicand in zip(self._coeffs, _RADICANDS):
            if not value:
                continue
            text = format_rational(value)
            parts.append(text if radicand == 1 else f"{text}*sqrt{radicand}")
        return " + ".join(parts) if parts else "0"


FieldScalar.ZERO = FieldScalar(0)  # type: ignore[attr-defined]
FieldScalar.ONE = FieldScalar(1)  # type: ignore[attr-defined]


def _scaled_bounds(x: FieldScalar, k: int) -> tuple[int, int]:
    """Integers lo, hi with lo / 2**k <= x <= hi / 2**k."""

    lo = hi = 0
    for value, radicand in zip(x.coefficients, _RADICANDS):
        if not value:
            continue
        num, den = value.numerator, value.denominator
        if radicand == 1:
            scaled = num << k
            lo += _floor_div(scaled, den)
            hi += _ceil_div(scaled, den)
            continue
        root = _root_floor(radicand, k)
        exact = root * root == radicand << (2 * k)
        upper = root if exact else root + 1
        if num >= 0:
            lo += _floor_div(num * root, den)
            hi += _ceil_div(num * upper, den)
        else:
            lo += _floor_div(num * upper, den)
            hi += _ceil_div(num * root, den)
    return lo, hi


def field_enclosure(x: FieldScalar, bits: int) -> RationalInterval:
    """Interval containing ``x`` with width at most ``2**-bits``."""

    if bits < 1:
        raise ValueError("bits must be positive")
    if x.is_rational():
        return RationalInterval.point(x.a)
    weight = sum(abs(value) for value in x.coefficients) + 4
    k = bits + math.ceil(weight).bit_length()
    lo, hi = _scaled_bounds(x, k)
    scale = 1 << k
    return RationalInterval(Fraction(lo, scale), Fraction(hi, scale))


def field_sign(x: FieldScalar) -> int:
    """Sign of ``x``; zero is decided syntactically, the rest by refinement."""

    if x.is_zero():
        return 0
    if x.is_rational():
        return 1 if x.a > 0 else -1
    k = _START_BITS
    while True:
        lo, hi = _scaled_bounds(x, k)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        k *= 2
        LOGGER.debug("Refining sign of %s to %d bits", x, k)


def field_arith(x: FieldScalar, y: FieldScalar, op: str) -> FieldScalar:
    """Apply ``op`` in {add, sub, mul, neg}; ``neg`` ignores ``y``."""

    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    raise ValueError(f"unknown field operation {op!r}")


class SurdScalar:
    """Value p + q*sqrt(r) with p, q, r in the field and r >= 0.

    Points where a border meets a unit circle live here: the radicand is the
    discriminant of the intersection quadratic. Sums and products are only
    defined between values sharing the radicand (or without a surd part).
    """

    __slots__ = ("p", "q", "r")

    def __init__(self, p: FieldScalar, q: FieldScalar | None = None, r: FieldScalar | None = None) -> None:
        self.p = p
        self.q = q if q is not None else FieldScalar.ZERO  # type: ignore[attr-defined]
        self.r = r if r is not None else FieldScalar.ZERO  # type: ignore[attr-defined]

    @classmethod
    def lift(cls, value: "FieldScalar | SurdScalar") -> "SurdScalar":
        if isinstance(value, SurdScalar):
            return value
        return cls(value)

    def has_surd(self) -> bool:
        return not (self.q.is_zero() or self.r.is_zero())

    def _radicand_with(self, other: "SurdScalar") -> FieldScalar:
        if not other.has_surd():
            return self.r
        if not self.has_surd():
            return other.r
        if self.r != other.r:
            raise ValueError("surd values with different radicands do not combine exactly")
        return self.r

    def __add__(self, other: object) -> "SurdScalar":
        if isinstance(other, (FieldScalar, int, Fraction)):
            return SurdScalar(self.p + other, self.q, self.r)
        if not isinstance(other, SurdScalar):
            return NotImplemented
        radicand = self._radicand_with(other)
        return SurdScalar(self.p + other.p, self.q + other.q, radicand)

    __radd__ = __add__

    def __neg__(self) -> "SurdScalar":
        return SurdScalar(-self.p, -self.q, self.r)

    def __sub__(self, other: object) -> "SurdScalar":
        if isinstance(other, (FieldScalar, int, Fraction)):
            return SurdScalar(self.p - other, self.q, self.r)
        if not isinstance(other, SurdScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "SurdScalar":
        return (-self) + other

    def __mul__(self, other: object) -> "SurdScalar":
        if isinstance(other, (FieldScalar, int, Fraction)):
            return SurdScalar(self.p * other, self.q * other, self.r)
        if not isinstance(other, SurdScalar):
            return NotImplemented
        radicand = self._radicand_with(other)
        p = self.p * other.p + self.q * other.q * radicand
        q = self.p * other.q + self.q * other.p
        return SurdScalar(p, q, radicand)

    __rmul__ = __mul__

    def sign(self) -> int:
        """Exact sign, comparing squares when the two parts disagree."""

        sp = self.p.sign()
        if not self.has_surd():
            return sp
        sq = self.q.sign()
        if sp == 0:
            return sq
        if sp == sq:
            return sp
        diff = (self.p * self.p - self.q * self.q * self.r).sign()
        if diff > 0:
            return sp
        if diff < 0:
            return sq
        return 0

    def is_zero(self) -> bool:
        return self.sign() == 0

    def enclosure(self, bits: int) -> RationalInterval:
        """Interval of width at most ``2**-bits`` around the value."""

        if not self.has_surd():
            return field_enclosure(self.p, bits)
        k = bits + 4
        while True:
            radicand = field_enclosure(self.r, 2 * k)
            root = RationalInterval(max(radicand.lo, Fraction(0)), radicand.hi).sqrt(k + 2)
            box = field_enclosure(self.p, k + 2) + field_enclosure(self.q, k + 2) * root
            if box.width <= Fraction(1, 1 << bits):
                return box
            k *= 2

    def __float__(self) -> float:
        return float(self.enclosure(60).midpoint)

    def __repr__(self) -> str:
        if not self.has_surd():
            return f"SurdScalar({self.p})"
        return f"SurdScalar({self.p} + ({self.q})*sqrt({self.r}))"
