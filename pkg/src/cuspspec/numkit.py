"""Exact arithmetic for imaginary-quadratic orders, ideals and real quadratic surds.

Everything here is integer/Fraction exact; floating output only happens at the
edge, through certified conversions (`sqrt_fraction`, `QuadSurd.to_fraction`).
All values are immutable and safe to share between workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Iterator


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s, next_s = 1, 0
    t, next_t = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        s, next_s = next_s, s - q * next_s
        t, next_t = next_t, t - q * next_t
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, s, t = -g, -s, -t
    return g, s, t


def is_squarefree(n: int) -> bool:
    if n <= 0:
        return False
    if n % 4 == 0:
        return False
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


def sqrt_fraction(x: Fraction | int, bits: int = 128) -> tuple[Fraction, Fraction]:
    """Certified enclosure lo <= sqrt(x) <= hi with hi - lo <= 2**-bits (x >= 0)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of negative value")
    if x == 0:
        return Fraction(0), Fraction(0)
    num, den = x.numerator, x.denominator
    # sqrt(num/den) = sqrt(num*den)/den; floor integer sqrt at scale 2**bits
    scaled = num * den << (2 * bits)
    r = isqrt(scaled)
    lo = Fraction(r, den << bits)
    hi = Fraction(r + 1, den << bits)
    return lo, hi


def sqrt_to_float(x: Fraction | int) -> float:
    """Round-to-nearest-ish float of sqrt(x), via a 128-bit certified enclosure."""
    lo, hi = sqrt_fraction(x, 128)
    return float((lo + hi) / 2)


def log_fraction(x: Fraction) -> float:
    """log of a positive rational, safe far beyond float range."""
    if x <= 0:
        raise ValueError("log of nonpositive value")
    return math.log(x.numerator) - math.log(x.denominator)


# ---------------------------------------------------------------------------
# Orders Z + omega*Z in Q(i*sqrt(m))


@dataclass(frozen=True)
class OrderSpec:
    """Order Z + omega*Z in Q(i*sqrt(m)), omega = (omega_u + omega_v*i*sqrt(m))/2.

    omega must satisfy a monic integer quadratic, i.e. trace = omega_u is an
    integer (always) and norm = (omega_u**2 + m*omega_v**2)/4 must be integral.
    Im(omega) > 0 is required, so omega_v > 0.
    """

    m: int
    omega_u: int
    omega_v: int

    def __post_init__(self) -> None:
        if not is_squarefree(self.m):
            raise ValueError(f"m = {self.m} is not squarefree")
        if self.omega_v <= 0:
            raise ValueError("omega must have positive imaginary part")
        if (self.omega_u**2 + self.m * self.omega_v**2) % 4 != 0:
            raise ValueError("omega does not satisfy a monic integer quadratic")

    @classmethod
    def maximal(cls, m: int) -> "OrderSpec":
        """The maximal order: omega = (1+i*sqrt(m))/2 if m = 3 mod 4, else i*sqrt(m)."""
        if m % 4 == 3:
            return cls(m, 1, 1)
        return cls(m, 0, 2)

    @classmethod
    def with_omega(cls, m: int, omega_u: int, omega_v: int) -> "OrderSpec":
        return cls(m, omega_u, omega_v)

    @property
    def trace_omega(self) -> int:
        return self.omega_u

    @property
    def norm_omega(self) -> int:
        return (self.omega_u**2 + self.m * self.omega_v**2) // 4

    @property
    def is_maximal(self) -> bool:
        # discriminant of Z+omega*Z is -m*omega_v**2; field disc is -m or -4m
        disc = self.m * self.omega_v**2
        return disc == (self.m if self.m % 4 == 3 else 4 * self.m)

    def omega_complex(self) -> complex:
        return _omega_complex(self.m, self.omega_u, self.omega_v)

    def im_omega(self) -> float:
        return self.omega_v * math.sqrt(self.m) / 2

    def one(self) -> "QuadInt":
        return QuadInt(1, 0, self)

    def zero(self) -> "QuadInt":
        return QuadInt(0, 0, self)

    def omega(self) -> "QuadInt":
        return QuadInt(0, 1, self)

    def units(self) -> tuple["QuadInt", ...]:
        """All norm-1 elements; 2, 4 or 6 of them depending on the order."""
        return _order_units(self)


@lru_cache(maxsize=None)
def _omega_complex(m: int, u: int, v: int) -> complex:
    return complex(u / 2, v * math.sqrt(m) / 2)


@lru_cache(maxsize=None)
def _order_units(order: OrderSpec) -> tuple["QuadInt", ...]:
    out = []
    for a in range(-3, 4):
        for b in range(-2, 3):
            if (a, b) != (0, 0) and QuadInt(a, b, order).norm() == 1:
                out.append(QuadInt(a, b, order))
    return tuple(out)


@dataclass(frozen=True)
class QuadInt:
    """Element a + b*omega of an order, with exact integer coefficients."""

    a: int
    b: int
    order: OrderSpec

    def _check(self, other: "QuadInt") -> None:
        if self.order != other.order:
            raise ValueError("mixed orders")

    def __add__(self, other: "QuadInt") -> "QuadInt":
        self._check(other)
        return QuadInt(self.a + other.a, self.b + other.b, self.order)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        self._check(other)
        return QuadInt(self.a - other.a, self.b - other.b, self.order)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.a, -self.b, self.order)

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadInt(self.a * other, self.b * other, self.order)
        self._check(other)
        t, n = self.order.trace_omega, self.order.norm_omega
        # (a + b*w)(c + d*w) with w**2 = t*w - n
        a, b, c, d = self.a, self.b, other.a, other.b
        return QuadInt(a * c - b * d * n, a * d + b * c + b * d * t, self.order)

    __rmul__ = __mul__

    def conj(self) -> "QuadInt":
        t = self.order.trace_omega
        return QuadInt(self.a + self.b * t, -self.b, self.order)

    def norm(self) -> int:
        t, n = self.order.trace_omega, self.order.norm_omega
        return self.a**2 + self.a * self.b * t + self.b**2 * n

    def trace(self) -> int:
        """x + conj(x) = 2*Re(x), always a rational integer."""
        return 2 * self.a + self.b * self.order.trace_omega

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def to_complex(self) -> complex:
        return complex(self.a) + self.b * self.order.omega_complex()

    def coords(self) -> tuple[int, int]:
        return self.a, self.b

    def __str__(self) -> str:
        return format_quadint(self)

    def abs2(self) -> int:
        """Squared Euclidean length of the embedding; equals the norm."""
        return self.norm()


def quad_norm(x: QuadInt) -> int:
    """x * conj(x) as an exact nonnegative integer."""
    return x.norm()


def format_quadint(x: QuadInt) -> str:
    return f"{x.a}{x.b:+d}*w"


def parse_quadint(text: str, order: OrderSpec) -> QuadInt:
    """Parse 'a+b*w' / 'a-b*w' / bare integer 'a' into a QuadInt."""
    s = text.strip().replace(" ", "")
    if "w" not in s:
        return QuadInt(int(s), 0, order)
    head, _, _ = s.partition("w")
    head = head.rstrip("*")
    # split head into integer part and coefficient of w
    for i in range(len(head) - 1, 0, -1):
        if head[i] in "+-" and head[i - 1] not in "+-":
            a_part, b_part = head[:i], head[i:]
            break
    else:
        a_part, b_part = "0", head or "+1"
    if b_part in ("", "+", "-"):
        b_part += "1"
    return QuadInt(int(a_part), int(b_part), order)


# ---------------------------------------------------------------------------
# Ideals via 2-dimensional Hermite normal form

def hnf2(rows: Iterable[tuple[int, int]]) -> tuple[int, int, int]:
    """Lower-triangular HNF basis (a, 0), (b, c) of the Z-span of `rows`.

    Requires full rank; returns a > 0, c > 0, 0 <= b < a.
    """
    ints: list[int] = []
    b = c = 0
    for x, y in rows:
        if x == 0 and y == 0:
            continue
        if y == 0:
            ints.append(x)
            continue
        if c == 0:
            b, c = x, y
            continue
        g, s, t = xgcd(c, y)
        ints.append((y // g) * b - (c // g) * x)
        b, c = s * b + t * x, g
    if c < 0:
        b, c = -b, -c
    a = 0
    for x in ints:
        a = gcd(a, x)
    if a == 0 or c == 0:
        raise ValueError("lattice does not have full rank")
    return a, b % a, c


@dataclass(frozen=True)
class IdealSpec:
    """Nonzero ideal of an order, held as generators plus a cached HNF Z-basis.

    The basis rows are (a, 0) and (b, c) in coordinates over (1, omega); the
    ideal's index in the order is a*c, and membership tests are two divisions.
    """

    generators: tuple[QuadInt, ...]
    basis_a: int
    basis_b: int
    basis_c: int

    @classmethod
    def from_generators(cls, gens: Iterable[QuadInt]) -> "IdealSpec":
        gens = tuple(gens)
        if not gens or all(g.is_zero() for g in gens):
            raise ValueError("zero ideal")
        order = gens[0].order
        omega = order.omega()
        rows = []
        for g in gens:
            rows.append(g.coords())
            rows.append((omega * g).coords())
        a, b, c = hnf2(rows)
        return cls(gens, a, b, c)

    @property
    def order(self) -> OrderSpec:
        return self.generators[0].order

    def contains(self, x: QuadInt) -> bool:
        if x.order != self.order:
            raise ValueError("mixed orders")
        if x.b % self.basis_c != 0:
            return False
        return (x.a - (x.b // self.basis_c) * self.basis_b) % self.basis_a == 0

    def index(self) -> int:
        """[order : ideal]; equals the ideal norm."""
        return self.basis_a * self.basis_c

    def is_unit_ideal(self) -> bool:
        return self.index() == 1

    def basis_elements(self) -> tuple[QuadInt, QuadInt]:
        return (
            QuadInt(self.basis_a, 0, self.order),
            QuadInt(self.basis_b, self.basis_c, self.order),
        )

    def __str__(self) -> str:
        return "<" + ",".join(format_quadint(g) for g in self.generators) + ">"


def ideal_contains(ideal: IdealSpec, x: QuadInt) -> bool:
    """Exact membership test against the cached HNF basis."""
    return ideal.contains(x)


def ideal_is_unit(gens: Iterable[QuadInt]) -> bool:
    """True iff the ideal generated by `gens` is the whole order."""
    return IdealSpec.from_generators(gens).is_unit_ideal()


@lru_cache(maxsize=None)
def unit_ideal(order: OrderSpec) -> IdealSpec:
    return IdealSpec.from_generators((order.one(),))


# ---------------------------------------------------------------------------
# Lattice point enumeration (ideal elements as points of the complex plane)

def ideal_elements_with_norm_up_to(ideal: IdealSpec, bound: int) -> Iterator[QuadInt]:
    """All nonzero x in the ideal with norm(x) <= bound.

    Deterministic order: by norm, then by (b, a) coordinates.
    """
    if bound < 1:
        return
    order = ideal.order
    t, m, v = order.trace_omega, order.m, order.omega_v
    # norm(x + y*w) = (x + y*t/2)**2 + y**2 * m * v**2 / 4
    s2 = Fraction(m * v * v, 4)  # Im(omega)**2
    a0, b0, c0 = ideal.basis_a, ideal.basis_b, ideal.basis_c
    out: list[tuple[int, int, int, QuadInt]] = []
    ymax = isqrt(int(Fraction(bound) / s2))
    for yy in range(-ymax, ymax + 1):
        if yy % c0 != 0:
            continue
        rem = Fraction(bound) - s2 * yy * yy
        if rem < 0:
            continue
        half, _ = sqrt_fraction(rem, 64)
        center = -Fraction(yy * t, 2)
        xlo = math.ceil(center - half - Fraction(1, 2**32))
        xhi = math.floor(center + half + Fraction(1, 2**32))
        res = ((yy // c0) * b0) % a0
        start = xlo + ((res - xlo) % a0)
        for xx in range(start, xhi + 1, a0):
            if xx == 0 and yy == 0:
                continue
            q = QuadInt(xx, yy, order)
            n = q.norm()
            if n <= bound:
                out.append((n, yy, xx, q))
    out.sort(key=lambda r: r[:3])
    for _, _, _, q in out:
        yield q


def lattice_points_in_disc(
    ideal: IdealSpec, center: complex, radius: float
) -> list[QuadInt]:
    """Ideal elements x with |embed(x) - center| <= radius (float-certified outward)."""
    order = ideal.order
    t = order.trace_omega
    im_w = order.im_omega()
    a0, b0, c0 = ideal.basis_a, ideal.basis_b, ideal.basis_c
    out = []
    pad = 1e-9 * (1.0 + abs(center) + radius)
    y_lo = math.ceil((center.imag - radius) / im_w - 1e-9)
    y_hi = math.floor((center.imag + radius) / im_w + 1e-9)
    for yy in range(y_lo, y_hi + 1):
        if yy % c0 != 0:
            continue
        dy = center.imag - yy * im_w
        rem = radius * radius - dy * dy
        if rem < -pad:
            continue
        half = math.sqrt(max(rem, 0.0)) + pad
        cx = center.real - yy * t / 2
        res = ((yy // c0) * b0) % a0
        xlo = math.ceil(cx - half)
        start = xlo + ((res - xlo) % a0)
        for xx in range(start, math.floor(cx + half) + 1, a0):
            out.append(QuadInt(xx, yy, order))
    return out


def nearest_order_elements(order: OrderSpec, z: complex) -> list[QuadInt]:
    """Candidates containing the nearest lattice point to z.

    Rectangular lattices (trace of omega zero) round coordinatewise, which is
    exactly the nearest point; the skew bases (1, (1+i*sqrt(m))/2) fall back to
    the 3x3 coordinate neighbourhood, which always contains it.
    """
    t = order.trace_omega
    im_w = order.im_omega()
    y = z.imag / im_w
    x = z.real - y * t / 2
    x0, y0 = round(x), round(y)
    if t == 0:
        return [QuadInt(x0, y0, order)]
    return [
        QuadInt(x0 + dx, y0 + dy, order)
        for dy in (-1, 0, 1)
        for dx in (-1, 0, 1)
    ]


# ---------------------------------------------------------------------------
# Euclidean division / gcd (norm-Euclidean orders only)

_NORM_EUCLIDEAN_M = {1, 2, 3, 7, 11}


def quad_divmod(x: QuadInt, y: QuadInt) -> tuple[QuadInt, QuadInt]:
    """q, r with x = q*y + r and norm(r) < norm(y).

    The quotient is the lattice point nearest to x/y in the embedding, found
    in the floor-neighbourhood of the rational coordinates (norm-Euclidean
    orders guarantee a remainder of smaller norm there).
    """
    if y.is_zero():
        raise ZeroDivisionError("division by zero element")
    order = x.order
    ny = y.norm()
    xc = x * y.conj()  # x/y scaled by ny
    fa, fb = xc.a // ny, xc.b // ny
    best: tuple[int, QuadInt, QuadInt] | None = None
    for da in (0, 1, -1, 2):
        for db in (0, 1, -1, 2):
            q = QuadInt(fa + da, fb + db, order)
            r = x - q * y
            nr = r.norm()
            if best is None or nr < best[0]:
                best = (nr, q, r)
    nr, q, r = best
    if nr >= ny:
        raise ArithmeticError(
            f"euclidean division failed (order m={order.m} not norm-euclidean?)"
        )
    return q, r


def quad_xgcd(x: QuadInt, y: QuadInt) -> tuple[QuadInt, QuadInt, QuadInt]:
    """g, s, t with s*x + t*y = g and <g> = <x, y>; needs a norm-Euclidean order."""
    order = x.order
    if order.m not in _NORM_EUCLIDEAN_M or not order.is_maximal:
        raise ValueError("exact gcd implemented for maximal norm-euclidean orders only")
    one, zero = order.one(), order.zero()
    s, next_s = one, zero
    t, next_t = zero, one
    g, next_g = x, y
    while not next_g.is_zero():
        q, r = quad_divmod(g, next_g)
        s, next_s = next_s, s - q * next_s
        t, next_t = next_t, t - q * next_t
        g, next_g = next_g, r
    return g, s, t


# ---------------------------------------------------------------------------
# Real quadratic surds p + q*sqrt(d)

@lru_cache(maxsize=8192)
def _square_part(d: int) -> tuple[int, int]:
    """d = d0 * f**2 with f collecting square factors; returns (d0, f).

    Prime square factors are removed up to 1000, then a perfect-square
    cofactor is folded entirely; this canonicalizes every discriminant met at
    desk scale without factoring large integers.
    """
    d0, f = d, 1
    p = 2
    while p <= 1000 and p * p <= d0:
        while d0 % (p * p) == 0:
            d0 //= p * p
            f *= p
        p += 1 if p == 2 else 2
    r = isqrt(d0)
    if r * r == d0:
        d0, f = 1, f * r
    return d0, f


def _normalize_surd(p: Fraction, q: Fraction, d: int) -> tuple[Fraction, Fraction, int]:
    if d < 0:
        raise ValueError("surd discriminant must be nonnegative")
    if q == 0 or d == 0:
        return p, Fraction(0), 0
    d0, f = _square_part(d)
    if d0 == 1:
        return p + q * f, Fraction(0), 0
    return p, q * f, d0


@dataclass(frozen=True)
class QuadSurd:
    """Exact real number p + q*sqrt(d) with p, q rational, d a nonsquare >= 0.

    Arithmetic stays within one Q(sqrt(d)); comparisons, floor and sign are
    exact (no floating point), so continued-fraction expansion of these values
    terminates on true period detection.
    """

    p: Fraction
    q: Fraction
    d: int

    @classmethod
    def make(cls, p, q=0, d: int = 0) -> "QuadSurd":
        return cls(*_normalize_surd(Fraction(p), Fraction(q), d))

    @classmethod
    def sqrt_int(cls, n: int) -> "QuadSurd":
        return cls.make(0, 1, n)

    def is_rational(self) -> bool:
        return self.q == 0

    def conj(self) -> "QuadSurd":
        return QuadSurd(self.p, -self.q, self.d)

    def _same_field(self, other: "QuadSurd") -> int:
        if self.d and other.d and self.d != other.d:
            raise ValueError("mixed quadratic fields")
        return self.d or other.d

    def __add__(self, other):
        other = _as_surd(other)
        d = self._same_field(other)
        return QuadSurd.make(self.p + other.p, self.q + other.q, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_surd(other)
        d = self._same_field(other)
        return QuadSurd.make(self.p - other.p, self.q - other.q, d)

    def __rsub__(self, other):
        return _as_surd(other).__sub__(self)

    def __neg__(self):
        return QuadSurd(-self.p, -self.q, self.d)

    def __mul__(self, other):
        other = _as_surd(other)
        d = self._same_field(other)
        return QuadSurd.make(
            self.p * other.p + self.q * other.q * d,
            self.p * other.q + self.q * other.p,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadSurd":
        n = self.p * self.p - self.q * self.q * self.d
        if n == 0:
            raise ZeroDivisionError("inverse of zero surd")
        return QuadSurd.make(self.p / n, -self.q / n, self.d)

    def __truediv__(self, other):
        return self * _as_surd(other).inverse()

    def __rtruediv__(self, other):
        return _as_surd(other) * self.inverse()

    def sign(self) -> int:
        if self.q == 0:
            return 0 if self.p == 0 else (1 if self.p > 0 else -1)
        if self.p == 0:
            return 1 if self.q > 0 else -1
        sp = 1 if self.p > 0 else -1
        sq = 1 if self.q > 0 else -1
        if sp == sq:
            return sp
        # sign of p + q*sqrt(d) with p, q of opposite signs
        lhs = self.p * self.p
        rhs = self.q * self.q * self.d
        if lhs == rhs:
            return 0
        return sp if lhs > rhs else sq

    def __lt__(self, other) -> bool:
        return (self - _as_surd(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - _as_surd(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - _as_surd(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - _as_surd(other)).sign() >= 0

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def bounds(self, bits: int = 128) -> tuple[Fraction, Fraction]:
        """Certified rational enclosure of the value."""
        if self.q == 0:
            return self.p, self.p
        lo, hi = sqrt_fraction(self.d, bits)
        if self.q > 0:
            return self.p + self.q * lo, self.p + self.q * hi
        return self.p + self.q * hi, self.p + self.q * lo

    def to_fraction(self, bits: int = 128) -> Fraction:
        lo, hi = self.bounds(bits)
        return (lo + hi) / 2

    def __float__(self) -> float:
        return float(self.to_fraction(96))

    def floor(self) -> int:
        if self.q == 0:
            return math.floor(self.p)
        bits = 64
        while True:
            lo, hi = self.bounds(bits)
            flo, fhi = math.floor(lo), math.floor(hi)
            if flo == fhi:
                return flo
            bits *= 2
            if bits > 1 << 16:  # unreachable for irrational values
                raise ArithmeticError("floor did not stabilize")

    def __str__(self) -> str:
        if self.q == 0:
            return str(self.p)
        return f"{self.p}{'+' if self.q >= 0 else '-'}{abs(self.q)}*sqrt({self.d})"


def _as_surd(x) -> QuadSurd:
    if isinstance(x, QuadSurd):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadSurd.make(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to QuadSurd")


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class ExactComplex:
    """Complex number with exact real-quadratic components re + im*i.

    Supports the boundary points needed here: elements of Q(sqrt(r)) + i*Q(sqrt(r))
    for one auxiliary root r, e.g. (1 + i*sqrt(3))/2 or sqrt(2) + i/3.
    """

    re: QuadSurd
    im: QuadSurd

    @classmethod
    def make(cls, re, im=0) -> "ExactComplex":
        return cls(_as_surd(re), _as_surd(im))

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __add__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, other: "ExactComplex") -> "ExactComplex":
        return ExactComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conj(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def inverse(self) -> "ExactComplex":
        n = self.re * self.re + self.im * self.im
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return ExactComplex(self.re / n, -self.im / n)

    def __truediv__(self, other: "ExactComplex") -> "ExactComplex":
        return self * other.inverse()

    def is_in_quadratic_field(self, m: int) -> bool:
        """Exact membership test for Q(i*sqrt(m)) (the parabolic points)."""
        if not self.re.is_rational():
            return False
        im = self.im
        if im.q == 0:
            # rational imaginary part: in the field only if zero (m > 1) or m = 1
            return im.p == 0 or m == 1
        # im = q*sqrt(d) needs q*sqrt(d) in Q*sqrt(m), i.e. d*m a perfect square
        return im.p == 0 and is_perfect_square(im.d * m)

    def __str__(self) -> str:
        return f"({self.re}) + ({self.im})*i"
