"""Upper half-plane/space geometry, normalized to the cusp at infinity.

Normalization used throughout: the precisely invariant horoball is the set of
points of Euclidean height >= 1, so the Busemann height of a model point
(z, h) is exactly log h, and all heights/penetrations are relative to that
horoball.

The orbit computations never trust floating point where it matters: the
per-point orbit supremum is an exact positive-definite lattice minimum, closed
geodesic heights over exact endpoints go through the reduction cycle of an
integral indefinite form, and cusp-excursion peaks are evaluated with exact
quadratic surds before taking logs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import DomainError, NotInGroupError, RationalInputError
from .numkit import (
    OrderSpec,
    QuadInt,
    QuadSurd,
    log_fraction,
    nearest_order_elements,
)
from .spectra import EstimatorTrace, build_trace


@dataclass(frozen=True)
class ModelPoint:
    """Point of the upper half-plane (real horizontal) or half-space (complex)."""

    horizontal: complex
    height: float

    def __post_init__(self) -> None:
        if not self.height > 0:
            raise DomainError("model point needs positive height")

    @property
    def z(self) -> complex:
        return complex(self.horizontal)


@dataclass(frozen=True)
class GeodesicSpec:
    """Geodesic by its boundary endpoints; None stands for the cusp at infinity.

    `time_zero_at_height_one` records the parametrization convention used for
    excursions: time 0 is the first crossing of the unit-height horosphere.
    """

    start: complex | QuadSurd | None
    end: complex | QuadSurd | None
    time_zero_at_height_one: bool = True

    def __post_init__(self) -> None:
        if self.start is None and self.end is None:
            raise DomainError("geodesic endpoints must be distinct")
        if self.start is not None and self.end is not None:
            s, e = complex(float_of(self.start)), complex(float_of(self.end))
            if abs(s - e) == 0:
                raise DomainError("geodesic endpoints must be distinct")


def float_of(x) -> complex:
    if isinstance(x, QuadSurd):
        return complex(float(x))
    return complex(x)


def busemann_height(p: ModelPoint) -> float:
    """Busemann height relative to the horoball {height >= 1}: log of the height."""
    return math.log(p.height)


def hyp_distance(p: ModelPoint, q: ModelPoint) -> float:
    """Hyperbolic distance in the upper half model."""
    dz = abs(p.z - q.z)
    dh = p.height - q.height
    arg = 1.0 + (dz * dz + dh * dh) / (2.0 * p.height * q.height)
    return math.acosh(arg)


# ---------------------------------------------------------------------------
# Moebius transformations

def _is_exact_entry(v) -> bool:
    return isinstance(v, (int, Fraction, QuadInt))


@dataclass(frozen=True)
class Mobius:
    """Matrix [[a, b], [c, d]] with determinant 1 acting on the upper half model.

    Entries may be exact (int, Fraction, QuadInt) or floating (float/complex);
    exact entries get an exact determinant check, floating ones a 1e-12 one.
    """

    a: object
    b: object
    c: object
    d: object

    def __post_init__(self) -> None:
        det = self.det()
        if isinstance(det, QuadInt):
            ok = det.a == 1 and det.b == 0
        elif isinstance(det, (int, Fraction)):
            ok = det == 1
        else:
            ok = abs(det - 1.0) <= 1e-12
        if not ok:
            raise NotInGroupError(f"determinant is {det}, not 1")

    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def is_exact(self) -> bool:
        return all(_is_exact_entry(v) for v in (self.a, self.b, self.c, self.d))

    def entries_complex(self) -> tuple[complex, complex, complex, complex]:
        def conv(v) -> complex:
            if isinstance(v, QuadInt):
                return v.to_complex()
            if isinstance(v, Fraction):
                return complex(float(v))
            return complex(v)

        return conv(self.a), conv(self.b), conv(self.c), conv(self.d)

    def compose(self, other: "Mobius") -> "Mobius":
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return Mobius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    __matmul__ = compose

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def trace(self):
        return self.a + self.d

    def apply_boundary(self, z: complex | None) -> complex | None:
        a, b, c, d = self.entries_complex()
        if z is None:
            return None if c == 0 else a / c
        num, den = a * z + b, c * z + d
        if den == 0:
            return None
        return num / den

    def apply_point(self, p: ModelPoint) -> ModelPoint:
        a, b, c, d = self.entries_complex()
        z, h = p.z, p.height
        w = c * z + d
        denom = abs(w) ** 2 + abs(c) ** 2 * h * h
        new_h = h / denom
        new_z = ((a * z + b) * w.conjugate() + a * c.conjugate() * h * h) / denom
        return ModelPoint(new_z, new_h)


# ---------------------------------------------------------------------------
# Orbit height over a cusp group (exact certificates via tail bounds)

@dataclass(frozen=True)
class OrbitHeight:
    value: float
    certified: bool
    witness: str


def quotient_height(p: ModelPoint, group="psl2z", cutoff: int = 200) -> OrbitHeight:
    """sup of the Busemann height over the orbit of p.

    The supremum of log(h / (|c z + d|**2 + |c|**2 h**2)) over group rows
    (c, d).  Rows with |c|**2 h**2 >= current minimum cannot improve, which
    certifies the result once the enumeration passes that bound; otherwise the
    result is flagged uncertified.
    """
    if group == "trivial":
        return OrbitHeight(busemann_height(p), True, "identity")
    if group == "psl2z":
        return _quotient_height_real(p, cutoff)
    return _quotient_height_rows(p, group, cutoff)


def _quotient_height_real(p: ModelPoint, cutoff: int) -> OrbitHeight:
    z, h = p.z, p.height
    if abs(z.imag) > 1e-12:
        raise DomainError("psl2z acts on the upper half-plane: real horizontal only")
    x = z.real
    best, wit = 1.0, (0, 1)
    certified = False
    for c in range(1, cutoff + 1):
        ch2 = c * c * h * h
        if ch2 >= best:
            certified = True
            break
        rad = math.sqrt(best - ch2)
        for d in range(math.ceil(-c * x - rad), math.floor(-c * x + rad) + 1):
            if gcd(c, abs(d)) != 1:
                continue
            t = c * x + d
            val = t * t + ch2
            if val < best:
                best, wit = val, (c, d)
    if not certified:
        certified = (cutoff + 1) ** 2 * h * h >= best
    return OrbitHeight(math.log(h) - math.log(best), certified, f"row{wit}")


def _quotient_height_rows(p: ModelPoint, provider, cutoff: int) -> OrbitHeight:
    """Bianchi-style enumeration: c runs over an ideal, d over the order."""
    z, h = p.z, p.height
    best, wit = 1.0, "row(0,1)"
    certified = False
    for c in provider.c_candidates(cutoff):
        nc = c.norm()
        ch2 = nc * h * h
        if ch2 >= best:
            certified = True
            break
        cz = c.to_complex() * z
        rad = math.sqrt(best - ch2)
        for d in provider.d_candidates(-cz, rad):
            if not provider.coprime(c, d):
                continue
            val = abs(cz + d.to_complex()) ** 2 + ch2
            if val < best:
                best, wit = val, f"row({c},{d})"
    if not certified:
        certified = (cutoff + 1) * h * h >= best
    return OrbitHeight(math.log(h) - math.log(best), certified, wit)


# ---------------------------------------------------------------------------
# Horoball penetration

def horoball_penetration(gamma: Mobius) -> float:
    """Hyperbolic distance between {height >= 1} and its image horoball.

    The image is the Euclidean ball tangent to the boundary at gamma(inf); its
    top is the image of the highest-reachable point on the unit horosphere,
    found by minimizing |c z + d|**2 + |c|**2 over z.  The distance is the
    length of the vertical segment between the ball top and height 1.
    """
    a, b, c, d = gamma.entries_complex()
    if c == 0:
        raise DomainError("parabolic/upper-triangular: same horoball")
    nc = abs(c) ** 2
    if nc < 1.0 - 1e-12:
        raise DomainError("|c| < 1: horoball not precisely invariant here")
    z_star = -d / c
    top = 1.0 / (abs(c * z_star + d) ** 2 + nc)
    if top > 1.0:
        top = 1.0
    return -math.log(top)


def penetration_depth(q) -> float:
    """Depth 2 log|q| of the cusp-to-cusp geodesic with denominator q.

    Cross-checked against `horoball_penetration` of any group element whose
    lower-left entry is q.
    """
    if isinstance(q, QuadInt):
        n = q.norm()
    else:
        n = int(q) * int(q)
    if n == 0:
        raise DomainError("zero denominator")
    return math.log(n)


# ---------------------------------------------------------------------------
# Cuspidal distance (minimum over the cusp stabilizer)

@dataclass(frozen=True)
class TranslationGroup:
    """Stabilizer of infinity acting on the boundary: u**2-rotations + lattice."""

    order: OrderSpec | None  # None: integer translations on the real line
    twists: tuple[complex, ...]

    @classmethod
    def real_line(cls) -> "TranslationGroup":
        return cls(None, (1.0 + 0.0j,))

    @classmethod
    def from_order(cls, order: OrderSpec) -> "TranslationGroup":
        tw = []
        for u in order.units():
            sq = (u * u).to_complex()
            if not any(abs(sq - t) < 1e-12 for t in tw):
                tw.append(sq)
        return cls(order, tuple(tw))


def cuspidal_distance(u, v, stabilizer: TranslationGroup | None = None) -> float:
    """min over the cusp stabilizer of the Euclidean distance |u - gamma(v)|.

    The 3x3 lattice neighbourhood around the coordinate rounding always
    contains the nearest lattice translate, so the minimum is certified.
    """
    if stabilizer is None:
        stabilizer = TranslationGroup.real_line()
    if stabilizer.order is None:
        x = float(u.real if isinstance(u, complex) else u)
        y = float(v.real if isinstance(v, complex) else v)
        w = x - y
        return abs(w - round(w))
    best = math.inf
    zu, zv = complex(u), complex(v)
    for eps in stabilizer.twists:
        w = zu - eps * zv
        for lam in nearest_order_elements(stabilizer.order, w):
            best = min(best, abs(w - lam.to_complex()))
    return best


# ---------------------------------------------------------------------------
# Minimum of an integral indefinite binary quadratic form (reduction cycle)

def indefinite_form_minimum(
    a: int, b: int, c: int, max_steps: int = 200000, with_witness: bool = False
):
    """min over nonzero integer pairs of |a x**2 + b x y + c y**2|, exactly.

    Requires positive nonsquare discriminant (the form represents no zeros).
    Walks the reduction cycle; the minimum equals the smallest |leading
    coefficient| over the cycle.  With `with_witness` the explicit integer pair
    attaining the minimum is returned as well (tracked through the change of
    basis, so it may be large).
    """
    disc = b * b - 4 * a * c
    if disc <= 0:
        raise ValueError("form must be indefinite")
    r = isqrt(disc)
    if r * r == disc:
        raise ValueError("square discriminant: form represents zero")

    def reduced(f: tuple[int, int, int]) -> bool:
        fa, fb, _ = f
        if fb <= 0 or fb * fb >= disc:
            return False
        t = 2 * abs(fa)
        if disc >= (t + fb) ** 2:
            return False
        if t > fb and (t - fb) ** 2 >= disc:
            return False
        return True

    def step(f, m):
        _, fb, fc = f
        m2 = 2 * abs(fc)
        bp = (-fb) % m2
        if abs(fc) > r:
            if bp > abs(fc):
                bp -= m2
        else:
            bp += ((r - bp) // m2) * m2
        s = (bp + fb) // (2 * fc)
        # composing with (x, y) -> (-y, x + s y) sends the form to (fc, bp, *)
        m = (m[1], s * m[1] - m[0], m[3], s * m[3] - m[2])
        return (fc, bp, (bp * bp - disc) // (4 * fc)), m

    f = (a, b, c)
    m = (1, 0, 0, 1)  # columns are the f-coordinates of the current basis
    for _ in range(max_steps):
        if reduced(f):
            break
        f, m = step(f, m)
    else:
        raise ArithmeticError("form reduction did not terminate")
    start = f
    best, wit = abs(f[0]), (m[0], m[2])
    for _ in range(max_steps):
        f, m = step(f, m)
        if abs(f[0]) < best:
            best, wit = abs(f[0]), (m[0], m[2])
        if f == start:
            return (best, wit) if with_witness else best
    raise ArithmeticError("form cycle did not close")


# ---------------------------------------------------------------------------
# Heights of closed geodesics

@dataclass(frozen=True)
class GeodesicHeight:
    value: float
    certified: bool
    witness: str


def _axis_form(xi_plus: QuadSurd, xi_minus: QuadSurd) -> tuple[int, int, int]:
    """Primitive integral form with roots xi_plus, xi_minus (conjugate surds)."""
    tr = xi_plus + xi_minus
    nm = xi_plus * xi_minus
    if not (tr.is_rational() and nm.is_rational()):
        raise DomainError("endpoints are not a conjugate pair over Q")
    t, n = tr.p, nm.p
    den = t.denominator
    den = den * (n.denominator // gcd(n.denominator, den))
    a = den
    b = -int(t * den)
    c = int(n * den)
    g = gcd(gcd(abs(a), abs(b)), abs(c))
    return a // g, b // g, c // g


def geodesic_height(
    xi_plus,
    xi_minus,
    group: str = "psl2z",
    cutoff: int = 80,
) -> GeodesicHeight:
    """sup over the orbit of the naive top-point height of the geodesic.

    Equals log(|xi+ - xi-|/2) minus the infimum over group rows (c, d) of
    log|c xi+ + d| + log|c xi- + d|.  For exact conjugate quadratic endpoints
    over PSL2(Z) the infimum is the exact minimum of an integral indefinite
    form, computed by its reduction cycle, and the result is certified.
    """
    exact = isinstance(xi_plus, QuadSurd) and isinstance(xi_minus, QuadSurd)
    if exact:
        if xi_plus.is_rational() or xi_minus.is_rational():
            raise RationalInputError("not a closed geodesic: parabolic endpoint")
        if xi_plus == xi_minus:
            raise DomainError("endpoints coincide")
    else:
        if abs(complex(float_of(xi_plus)) - complex(float_of(xi_minus))) == 0:
            raise DomainError("endpoints coincide")
    if group == "trivial":
        gap = abs(complex(float_of(xi_plus)) - complex(float_of(xi_minus)))
        return GeodesicHeight(math.log(gap / 2.0), True, "row(0,1)")
    if group != "psl2z":
        raise ValueError(f"unsupported group {group!r}")
    if exact:
        try:
            a, b, c = _axis_form(xi_plus, xi_minus)
        except DomainError:
            exact = False
        else:
            disc = b * b - 4 * a * c
            mn = indefinite_form_minimum(a, b, c)
            value = 0.5 * math.log(disc) - math.log(2 * mn)
            return GeodesicHeight(value, True, f"form({a},{b},{c}) min {mn}")
    # numeric fallback: direct row enumeration, never certified
    xp = float_of(xi_plus).real
    xm = float_of(xi_minus).real
    best, wit = 1.0, (0, 1)
    lo, hi = min(xp, xm), max(xp, xm)
    for c in range(1, cutoff + 1):
        for d in range(math.floor(-c * hi) - 2, math.ceil(-c * lo) + 3):
            if gcd(c, abs(d)) != 1:
                continue
            prod = abs(c * xp + d) * abs(c * xm + d)
            if prod < best:
                best, wit = prod, (c, d)
    value = math.log(abs(xp - xm) / 2.0) - math.log(best)
    return GeodesicHeight(value, False, f"row{wit}")


# ---------------------------------------------------------------------------
# Cusp excursions of the geodesic from infinity to x (limsup of heights)

@dataclass(frozen=True)
class ExcursionEvent:
    c: int
    d: int
    peak_time: float
    peak_value: float


@dataclass(frozen=True)
class ExcursionResult:
    estimate: float
    window_start: float
    window_end: float
    trace: EstimatorTrace
    events: tuple[ExcursionEvent, ...]
    pointwise: tuple[tuple[float, float], ...]

    def value(self) -> float:
        return self.estimate


def _lagrange_reduce(
    A: Fraction, B: Fraction, u: tuple[int, int], v: tuple[int, int]
) -> tuple[tuple[int, int], tuple[int, int], Fraction, Fraction]:
    """Reduce the basis of the form A c**2 + 2B cd + d**2 (positive definite)."""

    def qval(w: tuple[int, int]) -> Fraction:
        return A * w[0] * w[0] + 2 * B * w[0] * w[1] + Fraction(w[1] * w[1])

    def inner(w1: tuple[int, int], w2: tuple[int, int]) -> Fraction:
        return (
            A * w1[0] * w2[0]
            + B * (w1[0] * w2[1] + w1[1] * w2[0])
            + Fraction(w1[1] * w2[1])
        )

    qu, qv = qval(u), qval(v)
    if qv < qu:
        u, v, qu, qv = v, u, qv, qu
    for _ in range(100000):
        mu = math.floor(inner(u, v) / qu + Fraction(1, 2))
        if mu:
            v = (v[0] - mu * u[0], v[1] - mu * u[1])
            qv = qval(v)
        if qv < qu:
            u, v, qu, qv = v, u, qv, qu
        else:
            return u, v, qu, qv
    raise ArithmeticError("lattice reduction did not terminate")


def excursion_limsup(
    x: QuadSurd,
    group: str = "psl2z",
    depth: int = 40,
    cutoff: int = 14,
    t0: float = 7.5,
    ratio: float = 1.05,
    window_frac: float = 0.6,
) -> ExcursionResult:
    """limsup of the orbit height along the geodesic from infinity to x.

    Samples the geodesic at geometrically spaced times t_k = t0 * ratio**k.
    At each sample the positive-definite form (c x + d)**2 + c**2 h**2 is
    lattice-reduced exactly, which yields both the certified orbit height at
    the sample and the short rows driving nearby cusp excursions (coefficient
    combinations of the reduced basis up to `cutoff`).  Each row (c, d)
    contributes one excursion event with exact peak value
    -log(2 |c| |c x + d|) at time log(|c| / |c x + d|); the limsup estimate is
    the largest peak inside the late window (last `window_frac` of samples).
    """
    if group != "psl2z":
        raise ValueError("excursion limsup is implemented for the modular group")
    if not isinstance(x, QuadSurd):
        raise TypeError("excursion endpoint must be an exact QuadSurd")
    if x.is_rational():
        raise RationalInputError("parabolic endpoint: geodesic exits the cusp")
    if depth < 1:
        raise DomainError("insufficient depth")
    span = max(2, cutoff)
    x_fr = x.to_fraction(280)
    times = [t0 * ratio**k for k in range(depth)]
    ln2 = math.log(2.0)

    rows: set[tuple[int, int]] = set()
    pointwise: list[tuple[float, float]] = []
    sample_min_rows: list[tuple[int, int]] = []
    for t in times:
        if t < 700.0:
            h_fr = Fraction(math.exp(-t))
        else:
            h_fr = Fraction(1, 1 << (int(t / ln2) + 1))
        A = x_fr * x_fr + h_fr * h_fr
        u, v, qu, _ = _lagrange_reduce(A, x_fr, (0, 1), (1, 0))
        pointwise.append((t, -t - log_fraction(qu)))
        sample_min_rows.append(u)
        for al in range(-span, span + 1):
            for be in range(-span, span + 1):
                cc = al * u[0] + be * v[0]
                dd = al * u[1] + be * v[1]
                if cc == 0:
                    continue
                if cc < 0:
                    cc, dd = -cc, -dd
                if gcd(cc, abs(dd)) == 1:
                    rows.add((cc, dd))

    t_max = times[-1]
    start_idx = min(depth - 1, int(math.floor((1.0 - window_frac) * depth)))
    window_start = times[start_idx]

    events: list[ExcursionEvent] = []
    for cc, dd in rows:
        # cheap float screen before the exact surd evaluation
        if cc < 1e200:
            s_f = cc * float(x) + dd
            if s_f != 0.0:
                t_peak_f = math.log(cc) - math.log(abs(s_f))
                if t_peak_f < times[0] * 0.2 - 4.0 or t_peak_f > t_max + 2.0:
                    continue
        s = x * cc + dd
        s_abs = abs(s.to_fraction(300))
        if s_abs == 0:
            continue
        peak_time = math.log(cc) - log_fraction(s_abs)
        if peak_time > t_max:
            continue
        peak_value = -(ln2 + math.log(cc) + log_fraction(s_abs))
        events.append(ExcursionEvent(cc, dd, peak_time, peak_value))
    events.sort(key=lambda e: e.peak_time)

    # one trace shell per sample: peaks that materialized in (t_{k-1}, t_k]
    shell_rows = []
    ei = 0
    for k, t in enumerate(times):
        lo_t = 0.0 if k == 0 else times[k - 1]
        best_here = -math.inf
        wit = f"row{sample_min_rows[k]}"
        while ei < len(events) and events[ei].peak_time <= t:
            if events[ei].peak_time > lo_t and events[ei].peak_value > best_here:
                best_here = events[ei].peak_value
                wit = f"row({events[ei].c},{events[ei].d})"
            ei += 1
        shell_rows.append((t, best_here if best_here > -math.inf else math.nan, wit, True))
    trace = build_trace("max", shell_rows, tail_shells=depth - start_idx)
    if trace.is_empty:
        raise DomainError("no excursion events found; increase depth")
    estimate = trace.tail_estimate()
    return ExcursionResult(
        estimate=estimate,
        window_start=window_start,
        window_end=t_max,
        trace=trace,
        events=tuple(events),
        pointwise=tuple(pointwise),
    )
