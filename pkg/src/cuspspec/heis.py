"""Heisenberg group arithmetic: group law, modified Cygan distance, rational
approximation by admissible triples.

Points are pairs (z, w) of complex numbers with 2 Re z = |w|**2 (the boundary
of the Siegel domain minus the point at infinity, n = 2 so w is a single
complex coordinate).  The admissible rational family consists of triples
(a, alpha, c) over the maximal order with alpha, c in a chosen ideal,
2 Re(a * conj(c)) = |alpha|**2 and <a, alpha, c> the whole order; the point
approached is (a/c, alpha/c) and the approximation constant is

    liminf over the family, |c| -> infinity, of  |c| * d_cyg(x, (a/c, alpha/c)).

Exact coordinates (int/Fraction/QuadSurd) keep the group law and the membership
conditions exact; distances are evaluated in floating point at the edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DomainError, RationalInputError
from .numkit import (
    ExactComplex,
    IdealSpec,
    OrderSpec,
    QuadInt,
    QuadSurd,
    ideal_elements_with_norm_up_to,
    ideal_is_unit,
    lattice_points_in_disc,
    unit_ideal,
    xgcd,
)
from .spectra import EstimateResult, build_trace

_EXACT_TYPES = (int, Fraction, QuadSurd)


def _is_exact(v) -> bool:
    return isinstance(v, _EXACT_TYPES)


def _float_of(v) -> float:
    return float(v)


@dataclass(frozen=True)
class HeisPoint:
    """Point (z, w) with 2 Re z = |w|**2; coordinates exact or floating."""

    z_re: object
    z_im: object
    w_re: object
    w_im: object

    def __post_init__(self) -> None:
        gap = 2 * self.z_re - (self.w_re * self.w_re + self.w_im * self.w_im)
        if all(_is_exact(c) for c in self.coords()):
            ok = gap == 0 if isinstance(gap, (int, Fraction)) else gap.is_zero()
        else:
            scale = 1.0 + abs(_float_of(self.z_re)) + abs(_float_of(self.w_re))
            ok = abs(_float_of(gap)) <= 1e-12 * scale
        if not ok:
            raise DomainError("point violates 2 Re z = |w|**2")

    def coords(self) -> tuple:
        return self.z_re, self.z_im, self.w_re, self.w_im

    @classmethod
    def origin(cls) -> "HeisPoint":
        return cls(0, 0, 0, 0)

    @classmethod
    def from_complex(cls, z: complex, w: complex) -> "HeisPoint":
        return cls(z.real, z.imag, w.real, w.imag)

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(c) for c in self.coords())

    def to_floats(self) -> tuple[complex, complex]:
        return (
            complex(_float_of(self.z_re), _float_of(self.z_im)),
            complex(_float_of(self.w_re), _float_of(self.w_im)),
        )

    def is_origin(self) -> bool:
        if self.is_exact:
            return all(
                (c == 0 if isinstance(c, (int, Fraction)) else c.is_zero())
                for c in self.coords()
            )
        z, w = self.to_floats()
        return abs(z) == 0 and abs(w) == 0

    def in_rational_points(self, m: int) -> bool:
        """Exact membership in the field-rational points (the parabolic set)."""
        if not self.is_exact:
            raise ValueError("rationality test needs exact coordinates")
        from .numkit import _as_surd

        z = ExactComplex(_as_surd(self.z_re), _as_surd(self.z_im))
        w = ExactComplex(_as_surd(self.w_re), _as_surd(self.w_im))
        return z.is_in_quadratic_field(m) and w.is_in_quadratic_field(m)


def heis_mul(x: HeisPoint, y: HeisPoint) -> HeisPoint:
    """Group law (z, w)(z', w') = (z + z' + w' * conj(w), w + w')."""
    dot_re = y.w_re * x.w_re + y.w_im * x.w_im
    dot_im = y.w_im * x.w_re - y.w_re * x.w_im
    return HeisPoint(
        x.z_re + y.z_re + dot_re,
        x.z_im + y.z_im + dot_im,
        x.w_re + y.w_re,
        x.w_im + y.w_im,
    )


def heis_inverse(x: HeisPoint) -> HeisPoint:
    """(conj(z), -w); the defining constraint makes x * x**-1 the origin."""
    return HeisPoint(x.z_re, -x.z_im, -x.w_re, -x.w_im)


def cygan_dist(x: HeisPoint, y: HeisPoint) -> float:
    """Left-invariant modified Cygan distance sqrt(2|z| + |w|**2) of x**-1 y."""
    (zx, wx), (zy, wy) = x.to_floats(), y.to_floats()
    z = zx.conjugate() + zy - wy * wx.conjugate()
    w = wy - wx
    return math.sqrt(2.0 * abs(z) + abs(w) * abs(w))


# ---------------------------------------------------------------------------
# Admissible rational triples

@dataclass(frozen=True)
class HeisContext:
    """Maximal order plus the congruence ideal constraining alpha and c."""

    order: OrderSpec
    ideal: IdealSpec

    def __post_init__(self) -> None:
        if self.ideal.order != self.order:
            raise ValueError("ideal does not belong to the order")

    @classmethod
    def for_m(cls, m: int, ideal_gens: Sequence[QuadInt] | None = None) -> "HeisContext":
        order = OrderSpec.maximal(m)
        ideal = IdealSpec.from_generators(ideal_gens) if ideal_gens else unit_ideal(order)
        return cls(order, ideal)

    def setting_tag(self) -> str:
        return f"heisenberg({self.order.m},{self.ideal})"


def _require_maximal(order: OrderSpec) -> None:
    if not order.is_maximal:
        raise DomainError("explicit admissible-triple form requires the maximal order")


def is_in_EprimeI(ctx: HeisContext, a: QuadInt, alpha: QuadInt, c: QuadInt) -> bool:
    """2 Re(a conj(c)) = |alpha|**2, <a, alpha, c> = order, alpha and c in the ideal."""
    _require_maximal(ctx.order)
    if a.is_zero() and alpha.is_zero() and c.is_zero():
        return False
    if (a * c.conj()).trace() != alpha.norm():
        return False
    if not (ctx.ideal.contains(alpha) and ctx.ideal.contains(c)):
        return False
    return ideal_is_unit((a, alpha, c))


@dataclass(frozen=True)
class HeisRational:
    """Admissible triple (a, alpha, c); the boundary point is (a/c, alpha/c).

    The defining constraint 2 Re(a conj(c)) = |alpha|**2 is validated here;
    the ideal-membership conditions depend on a context and are checked by
    `is_in_EprimeI`.
    """

    a: QuadInt
    alpha: QuadInt
    c: QuadInt

    def __post_init__(self) -> None:
        if (self.a * self.c.conj()).trace() != self.alpha.norm():
            raise DomainError("triple violates 2 Re(a conj(c)) = |alpha|**2")
        if self.c.is_zero():
            raise DomainError("zero denominator")

    def point(self) -> HeisPoint:
        """Exact rational point (a/c, alpha/c); satisfies the constraint exactly."""
        m = self.a.order.m
        nc = self.c.norm()
        za = self.a * self.c.conj()  # a/c scaled by N(c)
        wa = self.alpha * self.c.conj()
        return HeisPoint(
            _field_re(za, nc),
            _field_im(za, nc, m),
            _field_re(wa, nc),
            _field_im(wa, nc, m),
        )

    def __str__(self) -> str:
        return f"({self.a};{self.alpha};{self.c})"


def _field_re(x: QuadInt, den: int) -> Fraction:
    return Fraction(x.trace(), 2 * den)


def _field_im(x: QuadInt, den: int, m: int) -> QuadSurd:
    # Im(x)/den = b * omega_v * sqrt(m) / (2 den)
    return QuadSurd.make(0, Fraction(x.b * x.order.omega_v, 2 * den), m)


# ---------------------------------------------------------------------------
# The approximation constant estimator

def c_prime_estimate(
    ctx: HeisContext,
    x: HeisPoint,
    norm_bound: int,
    tail_shells: int = 6,
) -> EstimateResult:
    """Windowed liminf of |c| * d_cyg(x, (a/c, alpha/c)) over admissible triples.

    Shells are dyadic in norm(c).  For each c the search is pruned hard by the
    membership constraint: alpha must lie in the ideal near c * w_x (the
    w-distance alone already costs |alpha/c - w_x|), and then a is confined to
    the one-dimensional integer solution family of 2 Re(a conj(c)) = |alpha|**2
    near the z-target.  Shell minima are exact at desk scale; the headline
    value is the tail-window estimate.  The default window is wider than in
    the planar settings because admissible denominators thin out faster here.
    """
    _require_maximal(ctx.order)
    if norm_bound < 1:
        raise DomainError("norm bound must be >= 1")
    if x.is_exact and x.in_rational_points(ctx.order.m):
        raise RationalInputError("parabolic point: x is field-rational")
    zx, wx = x.to_floats()
    order = ctx.order
    t, n = order.trace_omega, order.norm_omega

    shell_tops: list[int] = []
    top = 2
    while top < norm_bound:
        shell_tops.append(top)
        top *= 2
    shell_tops.append(norm_bound)

    cap = 4.0
    rows = []
    shell_idx = 0
    shell_best = math.inf
    shell_wit = ""
    any_triple = False
    for c in ideal_elements_with_norm_up_to(ctx.ideal, norm_bound):
        nc = c.norm()
        while nc > shell_tops[shell_idx]:
            rows.append((shell_tops[shell_idx], shell_best, shell_wit, True))
            shell_idx += 1
            shell_best, shell_wit = math.inf, ""
        cc = c.to_complex()
        ac = abs(cc)
        bound = min(shell_best, cap)
        u_c = 2 * c.a + t * c.b
        v_c = t * c.a + 2 * n * c.b
        g, s0, t0 = xgcd(u_c, v_c)
        dir_q = QuadInt(v_c // g, -u_c // g, order)
        dir_c = dir_q.to_complex()
        for alpha in lattice_points_in_disc(ctx.ideal, cc * wx, bound):
            na = alpha.norm()
            if na % g != 0:
                continue
            k = na // g
            a_base = QuadInt(s0 * k, t0 * k, order)
            target = alpha.to_complex() * wx.conjugate() - cc * zx.conjugate()
            rel = (target - a_base.to_complex()) / dir_c
            k0 = round(rel.real)
            r_a = bound * bound / (2.0 * ac) + 1e-9
            reach = int(math.ceil(r_a / abs(dir_c))) + 1
            for dk in range(-reach, reach + 1):
                a = a_base + (k0 + dk) * dir_q
                any_triple = True
                zy = a.to_complex() / cc
                wy = alpha.to_complex() / cc
                val = ac * _cygan_raw(zx, wx, zy, wy)
                if val < shell_best:
                    if not ideal_is_unit((a, alpha, c)):
                        continue
                    shell_best = val
                    shell_wit = str(HeisRational(a, alpha, c))
                    bound = min(shell_best, cap)
    rows.append((shell_tops[shell_idx], shell_best, shell_wit, True))
    for j in range(shell_idx + 1, len(shell_tops)):
        rows.append((shell_tops[j], math.inf, "", True))
    if not any_triple:
        raise DomainError("no admissible triples up to the norm bound")
    trace = build_trace("min", rows, tail_shells=tail_shells)
    value = trace.tail_estimate()
    # a float input that dips rational-like anywhere in the trace is suspect
    flagged = (not x.is_exact) and trace.shells[-1].extremum < 1e-6
    return EstimateResult(value=value, trace=trace, label=ctx.setting_tag(), flagged=flagged)


def _cygan_raw(zx: complex, wx: complex, zy: complex, wy: complex) -> float:
    z = zx.conjugate() + zy - wy * wx.conjugate()
    w = wy - wx
    return math.sqrt(2.0 * abs(z) + abs(w) * abs(w))


# ---------------------------------------------------------------------------
# Penetration depth in the complex hyperbolic picture

def heis_penetration(c: QuadInt, order: OrderSpec | None = None) -> float:
    """log|c| + log(2 Im omega): the horoball-to-horoball distance for denominator c.

    Heights are relative to the invariant horoball 2 Re w0 - |w|**2 >= 4 Im(omega)
    of the Siegel domain, which is what contributes the log(2 Im omega) constant.
    """
    if order is None:
        order = c.order
    if c.is_zero():
        raise DomainError("zero denominator")
    return 0.5 * math.log(c.norm()) + math.log(2.0 * order.im_omega())
