"""Approximation by restricted fractions over imaginary quadratic orders.

The admissible family consists of pairs (p, q) with q in a chosen nonzero
ideal and <p, q> the whole order; the associated constant of a point x in the
complex plane is

    liminf over the family, |q| -> infinity, of  norm(q) * |x - p/q|.

The same module holds the loxodromic/closed-geodesic machinery used to sample
the dual height spectrum: the classical modular-group sampler enumerates even
positive continued-fraction cycles (canonical conjugacy representatives), the
Bianchi sampler enumerates alternating translation/inversion words filtered by
the lower-left congruence condition.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .contfrac import word_matrix
from .errors import DomainError, NotLoxodromicError, RationalInputError
from .hypgeo import GeodesicHeight, Mobius, TranslationGroup, geodesic_height
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
)
from .spectra import EstimateResult, SpectrumSample, build_trace


@dataclass(frozen=True)
class BianchiContext:
    """Order, congruence ideal, and the cusp stabilizer data they induce."""

    order: OrderSpec
    ideal: IdealSpec

    def __post_init__(self) -> None:
        if self.ideal.order != self.order:
            raise ValueError("ideal does not belong to the order")

    @classmethod
    def for_m(cls, m: int, ideal_gens: Sequence[QuadInt] | None = None) -> "BianchiContext":
        order = OrderSpec.maximal(m)
        if ideal_gens:
            ideal = IdealSpec.from_generators(ideal_gens)
        else:
            ideal = unit_ideal(order)
        return cls(order, ideal)

    def units(self) -> tuple[QuadInt, ...]:
        return self.order.units()

    def twists(self) -> tuple[QuadInt, ...]:
        """Distinct u**2 over units u: the rotations in the cusp stabilizer."""
        return _ctx_twists(self)

    def stabilizer(self) -> TranslationGroup:
        return TranslationGroup.from_order(self.order)

    def covering_radius(self) -> float:
        w = self.order.omega_complex()
        return max(abs(1 + w), abs(1 - w)) / 2.0

    def setting_tag(self) -> str:
        return f"bianchi({self.order.m},{self.ideal})"

    def row_provider(self) -> "BianchiRowProvider":
        return BianchiRowProvider(self)


@lru_cache(maxsize=None)
def _ctx_twists(ctx: "BianchiContext") -> tuple[QuadInt, ...]:
    seen: dict[tuple[int, int], QuadInt] = {}
    for u in ctx.units():
        sq = u * u
        seen[sq.coords()] = sq
    return tuple(seen.values())


@dataclass(frozen=True)
class BianchiRowProvider:
    """(c, d) row enumerator for orbit-height computations: c in the ideal."""

    ctx: BianchiContext

    def c_candidates(self, max_norm: int) -> Iterator[QuadInt]:
        return ideal_elements_with_norm_up_to(self.ctx.ideal, max_norm)

    def d_candidates(self, center: complex, radius: float) -> list[QuadInt]:
        return lattice_points_in_disc(unit_ideal(self.ctx.order), center, radius)

    def coprime(self, c: QuadInt, d: QuadInt) -> bool:
        if d.is_zero():
            return c.is_unit()
        return ideal_is_unit((c, d))


@dataclass(frozen=True)
class FractionPoint:
    """Admissible fraction p/q: q in the ideal, <p, q> the whole order."""

    p: QuadInt
    q: QuadInt

    def value(self) -> complex:
        return self.p.to_complex() / self.q.to_complex()

    def __str__(self) -> str:
        return f"({self.p})/({self.q})"


def is_in_EI(ctx: BianchiContext, p: QuadInt, q: QuadInt) -> bool:
    """Membership in the admissible family: q in the ideal and <p, q> = order."""
    if p.is_zero() and q.is_zero():
        return False
    return ctx.ideal.contains(q) and ideal_is_unit((p, q))


def enumerate_EI(ctx: BianchiContext, norm_bound: int) -> Iterator[FractionPoint]:
    """All admissible (p, q) with norm(q) <= norm_bound and p/q in the unit cell.

    One representative per translation class: the coordinates of p/q over
    (1, omega) lie in [0, 1) x [0, 1), checked exactly via p*conj(q).
    Deterministic order: by norm(q), then q, then p coordinates.
    """
    if norm_bound < 1:
        return
    order = ctx.order
    w = order.omega_complex()
    cell_center = (1 + w) / 2.0
    cell_radius = max(abs(1 + w), abs(1 - w)) / 2.0
    full = unit_ideal(order)
    for q in ideal_elements_with_norm_up_to(ctx.ideal, norm_bound):
        nq = q.norm()
        qc = q.to_complex()
        cands = lattice_points_in_disc(full, qc * cell_center, abs(qc) * cell_radius + 1e-6)
        found = []
        for p in cands:
            rep = p * q.conj()
            if 0 <= rep.a < nq and 0 <= rep.b < nq and ideal_is_unit((p, q)):
                found.append(p)
        found.sort(key=lambda t: t.coords())
        for p in found:
            yield FractionPoint(p, q)


def _twist_units(ctx: BianchiContext) -> list[QuadInt]:
    """One unit u per distinct twist u**2 (u and -u act identically)."""
    seen: dict[tuple[int, int], QuadInt] = {}
    for u in ctx.units():
        seen.setdefault((u * u).coords(), u)
    return list(seen.values())


def adjust_to_point(
    ctx: BianchiContext, x: complex, p: QuadInt, q: QuadInt
) -> tuple[QuadInt, float]:
    """Replace p by the cusp-stabilizer translate minimizing |x - p/q|.

    The orbit of p/q under the stabilizer is u**2 * (p/q) + u*beta over units u
    and beta in the order; u*beta sweeps the whole order for fixed u, so only
    the distinct twists u**2 matter.  Every translate keeps the pair admissible.
    """
    from .numkit import nearest_order_elements

    qc = q.to_complex()
    best: tuple[float, QuadInt, QuadInt] | None = None
    for u in _twist_units(ctx):
        eps = u * u
        w = x - (eps * p).to_complex() / qc
        for beta in nearest_order_elements(ctx.order, w):
            val = abs(w - beta.to_complex())
            if best is None or val < best[0]:
                best = (val, eps, beta)
    assert best is not None
    val, eps, beta = best
    return eps * p + beta * q, val


def best_fraction(ctx: BianchiContext, x: complex, q: QuadInt) -> tuple[QuadInt, float]:
    """Best admissible numerator for denominator q against the point x.

    Searches the stabilizer twists of x and a covering-radius disc of numerator
    candidates, keeping only p with <p, q> the whole order.  Returns (p, value)
    with value = norm(q) * |x - p/q|; raises if no admissible numerator exists
    in range (cannot happen at covering-radius scale for the orders used here).
    """
    nq = q.norm()
    qc = q.to_complex()
    aq = abs(qc)
    radius = ctx.covering_radius() + 1.0
    full = unit_ideal(ctx.order)
    cands: list[tuple[float, int, QuadInt, QuadInt]] = []
    for i, tw in enumerate(ctx.twists()):
        center = qc * (tw.to_complex() * x)
        for p in lattice_points_in_disc(full, center, radius):
            cands.append((aq * abs(center - p.to_complex()), i, p, tw))
    cands.sort(key=lambda r: r[0])
    for val, _, p, tw in cands:
        if math.gcd(p.norm(), nq) == 1 or ideal_is_unit((p, q)):
            # |tw*x - p/q| = |x - (conj(tw)*p)/q| since |tw| = 1
            return tw.conj() * p, val
    raise DomainError(f"no admissible numerator near x for q = {q}")


# ---------------------------------------------------------------------------
# The approximation constant estimator

def c_I_estimate(
    ctx: BianchiContext,
    x,
    norm_bound: int,
    tail_shells: int = 4,
) -> EstimateResult:
    """Windowed liminf estimate of norm(q)*|x - p/q| over the admissible family.

    Enumerates denominators by dyadic norm shells; for each q the best
    admissible numerator is searched in a disc around q * (twist of x) whose
    radius covers the lattice covering radius, so each shell minimum is exact
    at desk scale.  The headline value is the tail-window estimate; the
    cumulative trace is monotone nonincreasing by construction.
    """
    if norm_bound < 1:
        raise DomainError("norm bound must be >= 1")
    if isinstance(x, ExactComplex):
        if x.is_in_quadratic_field(ctx.order.m):
            raise RationalInputError("parabolic point: x lies in the field")
        xc = x.to_complex()
    else:
        xc = complex(x)

    shell_tops: list[int] = []
    top = 2
    while top < norm_bound:
        shell_tops.append(top)
        top *= 2
    shell_tops.append(norm_bound)

    rows = []
    shell_idx = 0
    shell_best = math.inf
    shell_wit = ""
    any_q = False
    for q in ideal_elements_with_norm_up_to(ctx.ideal, norm_bound):
        nq = q.norm()
        while nq > shell_tops[shell_idx]:
            rows.append((shell_tops[shell_idx], shell_best, shell_wit, True))
            shell_idx += 1
            shell_best, shell_wit = math.inf, ""
        any_q = True
        try:
            p, val = best_fraction(ctx, xc, q)
        except DomainError:
            continue
        if val < shell_best:
            shell_best = val
            shell_wit = str(FractionPoint(p, q))
    rows.append((shell_tops[shell_idx], shell_best, shell_wit, True))
    for k in range(shell_idx + 1, len(shell_tops)):
        rows.append((shell_tops[k], math.inf, "", True))
    if not any_q:
        raise DomainError("no admissible denominators up to the norm bound")

    trace = build_trace("min", rows, tail_shells=tail_shells)
    value = trace.tail_estimate()
    # a float input that dips rational-like anywhere in the trace is suspect
    flagged = not isinstance(x, ExactComplex) and trace.shells[-1].extremum < 1e-6
    return EstimateResult(value=value, trace=trace, label=ctx.setting_tag(), flagged=flagged)


# ---------------------------------------------------------------------------
# Loxodromic elements and their axes

@dataclass(frozen=True)
class Axis:
    xi_plus: object  # QuadSurd (real case) or complex
    xi_minus: object
    coeffs: tuple  # exact (c, d - a, -b): the fixed-point quadratic


def loxodromic_axis(gamma: Mobius) -> Axis:
    """The two boundary fixed points of a loxodromic isometry, exactly.

    Roots of c z**2 + (d - a) z - b = 0; the attracting point (for positive
    trace) comes first.  Integer entries give exact real quadratic surds.
    """
    if not gamma.is_exact:
        raise ValueError("loxodromic_axis needs exact entries")
    a, b, c, d = gamma.a, gamma.b, gamma.c, gamma.d
    tr = gamma.trace()
    if isinstance(tr, QuadInt):
        tr2 = tr * tr
        real = tr2.b == 0
        val = tr2.a
    else:
        tr2 = tr * tr
        real = True
        val = tr2
    if real and 0 <= val <= 4:
        kind = "parabolic" if val == 4 else "elliptic"
        raise NotLoxodromicError(f"{kind} element: trace**2 = {val}")
    if isinstance(c, QuadInt):
        if c.is_zero():
            raise DomainError("axis through infinity: lower-left entry is zero")
        cc = c.to_complex()
        disc = (a - d).to_complex() ** 2 + 4 * (b * c).to_complex()
        root = cmath.sqrt(disc)
        xp = ((a - d).to_complex() + root) / (2 * cc)
        xm = ((a - d).to_complex() - root) / (2 * cc)
        return Axis(xp, xm, (c, d - a, -b))
    if c == 0:
        raise DomainError("axis through infinity: lower-left entry is zero")
    if not all(isinstance(v, int) for v in (a, b, c, d)):
        disc = (a - d) ** 2 + 4 * b * c
        root = cmath.sqrt(complex(disc))
        return Axis(
            (complex(a - d) + root) / (2 * c),
            (complex(a - d) - root) / (2 * c),
            (c, d - a, -b),
        )
    disc = (a - d) ** 2 + 4 * b * c
    xp = QuadSurd.make(Fraction(a - d, 2 * c), Fraction(1, 2 * c), disc)
    xm = QuadSurd.make(Fraction(a - d, 2 * c), Fraction(-1, 2 * c), disc)
    return Axis(xp, xm, (c, d - a, -b))


# ---------------------------------------------------------------------------
# Spectrum samplers

def _necklaces(alphabet: Sequence, k: int) -> Iterator[tuple]:
    """Lexicographically minimal rotation representatives of k-tuples."""
    for tup in itertools.product(alphabet, repeat=k):
        if all(tup <= tup[i:] + tup[:i] for i in range(1, k)):
            yield tup


def _dedupe_heights(rows: list[tuple[float, str, bool]]) -> list[tuple[float, str, bool]]:
    rows.sort(key=lambda r: r[0])
    out: list[tuple[float, str, bool]] = []
    for h, wit, cert in rows:
        if out and abs(h - out[-1][0]) <= 1e-9:
            continue
        out.append((h, wit, cert))
    return out


def real_spectrum_sample(word_length: int, cutoff: int = 4) -> SpectrumSample:
    """Closed-geodesic heights of the modular surface from short geodesic words.

    Conjugacy classes of loxodromic elements correspond to cyclic words of
    positive partial quotients of even length (each letter is one translation
    power followed by the inversion, so a length budget of `word_length`
    syllables allows word_length // 2 letters, each quotient at most `cutoff`).
    """
    if word_length < 1:
        raise DomainError("word length must be >= 1")
    if cutoff < 1:
        raise DomainError("cutoff must be >= 1")
    rows: list[tuple[float, str, bool]] = []
    for k in range(2, word_length // 2 + 1, 2):
        for word in _necklaces(range(1, cutoff + 1), k):
            a, b, c, d = word_matrix(word)
            tr = a + d
            if tr * tr <= 4:
                continue
            axis = loxodromic_axis(Mobius(a, b, c, d))
            gh = geodesic_height(axis.xi_plus, axis.xi_minus)
            rows.append((gh.value, str(word), gh.certified))
    return SpectrumSample.from_heights("rational", _dedupe_heights(rows))


def _mobius_product(blocks: Sequence[QuadInt], order: OrderSpec) -> Mobius:
    """Product of [[beta, -1], [1, 0]] over the blocks (translation then flip)."""
    one, zero = order.one(), order.zero()
    m = Mobius(one, zero, zero, one)
    for beta in blocks:
        m = m.compose(Mobius(beta, -one, one, zero))
    return m


def _bianchi_axis_height(
    ctx: BianchiContext, xp: complex, xm: complex, row_cutoff: int
) -> GeodesicHeight:
    """Numeric orbit supremum of the axis top height over congruence rows."""
    sep = abs(xp - xm)
    best, wit = 1.0, "row(0,1)"
    full = unit_ideal(ctx.order)
    for c in ideal_elements_with_norm_up_to(ctx.ideal, row_cutoff):
        cc = c.to_complex()
        s = abs(cc) * sep
        rad = max(1.0, 2.0 * best / max(s, 0.5))
        for root in (xp, xm):
            for d in lattice_points_in_disc(full, -cc * root, rad):
                if not ctx.row_provider().coprime(c, d):
                    continue
                dc = d.to_complex()
                prod = abs(cc * xp + dc) * abs(cc * xm + dc)
                if prod < best:
                    best, wit = prod, f"row({c},{d})"
    return GeodesicHeight(math.log(sep / 2.0) - math.log(best), False, wit)


def bianchi_spectrum_sample(
    ctx: BianchiContext, word_length: int, cutoff: int = 1, row_cutoff: int = 60
) -> SpectrumSample:
    """Closed-geodesic heights for a Bianchi congruence setting.

    Words alternate translations by beta (coordinates bounded by `cutoff`) with
    the inversion; only products whose lower-left entry lies in the ideal are
    kept.  The chosen generators need not cover every conjugacy class for all
    orders; coverage is documented per context, heights are exact orbit data
    for the words enumerated.
    """
    if word_length < 1:
        raise DomainError("word length must be >= 1")
    if cutoff < 1:
        raise DomainError("empty generator set: cutoff must be >= 1")
    order = ctx.order
    coords = [
        (aa, bb)
        for aa in range(-cutoff, cutoff + 1)
        for bb in range(-cutoff, cutoff + 1)
        if (aa, bb) != (0, 0)
    ]
    rows: list[tuple[float, str, bool]] = []
    for k in range(1, word_length // 2 + 1):
        for tup in _necklaces(coords, k):
            blocks = [QuadInt(aa, bb, order) for aa, bb in tup]
            m = _mobius_product(blocks, order)
            if not ctx.ideal.contains(m.c):
                continue
            try:
                axis = loxodromic_axis(m)
            except (NotLoxodromicError, DomainError):
                continue
            gh = _bianchi_axis_height(ctx, complex(axis.xi_plus), complex(axis.xi_minus), row_cutoff)
            wit = "(" + ", ".join(str(b) for b in blocks) + ")"
            rows.append((gh.value, wit, gh.certified))
    return SpectrumSample.from_heights(ctx.setting_tag(), _dedupe_heights(rows))
