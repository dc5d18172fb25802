"""Real continued fractions: expansion, convergents, approximation constants.

The approximation constant of an irrational x is

    liminf over q -> infinity of  q**2 * |x - p/q|.

For an eventually periodic word the liminf is computed exactly: at a cyclic
position j of the period, the classical convergent identity gives the local
quality 1 / (F_j + B_j) where F_j is the purely periodic forward tail and B_j
the purely periodic backward value, both quadratic surds over the same
discriminant.  The constant is the inverse of the exact maximum of F_j + B_j.

`brute_force_constant` is the independent enumeration oracle used to check
that machinery; it never looks at the word.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import ParseError, PrecisionExhausted, RationalInputError
from .numkit import QuadSurd, sqrt_fraction


@dataclass(frozen=True)
class CFWord:
    """Continued-fraction word: preperiod + repeating period, or a sampled prefix.

    The first quotient may be any integer; all later ones must be >= 1.
    A word with empty period is only legal as an explicit sampled prefix of a
    generic real (prefix=True); a finite non-prefix word would be rational.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    prefix: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        tail = self.preperiod[1:] + self.period
        if any(a < 1 for a in tail):
            raise ParseError("partial quotients after the first must be >= 1")
        if self.prefix:
            if self.period:
                raise ParseError("a sampled prefix cannot carry a period")
            if not self.preperiod:
                raise ParseError("empty prefix")
        elif not self.period:
            raise RationalInputError("rational input: finite word without period")

    def quotients(self, count: int) -> list[int]:
        """First `count` partial quotients (cycling through the period)."""
        out = list(self.preperiod[:count])
        if self.prefix:
            if count > len(self.preperiod):
                raise ValueError("prefix word is shorter than requested")
            return out
        k = len(self.period)
        i = 0
        while len(out) < count:
            out.append(self.period[i % k])
            i += 1
        return out

    def rotate(self, shift: int) -> "CFWord":
        """Cyclic shift of the period (same closed geodesic)."""
        if not self.period:
            raise RationalInputError("no period to rotate")
        k = len(self.period)
        s = shift % k
        return CFWord(self.preperiod, self.period[s:] + self.period[:s])

    def __str__(self) -> str:
        return format_cfword(self)


def format_cfword(w: CFWord) -> str:
    """Render as '[a0; a1, (b1, b2)]'; prefix words end with ', ...'."""
    parts = [str(a) for a in w.preperiod]
    if w.period:
        parts.append("(" + ", ".join(str(a) for a in w.period) + ")")
    if w.prefix:
        parts.append("...")
    if len(parts) == 1:
        return "[" + parts[0] + "]"
    return "[" + parts[0] + "; " + ", ".join(parts[1:]) + "]"


def parse_cfword(text: str) -> CFWord:
    """Parse '[a0; a1, a2, (b1, b2)]'; '(...)' marks the period, '...' a prefix."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(f"not a CF word: {text!r}")
    s = s[1:-1].replace(";", ",")
    items = [t.strip() for t in _split_top(s)]
    pre: list[int] = []
    per: list[int] = []
    prefix = False
    seen_period = False
    for it in items:
        if not it:
            continue
        if it == "...":
            prefix = True
            continue
        if it.startswith("("):
            if seen_period:
                raise ParseError("only one period group allowed")
            seen_period = True
            inner = it.strip("()")
            per = [int(t) for t in inner.split(",") if t.strip()]
            if not per:
                raise ParseError("empty period group")
            continue
        if seen_period:
            raise ParseError("entries after the period group")
        try:
            pre.append(int(it))
        except ValueError as exc:
            raise ParseError(f"bad partial quotient {it!r}") from exc
    return CFWord(tuple(pre), tuple(per), prefix)


def _split_top(s: str) -> list[str]:
    """Split on commas that are not inside a parenthesis group."""
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


# ---------------------------------------------------------------------------
# Word values and convergents

def word_matrix(word: Sequence[int]) -> tuple[int, int, int, int]:
    """Product of the step matrices [[a, 1], [1, 0]] over the word, in order."""
    a11, a12, a21, a22 = 1, 0, 0, 1
    for a in word:
        a11, a12 = a11 * a + a12, a11
        a21, a22 = a21 * a + a22, a21
    return a11, a12, a21, a22


def purely_periodic_value(period: Sequence[int]) -> QuadSurd:
    """Value of [b0; b1, ..., b_{k-1}, b0, b1, ...], the larger fixed point."""
    if not period or any(b < 1 for b in period):
        raise ValueError("period entries must be >= 1")
    a, b, c, d = word_matrix(period)
    disc = (a + d) ** 2 - 4 * (a * d - b * c)
    # y = (A y + B) / (C y + D): the attracting root ((A-D) + sqrt(disc)) / 2C
    return QuadSurd.make(Fraction(a - d, 2 * c), Fraction(1, 2 * c), disc)


def word_value(w: CFWord) -> QuadSurd:
    """Exact quadratic-irrational value of an eventually periodic word."""
    if w.prefix or not w.period:
        raise RationalInputError("value requires a periodic word")
    y = purely_periodic_value(w.period)
    p1, p0, q1, q0 = word_matrix(w.preperiod)
    return (p1 * y + p0) / (q1 * y + q0)


class ConvergentSeq:
    """Exact convergents p_n/q_n of a quotient stream, with recurrence state.

    Consecutive pairs satisfy p_n*q_{n-1} - p_{n-1}*q_n = (-1)**(n-1) and the
    q_n increase strictly from n = 1 on.
    """

    def __init__(self, quotients: Iterable[int]):
        self._quotients = iter(quotients)
        self.p, self.p_prev = 1, 0
        self.q, self.q_prev = 0, 1
        self.n = -1

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for a in self._quotients:
            self.p, self.p_prev = a * self.p + self.p_prev, self.p
            self.q, self.q_prev = a * self.q + self.q_prev, self.q
            self.n += 1
            yield self.p, self.q


def convergents(w: CFWord, count: int) -> list[tuple[int, int]]:
    return list(ConvergentSeq(w.quotients(count)))


# ---------------------------------------------------------------------------
# Expansion

def expand(x, n: int | None = None, max_states: int = 20000) -> CFWord:
    """Continued-fraction expansion.

    Exact input (QuadSurd): expands with exact floor/invert steps and detects
    the eventual period by first repetition of the tail state; `n` is only a
    safety cap.  Interval input (lo, hi Fractions): emits quotients while the
    enclosure pins them down, up to `n`, returning a prefix-flagged word;
    raises PrecisionExhausted (carrying the safe count) when the interval is
    too wide to continue.
    """
    if isinstance(x, QuadSurd):
        return _expand_exact(x, max_states if n is None else max(n, max_states))
    if isinstance(x, tuple) and len(x) == 2:
        if n is None:
            raise ValueError("interval expansion needs a term count n")
        return _expand_interval(Fraction(x[0]), Fraction(x[1]), n)
    if isinstance(x, (int, Fraction)):
        raise RationalInputError("rational input")
    raise TypeError("expand() takes a QuadSurd or an interval (lo, hi)")


def _expand_exact(x: QuadSurd, cap: int) -> CFWord:
    if x.is_rational():
        raise RationalInputError("rational input")
    seen: dict[QuadSurd, int] = {}
    quots: list[int] = []
    t = x
    for k in range(cap):
        if t in seen:
            i = seen[t]
            return CFWord(tuple(quots[:i]), tuple(quots[i:]))
        seen[t] = k
        a = t.floor()
        quots.append(a)
        t = (t - a).inverse()
    raise ArithmeticError(f"no period within {cap} states")


def _expand_interval(lo: Fraction, hi: Fraction, n: int) -> CFWord:
    if lo > hi:
        lo, hi = hi, lo
    quots: list[int] = []
    for _ in range(n):
        flo, fhi = math.floor(lo), math.floor(hi)
        if flo != fhi:
            raise PrecisionExhausted(
                f"precision exhausted after {len(quots)} terms", len(quots)
            )
        quots.append(flo)
        lo, hi = lo - flo, hi - flo
        if lo <= 0:  # cannot certify irrationality further
            raise PrecisionExhausted(
                f"precision exhausted after {len(quots)} terms", len(quots)
            )
        lo, hi = 1 / hi, 1 / lo
    return CFWord(tuple(quots), (), prefix=True)


# ---------------------------------------------------------------------------
# Approximation constants

@dataclass(frozen=True)
class PrefixEstimate:
    """Windowed estimate of the constant from a sampled prefix (not exact)."""

    value: float
    window: int
    positions: int
    is_estimate: bool = True


def local_qualities(w: CFWord) -> list[QuadSurd]:
    """Exact limits F_j + B_j of the convergent quality at each period position."""
    if w.prefix or not w.period:
        raise RationalInputError("periodic word required")
    k = len(w.period)
    out = []
    for j in range(k):
        rot = w.period[j:] + w.period[:j]
        forward = purely_periodic_value(rot)
        backward = purely_periodic_value(tuple(reversed(rot))).inverse()
        out.append(forward + backward)
    return out


def approx_constant(w: CFWord):
    """liminf q**2 |x - p/q| for the word's value.

    Periodic word: returns the exact QuadSurd 1 / max_j (F_j + B_j).
    Sampled prefix: returns a PrefixEstimate over the finite window.
    """
    if w.prefix:
        return _prefix_estimate(w)
    lam = max(local_qualities(w))
    return lam.inverse()


def _prefix_estimate(w: CFWord) -> PrefixEstimate:
    quots = list(w.preperiod)
    n = len(quots)
    if n < 3:
        raise ValueError("prefix too short for an estimate")
    best: Fraction | None = None
    for j in range(1, n - 1):
        fwd = _finite_value(quots[j:])
        back = 1 / _finite_value(list(reversed(quots[1 : j + 1])))
        lam = fwd + back
        if best is None or lam > best:
            best = lam
    return PrefixEstimate(value=float(1 / best), window=n, positions=n - 2)


def _finite_value(word: Sequence[int]) -> Fraction:
    a, b, c, d = word_matrix(word)
    return Fraction(a, c) if c else Fraction(a)


def brute_force_constant(
    x: QuadSurd, qmax: int, window: int = 16
) -> float:
    """Tail-window enumeration oracle: min of q**2 |x - p/q| over a q-window.

    Scans q in [max(1, qmax // window), qmax] with p the nearest integer(s) to
    q*x, entirely in 100-bit fixed point, so the reported minimum is exact to
    far below any tolerance used against it.  The window gives honest liminf
    semantics: a small-q accidental minimum does not mask the limit behaviour.
    """
    if qmax < 1:
        raise ValueError("qmax must be >= 1")
    if x.is_rational():
        raise RationalInputError("rational input")
    bits = 100
    scale = 1 << bits
    half = scale >> 1
    xs = round(x.to_fraction(bits + 60) * scale)
    xf = float(x)
    qmin = max(1, qmax // window)
    best = None  # scaled by 2**bits
    thr = math.inf
    for q in range(qmin, qmax + 1):
        t = q * xf
        v = t - round(t)
        v = q * (v if v >= 0.0 else -v)
        if v > thr:
            continue
        tq = q * xs
        diff = tq - (((tq + half) >> bits) << bits)
        val = q * (diff if diff >= 0 else -diff)
        if best is None or val < best:
            best = val
            thr = val / scale + 0.01
    assert best is not None
    return best / scale


# ---------------------------------------------------------------------------
# Markov triples: the discrete bottom of the classical spectrum

def markov_numbers(bound: int) -> set[int]:
    """All Markov numbers <= bound, by Vieta jumping from (1, 1, 1)."""
    found: set[int] = set()
    stack = [(1, 1, 1)]
    seen = set()
    while stack:
        x, y, z = stack.pop()
        if z > bound or (x, y, z) in seen:
            continue
        seen.add((x, y, z))
        found.update(v for v in (x, y, z) if v <= bound)
        for nx, ny, nz in ((x, z, 3 * x * z - y), (y, z, 3 * y * z - x)):
            t = tuple(sorted((nx, ny, nz)))
            if t[2] <= bound and t not in seen:
                stack.append(t)
    return found


def is_markov_number(m: int) -> bool:
    return m >= 1 and m in markov_numbers(m)


def markov_value(m: int) -> float:
    """m / sqrt(9 m**2 - 4) for a Markov number m; these values decrease to 1/3."""
    if not is_markov_number(m):
        raise ValueError(f"{m} is not the maximum of any Markov triple")
    lo, hi = sqrt_fraction(9 * m * m - 4, 96)
    return float(Fraction(2 * m) / (lo + hi))
