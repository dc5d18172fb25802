"""Cross-setting assembly: estimator traces, the value/height duality, spectrum sets.

A liminf-style constant is always reported together with an `EstimatorTrace`:
one record per enumeration shell, carrying the shell-local extremum, the
cumulative extremum and the tail-window estimate actually used as the headline
value.  A limsup (asymptotic height) uses the same structure with direction
"max".
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

HURWITZ_REAL = 1 / math.sqrt(5.0)
HURWITZ_GAUSS = 1 / math.sqrt(3.0)

#: shells combined into the tail-window estimate (dyadic shells: factor 16)
DEFAULT_TAIL_SHELLS = 4

#: points within epsilon required to flag an accumulation candidate
ACCUMULATION_COUNT = 5


@dataclass(frozen=True)
class ShellRecord:
    cutoff: float
    extremum: float  # cumulative running extremum up to this shell
    raw: float  # shell-local extremum (inf/nan when the shell is empty)
    witness: str
    certified: bool


@dataclass(frozen=True)
class EstimatorTrace:
    """Cutoff-indexed monotone record of a windowed min/liminf (or max/limsup)."""

    direction: str  # "min" | "max"
    shells: tuple[ShellRecord, ...]
    tail_shells: int = DEFAULT_TAIL_SHELLS

    def __post_init__(self) -> None:
        if self.direction not in ("min", "max"):
            raise ValueError("direction must be 'min' or 'max'")

    @property
    def is_empty(self) -> bool:
        return not any(math.isfinite(s.raw) for s in self.shells)

    def cumulative(self) -> list[float]:
        return [s.extremum for s in self.shells]

    def tail_estimate(self, upto: int | None = None) -> float:
        """Extremum over the last `tail_shells` shells up to index `upto`.

        This is the honest liminf/limsup reading: early shells fall out of the
        window, so small-denominator accidents do not contaminate the estimate.
        Empty shells inside the window are skipped; an all-empty window falls
        back to the deepest nonempty shell.
        """
        shells = self.shells if upto is None else self.shells[: upto + 1]
        if not any(math.isfinite(s.raw) for s in shells):
            raise ValueError("empty trace")
        window = [s.raw for s in shells[-self.tail_shells:] if math.isfinite(s.raw)]
        if not window:
            window = [s.raw for s in shells if math.isfinite(s.raw)][-1:]
        return min(window) if self.direction == "min" else max(window)

    def tail_estimates(self) -> list[float]:
        """Tail estimate after each successive shell (stability diagnostics)."""
        out = []
        for i in range(len(self.shells)):
            try:
                out.append(self.tail_estimate(i))
            except ValueError:
                out.append(math.nan)
        return out

    def value(self) -> float:
        return self.tail_estimate()

    def best_witness(self) -> str:
        target = self.value()
        for s in self.shells:
            if math.isfinite(s.raw) and s.raw == target:
                return s.witness
        return self.shells[-1].witness


def build_trace(
    direction: str,
    shell_rows: Iterable[tuple[float, float, str, bool]],
    tail_shells: int = DEFAULT_TAIL_SHELLS,
) -> EstimatorTrace:
    """Assemble a trace from (cutoff, shell extremum, witness, certified) rows."""
    records = []
    best = math.inf if direction == "min" else -math.inf
    pick = min if direction == "min" else max
    for cutoff, raw, witness, certified in shell_rows:
        if math.isfinite(raw):
            best = pick(best, raw)
        records.append(ShellRecord(cutoff, best, raw, witness, certified))
    return EstimatorTrace(direction, tuple(records), tail_shells)


@dataclass(frozen=True)
class EstimateResult:
    """Headline liminf/limsup estimate plus its full trace.

    `flagged` marks heuristic concerns about the input (e.g. a floating-point
    point that looks parabolic); flagged results are reported, never dropped.
    """

    value: float
    trace: EstimatorTrace
    label: str = ""
    flagged: bool = False


# ---------------------------------------------------------------------------
# Duality between approximation constants and asymptotic heights

def duality(t: float) -> float:
    """The order-reversing homeomorphism t -> -log(2t), t > 0."""
    if t <= 0:
        raise ValueError("duality requires a positive constant")
    return -math.log(2.0 * t)


def duality_inverse(s: float) -> float:
    """Inverse map s -> exp(-s)/2."""
    return math.exp(-s) / 2.0


# ---------------------------------------------------------------------------
# Spectrum samples

@dataclass(frozen=True)
class SpectrumEntry:
    value: float
    height: float
    witness: str
    certified: bool = True


@dataclass(frozen=True)
class SpectrumSample:
    """Sorted sample of one approximation spectrum with its dual heights."""

    setting: str  # "rational" | "bianchi(m,ideal)" | "heisenberg(m,ideal)"
    entries: tuple[SpectrumEntry, ...]

    def __post_init__(self) -> None:
        for e in self.entries:
            if abs(e.value - duality_inverse(e.height)) > 1e-9 * max(1.0, e.value):
                raise ValueError(
                    f"entry violates value = exp(-height)/2: {e.value} vs {e.height}"
                )
        vals = [e.value for e in self.entries]
        if vals != sorted(vals):
            raise ValueError("entries must be sorted ascending by value")

    @classmethod
    def from_heights(
        cls, setting: str, rows: Iterable[tuple[float, str, bool]]
    ) -> "SpectrumSample":
        entries = [
            SpectrumEntry(duality_inverse(h), h, w, cert) for h, w, cert in rows
        ]
        entries.sort(key=lambda e: e.value)
        return cls(setting, tuple(entries))

    def values(self) -> list[float]:
        return [e.value for e in self.entries]

    def heights(self) -> list[float]:
        return [e.height for e in self.entries]

    def __len__(self) -> int:
        return len(self.entries)


# ---------------------------------------------------------------------------
# Desk-scale closedness evidence

@dataclass(frozen=True)
class AccumulationCandidate:
    value: float
    count: int
    span: float
    witnesses: tuple[str, ...]


@dataclass(frozen=True)
class NearestGeodesicGap:
    label: str
    estimate: float
    nearest_height: float
    gap: float
    witness: str


@dataclass(frozen=True)
class ClosureReport:
    epsilon: float
    accumulation_candidates: tuple[AccumulationCandidate, ...]
    nearest_gaps: tuple[NearestGeodesicGap, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "epsilon": self.epsilon,
                "accumulation_candidates": [
                    {
                        "value": c.value,
                        "count": c.count,
                        "span": c.span,
                        "witnesses": list(c.witnesses),
                    }
                    for c in self.accumulation_candidates
                ],
                "nearest_gaps": [
                    {
                        "label": g.label,
                        "estimate": g.estimate,
                        "nearest_height": g.nearest_height,
                        "gap": g.gap,
                        "witness": g.witness,
                    }
                    for g in self.nearest_gaps
                ],
            },
            indent=2,
            sort_keys=True,
        )


def closure_diagnostics(
    sample: SpectrumSample,
    epsilon: float,
    asymptotic_estimates: Sequence[tuple[str, float]] = (),
) -> ClosureReport:
    """Surface accumulation candidates and nearest-geodesic gaps.

    A candidate is a sample value v with at least ACCUMULATION_COUNT further
    sample values inside (v, v + epsilon): numerical evidence that v is a limit
    of spectrum points from above, never a proof.
    """
    if len(sample) == 0:
        raise ValueError("empty sample")
    vals = sample.values()
    entries = sample.entries
    candidates: list[AccumulationCandidate] = []
    covered_to = -math.inf
    for i, v in enumerate(vals):
        above = [j for j in range(i + 1, len(vals)) if v < vals[j] < v + epsilon]
        if len(above) >= ACCUMULATION_COUNT and v > covered_to:
            candidates.append(
                AccumulationCandidate(
                    value=v,
                    count=len(above),
                    span=vals[above[-1]] - v,
                    witnesses=tuple(entries[j].witness for j in above[:8]),
                )
            )
            covered_to = v + epsilon  # one candidate per epsilon-cluster
    gaps = []
    for label, est in asymptotic_estimates:
        nearest = min(entries, key=lambda e: abs(e.height - est))
        gaps.append(
            NearestGeodesicGap(
                label=label,
                estimate=est,
                nearest_height=nearest.height,
                gap=abs(nearest.height - est),
                witness=nearest.witness,
            )
        )
    return ClosureReport(epsilon, tuple(candidates), tuple(gaps))


@dataclass(frozen=True)
class BoundReport:
    setting: str
    max_value: float | None
    min_height: float | None
    bound: float | None
    within_bound: bool | None

    def to_json(self) -> str:
        return json.dumps(
            {
                "setting": self.setting,
                "max_value": self.max_value,
                "min_height": self.min_height,
                "bound": self.bound,
                "within_bound": self.within_bound,
            },
            indent=2,
            sort_keys=True,
        )


def duality_violations(sample: SpectrumSample, tol: float = 1e-9) -> list[dict]:
    """Entries breaking value = exp(-height)/2 beyond tol (empty when enforced).

    Sample construction already enforces the invariant; this re-derivation is
    emitted in reports so downstream consumers can audit files independently.
    """
    out = []
    for e in sample.entries:
        gap = abs(e.value - duality_inverse(e.height))
        if gap > tol * max(1.0, e.value):
            out.append({"value": e.value, "height": e.height, "gap": gap, "witness": e.witness})
    return out


def bound_check(sample: SpectrumSample) -> BoundReport:
    """Report sample extremes against the known spectrum ceilings.

    The real-case ceiling 1/sqrt(5) is sharp; the Gaussian ceiling 1/sqrt(3)
    is applied to bianchi m=1 samples as an advisory external check.
    """
    if len(sample) == 0:
        return BoundReport(sample.setting, None, None, None, None)
    max_value = max(sample.values())
    min_height = min(sample.heights())
    bound = None
    if sample.setting == "rational":
        bound = HURWITZ_REAL + 1e-12
    elif sample.setting.startswith("bianchi(1"):
        bound = HURWITZ_GAUSS + 1e-9
    within = None if bound is None else max_value <= bound
    return BoundReport(sample.setting, max_value, min_height, bound, within)
