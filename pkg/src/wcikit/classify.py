"""Classification drivers for amplitude -1, 0 and +1 threefold families.

Amplitude 0 is a direct finite enumeration: the ratio screen caps the
four smallest weights, the degree excess identity then caps everything
else.  Amplitudes -1 and +1 run the basket pipeline: enumerate the
small-value counts a family could show, derive its chi data, enumerate
the formal baskets consistent with that data, and try to realize each
basket as a candidate by recovering weights and degrees from its series.
All arithmetic is exact; every pruning step is a proved necessary
condition, and any tuple the case analysis cannot bound is reported, not
dropped.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Iterator

from .baskets import (
    BasketInconsistency,
    FormalBasket,
    Orbifold,
    c2_bound_ok,
    c2_load,
    canonical,
    descendants,
    gt_volume_filter,
    high_index_count_bounds,
    initial_counts_from_chis,
    k3,
    pluri_growth_filter,
)
from .candidate import (
    Candidate,
    InvalidCandidate,
    ScreenReport,
    necessary_screen,
    normalize,
)
from .series import (
    TruncatedSeries,
    max_weight_ok,
    poincare_series,
    recover_weights_degrees,
    recovery_bound,
    series_from_basket,
    series_from_candidate,
)

_HORIZON = {-1: 5, 1: 6}
_MU_CAP = {-1: 7, 1: 9}
_NU_CAP = {-1: 3, 1: 5}


@dataclass(frozen=True, slots=True)
class CountTuple:
    """Counts of small weights (values 1..h) and small degrees (values 2..h)."""

    mu: tuple[int, ...]
    nu: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.nu) != len(self.mu) - 1:
            raise ValueError("nu must cover values 2..h, one shorter than mu")

    @property
    def horizon(self) -> int:
        return len(self.mu)

    def weight_values(self) -> list[int]:
        return [v for v, count in enumerate(self.mu, start=1) for _ in range(count)]

    def degree_values(self) -> list[int]:
        return [v for v, count in enumerate(self.nu, start=2) for _ in range(count)]

    def low_series(self) -> TruncatedSeries:
        """Poincare series of the counted values, exact up to the horizon."""
        return poincare_series(self.weight_values(), self.degree_values(),
                               self.horizon)


def tuple_of_candidate(c: Candidate, horizon: int) -> CountTuple:
    """Small-value counts of an explicit candidate."""
    mu = tuple(sum(1 for a in c.weights if a == v)
               for v in range(1, horizon + 1))
    nu = tuple(sum(1 for d in c.degrees if d == v)
               for v in range(2, horizon + 1))
    return CountTuple(mu, nu)


def iter_tuples(alpha: int) -> Iterator[CountTuple]:
    """Admissible count tuples for one amplitude, in lexicographic order.

    Caps: at most dim + codim_cap + 1 weights and codim_cap degrees in
    total; a value cannot be both a weight and a degree (no linear cone);
    for amplitude +1 a small degree forces enough small weights below it.
    """
    if alpha not in _HORIZON:
        raise ValueError("tuple enumeration defined for amplitude -1 or +1")
    h = _HORIZON[alpha]
    mu_cap, nu_cap = _MU_CAP[alpha], _NU_CAP[alpha]
    nus = [n for n in product(range(nu_cap + 1), repeat=h - 1)
           if sum(n) <= nu_cap]
    for mu in product(range(mu_cap + 1), repeat=h):
        if sum(mu) > mu_cap:
            continue
        for nu in nus:
            if any(mu[i + 1] and nu[i] for i in range(h - 1)):
                continue
            if alpha == 1 and any(nu):
                if any(sum(nu[:s - 1]) > sum(mu[:s]) + 4 for s in range(2, 7)):
                    continue
            yield CountTuple(mu, nu)


def enumerate_tuples(alpha: int) -> list[CountTuple]:
    return list(iter_tuples(alpha))


@dataclass(frozen=True, slots=True)
class ChiData:
    """chi and chi_m (m = 2..6) implied by a count tuple, plus the raw series."""

    chi: int
    chis: dict[int, int]
    p: tuple[int, ...]
    pg: int


def tuple_chis(t: CountTuple, alpha: int) -> ChiData:
    """Read chi data off the low-degree series.

    Amplitude +1: coefficient m is chi_m for m >= 2 and coefficient 1 is
    the geometric genus, so chi = 1 - p_g.  Amplitude -1: coefficient m
    counts sections of -mK, which equals -chi_{m+1}.
    """
    low = t.low_series()
    if alpha == 1:
        pg = low[1]
        return ChiData(1 - pg, {m: low[m] for m in range(2, 7)},
                       tuple(low.coeffs), pg)
    if alpha == -1:
        return ChiData(1, {m: -low[m - 1] for m in range(2, 7)},
                       tuple(low.coeffs), 0)
    raise ValueError("chi data defined for amplitude -1 or +1")


def _fano_r_multisets(s: int, budget: Fraction) -> Iterator[tuple[int, ...]]:
    """Nondecreasing index multisets r >= 5 within the curvature budget."""
    acc: list[int] = []

    def rec(start: int, left: int, load: Fraction) -> Iterator[tuple[int, ...]]:
        if left == 0:
            yield tuple(acc)
            return
        for r in range(start, 25):
            floor = load + left * (r - Fraction(1, r))
            if floor > budget:
                break
            acc.append(r)
            yield from rec(r, left - 1, load + r - Fraction(1, r))
            acc.pop()

    yield from rec(5, s, Fraction(0))


def _gt_r_multisets(s: int, cap: int, headroom: Fraction) -> Iterator[tuple[int, ...]]:
    """Nondecreasing index multisets r in [5, cap] keeping the volume positive.

    headroom is K^3 of the basket with every high index point set to
    (1,4); each point (1,r) spends 1/4 - 1/r of it and the total spend
    must stay strictly below headroom.
    """
    acc: list[int] = []

    def rec(start: int, left: int, spent: Fraction) -> Iterator[tuple[int, ...]]:
        if left == 0:
            yield tuple(acc)
            return
        for r in range(start, cap + 1):
            floor = spent + left * (Fraction(1, 4) - Fraction(1, r))
            if floor >= headroom:
                break
            acc.append(r)
            yield from rec(r, left - 1, spent + Fraction(1, 4) - Fraction(1, r))
            acc.pop()

    yield from rec(5, s, Fraction(0))


def _tuple_baskets(t: CountTuple, alpha: int
                   ) -> tuple[list[tuple[FormalBasket, str]], list[str], Counter]:
    """Formal baskets consistent with one tuple, with case labels.

    Returns (baskets, exhaustiveness violations, prune counters).  Case
    labels: 'sigma5-zero' needs no high index points, 'ambient-capped'
    bounds their index by the largest possible weight, 'volume-capped'
    by positivity of the unpacked volume.
    """
    prunes: Counter = Counter()
    data = tuple_chis(t, alpha)
    if any(cm < 0 for cm in data.p):
        prunes["negative_sections"] += 1
        return [], [], prunes
    counts = initial_counts_from_chis(data.chi, data.chis)
    if counts.n12 < 0 or counts.n13 < 0 or counts.n14_plus < 0:
        prunes["negative_unpacked_counts"] += 1
        return [], [], prunes
    lo, hi = high_index_count_bounds(data.chi, data.chis)
    if lo > hi:
        prunes["empty_sigma5_range"] += 1
        return [], [], prunes
    if alpha == 1:
        if not pluri_growth_filter({m: data.p[m] for m in range(1, 7)}, data.pg):
            prunes["pluri_growth"] += 1
            return [], [], prunes
        head = Fraction(1 - data.pg - data.p[2] - data.p[3] + data.p[5], 12) \
            - Fraction(lo, 20)
        if head <= 0:
            prunes["volume"] += 1
            return [], [], prunes

    chi, chi2 = data.chi, data.chis[2]
    targets = {m: data.chis[m] for m in (3, 4, 5, 6)}
    violations: list[str] = []
    found: dict[FormalBasket, str] = {}

    if alpha == 1:
        bpp = canonical([Orbifold(1, 2)] * counts.n12
                        + [Orbifold(1, 3)] * counts.n13
                        + [Orbifold(1, 4)] * counts.n14_plus)
        headroom = k3(FormalBasket(bpp, chi, chi2))
        ambient_capped = sum(t.mu) >= 5 or any(t.nu)
        gt_prune = lambda b: k3(FormalBasket(b, chi, chi2)) <= 0  # noqa: E731

    for s in range(lo, hi + 1):
        base = [Orbifold(1, 2)] * counts.n12 + [Orbifold(1, 3)] * counts.n13 \
            + [Orbifold(1, 4)] * (counts.n14_plus - s)
        if alpha == -1:
            budget = 24 - c2_load(canonical(base))
            if budget < 0:
                continue
            multisets = _fano_r_multisets(s, budget)
            case = "c2-capped" if s else "sigma5-zero"
            prune = lambda b: c2_load(b) > 24  # noqa: E731
        else:
            if s == 0:
                multisets = iter([()])
                case = "sigma5-zero"
            else:
                caps: list[int] = []
                if ambient_capped:
                    caps.append(31)
                beta = Fraction(1, 4) - headroom + Fraction(s - 1, 20)
                if beta > 0:
                    caps.append((beta.denominator - 1) // beta.numerator)
                if not caps:
                    violations.append(
                        f"tuple mu={t.mu} nu={t.nu}: no index cap for "
                        f"sigma5={s}")
                    continue
                cap = min(caps)
                if cap < 5:
                    continue
                multisets = _gt_r_multisets(s, cap, headroom)
                case = "ambient-capped" if ambient_capped else "volume-capped"
            prune = gt_prune
        for rs in multisets:
            b0 = canonical(base + [Orbifold(1, r) for r in rs])
            for fb in descendants(b0, chi, chi2, targets, prune=prune):
                if alpha == -1:
                    if not (c2_bound_ok(fb.basket) and k3(fb) < 0):
                        continue
                else:
                    if not gt_volume_filter(fb, data.pg, data.p[2], data.p[3],
                                            data.p[5], lo):
                        continue
                found.setdefault(fb, case)
    return sorted(found.items(), key=lambda kv: kv[0].basket), violations, prunes


def candidate_formal_baskets(t: CountTuple, alpha: int) -> list[FormalBasket]:
    """All formal baskets a tuple admits, deduplicated and sorted."""
    fbs, _, _ = _tuple_baskets(t, alpha)
    return [fb for fb, _ in fbs]


@dataclass(frozen=True, slots=True)
class ClassificationRecord:
    candidate: Candidate
    formal_basket: FormalBasket | None
    screen: ScreenReport
    series_verified: bool
    provenance: tuple[str, ...]
    series_bound: int

    def to_dict(self) -> dict:
        return {
            "candidate": self.candidate.text(),
            "weights": list(self.candidate.weights),
            "degrees": list(self.candidate.degrees),
            "codim": self.candidate.codim,
            "dim": self.candidate.dim,
            "alpha": self.candidate.amplitude,
            "formal_basket": (None if self.formal_basket is None
                              else self.formal_basket.to_dict()),
            "series_verified": self.series_verified,
            "series_bound": self.series_bound,
            "provenance": list(self.provenance),
            "screen": self.screen.to_dict(),
        }


def realize(fb: FormalBasket, alpha: int,
            m_override: int | None = None) -> ClassificationRecord | None:
    """Try to present a formal basket as a candidate family.

    Builds the basket series, reads a presentation off it, and keeps the
    result only if it is a dimension 3 candidate of the right amplitude
    whose own series reproduces the basket series exactly.  Absence of a
    return value means no realization at this series bound.
    """
    full = recovery_bound(fb, alpha)
    bound = min(m_override, full) if m_override else full
    try:
        target = series_from_basket(fb, alpha, bound)
    except BasketInconsistency:
        return None
    if any(cm < 0 for cm in target.coeffs):
        return None  # section counts are never negative
    rec = recover_weights_degrees(target, max_entries=15)
    if not rec.residual_clean or not rec.weights or not rec.degrees:
        return None
    if set(rec.weights) & set(rec.degrees):
        return None
    try:
        cand = normalize(rec.weights, rec.degrees)
    except InvalidCandidate:
        return None
    if cand.dim != 3 or cand.amplitude != alpha:
        return None
    r_max = max((q.r for q in fb.basket), default=1)
    if not max_weight_ok(cand.weights[-1], r_max, cand.degrees):
        return None
    screen = necessary_screen(cand)
    if not screen.passed:
        return None
    if series_from_candidate(cand, bound).coeffs != target.coeffs:
        return None
    return ClassificationRecord(cand, fb, screen, True, (), bound)


@dataclass(frozen=True, slots=True)
class RunConfig:
    alpha: int
    m_override: int | None = 300
    full: bool = False
    codim: tuple[int, ...] | None = None
    jobs: int = 1

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "m_override": None if self.full else self.m_override,
            "full": self.full,
            "codim": list(self.codim) if self.codim else None,
            "jobs": self.jobs,
        }


@dataclass(slots=True)
class RunReport:
    alpha: int
    config: RunConfig
    records: list[ClassificationRecord]
    statistics: dict
    exhaustiveness_violations: list[str]

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "config": self.config.to_dict(),
            "records": [r.to_dict() for r in self.records],
            "statistics": self.statistics,
            "exhaustiveness_violations": list(self.exhaustiveness_violations),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _quadruples(bound: Fraction) -> Iterator[tuple[int, ...]]:
    """Nondecreasing (a0..a3) with product at most the exact bound."""
    acc: list[int] = []

    def rec(start: int, prod_so_far: int) -> Iterator[tuple[int, ...]]:
        if len(acc) == 4:
            yield tuple(acc)
            return
        a = start
        while prod_so_far * a ** (4 - len(acc)) <= bound:
            acc.append(a)
            yield from rec(a, prod_so_far * a)
            acc.pop()
            a += 1

    yield from rec(1, 1)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered splits of total into the given number of positive parts."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def classify_cy() -> list[ClassificationRecord]:
    """Every amplitude-zero threefold family passing the full screen.

    The ratio screen and product divisibility force the four smallest
    weights to have product at most ((c+4)/c)^c, the degree excess
    identity then bounds the remaining weights by the excess total, and
    each degree is one weight plus one positive excess part.
    """
    found: dict[tuple, ClassificationRecord] = {}
    for cc in range(1, 5):
        bound = Fraction(cc + 4, cc) ** cc
        for quad in _quadruples(bound):
            total = sum(quad)
            top = total - cc + 1
            if top < quad[3]:
                continue
            for upper in combinations_with_replacement(
                    range(quad[3], top + 1), cc):
                for comp in _compositions(total, cc):
                    degs = tuple(u + e for u, e in zip(upper, comp))
                    if any(degs[i] > degs[i + 1] for i in range(cc - 1)):
                        continue
                    try:
                        cand = normalize(quad + upper, degs)
                    except InvalidCandidate:
                        continue
                    key = (cand.weights, cand.degrees)
                    if key in found:
                        continue
                    screen = necessary_screen(cand)
                    if screen.passed:
                        found[key] = ClassificationRecord(
                            cand, None, screen, True,
                            ("amplitude-zero enumeration",), 0)
    return sorted(found.values(),
                  key=lambda r: (r.candidate.codim, r.candidate.degrees,
                                 r.candidate.weights))


def _batch_worker(args: tuple[int, int | None, list[CountTuple]]
                  ) -> tuple[dict, list[str], Counter]:
    alpha, override, batch = args
    records: dict[tuple, ClassificationRecord] = {}
    violations: list[str] = []
    stats: Counter = Counter()
    for t in batch:
        fbs, viols, prunes = _tuple_baskets(t, alpha)
        violations.extend(viols)
        stats.update(prunes)
        stats["baskets"] += len(fbs)
        for fb, case in fbs:
            rec = realize(fb, alpha, override)
            if rec is None:
                stats["unrealized"] += 1
                continue
            stats["realized"] += 1
            prov = f"tuple mu={t.mu} nu={t.nu} case={case}"
            key = (rec.candidate.weights, rec.candidate.degrees)
            if key in records:
                old = records[key]
                merged = tuple(sorted(set(old.provenance) | {prov}))
                records[key] = replace(old, provenance=merged)
            else:
                records[key] = replace(rec, provenance=(prov,))
    return records, violations, stats


def _drive(config: RunConfig) -> RunReport:
    alpha = config.alpha
    override = None if config.full else config.m_override
    tuples = enumerate_tuples(alpha)
    stats: Counter = Counter()
    stats["tuples"] = len(tuples)
    violations: list[str] = []
    merged: dict[tuple, ClassificationRecord] = {}

    if config.jobs > 1:
        batches = [(alpha, override, tuples[i::config.jobs])
                   for i in range(config.jobs)]
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_batch_worker, batches))
    else:
        results = [_batch_worker((alpha, override, tuples))]

    for records, viols, st in results:
        violations.extend(viols)
        stats.update(st)
        for key, rec in records.items():
            if key in merged:
                old = merged[key]
                prov = tuple(sorted(set(old.provenance) | set(rec.provenance)))
                merged[key] = replace(old, provenance=prov)
            else:
                merged[key] = rec

    records = sorted(merged.values(),
                     key=lambda r: (r.candidate.codim, r.candidate.degrees,
                                    r.candidate.weights))
    for rec in records:
        top = max(max(rec.candidate.weights), max(rec.candidate.degrees))
        if 2 * top > rec.series_bound:
            violations.append(
                f"record {rec.candidate.text()}: entry {top} above half the "
                f"series bound {rec.series_bound}")
    return RunReport(alpha, config, records, dict(stats), violations)


def classify(config: RunConfig) -> RunReport:
    """Run the driver for the configured amplitude and filter the output."""
    if config.alpha == 0:
        records = classify_cy()
        stats = {"tuples": 0, "baskets": 0, "realized": len(records)}
        report = RunReport(0, config, records, stats, [])
    elif config.alpha in (-1, 1):
        report = _drive(config)
    else:
        raise ValueError("amplitude must be -1, 0 or +1")
    if config.codim:
        report.records = [r for r in report.records
                          if r.candidate.codim in config.codim]
    return report
