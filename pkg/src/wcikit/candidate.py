"""Weighted complete intersection candidates and their numerical screens.

A candidate is a pair of multisets: ambient weights a_0 <= ... <= a_n and
hypersurface degrees d_1 <= ... <= d_c, describing a family of complete
intersections of codimension c in the weighted projective space P(a).
Every check in this module is a necessary condition for the family to
contain a quasismooth, well formed member with at worst terminal isolated
singularities; all tests are exact integer arithmetic and none proves
existence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod


class InvalidCandidate(ValueError):
    """Raised when weights or degrees cannot form a candidate."""


class CandidateParseError(ValueError):
    """Raised when candidate text does not parse."""


@dataclass(frozen=True, slots=True)
class Candidate:
    """Normalized weight and degree data; build via normalize()."""

    weights: tuple[int, ...]
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.weights or not self.degrees:
            raise InvalidCandidate("weights and degrees must be nonempty")
        if any(a < 1 for a in self.weights) or any(d < 1 for d in self.degrees):
            raise InvalidCandidate("entries must be positive integers")
        if list(self.weights) != sorted(self.weights):
            raise InvalidCandidate("weights must be sorted ascending")
        if list(self.degrees) != sorted(self.degrees):
            raise InvalidCandidate("degrees must be sorted ascending")
        if self.dim < 1:
            raise InvalidCandidate("need more weights than degrees plus one")

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    @property
    def codim(self) -> int:
        return len(self.degrees)

    @property
    def dim(self) -> int:
        return self.n - self.codim

    @property
    def amplitude(self) -> int:
        """Degree sum minus weight sum; the canonical sheaf is O(amplitude)."""
        return sum(self.degrees) - sum(self.weights)

    def text(self) -> str:
        return "%s / %s" % (
            ",".join(map(str, self.weights)),
            ",".join(map(str, self.degrees)),
        )

    def __str__(self) -> str:
        return "X(%s) in P(%s)" % (
            ",".join(map(str, self.degrees)),
            ",".join(map(str, self.weights)),
        )


def normalize(weights: list[int] | tuple[int, ...],
              degrees: list[int] | tuple[int, ...]) -> Candidate:
    """Sort both multisets and validate them as a Candidate."""
    if not weights:
        raise InvalidCandidate("weights must be nonempty")
    return Candidate(tuple(sorted(weights)), tuple(sorted(degrees)))


def parse_candidate(text: str) -> Candidate:
    """Parse 'a0,a1,...,an / d1,...,dc'; whitespace is ignored."""
    parts = text.split("/")
    if len(parts) != 2:
        raise CandidateParseError("expected one '/' between weights and degrees")

    def ints(chunk: str, side: str) -> list[int]:
        items = [s.strip() for s in chunk.split(",")]
        if items == [""]:
            raise CandidateParseError(f"empty {side} list")
        try:
            values = [int(s) for s in items]
        except ValueError as exc:
            raise CandidateParseError(f"bad integer in {side}: {exc}") from None
        return values

    try:
        return normalize(ints(parts[0], "weights"), ints(parts[1], "degrees"))
    except InvalidCandidate as exc:
        raise CandidateParseError(str(exc)) from None


@dataclass(frozen=True, slots=True)
class DeltaVector:
    """Degree excesses d_j - a_{j+dim} of a normalized candidate."""

    values: tuple[int, ...]
    total: int


def deltas(c: Candidate) -> DeltaVector:
    """Pair the j-th degree with the (j+dim)-th weight and take differences.

    The total always equals a_0 + ... + a_dim + amplitude.
    """
    dim = c.dim
    values = tuple(d - a for d, a in zip(c.degrees, c.weights[dim + 1:]))
    return DeltaVector(values, sum(values))


def is_linear_cone(c: Candidate) -> bool:
    """True iff some degree equals some weight (a degenerate presentation)."""
    return bool(set(c.weights) & set(c.degrees))


def check_wps_wellformed(c: Candidate) -> bool:
    """True iff every n of the n+1 weights are collectively coprime."""
    w = c.weights
    for i in range(len(w)):
        g = 0
        for j, a in enumerate(w):
            if j != i:
                g = gcd(g, a)
        if g > 1:
            return False
    return True


def check_degree_weight_order(c: Candidate) -> bool:
    """True iff every paired degree strictly exceeds its weight (delta_j >= 1)."""
    return all(v >= 1 for v in deltas(c).values)


def check_codim_bound(c: Candidate) -> bool:
    """Codimension cap: c <= dim + amplitude + 1 when amplitude >= 0, else c <= dim."""
    alpha = c.amplitude
    cap = c.dim + alpha + 1 if alpha >= 0 else c.dim
    return c.codim <= cap


@dataclass(frozen=True, slots=True)
class CheckResult:
    name: str
    passed: bool
    witness: str | None = None


def check_weight_degree_divisibility(c: Candidate) -> list[CheckResult]:
    """Quasismoothness fragment: large weights divide degrees, tail deltas bound.

    Part one: any weight exceeding the smallest degree must divide some
    degree.  Part two: when c >= dim + 1 the j-th delta from the top is at
    least the matching weight from the bottom.
    """
    results: list[CheckResult] = []
    d1 = c.degrees[0]
    bad = None
    for a in c.weights:
        if a > d1 and all(d % a for d in c.degrees):
            bad = a
            break
    results.append(CheckResult(
        "large_weight_divides", bad is None,
        None if bad is None else f"weight {bad} > d1={d1} divides no degree"))

    dim, cc = c.dim, c.codim
    if cc >= dim + 1:
        dv = deltas(c).values
        bad_pair = None
        for j in range(dim + 1):
            if dv[cc - 1 - j] < c.weights[dim - j]:
                bad_pair = (cc - j, dv[cc - 1 - j], c.weights[dim - j])
                break
        results.append(CheckResult(
            "tail_delta_bound", bad_pair is None,
            None if bad_pair is None else
            "delta_%d=%d < weight %d" % bad_pair))
    else:
        results.append(CheckResult("tail_delta_bound", True, "vacuous: c <= dim"))
    return results


def _weight_divisors(c: Candidate) -> set[int]:
    """All divisors > 1 of any weight; every subset gcd is among them."""
    out: set[int] = set()
    for a in set(c.weights):
        for h in range(2, a + 1):
            if a % h == 0:
                out.add(h)
    return out


def _div_counts(c: Candidate, h: int) -> tuple[int, int]:
    w = sum(1 for a in c.weights if a % h == 0)
    d = sum(1 for d_ in c.degrees if d_ % h == 0)
    return w, d


def check_isolated_divisibility(c: Candidate) -> list[CheckResult]:
    """Isolated singular locus on a threefold, via divisibility counts.

    Equivalent to: every subset of up to c+1 weights with gcd h has at
    least (subset size - 1) degrees divisible by h, and every larger
    subset is coprime.  Counting weights and degrees divisible by each
    candidate h > 1 covers all subsets at once.
    """
    if c.dim != 3:
        raise InvalidCandidate("isolated singularity screen needs dim 3")
    cc = c.codim
    for h in sorted(_weight_divisors(c)):
        w, d = _div_counts(c, h)
        if w > cc + 1:
            return [CheckResult(
                "isolated_gcd_counts", False,
                f"{w} weights share divisor {h}, at most {cc + 1} allowed")]
        if d < w - 1:
            return [CheckResult(
                "isolated_gcd_counts", False,
                f"divisor {h}: {w} weights but only {d} degrees divisible, "
                f"needs {w - 1}")]
    return [CheckResult("isolated_gcd_counts", True)]


def check_terminal_divisibility(c: Candidate) -> list[CheckResult]:
    """Terminal singularity screen on a threefold, via divisibility counts.

    For each divisor h > 1 carried by w weights (capped at c+1), h must
    divide that many degrees outright, or one fewer while h also divides
    a_m + amplitude for some weight a_m outside the subset.  For
    amplitude 0 the escape weight must itself be divisible by h, which
    forces h to divide as many degrees as weights.
    """
    if c.dim != 3:
        raise InvalidCandidate("terminal singularity screen needs dim 3")
    alpha = c.amplitude
    cc = c.codim
    for h in sorted(_weight_divisors(c)):
        w, d = _div_counts(c, h)
        need = min(w, cc + 1)
        if d >= need:
            continue
        if d == need - 1:
            if alpha == 0:
                if w > need:
                    continue
            elif any((a + alpha) % h == 0 for a in c.weights):
                continue
        return [CheckResult(
            "terminal_gcd_counts", False,
            f"divisor {h}: {d} of {need} required degrees divisible, "
            f"no escape weight")]
    return [CheckResult("terminal_gcd_counts", True)]


def check_cy_product(c: Candidate) -> bool:
    """Amplitude-zero threefolds: the weight product divides the degree product."""
    if c.dim != 3 or c.amplitude != 0:
        raise InvalidCandidate("product divisibility screen needs dim 3, amplitude 0")
    return prod(c.degrees) % prod(c.weights) == 0


def degree_ratio_screen(c: Candidate) -> tuple[bool, Fraction]:
    """Degree-to-weight ratio cap for amplitude >= 0.

    Checks sum(d_j / a_{j+dim}) <= c + amplitude + dim + 1 and returns the
    derived enumeration bound ((c+alpha+dim+1)/c)^c / (a_0 * ... * a_dim),
    an upper bound for prod(degrees)/prod(weights).
    """
    alpha = c.amplitude
    if alpha < 0:
        raise InvalidCandidate("ratio screen needs amplitude >= 0")
    dv = deltas(c)
    if any(v < 1 for v in dv.values):
        raise InvalidCandidate("ratio screen needs all deltas >= 1")
    dim, cc = c.dim, c.codim
    cap = cc + alpha + dim + 1
    total = sum(Fraction(d, a) for d, a in zip(c.degrees, c.weights[dim + 1:]))
    bound = Fraction(cap, cc) ** cc / prod(c.weights[:dim + 1])
    return total <= cap, bound


@dataclass(frozen=True, slots=True)
class ScreenReport:
    candidate: Candidate
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(ch.passed for ch in self.checks)

    def failed_names(self) -> list[str]:
        return [ch.name for ch in self.checks if not ch.passed]

    def to_dict(self) -> dict:
        return {
            "candidate": self.candidate.text(),
            "alpha": self.candidate.amplitude,
            "dim": self.candidate.dim,
            "passed": self.passed,
            "checks": [
                {"name": ch.name, "passed": ch.passed, "witness": ch.witness}
                for ch in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def necessary_screen(c: Candidate) -> ScreenReport:
    """Run every screen that applies to the candidate's dimension and amplitude.

    Check order is fixed so reports are deterministic.  Dimension 3 is
    required for the singularity screens; other dimensions get only the
    presentation-level checks.
    """
    checks: list[CheckResult] = []
    lc = is_linear_cone(c)
    checks.append(CheckResult(
        "not_linear_cone", not lc,
        None if not lc else
        f"shared value {min(set(c.weights) & set(c.degrees))}"))
    checks.append(CheckResult("well_formed_space", check_wps_wellformed(c)))
    order_ok = check_degree_weight_order(c)
    checks.append(CheckResult(
        "degrees_dominate", order_ok,
        None if order_ok else f"deltas {deltas(c).values}"))
    checks.append(CheckResult("codim_bound", check_codim_bound(c)))
    checks.extend(check_weight_degree_divisibility(c))
    if c.dim == 3:
        checks.extend(check_isolated_divisibility(c))
        checks.extend(check_terminal_divisibility(c))
        if c.amplitude == 0:
            checks.append(CheckResult("product_divides", check_cy_product(c)))
    if c.amplitude >= 0 and order_ok:
        ratio_ok, _ = degree_ratio_screen(c)
        checks.append(CheckResult("degree_ratio_bound", ratio_ok))
    return ScreenReport(c, tuple(checks))
