"""Baskets of terminal cyclic quotient points and their Riemann-Roch data.

An orbifold point (b, r) stands for a quotient singularity of index r
whose local data only enters Riemann-Roch through b mod r; entries are
normalized to 0 < b <= r/2 with gcd(b, r) = 1.  A formal basket carries a
multiset of such points together with integers chi and chi_2, from which
every chi_m and the degree K^3 follow.  Packing merges two points into
one; it runs opposite to deformation, so a basket's canonical unpacking
dominates it and the finitely many baskets between the two are exactly
the candidates sharing its low-degree chi data.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Mapping


class BasketInconsistency(ValueError):
    """Raised when basket data cannot belong to any variety."""


@dataclass(frozen=True, slots=True, order=True)
class Orbifold:
    """A point (b, r); (0, 1) is the degenerate packing unit."""

    b: int
    r: int

    def __post_init__(self) -> None:
        if (self.b, self.r) == (0, 1):
            return
        if self.b < 1 or 2 * self.b > self.r:
            raise ValueError(f"need 0 < b <= r/2, got ({self.b},{self.r})")
        if gcd(self.b, self.r) != 1:
            raise ValueError(f"need gcd(b,r)=1, got ({self.b},{self.r})")


Basket = tuple[Orbifold, ...]


def canonical(points: Iterable[Orbifold]) -> Basket:
    """Sort a multiset of points by (r, b) into its canonical tuple."""
    return tuple(sorted(points, key=lambda q: (q.r, q.b)))


def format_basket(basket: Basket) -> str:
    """Render as 'count x (b,r)' groups; empty basket renders empty."""
    groups: list[str] = []
    seen: dict[Orbifold, int] = {}
    for q in basket:
        seen[q] = seen.get(q, 0) + 1
    for q in sorted(seen, key=lambda q: (q.r, q.b)):
        groups.append(f"{seen[q]}x({q.b},{q.r})")
    return "; ".join(groups)


_GROUP = re.compile(r"^(?:(\d+)\s*x)?\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)$")


def parse_basket(text: str) -> Basket:
    """Parse 'Nx(b,r); ...'; the count prefix is optional, blank means empty."""
    points: list[Orbifold] = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = _GROUP.match(chunk)
        if not m:
            raise BasketInconsistency(f"cannot parse basket term {chunk!r}")
        count = int(m.group(1) or 1)
        try:
            q = Orbifold(int(m.group(2)), int(m.group(3)))
        except ValueError as exc:
            raise BasketInconsistency(str(exc)) from None
        points.extend([q] * count)
    return canonical(points)


@dataclass(frozen=True, slots=True)
class FormalBasket:
    """A basket plus the chi and chi_2 it is asked to explain."""

    basket: Basket
    chi: int
    chi2: int

    def to_dict(self) -> dict:
        counts: dict[Orbifold, int] = {}
        for q in self.basket:
            counts[q] = counts.get(q, 0) + 1
        vol = k3(self)
        return {
            "basket": [[q.b, q.r, counts[q]]
                       for q in sorted(counts, key=lambda q: (q.r, q.b))],
            "chi": self.chi,
            "chi2": self.chi2,
            "k3": f"{vol.numerator}/{vol.denominator}",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def rr_correction(q: Orbifold, m: int) -> Fraction:
    """Riemann-Roch local term: sum_{j<m} jb(r - jb)/(2r) with jb taken mod r."""
    if q.r == 1:
        return Fraction(0)
    total = 0
    rho = 0
    for _ in range(1, m):
        rho = (rho + q.b) % q.r
        total += rho * (q.r - rho)
    return Fraction(total, 2 * q.r)


def _l(fb: FormalBasket, m: int) -> Fraction:
    return sum((rr_correction(q, m) for q in fb.basket), Fraction(0))


def k3(fb: FormalBasket) -> Fraction:
    """Canonical degree K^3 determined by chi, chi_2 and the basket."""
    return 2 * (fb.chi2 + 3 * fb.chi - _l(fb, 2))


def chi_m(fb: FormalBasket, m: int) -> Fraction:
    """chi of the m-th pluricanonical sheaf, m >= 1; integral on real baskets."""
    if m < 1:
        raise ValueError("chi_m defined for m >= 1")
    poly = Fraction((2 * m - 1) * m * (m - 1), 12)
    return poly * k3(fb) - (2 * m - 1) * fb.chi + _l(fb, m)


def chi_int_sequence(fb: FormalBasket, upto: int) -> list[int]:
    """All chi_m for m <= upto as integers, computed incrementally.

    Index 0 holds 0 and index 1 holds -chi.  Non-integral chi_m means no
    variety carries this data; that raises BasketInconsistency.
    """
    # Work scaled by 12 * lcm(2r): every term below is then an integer.
    scale = 12 * lcm(1, *(2 * q.r for q in fb.basket))
    vol = k3(fb) * scale / 12
    if vol.denominator != 1:
        raise BasketInconsistency(f"K^3 denominator escapes basket indices: {k3(fb)}")
    g = vol.numerator
    out = [0] * (max(upto, 1) + 1)
    out[1] = -fb.chi
    points = [(q.b, q.r, scale // (2 * q.r)) for q in fb.basket]
    rhos = [0] * len(points)
    running = 0  # scale times the local correction l(m)
    for m in range(2, upto + 1):
        for i, (b, r, unit) in enumerate(points):
            rho = (rhos[i] + b) % r
            rhos[i] = rho
            running += rho * (r - rho) * unit
        num = (2 * m - 1) * m * (m - 1) * g - scale * (2 * m - 1) * fb.chi + running
        q_, rem = divmod(num, scale)
        if rem:
            raise BasketInconsistency(f"chi_{m} not integral for {format_basket(fb.basket)}")
        out[m] = q_
    return out


def merge_orbifolds(p: Orbifold, q: Orbifold) -> Orbifold | None:
    """Componentwise sum, or None when the sum leaves the normalized range."""
    b, r = p.b + q.b, p.r + q.r
    if b < 1 or 2 * b > r or gcd(b, r) != 1:
        return None
    return Orbifold(b, r)


def pack(basket: Basket, i: int, j: int) -> Basket | None:
    """Merge the points at positions i and j; None when the merge is invalid."""
    if i == j:
        raise ValueError("pack needs two distinct positions")
    merged = merge_orbifolds(basket[i], basket[j])
    if merged is None:
        return None
    rest = [q for k, q in enumerate(basket) if k not in (i, j)]
    rest.append(merged)
    return canonical(rest)


def is_prime_packing(p: Orbifold, q: Orbifold) -> bool:
    """Unit determinant marks the merges used by the canonical sequence."""
    return abs(p.b * q.r - q.b * p.r) == 1


def canonical_unpacking(q: Orbifold) -> Basket:
    """Split (b, r) into b points of the two nearest unit types.

    With r = qt*b + s, 0 <= s < b, the result is (b-s) copies of (1, qt)
    and s copies of (1, qt+1).  Points with b <= 1 are already atomic.
    """
    if q.b <= 1:
        return (q,)
    qt, s = divmod(q.r, q.b)
    return canonical([Orbifold(1, qt)] * (q.b - s) + [Orbifold(1, qt + 1)] * s)


def initial_basket(basket: Basket) -> Basket:
    """Canonical unpacking applied pointwise; dominates the input basket."""
    out: list[Orbifold] = []
    for q in basket:
        out.extend(canonical_unpacking(q))
    return canonical(out)


@dataclass(frozen=True, slots=True)
class InitialCounts:
    """Multiplicities of the canonical unpacking read off low-degree chi data."""

    n12: int       # points of type (1,2)
    n13: int       # points of type (1,3)
    n14_plus: int  # points of type (1,4) plus all (1,r) with r >= 5
    sigma: int     # total number of points


def initial_counts_from_chis(chi: int, chis: Mapping[int, int]) -> InitialCounts:
    """Invert the chi formulas for the unpacked multiplicities.

    chis maps m to chi_m for m = 2..5.  The split of n14_plus between
    (1,4) and higher index points is not determined at this level.
    """
    c2, c3, c4, c5 = (chis[m] for m in (2, 3, 4, 5))
    n12 = 5 * chi + 6 * c2 - 4 * c3 + c4
    n13 = 4 * chi + 2 * c2 + 2 * c3 - 3 * c4 + c5
    n14_plus = chi - 3 * c2 + c3 + 2 * c4 - c5
    sigma = 10 * chi + 5 * c2 - c3
    return InitialCounts(n12, n13, n14_plus, sigma)


def count_five_packings(chi: int, chis: Mapping[int, int], sigma5: int) -> int:
    """Number of index-five merges in the canonical sequence, given sigma5.

    sigma5 is the number of unpacked points with r >= 5; chis needs
    m = 3, 5, 6.
    """
    return 2 * chi - chis[3] + 2 * chis[5] - chis[6] - sigma5


def high_index_count_bounds(chi: int, chis: Mapping[int, int]) -> tuple[int, int]:
    """Inclusive bounds on sigma5 forced by nonnegative packing counts.

    Lower bound: the two merge counts at index five stay nonnegative.
    Upper bound: both (1,4)-multiplicity and the index-five merge count
    stay nonnegative.  An empty range rejects the chi data.
    """
    c2, c3, c4, c5, c6 = (chis[m] for m in (2, 3, 4, 5, 6))
    lo = max(0,
             -3 * chi - 6 * c2 + 3 * c3 - c4 + 2 * c5 - c6,
             -2 * chi - 2 * c2 - 3 * c3 + 3 * c4 + c5 - c6)
    hi = min(chi - 3 * c2 + c3 + 2 * c4 - c5,
             2 * chi - c3 + 2 * c5 - c6)
    return lo, hi


def c2_load(basket: Basket) -> Fraction:
    """sum(r - 1/r) over the basket; grows under packing."""
    return sum((q.r - Fraction(1, q.r) for q in basket), Fraction(0))


def c2_bound_ok(basket: Basket) -> bool:
    """Bound on c_2 . (-K) >= 0 for amplitude -1: sum(r - 1/r) <= 24."""
    return c2_load(basket) <= 24


def pluri_growth_filter(p: Mapping[int, int], pg: int) -> bool:
    """Necessary growth of section counts for amplitude +1 families."""
    for m in (2, 3, 4):
        if p[m + 2] < p[m] + p[2] + pg:
            return False
    return p[4] >= 2 * p[2] - 1 and p[6] >= 2 * p[3] - 1


def gt_volume_filter(fb: FormalBasket, pg: int, p2: int, p3: int, p5: int,
                     sigma5_lower: int) -> bool:
    """Positive volume screen for amplitude +1.

    The first term is K^3 of the unpacked basket with every high index
    point replaced by (1,5), evaluated at the least allowed sigma5; it
    must be positive, as must K^3 of the formal basket itself.
    """
    head = Fraction(1 - pg - p2 - p3 + p5, 12) - Fraction(sigma5_lower, 20)
    return head > 0 and k3(fb) > 0


def descendants(b0: Basket, chi: int, chi2: int,
                targets: Mapping[int, int],
                prune: Callable[[Basket], bool] | None = None) -> list[FormalBasket]:
    """All baskets dominated by b0 whose chi_m hit the targets.

    Breadth-first closure of b0 under pack() with canonical dedup; a
    basket survives iff chi_m(basket, chi, chi2) equals targets[m] for
    every listed m.  prune, when given, must be monotone under packing
    (once true it stays true on every further pack); pruned baskets and
    their descendants are skipped entirely.
    """
    if prune is not None and prune(b0):
        return []
    seen: set[Basket] = {b0}
    frontier: list[Basket] = [b0]
    while frontier:
        nxt: list[Basket] = []
        for state in frontier:
            tried: set[tuple[Orbifold, Orbifold]] = set()
            for i in range(len(state)):
                for j in range(i + 1, len(state)):
                    key = (state[i], state[j])
                    if key in tried:
                        continue
                    tried.add(key)
                    child = pack(state, i, j)
                    if child is None or child in seen:
                        continue
                    if prune is not None and prune(child):
                        continue
                    seen.add(child)
                    nxt.append(child)
        frontier = nxt
    out: list[FormalBasket] = []
    for state in sorted(seen):
        fb = FormalBasket(state, chi, chi2)
        if all(chi_m(fb, m) == val for m, val in targets.items()):
            out.append(fb)
    return out
