"""Exact enumeration of the lattice precursor of the bead process.

Holes of ``n`` non-intersecting lattice paths across a hexagon with side
parameters ``(p, q)`` form interlaced bead columns on lines ``t = 0..p+q``:
line ``t`` carries ``min(t, p, q, p+q-t)`` beads on the step-2 sublattice
between ``b(t)`` and ``a(t)``.  On up-steps of the bead count the lower line
is padded with a virtual bead just below its floor; on down-steps the upper
line is padded just above its ceiling; consecutive (padded) lines then
interleave strictly.

Everything in this module is exact integer / rational arithmetic — the
statements it checks are identities, not approximations — and state spaces
are tiny by design (enumeration budget enforced).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "DiscreteHexagon",
    "LatticeConfiguration",
    "BudgetExceededError",
    "boundary_positions",
    "lattice_particles_per_line",
    "line_sites",
    "enumerate_configurations",
    "left_count",
    "left_count_closed_form",
    "hahn_marginal_unnormalized",
    "bruteforce_marginal",
]

_BUDGET = 16  # n*p*q cap for enumeration entry points


class BudgetExceededError(ValueError):
    """Enumeration request too large for the brute-force oracle."""


@dataclass(frozen=True)
class DiscreteHexagon:
    """Hexagon side data.  Canonical orientation has ``p <= q``; the swapped
    orientation (its mirror image) is accepted so reflection symmetry can be
    exercised as an actual computation."""

    n: int
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.p < 1 or self.q < 1:
            raise ValueError(f"need n, p, q >= 1, got ({self.n}, {self.p}, {self.q})")


@dataclass(frozen=True)
class LatticeConfiguration:
    """Real (non-virtual) bead positions per line ``t = 0..p+q``, decreasing ints."""

    lines: tuple[tuple[int, ...], ...]


def boundary_positions(hexa: DiscreteHexagon, t: int) -> tuple[int, int]:
    """Ceiling ``a(t)`` and floor ``b(t)`` of line ``t``; kinks at q and p."""
    if not 0 <= t <= hexa.p + hexa.q:
        raise ValueError(f"line {t} outside 0..{hexa.p + hexa.q}")
    a = 2 * (hexa.n - 1) + t if t <= hexa.q else 2 * (hexa.n + hexa.q - 1) - t
    b = -t if t <= hexa.p else -2 * hexa.p + t
    return a, b


def lattice_particles_per_line(hexa: DiscreteHexagon, t: int) -> int:
    if not 0 <= t <= hexa.p + hexa.q:
        raise ValueError(f"line {t} outside 0..{hexa.p + hexa.q}")
    return min(t, hexa.p, hexa.q, hexa.p + hexa.q - t)


def line_sites(hexa: DiscreteHexagon, t: int) -> range:
    """Admissible positions on line ``t``: ``b(t), b(t)+2, ..., a(t)``."""
    a, b = boundary_positions(hexa, t)
    return range(b, a + 1, 2)


def _validate_line(hexa: DiscreteHexagon, t: int, xs: Sequence[int]) -> tuple[int, ...]:
    xs = tuple(int(x) for x in xs)
    a, b = boundary_positions(hexa, t)
    for x in xs:
        if not b <= x <= a:
            raise ValueError(f"position {x} outside line-{t} bounds [{b}, {a}]")
        if (x - b) % 2 != 0:
            raise ValueError(f"position {x} off the line-{t} parity lattice")
    for hi, lo in zip(xs, xs[1:]):
        if not lo < hi:
            raise ValueError(f"positions must strictly decrease, got {xs}")
    return xs


def _interleaves(u: Sequence[int], v: Sequence[int]) -> bool:
    # equal lengths; v sits strictly above u slotwise and within u's gaps
    return all(u[j] < v[j] for j in range(len(u))) and all(
        v[j + 1] < u[j] for j in range(len(u) - 1)
    )


def _interleaves_below(u: Sequence[int], v: Sequence[int]) -> bool:
    # mirror image: v sits strictly below u slotwise and within u's gaps
    return all(v[j] < u[j] for j in range(len(u))) and all(
        u[j + 1] < v[j] for j in range(len(u) - 1)
    )


def _next_lines(hexa: DiscreteHexagon, t: int, current: tuple[int, ...]):
    """All admissible line-(t+1) tuples given line ``t`` (virtual padding applied).

    Up- and down-steps carry their orientation in the virtual bead; on plateau
    steps (equal counts, no padding) the beads drift with the window, so the
    interleaving direction follows the ceiling: above when it rises, below
    when it falls (the mirrored hexagon's plateau).
    """
    r_cur = lattice_particles_per_line(hexa, t)
    r_nxt = lattice_particles_per_line(hexa, t + 1)
    a_cur, b_cur = boundary_positions(hexa, t)
    a_nxt, _ = boundary_positions(hexa, t + 1)
    u = current + ((b_cur - 2,) if r_nxt == r_cur + 1 else ())
    pad_top = r_nxt == r_cur - 1
    accept = _interleaves
    if r_nxt == r_cur and a_nxt < a_cur:
        accept = _interleaves_below
    sites = tuple(reversed(line_sites(hexa, t + 1)))  # decreasing
    for cand in itertools.combinations(sites, r_nxt):
        v = ((a_nxt + 2,) + cand) if pad_top else cand
        if accept(u, v):
            yield cand


def _enumerate(hexa: DiscreteHexagon, pinned: dict[int, tuple[int, ...]] | None = None):
    """DFS over lines; ``pinned`` forces given tuples on given lines."""
    nl = hexa.p + hexa.q
    partial: list[tuple[int, ...]] = [()]
    out = []

    def walk(t: int) -> None:
        if t == nl:
            out.append(LatticeConfiguration(tuple(partial)))
            return
        for cand in _next_lines(hexa, t, partial[-1]):
            if pinned is not None and t + 1 in pinned and cand != pinned[t + 1]:
                continue
            partial.append(cand)
            walk(t + 1)
            partial.pop()

    walk(0)
    return out


def _check_budget(hexa: DiscreteHexagon) -> None:
    if hexa.n * hexa.p * hexa.q > _BUDGET:
        raise BudgetExceededError(
            f"n*p*q = {hexa.n * hexa.p * hexa.q} exceeds the enumeration budget {_BUDGET}"
        )


def enumerate_configurations(hexa: DiscreteHexagon) -> list[LatticeConfiguration]:
    """Every configuration of the lattice model, each exactly once."""
    _check_budget(hexa)
    return _enumerate(hexa)


def left_count(hexa: DiscreteHexagon, t: int, xs: Sequence[int]) -> int:
    """Number of fillings of lines ``1..t-1`` compatible with line ``t = xs``.

    Defined on the up-ramp ``t <= p`` (where ``xs`` has length ``t``); the
    closed form :func:`left_count_closed_form` must match this exactly.
    """
    _check_budget(hexa)
    if not 1 <= t <= min(hexa.p, hexa.q):
        raise ValueError(f"left counts need 1 <= t <= {min(hexa.p, hexa.q)}, got {t}")
    xs = _validate_line(hexa, t, xs)
    if len(xs) != lattice_particles_per_line(hexa, t):
        raise ValueError(f"line {t} needs {lattice_particles_per_line(hexa, t)} beads")

    count = 0
    partial: list[tuple[int, ...]] = [()]

    def walk(s: int) -> None:
        nonlocal count
        if s == t:
            count += 1
            return
        for cand in _next_lines(hexa, s, partial[-1]):
            if s + 1 == t and cand != xs:
                continue
            partial.append(cand)
            walk(s + 1)
            partial.pop()

    walk(0)
    return count


def left_count_closed_form(t: int, xs: Sequence[int]) -> Fraction:
    """``c_t * Vandermonde(xs)`` with ``c_t = 1/(2^{t(t-1)/2} prod_{k<t} k!)``."""
    xs = tuple(int(x) for x in xs)
    if len(xs) != t:
        raise ValueError(f"need {t} positions, got {len(xs)}")
    vand = 1
    for i in range(t):
        for j in range(i + 1, t):
            vand *= xs[i] - xs[j]
    denom = 2 ** (t * (t - 1) // 2)
    for k in range(1, t):
        denom *= math.factorial(k)
    return Fraction(vand, denom)


def hahn_marginal_unnormalized(hexa: DiscreteHexagon, t: int, xs: Sequence[int]) -> int:
    """Squared Vandermonde times the product one-bead lattice weight, exactly."""
    if not 0 <= t <= hexa.p + hexa.q:
        raise ValueError(f"line {t} outside 0..{hexa.p + hexa.q}")
    xs = _validate_line(hexa, t, xs)
    if len(xs) != lattice_particles_per_line(hexa, t):
        raise ValueError(f"line {t} needs {lattice_particles_per_line(hexa, t)} beads")
    a, b = boundary_positions(hexa, t)
    vand2 = 1
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            vand2 *= (xs[i] - xs[j]) ** 2
    weight = 1
    for x in xs:
        for k in range(1, abs(hexa.q - t) + 1):
            weight *= a + 2 * k - x
        for k in range(1, abs(hexa.p - t) + 1):
            weight *= x - b + 2 * k
    return vand2 * weight


def bruteforce_marginal(hexa: DiscreteHexagon, t: int, xs: Sequence[int]) -> int:
    """Exact count of configurations whose line ``t`` equals ``xs``."""
    _check_budget(hexa)
    if not 0 <= t <= hexa.p + hexa.q:
        raise ValueError(f"line {t} outside 0..{hexa.p + hexa.q}")
    xs = _validate_line(hexa, t, xs)
    if len(xs) != lattice_particles_per_line(hexa, t):
        raise ValueError(f"line {t} needs {lattice_particles_per_line(hexa, t)} beads")
    return len(_enumerate(hexa, pinned={t: xs}))
