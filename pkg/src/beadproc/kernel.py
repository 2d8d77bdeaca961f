"""Closed-form determinantal correlation kernel of the bead process.

Correlation functions of the uniform interlacing measure are minors of a
single two-line kernel ``K(s, y; t, x)``.  For ``s >= t`` it is a biorthogonal
sum of shifted Jacobi polynomials attached to the two lines, assembled in log
space with sign tracking so the code path stays stable from tiny cases up to
hundreds of lines.  For ``s < t`` the factored tables degenerate (the natural
summation range exceeds the bead counts and individual factors hit gamma-pole
times zero), so that branch is evaluated from the underlying transfer-operator
representation instead: a rank-``p`` sum of incoming/outgoing polynomial
families, minus the one-sided propagator ``(x - y)^{t-s-1}/(t-s-1)!``.  Those
polynomials are built with generalized (possibly negative) integer binomials
and evaluated in exact rational arithmetic, which also removes cancellation
between the ``p`` summands; the only rounding is the final conversion to
float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .model import HexagonSpec, particles_per_line
from .orthopoly import jacobi_tower, log_jacobi_norm

__all__ = [
    "SpacePoint",
    "KernelContext",
    "kernel_context",
    "kernel_matrix",
    "kernel_eval",
    "line_density",
    "expected_count",
    "npoint_correlation",
]


@dataclass(frozen=True)
class SpacePoint:
    """A (line, position) pair; position strictly inside (0, 1)."""

    line: int
    position: float

    def __post_init__(self) -> None:
        if not isinstance(self.line, (int, np.integer)):
            raise TypeError(f"line must be an integer, got {self.line!r}")
        if not 0.0 < self.position < 1.0:
            raise ValueError(f"position {self.position!r} not strictly inside (0, 1)")


@dataclass(frozen=True)
class _LineData:
    # Polynomial family P~^{(pa,pb)} on this line; the sum over l = 1..r uses
    # degree r - l, log-weight logc[l-1] - (other line's logc/logn), etc.
    pa: int
    pb: int
    r: int
    logc: np.ndarray  # log C_l, l = 1..r
    logn: np.ndarray  # log N_{r-l} for this line's family, l = 1..r


@dataclass(frozen=True)
class KernelContext:
    """Precomputed per-line tables; build once per (p, q) via :func:`kernel_context`."""

    spec: HexagonSpec
    lines: tuple[_LineData, ...]


def kernel_context(spec: HexagonSpec) -> KernelContext:
    p, q = spec.p, spec.q
    data = []
    for t in spec.lines():
        r = particles_per_line(spec, t)
        ls = np.arange(1, r + 1)
        if t <= p:
            pa, pb = p - t, q - t
            logc = np.array([math.lgamma(t - l + 1) - math.lgamma(p - l + 1) for l in ls])
        elif t <= q:
            pa, pb = t - p, q - t
            logc = np.array(
                [math.lgamma(q - l + 1) - math.lgamma(p + q - t - l + 1) for l in ls]
            )
        else:
            pa, pb = t - p, t - q
            logc = np.array([math.lgamma(t - l + 1) - math.lgamma(p - l + 1) for l in ls])
        logn = np.array([log_jacobi_norm(r - l, pa, pb) for l in ls])
        data.append(_LineData(pa=pa, pb=pb, r=r, logc=logc, logn=logn))
    return KernelContext(spec=spec, lines=tuple(data))


def _check_positions(name: str, arr: np.ndarray) -> None:
    if arr.size and not (np.all(arr > 0.0) and np.all(arr < 1.0)):
        raise ValueError(f"{name} positions must lie strictly inside (0, 1)")


def _gen_binom(nu: int, k: int) -> int:
    # binomial coefficient with integer (possibly negative) upper index
    if k < 0:
        return 0
    if nu >= 0:
        return math.comb(nu, k) if k <= nu else 0
    return (-1) ** k * math.comb(k - nu - 1, k)


@lru_cache(maxsize=None)
def _jacobi_monomial_coeffs(n: int, a: int, b: int) -> tuple[int, ...]:
    # Monomial coefficients of the shifted Jacobi polynomial for any integer
    # parameters (each coefficient is polynomial in (a, b), so the binomial
    # form extends the classical one).  Index k holds the x^k coefficient.
    coeffs = [0] * (n + 1)
    for k in range(n + 1):
        lead = _gen_binom(n + a, n - k) * _gen_binom(n + b, k) * (-1) ** k
        if lead == 0:
            continue
        for j in range(n - k + 1):
            coeffs[k + j] += lead * math.comb(n - k, j) * (-1) ** j
    return tuple(coeffs)


def _log_norm_fraction(n: int, a: int, b: int) -> Fraction:
    return Fraction(
        math.factorial(n + a) * math.factorial(n + b),
        (2 * n + a + b + 1) * math.factorial(n) * math.factorial(n + a + b),
    )


@lru_cache(maxsize=None)
def _psi_poly(p: int, q: int, s: int, l: int) -> tuple[Fraction, ...] | None:
    # Incoming family on line s (index l = 1..p), as exact monomial
    # coefficients in y; None when identically zero.
    if s > q:
        deg = p + q - s - l
        if deg < 0:
            return None
        scale = Fraction(math.factorial(q - l), math.factorial(deg))
        scale /= _log_norm_fraction(deg, s - p, s - q)
        return tuple(scale * c for c in _jacobi_monomial_coeffs(deg, s - p, s - q))
    scale = Fraction(math.factorial(q - l), math.factorial(p + q - s - l))
    scale /= _log_norm_fraction(p - l, q - p, 0)
    base = _jacobi_monomial_coeffs(p - l, s - p, q - s)
    out = [Fraction(0)] * (q - s + p - l + 1)
    for j in range(q - s + 1):  # multiply by (1 - y)^(q-s)
        w = scale * math.comb(q - s, j) * (-1) ** j
        for k, c in enumerate(base):
            out[k + j] += w * c
    return tuple(out)


@lru_cache(maxsize=None)
def _phi_poly(p: int, q: int, t: int, l: int) -> tuple[Fraction, ...] | None:
    # Outgoing family on line t (index l = 1..p), exact monomial coefficients in x.
    if t <= p:
        if l > t:
            return None
        scale = Fraction(
            (-1) ** (p + t) * math.factorial(p + q - t - l), math.factorial(q - l)
        )
        return tuple(scale * c for c in _jacobi_monomial_coeffs(t - l, p - t, q - t))
    scale = Fraction(math.factorial(p - l), math.factorial(t - l))
    base = _jacobi_monomial_coeffs(p - l, t - p, q - t)
    return (Fraction(0),) * (t - p) + tuple(scale * c for c in base)


def _horner(coeffs: tuple[Fraction, ...], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _cross_block(spec: HexagonSpec, s: int, ys: np.ndarray, t: int, xs: np.ndarray) -> np.ndarray:
    # s < t branch: rank-p transfer sum minus propagator, all in exact rationals.
    p, q = spec.p, spec.q
    yf = [Fraction(float(v)) for v in ys]
    xf = [Fraction(float(v)) for v in xs]
    psis, phis = [], []
    for l in range(1, p + 1):
        cp = _psi_poly(p, q, s, l)
        cq = _phi_poly(p, q, t, l)
        if cp is None or cq is None:
            continue
        psis.append([_horner(cp, y) for y in yf])
        phis.append([_horner(cq, x) for x in xf])
    fact = math.factorial(t - s - 1)
    out = np.empty((len(yf), len(xf)), dtype=float)
    for i, y in enumerate(yf):
        for j, x in enumerate(xf):
            tot = sum((pv[i] * qv[j] for pv, qv in zip(psis, phis)), Fraction(0))
            if y < x:
                tot -= (x - y) ** (t - s - 1) / fact
            out[i, j] = float(tot)
    return out


def _log_row_prefactor(spec: HexagonSpec, s: int, y: np.ndarray):
    # a_s(y): (-y)^{p-s} (1-y)^{q-s}  |  (1-y)^{q-s}  |  1
    p, q = spec.p, spec.q
    if s <= p:
        return (p - s) * np.log(y) + (q - s) * np.log1p(-y), (-1.0) ** (p - s)
    if s <= q:
        return (q - s) * np.log1p(-y), 1.0
    return np.zeros_like(y), 1.0


def _log_col_prefactor(spec: HexagonSpec, t: int, x: np.ndarray):
    # b_t(x): (-1)^{p-t}  |  x^{t-p}  |  x^{t-p} (1-x)^{t-q}
    p, q = spec.p, spec.q
    if t <= p:
        return np.zeros_like(x), (-1.0) ** (p - t)
    if t <= q:
        return (t - p) * np.log(x), 1.0
    return (t - p) * np.log(x) + (t - q) * np.log1p(-x), 1.0


def kernel_matrix(ctx: KernelContext, s: int, ys, t: int, xs) -> np.ndarray:
    """Kernel block ``K(s, y_i; t, x_j)`` for arrays of positions.

    Rows carry line ``s``, columns line ``t``.  The coincident-point
    convention of the propagator term is strict: it vanishes when ``y >= x``.
    """
    spec = ctx.spec
    if not 1 <= s <= spec.n_lines or not 1 <= t <= spec.n_lines:
        raise ValueError(f"lines ({s}, {t}) outside 1..{spec.n_lines}")
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    _check_positions("row", ys)
    _check_positions("column", xs)

    if s < t:
        return _cross_block(spec, s, ys, t, xs)

    ds, dt = ctx.lines[s - 1], ctx.lines[t - 1]
    L = min(ds.r, dt.r)
    sel = np.arange(1, L + 1)
    rows = jacobi_tower(ds.r - 1, ds.pa, ds.pb, ys)[ds.r - sel]  # (L, ny)
    cols = jacobi_tower(dt.r - 1, dt.pa, dt.pb, xs)[dt.r - sel]  # (L, nx)
    logw = ds.logc[sel - 1] - dt.logc[sel - 1] - dt.logn[sel - 1]
    shift = logw.max()
    S = np.einsum("li,l,lj->ij", rows, np.exp(logw - shift), cols)

    la, sa = _log_row_prefactor(spec, s, ys)
    lb, sb = _log_col_prefactor(spec, t, xs)
    with np.errstate(divide="ignore"):
        K = (sa * sb) * np.sign(S) * np.exp(la[:, None] + lb[None, :] + shift + np.log(np.abs(S)))
    return K


def kernel_eval(ctx: KernelContext, s: int, y: float, t: int, x: float) -> float:
    """Single kernel value ``K(s, y; t, x)``."""
    return float(kernel_matrix(ctx, s, [y], t, [x])[0, 0])


def line_density(ctx: KernelContext, t: int, xs):
    """Diagonal values ``K(t, x; t, x)`` — the one-bead density on line ``t``."""
    spec = ctx.spec
    if not 1 <= t <= spec.n_lines:
        raise ValueError(f"line {t} outside 1..{spec.n_lines}")
    xs_arr = np.atleast_1d(np.asarray(xs, dtype=float))
    _check_positions("line", xs_arr)
    d = ctx.lines[t - 1]
    sel = np.arange(1, d.r + 1)
    vals = jacobi_tower(d.r - 1, d.pa, d.pb, xs_arr)[d.r - sel]  # (r, n)
    logw = -d.logn[sel - 1]
    shift = logw.max()
    S = np.einsum("li,l,li->i", vals, np.exp(logw - shift), vals)
    la, sa = _log_row_prefactor(spec, t, xs_arr)
    lb, sb = _log_col_prefactor(spec, t, xs_arr)
    with np.errstate(divide="ignore"):
        out = (sa * sb) * np.sign(S) * np.exp(la + lb + shift + np.log(np.abs(S)))
    return float(out[0]) if np.ndim(xs) == 0 else out


@lru_cache(maxsize=8)
def _gauss_legendre_unit(n: int):
    u, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (u + 1.0), 0.5 * w


def expected_count(ctx: KernelContext, t: int, nodes: int = 400) -> float:
    """``int_0^1 K(t, x; t, x) dx`` — must reproduce the bead count of line ``t``."""
    x, w = _gauss_legendre_unit(nodes)
    return float(np.dot(w, line_density(ctx, t, x)))


def _as_point(pt) -> SpacePoint:
    if isinstance(pt, SpacePoint):
        return pt
    line, pos = pt
    return SpacePoint(int(line), float(pos))


def npoint_correlation(ctx: KernelContext, points: Sequence) -> float:
    """Correlation function ``det[K(t_i, x_i; t_j, x_j)]`` at the given points."""
    pts = [_as_point(pt) for pt in points]
    n = len(pts)
    M = np.empty((n, n), dtype=float)
    for i, a in enumerate(pts):
        for j, b in enumerate(pts):
            M[i, j] = kernel_eval(ctx, a.line, a.position, b.line, b.position)
    return float(np.linalg.det(M))
