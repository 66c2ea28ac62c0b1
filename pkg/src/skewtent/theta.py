"""The auxiliary series Theta(alpha, beta) = 1 - beta + sum_k x^k y^{mbar_k}
with x = (alpha-1)/beta and y = alpha/beta, built from the gap structure of
a kneading sequence.  It vanishes on the equi-kneading curve of its sequence
(and possibly elsewhere, which is the interesting part).

Evaluation, first and second partial derivatives all share one engine: the
head of the series is summed termwise and the eventually periodic tail is
summed in closed form, so no truncation error is incurred.  Every formula is
arithmetic-generic and yields exact values on Fraction inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .symbolic import C, GapSeq, KneadingSeq, R, gap_decomposition, minus_variant


class ConvergenceError(ValueError):
    """Parameters outside the region where the series converges."""


@dataclass(frozen=True)
class ThetaSpec:
    """Gap data feeding the series; wraps a validated GapSeq.

    ``source`` remembers the sequence the gaps came from when known.  The
    gaps encode the lower limit of that sequence, which differs from the
    sequence itself exactly for finite words, and kneading comparisons must
    run against the original.
    """

    gaps: GapSeq
    source: KneadingSeq | None = None

    @classmethod
    def from_seq(cls, m: KneadingSeq) -> "ThetaSpec":
        """Spec of a kneading sequence via its lower-limit variant."""
        return cls(gap_decomposition(minus_variant(m)), source=m)

    @classmethod
    def from_text(cls, text: str) -> "ThetaSpec":
        return cls(GapSeq.from_text(text))

    @classmethod
    def from_kneading_prefix(cls, symbols) -> "ThetaSpec":
        """Truncation of an orbit itinerary: complete L-runs become gaps,
        the unfinished trailing run is dropped and the tail is taken as
        R^inf.  The induced error is covered by the slope-product bound."""
        syms = list(symbols)
        if not syms or syms[0] != R:
            raise ValueError("kneading prefix must start with R")
        gaps: list[int] = []
        run = 0
        for s in syms[1:]:
            if s == R:
                gaps.append(run)
                run = 0
            elif s == C:
                break
            else:
                run += 1
        if not gaps:
            raise ValueError("prefix too short, no complete gap")
        return cls(GapSeq(tuple(gaps), (0,)))

    @property
    def m1(self) -> int:
        return self.gaps.m1

    def cum(self, k: int) -> int:
        return self.gaps.cum(k)

    def to_kneading(self) -> KneadingSeq:
        """The reference sequence: the source when known, otherwise the
        sequence spelled by the gaps."""
        if self.source is not None:
            return self.source
        return self.gaps.to_kneading()


@dataclass(frozen=True)
class ThetaValue:
    value: float
    error_bound: float
    terms_used: int


@dataclass(frozen=True)
class Quadratic2D:
    """Symmetric quadratic form a x^2 + 2 b xy + c y^2."""

    a: float
    b: float
    c: float

    def slope_roots(self) -> tuple[float, float]:
        """Roots of a + 2 b z + c z^2 = 0 (z = y/x directions)."""
        a, b, c = self.a, self.b, self.c
        if c == 0:
            raise ValueError("degenerate quadratic, leading coefficient zero")
        disc = b * b - a * c
        if disc < 0:
            raise ValueError("no real slope directions")
        r = disc ** 0.5
        # stable: avoid cancellation in the smaller root
        if b >= 0:
            z1 = (-b - r) / c
        else:
            z1 = (-b + r) / c
        z2 = a / (c * z1) if z1 != 0 else (-2 * b) / c
        return (z1, z2)


def convergence_ratio(spec: ThetaSpec, alpha, beta):
    """Dominating term ratio |x| max(1, y)^{m1}; series evaluation is
    refused at 0.999 and above."""
    x = (alpha - 1) / beta
    y = alpha / beta
    eta = abs(x)
    if y > 1:
        eta = eta * y ** spec.m1
    return eta


def _poly_value(key: str, k: int, m: int):
    if key == "1":
        return 1
    if key == "k":
        return k
    if key == "m":
        return m
    if key == "kk":
        return k * k
    if key == "km":
        return k * m
    return m * m


def _poly_in_j(key: str, k0, kj, m0, mj):
    """Coefficients (c0, c1, c2) in j of the basis monomial along
    k = k0 + kj*j, m = m0 + mj*j."""
    if key == "1":
        return (1, 0, 0)
    if key == "k":
        return (k0, kj, 0)
    if key == "m":
        return (m0, mj, 0)
    if key == "kk":
        return (k0 * k0, 2 * k0 * kj, kj * kj)
    if key == "km":
        return (k0 * m0, k0 * mj + kj * m0, kj * mj)
    return (m0 * m0, 2 * m0 * mj, mj * mj)


def _series_sums(spec: ThetaSpec, alpha, beta, keys, min_head: int = 0):
    """S[p] = sum_{k>=1} p(k, mbar_k) x^k y^{mbar_k} for basis monomials p.

    Head terms are accumulated directly; the periodic tail contributes
    geometric sums sum_j j^i rho^j in closed form.  Returns (sums, absacc,
    terms): absacc tracks accumulated magnitudes for the roundoff bound.
    """
    g = spec.gaps
    eta = convergence_ratio(spec, alpha, beta)
    if eta >= 0.999:
        raise ConvergenceError(
            f"series ratio {float(eta):.6f} >= 0.999 at alpha={float(alpha)}, beta={float(beta)}"
        )
    x = (alpha - 1) / beta
    y = alpha / beta

    h = len(g.head)
    extra = max(0, min_head)
    r = len(g.period)
    s = sum(g.period)

    out = {key: 0 for key in keys}
    absacc = 0.0
    xk = 1
    ym = 1
    mb = 0
    for k in range(1, h + extra * r + 1):
        xk = xk * x
        gap = g.gap(k)
        mb += gap
        ym = ym * y ** gap
        t = xk * ym
        absacc += abs(float(t))
        for key in keys:
            out[key] += t * _poly_value(key, k, mb)

    h_eff = h + extra * r
    M = g.cum(h_eff)
    rho = x ** r * y ** s
    if abs(rho) >= 1:
        raise ConvergenceError("periodic tail ratio has modulus >= 1")
    one = 1 - rho
    s0 = 1 / one
    s1 = rho / one ** 2
    s2 = rho * (1 + rho) / one ** 3

    ti = 0
    for i in range(1, r + 1):
        ti += g.gap(h_eff + i)
        amp = x ** (h_eff + i) * y ** (M + ti)
        k0, m0 = h_eff + i, M + ti
        absacc += abs(float(amp)) * abs(float(s0)) * 3
        for key in keys:
            c0, c1, c2 = _poly_in_j(key, k0, r, m0, s)
            out[key] += amp * (c0 * s0 + c1 * s1 + c2 * s2)
    return out, absacc, h_eff + r


def theta_eval(spec: ThetaSpec, alpha, beta, tol: float = 1e-12, min_head: int = 0) -> ThetaValue:
    """Series value with a closed-form tail.

    The reported error bound covers roundoff only, since the tail is summed
    exactly; it is far below ``tol`` everywhere the convergence guard admits.
    ``min_head`` unrolls extra period copies into the head (used to verify
    the bound, the value must not move).
    """
    sums, absacc, terms = _series_sums(spec, alpha, beta, ("1",), min_head)
    value = 1 - beta + sums["1"]
    bound = 8e-16 * (absacc + 1.0)
    if bound > tol:
        raise ConvergenceError(f"roundoff bound {bound:.2e} exceeds requested tol {tol:.2e}")
    return ThetaValue(value, bound, terms)


def theta_partial_sum(spec: ThetaSpec, alpha, beta, k: int):
    """Partial sum through stage k and the slope product P_k.

    Returns (theta_partial, p_k) with
    p_k = (beta/(1-alpha))^{k+1} (beta/alpha)^{mbar_{k+1}} (-1)^k, so that
    the orbit identity T^{k+1+mbar_{k+1}}(beta) = p_k * theta_partial holds
    when the sequence matches the kneading data at (alpha, beta).
    """
    if k < 0:
        raise ValueError("stage must be nonnegative")
    x = (alpha - 1) / beta
    y = alpha / beta
    part = 1 - beta
    xj = 1
    for j in range(1, k + 1):
        xj = xj * x
        part = part + xj * y ** spec.cum(j)
    pk = (beta / (1 - alpha)) ** (k + 1) * (beta / alpha) ** spec.cum(k + 1) * (-1) ** k
    return part, pk


def theta_grad(spec: ThetaSpec, alpha, beta, tol: float = 1e-12):
    """First partials (d_alpha, d_beta) by termwise differentiation."""
    x = (alpha - 1) / beta
    y = alpha / beta
    sums, _, _ = _series_sums(spec, alpha, beta, ("k", "m"))
    d_alpha = (sums["k"] / x + sums["m"] / y) / beta
    d_beta = -1 - (sums["k"] + sums["m"]) / beta
    return d_alpha, d_beta


def theta_hessian(spec: ThetaSpec, alpha, beta, tol: float = 1e-12) -> Quadratic2D:
    """Second differential as a quadratic form; the mixed partial is
    computed once, so symmetry holds by construction."""
    x = (alpha - 1) / beta
    y = alpha / beta
    sums, _, _ = _series_sums(spec, alpha, beta, ("k", "m", "kk", "km", "mm"))
    b2 = beta * beta
    daa = ((sums["kk"] - sums["k"]) / (x * x)
           + 2 * sums["km"] / (x * y)
           + (sums["mm"] - sums["m"]) / (y * y)) / b2
    dab = -((sums["kk"] + sums["km"]) / x + (sums["km"] + sums["mm"]) / y) / b2
    dbb = (sums["kk"] + 2 * sums["km"] + sums["mm"] + sums["k"] + sums["m"]) / b2
    return Quadratic2D(daa, dab, dbb)


def m1_first_return(alpha, beta, cap: int = 100_000) -> int:
    """Smallest m with (beta/(1-alpha))(1-beta)(beta/alpha)^m >= alpha;
    equals the first gap of the kneading sequence at (alpha, beta)."""
    if not (0 < alpha < beta <= 1):
        raise ValueError("need 0 < alpha < beta <= 1")
    v = (beta / (1 - alpha)) * (1 - beta)
    m = 0
    while v < alpha:
        v = v * beta / alpha
        m += 1
        if m > cap:
            raise RuntimeError(f"first return did not occur within {cap} steps")
    return m


def diagonal_stationary_beta(spec: ThetaSpec, lo: float = 0.505, hi: float = 0.9985,
                             grid: int = 1024) -> float:
    """The diagonal point (b, b) where the gradient of the series vanishes.

    Theta vanishes identically on the diagonal, so d_beta = -d_alpha there
    and it suffices to find the root of d_alpha along the diagonal.  Among
    the sign-change roots, the one consistent with the first-return bracket
    for the spec's own m1 is returned.
    """
    m1 = spec.m1

    def g(b: float) -> float:
        return theta_grad(spec, b, b)[0]

    roots = []
    prev_b, prev_v = lo, g(lo)
    for i in range(1, grid + 1):
        b = lo + (hi - lo) * i / grid
        v = g(b)
        if prev_v == 0:
            roots.append(prev_b)
        elif prev_v * v < 0:
            a1, a2 = prev_b, b
            for _ in range(100):
                mid = 0.5 * (a1 + a2)
                if g(a1) * g(mid) <= 0:
                    a2 = mid
                else:
                    a1 = mid
            roots.append(0.5 * (a1 + a2))
        prev_b, prev_v = b, v
    # first-return consistency: b/(1-b) must sit in (m1 - 1, m1 + 2)
    blo = (m1 - 1) / m1 if m1 > 1 else 0.0
    bhi = (m1 + 2) / (m1 + 3)
    picks = [b for b in roots if blo < b < bhi]
    if not picks:
        raise ValueError(f"no diagonal stationary point consistent with m1={m1}; roots={roots}")
    if len(picks) > 1:
        raise ValueError(f"ambiguous diagonal stationary points {picks}")
    return picks[0]
