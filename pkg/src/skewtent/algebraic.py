"""Exact polynomial machinery for finite kneading words: symbolic branch
composition, diagonal critical points and tangent slopes of the implicit
curves at the diagonal.

Polynomials carry Fraction coefficients throughout; numeric root refinement
happens only after squarefree reduction, and rational roots are reported
exactly when the reduced factor is linear or has a square discriminant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Mapping, Sequence

from .symbolic import C, L, R, parse_word
from .theta import Quadratic2D

Monomial = tuple[int, int]  # (alpha exponent, beta exponent)


class BivarPoly:
    """Polynomial in (alpha, beta) with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Monomial, Fraction] | None = None):
        cleaned: dict[Monomial, Fraction] = {}
        if coeffs:
            for (i, j), v in coeffs.items():
                v = Fraction(v)
                if v != 0:
                    cleaned[(int(i), int(j))] = v
        self.coeffs = cleaned

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "BivarPoly":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def alpha(cls) -> "BivarPoly":
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def beta(cls) -> "BivarPoly":
        return cls({(0, 1): Fraction(1)})

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "BivarPoly") -> "BivarPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return BivarPoly(out)

    def __sub__(self, other: "BivarPoly") -> "BivarPoly":
        return self + (-other)

    def __neg__(self) -> "BivarPoly":
        return BivarPoly({k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other: "BivarPoly") -> "BivarPoly":
        out: dict[Monomial, Fraction] = {}
        for (i1, j1), v1 in self.coeffs.items():
            for (i2, j2), v2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, Fraction(0)) + v1 * v2
        return BivarPoly(out)

    def scale(self, c) -> "BivarPoly":
        c = Fraction(c)
        return BivarPoly({k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BivarPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    # -- calculus and evaluation ---------------------------------------------

    def partial(self, var: str) -> "BivarPoly":
        out: dict[Monomial, Fraction] = {}
        for (i, j), v in self.coeffs.items():
            if var == "alpha" and i > 0:
                out[(i - 1, j)] = out.get((i - 1, j), Fraction(0)) + v * i
            elif var == "beta" and j > 0:
                out[(i, j - 1)] = out.get((i, j - 1), Fraction(0)) + v * j
        if var not in ("alpha", "beta"):
            raise ValueError(f"unknown variable {var!r}")
        return BivarPoly(out)

    def evaluate(self, a, b):
        """Exact on Fraction arguments, float on float arguments."""
        if isinstance(a, Fraction) or isinstance(b, Fraction):
            total = Fraction(0)
            for (i, j), v in self.coeffs.items():
                total += v * Fraction(a) ** i * Fraction(b) ** j
            return total
        total = 0.0
        for (i, j), v in self.coeffs.items():
            total += float(v) * a ** i * b ** j
        return total

    def substitute_diagonal(self) -> list[Fraction]:
        """Coefficients (ascending) of p(a, a) as a univariate polynomial."""
        deg = max((i + j for (i, j) in self.coeffs), default=0)
        out = [Fraction(0)] * (deg + 1)
        for (i, j), v in self.coeffs.items():
            out[i + j] += v
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def total_degree(self) -> int:
        return max((i + j for (i, j) in self.coeffs), default=0)

    def normalized(self) -> "BivarPoly":
        """Primitive integer coefficients, positive leading graded-lex term."""
        if self.is_zero:
            return BivarPoly()
        denom_lcm = 1
        for v in self.coeffs.values():
            denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
        ints = {k: v * denom_lcm for k, v in self.coeffs.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v.numerator)
        ints = {k: Fraction(v.numerator, g) for k, v in ints.items()}
        lead = max(ints, key=lambda k: (k[0] + k[1], k[0]))
        if ints[lead] < 0:
            ints = {k: -v for k, v in ints.items()}
        return BivarPoly(ints)

    def to_text(self) -> str:
        """Graded-lex rendering, exact rationals as p/q."""
        if self.is_zero:
            return "0"
        keys = sorted(self.coeffs, key=lambda k: (-(k[0] + k[1]), -k[0]))
        parts = []
        for (i, j) in keys:
            v = self.coeffs[(i, j)]
            term = str(v)
            if i:
                term += f"*a^{i}"
            if j:
                term += f"*b^{j}"
            parts.append(term)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BivarPoly({self.to_text()})"


# -- branch composition ---------------------------------------------------------


@dataclass(frozen=True)
class RationalExpr:
    """Value of a branch composition: numerator over alpha^i (alpha-1)^j.

    Branch maps contribute no other denominator factors, so the denominator
    is tracked by its two exponents rather than as a general polynomial.
    """

    numerator: BivarPoly
    alpha_power: int = 0
    alpha_minus_one_power: int = 0

    def denominator(self) -> BivarPoly:
        d = BivarPoly.constant(1)
        a = BivarPoly.alpha()
        shifted = a - BivarPoly.constant(1)
        for _ in range(self.alpha_power):
            d = d * a
        for _ in range(self.alpha_minus_one_power):
            d = d * shifted
        return d

    def apply_branch(self, symbol: str) -> "RationalExpr":
        b = BivarPoly.beta()
        if symbol == L:
            # (beta/alpha) x
            return RationalExpr(self.numerator * b, self.alpha_power + 1,
                                self.alpha_minus_one_power)
        if symbol == R:
            # beta (x - 1) / (alpha - 1)
            return RationalExpr(b * (self.numerator - self.denominator()),
                                self.alpha_power, self.alpha_minus_one_power + 1)
        raise ValueError(f"branch symbol must be L or R, got {symbol!r}")


def compose_branch_condition(word: str | Sequence[str]) -> BivarPoly:
    """Numerator polynomial of the condition T^n(beta) = alpha along a word.

    The word names the branch applied at each orbit point, starting with the
    leading R consumed at beta itself; a trailing C is accepted and dropped.
    The zero set of the result contains the equi-kneading curve of the word
    and the diagonal.  Content is removed and the sign fixed so the leading
    graded-lex monomial (alpha first) is positive.
    """
    if isinstance(word, str):
        syms = parse_word(word)
    else:
        syms = tuple(word)
        if syms and syms[-1] == C:
            syms = syms[:-1]
    if not syms:
        raise ValueError("empty word")
    if any(s == C for s in syms):
        raise ValueError("C may only terminate the word")
    if syms[0] != R:
        raise ValueError("word must start with R")

    expr = RationalExpr(BivarPoly.beta())
    for s in syms:
        expr = expr.apply_branch(s)
    result = expr.numerator - BivarPoly.alpha() * expr.denominator()
    return result.normalized()


# -- univariate helpers (coefficients ascending, Fractions) -----------------------


def _upoly_eval(coeffs: Sequence[Fraction], x):
    total = Fraction(0) if isinstance(x, Fraction) else 0.0
    convert = (lambda c: c) if isinstance(x, Fraction) else float
    for c in reversed(coeffs):
        total = total * x + convert(c)
    return total


def _upoly_derivative(coeffs: Sequence[Fraction]) -> list[Fraction]:
    return [coeffs[i] * i for i in range(1, len(coeffs))] or [Fraction(0)]


def _upoly_trim(coeffs: Sequence[Fraction]) -> list[Fraction]:
    out = list(coeffs) or [Fraction(0)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _upoly_rem(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a = _upoly_trim(a)
    b = _upoly_trim(b)
    if b == [Fraction(0)]:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    while len(r) >= len(b) and r != [Fraction(0)]:
        factor = r[-1] / b[-1]
        shift = len(r) - len(b)
        for i in range(len(b)):
            r[shift + i] -= factor * b[i]
        r.pop()  # leading term cancels exactly
        r = _upoly_trim(r)
    return r


def _upoly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a = _upoly_trim(a)
    b = _upoly_trim(b)
    while not (len(b) == 1 and b[0] == 0):
        a, b = b, _upoly_rem(a, b)
    if a[-1] != 0:
        a = [c / a[-1] for c in a]
    return a


def _squarefree(coeffs: Sequence[Fraction]) -> list[Fraction]:
    g = _upoly_gcd(coeffs, _upoly_derivative(coeffs))
    if len(g) == 1:
        return _upoly_trim(coeffs)
    # divide exactly by the gcd
    a = _upoly_trim(coeffs)
    q: list[Fraction] = [Fraction(0)] * (len(a) - len(g) + 1)
    rem = list(a)
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + len(g) - 1] / g[-1]
        q[k] = c
        for i in range(len(g)):
            rem[k + i] -= c * g[i]
    return _upoly_trim(q)


def _exact_roots_low_degree(coeffs: Sequence[Fraction]) -> list[Fraction] | None:
    """Exact roots for degree 1, and degree 2 with square discriminant."""
    c = _upoly_trim(coeffs)
    if len(c) == 2:
        return [-c[0] / c[1]]
    if len(c) == 3:
        a2, a1, a0 = c[2], c[1], c[0]
        disc = a1 * a1 - 4 * a2 * a0
        if disc < 0:
            return []
        num = disc.numerator
        den = disc.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn == num and rd * rd == den:
            root = Fraction(rn, rd)
            return [(-a1 - root) / (2 * a2), (-a1 + root) / (2 * a2)]
        return None
    return None


def _bisect_root(coeffs: Sequence[Fraction], lo: float, hi: float, iters: int = 80) -> float:
    flo = _upoly_eval(coeffs, lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = _upoly_eval(coeffs, mid)
        if flo * fm <= 0:
            hi = mid
        else:
            lo = mid
            flo = fm
    return 0.5 * (lo + hi)


def isolate_real_roots(coeffs: Sequence[Fraction], lo, hi, grid: int | None = None):
    """Real roots of a univariate polynomial inside the open interval
    (lo, hi): sign-change bisection on the squarefree part, exact values
    where the reduced polynomial admits them."""
    sf = _squarefree(coeffs)
    exact = _exact_roots_low_degree(sf)
    if exact is not None:
        return sorted(r for r in exact if Fraction(lo) < r < Fraction(hi))
    if grid is None:
        grid = 64 * max(4, len(sf))
    lo_f, hi_f = float(lo), float(hi)
    eps = (hi_f - lo_f) * 1e-12
    xs = [lo_f + eps + (hi_f - lo_f - 2 * eps) * i / grid for i in range(grid + 1)]
    vals = [_upoly_eval(sf, x) for x in xs]
    roots: list[float] = []
    for i in range(grid):
        if vals[i] == 0:
            roots.append(xs[i])
        elif vals[i] * vals[i + 1] < 0:
            roots.append(_bisect_root(sf, xs[i], xs[i + 1]))
    return roots


# -- diagonal analysis ---------------------------------------------------------


def diagonal_critical_points(p: BivarPoly, lo=Fraction(1, 2), hi=Fraction(1)) -> list:
    """Roots of (d_alpha p)(a, a) in the open interval (1/2, 1).

    These are the candidate diagonal meeting points of the implicit curve.
    Requires p to vanish identically on the diagonal (checked exactly).
    """
    diag = p.substitute_diagonal()
    if _upoly_trim(diag) != [Fraction(0)]:
        raise ValueError("polynomial does not vanish on the diagonal")
    q = p.partial("alpha").substitute_diagonal()
    roots = isolate_real_roots(q, lo, hi)
    if not roots:
        raise ValueError("no diagonal critical points in (1/2, 1)")
    return roots


def slope_at_diagonal(p: BivarPoly, beta0):
    """Tangent slopes of the zero set of p at the diagonal point (b0, b0).

    The first differential must vanish there (the curve crosses the
    diagonal); the second differential A x^2 + 2 B xy + C y^2 then has the
    two crossing directions as the roots of A + 2 B z + C z^2 = 0.  One root
    is the diagonal itself (z = 1, exact because A + 2B + C = 0 whenever p
    vanishes on the diagonal); the other is the isentrope tangent slope.
    Returns ((1, slope), quadratic).
    """
    exact = isinstance(beta0, Fraction)
    da = p.partial("alpha").evaluate(beta0, beta0)
    db = p.partial("beta").evaluate(beta0, beta0)
    scale = max(1.0, max(abs(float(v)) for v in p.coeffs.values()))
    if exact:
        nonzero = da != 0 or db != 0
    else:
        nonzero = abs(da) > 1e-10 * scale or abs(db) > 1e-10 * scale
    if nonzero:
        implicit = None if db == 0 else -da / db
        raise ValueError(
            "first differential does not vanish at the diagonal point; "
            f"implicit differentiation applies instead, slope {implicit}"
        )
    qa = p.partial("alpha").partial("alpha").evaluate(beta0, beta0)
    qb = p.partial("alpha").partial("beta").evaluate(beta0, beta0)
    qc = p.partial("beta").partial("beta").evaluate(beta0, beta0)
    if qc == 0:
        raise ValueError("degenerate second differential (C = 0)")
    resid = qa + 2 * qb + qc
    if exact:
        if resid != 0:
            raise AssertionError("diagonal direction not a root of the quadratic")
        one = Fraction(1)
    else:
        if abs(resid) > 1e-10 * max(abs(qa), abs(qc), 1.0):
            raise AssertionError("diagonal direction not a root of the quadratic")
        one = 1.0
    other = qa / qc
    quad = Quadratic2D(qa, qb, qc)
    return (one, other), quad
