"""Isentrope tracing, counterexample scanning and level-set rasters.

Curve points are located by bisection in beta using the parity order of
kneading prefixes, which is monotone along verticals.  Rasters evaluate a
scalar field on an inclusive rectangular grid in deterministic row-major
order (top row = largest beta) so identical inputs give bit-identical
output files.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .symbolic import (
    EQUAL,
    GREATER,
    KneadingSeq,
    LESS,
    RL_INFINITY,
    compare_prefix,
)
from .tentmap import TentParams, kneading_prefix
from .theta import ConvergenceError, ThetaSpec, theta_eval

NAN = float("nan")


class BracketError(RuntimeError):
    """The target curve does not cross the admissible beta range."""


@dataclass(frozen=True)
class IsentropePoint:
    alpha: float
    beta: float
    residual_theta: float
    kneading_ok: bool


@dataclass(frozen=True)
class ScanRoot:
    beta: float
    relation: str  # "less", "equal" (within depth) or "greater"


# -- presets -------------------------------------------------------------

THEX_ALPHA0 = 0.4875
THEX_BETAS = (0.535, 0.7, 0.995)

# given without a defining property in the source material; demo preset only
EXCEPTIONAL_DIAGONAL_BETA = 0.99179142171225


def thex_spec() -> ThetaSpec:
    """Gap data of the bundled counterexample sequence: first gap 6, then
    alternating 5 and 0 for twenty-three pairs, R^inf tail."""
    gaps = [6]
    for _ in range(23):
        gaps.extend((5, 0))
    return ThetaSpec.from_text("gaps=" + ",".join(map(str, gaps)) + ";tail=R")


def exceptional_spec(depth: int = 48) -> ThetaSpec:
    """Demo spec built from the kneading data at the exceptional diagonal
    parameter; useful for level-set rasters around that point."""
    p = TentParams(0.5, EXCEPTIONAL_DIAGONAL_BETA)
    return ThetaSpec.from_kneading_prefix(kneading_prefix(p, depth))


# -- curve location -------------------------------------------------------


def _residual(spec: ThetaSpec | None, alpha: float, beta: float) -> float:
    if spec is None:
        return NAN
    try:
        return theta_eval(spec, alpha, beta).value
    except ConvergenceError:
        return NAN


def kneading_bisect_beta(
    m: KneadingSeq,
    alpha: float,
    tol: float = 1e-12,
    depth: int = 64,
    verify_depth: int = 48,
) -> IsentropePoint:
    """Locate beta with K(alpha, beta) = m by bisection on the kneading order.

    The bracket starts at (max(1-alpha, alpha, 1/2), 1); comparisons use
    depth-``depth`` prefixes.  The returned point carries the Theta residual
    of m's spec and a prefix verification at depth ``verify_depth``.
    """
    if m == RL_INFINITY:
        # the top boundary curve: K(alpha, 1) = RL^inf for every alpha
        ok = compare_prefix(kneading_prefix(TentParams(alpha, 1.0), verify_depth), m) == EQUAL
        return IsentropePoint(alpha, 1.0, NAN, ok)

    spec = ThetaSpec.from_seq(m)
    lo = max(1 - alpha, alpha, 0.5) + 1e-9
    hi = 1.0
    if lo >= hi:
        raise BracketError(f"empty beta range at alpha={alpha}")

    def side(beta: float) -> int:
        return compare_prefix(kneading_prefix(TentParams(alpha, beta), depth), m)

    c_lo = side(lo)
    if c_lo >= 0:
        raise BracketError(
            f"no valid bracket at alpha={alpha}: kneading at beta={lo:.6g} is not below target"
        )
    c_hi = side(hi)
    if c_hi < 0:
        raise BracketError(f"no valid bracket at alpha={alpha}: top of range is below target")

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        c = side(mid)
        if c == EQUAL:
            lo = hi = mid
            break
        if c < 0:
            lo = mid
        else:
            hi = mid
    beta = 0.5 * (lo + hi)

    eps_c = 1e-6 if m.is_finite else 0.0
    got = kneading_prefix(TentParams(alpha, beta), verify_depth, eps_c=eps_c)
    ok = compare_prefix(got, m) == EQUAL
    return IsentropePoint(alpha, beta, _residual(spec, alpha, beta), ok)


def trace_isentrope(m: KneadingSeq, alphas, tol: float = 1e-12, depth: int = 64):
    """Bisect per grid node; failed nodes are reported with beta = NaN
    rather than aborting the trace."""
    points: list[IsentropePoint] = []
    for a in alphas:
        try:
            points.append(kneading_bisect_beta(m, a, tol=tol, depth=depth))
        except (BracketError, ValueError):
            points.append(IsentropePoint(a, NAN, NAN, False))
    return points


def counterexample_scan(
    spec: ThetaSpec,
    alpha0: float,
    beta_lo: float,
    beta_hi: float,
    samples: int = 400,
    depth: int = 48,
) -> list[ScanRoot]:
    """Roots of t -> Theta(alpha0, t) on [beta_lo, beta_hi] with the kneading
    relation of each root against the spec's sequence.

    Theta cannot vanish where the kneading sequence lies strictly above the
    spec's own, so a Greater label flags an inconsistency and is reported,
    never silently dropped.  The label depth stays a little below the
    bisection depth: a root located to double precision drifts off a curve
    orbit by about e^(depth * entropy), which must remain small against the
    orbit scale for the equal-within-depth label.
    """
    target = spec.to_kneading()

    def f(t: float) -> float:
        try:
            return theta_eval(spec, alpha0, t).value
        except ConvergenceError:
            return NAN

    ts = [beta_lo + (beta_hi - beta_lo) * i / samples for i in range(samples + 1)]
    vals = [f(t) for t in ts]
    roots: list[float] = []
    for i in range(samples):
        v0, v1 = vals[i], vals[i + 1]
        if math.isnan(v0) or math.isnan(v1):
            continue
        if v0 == 0.0:
            roots.append(ts[i])
            continue
        if v0 * v1 < 0:
            lo, hi = ts[i], ts[i + 1]
            flo = v0
            for _ in range(100):
                mid = 0.5 * (lo + hi)
                fm = f(mid)
                if flo * fm <= 0:
                    hi = mid
                else:
                    lo = mid
                    flo = fm
            roots.append(0.5 * (lo + hi))
    if not roots:
        raise ValueError("no sign change of Theta found on the requested range")

    out: list[ScanRoot] = []
    for r in roots:
        c = compare_prefix(kneading_prefix(TentParams(alpha0, r), depth), target)
        label = {LESS: "less", EQUAL: "equal", GREATER: "greater"}[c]
        out.append(ScanRoot(r, label))
    return out


# -- rasters ---------------------------------------------------------------


@dataclass(frozen=True)
class ThetaValueField:
    spec: ThetaSpec

    def describe(self) -> str:
        return f"theta_value[{self.spec.gaps.to_text()}]"


@dataclass(frozen=True)
class ThetaSignField:
    spec: ThetaSpec

    def describe(self) -> str:
        return f"theta_sign[{self.spec.gaps.to_text()}]"


@dataclass(frozen=True)
class KneadingClassField:
    depth: int = 8

    def describe(self) -> str:
        return f"kneading_class[depth={self.depth}]"


@dataclass(frozen=True)
class RasterGrid:
    alpha_range: tuple[float, float]
    beta_range: tuple[float, float]
    width: int
    height: int
    values: tuple[float, ...]  # row-major, top row = beta_range[1]
    field: str

    def node(self, col: int, row: int) -> tuple[float, float]:
        a0, a1 = self.alpha_range
        b0, b1 = self.beta_range
        a = a0 + (a1 - a0) * col / (self.width - 1)
        b = b1 - (b1 - b0) * row / (self.height - 1)
        return a, b


def raster(field, window, width: int, height: int) -> RasterGrid:
    """Evaluate a field on an inclusive grid over window = (a0, a1, b0, b1).

    Theta fields emit NaN where the convergence guard refuses evaluation;
    the kneading-class field emits -1 outside U and otherwise an integer id
    assigned per distinct prefix in scan order.
    """
    a0, a1, b0, b1 = window
    if width < 2 or height < 2:
        raise ValueError("raster needs width, height >= 2")
    if a1 <= a0 or b1 <= b0:
        raise ValueError("zero-area window")

    class_ids: dict[str, int] = {}
    values: list[float] = []
    for row in range(height):
        b = b1 - (b1 - b0) * row / (height - 1)
        for col in range(width):
            a = a0 + (a1 - a0) * col / (width - 1)
            if isinstance(field, (ThetaValueField, ThetaSignField)):
                try:
                    v = theta_eval(field.spec, a, b).value
                except (ConvergenceError, ZeroDivisionError):
                    values.append(NAN)
                    continue
                if isinstance(field, ThetaSignField):
                    v = 0.0 if v == 0 else math.copysign(1.0, v)
                values.append(v)
            elif isinstance(field, KneadingClassField):
                p = TentParams(a, b) if 0 < a < 1 and 0 < b <= 1 else None
                if p is None or not p.in_u:
                    values.append(-1.0)
                    continue
                key = "".join(kneading_prefix(p, field.depth))
                if key not in class_ids:
                    class_ids[key] = len(class_ids)
                values.append(float(class_ids[key]))
            else:
                raise TypeError(f"unknown raster field {field!r}")
    return RasterGrid((a0, a1), (b0, b1), width, height, tuple(values), field.describe())


SENTINEL_GRAY = 255


def write_pgm(grid: RasterGrid, path: str | Path) -> dict:
    """Binary P5 PGM, maxval 255.  Finite values map affinely onto 0..254;
    NaN pixels take the reserved sentinel gray.  The mapping is recorded in
    a sidecar JSON next to the image."""
    path = Path(path)
    finite = [v for v in grid.values if not math.isnan(v)]
    vmin = min(finite) if finite else 0.0
    vmax = max(finite) if finite else 0.0
    span = vmax - vmin
    data = bytearray()
    for v in grid.values:
        if math.isnan(v):
            data.append(SENTINEL_GRAY)
        elif span == 0:
            data.append(127)
        else:
            data.append(int(round((v - vmin) / span * 254)))
    header = f"P5\n{grid.width} {grid.height}\n255\n".encode()
    path.write_bytes(header + bytes(data))
    sidecar = {
        "field": grid.field,
        "window": [grid.alpha_range[0], grid.alpha_range[1], grid.beta_range[0], grid.beta_range[1]],
        "width": grid.width,
        "height": grid.height,
        "min": vmin,
        "max": vmax,
        "sentinel_gray": SENTINEL_GRAY,
    }
    sidecar_path = path.with_suffix(".json")
    sidecar_path.write_text(json.dumps(sidecar, sort_keys=True, indent=1) + "\n")
    return sidecar


def write_csv(grid: RasterGrid, path: str | Path) -> None:
    """``alpha,beta,value`` rows in raster order, round-trip float format."""
    path = Path(path)
    lines = ["alpha,beta,value"]
    for row in range(grid.height):
        for col in range(grid.width):
            a, b = grid.node(col, row)
            lines.append(f"{a!r},{b!r},{grid.values[row * grid.width + col]!r}")
    path.write_text("\n".join(lines) + "\n")


def trace_csv(points) -> str:
    lines = ["alpha,beta,value"]
    for pt in points:
        lines.append(f"{pt.alpha!r},{pt.beta!r},{pt.residual_theta!r}")
    return "\n".join(lines) + "\n"
