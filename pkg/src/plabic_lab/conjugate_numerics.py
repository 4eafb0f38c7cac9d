"""Finite-difference checks of the explicit local model near a crossing.

Adapted coordinates (s, t) with 0 < t < 1 parametrize the surface by
x = s(1-t), y = st and the covector (xi, eta) solving for d log m with
m = exp(-s / (t(1-t))).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence


class ChartError(ValueError):
    pass


def _check_t(t: float) -> None:
    if not 0.0 < t < 1.0:
        raise ChartError(f"t = {t} is outside (0, 1)")


def log_m(s: float, t: float) -> float:
    _check_t(t)
    return -s / (t * (1.0 - t))


def xi(t: float) -> float:
    return (3.0 * t - 2.0) / (t * (1.0 - t) ** 2)


def eta(t: float) -> float:
    return (1.0 - 3.0 * t) / (t**2 * (1.0 - t))


def local_embedding(s: float, t: float) -> tuple[float, float, float, float]:
    """(x, y, xi, eta) at adapted coordinates (s, t)."""
    _check_t(t)
    return s * (1.0 - t), s * t, xi(t), eta(t)


def covector_direction(t: float) -> tuple[float, float]:
    """Unit vector along (xi, eta)."""
    a, b = xi(t), eta(t)
    r = math.hypot(a, b)
    return a / r, b / r


# -- grids and residuals ---------------------------------------------------------


@dataclass(frozen=True)
class Grid:
    s_min: float = -2.0
    s_max: float = 2.0
    t_min: float = 0.05
    t_max: float = 0.95
    ns: int = 200
    nt: int = 200

    def points(self) -> Iterable[tuple[float, float]]:
        for a in range(self.ns):
            s = self.s_min + (self.s_max - self.s_min) * a / (self.ns - 1)
            for b in range(self.nt):
                yield s, self.t_min + (self.t_max - self.t_min) * b / (self.nt - 1)


@dataclass
class ResidualReport:
    h: float
    gradient_s: float = 0.0
    gradient_t: float = 0.0
    symplectic: float = 0.0
    proof_identity: float = 0.0
    rows: list[tuple[float, float, float, float, float, float]] = field(default_factory=list, repr=False)

    @property
    def max_residual(self) -> float:
        return max(self.gradient_s, self.gradient_t, self.symplectic, self.proof_identity)

    def ok(self, tol: float = 1e-6) -> bool:
        return self.max_residual < tol

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["s", "t", "gradient_s", "gradient_t", "symplectic", "proof_identity"])
        for row in self.rows:
            wr.writerow([repr(x) for x in row])
        return buf.getvalue()


def _d(f: Callable[[float], float], u: float, h: float) -> float:
    return (f(u + h) - f(u - h)) / (2.0 * h)


def _scaled(value: float, *terms: float) -> float:
    return abs(value) / (1.0 + max(abs(x) for x in terms))


def verify_exact_lagrangian(grid: Grid = Grid(), h: float = 1e-5, keep_rows: bool = False) -> ResidualReport:
    """Central-difference residuals, each divided by 1 + the largest term in it.

    Checks that (xi, eta) pulled back along (x, y) is d log m, that the
    symplectic form pulls back to zero and that (1-t) xi_t + t eta_t = 0.
    """
    if grid.t_min - h <= 0.0 or grid.t_max + h >= 1.0:
        raise ChartError("grid (with its stencil) must stay inside 0 < t < 1")
    rep = ResidualReport(h)
    for s, t in grid.points():
        x = lambda ss, tt: local_embedding(ss, tt)[0]  # noqa: E731
        y = lambda ss, tt: local_embedding(ss, tt)[1]  # noqa: E731
        x_s, x_t = _d(lambda u: x(u, t), s, h), _d(lambda u: x(s, u), t, h)
        y_s, y_t = _d(lambda u: y(u, t), s, h), _d(lambda u: y(s, u), t, h)
        xi_s, xi_t = _d(lambda u: xi(t), s, h), _d(xi, t, h)
        eta_s, eta_t = _d(lambda u: eta(t), s, h), _d(eta, t, h)
        lm_s, lm_t = _d(lambda u: log_m(u, t), s, h), _d(lambda u: log_m(s, u), t, h)
        a, b = xi(t), eta(t)
        g_s = _scaled(a * x_s + b * y_s - lm_s, a * x_s, b * y_s, lm_s)
        g_t = _scaled(a * x_t + b * y_t - lm_t, a * x_t, b * y_t, lm_t)
        om = x_s * xi_t - x_t * xi_s + y_s * eta_t - y_t * eta_s
        sym = _scaled(om, x_s * xi_t, x_t * xi_s, y_s * eta_t, y_t * eta_s)
        pid = _scaled((1.0 - t) * xi_t + t * eta_t, (1.0 - t) * xi_t, t * eta_t)
        rep.gradient_s = max(rep.gradient_s, g_s)
        rep.gradient_t = max(rep.gradient_t, g_t)
        rep.symplectic = max(rep.symplectic, sym)
        rep.proof_identity = max(rep.proof_identity, pid)
        if keep_rows:
            rep.rows.append((s, t, g_s, g_t, sym, pid))
    return rep


def convergence_order(grid: Grid = Grid(ns=20, nt=20), h: float = 1e-3) -> float:
    """Observed order from residuals at h and 2h (about 2 for central differences)."""
    fine = verify_exact_lagrangian(grid, h).proof_identity
    coarse = verify_exact_lagrangian(grid, 2.0 * h).proof_identity
    return math.log2(coarse / fine)


def level_set_error(C: float, samples: int = 1000) -> float:
    """Largest |log m + C| over points with s = C t (1-t)."""
    worst = 0.0
    for a in range(1, samples):
        t = a / samples
        worst = max(worst, abs(log_m(C * t * (1.0 - t), t) + C))
    return worst


# -- phase ------------------------------------------------------------------------


def phase_quantity(t: float) -> float:
    """(1-t) eta_t - t xi_t in closed form."""
    _check_t(t)
    P = -6.0 * t * t + 6.0 * t - 2.0
    mu2 = (1.0 - t) ** 2 + t * t
    return P * mu2 / (t**3 * (1.0 - t) ** 3)


def phase_quantity_fd(t: float, h: float = 1e-6) -> float:
    return (1.0 - t) * _d(eta, t, h) - t * _d(xi, t, h)


def lifted_phase(s: float, t: float) -> float:
    """Arg(s + i q)/pi with q = phase_quantity(t) < 0, a continuous lift in s.

    Positive s lands in (-1/2, 1/2), negative s in (-3/2, -1/2).
    """
    q = phase_quantity(t)
    return math.atan2(q, s) / math.pi


@dataclass
class PhaseReport:
    max_value: float
    argmax_t: float
    value_at_half: float
    all_negative: bool
    closed_form_error: float
    branch_ok: bool
    monotone: bool

    @property
    def ok(self) -> bool:
        return self.all_negative and self.branch_ok and self.monotone and abs(self.value_at_half + 16.0) < 1e-12


def phase_crossing_check(t_samples: Sequence[float], s_sweep: int = 201) -> PhaseReport:
    if not t_samples:
        raise ChartError("need at least one sample")
    for t in t_samples:
        _check_t(t)
    vals = [phase_quantity(t) for t in t_samples]
    i = max(range(len(vals)), key=vals.__getitem__)
    inner = [(t, v) for t, v in zip(t_samples, vals) if 0.01 <= t <= 0.99]
    fd_err = max((abs(phase_quantity_fd(t) - v) / (1.0 + abs(v)) for t, v in inner), default=0.0)
    branch_ok = True
    monotone = True
    for t in (t_samples[0], 0.5, t_samples[-1]):
        prev = None
        for a in range(s_sweep):
            s = 1.0 - 2.0 * a / (s_sweep - 1)
            if s == 0.0:
                continue
            ph = lifted_phase(s, t)
            if s > 0 and not -0.5 < ph < 0.5:
                branch_ok = False
            if s < 0 and not -1.5 < ph < -0.5:
                branch_ok = False
            if prev is not None and ph >= prev:
                monotone = False
            prev = ph
    return PhaseReport(
        max_value=vals[i],
        argmax_t=t_samples[i],
        value_at_half=phase_quantity(0.5),
        all_negative=all(v < 0 for v in vals),
        closed_form_error=fd_err,
        branch_ok=branch_ok,
        monotone=monotone,
    )


# -- angle speed ----------------------------------------------------------------


def angle(t: float) -> float:
    """Angle of (xi, eta), lifted to run counterclockwise from pi/2 (t near 0)
    to 2 pi (t near 1)."""
    a = math.atan2(eta(t), xi(t))
    return a if a >= math.pi / 4 else a + 2.0 * math.pi


def angle_speed(t: float) -> float:
    """Closed form of |d theta / dt|."""
    num = 2.0 * (3.0 * t * t - 3.0 * t + 1.0)
    den = 18.0 * t**4 - 36.0 * t**3 + 26.0 * t * t - 8.0 * t + 1.0
    return num / den


def angle_speed_bound(samples: int = 10_000, C: float = 20.0) -> tuple[bool, float]:
    """Whether 1/C < |d theta/dt| < C on the samples; also the worst closed-form mismatch."""
    ok = True
    worst = 0.0
    for a in range(1, samples):
        t = a / samples
        v = angle_speed(t)
        ok = ok and 1.0 / C < v < C
        if 0.01 < t < 0.99:
            fd = abs(_d(angle, t, 1e-6))
            worst = max(worst, abs(fd - v) / (1.0 + v))
    return ok, worst
