"""Wavefunction assembly and independent verification of solved models.

Verification is deliberately redundant:

  * residual_sup evaluates the gauged equation symbolically in z.  The
    bracket R = p2 phi'' + p1 phi' + (p0 - E) phi is assembled with exact
    polynomial arithmetic, so for a genuine eigenpair its coefficients
    cancel to roundoff and no numerical differentiation ever happens.
  * norm_squared integrates |psi|^2 by composite Simpson, doubling the
    truncation interval until the tail contribution stabilizes.
  * is_pt_symmetric tests V*(-x) = V(x) including the additive shift.
  * susy_partner exposes the isospectral construction W^2 +/- W' built from
    the model's own superpotential.
  * fd_refine_energy discretizes the shifted Hamiltonian with second-order
    central differences on a Dirichlet grid and refines the predicted
    eigenvalue by inverse iteration (complex tridiagonal LU with a
    partial-pivoting safeguard); the shift is deliberately offset from the
    prediction so the factored matrix stays comfortably invertible.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .cpoly import poly_derivative, poly_eval, poly_mul, poly_scale, poly_sub
from .errors import ConvergenceFailureError, NumericOverflowError, ValidationError
from .families import MORSE, SEXTIC, GaugeSpec, QesModel, potential_eval
from .spectrum import QesSolution


@dataclass(frozen=True)
class Wavefunction:
    """psi(x) = phi(g(x)) * exp(-G(x)) for one solved level of a model."""

    model: QesModel
    solution: QesSolution


@dataclass(frozen=True)
class GridSpec:
    """Uniform Dirichlet grid; n_points counts interior points."""

    x_min: float
    x_max: float
    n_points: int
    boundary: str = "dirichlet"

    def __post_init__(self) -> None:
        if not self.x_min < self.x_max:
            raise ValidationError("grid needs x_min < x_max")
        if self.n_points < 64:
            raise ValidationError("grid needs at least 64 points")
        if self.boundary != "dirichlet":
            raise ValidationError("only Dirichlet boundaries are supported")


def psi_eval(w: Wavefunction, x: float) -> complex:
    """Evaluate the full-line wavefunction; underflows to exact 0 in the far tail."""
    z = w.model.z_of_x(x)
    return poly_eval(w.solution.phi_coeffs, z) * w.model.gauge.decay_factor(x)


def default_residual_sample(model: QesModel, count: int = 21) -> list[float]:
    """Sample abscissas covering the region where the block polynomials have weight."""
    if model.family == SEXTIC:
        lo, hi = -1.5, 1.5
    else:
        lo, hi = -1.0, 3.0
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def residual_sup(w: Wavefunction, sample: Sequence[float]) -> float:
    """Scaled sup of the z-space equation residual over the sample.

    Returns max_x |R(g(x))| / max-coefficient of p2 phi'' + p1 phi' + p0 phi,
    with R assembled coefficient-wise; at most 1e-10 for genuine eigenpairs.
    """
    if not sample:
        raise ValidationError("residual_sup needs a nonempty sample")
    p2, p1, p0 = w.model.ode
    phi = w.solution.phi_coeffs
    d1 = poly_derivative(phi)
    d2 = poly_derivative(d1)
    operator_part = poly_mul(p2, d2) + poly_mul(p1, d1) + poly_mul(p0, phi)
    residual = poly_sub(operator_part, poly_scale(phi, w.solution.energy_base))
    scale = max((abs(c) for c in operator_part.coeffs), default=0.0)
    scale = max(scale, 1e-300)
    return max(abs(poly_eval(residual, w.model.z_of_x(x))) for x in sample) / scale


def _simpson(f: Callable[[float], float], lo: float, hi: float, panels: int) -> float:
    h = (hi - lo) / panels
    total = f(lo) + f(hi)
    for i in range(1, panels):
        total += f(lo + i * h) * (4.0 if i % 2 else 2.0)
    return total * h / 3.0


def _integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    start_panels: int,
    rel: float = 1e-9,
    panel_cap: int = 1 << 20,
) -> tuple[float, int]:
    panels = max(8, start_panels)
    prev = _simpson(f, lo, hi, panels)
    while panels < panel_cap:
        panels *= 2
        cur = _simpson(f, lo, hi, panels)
        if abs(cur - prev) <= rel * max(abs(cur), 1e-300):
            return cur, panels
        prev = cur
    raise ConvergenceFailureError("quadrature refinement did not converge", best=prev)


def norm_squared(w: Wavefunction, initial_half_width: float = 2.0) -> float:
    """Integral of |psi|^2 over the line, tail-stable to 1e-12 relative.

    Requires a decaying gauge: always true for the sextic family, and for
    Morse only under Re a > 0 and Re d > 0 (an inferred condition; the
    construction itself never states it).
    """
    model = w.model
    if model.family == MORSE:
        if model.params.a.real <= 0.0 or model.params.d.real <= 0.0:
            raise ValidationError(
                "Morse normalization needs Re a > 0 and Re d > 0 for a decaying gauge"
            )

    def density(x: float) -> float:
        v = psi_eval(w, x)
        return v.real * v.real + v.imag * v.imag

    half = initial_half_width
    total, panels = _integrate(density, -half, half, 128)
    for _ in range(60):
        half *= 2.0
        wider, panels = _integrate(density, -half, half, panels * 2)
        if abs(wider - total) <= 1e-12 * max(abs(wider), 1e-300):
            return wider
        total = wider
    raise ConvergenceFailureError("normalization tail did not stabilize", best=total)


def is_pt_symmetric(model: QesModel, shift: complex = 0.0j, tol: float = 1e-9) -> bool:
    """Test V*(-x) = V(x) for the shifted potential.

    The sextic potential is even in x, so the test reduces to all
    coefficients (and the shift) being real; the Morse test compares
    function values on a symmetric sample.
    """
    shift = complex(shift)
    if model.family == SEXTIC:
        values = list(model.potential_coeffs) + [shift]
        return all(abs(v.imag) <= tol * max(1.0, abs(v)) for v in values)
    count = 64
    xs = [-3.0 + 6.0 * i / (count - 1) for i in range(count)]
    vals = [potential_eval(model, x) + shift for x in xs]
    mirrored = [(potential_eval(model, -x) + shift).conjugate() for x in xs]
    scale = max(1.0, max(abs(v) for v in vals))
    defect = max(abs(a - b) for a, b in zip(vals, mirrored))
    return defect <= tol * scale


def _finite_or_raise(value: complex, x: float) -> complex:
    if not cmath.isfinite(value):
        raise NumericOverflowError(f"partner potential overflowed at x={x!r}")
    return value


@dataclass(frozen=True)
class SusyPartner:
    """The pair W^2 - W' (the model's own shape at j = 0) and W^2 + W'.

    Both evaluators are built from the superpotential values themselves, so
    v_plus(x) - v_minus(x) = 2 W'(x) is a checkable identity rather than a
    definition.  The odd sextic sector has a pole at x = 0.
    """

    gauge: GaugeSpec

    def v_minus(self, x: float) -> complex:
        w = self.gauge.superpotential(x)
        return _finite_or_raise(w * w - self.gauge.superpotential_derivative(x), x)

    def v_plus(self, x: float) -> complex:
        w = self.gauge.superpotential(x)
        return _finite_or_raise(w * w + self.gauge.superpotential_derivative(x), x)

    def difference(self, x: float) -> complex:
        return self.v_plus(x) - self.v_minus(x)


def susy_partner(model: QesModel) -> SusyPartner:
    return SusyPartner(model.gauge)


class _LuBreakdown(Exception):
    pass


def _tridiag_factor(sub: list[complex], diag: list[complex], sup: list[complex]):
    """LU of a tridiagonal matrix with adjacent-row partial pivoting.

    Pivoting introduces one extra superdiagonal of fill; breakdown (both
    pivot candidates exactly zero) raises so the caller can re-shift.
    """
    n = len(diag)
    b = list(diag)
    c = list(sup) + [0.0j]
    d = [0.0j] * n
    a = list(sub)
    mult = [0.0j] * max(n - 1, 0)
    swap = [False] * max(n - 1, 0)
    for i in range(n - 1):
        if abs(a[i]) > abs(b[i]):
            swap[i] = True
            b[i], a[i] = a[i], b[i]
            c[i], b[i + 1] = b[i + 1], c[i]
            d[i], c[i + 1] = c[i + 1], d[i]
        if b[i] == 0:
            raise _LuBreakdown(f"zero pivot at row {i}")
        m = a[i] / b[i]
        mult[i] = m
        b[i + 1] -= m * c[i]
        c[i + 1] -= m * d[i]
    if b[n - 1] == 0:
        raise _LuBreakdown("zero pivot at the last row")
    return b, c, d, mult, swap


def _tridiag_solve(factors, rhs: list[complex]) -> list[complex]:
    b, c, d, mult, swap = factors
    n = len(b)
    y = list(rhs)
    for i in range(n - 1):
        if swap[i]:
            y[i], y[i + 1] = y[i + 1], y[i]
        y[i + 1] -= mult[i] * y[i]
    x = [0.0j] * n
    x[n - 1] = y[n - 1] / b[n - 1]
    if n >= 2:
        x[n - 2] = (y[n - 2] - c[n - 2] * x[n - 1]) / b[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (y[i] - c[i] * x[i + 1] - d[i] * x[i + 2]) / b[i]
    return x


def fd_refine_energy(
    potential: Callable[[float], complex],
    x_min: float,
    x_max: float,
    n_points: int,
    predicted: complex,
    shift_offset: float = 1e-4,
    max_iter: int = 200,
    rq_tol: float = 1e-10,
) -> complex:
    """Refine `predicted` against the central-difference Dirichlet Hamiltonian.

    Inverse iteration with shift sigma = predicted + offset; the offset is
    doubled and the factorization retried (up to 5 times) if the tridiagonal
    LU breaks down.  Convergence is declared when successive Rayleigh
    quotients agree to rq_tol.
    """
    n = n_points
    h = (x_max - x_min) / (n + 1)
    inv_h2 = 1.0 / (h * h)
    diag0 = [2.0 * inv_h2 + potential(x_min + (i + 1) * h) for i in range(n)]
    off = -inv_h2

    factors = None
    offset = shift_offset
    for _ in range(6):
        sigma = predicted + offset
        try:
            factors = _tridiag_factor([off] * (n - 1), [v - sigma for v in diag0], [off] * (n - 1))
            break
        except _LuBreakdown:
            offset *= 2.0
    if factors is None:
        raise ConvergenceFailureError("tridiagonal factorization kept breaking down")

    # ramp start: carries both parities, so parity-odd eigenstates on a
    # symmetric grid are reachable without waiting for roundoff
    v = [complex(1.0 + (i + 1.0) / n, 0.0) for i in range(n)]
    scale = math.sqrt(sum(c.real * c.real for c in v))
    v = [c / scale for c in v]
    rayleigh = None
    for _ in range(max_iter):
        u = _tridiag_solve(factors, v)
        norm = math.sqrt(sum(c.real * c.real + c.imag * c.imag for c in u))
        u = [c / norm for c in u]
        hu = [0.0j] * n
        for i in range(n):
            acc = diag0[i] * u[i]
            if i > 0:
                acc += off * u[i - 1]
            if i < n - 1:
                acc += off * u[i + 1]
            hu[i] = acc
        estimate = sum(u[i].conjugate() * hu[i] for i in range(n))
        if rayleigh is not None and abs(estimate - rayleigh) < rq_tol:
            return estimate
        rayleigh = estimate
        v = u
    raise ConvergenceFailureError(
        f"inverse iteration did not settle within {max_iter} iterations",
        best=rayleigh,
        defect=None,
    )


def default_grid(model: QesModel, n_points: int = 2000) -> GridSpec:
    """Family defaults sized so the gauge factor is below 1e-16 at the ends."""
    if model.family == SEXTIC:
        return GridSpec(-6.0, 6.0, n_points)
    return GridSpec(-12.0, 4.0, n_points)


def fd_verify(
    model: QesModel, solution: QesSolution, grid: GridSpec | None = None
) -> tuple[complex, float]:
    """Grid cross-check of one level: (refined eigenvalue, |refined - predicted|)."""
    if grid is None:
        grid = default_grid(model)
    predicted = solution.energy_shifted

    def shifted_potential(x: float) -> complex:
        return potential_eval(model, x, solution.shift)

    refined = fd_refine_energy(
        shifted_potential, grid.x_min, grid.x_max, grid.n_points, predicted
    )
    return refined, abs(refined - predicted)
