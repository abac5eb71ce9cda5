"""Small dense complex non-Hermitian eigenproblems and real-spectrum shifts.

The blocks produced by the algebraic construction are tiny (dimension
2j + 1, capped at 32), which makes the characteristic-polynomial route both
adequate and independently testable:

  * char_poly       Faddeev-LeVerrier recurrence, exactly monic.
  * poly_roots      Aberth-Ehrlich simultaneous iteration from a perturbed
                    circle; a root is accepted when its update falls below
                    the tolerance or |p(z)| reaches the backward-error floor
                    eps * sum |c_k| |z|^k (which is how clustered multiple
                    roots terminate).
  * eigen_solve     roots of the characteristic polynomial, then one
                    Gaussian-elimination null-space solve per root; root
                    clusters are replaced by their centroid (the centroid of
                    a defective cluster is far more accurate than its
                    members) and reported with their multiplicity, with no
                    attempt at Jordan structure.

A complex spectrum is re-centered to a real one by a constant potential
shift exactly when all eigenvalues share one imaginary part; the shift is
minus i times the median imaginary part, the median being robust against a
single numerically off-cluster root.
"""

from __future__ import annotations

import cmath
import sys
from dataclasses import dataclass

from .cpoly import CPolynomial
from .errors import ConvergenceFailureError, ValidationError
from .families import QesModel
from .sl2 import BlockMatrix, build_block

_EPS = sys.float_info.epsilon

MAX_BLOCK_DIM = 32


@dataclass(frozen=True)
class QesSolution:
    """One exactly known level of a model.

    phi_coeffs holds c_0 .. c_{2j} of the polynomial factor, normalized so
    the first nonzero coefficient is 1.  energy_shifted = energy_base +
    shift, where shift is the constant added to the potential (zero when the
    spectrum admits no common imaginary part).
    """

    energy_base: complex
    energy_shifted: complex
    shift: complex
    phi_coeffs: CPolynomial
    eigvec_residual: float
    multiplicity: int = 1


@dataclass(frozen=True)
class ShiftResult:
    """Outcome of the common-imaginary-part test; spread is max - min of the parts."""

    found: bool
    shift: complex
    spread: float


@dataclass(frozen=True)
class EigenPair:
    value: complex
    vector: CPolynomial
    residual: float
    multiplicity: int = 1


def _trace(m: list[list[complex]]) -> complex:
    return sum(m[i][i] for i in range(len(m)))


def _mat_mul(a: list[list[complex]], b: list[list[complex]]) -> list[list[complex]]:
    n = len(a)
    out = [[0.0j] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(n):
            aik = ai[k]
            if aik == 0:
                continue
            bk = b[k]
            for j in range(n):
                oi[j] += aik * bk[j]
    return out


def _row_norm(entries) -> float:
    return max(sum(abs(c) for c in row) for row in entries)


def char_poly(m: BlockMatrix) -> CPolynomial:
    """det(lambda I - M) via the Faddeev-LeVerrier recurrence; leading coefficient exactly 1.

    The recurrence runs on M scaled to unit row norm (its traces of powers
    would otherwise swamp double precision for larger blocks); coefficients
    are unscaled on the way out.
    """
    n = m.dim
    if n > MAX_BLOCK_DIM:
        raise ValidationError(f"block dimension {n} exceeds the cap {MAX_BLOCK_DIM}")
    scale = max(1.0, _row_norm(m.entries))
    a = [[c / scale for c in row] for row in m.entries]
    mk = [row[:] for row in a]
    cs = [0.0j] * (n + 1)  # cs[k] multiplies lambda^{n-k} of the scaled matrix
    cs[0] = 1.0 + 0.0j
    cs[1] = -_trace(mk)
    for k in range(2, n + 1):
        for i in range(n):
            mk[i][i] += cs[k - 1]
        mk = _mat_mul(a, mk)
        cs[k] = -_trace(mk) / k
    power = 1.0
    for k in range(1, n + 1):
        power *= scale
        cs[k] *= power
    return CPolynomial(list(reversed(cs)))


def _horner_all(coeffs: tuple[complex, ...], z: complex) -> tuple[complex, complex, float]:
    """Value, derivative and the backward-error bound sum |c_k| |z|^k at z."""
    p = 0.0j
    dp = 0.0j
    s = 0.0
    az = abs(z)
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
        s = s * az + abs(c)
    return p, dp, s


def poly_roots(p: CPolynomial, tol: float = 1e-13, max_iter: int = 500) -> list[complex]:
    """All complex roots by Aberth-Ehrlich iteration, sorted by (Re, Im).

    Starts from a deterministically perturbed circle of radius
    1 + max |coefficient| of the monic polynomial.  Raises
    ConvergenceFailureError carrying the best iterate and its defect if the
    iteration cap is reached.
    """
    deg = p.degree
    if deg is None or deg < 1:
        raise ValidationError("root finding needs degree >= 1")
    lead = p.coeffs[-1]
    coeffs = tuple(c / lead for c in p.coeffs)
    n = deg
    radius = 1.0 + max((abs(c) for c in coeffs[:-1]), default=0.0)
    zs = [
        radius
        * (1.0 + 0.02 * i / max(n - 1, 1))
        * cmath.exp(1j * (2.0 * cmath.pi * i / n + 0.4))
        for i in range(n)
    ]
    done = [False] * n
    for _ in range(max_iter):
        all_done = True
        for i in range(n):
            if done[i]:
                continue
            pv, dv, bound = _horner_all(coeffs, zs[i])
            if abs(pv) <= 8.0 * _EPS * bound:
                done[i] = True
                continue
            all_done = False
            if dv == 0:
                zs[i] += (0.5 + 0.5j) * (1.0 + abs(zs[i])) * 1e-3
                continue
            newton = pv / dv
            repulsion = 0.0j
            for k in range(n):
                if k == i:
                    continue
                diff = zs[i] - zs[k]
                if diff == 0:
                    diff = (1e-12 + 1e-12j) * (1.0 + abs(zs[i]))
                repulsion += 1.0 / diff
            denom = 1.0 - newton * repulsion
            step = newton if denom == 0 else newton / denom
            zs[i] -= step
            if abs(step) <= tol * max(1.0, abs(zs[i])):
                done[i] = True
        if all_done:
            break
    else:
        defect = max(abs(_horner_all(coeffs, z)[0]) for z in zs)
        raise ConvergenceFailureError(
            f"root iteration did not converge within {max_iter} iterations",
            best=sorted(zs, key=lambda z: (z.real, z.imag)),
            defect=defect,
        )
    return sorted(zs, key=lambda z: (z.real, z.imag))


def _cluster_roots(roots: list[complex], coeffs: tuple[complex, ...]) -> list[tuple[complex, int]]:
    """Group near-coincident roots and replace members by the cluster centroid.

    The threshold widens with the attainable root resolution
    sqrt(eps * scale): a defective double root can only be located to about
    that radius, while its centroid is accurate to roundoff.
    """
    n = len(roots)
    scale = 1.0 + max((abs(c) for c in coeffs), default=0.0)
    tol = max(1e-7, 8.0 * (_EPS * scale * (n + 1)) ** 0.5)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for k in range(i + 1, n):
            if abs(roots[i] - roots[k]) <= tol:
                parent[find(i)] = find(k)
    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(roots[i])
    out: list[tuple[complex, int]] = []
    for members in groups.values():
        centroid = sum(members) / len(members)
        out.extend((centroid, len(members)) for _ in members)
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


def _null_vector(entries: tuple[tuple[complex, ...], ...], lam: complex) -> list[complex]:
    """One null vector of (M - lam I) by Gaussian elimination with partial pivoting.

    The free coordinate is the one whose eliminated pivot is smallest; it is
    set to 1 and the triangular system above it is back-substituted.
    """
    n = len(entries)
    a = [[entries[i][k] - (lam if i == k else 0.0) for k in range(n)] for i in range(n)]
    for col in range(n - 1):
        pivot_row = max(range(col, n), key=lambda r: abs(a[r][col]))
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
        if a[col][col] == 0:
            continue
        for r in range(col + 1, n):
            factor = a[r][col] / a[col][col]
            if factor == 0:
                continue
            a[r][col] = 0.0j
            for c in range(col + 1, n):
                a[r][c] -= factor * a[col][c]
    free = min(range(n), key=lambda k: abs(a[k][k]))
    x = [0.0j] * n
    x[free] = 1.0 + 0.0j
    for k in range(free - 1, -1, -1):
        acc = 0.0j
        for mcol in range(k + 1, free + 1):
            acc += a[k][mcol] * x[mcol]
        x[k] = 0.0j if a[k][k] == 0 else -acc / a[k][k]
    return x


def _matvec(entries, v):
    return [sum(row[k] * v[k] for k in range(len(v))) for row in entries]


def eigen_solve(m: BlockMatrix) -> list[EigenPair]:
    """Eigenvalues and polynomial eigenvectors of the block, sorted by (Re, Im).

    Root finding happens in the norm-scaled frame lambda = s * lambda'
    (coefficients of the substituted polynomial stay O(1) regardless of the
    block's magnitude) and the roots are scaled back.  Degenerate
    eigenvalues come back once per root instance, sharing the centroid
    value and carrying their cluster multiplicity.
    """
    cp = char_poly(m)
    norm_m = _row_norm(m.entries)
    s = max(1.0, norm_m)
    n = m.dim
    scaled = CPolynomial([c / s ** (n - k) for k, c in enumerate(cp.coeffs)])
    clustered = [
        (s * value, mult) for value, mult in _cluster_roots(poly_roots(scaled), scaled.coeffs)
    ]
    pairs = []
    for lam, mult in clustered:
        v = _null_vector(m.entries, lam)
        vmax = max(abs(c) for c in v)
        first = next(i for i, c in enumerate(v) if abs(c) > 1e-12 * vmax)
        v = [c / v[first] for c in v]
        mv = _matvec(m.entries, v)
        resid = max(abs(mv[i] - lam * v[i]) for i in range(len(v)))
        scale = max(norm_m, 1e-300) * max(max(abs(c) for c in v), 1e-300)
        pairs.append(EigenPair(lam, CPolynomial(v), resid / scale, mult))
    return pairs


def common_imaginary_shift(eigs: list[complex], tol: float = 1e-9) -> ShiftResult:
    """Shift -i * (median imaginary part) when all imaginary parts agree within tol."""
    if not eigs:
        raise ValidationError("common_imaginary_shift needs at least one eigenvalue")
    ims = sorted(e.imag for e in eigs)
    n = len(ims)
    median = ims[n // 2] if n % 2 else 0.5 * (ims[n // 2 - 1] + ims[n // 2])
    spread = ims[-1] - ims[0]
    if max(abs(im - median) for im in ims) <= tol:
        return ShiftResult(found=True, shift=complex(0.0, -median), spread=spread)
    return ShiftResult(found=False, shift=0.0j, spread=spread)


RESIDUAL_GATE = 1e-10


def solve_model(model: QesModel, shift_tol: float = 1e-9) -> tuple[list[QesSolution], ShiftResult]:
    """Solve the model's block and apply the common-imaginary-part shift (or none).

    Refuses to return silently degraded eigenpairs: if any block residual
    exceeds the contracted 1e-10 the solve fails loudly instead.
    """
    block = build_block(model.combo, model.rep)
    pairs = eigen_solve(block)
    worst = max(p.residual for p in pairs)
    if worst > RESIDUAL_GATE:
        raise ConvergenceFailureError(
            f"block eigensolve residual {worst:.3e} exceeds {RESIDUAL_GATE:.0e}",
            best=pairs,
            defect=worst,
        )
    shift_result = common_imaginary_shift([p.value for p in pairs], tol=shift_tol)
    shift = shift_result.shift if shift_result.found else 0.0j
    solutions = [
        QesSolution(
            energy_base=p.value,
            energy_shifted=p.value + shift,
            shift=shift,
            phi_coeffs=p.vector,
            eigvec_residual=p.residual,
            multiplicity=p.multiplicity,
        )
        for p in pairs
    ]
    return solutions, shift_result
