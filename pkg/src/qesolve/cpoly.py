"""Dense complex-coefficient polynomials in one variable.

Everything downstream lives on polynomials of tiny degree (at most 2j + 2),
so coefficients are stored densely and each operation builds a fresh tuple.
Trailing coefficients are dropped only when they are exactly zero in both
parts: numerical near-zeros carry information (residual checks depend on
seeing them) and are never trimmed.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterable

from .errors import NumericOverflowError


@dataclass(frozen=True, init=False)
class CPolynomial:
    """Polynomial sum(coeffs[k] * z**k); the empty tuple is the zero polynomial."""

    coeffs: tuple[complex, ...]

    def __init__(self, coeffs: Iterable[complex] = ()) -> None:
        items = [complex(c) for c in coeffs]
        for c in items:
            if not cmath.isfinite(c):
                raise NumericOverflowError(f"non-finite polynomial coefficient {c!r}")
        while items and items[-1].real == 0.0 and items[-1].imag == 0.0:
            items.pop()
        object.__setattr__(self, "coeffs", tuple(items))

    @property
    def degree(self) -> int | None:
        """Degree of the polynomial, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "CPolynomial") -> "CPolynomial":
        return poly_add(self, other)

    def __sub__(self, other: "CPolynomial") -> "CPolynomial":
        return poly_sub(self, other)

    def __neg__(self) -> "CPolynomial":
        return poly_scale(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, CPolynomial):
            return poly_mul(self, other)
        return poly_scale(self, other)

    def __rmul__(self, other):
        return poly_scale(self, other)

    def __call__(self, z: complex) -> complex:
        return poly_eval(self, z)


ZERO = CPolynomial()
ONE = CPolynomial((1.0,))


def monomial(k: int, c: complex = 1.0) -> CPolynomial:
    """c * z**k."""
    if k < 0:
        raise ValueError("monomial exponent must be non-negative")
    return CPolynomial((0.0,) * k + (c,))


def poly_add(p: CPolynomial, q: CPolynomial) -> CPolynomial:
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] += c
    return CPolynomial(out)


def poly_sub(p: CPolynomial, q: CPolynomial) -> CPolynomial:
    out = list(p.coeffs) + [0.0j] * max(0, len(q.coeffs) - len(p.coeffs))
    for k, c in enumerate(q.coeffs):
        out[k] -= c
    return CPolynomial(out)


def poly_scale(p: CPolynomial, c: complex) -> CPolynomial:
    return CPolynomial(c * x for x in p.coeffs)


def poly_mul(p: CPolynomial, q: CPolynomial) -> CPolynomial:
    """Coefficient-wise convolution; result is in canonical trimmed form."""
    if p.is_zero() or q.is_zero():
        return ZERO
    out = [0.0j] * (len(p.coeffs) + len(q.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return CPolynomial(out)


def poly_derivative(p: CPolynomial) -> CPolynomial:
    """Formal derivative; drops the degree by exactly one for nonconstant p."""
    return CPolynomial(k * c for k, c in enumerate(p.coeffs) if k > 0)


def poly_eval(p: CPolynomial, z: complex) -> complex:
    """Horner evaluation; raises on a non-finite result."""
    acc = 0.0j
    for c in reversed(p.coeffs):
        acc = acc * z + c
    if not cmath.isfinite(acc):
        raise NumericOverflowError(f"polynomial evaluation overflowed at z={z!r}")
    return acc
