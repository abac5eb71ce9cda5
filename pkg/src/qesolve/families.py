"""The two implemented potential families and their algebraic resolution.

Each family is fixed by a gauge function W(x) and a change of variable that
turn the Schrodinger operator into a quadratic expression in the spin-j
generators acting on polynomials in z:

  sextic  V(x) = x^6 + 2a x^4 + (a^2 - 8j - 3) x^2          z = x^2
          W(x) = x^3 + a x                    (even sector)
          W(x) = x^3 + a x - 1/x              (odd sector; the 1/x sign is
          chosen so the gauge factor is x * exp(-x^4/4 - a x^2/2), regular
          and normalizable at the origin; the x^2 coefficient becomes
          a^2 - 8j - 5 and the odd z-space equation follows)

  morse   V(x) = d^2 e^{2x} - d(1-2b) e^x - a(2b+4j+1) e^{-x} + a^2 e^{-2x}
          W(x) = d e^x - a e^{-x} + b                        z = e^{-x}

Canonical potentials carry no constant term; additive constants that make a
complex spectrum real are handled downstream as an explicit shift argument.

`make_sextic` / `make_morse` resolve user parameters into a QesModel holding
the operator combination, the z-space equation p2 phi'' + p1 phi' +
(p0 - E) phi = 0, the gauge data and the potential coefficients.
`closed_form_block_action` gives the tridiagonal matrix action of the model
on basis monomials in closed form; it is the documented oracle against the
generic polynomial-arithmetic block builder.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .cpoly import CPolynomial
from .errors import NumericOverflowError, PoleError, ValidationError
from .sl2 import OperatorCombination, SpinJ

SEXTIC = "sextic"
MORSE = "morse"
EVEN = "even"
ODD = "odd"

# largest exponent argument exp() accepts without overflow
_EXP_LIMIT = 709.0


def _cexp(w: complex) -> complex:
    if w.real > _EXP_LIMIT:
        raise NumericOverflowError(f"exponential overflow: exp({w!r})")
    return cmath.exp(w)


def _rexp(x: float) -> float:
    if x > _EXP_LIMIT:
        raise NumericOverflowError(f"exponential overflow: exp({x!r})")
    return math.exp(x)


def _require_finite(name: str, value: complex) -> complex:
    value = complex(value)
    if not cmath.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    return value


def _validate_two_j(two_j: int) -> None:
    if not isinstance(two_j, int) or isinstance(two_j, bool):
        raise ValidationError("two_j must be an integer")
    if two_j < 0:
        raise ValidationError("two_j must be non-negative")


@dataclass(frozen=True)
class SexticParams:
    """Parameters of the sextic family: gauge parameter a, spin two_j, parity sector.

    `mu` records that a was chosen as i*mu (the pure-imaginary convenience
    choice); it only drives reporting against the published closed forms.
    """

    a: complex
    two_j: int
    sector: str = EVEN
    mu: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _require_finite("a", self.a))
        _validate_two_j(self.two_j)
        if self.sector not in (EVEN, ODD):
            raise ValidationError(f"sector must be {EVEN!r} or {ODD!r}, got {self.sector!r}")

    @classmethod
    def from_mu(cls, mu: float, two_j: int, sector: str = EVEN) -> "SexticParams":
        return cls(a=complex(0.0, mu), two_j=two_j, sector=sector, mu=float(mu))


@dataclass(frozen=True)
class MorseParams:
    """Parameters of the Morse-type family: a, d, gauge offset b, spin two_j.

    a and d must be nonzero or the gauge factor fails to decay at one end.
    Normalizable wavefunctions additionally need Re a > 0 and Re d > 0,
    enforced where normalization is actually requested.
    """

    a: complex
    d: complex
    b: complex
    two_j: int
    mu: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _require_finite("a", self.a))
        object.__setattr__(self, "d", _require_finite("d", self.d))
        object.__setattr__(self, "b", _require_finite("b", self.b))
        _validate_two_j(self.two_j)
        if self.a == 0 or self.d == 0:
            raise ValidationError("Morse parameters a and d must be nonzero")

    @classmethod
    def from_mu(cls, mu: float, two_j: int, a: complex = 1.0, d: complex = 1.0) -> "MorseParams":
        b = (complex(0.0, mu) - 3.0) / 2.0
        return cls(a=complex(a), d=complex(d), b=b, two_j=two_j, mu=float(mu))


@dataclass(frozen=True)
class GaugeSpec:
    """Closed-form gauge data: superpotential W, antiderivative G, decay factor exp(-G).

    For the odd sextic sector G contains -ln(x), so `antiderivative` is only
    defined for x > 0; `decay_factor` uses the analytic continuation
    x * exp(-x^4/4 - a x^2/2), valid on the whole line.
    """

    family: str
    a: complex = 0.0j
    b: complex = 0.0j
    d: complex = 0.0j
    sector: str = EVEN

    def superpotential(self, x: float) -> complex:
        if self.family == SEXTIC:
            w = x * x * x + self.a * x
            if self.sector == ODD:
                if x == 0.0:
                    raise PoleError("odd-sector superpotential has a pole at x = 0")
                w -= 1.0 / x
            return w
        ex = _rexp(x)
        return self.d * ex - self.a / ex + self.b

    def superpotential_derivative(self, x: float) -> complex:
        if self.family == SEXTIC:
            dw = 3.0 * x * x + self.a
            if self.sector == ODD:
                if x == 0.0:
                    raise PoleError("odd-sector superpotential has a pole at x = 0")
                dw += 1.0 / (x * x)
            return dw
        ex = _rexp(x)
        return self.d * ex + self.a / ex

    def antiderivative(self, x: float) -> complex:
        if self.family == SEXTIC:
            g = x ** 4 / 4.0 + self.a * x * x / 2.0
            if self.sector == ODD:
                if x <= 0.0:
                    raise ValidationError("odd-sector antiderivative needs x > 0")
                g -= math.log(x)
            return g
        ex = _rexp(x)
        return self.d * ex + self.a / ex + self.b * x

    def decay_factor(self, x: float) -> complex:
        """exp(-G(x)); underflow to exact 0 far in the tails is fine."""
        if self.family == SEXTIC:
            try:
                exponent = -(x ** 4) / 4.0 - self.a * x * x / 2.0
            except OverflowError:
                # the quartic dominates any a x^2 term long before overflowing
                return 0.0j
            core = _cexp(exponent)
            return x * core if self.sector == ODD else core
        return _cexp(-self.antiderivative(x))


@dataclass(frozen=True)
class QesModel:
    """A fully resolved family instance.

    ode = (p2, p1, p0) gives the z-space equation p2 phi'' + p1 phi' +
    (p0 - E) phi = 0 with p0 holding only the energy-free part.
    potential_coeffs are (x^6, x^4, x^2) for sextic and
    (e^{2x}, e^x, e^{-x}, e^{-2x}) for Morse; there is never a constant term.
    """

    family: str
    params: SexticParams | MorseParams
    rep: SpinJ
    combo: OperatorCombination
    ode: tuple[CPolynomial, CPolynomial, CPolynomial]
    gauge: GaugeSpec
    change_of_variable: str
    potential_coeffs: tuple[complex, ...]

    def z_of_x(self, x: float) -> complex:
        """Apply the change of variable."""
        if self.family == SEXTIC:
            return complex(x * x)
        return complex(_rexp(-x))


def make_sextic(params: SexticParams) -> QesModel:
    a = params.a
    n = params.two_j
    rep = SpinJ(n)
    if params.sector == EVEN:
        c_m = complex(-(2 + 2 * n))
        c_id = a * (2 * n + 1)
        p1 = CPolynomial((-2.0, 4.0 * a, 4.0))
        p0 = CPolynomial((a, -4.0 * n))
        x2_coeff = a * a - (4 * n + 3)
    else:
        c_m = complex(-(6 + 2 * n))
        c_id = a * (2 * n + 3)
        p1 = CPolynomial((-6.0, 4.0 * a, 4.0))
        p0 = CPolynomial((3.0 * a, -4.0 * n))
        x2_coeff = a * a - (4 * n + 5)
    combo = OperatorCombination(c_0m=-4.0, c_p=4.0, c_m=c_m, c_0=4.0 * a, c_id=c_id)
    return QesModel(
        family=SEXTIC,
        params=params,
        rep=rep,
        combo=combo,
        ode=(CPolynomial((0.0, -4.0)), p1, p0),
        gauge=GaugeSpec(family=SEXTIC, a=a, sector=params.sector),
        change_of_variable="z = x^2",
        potential_coeffs=(1.0 + 0.0j, 2.0 * a, x2_coeff),
    )


def make_morse(params: MorseParams) -> QesModel:
    a, b, d = params.a, params.b, params.d
    n = params.two_j
    rep = SpinJ(n)
    big_d = -(2.0 * b + 1.0 + n)
    c_id = big_d * (n / 2.0) + 2.0 * a * d - b * b
    combo = OperatorCombination(c_pm=-1.0, c_p=2.0 * a, c_m=-2.0 * d, c_0=big_d, c_id=c_id)
    p2 = CPolynomial((0.0, 0.0, -1.0))
    p1 = CPolynomial((-2.0 * d, -(2.0 * b + 1.0), 2.0 * a))
    p0 = CPolynomial((2.0 * a * d - b * b, -2.0 * a * n))
    return QesModel(
        family=MORSE,
        params=params,
        rep=rep,
        combo=combo,
        ode=(p2, p1, p0),
        gauge=GaugeSpec(family=MORSE, a=a, b=b, d=d),
        change_of_variable="z = exp(-x)",
        potential_coeffs=(
            d * d,
            -d * (1.0 - 2.0 * b),
            -a * (2.0 * b + 2.0 * n + 1.0),
            a * a,
        ),
    )


def potential_eval(model: QesModel, x: float, shift: complex = 0.0j) -> complex:
    """V(x) + shift from the family's closed form.

    The odd sextic sector is fine at x = 0: only the gauge has a pole there,
    the potential itself is a polynomial.
    """
    if model.family == SEXTIC:
        c6, c4, c2 = model.potential_coeffs
        x2 = x * x
        return ((c6 * x2 + c4) * x2 + c2) * x2 + shift
    c2p, c1p, c1m, c2m = model.potential_coeffs
    if 2.0 * abs(x) > _EXP_LIMIT:
        raise NumericOverflowError(f"Morse potential overflows at x={x!r}")
    ex = math.exp(x)
    emx = 1.0 / ex
    value = c2p * (ex * ex) + c1p * ex + c1m * emx + c2m * (emx * emx) + shift
    if not cmath.isfinite(value):
        raise NumericOverflowError(f"Morse potential overflowed at x={x!r}")
    return value


def closed_form_block_action(model: QesModel, k: int) -> tuple[complex, complex, complex]:
    """(lower, diag, upper): coefficients of z^{k-1}, z^k, z^{k+1} in the image of z^k.

    Hand-derived tridiagonal action of the model's operator combination;
    kept deliberately independent of the generic block builder so the two
    can be compared entry by entry.
    """
    n = model.rep.two_j
    if not isinstance(k, int) or isinstance(k, bool) or k < 0 or k > n:
        raise ValidationError(f"basis index k={k!r} outside 0..{n}")
    if model.family == SEXTIC:
        a = model.params.a
        if model.params.sector == EVEN:
            return (
                complex(-2 * k * (2 * k - 1)),
                a * (4 * k + 1),
                complex(4 * (k - n)),
            )
        return (
            complex(-2 * k * (2 * k + 1)),
            a * (4 * k + 3),
            complex(4 * (k - n)),
        )
    a, b, d = model.params.a, model.params.b, model.params.d
    return (
        -2.0 * d * k,
        -complex(k * (k - 1)) - (2.0 * b + 1.0) * k + 2.0 * a * d - b * b,
        2.0 * a * (k - n),
    )
