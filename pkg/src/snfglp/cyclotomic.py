"""Exact arithmetic in rings of cyclotomic integers Z[zeta_k].

Every geometric point in this package is a Z-linear combination of the
k-th roots of unity, stored as a length-k integer coefficient vector.
Vectors are only ever reduced lazily modulo x^k - 1 (rotation and
reflection stay cheap index permutations); equality is decided by exact
divisibility of the difference by the k-th cyclotomic polynomial, which
is the minimal polynomial of a primitive k-th root of unity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

MAX_ORDER = 36
COEFF_LIMIT = 2**31


class OrderMismatch(ValueError):
    """Raised when an operation mixes cyclotomic integers of different order."""


class CoefficientOverflow(ValueError):
    """Raised when a coefficient leaves the supported desk-scale range."""


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, lowest degree first, no trailing zeros."""

    coeffs: tuple[int, ...]

    def __init__(self, *coeffs: int):
        end = len(coeffs)
        while end > 0 and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", tuple(coeffs[:end]))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(*(x - y for x, y in zip(a, b)))

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if c:
                for j, d in enumerate(other.coeffs):
                    out[i + j] += c * d
        return IntPolynomial(*out)

    def divmod_exact(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Quotient and remainder over Z; divisor's leading coefficient must divide exactly."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = divisor.coeffs[-1]
        rem = list(self.coeffs)
        quo = [0] * max(len(rem) - len(divisor.coeffs) + 1, 0)
        while len(rem) >= len(divisor.coeffs) and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < len(divisor.coeffs):
                break
            head, r = divmod(rem[-1], lead)
            if r:
                raise ValueError(f"{rem[-1]} not divisible by leading coefficient {lead}")
            shift = len(rem) - len(divisor.coeffs)
            quo[shift] = head
            for j, d in enumerate(divisor.coeffs):
                rem[shift + j] -= head * d
        return IntPolynomial(*quo), IntPolynomial(*rem)


def euler_phi(n: int) -> int:
    """Count of 1 <= l <= n coprime to n."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum(1 for l in range(1, n + 1) if math.gcd(l, n) == 1)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial: monic, integer, degree euler_phi(n).

    Computed by exact division of x^n - 1 by the product of the
    polynomials of all proper divisors of n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    poly = IntPolynomial(*([-1] + [0] * (n - 1) + [1]))
    for d in range(1, n):
        if n % d == 0:
            poly, rem = poly.divmod_exact(cyclotomic_polynomial(d))
            assert rem.is_zero()
    return poly


@lru_cache(maxsize=None)
def _reduction_rows(order: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds the coefficients of x^j reduced modulo Phi_order."""
    phi = cyclotomic_polynomial(order)
    deg = phi.degree()
    rows: list[tuple[int, ...]] = []
    for j in range(order):
        if j < deg:
            rows.append(tuple(1 if i == j else 0 for i in range(deg)))
        else:
            # x^j = x * x^(j-1) mod Phi; eliminate the spilled top term.
            prev = rows[j - 1]
            shifted = [0] + list(prev[:-1])
            top = prev[-1]
            if top:
                for i in range(deg):
                    shifted[i] -= top * phi.coeffs[i]
            rows.append(tuple(shifted))
    return tuple(rows)


@lru_cache(maxsize=1 << 16)
def _canonical(order: int, coeffs: tuple[int, ...]) -> tuple[int, ...]:
    """Remainder of the coefficient vector modulo Phi_order (degree < phi(order))."""
    rows = _reduction_rows(order)
    deg = len(rows[0])
    out = [0] * deg
    for j, c in enumerate(coeffs):
        if c:
            row = rows[j]
            for i in range(deg):
                out[i] += c * row[i]
    return tuple(out)


@dataclass(frozen=True, eq=False)
class CycInt:
    """An element of Z[zeta_k]: sum of coeffs[j] * zeta_k^j for j = 0..k-1.

    Equality and hashing are mathematical (two vectors representing the
    same complex number compare equal).  Values are immutable.
    """

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.order <= MAX_ORDER:
            raise ValueError(f"order must be in 1..{MAX_ORDER}, got {self.order}")
        if len(self.coeffs) != self.order:
            raise ValueError(
                f"expected {self.order} coefficients, got {len(self.coeffs)}"
            )
        for c in self.coeffs:
            if abs(c) > COEFF_LIMIT:
                raise CoefficientOverflow(f"coefficient {c} exceeds +/-{COEFF_LIMIT}")

    def canonical_key(self) -> tuple[int, ...]:
        return _canonical(self.order, self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.order == other.order and self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash((self.order, self.canonical_key()))

    def __add__(self, other: CycInt) -> CycInt:
        return cyc_add(self, other)

    def __sub__(self, other: CycInt) -> CycInt:
        return cyc_sub(self, other)

    def __neg__(self) -> CycInt:
        return cyc_neg(self)

    def __mul__(self, other: CycInt) -> CycInt:
        return cyc_mul(self, other)

    def __repr__(self) -> str:
        return f"CycInt(k={self.order}, {list(self.coeffs)})"


def from_coeffs(order: int, coeffs) -> CycInt:
    return CycInt(order, tuple(int(c) for c in coeffs))


def zero(order: int) -> CycInt:
    return CycInt(order, (0,) * order)


def zeta(order: int, j: int = 1, scale: int = 1) -> CycInt:
    """scale * zeta_order^j."""
    j %= order
    return CycInt(order, tuple(scale if i == j else 0 for i in range(order)))


def integer(order: int, n: int) -> CycInt:
    return zeta(order, 0, n)


def _require_same_order(a: CycInt, b: CycInt) -> None:
    if a.order != b.order:
        raise OrderMismatch(f"mixed orders {a.order} and {b.order}")


def cyc_add(a: CycInt, b: CycInt) -> CycInt:
    _require_same_order(a, b)
    return CycInt(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def cyc_sub(a: CycInt, b: CycInt) -> CycInt:
    _require_same_order(a, b)
    return CycInt(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))


def cyc_neg(a: CycInt) -> CycInt:
    return CycInt(a.order, tuple(-x for x in a.coeffs))


def cyc_mul(a: CycInt, b: CycInt) -> CycInt:
    """Polynomial product reduced modulo x^k - 1 (cyclic convolution)."""
    _require_same_order(a, b)
    k = a.order
    out = [0] * k
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    out[(i + j) % k] += x * y
    return CycInt(k, tuple(out))


def cyc_scale(a: CycInt, n: int) -> CycInt:
    return CycInt(a.order, tuple(n * x for x in a.coeffs))


def cyc_eq(a: CycInt, b: CycInt) -> bool:
    """True iff the difference is divisible by the order's cyclotomic polynomial."""
    _require_same_order(a, b)
    return a.canonical_key() == b.canonical_key()


def cyc_is_zero(a: CycInt) -> bool:
    return cyc_eq(a, zero(a.order))


def cyc_rotate(a: CycInt, j: int) -> CycInt:
    """Multiply by zeta^j: rotation by angle 2*pi*j/k about the origin."""
    k = a.order
    j %= k
    return CycInt(k, tuple(a.coeffs[(i - j) % k] for i in range(k)))


def cyc_conj(a: CycInt) -> CycInt:
    return cyc_reflect(a, 0)


def cyc_reflect(a: CycInt, m: int) -> CycInt:
    """Reflect across the line through the origin at angle m*pi/k.

    On coefficients this is the index map j -> (m - j) mod k, i.e.
    z -> zeta^m * conj(z).
    """
    k = a.order
    return CycInt(k, tuple(a.coeffs[(m - i) % k] for i in range(k)))


def cyc_is_real(a: CycInt) -> bool:
    return cyc_eq(a, cyc_conj(a))


def cyc_div_int(a: CycInt, n: int) -> CycInt | None:
    """Exact division by a nonzero integer, or None if a is not divisible.

    Divisibility is decided on the reduced representative modulo Phi_k,
    which is unique, so n | a holds iff every reduced coefficient is a
    multiple of n.
    """
    if n == 0:
        raise ZeroDivisionError("division by zero")
    key = a.canonical_key()
    if any(c % n for c in key):
        return None
    quot = [c // n for c in key]
    quot += [0] * (a.order - len(quot))
    return CycInt(a.order, tuple(quot))


@lru_cache(maxsize=1 << 16)
def _cartesian(order: int, coeffs: tuple[int, ...]) -> tuple[float, float]:
    x = 0.0
    y = 0.0
    for j, c in enumerate(coeffs):
        if c:
            ang = 2.0 * math.pi * j / order
            x += c * math.cos(ang)
            y += c * math.sin(ang)
    return (x, y)


def to_cartesian(a: CycInt) -> tuple[float, float]:
    """Double-precision embedding; used for rendering and angle bucketing only."""
    return _cartesian(a.order, a.coeffs)
