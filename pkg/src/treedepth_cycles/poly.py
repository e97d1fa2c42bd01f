"""
Truncated trivariate polynomials over a pluggable coefficient ring.

The formal variables are alpha (edge weight), beta (selected edge count)
and gamma (count of selected edges that project to graph edges). Terms
whose degree exceeds a cap are discarded on every operation, which is a
ring homomorphism onto the quotient by those monomials.

Coefficients are stored densely in a numpy array of shape
(A + 1, B + 1, C + 1). Residues modulo 2**M with M <= 64 use uint64 and
rely on native wrap-around modulo 2**64 followed by a mask; larger moduli
and exact integers use object arrays of Python ints.
"""

from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import PolynomialMismatchError

_WORD_BITS = 64


@dataclass(frozen=True)
class CoefficientRing:
    """Integers modulo 2**modulus_bits, or exact integers when modulus_bits is None."""

    modulus_bits: int | None = None

    def __post_init__(self) -> None:
        if self.modulus_bits is not None and self.modulus_bits < 1:
            raise ValueError(f"modulus exponent must be positive, got {self.modulus_bits}")

    @classmethod
    def residues(cls, bits: int) -> "CoefficientRing":
        return cls(modulus_bits=bits)

    @classmethod
    def integers(cls) -> "CoefficientRing":
        return cls(modulus_bits=None)

    @property
    def is_exact(self) -> bool:
        return self.modulus_bits is None

    @property
    def modulus(self) -> int | None:
        return None if self.modulus_bits is None else 1 << self.modulus_bits

    @property
    def native(self) -> bool:
        return self.modulus_bits is not None and self.modulus_bits <= _WORD_BITS

    @property
    def dtype(self) -> Any:
        return np.uint64 if self.native else object

    def element(self, value: int) -> int:
        """Map a Python integer into the ring (negative values wrap)."""
        modulus = self.modulus
        return int(value) if modulus is None else int(value) % modulus

    def scalar(self, value: int) -> Any:
        """Ring element in the storage dtype, ready to multiply an array."""
        element = self.element(value)
        return np.uint64(element) if self.native else element

    def zeros(self, shape: tuple[int, int, int]) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def reduce(self, coeffs: np.ndarray) -> np.ndarray:
        """Reduce stored coefficients into [0, 2**M) in place."""
        bits = self.modulus_bits
        if bits is None or bits == _WORD_BITS:
            return coeffs
        if self.native:
            np.bitwise_and(coeffs, np.uint64((1 << bits) - 1), out=coeffs)
        else:
            coeffs %= 1 << bits
        return coeffs


@dataclass(frozen=True)
class Caps:
    """Maximum retained degrees of alpha, beta and gamma."""

    alpha: int
    beta: int
    gamma: int

    def __post_init__(self) -> None:
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ValueError(f"degree caps must be non-negative, got {self}")

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.alpha + 1, self.beta + 1, self.gamma + 1)

    def contains(self, a: int, b: int, c: int) -> bool:
        return 0 <= a <= self.alpha and 0 <= b <= self.beta and 0 <= c <= self.gamma


class TruncatedPoly3:
    """Dense truncated polynomial in alpha, beta, gamma."""

    __slots__ = ("caps", "coeffs", "ring")

    def __init__(
        self, ring: CoefficientRing, caps: Caps, coeffs: np.ndarray | None = None
    ) -> None:
        self.ring = ring
        self.caps = caps
        self.coeffs = ring.zeros(caps.shape) if coeffs is None else coeffs

    @classmethod
    def zero(cls, ring: CoefficientRing, caps: Caps) -> "TruncatedPoly3":
        return cls(ring, caps)

    @classmethod
    def constant(cls, ring: CoefficientRing, caps: Caps, value: int) -> "TruncatedPoly3":
        return poly_monomial(ring, caps, 0, 0, 0, value)

    @classmethod
    def from_terms(
        cls,
        ring: CoefficientRing,
        caps: Caps,
        terms: Mapping[tuple[int, int, int], int],
    ) -> "TruncatedPoly3":
        poly = cls(ring, caps)
        for (a, b, c), value in terms.items():
            if caps.contains(a, b, c):
                poly.coeffs[a, b, c] = ring.element(poly.coeff(a, b, c) + value)
        return poly

    def _check_compatible(self, other: "TruncatedPoly3") -> None:
        if self.caps != other.caps or self.ring != other.ring:
            raise PolynomialMismatchError(
                f"cannot combine polynomials with caps/ring {self.caps}/{self.ring} "
                f"and {other.caps}/{other.ring}"
            )

    def copy(self) -> "TruncatedPoly3":
        return TruncatedPoly3(self.ring, self.caps, self.coeffs.copy())

    def is_zero(self) -> bool:
        return not np.any(self.coeffs != 0)

    def coeff(self, a: int, b: int, c: int) -> int:
        if not self.caps.contains(a, b, c):
            raise PolynomialMismatchError(
                f"coefficient index ({a}, {b}, {c}) lies outside caps {self.caps}"
            )
        return int(self.coeffs[a, b, c])

    def terms(self) -> Iterator[tuple[int, int, int, int]]:
        """Nonzero terms as (a, b, c, coefficient), lexicographically sorted."""
        for a, b, c in np.argwhere(self.coeffs != 0):
            yield int(a), int(b), int(c), int(self.coeffs[a, b, c])

    # In-place updates, used by the counter on accumulators it owns.

    def add_scaled_(self, other: "TruncatedPoly3", scalar: int = 1) -> "TruncatedPoly3":
        self._check_compatible(other)
        if scalar == 1:
            self.coeffs += other.coeffs
        else:
            self.coeffs += other.coeffs * self.ring.scalar(scalar)
        self.ring.reduce(self.coeffs)
        return self

    def scale_(self, scalar: int) -> "TruncatedPoly3":
        if scalar != 1:
            self.coeffs *= self.ring.scalar(scalar)
            self.ring.reduce(self.coeffs)
        return self

    def mul_binomial_(self, scalar: int, a: int, b: int, c: int) -> "TruncatedPoly3":
        """Multiply in place by (1 + scalar * alpha^a beta^b gamma^c)."""
        caps = self.caps
        if not caps.contains(a, b, c) or self.ring.element(scalar) == 0:
            return self
        shifted = self.coeffs[
            : caps.alpha + 1 - a, : caps.beta + 1 - b, : caps.gamma + 1 - c
        ] * self.ring.scalar(scalar)
        self.coeffs[a:, b:, c:] += shifted
        self.ring.reduce(self.coeffs)
        return self

    def mul_(self, other: "TruncatedPoly3") -> "TruncatedPoly3":
        self.coeffs = poly_mul(self, other).coeffs
        return self

    def __add__(self, other: "TruncatedPoly3") -> "TruncatedPoly3":
        return poly_add(self, other)

    def __sub__(self, other: "TruncatedPoly3") -> "TruncatedPoly3":
        return poly_sub(self, other)

    def __mul__(self, other: "TruncatedPoly3") -> "TruncatedPoly3":
        return poly_mul(self, other)

    def __neg__(self) -> "TruncatedPoly3":
        return poly_scale(self, -1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedPoly3):
            return NotImplemented
        return (
            self.caps == other.caps
            and self.ring == other.ring
            and bool(np.array_equal(self.coeffs, other.coeffs))
        )

    def __repr__(self) -> str:
        body = " + ".join(f"{v}*a^{a}b^{b}c^{c}" for a, b, c, v in self.terms()) or "0"
        return f"TruncatedPoly3({body}; caps={self.caps})"


def poly_monomial(
    ring: CoefficientRing, caps: Caps, a: int, b: int, c: int, coeff: int
) -> TruncatedPoly3:
    """coeff * alpha^a beta^b gamma^c, or zero when the degree exceeds a cap."""
    poly = TruncatedPoly3(ring, caps)
    if caps.contains(a, b, c):
        poly.coeffs[a, b, c] = ring.element(coeff)
    return poly


def poly_add(p: TruncatedPoly3, q: TruncatedPoly3) -> TruncatedPoly3:
    return p.copy().add_scaled_(q)


def poly_sub(p: TruncatedPoly3, q: TruncatedPoly3) -> TruncatedPoly3:
    return p.copy().add_scaled_(q, -1)


def poly_scale(p: TruncatedPoly3, scalar: int) -> TruncatedPoly3:
    result = p.copy()
    result.coeffs *= p.ring.scalar(scalar)
    p.ring.reduce(result.coeffs)
    return result


def poly_mul(p: TruncatedPoly3, q: TruncatedPoly3) -> TruncatedPoly3:
    """Truncated convolution, iterating over the sparser operand."""
    p._check_compatible(q)
    if np.count_nonzero(p.coeffs) > np.count_nonzero(q.coeffs):
        p, q = q, p
    caps = p.caps
    ring = p.ring
    result = TruncatedPoly3(ring, caps)
    for a, b, c in np.argwhere(p.coeffs != 0):
        a, b, c = int(a), int(b), int(c)
        result.coeffs[a:, b:, c:] += (
            q.coeffs[: caps.alpha + 1 - a, : caps.beta + 1 - b, : caps.gamma + 1 - c]
            * p.coeffs[a, b, c]
        )
    ring.reduce(result.coeffs)
    return result


def poly_coeff(p: TruncatedPoly3, a: int, b: int, c: int) -> int:
    return p.coeff(a, b, c)


def poly_lines(p: TruncatedPoly3) -> list[str]:
    """Debug serialization: one "a b c coeff" line per nonzero term."""
    return [f"{a} {b} {c} {v}" for a, b, c, v in p.terms()]
