"""Residue arithmetic on R_d = {0, ..., d-1} and the index maps psi, phi_+, phi_-.

Roots of unity never appear here as complex numbers: eta^a is carried by
its exponent a, and v (a d-th root of -1) by the residue c with v^2 = eta^c.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidDegreeError, ResidueRangeError


def reduce(a: int, d: int) -> int:
    """Return the representative of ``a`` modulo ``d`` in ``0..d-1``."""
    if d <= 0:
        raise InvalidDegreeError(f"modulus must be positive, got {d}")
    return a % d


def _check(d: int, k: int, i: int) -> None:
    if d <= 0:
        raise InvalidDegreeError(f"degree must be positive, got {d}")
    if not (0 <= k < d and 0 <= i < d):
        raise ResidueRangeError(f"indices ({k}, {i}) out of range for d={d}")


def psi(d: int, k: int, i: int) -> int:
    """(k, i) -> k + 2i mod d."""
    _check(d, k, i)
    return (k + 2 * i) % d


def phi_plus(d: int, k: int, i: int) -> int:
    """(k, i) -> i + k mod d (anti-diagonal index)."""
    _check(d, k, i)
    return (i + k) % d


def phi_minus(d: int, k: int, i: int) -> int:
    """(k, i) -> i - k mod d (diagonal index)."""
    _check(d, k, i)
    return (i - k) % d


def canonical_c(d: int) -> int:
    return 0 if d % 2 else 1


@dataclass(frozen=True)
class SurfaceParams:
    """Degree ``d`` of the Fermat surface plus the exponent ``c`` with v^2 = eta^c.

    ``c`` defaults to the canonical choice: 0 (v = -1) for odd d and 1
    (v = exp(i*pi/d)) for even d.  For even d any odd ``c`` is admissible.
    """

    d: int
    c: int | None = None

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 3:
            raise InvalidDegreeError(f"degree must be an integer >= 3, got {self.d!r}")
        if self.c is None:
            object.__setattr__(self, "c", canonical_c(self.d))
        if not 0 <= self.c < self.d:
            raise ResidueRangeError(f"c={self.c} not in R_{self.d}")
        if self.d % 2 == 0 and self.c % 2 == 0:
            raise InvalidDegreeError(f"c must be odd for even d (got d={self.d}, c={self.c})")

    @property
    def canonical(self) -> bool:
        return self.c == canonical_c(self.d)
