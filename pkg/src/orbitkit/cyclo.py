"""Exact values in Z[zeta_e].

Two shapes show up: single terms ``n * zeta_e^k`` (character-formula entries)
and sums of e-th roots of unity given by a count per exponent (inner products,
traces, convolution coefficients).  A sum is reduced modulo the cyclotomic
polynomial Phi_e, which gives a canonical form over Z since Phi_e is monic.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols


@dataclass(frozen=True)
class RootMultiple:
    """``scale * zeta(order)^exponent``; the zero value has scale 0."""

    scale: int
    order: int
    exponent: int = 0

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("root order must be positive")
        k = self.exponent % self.order if self.scale else 0
        object.__setattr__(self, "exponent", k)

    @classmethod
    def zero(cls, order: int = 1) -> "RootMultiple":
        return cls(0, order, 0)

    def __bool__(self):
        return self.scale != 0

    def __complex__(self):
        if not self.scale:
            return 0j
        return self.scale * cmath.exp(2j * cmath.pi * self.exponent / self.order)

    def conjugate(self) -> "RootMultiple":
        return RootMultiple(self.scale, self.order, -self.exponent)

    def normalized(self) -> "RootMultiple":
        """Same value with the root order reduced to lowest terms."""
        if not self.scale:
            return RootMultiple(0, 1)
        g = gcd(self.exponent, self.order)
        return RootMultiple(self.scale, self.order // g, self.exponent // g)

    def render(self) -> str:
        if not self.scale:
            return "0"
        return f"{self.scale}*zeta({self.order})^{self.exponent}"

    def to_json(self) -> dict:
        return {"scale": self.scale, "root_order": self.order, "exponent": self.exponent}


@lru_cache(maxsize=None)
def cyclotomic_coeffs(e: int) -> tuple[int, ...]:
    """Coefficients of Phi_e, lowest degree first."""
    x = symbols("x")
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(e, x), x).all_coeffs()))


def reduce_counts(counts: np.ndarray, e: int) -> np.ndarray:
    """Canonical form of sum_k counts[..., k] zeta_e^k modulo Phi_e.

    ``counts`` has last axis of length e; the result has last axis phi(e).
    Works row-wise on any leading shape.
    """
    c = np.array(counts, dtype=np.int64, copy=True)
    phi = cyclotomic_coeffs(e)
    deg = len(phi) - 1
    ph = np.array(phi, dtype=np.int64)
    for k in range(e - 1, deg - 1, -1):
        lead = c[..., k].copy()
        if np.any(lead):
            # subtract lead * x^(k-deg) * Phi_e ; Phi_e is monic
            c[..., k - deg:k + 1] -= lead[..., None] * ph
    return c[..., :deg]


def exponent_counts(exps: np.ndarray, e: int, axis: int = -1) -> np.ndarray:
    """Histogram of exponents modulo e along ``axis``; new last axis has length e."""
    exps = np.moveaxis(np.asarray(exps) % e, axis, -1)
    lead = exps.shape[:-1]
    flat = exps.reshape(-1, exps.shape[-1])
    out = np.zeros((flat.shape[0], e), dtype=np.int64)
    rows = np.repeat(np.arange(flat.shape[0]), flat.shape[1])
    np.add.at(out, (rows, flat.ravel()), 1)
    return out.reshape(lead + (e,))


def root_sum_equals(counts: np.ndarray, value: RootMultiple, e: int) -> np.ndarray:
    """Exact test ``sum counts[k] zeta_e^k == value`` (value's order must divide e)."""
    if value.scale and e % value.order:
        raise ValueError(f"zeta({value.order}) does not live in Q(zeta_{e})")
    target = np.zeros(e, dtype=np.int64)
    if value.scale:
        target[(value.exponent * (e // value.order)) % e] = value.scale
    diff = np.asarray(counts, dtype=np.int64) - target
    return ~np.any(reduce_counts(diff, e), axis=-1)


def roots_to_complex(exps: np.ndarray, e: int) -> np.ndarray:
    return np.exp(2j * np.pi * (np.asarray(exps) % e) / e)


def format_complex(z: complex, digits: int = 12) -> str:
    """``re+imi`` with ``digits`` significant digits; values below 1e-12 print as 0."""
    re, im = z.real, z.imag
    re = 0.0 if abs(re) < 1e-12 else re
    im = 0.0 if abs(im) < 1e-12 else im
    return f"{re:.{digits}g}{im:+.{digits}g}i"
