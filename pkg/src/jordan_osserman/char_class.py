"""Mod-2 cohomology of real projective space: the ring Z2[w]/(w^q).

An element sum c_i w^i is stored as the integer sum c_i 2^i, so addition is
XOR and multiplication is carry-less. Everything here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product


def _clmul(a, b):
    """Carry-less product of two bit masks (polynomial product over GF(2))."""
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


@dataclass(frozen=True)
class TruncatedZ2Poly:
    """sum c_i w^i with c_i in {0, 1} and w^q = 0."""

    bits: int
    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("truncation degree must be at least 1")
        if self.bits < 0:
            raise ValueError("bits must be non-negative")
        object.__setattr__(self, "bits", self.bits & ((1 << self.q) - 1))

    @classmethod
    def from_coeffs(cls, coeffs, q=None):
        q = len(coeffs) if q is None else q
        bits = 0
        for i, c in enumerate(coeffs):
            if c not in (0, 1):
                raise ValueError("coefficients must be bits")
            bits |= c << i
        return cls(bits, q)

    @classmethod
    def one(cls, q):
        return cls(1, q)

    @classmethod
    def monomial(cls, degree, q):
        return cls(1 << degree, q)

    @property
    def coeffs(self):
        return tuple((self.bits >> i) & 1 for i in range(self.q))

    @property
    def degree(self):
        """Degree of the highest non-zero term, -1 for zero."""
        return self.bits.bit_length() - 1

    @property
    def is_unit(self):
        return bool(self.bits & 1)

    def __add__(self, other):
        _same_ring(self, other)
        return TruncatedZ2Poly(self.bits ^ other.bits, self.q)

    def __mul__(self, other):
        return poly_mul(self, other)

    def __str__(self):
        terms = [("1" if i == 0 else "w" if i == 1 else f"w^{i}")
                 for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def _same_ring(a, b):
    if a.q != b.q:
        raise ValueError(f"truncation degrees differ: {a.q} vs {b.q}")


def poly_mul(a, b):
    _same_ring(a, b)
    return TruncatedZ2Poly(_clmul(a.bits, b.bits), a.q)


def invert_total_class(a):
    """The inverse of a unit: b_0 = 1, b_k = sum_{i=1..k} a_i b_{k-i} (mod 2).

    Run as power-series long division: bit k of the running remainder of
    1 - a*b is exactly that sum, and clearing it sets b_k.
    """
    if not a.is_unit:
        raise ValueError("not a unit: constant term is 0")
    mask = (1 << a.q) - 1
    rem, b = 1, 0
    for k in range(a.q):
        if (rem >> k) & 1:
            b |= 1 << k
            rem = (rem ^ (a.bits << k)) & mask
    return TruncatedZ2Poly(b, a.q)


def top_class_of_gamma_perp_sub(r, q):
    """w^r, the top class of a rank-r subbundle of the orthogonal complement of
    the tautological line bundle over the projective space of R^q."""
    if not 1 <= r < q:
        raise ValueError(f"need 1 <= r < q, got r={r}, q={q}")
    return TruncatedZ2Poly.monomial(r, q)


class Obstruction(str, Enum):
    IMPOSSIBLE = "Impossible"
    POSSIBLE_WITNESS = "PossibleWitness"


def _check_range(p, q, r):
    if not (1 <= r <= p < q):
        raise ValueError(f"need 1 <= r <= p < q, got p={p}, q={q}, r={r}")


def total_class(r, q, middle=None):
    """1 + (middle terms) + w^r: a total class whose top class is w^r.

    ``middle`` gives the bits of degrees 1..r-1 and defaults to all ones.
    """
    top = top_class_of_gamma_perp_sub(r, q)
    if middle is None:
        middle = (1 << r) - 2
    return TruncatedZ2Poly(1 | (middle & ((1 << r) - 2)) | top.bits, q)


def factorization_obstruction(p, q, r, middle=None):
    """Can (1 + ... + w^r) * g = 1 hold with deg g <= p - r?

    Such a g is the rank p - r complement's total class in the trivial rank-p
    timelike bundle. Since p < q the truncation never acts, and g would have
    to agree with the unique power-series inverse through degree p, so it
    exists iff that inverse vanishes in degrees p - r + 1 .. p.
    """
    _check_range(p, q, r)
    inv = invert_total_class(total_class(r, q, middle)).coeffs
    if any(inv[d] for d in range(p - r + 1, p + 1)):
        return Obstruction.IMPOSSIBLE
    return Obstruction.POSSIBLE_WITNESS


def brute_force_obstruction(p, q, r, middle=None):
    """Same question answered by trying every g of degree <= p - r."""
    _check_range(p, q, r)
    f = total_class(r, q, middle).bits
    for bits in product((0, 1), repeat=p - r + 1):
        g = sum(b << i for i, b in enumerate(bits))
        if _clmul(f, g) == 1:
            return Obstruction.POSSIBLE_WITNESS
    return Obstruction.IMPOSSIBLE


def obstruction_table(max_q, p=None, q=None, r=None):
    """Rows (p, q, r, verdict) over 1 <= r <= p < q <= max_q, optionally pinned."""
    rows = []
    for qq in range(2, max_q + 1):
        if q is not None and qq != q:
            continue
        for pp in range(1, qq):
            if p is not None and pp != p:
                continue
            for rr in range(1, pp + 1):
                if r is not None and rr != r:
                    continue
                rows.append((pp, qq, rr, factorization_obstruction(pp, qq, rr)))
    return rows
