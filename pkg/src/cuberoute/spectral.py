"""Exact spectra of dressed-hypercube networks.

Because the adjacency matrix is a sum of Kronecker products of identity
and swap blocks, its eigenvectors are the product vectors built from the
swap eigenstates: a sign vector s in {+1,-1}^d stands for the state whose
amplitude at node x is 2**(-d/2) * prod_i s_i**x_i (the Hadamard basis).
Every generator then contributes the product of the signs under its
1-bits, so every eigenvalue is a small integer:

    lambda(s) = (2**l - 1 if s_1..s_l are all +1 else -1)
                + (#(+1) - #(-1) among s_{l+1}..s_d)

The eigenvalues ladder down in steps of 2 from 2**l + d - l - 1 and split
into an even and an odd family; shifting by the offset k (the maximum
eigenvalue mod 4) makes the even family multiples of 4 and the odd family
multiples of 4 after adding 2.  That alignment is what turns the
quarter-period evolution into a node permutation.

All eigenvalues are stored as exact integers; comparisons never need a
tolerance.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .cayley import GeneratingSet, identity_perm, permute_mask, validate_coord_perm, _check_bounds

PARITY_EVEN = "even"
PARITY_ODD = "odd"

RATIO_DENOMINATOR_CAP = 10**6


class NoValidOffsetError(ValueError):
    """No integer offset aligns the even/odd eigenvalue families (upstream bug)."""


@dataclass(frozen=True)
class SignVector:
    """A product eigenvector, one +1/-1 sign per coordinate."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be +1/-1, got {self.signs}")

    @classmethod
    def from_index(cls, u: int, d: int) -> SignVector:
        """Index u has a 1-bit (coordinate 1 = MSB) wherever the sign is -1."""
        return cls(tuple(-1 if (u >> (d - i)) & 1 else 1 for i in range(1, d + 1)))

    @classmethod
    def from_string(cls, text: str) -> SignVector:
        return cls(tuple(1 if c == "+" else -1 for c in text))

    @property
    def d(self) -> int:
        return len(self.signs)

    @property
    def index(self) -> int:
        value = 0
        for s in self.signs:
            value = (value << 1) | (s < 0)
        return value

    def amplitudes(self) -> np.ndarray:
        """Node-basis expansion: entry x is 2**(-d/2) * prod_i signs_i**x_i."""
        vec = np.array([1.0])
        for s in self.signs:
            vec = np.kron(vec, np.array([1.0, float(s)]))
        return vec / np.sqrt(len(vec))

    def __str__(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


def _popcount(values: np.ndarray) -> np.ndarray:
    """Vectorized SWAR popcount for values below 2**32."""
    v = values.astype(np.uint32)
    v = v - ((v >> 1) & np.uint32(0x55555555))
    v = (v & np.uint32(0x33333333)) + ((v >> 2) & np.uint32(0x33333333))
    v = (v + (v >> 4)) & np.uint32(0x0F0F0F0F)
    return ((v * np.uint32(0x01010101)) >> 24).astype(np.int64)


def parity_mask(d: int, l: int, coord_perm: tuple[int, ...] | None = None) -> int:
    """Bit mask of the coordinates whose -1 count decides a sign vector's parity.

    These are exactly the coordinates flipped by the quarter-period
    permutation: all d of them at l = 1 (the plain hypercube swaps
    antipodes), none at l = d, and the image of coordinates l+1..d under
    the rotation otherwise.
    """
    _check_bounds(d, l)
    perm = identity_perm(d) if coord_perm is None else validate_coord_perm(coord_perm, d)
    if l == 1:
        return (1 << d) - 1
    dressed = 0
    for i in range(1, l + 1):
        dressed |= 1 << (d - perm[i - 1])
    return ((1 << d) - 1) ^ dressed


@dataclass(frozen=True)
class SpectralTable:
    """All 2**d eigenpairs of a dressed hypercube, indexed by sign vector.

    ``eigenvalues[u]`` and ``parity_even[u]`` belong to
    ``SignVector.from_index(u, d)``.  Arrays are read-only; the table can
    be shared freely between threads.
    """

    d: int
    l: int
    coord_perm: tuple[int, ...]
    k: int
    eigenvalues: np.ndarray
    parity_even: np.ndarray

    @property
    def size(self) -> int:
        return 1 << self.d

    def eigenvalue(self, s: SignVector) -> int:
        return int(self.eigenvalues[s.index])

    def parity(self, s: SignVector) -> str:
        return PARITY_EVEN if self.parity_even[s.index] else PARITY_ODD

    def rows(self) -> Iterator[tuple[SignVector, int, str]]:
        for u in range(self.size):
            yield (
                SignVector.from_index(u, self.d),
                int(self.eigenvalues[u]),
                PARITY_EVEN if self.parity_even[u] else PARITY_ODD,
            )

    def spectrum(self) -> list[int]:
        """The eigenvalue multiset, descending."""
        return sorted((int(v) for v in self.eigenvalues), reverse=True)


def eigenvalue_by_summation(
    s: SignVector,
    gen: GeneratingSet,
    coord_perm: tuple[int, ...] | None = None,
) -> int:
    """Sum each (rotated) generator's contribution: the product of signs under its 1-bits."""
    d = gen.d
    if s.d != d:
        raise ValueError(f"sign vector has dimension {s.d}, generating set {d}")
    perm = identity_perm(d) if coord_perm is None else validate_coord_perm(coord_perm, d)
    u = s.index
    total = 0
    for g in gen.masks:
        g = permute_mask(g, perm, d)
        total += -1 if bin(u & g).count("1") % 2 else 1
    return total


def eigenvalue_closed_form(s: SignVector, d: int, l: int) -> int:
    """Closed form for the unrotated network; must agree with the generator sum.

    The 2**l - 1 generators inside the dressed block sum to 2**l - 1 when
    the first l signs are all +1 and to -1 otherwise (a character sum over
    the block); the remaining weight-1 generators add one sign each.
    """
    _check_bounds(d, l)
    if s.d != d:
        raise ValueError(f"sign vector has dimension {s.d}, expected {d}")
    head = s.signs[:l]
    tail = s.signs[l:]
    block = (1 << l) - 1 if all(x > 0 for x in head) else -1
    return block + sum(tail)


def phase_offset(eigenvalues: np.ndarray, parity_even: np.ndarray) -> int:
    """The integer k = (max eigenvalue) mod 4 aligning both parity families.

    Raises NoValidOffsetError unless every even eigenvalue satisfies
    (lambda - k) % 4 == 0 and every odd one (lambda - k + 2) % 4 == 0;
    for a well-formed generating set this never fires.
    """
    eigenvalues = np.asarray(eigenvalues, dtype=np.int64)
    parity_even = np.asarray(parity_even, dtype=bool)
    k = int(eigenvalues.max()) % 4
    shifted = np.where(parity_even, eigenvalues - k, eigenvalues - k + 2)
    if np.any(shifted % 4 != 0):
        bad = int(np.argmax(shifted % 4 != 0))
        raise NoValidOffsetError(
            f"eigenvalue {int(eigenvalues[bad])} (index {bad}) breaks the mod-4 ladder for k={k}"
        )
    return k


def build_spectral_table(
    d: int,
    l: int,
    coord_perm: tuple[int, ...] | None = None,
) -> SpectralTable:
    """Tabulate every sign vector's eigenvalue and parity for Z_2^d(l)."""
    _check_bounds(d, l)
    perm = identity_perm(d) if coord_perm is None else validate_coord_perm(coord_perm, d)
    n = 1 << d

    dressed = 0
    for i in range(1, l + 1):
        dressed |= 1 << (d - perm[i - 1])
    rest = ((1 << d) - 1) ^ dressed

    u = np.arange(n, dtype=np.uint32)
    block = np.where((u & np.uint32(dressed)) == 0, (1 << l) - 1, -1).astype(np.int64)
    minus_count = _popcount(u & np.uint32(rest))
    eigenvalues = block + (d - l - minus_count) - minus_count

    pmask = parity_mask(d, l, perm)
    parity_even = _popcount(u & np.uint32(pmask)) % 2 == 0

    k = phase_offset(eigenvalues, parity_even)
    eigenvalues.flags.writeable = False
    parity_even.flags.writeable = False
    return SpectralTable(d=d, l=l, coord_perm=perm, k=k, eigenvalues=eigenvalues, parity_even=parity_even)


def _is_rational(ratio: float, tolerance: float) -> bool:
    # Continued-fraction rationalization; the error budget shrinks with the
    # square of the recovered denominator, which separates honest rationals
    # (error at machine level) from quadratic irrationals (error ~ 1/q^2).
    approx = Fraction(ratio).limit_denominator(RATIO_DENOMINATOR_CAP)
    return abs(ratio - float(approx)) * approx.denominator**2 <= tolerance


def rational_ratio_check(eigenvalues, tolerance: float = 1e-9) -> bool:
    """Are all eigenvalue-difference ratios rational?

    This is the spectral precondition for a mirror-symmetric network to
    revive a state exactly.  Eigenvalues closer than ``tolerance`` times
    the spectral spread are merged first; with fewer than three distinct
    values the check is vacuously true.  The test is exactly invariant
    under affine rescaling of the spectrum.
    """
    values = np.sort(np.asarray(eigenvalues, dtype=float))
    if values.size == 0:
        return True
    spread = float(values[-1] - values[0])
    if spread == 0.0:
        return True
    distinct = [float(values[0])]
    for v in values[1:]:
        if v - distinct[-1] > tolerance * max(1.0, spread):
            distinct.append(float(v))
    if len(distinct) < 3:
        return True
    diffs = [a - b for a, b in itertools.combinations(distinct, 2)]
    return all(_is_rational(x / y, tolerance) for x in diffs for y in diffs)
