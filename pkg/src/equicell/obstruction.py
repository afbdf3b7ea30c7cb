"""Deciding existence of the symmetric equivariant sphere-valued map.

The decision reduces to integer arithmetic on the top two layers of the
compact cell complex.  Top cells (facets) are indexed by permutations; the
cells one dimension down (ridges) carry one separator lowered to d-1, and the
position of that separator is invariant under the permutation action, so
ridge classes are indexed by 1..n-1.  A class function b assigns an integer
x_j to class j; its coboundary, with every incidence counted +1, takes the
value sum_j x_j * C(n, j) on every facet.  The map exists iff some b reaches
the value 1, i.e. iff gcd{C(n,1), ..., C(n,n-1)} = 1, which happens exactly
when n is not a prime power.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import comb, factorial, gcd

import numpy as np

from .labels import CellLabel, InvalidLabelError
from .poset import FacePoset, _check_budget, KIND_COMPLEMENT, face_matrix


@dataclass(frozen=True)
class RidgeOrbitCochain:
    """Integer assignment to the n-1 ridge classes, plain (untwisted) values."""

    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.n < 2:
            raise ValueError("need n >= 2")
        if len(self.values) != self.n - 1:
            raise ValueError("expected %d values, got %d"
                             % (self.n - 1, len(self.values)))


@dataclass(frozen=True)
class ObstructionReport:
    """Outcome of the map-existence decision for n points in R^d."""

    d: int
    n: int
    gcd: int
    prime_power: tuple[int, int] | None
    group: str
    map_exists: bool
    witness: RidgeOrbitCochain | None


def ridge_orbit_index(ridge: CellLabel) -> int:
    """Class index of a ridge: the position (1-based) of its lone d-1 separator."""
    d = ridge.d
    if d < 2:
        raise InvalidLabelError("ridges need d >= 2")
    if not ridge.is_cell:
        raise InvalidLabelError("not a cell label")
    low = [k for k, s in enumerate(ridge.seps) if s == d - 1]
    rest_ok = all(s == d for k, s in enumerate(ridge.seps) if k not in low)
    if len(low) != 1 or not rest_ok:
        raise InvalidLabelError("label %s is not one dimension below the top" % ridge)
    return low[0] + 1


def facet_incidence_vector(facet: CellLabel, poset: FacePoset) -> tuple[int, ...]:
    """Count boundary ridges of a facet by class, read off the poset covers."""
    n = facet.n
    top = (facet.d - 1) * (n - 1)
    i = poset.index(facet)
    if poset.kind != KIND_COMPLEMENT or poset.dims[i] != top:
        raise ValueError("expected a top cell of a cell-kind poset")
    counts = [0] * (n - 1)
    for lo in poset.lower_covers(i):
        counts[ridge_orbit_index(poset.elements[lo]) - 1] += 1
    return tuple(counts)


def binomial_gcd(n: int) -> int:
    """gcd of the middle binomial row C(n,1), ..., C(n,n-1)."""
    if n < 2:
        raise ValueError("need n >= 2")
    g = 0
    c = 1
    # row is symmetric, so the first half carries the full gcd
    for j in range(1, n // 2 + 1):
        c = c * (n - j + 1) // j
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, k) with n = p**k, or None when n has two distinct prime factors."""
    if n < 2:
        raise ValueError("need n >= 2")
    m = n
    p = None
    f = 2
    while f * f <= m:
        if m % f == 0:
            p = f
            while m % f == 0:
                m //= f
            break
        f += 1
    if p is None:
        return (n, 1)
    if m != 1:
        return None
    k = 0
    while n > 1:
        n //= p
        k += 1
    return (p, k)


def is_prime_power(n: int) -> bool:
    return prime_power(n) is not None


def binomial_valuation(n: int, j: int, p: int) -> int:
    """Exponent of the prime p in C(n, j), via factorial valuations."""
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    if p < 2:
        raise ValueError("p must be a prime")

    def val_factorial(m):
        v, q = 0, p
        while q <= m:
            v += m // q
            q *= p
        return v

    return val_factorial(n) - val_factorial(j) - val_factorial(n - j)


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (g, s, t) with s*a + t*b = g = gcd(a, b)
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def coboundary_witness(n: int) -> RidgeOrbitCochain:
    """Integers x_1..x_{n-1} with sum x_j * C(n, j) = 1, exactly.

    Built left to right by the extended Euclidean algorithm and verified
    against the defining identity before returning.  Raises ValueError when no
    witness exists (n a prime power).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    coeffs = [1]
    g = n  # C(n, 1)
    c = n
    for j in range(2, n):
        if g == 1:
            coeffs.append(0)
            continue
        c = c * (n - j + 1) // j
        g2, s, t = _extended_gcd(g, c)
        coeffs = [s * x for x in coeffs]
        coeffs.append(t)
        g = g2
    if g != 1:
        raise ValueError("no witness: gcd of the binomial row is %d" % g)
    total = sum(x * comb(n, j) for j, x in enumerate(coeffs, start=1))
    if total != 1:
        raise AssertionError("witness failed verification: got %d" % total)
    return RidgeOrbitCochain(n, tuple(coeffs))


def obstruction_report(d: int, n: int) -> ObstructionReport:
    """Run the full decision for n points in R^d."""
    if d < 2 or n < 2:
        raise ValueError("need d >= 2 and n >= 2")
    g = binomial_gcd(n)
    pp = prime_power(n)
    exists = g == 1
    witness = coboundary_witness(n) if exists else None
    group = "trivial" if g == 1 else "Z/%d" % g
    return ObstructionReport(d=d, n=n, gcd=g, prime_power=pp, group=group,
                             map_exists=exists, witness=witness)


def top_cells(d: int, n: int) -> list[CellLabel]:
    """All facets (every separator equal to d), in lexicographic sigma order."""
    seps = (d,) * (n - 1)
    return [CellLabel(sigma, seps, d) for sigma in permutations(range(1, n + 1))]


def ridge_cells(d: int, n: int) -> list[CellLabel]:
    """All ridges (one separator d-1, the rest d), lexicographic (sigma, seps)."""
    if d < 2:
        raise ValueError("ridges need d >= 2")
    out = []
    for sigma in permutations(range(1, n + 1)):
        for k in range(n - 1):
            seps = tuple(d - 1 if m == k else d for m in range(n - 1))
            out.append(CellLabel(sigma, seps, d))
    return out


def verify_coboundary_on_complex(d: int, n: int, cochain: RidgeOrbitCochain,
                                 budget: int | None = None) -> dict[CellLabel, int]:
    """Evaluate the coboundary of a ridge-class cochain on every facet.

    Ridge membership in a facet boundary is established by the pairwise face
    test, not by any counting shortcut; each incident ridge contributes its
    class value with coefficient +1.
    """
    if d < 2 or n < 2:
        raise ValueError("need d >= 2 and n >= 2")
    if cochain.n != n:
        raise ValueError("cochain is for n = %d, complex has n = %d" % (cochain.n, n))
    _check_budget(d, n, KIND_COMPLEMENT, budget)
    facets = top_cells(d, n)
    ridges = ridge_cells(d, n)
    inc = face_matrix(ridges, facets, KIND_COMPLEMENT)   # (R, F) booleans
    vals = np.array([cochain.values[ridge_orbit_index(r) - 1] for r in ridges],
                    dtype=np.int64)
    sums = inc.astype(np.int64).T @ vals
    return {f: int(s) for f, s in zip(facets, sums)}


def facet_ridge_class_counts(d: int, n: int,
                             budget: int | None = None) -> np.ndarray:
    """Matrix (facets x classes) counting boundary ridges of each class."""
    if d < 2 or n < 2:
        raise ValueError("need d >= 2 and n >= 2")
    _check_budget(d, n, KIND_COMPLEMENT, budget)
    facets = top_cells(d, n)
    ridges = ridge_cells(d, n)
    inc = face_matrix(ridges, facets, KIND_COMPLEMENT)
    classes = np.array([ridge_orbit_index(r) - 1 for r in ridges])
    counts = np.zeros((len(facets), n - 1), dtype=np.int64)
    for j in range(n - 1):
        counts[:, j] = inc[classes == j].sum(axis=0)
    return counts


def expected_incidence_row(n: int) -> tuple[int, ...]:
    """The predicted per-facet class counts C(n,1), ..., C(n,n-1)."""
    return tuple(comb(n, j) for j in range(1, n))
