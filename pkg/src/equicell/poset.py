"""Closure posets of labeled strata and of the compact cell complex.

Both face tests reduce to one pairwise criterion on governing indices.  Write
gov_X(a, b) = j when a precedes b in label X with smallest in-between separator
j.  Then "every point order that X forces is forced at least as strongly by Y"
reads: for all a, b with gov_X(a, b) = j', either gov_Y(a, b) <= j' or
gov_Y(b, a) < j'.  Call that cond(X, Y).

* stratification kind: fine lies in the closure of coarse iff cond(fine, coarse)
* cell (complement) kind: lower lies in the closed cell of upper iff
  cond(upper, lower)

The opposite argument order is not an accident: refining a stratum weakens
strict column comparisons into ties, while shrinking a cell strengthens the
separator a pair of points must realize.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

import numpy as np

from .labels import CellLabel, InvalidLabelError, cell_dimension, stratum_dimension

DEFAULT_BUDGET = 5_000_000
BUDGET_ENV = "EQUICELL_BUDGET"

KIND_COMPLEMENT = "complement"
KIND_STRATIFICATION = "stratification"
_KINDS = (KIND_COMPLEMENT, KIND_STRATIFICATION)


class BudgetExceededError(RuntimeError):
    """Requested enumeration is larger than the configured label budget."""


def resolve_budget(budget: int | None = None) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError("bad %s value %r" % (BUDGET_ENV, env)) from None
    return DEFAULT_BUDGET


def label_count_bound(d: int, n: int, kind: str = KIND_COMPLEMENT) -> int:
    """Exact label count for the cell kind; an upper bound for strata."""
    base = d if kind == KIND_COMPLEMENT else d + 1
    return factorial(n) * base ** (n - 1)


def _check_budget(d, n, kind, budget):
    limit = resolve_budget(budget)
    bound = label_count_bound(d, n, kind)
    if bound > limit:
        raise BudgetExceededError(
            "enumeration of (d=%d, n=%d, %s) needs %d labels, budget is %d"
            % (d, n, kind, bound, limit))
    return limit


def _check_args(d, n, kind):
    if kind not in _KINDS:
        raise ValueError("kind must be one of %r" % (_KINDS,))
    if d < 1 or n < 2:
        raise ValueError("need d >= 1 and n >= 2")


def _cond_pair(x: CellLabel, y: CellLabel) -> bool:
    # cond(x, y): every pair ordered by x is compatible, at least as tightly, in y
    n = x.n
    gx, gy = x.gov, y.gov
    for a in range(n):
        row = a * n
        for b in range(n):
            jx = gx[row + b]
            if jx == 0:
                continue
            jy = gy[row + b]
            if jy and jy <= jx:
                continue
            jyo = gy[b * n + a]
            if jyo and jyo < jx:
                continue
            return False
    return True


def _check_pair_compat(x: CellLabel, y: CellLabel):
    if x.d != y.d or x.n != y.n:
        raise InvalidLabelError("labels live on different (d, n)")


def is_face_stratification(coarse: CellLabel, fine: CellLabel) -> bool:
    """True when the stratum of `fine` lies in the closure of that of `coarse`."""
    _check_pair_compat(coarse, fine)
    return _cond_pair(fine, coarse)


def is_face_complement(lower: CellLabel, upper: CellLabel) -> bool:
    """True when the cell of `lower` lies in the closed cell of `upper`."""
    _check_pair_compat(lower, upper)
    if not (lower.is_cell and upper.is_cell):
        raise InvalidLabelError("cell face test needs separators <= d")
    return _cond_pair(upper, lower)


def enumerate_labels(d: int, n: int, kind: str = KIND_COMPLEMENT,
                     budget: int | None = None) -> list[CellLabel]:
    """All labels of the given kind, ordered lexicographically by (sigma, seps)."""
    _check_args(d, n, kind)
    _check_budget(d, n, kind, budget)
    out = []
    if kind == KIND_COMPLEMENT:
        seps_choices = list(product(range(1, d + 1), repeat=n - 1))
        for sigma in permutations(range(1, n + 1)):
            for seps in seps_choices:
                out.append(CellLabel(sigma, seps, d))
        return out
    top = d + 1
    seps_choices = list(product(range(1, top + 1), repeat=n - 1))
    for sigma in permutations(range(1, n + 1)):
        for seps in seps_choices:
            ok = True
            for k, s in enumerate(seps):
                if s == top and sigma[k] > sigma[k + 1]:
                    ok = False
                    break
            if ok:
                out.append(CellLabel(sigma, seps, d))
    return out


@dataclass(frozen=True)
class FacePoset:
    """Graded face poset: labels, their dimensions, and covering pairs.

    covers holds index pairs (lo, hi) with dim(hi) = dim(lo) + 1 and the lo
    element a face of the hi element; elements are in lexicographic
    (sigma, seps) order.
    """

    kind: str
    d: int
    n: int
    elements: tuple[CellLabel, ...]
    dims: tuple[int, ...]
    covers: tuple[tuple[int, int], ...]

    def index(self, label: CellLabel) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise KeyError("label %s not in poset" % label)

    def elements_of_dim(self, k: int) -> list[int]:
        return [i for i, dim in enumerate(self.dims) if dim == k]

    def f_vector(self) -> tuple[int, ...]:
        top = max(self.dims)
        counts = [0] * (top + 1)
        for dim in self.dims:
            counts[dim] += 1
        return tuple(counts)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector()))

    def lower_covers(self, i: int) -> list[int]:
        return [lo for lo, hi in self.covers if hi == i]

    def upper_covers(self, i: int) -> list[int]:
        return [hi for lo, hi in self.covers if lo == i]


def _dimension(label: CellLabel, kind: str) -> int:
    if kind == KIND_COMPLEMENT:
        return cell_dimension(label)
    return stratum_dimension(label)


def gov_arrays(labels) -> tuple[np.ndarray, np.ndarray]:
    """Stacked governing-index rows and their transposed-pair companions."""
    n = labels[0].n
    g = np.array([lab.gov for lab in labels], dtype=np.int16)
    perm = np.arange(n * n).reshape(n, n).T.reshape(-1)
    return g, g[:, perm]


def cond_block(quant: np.ndarray, against: np.ndarray, against_t: np.ndarray,
               chunk: int = 64) -> np.ndarray:
    """Boolean matrix C with C[i, j] = cond(label_i of quant, label_j of against).

    quant rows supply the quantified pairs; against/against_t are the gov rows
    of the other side and their transposed-pair rearrangement.
    """
    q = quant.shape[0]
    a = against.shape[0]
    out = np.empty((q, a), dtype=bool)
    same = (against > 0)
    opp = (against_t > 0)
    for s in range(0, q, chunk):
        blk = quant[s:s + chunk][:, None, :]          # (c, 1, p)
        ok = ((blk == 0)
              | (same[None, :, :] & (against[None, :, :] <= blk))
              | (opp[None, :, :] & (against_t[None, :, :] < blk)))
        out[s:s + chunk] = ok.all(axis=2)
    return out


def face_matrix(lowers, uppers, kind: str) -> np.ndarray:
    """Boolean matrix F with F[i, j] = (lowers[i] is a face of uppers[j])."""
    if not lowers or not uppers:
        return np.zeros((len(lowers), len(uppers)), dtype=bool)
    g_lo, gt_lo = gov_arrays(lowers)
    g_hi, gt_hi = gov_arrays(uppers)
    if kind == KIND_COMPLEMENT:
        # quantify over the upper label's pairs, test against the lower label
        return cond_block(g_hi, g_lo, gt_lo).T
    return cond_block(g_lo, g_hi, gt_hi)


def enumerate_cells(d: int, n: int, kind: str = KIND_COMPLEMENT,
                    budget: int | None = None) -> FacePoset:
    """Build the full graded poset with covering relations.

    Covers are face pairs whose dimensions differ by one; the pairwise face
    test is evaluated for every such pair (vectorized over governing rows).
    """
    labels = enumerate_labels(d, n, kind, budget=budget)
    dims = tuple(_dimension(lab, kind) for lab in labels)
    by_dim: dict[int, list[int]] = {}
    for i, dim in enumerate(dims):
        by_dim.setdefault(dim, []).append(i)
    covers: list[tuple[int, int]] = []
    for k in sorted(by_dim):
        if k + 1 not in by_dim:
            continue
        los = by_dim[k]
        his = by_dim[k + 1]
        mat = face_matrix([labels[i] for i in los], [labels[i] for i in his], kind)
        for ii, jj in zip(*np.nonzero(mat)):
            covers.append((los[ii], his[jj]))
    covers.sort()
    return FacePoset(kind=kind, d=d, n=n, elements=tuple(labels), dims=dims,
                     covers=tuple(covers))


def _leq(kind: str, a: CellLabel, b: CellLabel) -> bool:
    """Non-strict order used by both posets: a lies in the closure of b."""
    if a == b:
        return True
    if kind == KIND_COMPLEMENT:
        return is_face_complement(a, b)
    return is_face_stratification(b, a)


def validate_covers(poset: FacePoset) -> None:
    """Cross-check the stored covering pairs against the full face order.

    Re-derives every relation with the scalar pair test (independent of the
    vectorized construction) and raises ValueError if a stored pair is not a
    face pair with dimension gap one, if some strictly intermediate element
    exists between a stored pair, or if a face pair with dimension gap one
    is missing from the stored covers.
    """
    elems = poset.elements
    dims = poset.dims
    kind = poset.kind
    stored = set(poset.covers)
    for lo, hi in stored:
        if dims[hi] != dims[lo] + 1:
            raise ValueError(f"cover ({lo},{hi}) has dimension gap != 1")
        if not _leq(kind, elems[lo], elems[hi]):
            raise ValueError(f"cover ({lo},{hi}) is not a face pair")
        for z in range(len(elems)):
            if z == lo or z == hi:
                continue
            if _leq(kind, elems[lo], elems[z]) and _leq(kind, elems[z], elems[hi]):
                raise ValueError(
                    f"element {z} lies strictly between cover ({lo},{hi})")
    for i in range(len(elems)):
        for j in range(len(elems)):
            if dims[j] != dims[i] + 1 or (i, j) in stored:
                continue
            if _leq(kind, elems[i], elems[j]):
                raise ValueError(f"face pair ({i},{j}) missing from covers")


def f_vector(d: int, n: int, budget: int | None = None) -> tuple[int, ...]:
    """Cell counts of the compact complex by dimension 0..(d-1)(n-1)."""
    labels = enumerate_labels(d, n, KIND_COMPLEMENT, budget=budget)
    top = (d - 1) * (n - 1)
    counts = [0] * (top + 1)
    for lab in labels:
        counts[cell_dimension(lab)] += 1
    return tuple(counts)


def euler_characteristic(d: int, n: int, budget: int | None = None) -> int:
    fv = f_vector(d, n, budget=budget)
    return sum((-1) ** k * c for k, c in enumerate(fv))


def poset_payload(poset: FacePoset) -> dict:
    """Plain-data form of a poset, matching the JSON export schema."""
    return {
        "d": poset.d,
        "n": poset.n,
        "kind": poset.kind,
        "elements": [
            {"sigma": list(lab.sigma), "seps": list(lab.seps), "dim": dim}
            for lab, dim in zip(poset.elements, poset.dims)
        ],
        "covers": [[lo, hi] for lo, hi in poset.covers],
    }


def poset_to_json(poset: FacePoset) -> str:
    """Serialize a poset deterministically (17 significant digit reals are
    irrelevant here, but the shared encoder keeps key order and layout fixed)."""
    from .jsonio import dumps
    return dumps(poset_payload(poset))


def poset_from_json(data) -> FacePoset:
    """Rebuild a poset from the JSON export (accepts text or parsed dict)."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    d, n, kind = data["d"], data["n"], data["kind"]
    labels = tuple(CellLabel(tuple(e["sigma"]), tuple(e["seps"]), d)
                   for e in data["elements"])
    dims = tuple(e["dim"] for e in data["elements"])
    covers = tuple((int(lo), int(hi)) for lo, hi in data["covers"])
    return FacePoset(kind=kind, d=d, n=n, elements=labels, dims=dims, covers=covers)
