"""Combinatorial labels for ordered point configurations on a line of vectors.

A label is a pair (sigma, seps): sigma lists the n point indices in the order
their coordinate columns appear under lexicographic comparison, and seps[k]
records the first coordinate (1-based) in which the k-th and (k+1)-th columns
differ.  A separator value of d+1 means the two columns coincide entirely; a
value j <= d means they agree in coordinates 1..j-1 and differ in coordinate j.

Labels with separators in {1..d} index the cells of the compact complex built
from strictly-separated configurations; labels allowing d+1 index strata of the
ambient stratified vector space.  Runs of d+1 separators carry a normalization:
the letters they span must increase, so each label names its stratum uniquely.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


class InvalidLabelError(ValueError):
    """Label data that violates the combinatorial rules."""


def _governing_row(sigma, seps, n):
    # gov[(a-1)*n + (b-1)] = min separator strictly between a and b when a
    # precedes b in sigma, else 0.  Running minimum, O(n^2) total.
    gov = [0] * (n * n)
    for k in range(n):
        a = sigma[k]
        lo = None
        for m in range(k + 1, n):
            s = seps[m - 1]
            if lo is None or s < lo:
                lo = s
            gov[(a - 1) * n + sigma[m] - 1] = lo
    return tuple(gov)


@dataclass(frozen=True)
class CellLabel:
    """An ordered-partition label (sigma, seps) over 1..n with 1 <= sep <= d+1.

    sigma must be a permutation of 1..n and seps must have length n-1.  Any
    maximal run of separators equal to d+1 must span an increasing stretch of
    sigma; constructing a label that breaks this rule raises InvalidLabelError
    rather than silently reordering.
    """

    sigma: tuple[int, ...]
    seps: tuple[int, ...]
    d: int
    gov: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        sigma = tuple(int(v) for v in self.sigma)
        seps = tuple(int(v) for v in self.seps)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "seps", seps)
        n = len(sigma)
        if n < 1:
            raise InvalidLabelError("empty permutation")
        if self.d < 1:
            raise InvalidLabelError("need d >= 1, got %r" % (self.d,))
        if sorted(sigma) != list(range(1, n + 1)):
            raise InvalidLabelError("sigma %r is not a permutation of 1..%d" % (sigma, n))
        if len(seps) != n - 1:
            raise InvalidLabelError(
                "expected %d separators, got %d" % (n - 1, len(seps)))
        top = self.d + 1
        for s in seps:
            if not 1 <= s <= top:
                raise InvalidLabelError("separator %r outside 1..%d" % (s, top))
        # ties (separator d+1) must list their letters in increasing order
        for k, s in enumerate(seps):
            if s == top and sigma[k] > sigma[k + 1]:
                raise InvalidLabelError(
                    "letters %d,%d tied by separator %d must increase"
                    % (sigma[k], sigma[k + 1], top))
        object.__setattr__(self, "gov", _governing_row(sigma, seps, n))

    @property
    def n(self) -> int:
        return len(self.sigma)

    @property
    def is_cell(self) -> bool:
        """True when every separator is at most d (no coincident columns)."""
        return all(s <= self.d for s in self.seps)

    def to_string(self) -> str:
        parts = []
        for k in range(self.n - 1):
            parts.append("%d<%d" % (self.sigma[k], self.seps[k]))
        parts.append(str(self.sigma[-1]))
        return " ".join(parts)

    def to_bar_string(self) -> str:
        """Planar shorthand: bar = separator 1, absence = separator 2."""
        if self.d != 2 or not self.is_cell:
            raise InvalidLabelError("bar shorthand needs d = 2 and separators <= 2")
        if self.n > 9:
            raise InvalidLabelError("bar shorthand is single-digit only")
        out = []
        for k in range(self.n - 1):
            out.append(str(self.sigma[k]))
            if self.seps[k] == 1:
                out.append("|")
        out.append(str(self.sigma[-1]))
        return "".join(out)

    @classmethod
    def from_string(cls, text: str, d: int) -> "CellLabel":
        text = text.strip()
        if not text:
            raise InvalidLabelError("empty label string")
        if "<" not in text:
            return cls.from_bar_string(text, d=d)
        parts = text.split()
        sigma, seps = [], []
        for k, part in enumerate(parts):
            if k == len(parts) - 1:
                if not part.isdigit():
                    raise InvalidLabelError("bad final letter %r" % part)
                sigma.append(int(part))
            else:
                m = re.fullmatch(r"(\d+)<(\d+)", part)
                if m is None:
                    raise InvalidLabelError("bad chunk %r" % part)
                sigma.append(int(m.group(1)))
                seps.append(int(m.group(2)))
        return cls(tuple(sigma), tuple(seps), d)

    @classmethod
    def from_bar_string(cls, text: str, d: int = 2) -> "CellLabel":
        if d != 2:
            raise InvalidLabelError("bar shorthand needs d = 2")
        text = text.strip()
        if not re.fullmatch(r"\d(\|?\d)*", text):
            raise InvalidLabelError("bad bar string %r" % text)
        # separators default to 2; a bar between two digits lowers it to 1
        sigma, seps = [], []
        pending_bar = False
        for ch in text:
            if ch == "|":
                pending_bar = True
            else:
                if sigma:
                    seps.append(1 if pending_bar else 2)
                pending_bar = False
                sigma.append(int(ch))
        return cls(tuple(sigma), tuple(seps), 2)

    def __str__(self) -> str:
        return self.to_string()


def stratum_dimension(label: CellLabel) -> int:
    """Dimension of the stratum named by `label` inside the ambient space."""
    return (label.d + 1) * (label.n - 1) - sum(label.seps)


def cell_dimension(label: CellLabel) -> int:
    """Dimension of the compact-complex cell named by `label`."""
    if not label.is_cell:
        raise InvalidLabelError("separator %d exceeds d = %d: not a cell label"
                                % (max(label.seps), label.d))
    return sum(label.seps) - (label.n - 1)


def separator_min(label: CellLabel, a: int, b: int) -> tuple[str, int]:
    """Relative order of letters a, b and the smallest separator between them.

    Returns ("before", j) when a precedes b in sigma and ("after", j)
    otherwise; j is the minimum separator value strictly between the two
    positions, i.e. the first coordinate in which the corresponding columns
    differ (d+1 when they coincide).
    """
    n = label.n
    if a == b or not (1 <= a <= n) or not (1 <= b <= n):
        raise InvalidLabelError("need two distinct letters in 1..%d" % n)
    j = label.gov[(a - 1) * n + (b - 1)]
    if j:
        return ("before", j)
    return ("after", label.gov[(b - 1) * n + (a - 1)])


def group_action(pi: Sequence[int], label: CellLabel) -> CellLabel:
    """Relabel the letters of a cell label by the permutation pi (1..n -> 1..n)."""
    n = label.n
    pi = tuple(int(v) for v in pi)
    if sorted(pi) != list(range(1, n + 1)):
        raise InvalidLabelError("pi %r is not a permutation of 1..%d" % (pi, n))
    if not label.is_cell:
        # relabeling can break the increasing-run normalization of tied letters
        raise InvalidLabelError("group action is defined on cell labels only")
    return CellLabel(tuple(pi[s - 1] for s in label.sigma), label.seps, label.d)


@dataclass(frozen=True)
class Configuration:
    """n labeled points in R^d, stored as n coordinate columns of length d.

    Entries may be floats or Fractions.  Distinctness of the columns is not
    enforced here: labeled-configuration-space membership requires it, but the
    labeling map below accepts coincident points and reports them with
    separator d+1.
    """

    points: tuple[tuple, ...]

    def __post_init__(self):
        pts = tuple(tuple(col) for col in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("empty configuration")
        d = len(pts[0])
        if d < 1 or any(len(col) != d for col in pts):
            raise ValueError("columns must share a positive length")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return len(self.points[0])

    @property
    def has_distinct_points(self) -> bool:
        return len(set(self.points)) == self.n


def vertex_coordinates(label: CellLabel) -> Configuration:
    """A rational configuration lying in the stratum/cell named by `label`.

    Column sigma[1] sits at the origin and each later column adds the unit
    vector e_{seps[k]} (the zero vector for separator d+1); the whole family is
    then translated so the columns sum to zero.  Exact arithmetic throughout.
    """
    d, n = label.d, label.n
    cols = [None] * n
    cur = [Fraction(0)] * d
    cols[label.sigma[0] - 1] = tuple(cur)
    for k in range(1, n):
        s = label.seps[k - 1]
        cur = list(cur)
        if s <= d:
            cur[s - 1] += 1
        cols[label.sigma[k] - 1] = tuple(cur)
    mean = [sum(col[i] for col in cols) / n for i in range(d)]
    centered = tuple(tuple(col[i] - mean[i] for i in range(d)) for col in cols)
    return Configuration(centered)


def fox_neuwirth_label(config, d: int | None = None, tie_eps: float = 0.0) -> CellLabel:
    """Label of the stratum containing a configuration.

    Columns are compared lexicographically; `sigma` is the resulting order
    (ties broken by point index, which matches the increasing-run
    normalization) and each separator is the first coordinate where
    consecutive columns differ, or d+1 when they coincide.

    Comparisons are exact by default.  A positive `tie_eps` treats coordinate
    gaps of at most tie_eps as equal; that variant is a heuristic for noisy
    float data and is not used by any correctness check here (it can be
    order-dependent when near-ties chain).
    """
    if isinstance(config, Configuration):
        cols = config.points
    else:
        cols = tuple(tuple(c) for c in config)
        config = Configuration(cols)
    n, dd = config.n, config.d
    if d is not None and d != dd:
        raise InvalidLabelError("configuration has d = %d, expected %d" % (dd, d))
    d = dd

    if tie_eps < 0:
        raise ValueError("tie_eps must be nonnegative")

    def first_diff(u, v):
        for i in range(d):
            gap = u[i] - v[i]
            if gap > tie_eps or -gap > tie_eps:
                return i + 1
        return d + 1

    def less(u, v):
        i = first_diff(u, v)
        if i == d + 1:
            return False
        return u[i - 1] < v[i - 1]

    order = list(range(n))
    # insertion sort with the (possibly eps-relaxed) comparator; stable, so
    # tied points keep increasing index order
    for k in range(1, n):
        j = k
        while j > 0 and less(cols[order[j]], cols[order[j - 1]]):
            order[j - 1], order[j] = order[j], order[j - 1]
            j -= 1
    sigma = tuple(i + 1 for i in order)
    seps = tuple(first_diff(cols[order[k]], cols[order[k + 1]]) for k in range(n - 1))
    return CellLabel(sigma, seps, d)
