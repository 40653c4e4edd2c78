"""Lattice-path combinatorics for the type-A higher Auslander model.

A monotone lattice path in the (d x n)-rectangle walks from (0, 0) to (d, n)
using unit steps H = (1, 0) and V = (0, 1).  Labelling the steps 1..d+n and
reading off the labels of the horizontal steps identifies L_{d,n} with the
set os_{n+1}^d of strictly increasing d-tuples in [1, n+d], and transports
the interleaving order

    x <= y  iff  x_1 <= y_1 < x_2 <= y_2 < ... < x_d <= y_d

to a geometric relation on paths (below-ness plus a no-wide-rectangle
condition on the skew shape between them).

On top of the bijection this module implements rotation orbits, rational
Dyck paths (one per orbit when gcd(n, d) = 1), the slope-line anchor of a
path in the widened (d+1 x n)-rectangle together with its height h and
overshoot weight mu, the regions cut out by the bent slope curves, width-one
strips (windows) and the search for resolving windows that strictly decrease
the (n - h, mu) key.

All slope computations are exact: quantities like x - (d/n) y are held as
``fractions.Fraction`` so that membership in open bands such as 0 < v < 1 is
decided without rounding.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class OrderedSeq:
    """A strictly increasing d-tuple in [1, n+d-1], the vertex alphabet."""

    n: int
    d: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError(f"parameters must be positive, got n={self.n}, d={self.d}")
        if len(self.entries) != self.d:
            raise ValueError(f"expected {self.d} entries, got {len(self.entries)}")
        prev = 0
        for e in self.entries:
            if e <= prev:
                raise ValueError(f"entries not strictly increasing: {self.entries}")
            prev = e
        if self.entries[0] < 1 or self.entries[-1] > self.n + self.d - 1:
            raise ValueError(
                f"entries {self.entries} out of range [1, {self.n + self.d - 1}]"
            )


@dataclass(frozen=True, order=True)
class LatticePath:
    """A monotone path in the (d x n)-rectangle as a word over {H, V}."""

    d: int
    n: int
    steps: str

    def __post_init__(self):
        if self.d < 0 or self.n < 0:
            raise ValueError("negative rectangle dimensions")
        if len(self.steps) != self.d + self.n:
            raise ValueError(f"expected {self.d + self.n} steps, got {len(self.steps)!r}")
        if self.steps.count("H") != self.d or self.steps.count("V") != self.n:
            raise ValueError(f"step word {self.steps!r} does not fit a {self.d}x{self.n} grid")

    def points(self) -> tuple[tuple[int, int], ...]:
        """All d+n+1 lattice points visited, in walk order."""
        return _points(self)

    def column_heights(self) -> tuple[int, ...]:
        """Height at which the path crosses column i -> i+1, for i = 0..d-1."""
        return _column_heights(self)


@functools.lru_cache(maxsize=65536)
def _points(path: LatticePath) -> tuple[tuple[int, int], ...]:
    pts = [(0, 0)]
    x = y = 0
    for s in path.steps:
        if s == "H":
            x += 1
        else:
            y += 1
        pts.append((x, y))
    return tuple(pts)


@functools.lru_cache(maxsize=65536)
def _column_heights(path: LatticePath) -> tuple[int, ...]:
    heights = []
    y = 0
    for s in path.steps:
        if s == "H":
            heights.append(y)
        else:
            y += 1
    return tuple(heights)


@dataclass(frozen=True, order=True)
class GridPoint:
    x: int
    y: int


@dataclass(frozen=True)
class AnchorData:
    """Anchor point of a path plus its height h and overshoot weight mu."""

    anchor: GridPoint
    h: int
    mu: Fraction


def enumerate_os(n: int, d: int) -> list[OrderedSeq]:
    """All C(n+d-1, d) ordered sequences, in lexicographic order."""
    if n < 1 or d < 1:
        raise ValueError(f"parameters must be positive, got n={n}, d={d}")
    return [
        OrderedSeq(n, d, combo)
        for combo in itertools.combinations(range(1, n + d), d)
    ]


def preceq(x: OrderedSeq, y: OrderedSeq) -> bool:
    """Interleaving order: x_1 <= y_1 < x_2 <= y_2 < ... < x_d <= y_d."""
    if (x.n, x.d) != (y.n, y.d):
        raise ValueError(f"mismatched parameters: ({x.n},{x.d}) vs ({y.n},{y.d})")
    for i in range(x.d):
        if x.entries[i] > y.entries[i]:
            return False
        if i + 1 < x.d and y.entries[i] >= x.entries[i + 1]:
            return False
    return True


def coords(path: LatticePath) -> OrderedSeq:
    """Labels (1-indexed step positions) of the horizontal steps."""
    entries = tuple(i + 1 for i, s in enumerate(path.steps) if s == "H")
    return OrderedSeq(path.n + 1, path.d, entries)


def from_coords(x: OrderedSeq) -> LatticePath:
    """Inverse of :func:`coords`; x lives in os_{n+1}^d, the path in L_{d,n}."""
    positions = set(x.entries)
    steps = "".join("H" if i in positions else "V" for i in range(1, x.n + x.d))
    return LatticePath(x.d, x.n - 1, steps)


def path_from_entries(d: int, n: int, entries) -> LatticePath:
    """Path in L_{d,n} with horizontal steps at the given labels."""
    return from_coords(OrderedSeq(n + 1, d, tuple(entries)))


def below(p1: LatticePath, p2: LatticePath) -> bool:
    """True iff p1 lies weakly below p2 (columnwise)."""
    if (p1.d, p1.n) != (p2.d, p2.n):
        raise ValueError("paths live in different grids")
    return all(a <= b for a, b in zip(p1.column_heights(), p2.column_heights()))


def skew_cells(p1: LatticePath, p2: LatticePath) -> set[tuple[int, int]]:
    """Unit cells between p1 and p2 (p1 below p2), as bottom-left corners."""
    h1 = p1.column_heights()
    h2 = p2.column_heights()
    return {(i, j) for i in range(p1.d) for j in range(h1[i], h2[i])}


def relation_R(p1: LatticePath, p2: LatticePath) -> bool:
    """p1 below p2 with no 2-wide, 1-tall rectangle in the skew shape.

    Equivalent to ``preceq(coords(p1), coords(p2))``; the equivalence is an
    exhaustively tested invariant, not assumed here.
    """
    if (p1.d, p1.n) != (p2.d, p2.n):
        raise ValueError("paths live in different grids")
    h1 = p1.column_heights()
    h2 = p2.column_heights()
    if any(a > b for a, b in zip(h1, h2)):
        return False
    # cells (i, j) and (i+1, j) both in the skew shape iff h1[i+1] < h2[i],
    # using that column heights are nondecreasing along a monotone path
    return all(h1[i + 1] >= h2[i] for i in range(p1.d - 1))


def rotate(path: LatticePath) -> LatticePath:
    """Move the first step to the end."""
    return LatticePath(path.d, path.n, path.steps[1:] + path.steps[0])


def rotate_pow(path: LatticePath, k: int) -> LatticePath:
    """k-fold rotation; negative k rotates backwards."""
    size = path.d + path.n
    k %= size
    return LatticePath(path.d, path.n, path.steps[k:] + path.steps[:k])


def is_dyck(path: LatticePath) -> bool:
    """True iff the path stays weakly below the (0,0)-(d,n) diagonal."""
    return all(y * path.d <= x * path.n for x, y in path.points())


def enumerate_all(d: int, n: int) -> list[LatticePath]:
    """All C(d+n, d) paths of L_{d,n}, sorted by coordinates."""
    if d < 0 or n < 0:
        raise ValueError("negative rectangle dimensions")
    paths = []
    for combo in itertools.combinations(range(1, n + d + 1), d):
        positions = set(combo)
        steps = "".join("H" if i in positions else "V" for i in range(1, n + d + 1))
        paths.append(LatticePath(d, n, steps))
    return paths


def enumerate_dyck(d: int, n: int) -> list[LatticePath]:
    """All rational Dyck paths of L_{d,n}; requires gcd(n, d) = 1.

    There are C(d+n, d)/(d+n) of them, one per rotation orbit.
    """
    if d < 1 or n < 1:
        raise ValueError(f"parameters must be positive, got d={d}, n={n}")
    if math.gcd(n, d) != 1:
        raise ValueError(f"gcd(n, d) must be 1, got n={n}, d={d}")
    return [p for p in enumerate_all(d, n) if is_dyck(p)]


def dyck_orbit_representative(path: LatticePath) -> tuple[LatticePath, int]:
    """The unique Dyck path in the rotation orbit, and the k rotating it back.

    Returns (rep, k) with rotate_pow(rep, k) == path and 0 <= k < d+n.
    """
    if math.gcd(path.n, path.d) != 1:
        raise ValueError("orbit representatives need gcd(n, d) = 1")
    for k in range(path.d + path.n):
        candidate = rotate_pow(path, -k)
        if is_dyck(candidate):
            return candidate, k
    raise AssertionError(f"no Dyck path in the orbit of {path}")  # unreachable


def prepend_horizontal(path: LatticePath) -> LatticePath:
    """Widen the grid by one column, entering it with a first H step."""
    return LatticePath(path.d + 1, path.n, "H" + path.steps)


def append_horizontal(path: LatticePath) -> LatticePath:
    """Widen the grid by one column, leaving through a final H step."""
    return LatticePath(path.d + 1, path.n, path.steps + "H")


def slope_intercept(d: int, n: int, x: int, y: int) -> Fraction:
    """x-intercept of the slope-n/d line through (x, y), exactly."""
    return Fraction(x) - Fraction(d, n) * y


@functools.lru_cache(maxsize=65536)
def anchor_data(path: LatticePath) -> AnchorData:
    """Anchor, height and overshoot weight of a path in L_{d+1,n}.

    The anchor is the path point whose slope-n/d line lies furthest left,
    i.e. minimises x - (d/n) y.  When the minimum is shared by (0, 0) and
    (d, n) the latter wins.  mu sums w_F^2 over the V-to-H corner points F
    strictly after the anchor whose line falls in the open unit band right
    of the anchor line; there w_F = (n/d) (1 - (x_int(F) - x_int(anchor))).
    """
    d = path.d - 1
    n = path.n
    if d < 1:
        raise ValueError("anchor data needs a path in a widened grid L_{d+1,n} with d >= 1")
    if math.gcd(n, d) != 1:
        raise ValueError(f"anchor data needs gcd(n, d) = 1, got n={n}, d={d}")

    pts = path.points()
    xints = [slope_intercept(d, n, x, y) for x, y in pts]
    best = min(xints)
    anchor_idx = xints.index(best)
    if best == 0 and (d, n) in pts:
        anchor_idx = pts.index((d, n))
    anchor = GridPoint(*pts[anchor_idx])

    mu = Fraction(0)
    for k in range(anchor_idx + 1, len(pts) - 1):
        if path.steps[k - 1] == "V" and path.steps[k] == "H":
            t = xints[k] - best
            if not 0 < t:
                raise AssertionError(f"anchor minimality violated at {pts[k]} on {path}")
            if t < 1:
                w = Fraction(n, d) * (1 - t)
                mu += w * w
    return AnchorData(anchor, anchor.y, mu)


def _validate_region_point(point: GridPoint, d: int, n: int):
    if not (0 <= point.x <= d and 0 <= point.y <= n):
        raise ValueError(f"point {point} outside the bent-curve range for d={d}, n={n}")


def base_path(point: GridPoint, d: int, n: int) -> LatticePath:
    """The lowest path of the region at (x, y): H^x V^y H^{d+1-x} V^{n-y}."""
    _validate_region_point(point, d, n)
    x, y = point.x, point.y
    return LatticePath(d + 1, n, "H" * x + "V" * y + "H" * (d + 1 - x) + "V" * (n - y))


def lies_below_bent_curve(point: GridPoint, path: LatticePath) -> bool:
    """True iff every path point is weakly below the bent slope curve at D.

    The curve climbs with slope n/d into D = (x, y), runs horizontally to
    (x+1, y), then climbs with slope n/d again.  Points on the curve count
    as below.
    """
    d = path.d - 1
    n = path.n
    x0, y0 = point.x, point.y
    for px, py in path.points():
        if px <= x0:
            bound = Fraction(y0) + Fraction(n, d) * (px - x0)
        elif px >= x0 + 1:
            bound = Fraction(y0) + Fraction(n, d) * (px - x0 - 1)
        else:  # pragma: no cover - lattice x is never strictly inside (x0, x0+1)
            bound = Fraction(y0)
        if py > bound:
            return False
    return True


def region_contains(point: GridPoint, path: LatticePath) -> bool:
    """Membership of a path of L_{d+1,n} in the region at D = (x, y)."""
    d = path.d - 1
    _validate_region_point(point, d, path.n)
    return below(base_path(point, d, path.n), path) and lies_below_bent_curve(point, path)


def region_paths(point: GridPoint, d: int, n: int) -> list[LatticePath]:
    """All paths of L_{d+1,n} in the region at D, sorted by coordinates."""
    return [p for p in enumerate_all(d + 1, n) if region_contains(point, p)]


def delta_set(d: int, n: int, i: int) -> list[GridPoint]:
    """Lattice points at taxicab distance i weakly below the bent curve at (0,0).

    The terminal corner (d+1, n) is excluded; (0, 0) itself is a member.
    """
    if not 0 <= i <= n + d:
        raise ValueError(f"index i={i} out of range [0, {n + d}]")
    points = []
    for x in range(0, d + 2):
        y = i - x
        if not 0 <= y <= n or (x, y) == (d + 1, n):
            continue
        if (x, y) == (0, 0) or (x >= 1 and Fraction(y) <= Fraction(n, d) * (x - 1)):
            points.append(GridPoint(x, y))
    return points


def delta_prime_set(d: int, n: int, i: int) -> list[GridPoint]:
    """Lattice points weakly above the bent curve at (d, n), indexed dually.

    A point (x, y) belongs to slice i when (d+1-x) + (n-y) = i.  The origin
    is excluded; (d+1, n) is a member.
    """
    if not 0 <= i <= n + d:
        raise ValueError(f"index i={i} out of range [0, {n + d}]")
    points = []
    for x in range(0, d + 2):
        y = n - (i - (d + 1 - x))
        if not 0 <= y <= n or (x, y) == (0, 0):
            continue
        if (x, y) == (d + 1, n) or (x <= d and Fraction(y) >= Fraction(n, d) * x):
            points.append(GridPoint(x, y))
    return points


def delta_pair(point: GridPoint, d: int, n: int) -> GridPoint:
    """The slice-preserving partner D' = (d+1-x, n-y) of D."""
    return GridPoint(d + 1 - point.x, n - point.y)


def s_region(point: GridPoint, d: int, n: int) -> list[LatticePath]:
    """Paths of the region at (0, 0) passing through D, sorted by coordinates."""
    origin = GridPoint(0, 0)
    return [
        p
        for p in region_paths(origin, d, n)
        if (point.x, point.y) in p.points()
    ]


def strip_sequence(window, d: int, n: int) -> list[LatticePath]:
    """The d+2 paths of a width-one strip, in exact-sequence order.

    ``window`` is a strictly increasing list of d+2 labels in [1, n+d+1].
    Entry j of the result omits the (d+2-j)-th window entry, so the list
    runs from the top path (first d+1 labels) down to the bottom path (last
    d+1 labels); the middle terms mix a prefix of the top path's horizontal
    steps with a suffix of the bottom path's.
    """
    window = tuple(window)
    if len(window) != d + 2:
        raise ValueError(f"window must have {d + 2} entries, got {len(window)}")
    if any(b <= a for a, b in zip(window, window[1:])):
        raise ValueError(f"window {window} not strictly increasing")
    if window[0] < 1 or window[-1] > n + d + 1:
        raise ValueError(f"window {window} out of range [1, {n + d + 1}]")
    out = []
    for j in range(d + 2):
        omit = d + 1 - j  # 0-based index of the omitted entry
        entries = window[:omit] + window[omit + 1 :]
        out.append(path_from_entries(d + 1, n, entries))
    return out


def resolving_sequence(path: LatticePath) -> tuple[tuple[int, ...], int]:
    """A window resolving ``path`` by strictly smaller (n - h, mu) keys.

    Requires h >= 1 and mu > 0.  Searches insertable labels v in increasing
    order; the window is coords(path) with v inserted, and every strip term
    other than ``path`` itself must have larger h, or equal h and smaller
    mu.  Returns (window, position) with the 1-based position of v.
    """
    d = path.d - 1
    n = path.n
    data = anchor_data(path)
    if data.h < 1 or data.mu == 0:
        raise ValueError(
            f"precondition violated: need h >= 1 and mu > 0, got h={data.h}, mu={data.mu}"
        )
    own = set(coords(path).entries)
    for v in range(1, n + d + 2):
        if v in own:
            continue
        window = tuple(sorted(own | {v}))
        position = window.index(v) + 1
        if _window_resolves(window, position, d, n, data):
            return window, position
    raise RuntimeError(f"no resolving insertion found for {path}")


def _window_resolves(window, position, d, n, data: AnchorData) -> bool:
    for j, term in enumerate(strip_sequence(window, d, n)):
        if d + 2 - j == position:
            continue  # the path being resolved
        term_data = anchor_data(term)
        if term_data.h > data.h:
            continue
        if term_data.h == data.h and term_data.mu < data.mu:
            continue
        return False
    return True
