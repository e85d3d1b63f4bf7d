"""Shortest Hamiltonian paths among polygon vertices and on closed curves.

The polygon variant keeps every path segment inside the polygon and runs an
O(n^2) dynamic program over circular vertex intervals: the visited set is
always an interval and the current position one of its endpoints.  The curve
variants restrict travel to the curve itself, which makes the unweighted
problem a closed form and the weighted one the same interval DP with arc
distances and suffix weight multipliers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidPolygonError
from .geometry import (
    on_segment,
    orientation,
    point_in_polygon,
    segments_properly_intersect,
    signed_area,
)

INF = math.inf


@dataclass(frozen=True)
class SimplePolygon:
    """Counterclockwise simple polygon given by its vertex ring."""

    vertices: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "vertices", tuple((float(x), float(y)) for (x, y) in self.vertices)
        )
        _validate_simple(self.vertices)

    @property
    def n(self):
        return len(self.vertices)


def _validate_simple(v):
    n = len(v)
    if n < 3:
        raise InvalidPolygonError(f"need at least 3 vertices, got {n}")
    for i in range(n):
        for j in range(i + 1, n):
            if abs(v[i][0] - v[j][0]) <= 1e-9 and abs(v[i][1] - v[j][1]) <= 1e-9:
                raise InvalidPolygonError(f"vertices {i} and {j} coincide")
    if signed_area(v) <= 0:
        raise InvalidPolygonError("vertex ring is not counterclockwise")
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        # a zero-turn spike folds an edge back over its predecessor
        c = v[(i + 2) % n]
        if orientation(a, b, c) == 0:
            if (a[0] - b[0]) * (c[0] - b[0]) + (a[1] - b[1]) * (c[1] - b[1]) > 0:
                raise InvalidPolygonError(f"edges at vertex {(i + 1) % n} fold back")
        for j in range(n):
            if j in (i, (i - 1) % n, (i + 1) % n):
                continue
            c2, d2 = v[j], v[(j + 1) % n]
            if segments_properly_intersect(a, b, c2, d2):
                raise InvalidPolygonError(f"edges {i} and {j} cross")
            if j != (i + 2) % n and on_segment(v[j], a, b):
                raise InvalidPolygonError(f"vertex {j} lies on edge {i}")


def visibility_matrix(poly):
    """Boolean n x n matrix: segment (i, j) stays inside the closed polygon.

    Naive O(n^3): a pair fails on any proper crossing with a polygon edge;
    otherwise the connecting segment is cut at every polygon vertex it
    touches and each piece's midpoint must test inside.
    """
    v = poly.vertices
    n = poly.n
    vis = [[False] * n for _ in range(n)]
    for i in range(n):
        vis[i][i] = True
        vis[i][(i + 1) % n] = True
        vis[(i + 1) % n][i] = True
    for i in range(n):
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            vis[i][j] = vis[j][i] = _segment_inside(v, v[i], v[j])
    return vis


def _segment_inside(v, a, b):
    n = len(v)
    for e in range(n):
        if segments_properly_intersect(a, b, v[e], v[(e + 1) % n]):
            return False
    # only touch points remain; split there and test each piece's midpoint
    dx, dy = b[0] - a[0], b[1] - a[1]
    den = dx * dx + dy * dy
    cuts = [0.0, 1.0]
    for p in v:
        if on_segment(p, a, b):
            cuts.append(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / den)
    cuts.sort()
    for t0, t1 in zip(cuts, cuts[1:]):
        if t1 - t0 <= 1e-12:
            continue
        tm = 0.5 * (t0 + t1)
        if not point_in_polygon(v, (a[0] + tm * dx, a[1] + tm * dy)):
            return False
    return True


def euclidean_dist(poly, vis=None):
    """Distance oracle: Euclidean length when visible, infinity otherwise."""
    if vis is None:
        vis = visibility_matrix(poly)
    v = poly.vertices

    def dist(p, q):
        if not vis[p][q]:
            return INF
        return math.hypot(v[p][0] - v[q][0], v[p][1] - v[q][1])

    return dist


def _interval_dp(n, dist, diag, mult_a=None, mult_b=None):
    """Shared circular-interval DP engine.

    ``diag[i]`` seeds the one-vertex intervals (0 for allowed starts,
    infinity otherwise).  ``mult_a(i, j)`` scales the step cost of
    transitions into A(i, j) (a path over interval [i, j] ending at i);
    ``mult_b`` likewise for B (ending at j).  Returns (best, path).
    """
    A = [[INF] * n for _ in range(n)]
    B = [[INF] * n for _ in range(n)]
    cA = [[-1] * n for _ in range(n)]
    cB = [[-1] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = B[i][i] = diag[i]

    for size in range(2, n + 1):
        for i in range(n):
            j = (i + size - 1) % n
            ip = (i + 1) % n
            jm = (j - 1 + n) % n
            ma = 1.0 if mult_a is None else mult_a(i, j)
            base = A[ip][j]
            step = dist(ip, i)
            if base < INF and step < INF:
                cand = base + step * ma
                if cand < A[i][j]:
                    A[i][j] = cand
                    cA[i][j] = 0
            base = B[ip][j]
            step = dist(j, i)
            if base < INF and step < INF:
                cand = base + step * ma
                if cand < A[i][j]:
                    A[i][j] = cand
                    cA[i][j] = 1
            mb = 1.0 if mult_b is None else mult_b(i, j)
            base = B[i][jm]
            step = dist(jm, j)
            if base < INF and step < INF:
                cand = base + step * mb
                if cand < B[i][j]:
                    B[i][j] = cand
                    cB[i][j] = 0
            base = A[i][jm]
            step = dist(i, j)
            if base < INF and step < INF:
                cand = base + step * mb
                if cand < B[i][j]:
                    B[i][j] = cand
                    cB[i][j] = 1

    best, bt, bj = INF, "A", 0
    for j in range(n):
        i = (j + 1) % n
        if A[i][j] < best:
            best, bt, bj = A[i][j], "A", j
        if B[i][j] < best:
            best, bt, bj = B[i][j], "B", j
    if best == INF:
        return INF, []

    path_rev = []
    t, i, j = bt, (bj + 1) % n, bj
    for _ in range(n - 1):
        if t == "A":
            path_rev.append(i)
            if cA[i][j] == 1:
                t = "B"
            i = (i + 1) % n
        else:
            path_rev.append(j)
            if cB[i][j] == 1:
                t = "A"
            j = (j - 1 + n) % n
        # after shrinking, interval [i, j] remains with its own endpoint
    path_rev.append(i)  # i == j: the start vertex
    path_rev.reverse()
    return best, path_rev


def shortest_ham_path_fixed_start(poly, start, dist=None):
    """Shortest inside-the-polygon Hamiltonian path starting at ``start``.

    ``dist`` may override the default visibility-gated Euclidean oracle.
    Returns (length, path); (inf, []) when no path exists.
    """
    n = poly.n
    if not (0 <= start < n):
        raise ValueError(f"start {start} outside 0..{n - 1}")
    if dist is None:
        dist = euclidean_dist(poly)
    diag = [INF] * n
    diag[start] = 0.0
    return _interval_dp(n, dist, diag)


def shortest_ham_path_free_start(poly, dist=None):
    """Shortest inside-the-polygon Hamiltonian path, start unconstrained."""
    if dist is None:
        dist = euclidean_dist(poly)
    return _interval_dp(poly.n, dist, [0.0] * poly.n)


@dataclass(frozen=True)
class CurveInstance:
    """Vertices on a closed curve: ``gaps[i]`` separates vertex i from
    (i+1) mod n along the curve; weights drive the weighted objective."""

    gaps: tuple
    weights: tuple = None
    start: int = None

    def __post_init__(self):
        object.__setattr__(self, "gaps", tuple(float(g) for g in self.gaps))
        n = len(self.gaps)
        if n < 2:
            raise ValueError("need at least 2 vertices on the curve")
        if any(g <= 0 for g in self.gaps):
            raise ValueError("gaps must be positive")
        w = self.weights
        w = (0.0,) * n if w is None else tuple(float(x) for x in w)
        if len(w) != n:
            raise ValueError("weights must match the vertex count")
        if any(x < 0 for x in w):
            raise ValueError("weights must be nonnegative")
        object.__setattr__(self, "weights", w)
        if self.start is not None and not (0 <= self.start < n):
            raise ValueError(f"start {self.start} outside 0..{n - 1}")

    @property
    def n(self):
        return len(self.gaps)


def curve_ham_path(inst):
    """Closed form for the curve-restricted shortest Hamiltonian path.

    The path covers the whole curve except one skipped gap; with a free
    start, skipping the largest gap and starting at its edge is optimal.
    With a fixed start the stretch from the start to the nearer end of the
    covered arc is walked twice, so the skipped gap minimizes total minus
    gap plus that doubled approach (skipping a gap adjacent to the start is
    not always best)."""
    total = sum(inst.gaps)
    if inst.start is None:
        return total - max(inst.gaps)
    n, s = inst.n, inst.start
    pre = _CurvePrefix(inst)
    best = INF
    for j in range(n):
        extra = min(pre.dsum(s, j), pre.dsum((j + 1) % n, s))
        best = min(best, total - inst.gaps[j] + extra)
    return best


class _CurvePrefix:
    """O(1) circular arc sums and weight sums via prefix arrays."""

    def __init__(self, inst):
        n = inst.n
        self.n = n
        self.dp = [0.0] * (n + 1)
        self.wp = [0.0] * (n + 1)
        for i in range(n):
            self.dp[i + 1] = self.dp[i] + inst.gaps[i]
            self.wp[i + 1] = self.wp[i] + inst.weights[i]
        self.total = self.dp[n]

    def dsum(self, i, j):
        """Arc length from i forward to j (gaps i .. j-1 circularly)."""
        if i == j:
            return 0.0
        if i < j:
            return self.dp[j] - self.dp[i]
        return self.total - (self.dp[i] - self.dp[j])

    def dist(self, a, b):
        """Shorter of the two arcs between a and b."""
        fwd = self.dsum(a, b)
        return min(fwd, self.total - fwd)

    def wsum(self, a, b):
        """Weight of the circular interval [a, b]."""
        if a <= b:
            return self.wp[b + 1] - self.wp[a]
        return self.wp[self.n] - self.wp[a] + self.wp[b + 1]


def curve_weighted_ham_path(inst):
    """Minimize the weighted sum of first-arrival distances on the curve.

    Each DP step charges the step distance times the weight of every vertex
    not yet visited, which telescopes into sum of w_i * dt(i).  Returns
    (cost, visit order)."""
    n = inst.n
    pre = _CurvePrefix(inst)
    if inst.start is None:
        diag = [0.0] * n
    else:
        diag = [INF] * n
        diag[inst.start] = 0.0

    def mult_a(i, j):
        return pre.wsum((j + 1) % n, i)

    def mult_b(i, j):
        return pre.wsum(j, (i - 1 + n) % n)

    return _interval_dp(n, pre.dist, diag, mult_a, mult_b)
