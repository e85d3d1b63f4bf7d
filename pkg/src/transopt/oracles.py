"""Brute-force reference implementations.

Deliberately naive and independent of the solvers they check: they share
only instance types and the geometry predicates.  Every oracle enforces a
hard size limit instead of silently truncating.
"""

from __future__ import annotations

import heapq
import itertools
import math

from .errors import PlanInfeasibleError, SizeLimitError
from .hampath import _CurvePrefix, euclidean_dist

INF = math.inf

_REL_TOL = 1e-9


def ovrp_brute(inst):
    """Optimal total route length by uniform-cost search.

    States are (visited set, current vertex, vehicles started); moving along
    an edge costs its length and starting a fresh vehicle teleports to the
    root for free while incrementing the count.
    """
    tree, p = inst.tree, inst.p
    n = tree.n
    if n > 12 or p > 4:
        raise SizeLimitError(f"ovrp_brute limited to n <= 12, p <= 4 (got {n}, {p})")
    root = tree.root
    full = (1 << n) - 1
    adj = [[] for _ in range(n + 1)]
    for v in range(1, n + 1):
        if v != root:
            u = tree.parent[v]
            adj[u].append((v, tree.edge_len[v]))
            adj[v].append((u, tree.edge_len[v]))

    start = (1 << (root - 1), root, 1)
    dist = {start: 0.0}
    heap = [(0.0, start)]
    while heap:
        d, (mask, u, used) = heapq.heappop(heap)
        if d > dist.get((mask, u, used), INF):
            continue
        if mask == full:
            return d
        for (v, w) in adj[u]:
            key = (mask | (1 << (v - 1)), v, used)
            nd = d + w
            if nd < dist.get(key, INF):
                dist[key] = nd
                heapq.heappush(heap, (nd, key))
        if used < p and u != root:
            key = (mask, root, used + 1)
            if d < dist.get(key, INF):
                dist[key] = d
                heapq.heappush(heap, (d, key))
    raise AssertionError("search exhausted without covering all vertices")


def fuel_brute(inst):
    """Minimum depot fuel by enumerating every DFS order.

    For each vertex the recursion returns the set of achievable minimum tank
    levels over its service (relative to the arrival level, before the
    vertex's own gas is collected); the root's best value gives the answer.
    """
    tree, gas = inst.tree, inst.gas
    combos = 1
    for u in range(1, tree.n + 1):
        combos *= math.factorial(len(tree.children[u]))
        if combos > 10 ** 6:
            raise SizeLimitError("fuel_brute limited to 1e6 DFS orders")

    # subtree gas and length sums give each child's net fuel profit
    gsum = [0.0] * (tree.n + 1)
    lsum = [0.0] * (tree.n + 1)
    order = []
    stack = [tree.root]
    while stack:
        u = stack.pop()
        order.append(u)
        stack.extend(tree.children[u])
    for u in reversed(order):
        gsum[u] = gas[u]
        for c in tree.children[u]:
            gsum[u] += gsum[c]
            lsum[u] += lsum[c] + tree.edge_len[c]

    def lows(u):
        children = tree.children[u]
        child_lows = [sorted(lows(c)) for c in children]
        out = set()
        for perm in itertools.permutations(range(len(children))):
            for combo in itertools.product(*(child_lows[t] for t in perm)):
                cur = gas[u]
                low = 0.0
                for t, clow in zip(perm, combo):
                    c = children[t]
                    low = min(low, cur - tree.edge_len[c] + clow)
                    cur += gsum[c] - 2.0 * (lsum[c] + tree.edge_len[c])
                    low = min(low, cur)
                out.add(low)
        return out

    return -max(lows(tree.root))


def jeep_simulate_plan(d, params, plans, terminal=0.0):
    """Forward validation of a per-segment trip plan.

    Replays the plan segment by segment, enforcing nonnegative trip counts,
    tank capacity on every departure, and that each segment delivers what
    the next one draws.  Returns the gallons drawn at point 0.
    """
    pts = d.points
    if len(plans) != len(pts) - 1:
        raise ValueError(f"expected {len(pts) - 1} segment plans, got {len(plans)}")
    m, g = params.m, params.g
    need = terminal
    for i in range(len(plans) - 1, -1, -1):
        plan = plans[i]
        c = pts[i + 1] - pts[i]
        gc = g * c
        if plan.rt < 0 or plan.q < 0:
            raise PlanInfeasibleError(i, "negative trip count or delivery")
        if plan.q + gc > m * (1 + _REL_TOL):
            raise PlanInfeasibleError(
                i, f"final trip loads {plan.q + gc} gallons into a {m}-gallon tank"
            )
        if plan.rt > 0 and m - 2.0 * gc < 0:
            raise PlanInfeasibleError(i, "round trip cannot return on this segment")
        delivered = plan.rt * (m - 2.0 * gc) + plan.q
        if delivered + _REL_TOL * max(1.0, need) < need:
            raise PlanInfeasibleError(
                i, f"delivers {delivered} gallons but {need} are drawn downstream"
            )
        need = plan.rt * m + plan.q + gc
    return need


def ham_brute(poly_or_dist, start=None, n=None):
    """Shortest Hamiltonian path by permutation enumeration.

    Accepts a polygon (visibility-gated Euclidean distances) or an explicit
    distance matrix.  Returns (length, path); (inf, []) when every
    permutation has an invisible consecutive pair.
    """
    if hasattr(poly_or_dist, "vertices"):
        n = poly_or_dist.n
        dist_fn = euclidean_dist(poly_or_dist)
        dist = [[dist_fn(i, j) for j in range(n)] for i in range(n)]
    else:
        dist = poly_or_dist
        n = len(dist) if n is None else n
    if n > 9:
        raise SizeLimitError(f"ham_brute limited to n <= 9, got {n}")

    best, best_path = INF, []
    starts = range(n) if start is None else (start,)
    for s in starts:
        rest = [v for v in range(n) if v != s]
        for perm in itertools.permutations(rest):
            total = 0.0
            prev = s
            for v in perm:
                step = dist[prev][v]
                if step == INF:
                    total = INF
                    break
                total += step
                prev = v
            if total < best:
                best, best_path = total, [s] + list(perm)
    return best, best_path


def curve_zigzag_brute(inst, objective="weighted"):
    """Curve-restricted Hamiltonian path by exhaustive arc extension.

    The visited set on a closed curve is always a contiguous arc, so each
    step extends it left or right; every step's travel distance is the
    shorter of the two arcs between the current and the new vertex, matching
    the dynamic program's convention.  Objectives: ``weighted`` minimizes
    the sum of w_i times first-arrival distance, ``length`` the total
    distance traveled.  Returns (cost, visit order).
    """
    if objective not in ("weighted", "length"):
        raise ValueError(f"unknown objective {objective!r}")
    n = inst.n
    if n > 20:
        raise SizeLimitError(f"curve_zigzag_brute limited to n <= 20, got {n}")
    pre = _CurvePrefix(inst)
    w = inst.weights
    best = [INF, []]

    def rec(left, cnt, at_left, dist_so_far, cost, path):
        if cnt == n:
            final = cost if objective == "weighted" else dist_so_far
            if final < best[0]:
                best[0], best[1] = final, list(path)
            return
        pos = left if at_left else (left + cnt - 1) % n
        for (v, new_left, new_at_left) in (
            ((left - 1) % n, (left - 1) % n, True),
            ((left + cnt) % n, left, False),
        ):
            step = pre.dist(pos, v)
            t = dist_so_far + step
            path.append(v)
            rec(new_left, cnt + 1, new_at_left, t, cost + w[v] * t, path)
            path.pop()

    starts = range(n) if inst.start is None else (inst.start,)
    for s in starts:
        rec(s, 1, True, 0.0, 0.0, [s])
    return best[0], best[1]
