"""Rooted weighted trees plus the small data structures the tree solvers share.

Vertices are 1-based externally (vertex 1 usually carries the depot) and the
arrays here are indexed accordingly: position 0 is unused.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import CycleError, DisconnectedTreeError, NegativeLengthError

NEG_INF = -math.inf


@dataclass(frozen=True)
class RootedTree:
    """Immutable weighted rooted tree.

    ``parent[u]`` is 0 for the root, ``edge_len[u]`` is the length of the
    edge (parent(u), u) and is 0.0 for the root.  ``children`` keeps the
    input order of each vertex's sons, which makes the DFS leaf order
    deterministic for a given edge list.
    """

    n: int
    root: int
    parent: tuple
    children: tuple
    edge_len: tuple
    droot: tuple
    depth: tuple

    def is_leaf(self, u):
        return not self.children[u]

    def total_edge_len(self):
        return sum(self.edge_len[1:])


def build_rooted_tree(n, edges, root=1):
    """Build a :class:`RootedTree` from an undirected edge list.

    Raises :class:`NegativeLengthError`, :class:`CycleError` or
    :class:`DisconnectedTreeError` on malformed input.
    """
    if not (1 <= root <= n):
        raise DisconnectedTreeError(f"root {root} outside 1..{n}")
    edges = list(edges)
    adj = [[] for _ in range(n + 1)]
    for (u, v, w) in edges:
        if w < 0:
            raise NegativeLengthError(f"edge ({u},{v}) has negative length {w}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise DisconnectedTreeError(f"edge ({u},{v}) references unknown vertex")
        if u == v:
            raise CycleError(f"self-loop at vertex {u}")
        adj[u].append((v, float(w)))
        adj[v].append((u, float(w)))

    parent = [0] * (n + 1)
    edge_len = [0.0] * (n + 1)
    droot = [0.0] * (n + 1)
    depth = [0] * (n + 1)
    children = [[] for _ in range(n + 1)]
    seen = [False] * (n + 1)
    seen[root] = True
    order = [root]
    stack = [root]
    while stack:
        u = stack.pop()
        for (v, w) in adj[u]:
            if seen[v]:
                if v != parent[u]:
                    raise CycleError(f"cycle through edge ({u},{v})")
                continue
            seen[v] = True
            parent[v] = u
            edge_len[v] = w
            droot[v] = droot[u] + w
            depth[v] = depth[u] + 1
            children[u].append(v)
            order.append(v)
            stack.append(v)
    # the stack pops children in reverse push order; restore input order
    for u in range(1, n + 1):
        children[u] = tuple(children[u])
    if len(order) != n:
        raise DisconnectedTreeError(
            f"only {len(order)} of {n} vertices reachable from root {root}"
        )
    if len(edges) != n - 1:
        # connected with more than n-1 edges: a parallel edge slipped past
        # the back-edge check (both copies look like the parent link)
        raise CycleError(f"{len(edges)} edges on {n} vertices")
    return RootedTree(
        n=n,
        root=root,
        parent=tuple(parent),
        children=tuple(children),
        edge_len=tuple(edge_len),
        droot=tuple(droot),
        depth=tuple(depth),
    )


def path_cost(tree, u, v):
    """Length of the tree path between an ancestor-descendant pair, O(1).

    The caller guarantees one endpoint is an ancestor of the other.
    """
    return abs(tree.droot[u] - tree.droot[v])


def leaves_dfs_order(tree):
    """Leaves in the order first reached by a DFS that respects child order."""
    leaves = []
    stack = [tree.root]
    while stack:
        u = stack.pop()
        ch = tree.children[u]
        if not ch:
            leaves.append(u)
        else:
            stack.extend(reversed(ch))
    return leaves


def consecutive_leaf_lcas(tree, leaves):
    """LCA of each consecutive leaf pair from the DFS order.

    Walks both vertices up to equal depth, then in lockstep; across all
    consecutive pairs every tree edge is climbed at most twice.
    """
    parent, depth = tree.parent, tree.depth
    out = []
    for a, b in zip(leaves, leaves[1:]):
        while depth[a] > depth[b]:
            a = parent[a]
        while depth[b] > depth[a]:
            b = parent[b]
        while a != b:
            a = parent[a]
            b = parent[b]
        out.append(a)
    return out


class MaxSegmentTree:
    """Prefix range-maximum tree over (value, leaf-index) pairs, 1-based.

    Supports disabling a leaf (it then never wins a query) and returns the
    leftmost leaf on ties, which downstream code relies on for deterministic
    tie-breaking.
    """

    __slots__ = ("size", "_base", "_val", "_idx")

    def __init__(self, values):
        self.size = len(values)
        base = 1
        while base < max(1, self.size):
            base *= 2
        self._base = base
        self._val = [NEG_INF] * (2 * base)
        self._idx = [0] * (2 * base)
        for i, v in enumerate(values):
            self._val[base + i] = v
            self._idx[base + i] = i + 1
        for q in range(base - 1, 0, -1):
            self._pull(q)

    def _pull(self, q):
        l, r = 2 * q, 2 * q + 1
        if self._val[l] >= self._val[r]:  # prefer the left (smaller) leaf on ties
            self._val[q] = self._val[l]
            self._idx[q] = self._idx[l]
        else:
            self._val[q] = self._val[r]
            self._idx[q] = self._idx[r]

    def range_max(self, prefix_end):
        """Max over enabled leaves 1..prefix_end as (value, leaf index).

        Returns ``(-inf, 0)`` when every leaf in the range is disabled.
        """
        if not (1 <= prefix_end <= self.size):
            raise IndexError(f"prefix_end {prefix_end} outside 1..{self.size}")
        # descend towards leaf prefix_end, grabbing whole left children; the
        # candidates then come out in left-to-right order, so a strict ">"
        # keeps the leftmost maximum
        best_v, best_i = NEG_INF, 0
        node = 1
        lo_, hi_ = 1, self._base
        while lo_ < hi_:
            mid = (lo_ + hi_) // 2
            if prefix_end > mid:
                if self._val[2 * node] > best_v:
                    best_v, best_i = self._val[2 * node], self._idx[2 * node]
                node = 2 * node + 1
                lo_ = mid + 1
            else:
                node = 2 * node
                hi_ = mid
        if self._val[node] > best_v:
            best_v, best_i = self._val[node], self._idx[node]
        return best_v, best_i

    def disable(self, leaf):
        """Set a leaf to minus infinity and restore the max invariant above it."""
        if not (1 <= leaf <= self.size):
            raise IndexError(f"leaf {leaf} outside 1..{self.size}")
        q = self._base + leaf - 1
        self._val[q] = NEG_INF
        q //= 2
        while q:
            self._pull(q)
            q //= 2
