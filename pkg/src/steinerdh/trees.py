"""Labeled trees: parsing, seeded random generation, pairwise and Steiner distance.

Vertices are labeled 1..n.  Random trees are decoded from uniform Prüfer
sequences drawn from numpy's Philox counter-based generator (Philox4x64,
keyed by the 64-bit seed), so the same (n, seed) pair yields the same tree
on every platform.

Steiner distance of a vertex multiset uses the virtual-tree identity: sort
the distinct vertices v1..vr by Euler-tour first-visit order and return
(sum of cyclic consecutive pairwise distances) / 2.  A bitmask brute-force
oracle over connected vertex subsets is provided for n <= 12.
"""

from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptySet, MalformedInput, NotATree, TooLarge

BRUTE_FORCE_MAX_N = 12


class Tree:
    """Immutable labeled tree on vertices 1..n with O(1) LCA queries."""

    __slots__ = (
        "n", "edges", "adjacency", "degrees",
        "_depth", "_first_visit", "_sparse",
        "_connected_masks_cache",
    )

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise NotATree("a tree needs at least one vertex")
        edge_list = []
        seen = set()
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise NotATree(f"edge ({u},{v}) leaves the label range 1..{n}")
            if u == v:
                raise NotATree(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise NotATree(f"duplicate edge {key}")
            seen.add(key)
            edge_list.append(key)
        if len(edge_list) != n - 1:
            raise NotATree(f"expected {n - 1} edges, got {len(edge_list)}")

        adjacency: list[list[int]] = [[] for _ in range(n + 1)]
        for u, v in edge_list:
            adjacency[u].append(v)
            adjacency[v].append(u)
        for lst in adjacency:
            lst.sort()

        depth = [-1] * (n + 1)
        depth[1] = 0
        q = deque([1])
        reached = 1
        while q:
            x = q.popleft()
            for y in adjacency[x]:
                if depth[y] < 0:
                    depth[y] = depth[x] + 1
                    reached += 1
                    q.append(y)
        if reached != n:
            raise NotATree("edge list does not connect all vertices")

        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(sorted(edge_list)))
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in adjacency))
        object.__setattr__(self, "degrees",
                           (0,) + tuple(len(adjacency[v]) for v in range(1, n + 1)))
        object.__setattr__(self, "_depth", tuple(depth))
        self._build_lca()
        object.__setattr__(self, "_connected_masks_cache", None)

    def __setattr__(self, *_):  # pragma: no cover - immutability guard
        raise AttributeError("Tree is immutable")

    # -- LCA machinery -------------------------------------------------------

    def _build_lca(self) -> None:
        n = self.n
        depth = self._depth
        euler: list[int] = []
        first_visit = [0] * (n + 1)
        # iterative DFS from 1, re-appending the parent after each child
        stack: list[tuple[int, int, int]] = [(1, 0, 0)]  # (vertex, parent, child index)
        while stack:
            v, parent, idx = stack.pop()
            if idx == 0:
                first_visit[v] = len(euler)
                euler.append(v)
            nxt = None
            for j in range(idx, len(self.adjacency[v])):
                w = self.adjacency[v][j]
                if w != parent:
                    nxt = (w, j)
                    break
            if nxt is not None:
                w, j = nxt
                stack.append((v, parent, j + 1))
                stack.append((w, v, 0))
                continue
            if stack:
                euler.append(stack[-1][0])

        # sparse table of (depth, vertex) minima over the Euler walk
        base = [(depth[v], v) for v in euler]
        table = [base]
        size = len(base)
        j = 1
        while (1 << j) <= size:
            prev = table[-1]
            half = 1 << (j - 1)
            table.append([min(prev[i], prev[i + half])
                          for i in range(size - (1 << j) + 1)])
            j += 1
        object.__setattr__(self, "_first_visit", tuple(first_visit))
        object.__setattr__(self, "_sparse", tuple(tuple(level) for level in table))

    def lca(self, u: int, v: int) -> int:
        self._check_label(u)
        self._check_label(v)
        lo, hi = sorted((self._first_visit[u], self._first_visit[v]))
        span = hi - lo + 1
        j = span.bit_length() - 1
        level = self._sparse[j]
        return min(level[lo], level[hi - (1 << j) + 1])[1]

    def _check_label(self, v: int) -> None:
        if not (1 <= v <= self.n):
            raise ValueError(f"vertex {v} outside 1..{self.n}")

    # -- distances ------------------------------------------------------------

    def distance(self, u: int, v: int) -> int:
        a = self.lca(u, v)
        return self._depth[u] + self._depth[v] - 2 * self._depth[a]

    def euler_rank(self, v: int) -> int:
        self._check_label(v)
        return self._first_visit[v]

    def steiner(self, vertices: Iterable[int]) -> int:
        distinct = sorted(set(vertices), key=lambda v: self._first_visit[v])
        if not distinct:
            raise EmptySet("Steiner distance of the empty set is undefined")
        for v in distinct:
            self._check_label(v)
        r = len(distinct)
        if r == 1:
            return 0
        total = 0
        for i in range(r):
            total += self.distance(distinct[i], distinct[(i + 1) % r])
        return total // 2

    # -- brute-force support ----------------------------------------------------

    def connected_masks(self) -> list[int]:
        """All vertex bitmasks (bit v-1 for vertex v) inducing a connected subgraph,
        sorted by popcount.  Only for n <= BRUTE_FORCE_MAX_N."""
        if self.n > BRUTE_FORCE_MAX_N:
            raise TooLarge(f"connected-subset enumeration capped at n <= {BRUTE_FORCE_MAX_N}")
        cached = self._connected_masks_cache
        if cached is not None:
            return cached
        n = self.n
        out = []
        for mask in range(1, 1 << n):
            start = (mask & -mask).bit_length() - 1
            seen = 1 << start
            stack = [start + 1]
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    bit = 1 << (y - 1)
                    if mask & bit and not seen & bit:
                        seen |= bit
                        stack.append(y)
            if seen == mask:
                out.append(mask)
        out.sort(key=lambda m: m.bit_count())
        object.__setattr__(self, "_connected_masks_cache", out)
        return out

    def __repr__(self):
        return f"Tree(n={self.n}, edges={list(self.edges)!r})"

    def __eq__(self, other):
        if isinstance(other, Tree):
            return self.n == other.n and self.edges == other.edges
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.edges))


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------

def path_tree(n: int) -> Tree:
    return Tree(n, [(i, i + 1) for i in range(1, n)])


def star_tree(n: int, center: int = 1) -> Tree:
    return Tree(n, [(center, v) for v in range(1, n + 1) if v != center])


def parse_tree(text: str) -> Tree:
    """Parse the edge-list document: first line n, then n-1 lines "u v"."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise MalformedInput("empty document")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise MalformedInput(f"first line must be the vertex count: {lines[0]!r}") from exc
    if n < 1:
        raise NotATree("vertex count must be >= 1")
    if len(lines) - 1 != n - 1:
        raise MalformedInput(f"expected {n - 1} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise MalformedInput(f"edge line must hold two labels: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise MalformedInput(f"non-integer label in {ln!r}") from exc
        edges.append((u, v))
    return Tree(n, edges)


def format_tree(t: Tree) -> str:
    lines = [str(t.n)]
    lines.extend(f"{u} {v}" for u, v in t.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Prüfer sequences
# ---------------------------------------------------------------------------

def prufer_decode(n: int, seq: Sequence[int]) -> Tree:
    """Decode a Prüfer sequence of length n-2 over labels 1..n."""
    if n < 1:
        raise NotATree("a tree needs at least one vertex")
    if len(seq) != max(n - 2, 0):
        raise MalformedInput(f"Prüfer sequence for n={n} must have length {max(n - 2, 0)}")
    if n == 1:
        return Tree(1, [])
    if n == 2:
        return Tree(2, [(1, 2)])
    for x in seq:
        if not (1 <= x <= n):
            raise MalformedInput(f"Prüfer entry {x} outside 1..{n}")
    degree = [1] * (n + 1)
    for x in seq:
        degree[x] += 1
    ptr = 1
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    edges = []
    for x in seq:
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n))
    return Tree(n, edges)


def prufer_encode(t: Tree) -> list[int]:
    """Prüfer sequence of a tree: repeatedly record the neighbor of the smallest leaf."""
    n = t.n
    if n <= 2:
        return []
    alive = [set(t.adjacency[v]) for v in range(n + 1)]
    heap = [v for v in range(1, n + 1) if len(alive[v]) == 1]
    heapq.heapify(heap)
    seq = []
    for _ in range(n - 2):
        v = heapq.heappop(heap)
        u = next(iter(alive[v]))
        seq.append(u)
        alive[u].discard(v)
        alive[v].clear()
        if len(alive[u]) == 1:
            heapq.heappush(heap, u)
    return seq


def random_tree(n: int, seed: int) -> Tree:
    """Uniform random labeled tree from a seeded Philox stream."""
    if n < 1:
        raise NotATree("a tree needs at least one vertex")
    if n <= 2:
        return prufer_decode(n, [])
    gen = np.random.Generator(np.random.Philox(key=np.uint64(seed % (1 << 64))))
    seq = [int(x) for x in gen.integers(1, n + 1, size=n - 2)]
    return prufer_decode(n, seq)


# ---------------------------------------------------------------------------
# distances (module-level surface)
# ---------------------------------------------------------------------------

def pairwise_distance(t: Tree, u: int, v: int) -> int:
    return t.distance(u, v)


def steiner_distance(t: Tree, vertices: Iterable[int]) -> int:
    return t.steiner(vertices)


def steiner_distance_bruteforce(t: Tree, vertices: Iterable[int]) -> int:
    """Minimum |W|-1 over connected vertex sets W containing the query set."""
    if t.n > BRUTE_FORCE_MAX_N:
        raise TooLarge(f"brute force capped at n <= {BRUTE_FORCE_MAX_N}")
    distinct = set(vertices)
    if not distinct:
        raise EmptySet("Steiner distance of the empty set is undefined")
    required = 0
    for v in distinct:
        t._check_label(v)
        required |= 1 << (v - 1)
    for mask in t.connected_masks():
        if mask & required == required:
            return mask.bit_count() - 1
    raise AssertionError("unreachable: the full vertex set is connected")


# ---------------------------------------------------------------------------
# isomorphism classes
# ---------------------------------------------------------------------------

def canonical_key(t: Tree) -> str:
    """AHU canonical string of the unlabeled tree underlying t.

    Rooted at the tree center; for bicentral trees the key is the minimum
    over the two center rootings.
    """
    n = t.n
    if n == 1:
        return "()"
    degree = list(t.degrees)
    alive = [set(t.adjacency[v]) for v in range(n + 1)]
    layer = [v for v in range(1, n + 1) if degree[v] == 1]
    remaining = n
    while remaining > 2:
        nxt = []
        for v in layer:
            for u in alive[v]:
                alive[u].discard(v)
                degree[u] -= 1
                if degree[u] == 1:
                    nxt.append(u)
            alive[v].clear()
        remaining -= len(layer)
        layer = nxt
    centers = sorted(layer)

    def rooted_key(root: int) -> str:
        canon = [""] * (n + 1)
        stack = [(root, 0, False)]
        while stack:
            v, parent, done = stack.pop()
            if done:
                kids = sorted(canon[w] for w in t.adjacency[v] if w != parent)
                canon[v] = "(" + "".join(kids) + ")"
            else:
                stack.append((v, parent, True))
                for w in t.adjacency[v]:
                    if w != parent:
                        stack.append((w, v, False))
        return canon[root]

    return min(rooted_key(c) for c in centers)


def enumerate_trees(n: int) -> list[Tree]:
    """One representative labeled tree per isomorphism class on n vertices.

    Enumerates all n^(n-2) Prüfer sequences and deduplicates by canonical key;
    practical for n <= 7.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n <= 2:
        return [prufer_decode(n, [])]
    found: dict[str, Tree] = {}
    seq = [1] * (n - 2)
    while True:
        t = prufer_decode(n, seq)
        key = canonical_key(t)
        if key not in found:
            found[key] = t
        # odometer increment
        i = len(seq) - 1
        while i >= 0 and seq[i] == n:
            seq[i] = 1
            i -= 1
        if i < 0:
            break
        seq[i] += 1
    return list(found.values())
