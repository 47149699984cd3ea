"""Quadratic synchronizability oracle via reachability in the pair graph.

An automaton is synchronizing exactly when every unordered pair of states can
be mapped to a single state by some word.  That holds for a pair iff it can
reach a diagonal pair in the graph whose vertices are unordered pairs and
whose edges follow the letter actions, so one multi-source BFS from the
diagonal over reversed edges answers all pairs at once in O(k n^2).
"""
from __future__ import annotations

__all__ = [
    "DEFAULT_ORACLE_CAP",
    "OracleCapExceeded",
    "mergeable_pairs",
    "synch_slow",
]

# n^2 pair slots get allocated up front; past this point the memory bill is
# the predictable failure mode, so refuse instead of thrashing.
DEFAULT_ORACLE_CAP = 20000


class OracleCapExceeded(RuntimeError):
    """Input too large for the quadratic oracle's n^2 memory budget."""

    def __init__(self, n: int, cap: int):
        super().__init__(
            f"n={n} exceeds the quadratic oracle cap {cap}; "
            f"raise the cap to allocate ~{n * (n + 1) // 2} pair slots"
        )
        self.n = n
        self.cap = cap


def _pair_reach(A, cap):
    """Reachability flags over triangular pair indices.

    Pair {p, q} with q <= p lives at index p(p+1)/2 + q; the returned bytearray
    holds 1 exactly for pairs some word merges.
    """
    n, k = A.n, A.k
    limit = DEFAULT_ORACLE_CAP if cap is None else cap
    if n > limit:
        raise OracleCapExceeded(n, limit)
    m = n * (n + 1) // 2
    tri = [p * (p + 1) // 2 for p in range(n)]

    # forward image of every pair under every letter
    imgs = []
    for a in range(k):
        col = A.column(a)
        img = [0] * m
        u = 0
        for p in range(n):
            cp = col[p]
            tp = tri[cp]
            for q in range(p + 1):
                cq = col[q]
                img[u] = tp + cq if cp >= cq else tri[cq] + cp
                u += 1
        imgs.append(img)

    # reversed edges in CSR layout
    offs = [0] * (m + 1)
    for img in imgs:
        for v in img:
            offs[v + 1] += 1
    for i in range(m):
        offs[i + 1] += offs[i]
    rev = [0] * (m * k)
    fill = offs[:m]
    for img in imgs:
        for u in range(m):
            v = img[u]
            rev[fill[v]] = u
            fill[v] += 1

    # BFS backwards from the diagonal
    reached = bytearray(m)
    queue = []
    for p in range(n):
        dpos = tri[p] + p
        reached[dpos] = 1
        queue.append(dpos)
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for i in range(offs[v], offs[v + 1]):
            u = rev[i]
            if not reached[u]:
                reached[u] = 1
                queue.append(u)
    return reached


def synch_slow(A, cap: int | None = None) -> bool:
    """True iff A is synchronizing.  O(k n^2) time and memory.

    Raises OracleCapExceeded when n is past ``cap`` (default
    DEFAULT_ORACLE_CAP).
    """
    return 0 not in _pair_reach(A, cap)


def mergeable_pairs(A, cap: int | None = None) -> set:
    """All unordered pairs (p, q) with p <= q that some word maps to one state.

    Diagonal pairs are included, so A is synchronizing iff the result has
    n(n+1)/2 elements.
    """
    reached = _pair_reach(A, cap)
    out = set()
    u = 0
    for p in range(A.n):
        for q in range(p + 1):
            if reached[u]:
                out.add((q, p))
            u += 1
    return out
