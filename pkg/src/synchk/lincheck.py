"""Linear expected-time synchronizability check.

The checker never proves non-synchronizability beyond the sink-component test;
instead it runs a pipeline of structural guards on the functional graphs of a
two-letter automaton.  When every guard passes, the automaton is synchronizing.
When one fails, the outcome is a LinearFail carrying the reason, and the caller
is expected to fall back to the quadratic oracle.  Each guard is O(n) or
sublinear and is designed to fail only rarely on uniform random input, which
is what makes the combined pipeline linear in expectation.

Pipeline order for a two-letter automaton:

  1. sink components of the whole transition graph (a definitive negative
     when there are two or more),
  2. per-letter cluster counts against the 5 ln n bound,
  3. a strictly tallest height-1 branch in one letter's graph,
  4. a seed pair {cycle predecessor, branch root} that merges in one step,
     provided the branch reaches into the sink component,
  5. multiplication of the seed into two sets of stable pairs,
  6. per letter: connectivity of the graph induced on large clusters by the
     stable pairs, with a gcd congruence test on the non-tree edges,
  7. per letter ordering: cycle majority coverage, conditions on 2-cycles,
     and a residue shift test on pairs of small cycles.
"""
from __future__ import annotations

import math
from array import array
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Optional

from .pairgraph import synch_slow

__all__ = [
    "CERTIFIED_MAX_N",
    "Verdict",
    "FailReason",
    "CheckOutcome",
    "PairOutcome",
    "CheckReport",
    "SccAnalysis",
    "ClusterStructure",
    "TallestBranchInfo",
    "StablePairSet",
    "ClusterGraph",
    "analyze_scc",
    "build_cluster_structure",
    "cluster_count_ok",
    "find_tallest_branch",
    "stable_seed",
    "multiply_stable_pairs",
    "large_state_mask",
    "build_cluster_graph",
    "check_cluster_graph",
    "check_cycle_majority",
    "check_two_cycles",
    "cycle_closure_flags",
    "check_cycle_pairs",
    "shift_exists",
    "binary_linear_check",
    "linear_check",
    "check_synchronizing",
]

# The guard pipeline's positive verdict is a bundle of structural sufficient
# conditions; on very small automata those conditions lose their slack (every
# cluster counts as large, cycles are short) and rare degenerate instances
# can satisfy all of them without being synchronizing.  Up to this size a
# positive verdict is therefore confirmed on the pair graph before being
# reported; the extra work is a few thousand operations, far below where the
# pipeline's linear-time behaviour matters.
CERTIFIED_MAX_N = 32


class Verdict(Enum):
    SYNCHRONIZING = "synchronizing"
    NOT_SYNCHRONIZING = "not-synchronizing"
    LINEAR_FAIL = "linear-fail"


class FailReason(Enum):
    """Why the linear pipeline gave up (it never means "not synchronizing")."""

    TOO_MANY_CLUSTERS = "TooManyClusters"
    NO_UNIQUE_TALLEST_BRANCH = "NoUniqueTallestBranch"
    TALLEST_BRANCH_OUTSIDE_Q0 = "TallestBranchOutsideQ0"
    TOO_FEW_STABLE_PAIRS = "TooFewStablePairs"
    NO_LARGE_CLUSTERS = "NoLargeClusters"
    CLUSTER_GRAPH_DISCONNECTED = "ClusterGraphDisconnected"
    CONGRUENCES_ALL_HOLD = "CongruencesAllHold"
    CYCLE_MAJORITY_FAIL = "CycleMajorityFail"
    TWO_CYCLE_FAIL = "TwoCycleFail"
    CYCLE_PAIR_NOT_COVERED = "CyclePairNotCovered"
    SHIFT_EXISTS = "ShiftExists"


@dataclass(frozen=True)
class CheckOutcome:
    """Outcome of one two-letter pipeline run.

    LINEAR_FAIL carries exactly one reason plus the pipeline stage tag;
    the other verdicts carry neither.
    """

    verdict: Verdict
    fail_reason: Optional[FailReason] = None
    step: Optional[str] = None

    def __post_init__(self):
        if self.verdict is Verdict.LINEAR_FAIL and self.fail_reason is None:
            raise ValueError("LINEAR_FAIL requires a reason")
        if self.verdict is not Verdict.LINEAR_FAIL and self.fail_reason is not None:
            raise ValueError("only LINEAR_FAIL carries a reason")


@dataclass(frozen=True)
class PairOutcome:
    """Pipeline outcome for one letter pair of a wider alphabet."""

    letters: tuple
    outcome: CheckOutcome


@dataclass(frozen=True)
class CheckReport:
    """Result of the driver.  synchronizing=None means indeterminate, which
    only linear-only runs may return."""

    synchronizing: Optional[bool]
    method: str
    outcomes: tuple

    def fail_reasons(self) -> tuple:
        return tuple(
            po.outcome.fail_reason
            for po in self.outcomes
            if po.outcome.fail_reason is not None
        )


def _fail(reason: FailReason, step: str) -> CheckOutcome:
    return CheckOutcome(Verdict.LINEAR_FAIL, reason, step)


# ---------------------------------------------------------------------------
# step 1: sink components


@dataclass
class SccAnalysis:
    """Strongly connected components of the full transition graph.

    ``minimal`` lists the components without outgoing edges.  A synchronizing
    automaton has exactly one of those; every synchronizing word ends inside
    it.  ``q0``/``in_q0`` describe that component when it is unique.
    """

    comp: list
    n_components: int
    minimal: tuple
    q0: Optional[list]
    in_q0: Optional[bytearray]

    @property
    def multiple_minimal(self) -> bool:
        return len(self.minimal) >= 2

    def components(self) -> list:
        buckets = [[] for _ in range(self.n_components)]
        for q, c in enumerate(self.comp):
            buckets[c].append(q)
        return buckets


def analyze_scc(A) -> SccAnalysis:
    """Iterative Tarjan over all letters, plus sink-component bookkeeping.

    Working arrays are typed 32-bit buffers: the traversal order is data
    dependent, and compact storage keeps the random accesses cache-resident
    on large inputs.
    """
    n, k = A.n, A.k
    delta = array("i", A.delta)
    index = array("i", bytes(4 * n))  # 1-based discovery order, 0 = unvisited
    low = array("i", bytes(4 * n))
    on_stack = bytearray(n)
    comp = array("i", [-1]) * n
    comp_stack = []
    ncomp = 0
    counter = 1
    for root in range(n):
        if index[root]:
            continue
        index[root] = low[root] = counter
        counter += 1
        comp_stack.append(root)
        on_stack[root] = 1
        call_v = [root]
        call_i = [0]
        while call_v:
            v = call_v[-1]
            i = call_i[-1]
            if i < k:
                call_i[-1] = i + 1
                w = delta[v * k + i]
                if not index[w]:
                    index[w] = low[w] = counter
                    counter += 1
                    comp_stack.append(w)
                    on_stack[w] = 1
                    call_v.append(w)
                    call_i.append(0)
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                call_v.pop()
                call_i.pop()
                if low[v] == index[v]:
                    while True:
                        w = comp_stack.pop()
                        on_stack[w] = 0
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                if call_v and low[v] < low[call_v[-1]]:
                    low[call_v[-1]] = low[v]

    has_out = bytearray(ncomp)
    for q in range(n):
        cq = comp[q]
        if has_out[cq]:
            continue
        base = q * k
        for a in range(k):
            if comp[delta[base + a]] != cq:
                has_out[cq] = 1
                break
    comp_list = comp.tolist()
    minimal = tuple(c for c in range(ncomp) if not has_out[c])
    q0 = None
    in_q0 = None
    if len(minimal) == 1:
        c0 = minimal[0]
        in_q0 = bytearray(1 if c == c0 else 0 for c in comp_list)
        q0 = [q for q in range(n) if comp_list[q] == c0]
    return SccAnalysis(comp=comp_list, n_components=ncomp, minimal=minimal, q0=q0, in_q0=in_q0)


# ---------------------------------------------------------------------------
# step 2: one-letter cluster decomposition


@dataclass
class ClusterStructure:
    """Shape of one letter's functional graph.

    Every weakly connected component (a cluster) is one cycle with trees
    hanging off the cycle states.  Per state: the cluster id, the position of
    its tree's root on the cluster cycle (``tree``), the distance to the cycle
    (``height``), and its height-1 ancestor (``branch_root``, -1 on the cycle
    itself).  ``cycles[c]`` lists cluster c's cycle states in action order.
    """

    letter: int
    cluster: list
    tree: list
    height: list
    branch_root: list
    cycles: list
    sizes: list

    @property
    def n_clusters(self) -> int:
        return len(self.cycles)

    def cycle_lengths(self) -> list:
        return [len(c) for c in self.cycles]


def build_cluster_structure(A, letter: int) -> ClusterStructure:
    """Decompose one letter's functional graph in O(n).

    Cycles are found by walking each unvisited state forward until the walk
    meets itself or settled territory; heights and tree tags then spread
    outward from the cycles over reversed edges.  Per-state bookkeeping lives
    in typed 32-bit buffers while the graph is walked (the access pattern is
    random, so footprint decides cache behaviour) and is converted to plain
    lists for the returned structure.
    """
    n = A.n
    f = array("i", A.delta[letter :: A.k])
    status = bytearray(n)  # 0 new, 1 on the current walk, 2 settled
    zeros = bytes(4 * n)
    walk_pos = array("i", zeros)
    cluster = array("i", [-1]) * n
    tree = array("i", zeros)
    height = array("i", zeros)
    branch_root = array("i", [-1]) * n
    cycles = []

    for q0 in range(n):
        if status[q0]:
            continue
        path = []
        q = q0
        while not status[q]:
            status[q] = 1
            walk_pos[q] = len(path)
            path.append(q)
            q = f[q]
        if status[q] == 1:  # the walk closed a brand new cycle
            cyc = path[walk_pos[q]:]
            cid = len(cycles)
            cycles.append(cyc)
            for j, c in enumerate(cyc):
                cluster[c] = cid
                tree[c] = j
        for s in path:
            status[s] = 2

    # reversed edges in CSR layout, then BFS outward from every cycle
    indeg = array("i", zeros)
    for t in f:
        indeg[t] += 1
    offs = array("i", bytes(4 * (n + 1)))
    for i in range(n):
        offs[i + 1] = offs[i] + indeg[i]
    preds = array("i", zeros)
    fill = offs[:n]
    for q in range(n):
        t = f[q]
        preds[fill[t]] = q
        fill[t] += 1

    queue = [c for cyc in cycles for c in cyc]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        cx = cluster[x]
        tx = tree[x]
        hx = height[x]
        bx = branch_root[x]
        for i in range(offs[x], offs[x + 1]):
            c = preds[i]
            if cluster[c] != -1:  # cycle predecessor already settled
                continue
            cluster[c] = cx
            tree[c] = tx
            height[c] = hx + 1
            branch_root[c] = c if hx == 0 else bx
            queue.append(c)

    sizes = [0] * len(cycles)
    for cid in cluster:
        sizes[cid] += 1
    return ClusterStructure(
        letter=letter,
        cluster=cluster.tolist(),
        tree=tree.tolist(),
        height=height.tolist(),
        branch_root=branch_root.tolist(),
        cycles=cycles,
        sizes=sizes,
    )


def cluster_count_ok(cs: ClusterStructure, n: int) -> bool:
    """Guard: at most 5 ln n clusters (float comparison, no rounding)."""
    return cs.n_clusters <= 5.0 * math.log(n)


# ---------------------------------------------------------------------------
# step 3: tallest height-1 branch


@dataclass
class TallestBranchInfo:
    """A strictly tallest height-1 branch and the cycle state just before it.

    ``root`` is the height-1 state whose subtree out-tops every other height-1
    subtree in letter a1's graph; ``cycle_pred`` is the cycle state p with
    p.a1 = root.a1, so {p, root} merges in a single a1 step.  ``second_height``
    is the tallest height among the other branches.
    """

    a1: int
    a2: int
    root: int
    cycle_pred: int
    height: int
    second_height: int
    branch_root: list = field(repr=False)

    def in_branch(self, q: int) -> bool:
        return self.branch_root[q] == self.root


def _branch_summary(cs: ClusterStructure):
    """(root, height, second height, unique?) over all height-1 branches."""
    br = cs.branch_root
    h = cs.height
    n = len(h)
    tallest = [0] * n  # indexed by branch root state
    for q in range(n):
        r = br[q]
        if r >= 0 and h[q] > tallest[r]:
            tallest[r] = h[q]
    best = 0
    best_root = -1
    second = 0
    ties = 0
    for r in range(n):
        v = tallest[r]
        if not v:
            continue
        if v > best:
            second = best
            best = v
            best_root = r
            ties = 1
        elif v == best:
            ties += 1
            second = v
        elif v > second:
            second = v
    return best_root, best, second, best > 0 and ties == 1


def tallest_branch_candidates(cs0: ClusterStructure, cs1: ClusterStructure):
    """Letters whose graph has a strictly unique tallest height-1 branch.

    Returns a TallestBranchInfo per qualifying letter, lower-indexed letter
    first.  Later guard stages that hinge on the chosen letter get retried
    with the next candidate, so both qualifying letters must fail before the
    pipeline gives up; that is what keeps those stages rare failures.
    """
    out = []
    for cs, other in ((cs0, cs1), (cs1, cs0)):
        root, hgt, second, unique = _branch_summary(cs)
        if unique:
            cyc = cs.cycles[cs.cluster[root]]
            p = cyc[cs.tree[root] - 1]  # wraps for tree index 0
            out.append(TallestBranchInfo(
                a1=cs.letter,
                a2=other.letter,
                root=root,
                cycle_pred=p,
                height=hgt,
                second_height=second,
                branch_root=cs.branch_root,
            ))
    return out


def find_tallest_branch(cs0: ClusterStructure, cs1: ClusterStructure):
    """First qualifying letter's branch info, or None when neither letter has
    a unique tallest branch (e.g. two permutation letters have no branches)."""
    cands = tallest_branch_candidates(cs0, cs1)
    return cands[0] if cands else None


# ---------------------------------------------------------------------------
# step 4: the seed pair


def stable_seed(info: TallestBranchInfo, scc: SccAnalysis, cs: ClusterStructure):
    """The merge pair (cycle_pred, root), or None.

    Requires a branch state q inside the sink component whose height beats
    every other branch; that makes the merged pair stable, i.e. any word can
    be extended by more letters to take both entries to one state.
    """
    in_q0 = scc.in_q0
    if in_q0 is None:
        return None
    br = cs.branch_root
    h = cs.height
    root = info.root
    cutoff = info.second_height
    for q in range(len(h)):
        if br[q] == root and h[q] > cutoff and in_q0[q]:
            return (info.cycle_pred, info.root)
    return None


# ---------------------------------------------------------------------------
# step 5: multiplying stable pairs


@dataclass(frozen=True)
class StablePairSet:
    """Stable pairs whose usefulness is probed on ``letter``'s cluster graph.

    Pairs keep their walk orientation and order from the construction; the
    entries of each pair are distinct, but the same pair may appear twice.
    """

    letter: int
    pairs: tuple


def multiply_stable_pairs(A, seed_pair, a1: int, a2: int):
    """Grow the seed pair into the two stable-pair sets.

    The seed is pushed 6 steps by a2; from each of those pairs a walk of
    ceil(n^0.4) a1-steps collects every position where the entries still
    differ (tagged with a2, whose clusters they probe, since a1 steps never
    leave an a1 cluster).  The first 6 collected pairs are walked by a2 the
    same way for the set tagged a1.  Collection keeps walk order and does
    not deduplicate: the gate below asks for enough surviving walk
    positions, and a repeated pair costs nothing downstream.  Degenerate
    automata that slip through on echoing pairs are caught by the size
    certificate at the end of the pipeline.  Returns (set tagged a2, set
    tagged a1), or None when the first set has fewer than 6 pairs.
    """
    n = A.n
    col1 = A.column(a1)
    col2 = A.column(a2)
    jmax = math.ceil(n ** 0.4)

    ordered = []
    p, r = seed_pair
    for _ in range(6):
        p = col2[p]
        r = col2[r]
        x, y = p, r
        for _ in range(jmax):
            x = col1[x]
            y = col1[y]
            if x != y:
                ordered.append((x, y))
    if len(ordered) < 6:
        return None

    ordered2 = []
    for x0, y0 in ordered[:6]:
        x, y = x0, y0
        for _ in range(jmax):
            x = col2[x]
            y = col2[y]
            if x != y:
                ordered2.append((x, y))
    return (
        StablePairSet(letter=a2, pairs=tuple(ordered)),
        StablePairSet(letter=a1, pairs=tuple(ordered2)),
    )


# ---------------------------------------------------------------------------
# step 6: cluster graph over large clusters


def large_state_mask(cs: ClusterStructure, n: int) -> bytearray:
    """Indicator over states of membership in a large cluster (size > n^0.45)."""
    thr = n ** 0.45
    big = [sz > thr for sz in cs.sizes]
    return bytearray(big[c] for c in cs.cluster)


@dataclass
class ClusterGraph:
    """Graph on large clusters induced by stable pairs.

    Each pair whose entries both sit in large clusters contributes the edge
    (cluster of s, cluster of t, s, t); loops and parallel edges are kept.
    ``tree_idx`` indexes the union-find spanning forest inside ``edges``.
    When the gcd d of the large clusters' cycle lengths exceeds 1, ``labels``
    maps every large cluster to a residue mod d, propagated along tree edges
    so that label(c') - label(c) = height(t) - height(s) (mod d).
    """

    letter: int
    large: tuple
    edges: tuple
    tree_idx: frozenset
    connected: bool
    d: int
    labels: Optional[dict]


def build_cluster_graph(cs: ClusterStructure, pairs, n: int) -> ClusterGraph:
    thr = n ** 0.45
    sizes = cs.sizes
    is_large = [sz > thr for sz in sizes]
    large = tuple(c for c in range(len(sizes)) if is_large[c])
    cluster = cs.cluster

    parent = {c: c for c in large}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    edges = []
    tree_idx = set()
    touched = set()
    for s, t in pairs:
        c1, c2 = cluster[s], cluster[t]
        if not (is_large[c1] and is_large[c2]):
            continue
        ei = len(edges)
        edges.append((c1, c2, s, t))
        touched.add(c1)
        touched.add(c2)
        r1, r2 = find(c1), find(c2)
        if r1 != r2:
            parent[r1] = r2
            tree_idx.add(ei)

    # connectivity is asked of the clusters the stable pairs actually reach;
    # a large cluster no pair lands in cannot be glued by any edge choice and
    # only ever shows up through the masks of the later cycle conditions
    roots = {find(c) for c in touched}
    connected = len(roots) <= 1
    d = reduce(math.gcd, (len(cs.cycles[c]) for c in large), 0)

    labels = None
    if large and d > 1:
        h = cs.height
        adj = {c: [] for c in large}
        for ei in tree_idx:
            c1, c2, s, t = edges[ei]
            adj[c1].append((c2, (h[t] - h[s]) % d))
            adj[c2].append((c1, (h[s] - h[t]) % d))
        labels = {}
        for c in large:
            if c in labels:
                continue
            labels[c] = 0
            stack = [c]
            while stack:
                u = stack.pop()
                lu = labels[u]
                for v, shift in adj[u]:
                    if v not in labels:
                        labels[v] = (lu + shift) % d
                        stack.append(v)
    return ClusterGraph(
        letter=cs.letter,
        large=large,
        edges=tuple(edges),
        tree_idx=frozenset(tree_idx),
        connected=connected,
        d=d,
        labels=labels,
    )


def check_cluster_graph(cs: ClusterStructure, z: StablePairSet, n: int):
    """Guard for one letter: large clusters exist, the stable pairs connect
    them, and for gcd d > 1 at least one non-tree edge breaks its label
    congruence.  Returns a FailReason or None for pass.

    A broken congruence is the good case: it certifies progress across the
    residue obstruction, whereas congruences holding everywhere (vacuously or
    not) leave the letter inconclusive.
    """
    g = build_cluster_graph(cs, z.pairs, n)
    if not g.large:
        return FailReason.NO_LARGE_CLUSTERS
    if not g.connected:
        return FailReason.CLUSTER_GRAPH_DISCONNECTED
    if g.d == 1:
        return None
    h = cs.height
    labels = g.labels
    d = g.d
    # each broken congruence only buys alignment shifts by its own residual,
    # so the residuals must generate all of Z_d; a d=4 graph with a lone
    # residual of 2 still has an untouched parity invariant
    gen = d
    for ei, (c1, c2, s, t) in enumerate(g.edges):
        if ei in g.tree_idx:
            continue
        gen = math.gcd(gen, (labels[c2] - labels[c1] - (h[t] - h[s])) % d)
        if gen == 1:
            return None
    return FailReason.CONGRUENCES_ALL_HOLD


# ---------------------------------------------------------------------------
# step 7: cycle coverage conditions


def check_cycle_majority(cs_a: ClusterStructure, lhat_b: bytearray) -> bool:
    """Every cycle longer than 2 needs at least half its states (rounded up)
    inside the other letter's large clusters."""
    for cyc in cs_a.cycles:
        s = len(cyc)
        if s <= 2:
            continue
        need = (s + 1) // 2
        cnt = 0
        for q in cyc:
            if lhat_b[q]:
                cnt += 1
        if cnt < need:
            return False
    return True


def check_two_cycles(A, cs_a: ClusterStructure, b: int,
                     lhat_a: bytearray, lhat_b: bytearray) -> bool:
    """Coverage conditions on 2-cycles of letter a.

    A 2-cycle C already inside the other letter's large clusters is fine.
    Otherwise C is examined through its images under b: collapsing to one
    state after one or two steps passes; else with U = C.b + C.b^2, |U| = 3
    passes when C.b sits in large a-clusters and |U| = 4 passes when C.b or
    C.b^2 does.  The images are judged against letter a's own mass because a
    state outside lhat_b keeps its whole b-orbit outside lhat_b, so a b-mask
    here could never pass.  Anything else fails the guard.
    """
    colb = A.column(b)
    for cyc in cs_a.cycles:
        if len(cyc) != 2:
            continue
        x, y = cyc
        if lhat_b[x] and lhat_b[y]:
            continue
        xb, yb = colb[x], colb[y]
        if xb == yb:
            continue
        xb2, yb2 = colb[xb], colb[yb]
        if xb2 == yb2:
            continue
        u = len({xb, yb, xb2, yb2})
        img1_in = lhat_a[xb] and lhat_a[yb]
        if u == 3:
            if img1_in:
                continue
            return False
        if u == 4:
            if img1_in or (lhat_a[xb2] and lhat_a[yb2]):
                continue
            return False
        return False  # u == 2: C.b is a 2-cycle of b equal to C.b^2
    return True


def cycle_closure_flags(cs_a: ClusterStructure, col_b, lhat_a, lhat_b):
    """Per-cluster flags in one pass: whether the cycle meets lhat_b at all,
    whether its image under b meets lhat_a, and the same two as full
    inclusions (the loop case needs both strengths)."""
    in_b_any = []
    img_in_a_any = []
    in_b_all = []
    img_in_a_all = []
    for cyc in cs_a.cycles:
        hits_b = [bool(lhat_b[q]) for q in cyc]
        hits_a = [bool(lhat_a[col_b[q]]) for q in cyc]
        in_b_any.append(any(hits_b))
        img_in_a_any.append(any(hits_a))
        in_b_all.append(all(hits_b))
        img_in_a_all.append(all(hits_a))
    return in_b_any, img_in_a_any, in_b_all, img_in_a_all


def shift_exists(I, J, d: int) -> bool:
    """Whether some rotation z makes (z + I) union J cover all residues mod d."""
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    full = (1 << d) - 1
    mi = 0
    for i in I:
        if not 0 <= i < d:
            raise ValueError(f"residue {i} out of range mod {d}")
        mi |= 1 << i
    mj = 0
    for j in J:
        if not 0 <= j < d:
            raise ValueError(f"residue {j} out of range mod {d}")
        mj |= 1 << j
    if mj == full:
        return True
    for z in range(d):
        rot = ((mi << z) | (mi >> (d - z))) & full
        if rot | mj == full:
            return True
    return False


def _avoided_residues(cycle, d: int, lhat) -> list:
    """Residues r mod d whose whole position class on the cycle misses lhat."""
    s = len(cycle)
    out = []
    for r in range(d):
        if not any(lhat[cycle[p]] for p in range(r, s, d)):
            out.append(r)
    return out


def check_cycle_pairs(cs_a: ClusterStructure, lhat_b, flags, n: int):
    """Pairwise conditions over letter a's cycles; small second cycle only.

    For each unordered cycle pair, let C be the longer one (s states) and C'
    the shorter (s' states).  Pairs with s' >= n^0.45 are skipped.  When C'
    is a loop its single state sits still while C rotates, so the pair is
    covered once the loop state is in lhat_b and C meets lhat_b anywhere, or
    the same under b-images against lhat_a; full inclusion of C would be far
    stronger than the rotation argument needs.  For s' >= 2 the avoided
    residue sets of C and C' mod gcd(s, s') must not admit a shift z making
    (z + I) union J everything, else merging can stall on that pair.
    """
    in_b_any, img_in_a_any, in_b_all, img_in_a_all = flags
    cycles = cs_a.cycles
    thr = n ** 0.45
    nc = len(cycles)
    for i in range(nc):
        for j in range(i + 1, nc):
            ci, cj = i, j
            if len(cycles[ci]) < len(cycles[cj]):
                ci, cj = cj, ci
            short = len(cycles[cj])
            if short >= thr:
                continue
            if short == 1:
                if (in_b_any[ci] and in_b_all[cj]) or (
                        img_in_a_any[ci] and img_in_a_all[cj]):
                    continue
                return FailReason.CYCLE_PAIR_NOT_COVERED
            d = math.gcd(len(cycles[ci]), short)
            I = _avoided_residues(cycles[ci], d, lhat_b)
            J = _avoided_residues(cycles[cj], d, lhat_b)
            if shift_exists(I, J, d):
                return FailReason.SHIFT_EXISTS
    return None


# ---------------------------------------------------------------------------
# the two-letter pipeline and the driver


def binary_linear_check(A) -> CheckOutcome:
    """Run the guard pipeline on a two-letter automaton.

    Returns SYNCHRONIZING (proof), NOT_SYNCHRONIZING (definitive negative
    from the sink-component test or a failed small-size certificate), or
    LINEAR_FAIL with the first failed guard.  Positive verdicts on automata
    with at most CERTIFIED_MAX_N states are confirmed on the pair graph;
    beyond that size the pipeline never touches the quadratic oracle.
    """
    if A.k != 2:
        raise ValueError(f"binary pipeline needs exactly 2 letters, got k={A.k}")
    n = A.n
    if n == 1:
        return CheckOutcome(Verdict.SYNCHRONIZING)

    scc = analyze_scc(A)
    if scc.multiple_minimal:
        return CheckOutcome(Verdict.NOT_SYNCHRONIZING, step="scc")

    cs0 = build_cluster_structure(A, 0)
    cs1 = build_cluster_structure(A, 1)
    if not (cluster_count_ok(cs0, n) and cluster_count_ok(cs1, n)):
        return _fail(FailReason.TOO_MANY_CLUSTERS, "cluster-count")

    candidates = tallest_branch_candidates(cs0, cs1)
    if not candidates:
        return _fail(FailReason.NO_UNIQUE_TALLEST_BRANCH, "tallest-branch")
    cs_by_letter = (cs0, cs1)

    # the seed pair, its multiplication, and the cluster-graph gluing all
    # depend on which letter hosts the tallest branch; a failure there is
    # only final once every qualifying letter has been tried
    first_fail = None
    glued = False
    for info in candidates:
        seed = stable_seed(info, scc, cs_by_letter[info.a1])
        if seed is None:
            first_fail = first_fail or (FailReason.TALLEST_BRANCH_OUTSIDE_Q0, "seed-pair")
            continue
        zs = multiply_stable_pairs(A, seed, info.a1, info.a2)
        if zs is None:
            first_fail = first_fail or (FailReason.TOO_FEW_STABLE_PAIRS, "stable-pairs")
            continue
        z_a2, z_a1 = zs
        reason = None
        for z in (z_a1, z_a2) if info.a1 == 0 else (z_a2, z_a1):  # letter 0 first
            reason = check_cluster_graph(cs_by_letter[z.letter], z, n)
            if reason is not None:
                break
        if reason is not None:
            first_fail = first_fail or (reason, "cluster-graph")
            continue
        glued = True
        break
    if not glued:
        return _fail(*first_fail)

    lhat = (large_state_mask(cs0, n), large_state_mask(cs1, n))
    orderings = ((0, 1), (1, 0))
    for a, b in orderings:
        if not check_cycle_majority(cs_by_letter[a], lhat[b]):
            return _fail(FailReason.CYCLE_MAJORITY_FAIL, "cycle-majority")
    for a, b in orderings:
        if not check_two_cycles(A, cs_by_letter[a], b, lhat[a], lhat[b]):
            return _fail(FailReason.TWO_CYCLE_FAIL, "two-cycles")
    for a, b in orderings:
        col_b = A.column(b)
        flags = cycle_closure_flags(cs_by_letter[a], col_b, lhat[a], lhat[b])
        reason = check_cycle_pairs(cs_by_letter[a], lhat[b], flags, n)
        if reason is not None:
            return _fail(reason, "cycle-pairs")

    if n <= CERTIFIED_MAX_N and not synch_slow(A):
        return CheckOutcome(Verdict.NOT_SYNCHRONIZING, step="certificate")
    return CheckOutcome(Verdict.SYNCHRONIZING)


def linear_check(A, pretest: bool = True) -> CheckReport:
    """Linear phase for any alphabet: sink pretest over the whole alphabet,
    then the two-letter pipeline on consecutive letter pairs (0,1), (2,3), ...

    ``synchronizing`` is True on the first pipeline proof, False on a
    definitive negative, and None when every pair was inconclusive (the
    caller decides whether to consult the quadratic oracle).  With one letter
    or n = 2 the phase is at best definitive-negative, never positive.
    """
    n, k = A.n, A.k
    if n == 1:
        return CheckReport(True, "linear", ())
    if n == 2:
        # the oracle settles n = 2 instantly; only the pretest is worth running
        if pretest and analyze_scc(A).multiple_minimal:
            out = CheckOutcome(Verdict.NOT_SYNCHRONIZING, step="scc")
            return CheckReport(False, "linear", (PairOutcome(tuple(range(k)), out),))
        return CheckReport(None, "linear", ())
    if pretest and k != 2:  # for k = 2 the pipeline's own sink test is identical
        if analyze_scc(A).multiple_minimal:
            out = CheckOutcome(Verdict.NOT_SYNCHRONIZING, step="scc")
            return CheckReport(False, "linear", (PairOutcome(tuple(range(k)), out),))
    outcomes = []
    for a in range(0, k - 1, 2):
        b = a + 1
        B = A if k == 2 else A.restrict_letters(a, b)
        out = binary_linear_check(B)
        outcomes.append(PairOutcome((a, b), out))
        if out.verdict is Verdict.SYNCHRONIZING:
            # a synchronizing restriction synchronizes the full automaton
            return CheckReport(True, "linear", tuple(outcomes))
        if out.verdict is Verdict.NOT_SYNCHRONIZING and k == 2:
            # the restriction is the whole automaton, so the negative stands
            return CheckReport(False, "linear", tuple(outcomes))
    return CheckReport(None, "linear", tuple(outcomes))


def check_synchronizing(A, pretest: bool = True, oracle_cap: int | None = None) -> CheckReport:
    """Decide synchronizability: linear phase first, quadratic oracle only
    when the linear phase is indeterminate.  The report's method says which
    side produced the answer."""
    report = linear_check(A, pretest=pretest)
    if report.synchronizing is not None:
        return report
    return CheckReport(synch_slow(A, cap=oracle_cap), "fallback", report.outcomes)
