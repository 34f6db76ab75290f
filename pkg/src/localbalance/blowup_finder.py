"""From many pattern copies to a homogeneous blow-up, constructively.

The pipeline mirrors the inductive extraction argument it implements:

1. draw a uniformly random equitable partition V1..Vl of the host and
   collect the canonical pattern copies (vertex i of the pattern embedded
   in Vi); they form an l-partite l-uniform hypergraph;
2. clean the hypergraph so that every (l-1)-prefix has degree 0 or at
   least threshold * |Vl|;
3. recurse on the shadow (the prefixes), obtaining sets U1..U_{l-1} on
   which the pair colouring is constant per part, together with an
   explicit matching A of disjoint prefixes;
4. in the bipartite incidence between A and Vl (R adjacent to v whenever
   R+v survives cleaning), grow a complete bipartite subgraph A' x T;
5. extract a monochromatic clique S_l inside T greedily.

Sizes are whatever the run achieves; callers compare against their target
and retry with fresh partitions.  All randomness flows from the config
seed; every tie in the deterministic steps breaks lexicographically.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, log
from typing import Callable, Iterator, Sequence

from .core import ColouredCompleteGraph, Rational, _as_fraction
from .patterns import BlowupWitness, TotallyColouredPattern, verify_witness


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class CanonicalHypergraph:
    """An l-partite l-uniform hypergraph of pattern copies.

    Edges are l-tuples with the i-th coordinate inside part i; internally
    they are grouped by their (l-1)-prefix, with the last coordinates of
    each group held as a bitmask.  Immutable.
    """

    __slots__ = ("parts", "by_prefix")

    def __init__(self, parts: Sequence[Sequence[int]], by_prefix: dict[tuple[int, ...], int]):
        self.parts = tuple(tuple(sorted(p)) for p in parts)
        seen: set[int] = set()
        for p in self.parts:
            if not p:
                raise ValueError("empty part")
            if seen & set(p):
                raise ValueError("parts must be disjoint")
            seen.update(p)
        self.by_prefix = {k: v for k, v in by_prefix.items() if v}

    @classmethod
    def from_edges(
        cls, parts: Sequence[Sequence[int]], edges: Sequence[tuple[int, ...]]
    ) -> "CanonicalHypergraph":
        l = len(parts)
        part_sets = [set(p) for p in parts]
        by_prefix: dict[tuple[int, ...], int] = {}
        count = 0
        for e in edges:
            if len(e) != l:
                raise ValueError(f"edge {e} does not have one vertex per part")
            for i, v in enumerate(e):
                if v not in part_sets[i]:
                    raise ValueError(f"vertex {v} of edge {e} is not in part {i}")
            prefix, last = tuple(e[:-1]), e[-1]
            mask = by_prefix.get(prefix, 0)
            if (mask >> last) & 1:
                raise ValueError(f"duplicate edge {e}")
            by_prefix[prefix] = mask | (1 << last)
            count += 1
        return cls(parts, by_prefix)

    @property
    def ell(self) -> int:
        return len(self.parts)

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.by_prefix.values())

    @property
    def is_empty(self) -> bool:
        return not self.by_prefix

    def edges(self) -> Iterator[tuple[int, ...]]:
        for prefix in sorted(self.by_prefix):
            for v in _bits(self.by_prefix[prefix]):
                yield prefix + (v,)

    def prefix_degree(self, prefix: tuple[int, ...]) -> int:
        return self.by_prefix.get(prefix, 0).bit_count()

    def shadow(self) -> "CanonicalHypergraph":
        """The hypergraph of (l-1)-prefixes of the edges, on parts[:-1]."""
        if self.ell < 2:
            raise ValueError("shadow needs l >= 2")
        return CanonicalHypergraph.from_edges(self.parts[:-1], sorted(self.by_prefix))

def min_degree_cleanup(
    Hg: CanonicalHypergraph, threshold: Rational
) -> CanonicalHypergraph:
    """Drop every edge whose prefix R has 0 < d(R) < threshold * |V_l|.

    Each edge has exactly one prefix, so prefix degrees are independent and
    one pass reaches the (order-independent, idempotent) fixpoint: the
    unique maximal subhypergraph in which every present prefix has degree
    at least threshold * |V_l|.
    """
    thr = _as_fraction(threshold)
    if thr < 0:
        raise ValueError(f"threshold must be >= 0, got {thr}")
    cut = thr * len(Hg.parts[-1])
    kept = {
        prefix: mask
        for prefix, mask in Hg.by_prefix.items()
        if mask.bit_count() >= cut
    }
    return CanonicalHypergraph(Hg.parts, kept)


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FinderConfig:
    """Knobs of the extraction pipeline.

    c is both the copy-density target of the partition step and the cap on
    the cleanup threshold; the effective per-level threshold never exceeds
    edges/(l * prod |V_i|), which guarantees cleanup keeps a positive
    fraction of the edges.
    """

    c: Fraction = Fraction(1, 8)
    seed: int = 0
    max_partition_retries: int = 64
    subset_search_budget: int = 200_000

    def __post_init__(self):
        object.__setattr__(self, "c", _as_fraction(self.c))
        if not 0 < self.c <= 1:
            raise ValueError(f"need 0 < c <= 1, got {self.c}")
        if self.max_partition_retries < 1 or self.subset_search_budget < 1:
            raise ValueError("budgets must be >= 1")


# ---------------------------------------------------------------------------
# Canonical partitions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalPartitionResult:
    parts: tuple[tuple[int, ...], ...]
    hypergraph: CanonicalHypergraph
    achieved_copies: int
    target_copies: Fraction
    met_target: bool
    draws: int


def _random_equitable_partition(
    rng: random.Random, n: int, l: int
) -> tuple[tuple[int, ...], ...]:
    verts = list(range(n))
    rng.shuffle(verts)
    base, extra = divmod(n, l)
    parts = []
    at = 0
    for i in range(l):
        size = base + (1 if i < extra else 0)
        parts.append(tuple(sorted(verts[at : at + size])))
        at += size
    return tuple(parts)


def _canonical_copies(
    G: ColouredCompleteGraph,
    H: TotallyColouredPattern,
    parts: Sequence[Sequence[int]],
) -> list[tuple[int, ...]]:
    """All embeddings of H's edge colouring with vertex i inside parts[i],
    in lexicographic order."""
    l = H.num_vertices
    part_masks = [sum(1 << v for v in p) for p in parts]
    bits = [G.colour_bits(c) for c in range(G.r)]
    out: list[tuple[int, ...]] = []
    chosen = [0] * l

    def rec(i: int, masks: tuple[int, ...]) -> None:
        if i == l:
            out.append(tuple(chosen))
            return
        for v in _bits(masks[i]):
            nxt = []
            ok = True
            for j in range(i + 1, l):
                m = masks[j] & bits[H.edge_colour(i, j)][v]
                if not m:
                    ok = False
                    break
                nxt.append(m)
            if not ok:
                continue
            chosen[i] = v
            rec(i + 1, masks[: i + 1] + tuple(nxt))

    if any(H.edge_colour(i, j) >= G.r for i in range(l) for j in range(i + 1, l)):
        return []
    rec(0, tuple(part_masks))
    return out


def canonical_partition(
    G: ColouredCompleteGraph,
    H: TotallyColouredPattern,
    config: FinderConfig,
) -> CanonicalPartitionResult:
    """Random equitable partition plus its canonical-copy hypergraph.

    Redraws up to max_partition_retries times until the copy count reaches
    c * (n/l)^l, otherwise returns the best draw found (by copy count,
    earliest draw winning ties).
    """
    l = H.num_vertices
    if G.n < l:
        raise ValueError(f"host has {G.n} < l = {l} vertices")
    rng = random.Random(config.seed)
    target = config.c * Fraction(G.n, l) ** l
    best: CanonicalPartitionResult | None = None
    for draw in range(1, config.max_partition_retries + 1):
        parts = _random_equitable_partition(rng, G.n, l)
        copies = _canonical_copies(G, H, parts)
        Hg = CanonicalHypergraph.from_edges(parts, copies)
        res = CanonicalPartitionResult(
            parts, Hg, len(copies), target, Fraction(len(copies)) >= target, draw
        )
        if res.met_target:
            return res
        if best is None or res.achieved_copies > best.achieved_copies:
            best = res
    assert best is not None
    return CanonicalPartitionResult(
        best.parts,
        best.hypergraph,
        best.achieved_copies,
        target,
        False,
        config.max_partition_retries,
    )


# ---------------------------------------------------------------------------
# KST-style complete bipartite subgraphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BipartiteIncidence:
    """Bipartite graph between abstract items A and host vertices B.

    nbrs[i] is the bitmask (over host vertex ids) of the B-neighbours of
    a_items[i]; b_mask restricts B.
    """

    a_items: tuple
    nbrs: tuple[int, ...]
    b_mask: int

    @property
    def edge_count(self) -> int:
        return sum((m & self.b_mask).bit_count() for m in self.nbrs)


@dataclass(frozen=True)
class StarResult:
    members: tuple          # chosen A-side items, in choice order
    common: int             # bitmask of their common neighbourhood
    mode: str               # "greedy" or "exact"


def _greedy_star_trajectory(F: BipartiteIncidence) -> list[tuple[int, int]]:
    """Greedy order of A-items: repeatedly add the item keeping the common
    neighbourhood largest (ties to the earliest item).  Returns a list of
    (item index, common mask after adding it)."""
    remaining = list(range(len(F.a_items)))
    common = F.b_mask
    out: list[tuple[int, int]] = []
    while remaining:
        best_i, best_sz = None, -1
        for i in remaining:
            sz = (F.nbrs[i] & common).bit_count()
            if sz > best_sz:
                best_i, best_sz = i, sz
        common &= F.nbrs[best_i]
        out.append((best_i, common))
        remaining.remove(best_i)
    return out


def kst_star(F: BipartiteIncidence, s: int, config: FinderConfig) -> StarResult | None:
    """A complete bipartite subgraph with |S| = s on the A side.

    Exact maximisation of |T| over s-subsets when C(|A|, s) fits in the
    subset search budget, greedy otherwise; None when every examined
    choice has an empty common neighbourhood.
    """
    if s < 1:
        raise ValueError(f"need s >= 1, got {s}")
    m = len(F.a_items)
    if s > m:
        return None
    if comb(m, s) <= config.subset_search_budget:
        best: tuple[int, tuple[int, ...], int] | None = None
        for combo in itertools.combinations(range(m), s):
            common = F.b_mask
            for i in combo:
                common &= F.nbrs[i]
                if not common:
                    break
            if common:
                key = common.bit_count()
                if best is None or key > best[0]:
                    best = (key, combo, common)
        if best is None:
            return None
        _, combo, common = best
        return StarResult(tuple(F.a_items[i] for i in combo), common, "exact")
    traj = _greedy_star_trajectory(F)[:s]
    common = traj[-1][1]
    if not common:
        return None
    return StarResult(tuple(F.a_items[i] for i, _ in traj), common, "greedy")


# ---------------------------------------------------------------------------
# Greedy multicolour Ramsey
# ---------------------------------------------------------------------------

def ramsey_bound(n: int, r: int) -> int:
    """floor(log_{2r} n): the clique size the contract promises."""
    if n < 1:
        return 0
    k = 0
    while (2 * r) ** (k + 1) <= n:
        k += 1
    return k


def _exact_mono_clique(
    verts: Sequence[int], phi: Callable[[int, int], int], r: int, k: int
) -> tuple[tuple[int, ...], int] | None:
    """Smallest-colour, lexicographically least monochromatic k-clique, or
    None.  Exhaustive with bitset pruning; intended for small k."""
    n = len(verts)
    if k > n:
        return None
    for colour in range(r):
        adj = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if phi(verts[i], verts[j]) == colour:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i

        def grow(chosen: list[int], cand: int) -> tuple[int, ...] | None:
            if len(chosen) == k:
                return tuple(chosen)
            if len(chosen) + cand.bit_count() < k:
                return None
            for i in _bits(cand):
                got = grow(chosen + [i], cand & adj[i] & ~((1 << (i + 1)) - 1))
                if got is not None:
                    return got
            return None

        found = grow([], (1 << n) - 1)
        if found is not None:
            return tuple(verts[i] for i in found), colour
    return None


def ramsey_clique(
    vertices: Sequence[int], phi: Callable[[int, int], int], r: int
) -> tuple[tuple[int, ...], int]:
    """Greedy monochromatic clique under the pair colouring phi.

    Repeatedly takes the least live vertex and restricts to its majority
    colour neighbourhood (ties to the smallest colour), then keeps the
    most frequent out-colour class.  If the greedy result falls short of
    floor(log_{2r} n) - it provably cannot for r = 2 - an exact search for
    a clique of that size is attempted.  Returns (sorted clique, colour);
    a single-vertex clique reports colour 0.
    """
    verts = sorted(vertices)
    if not verts:
        raise ValueError("ramsey_clique needs at least one vertex")
    seq: list[tuple[int, int | None]] = []
    live = verts
    while live:
        v = live[0]
        rest = live[1:]
        if not rest:
            seq.append((v, None))
            break
        buckets: dict[int, list[int]] = {}
        for u in rest:
            buckets.setdefault(phi(v, u), []).append(u)
        best_c = min(buckets, key=lambda c: (-len(buckets[c]), c))
        seq.append((v, best_c))
        live = buckets[best_c]

    classes: dict[int, list[int]] = {c: [] for c in range(r)}
    tail: int | None = None
    for v, oc in seq:
        if oc is None:
            tail = v
        else:
            classes.setdefault(oc, []).append(v)
    best_c = min(classes, key=lambda c: (-len(classes[c]), c))
    clique = list(classes[best_c])
    if tail is not None:
        clique.append(tail)
    colour = best_c if len(clique) > 1 else 0

    bound = ramsey_bound(len(verts), r)
    if len(clique) < bound:
        exact = _exact_mono_clique(verts, phi, r, bound)
        if exact is not None:
            return exact
    return tuple(sorted(clique)), colour


# ---------------------------------------------------------------------------
# The covering recursion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoverResult:
    """Sets S1..Sl with constant pair colouring inside each, every cross
    pair covered by a hypergraph edge, and an explicit matching of
    |S1| disjoint edges on their union."""

    sets: tuple[tuple[int, ...], ...]
    colours: tuple[int, ...]
    matching: tuple[tuple[int, ...], ...]
    notes: tuple[str, ...] = field(default=())

    @property
    def min_size(self) -> int:
        return min(len(s) for s in self.sets)


def hypergraph_cover(
    Hg: CanonicalHypergraph,
    phi: Callable[[int, int], int],
    r: int,
    config: FinderConfig,
) -> CoverResult:
    """Run the inductive covering extraction on a nonempty hypergraph.

    The split size s is chosen by sweeping the greedy star trajectory and
    maximising min(s, clique found in the common neighbourhood); an exact
    star search refines the chosen s when the subset budget allows.
    """
    if Hg.is_empty:
        raise ValueError("hypergraph_cover needs a nonempty hypergraph")
    l = Hg.ell
    if l == 1:
        live = sorted(_bits(Hg.by_prefix[()]))
        s1, colour = ramsey_clique(live, phi, r)
        return CoverResult(
            (tuple(s1),), (colour,), tuple((v,) for v in s1), ("base",)
        )

    sizes_prod = 1
    for p in Hg.parts:
        sizes_prod *= len(p)
    adaptive = Fraction(Hg.edge_count, l * sizes_prod)
    threshold = min(config.c, adaptive)
    L = min_degree_cleanup(Hg, threshold)
    assert not L.is_empty, "cleanup below the adaptive threshold cannot empty"

    sub = hypergraph_cover(L.shadow(), phi, r, config)
    A = sub.matching
    F = BipartiteIncidence(
        a_items=A,
        nbrs=tuple(L.by_prefix.get(R, 0) for R in A),
        b_mask=sum(1 << v for v in L.parts[-1]),
    )

    traj = _greedy_star_trajectory(F)
    best_s, best_score, best_state = 0, -1, None
    for s in range(1, len(traj) + 1):
        common = traj[s - 1][1]
        t_size = common.bit_count()
        if t_size == 0 or t_size <= best_score:
            break
        if s <= best_score:
            continue
        clique, colour = ramsey_clique(sorted(_bits(common)), phi, r)
        score = min(s, len(clique))
        if score > best_score:
            best_s, best_score = s, score
            best_state = (tuple(F.a_items[i] for i, _ in traj[:s]), clique, colour, "greedy")
    assert best_state is not None, "a nonempty cleaned hypergraph yields s = 1"

    # exact refinement of the star at the chosen size, if affordable
    if comb(len(A), best_s) <= config.subset_search_budget:
        star = kst_star(F, best_s, config)
        if star is not None and star.mode == "exact":
            clique, colour = ramsey_clique(sorted(_bits(star.common)), phi, r)
            if min(best_s, len(clique)) >= best_score:
                best_state = (star.members, clique, colour, "exact")

    chosen_prefixes, s_last, colour_last, mode = best_state
    s_final = min(len(chosen_prefixes), len(s_last))
    chosen_prefixes = chosen_prefixes[:s_final]
    s_last_sorted = tuple(sorted(s_last))

    sets = tuple(
        tuple(sorted(R[i] for R in chosen_prefixes)) for i in range(l - 1)
    ) + (s_last_sorted,)
    colours = tuple(
        _constant_phi_colour(sets[i], phi) for i in range(l - 1)
    ) + (colour_last,)
    matching = tuple(
        R + (v,) for R, v in zip(chosen_prefixes, s_last_sorted[:s_final])
    )
    return CoverResult(sets, colours, matching, sub.notes + (mode,))


def _constant_phi_colour(vs: Sequence[int], phi: Callable[[int, int], int]) -> int:
    if len(vs) < 2:
        return 0
    c = phi(vs[0], vs[1])
    for u, v in itertools.combinations(vs, 2):
        if phi(u, v) != c:
            raise AssertionError("cover set is not monochromatic under phi")
    return c


# ---------------------------------------------------------------------------
# End-to-end extraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlowupFinderResult:
    witness: BlowupWitness | None
    achieved_t: int
    asymptotic_target_t: float
    attempts: int
    canonical_copies: int
    met_target: bool | None
    partition: tuple[tuple[int, ...], ...] | None
    part_colours: tuple[int, ...] | None
    mode: str

    def to_dict(self) -> dict:
        return {
            "t": self.achieved_t,
            "parts": [list(p) for p in self.witness.parts] if self.witness else [],
            "partColours": list(self.part_colours) if self.part_colours else [],
            "mode": self.mode,
            "paperTargetT": self.asymptotic_target_t,
            "attempts": self.attempts,
            "canonicalCopies": self.canonical_copies,
            "metTarget": self.met_target,
        }


def asymptotic_target_size(n: int, l: int, r: int, c: Fraction) -> float:
    """The asymptotic blow-up size min{c/2l, 1/(2r log r)}^l * log n.

    Natural logarithms; at desk scale this is usually far below 1 and is
    reported for context only (the CLI surfaces it as paperTargetT).
    """
    return min(float(c) / (2 * l), 1.0 / (2 * r * log(r))) ** l * log(n) if n > 1 else 0.0


def find_homogeneous_blowup(
    G: ColouredCompleteGraph,
    pattern: TotallyColouredPattern,
    config: FinderConfig,
    target_t: int | None = None,
) -> BlowupFinderResult:
    """Extract a homogeneous blow-up of the pattern's edge colouring.

    Each attempt draws one fresh equitable partition, builds the canonical
    hypergraph and runs the covering recursion with phi = G's colouring;
    attempts stop early once target_t is reached (retrying partitions is
    the pipeline's observable success criterion).  Every returned witness
    passes verify_witness(..., homogeneous=True); parts are truncated to
    the common achieved size t.
    """
    l = pattern.num_vertices
    if l > 8:
        raise ValueError("blow-up extraction supports patterns with l <= 8")
    if G.n < l:
        raise ValueError(f"host has {G.n} < l = {l} vertices")
    rng = random.Random(config.seed)
    best: BlowupFinderResult | None = None
    attempts = 0
    for attempt in range(1, config.max_partition_retries + 1):
        attempts = attempt
        parts = _random_equitable_partition(rng, G.n, l)
        copies = _canonical_copies(G, pattern, parts)
        if not copies:
            candidate = BlowupFinderResult(
                None, 0, asymptotic_target_size(G.n, l, G.r, config.c), attempt, 0,
                None if target_t is None else False, parts, None, "no-copies",
            )
        else:
            Hg = CanonicalHypergraph.from_edges(parts, copies)
            cover = hypergraph_cover(Hg, G.colour, G.r, config)
            t = cover.min_size
            w = BlowupWitness(
                pattern,
                tuple(tuple(s[:t]) for s in cover.sets),
                t,
                homogeneous=True,
            )
            if not verify_witness(G, w):
                raise AssertionError("extraction produced an invalid witness")
            candidate = BlowupFinderResult(
                w, t, asymptotic_target_size(G.n, l, G.r, config.c), attempt,
                len(copies), None if target_t is None else t >= target_t,
                parts, cover.colours, "+".join(cover.notes),
            )
        if best is None or candidate.achieved_t > best.achieved_t:
            best = candidate
        if target_t is not None and best.achieved_t >= target_t:
            break
    assert best is not None
    return BlowupFinderResult(
        best.witness, best.achieved_t, best.asymptotic_target_t, attempts,
        best.canonical_copies, best.met_target, best.partition,
        best.part_colours, best.mode,
    )
