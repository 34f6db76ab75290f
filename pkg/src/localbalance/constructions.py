"""Generators for the colourings of interest, plus split-closeness.

Everything is deterministic given its seed: a single random.Random drives
each generator and the JSON serialization of equal-seed outputs is
byte-identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb

import numpy as np

from .census import BipartiteColouring
from .core import ColouredCompleteGraph, Rational, _as_fraction

RED, BLUE, GREEN = 0, 1, 2


class ResamplingBudgetExceeded(RuntimeError):
    """Conditioned random generation failed within its retry budget."""


def make_Pk(k: int) -> ColouredCompleteGraph:
    """The locally 1/4-balanced 2-colouring of K_{4k}.

    The vertex set splits into four blocks V1..V4 of size k; edges inside
    V1 u V4 are red, edges inside V2 u V3 are blue, V1-V3 and V2-V4 are
    red, V1-V2 and V3-V4 are blue.  Equals blow_up(P3, k) vertex for
    vertex.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")

    red_blocks = {
        (0, 0), (3, 3), (0, 3), (3, 0),  # inside V1 u V4
        (0, 2), (2, 0), (1, 3), (3, 1),  # V1-V3 and V2-V4
    }

    def colour(u: int, v: int) -> int:
        bu, bv = u // k, v // k
        return RED if (bu, bv) in red_blocks else BLUE

    return ColouredCompleteGraph.from_function(4 * k, 2, colour)


def make_split(a: int, b: int, seed: int = 0, flips: int = 0) -> ColouredCompleteGraph:
    """A split colouring: red clique on a vertices, blue clique on b,
    cross edges by a seeded fair coin, then ``flips`` random edges toggled.
    """
    n = a + b
    if a < 0 or b < 0 or n < 2:
        raise ValueError(f"need a, b >= 0 and a + b >= 2, got ({a},{b})")
    if flips < 0 or flips > comb(n, 2):
        raise ValueError(f"flips must lie in [0, C(n,2)], got {flips}")
    rng = random.Random(seed)
    rows = [bytearray(n) for _ in range(n)]
    pairs = []
    for u in range(n):
        for v in range(u + 1, n):
            if v < a:
                c = RED
            elif u >= a:
                c = BLUE
            else:
                c = rng.randrange(2)
            rows[u][v] = rows[v][u] = c
            pairs.append((u, v))
    for idx in sorted(rng.sample(range(len(pairs)), flips)):
        u, v = pairs[idx]
        c = 1 - rows[u][v]
        rows[u][v] = rows[v][u] = c
    return ColouredCompleteGraph(n, 2, rows, _validate=False)


def make_multicolour_cycle(l: int, part_size: int) -> ColouredCompleteGraph:
    """The 3-colouring with red/blue bipartite graphs alternating around an
    even cycle of l parts and green everywhere else.

    Consecutive parts i, i+1 (mod l, 0-indexed) are joined in red for even
    i and blue for odd i; all remaining edges, including those inside
    parts, are green.  With equal part sizes it is locally (1/l)-balanced.
    """
    if l % 2 != 0 or l < 4:
        raise ValueError(f"need an even l >= 4, got {l}")
    if part_size < 1:
        raise ValueError(f"need part_size >= 1, got {part_size}")
    n = l * part_size

    def colour(u: int, v: int) -> int:
        pu, pv = u // part_size, v // part_size
        if pu == pv:
            return GREEN
        lo, hi = min(pu, pv), max(pu, pv)
        if hi - lo == 1:
            return RED if lo % 2 == 0 else BLUE
        if lo == 0 and hi == l - 1:
            return RED if hi % 2 == 0 else BLUE
        return GREEN

    return ColouredCompleteGraph.from_function(n, 3, colour)


def make_random(n: int, r: int, seed: int) -> ColouredCompleteGraph:
    """I.i.d. uniform edge colours; deterministic per seed."""
    rng = random.Random(seed)
    return ColouredCompleteGraph.from_function(n, r, lambda u, v: rng.randrange(r))


def make_bipartite_mindeg(
    n_side: int, eps: Rational, seed: int, max_retries: int = 1000
) -> BipartiteColouring:
    """Random bipartite colouring with min red degree on X and min blue
    degree on Y both at least ceil(eps * n_side).

    Each X-vertex receives a forced-red partner set and each Y-vertex a
    forced-blue partner set; draws that would force a pair both ways are
    resolved by resampling the whole attempt from the same seeded stream.
    """
    eps = _as_fraction(eps)
    if not 0 < eps <= Fraction(1, 2):
        raise ValueError(f"need 0 < eps <= 1/2, got {eps}")
    need = ceil(eps * n_side)
    if need > n_side:
        raise ValueError("forced sets cannot exceed the side size")
    rng = random.Random(seed)
    for _ in range(max_retries):
        base = [[rng.randrange(2) for _ in range(n_side)] for _ in range(n_side)]
        forced_blue = [set(rng.sample(range(n_side), need)) for _ in range(n_side)]
        forced_red: list[set[int]] = []
        ok = True
        for x in range(n_side):
            avail = [y for y in range(n_side) if x not in forced_blue[y]]
            if len(avail) < need:
                ok = False
                break
            forced_red.append(set(rng.sample(avail, need)))
        if not ok:
            continue

        def colour(x: int, y: int) -> int:
            if y in forced_red[x]:
                return RED
            if x in forced_blue[y]:
                return BLUE
            return base[x][y]

        B = BipartiteColouring.from_function(n_side, n_side, colour)
        assert all(B.red_degree_x(x) >= eps * n_side for x in range(n_side))
        assert all(B.blue_degree_y(y) >= eps * n_side for y in range(n_side))
        return B
    raise ResamplingBudgetExceeded(
        f"no conflict-free draw in {max_retries} attempts (n={n_side}, eps={eps})"
    )


# ---------------------------------------------------------------------------
# Closeness to a split colouring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitCloseness:
    """Distance of a labelled 2-colouring from a split colouring.

    delta = flips / n^2 where flips is the number of edges whose colour
    must change so that red_side induces a red clique and blue_side a blue
    clique.  Exact mode minimises over all 2^n bipartitions; local-search
    mode reports the best bipartition found (an upper bound on the
    labelled optimum).
    """

    delta: Fraction
    red_side: tuple[int, ...]
    blue_side: tuple[int, ...]
    flipped_edges: tuple[tuple[int, int], ...]
    mode: str

    @property
    def flips(self) -> int:
        return len(self.flipped_edges)


def _popcounts(arr: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(arr)
    table = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)
    return table[arr & 0xFFFF] + table[(arr >> 16) & 0xFFFF]


def _flipped_edges_for(G: ColouredCompleteGraph, red_mask: int) -> tuple[tuple[int, int], ...]:
    out = []
    for u in range(G.n):
        for v in range(u + 1, G.n):
            inside_red = (red_mask >> u) & 1 and (red_mask >> v) & 1
            inside_blue = not ((red_mask >> u) & 1) and not ((red_mask >> v) & 1)
            c = G.colour(u, v)
            if (inside_red and c == BLUE) or (inside_blue and c == RED):
                out.append((u, v))
    return tuple(out)


def _split_cost(G: ColouredCompleteGraph, red_mask: int) -> int:
    full = (1 << G.n) - 1
    blue_mask = full & ~red_mask
    cost = 0
    for u in range(G.n):
        if (red_mask >> u) & 1:
            cost += (G.neighbours(BLUE, u) & red_mask).bit_count()
        else:
            cost += (G.neighbours(RED, u) & blue_mask).bit_count()
    return cost // 2


def closeness_to_split(
    G: ColouredCompleteGraph,
    exact_limit: int = 24,
    starts: int = 32,
    seed: int = 0,
) -> SplitCloseness:
    """Fewest edge flips taking G to a split colouring of its labelled
    vertex set (exact for n <= exact_limit, steepest-descent otherwise).
    """
    if G.r != 2:
        raise ValueError(f"closeness_to_split needs r=2, got r={G.r}")
    n = G.n
    if n <= exact_limit:
        size = 1 << n
        xs = np.arange(size, dtype=np.int64 if n > 30 else np.int32)
        f_blue = np.zeros(size, dtype=np.int32)
        f_red = np.zeros(size, dtype=np.int32)
        for v in range(n):
            low = (1 << v) - 1
            in_mask = ((xs >> v) & 1).astype(np.int32)
            blue_low = G.neighbours(BLUE, v) & low
            red_low = G.neighbours(RED, v) & low
            f_blue += in_mask * _popcounts(xs & blue_low).astype(np.int32)
            f_red += in_mask * _popcounts(xs & red_low).astype(np.int32)
        cost = f_blue + f_red[::-1]
        best_mask = int(np.argmin(cost))  # first occurrence: lowest mask wins ties
        mode = "exact"
    else:
        best_mask, best_cost = 0, None
        rng = random.Random(seed)
        for _ in range(starts):
            mask = rng.getrandbits(n)
            cost = _split_cost(G, mask)
            improved = True
            while improved:
                improved = False
                move, move_delta = -1, 0
                full = (1 << n) - 1
                blue_side = full & ~mask
                for v in range(n):
                    if (mask >> v) & 1:
                        delta = (
                            (G.neighbours(RED, v) & blue_side).bit_count()
                            - (G.neighbours(BLUE, v) & (mask & ~(1 << v))).bit_count()
                        )
                    else:
                        delta = (
                            (G.neighbours(BLUE, v) & mask).bit_count()
                            - (G.neighbours(RED, v) & (blue_side & ~(1 << v))).bit_count()
                        )
                    if delta < move_delta:
                        move, move_delta = v, delta
                if move >= 0:
                    mask ^= 1 << move
                    cost += move_delta
                    improved = True
            if best_cost is None or cost < best_cost:
                best_mask, best_cost = mask, cost
        mode = "local-search"

    red_side = tuple(v for v in range(n) if (best_mask >> v) & 1)
    blue_side = tuple(v for v in range(n) if not (best_mask >> v) & 1)
    flipped = _flipped_edges_for(G, best_mask)
    return SplitCloseness(
        delta=Fraction(len(flipped), n * n),
        red_side=red_side,
        blue_side=blue_side,
        flipped_edges=flipped,
        mode=mode,
    )
