"""Unibalanced induced subgraphs of multicoloured hosts.

A vertex subset S of an r-coloured host induces a unibalanced subgraph
when every vertex of S meets all r colours among its edges inside S
(hosts carry no vertex colours, so the incidence reading is purely
edge-wise).  A locally balanced host always has such subsets; the sampler
below draws them Bernoulli-style, and the exhaustive search finds the
smallest one.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import log
from typing import Sequence

from .core import ColouredCompleteGraph, _as_fraction, is_locally_balanced


@dataclass(frozen=True)
class SamplerConfig:
    """Sampling parameters derived from the balance level eps and r.

    zeta = (20/eps) (ln r + ln 1/eps) is the expected sample size and
    size_cap = (80/eps) ln 1/eps the acceptance cap; natural logarithms.
    The derivation needs zeta <= size_cap / 2, which holds exactly when
    r <= 1/eps (always true for a locally eps-balanced r-colouring).
    """

    eps: Fraction
    r: int
    max_draws: int = 64
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "eps", _as_fraction(self.eps))
        if not 0 < self.eps < 1:
            raise ValueError(f"need 0 < eps < 1, got {self.eps}")
        if self.r < 2:
            raise ValueError(f"need r >= 2, got {self.r}")
        if self.max_draws < 1:
            raise ValueError("max_draws must be >= 1")
        if self.zeta > self.size_cap / 2:
            raise ValueError(
                f"zeta = {self.zeta:.2f} exceeds size_cap/2 = {self.size_cap / 2:.2f}; "
                f"this needs r <= 1/eps (r={self.r}, eps={self.eps})"
            )

    @property
    def zeta(self) -> float:
        inv = 1.0 / float(self.eps)
        return 20.0 * inv * (log(self.r) + log(inv))

    @property
    def size_cap(self) -> float:
        inv = 1.0 / float(self.eps)
        return 80.0 * inv * log(inv)


def induced_unibalanced(G: ColouredCompleteGraph, S: Sequence[int]) -> bool:
    """True iff every vertex of S sees all r colours inside S."""
    verts = tuple(S)
    if not verts:
        raise ValueError("S must be nonempty")
    mask = 0
    for v in verts:
        mask |= 1 << v
    for v in verts:
        for c in range(G.r):
            if not G.neighbours(c, v) & mask:
                return False
    return True


def sample_unibalanced_subset(
    G: ColouredCompleteGraph, config: SamplerConfig
) -> tuple[tuple[int, ...], int] | None:
    """Bernoulli(zeta/n) vertex samples until one induces a unibalanced
    subgraph of size <= size_cap; returns (subset, draws used) or None.

    Warns when the host is not locally eps-balanced, where the per-draw
    success guarantee has no backing.  zeta/n is clamped to 1 for small
    hosts (the formulas target large n).
    """
    if not is_locally_balanced(G, config.eps):
        warnings.warn(
            f"host is not locally {config.eps}-balanced; sampling is best-effort",
            stacklevel=2,
        )
    p = min(1.0, config.zeta / G.n)
    rng = random.Random(config.seed)
    for draw in range(1, config.max_draws + 1):
        S = tuple(v for v in range(G.n) if rng.random() < p)
        if not S or len(S) > config.size_cap:
            continue
        if induced_unibalanced(G, S):
            return S, draw
    return None


def min_unibalanced_subgraph(
    G: ColouredCompleteGraph, cap: int = 12
) -> tuple[int, ...] | None:
    """Lexicographically least smallest subset inducing a unibalanced
    subgraph, or None past the cap.

    Increasing-size DFS over sorted vertex choices.  Partial sets are
    pruned when some chosen vertex can no longer see a missing colour
    among the remaining candidate pool, or when its colour deficiency
    exceeds the slots left; both prunes keep the search exact.
    """
    if not 1 <= cap <= 12:
        raise ValueError(f"cap must lie in 1..12, got {cap}")
    n, r = G.n, G.r
    if n < 2:
        return None

    for k in range(2, min(cap, n) + 1):
        chosen: list[int] = []
        missing: list[set[int]] = []

        def feasible(start: int) -> bool:
            slots = k - len(chosen)
            pool = ((1 << n) - 1) & ~((1 << start) - 1)
            for v, miss in zip(chosen, missing):
                if len(miss) > slots:
                    return False
                for c in miss:
                    if not G.neighbours(c, v) & pool:
                        return False
            return True

        def dfs(start: int) -> bool:
            if len(chosen) == k:
                return all(not m for m in missing)
            if n - start < k - len(chosen):
                return False
            if not feasible(start):
                return False
            for v in range(start, n):
                new_missing = [miss - {G.colour(u, v)} for u, miss in zip(chosen, missing)]
                own = set(range(r)) - {G.colour(u, v) for u in chosen}
                saved = missing[:]
                chosen.append(v)
                missing[:] = new_missing + [own]
                if dfs(v + 1):
                    return True
                chosen.pop()
                missing[:] = saved
            return False

        if dfs(0):
            return tuple(chosen)
    return None


def min_unibalanced_subgraph_size(
    G: ColouredCompleteGraph, cap: int = 12
) -> int | None:
    """Smallest |S| inducing a unibalanced subgraph, or None past the cap."""
    witness = min_unibalanced_subgraph(G, cap)
    return None if witness is None else len(witness)
