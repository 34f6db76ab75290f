"""Named totally-coloured patterns, blow-ups and witness checking.

The library patterns (red = 0, blue = 1):

* P1    - K2, both vertices red, the edge blue.  Its t-blow-up is a blue
          induced K_{t,t} between two red cliques.
* P2    - K2, one red and one blue vertex, the edge red.
* P3    - K4 with blue edges (0,1), (1,2), (2,3) and blue vertices 1, 2;
          everything else red.  Self-complementary under colour swap.
* P3o   - P3 with the vertex colours flagged as ignored (edge pattern only).
* C4    - K4 whose red edges form a 4-cycle; vertex colours ignored.
* M1    - the properly 2-coloured K_{2,2}, i.e. an alternating 4-cycle.
          M1 is bipartite, not complete, so it is represented as a
          BipartiteColouring rather than a pattern object.
* P1bar, P2bar, C4bar - colour swaps of the above.

Patterns whose ``vertex_colours_ignored`` flag is set still carry vertex
colours (used by blow_up to pick clique colours) but witness matching for
them is homogeneous: part clique colours are unconstrained.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Mapping, Sequence

from .census import BipartiteColouring
from .core import ColouredCompleteGraph

RED, BLUE = 0, 1


class InvalidWitnessError(ValueError):
    """A blow-up witness is structurally broken (overlap, sizes, range)."""


class SearchBudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured budget."""


@dataclass(frozen=True)
class TotallyColouredPattern:
    """A complete graph with r-coloured vertices and edges."""

    r: int
    vertex_colours: tuple[int, ...]
    edge_rows: tuple[tuple[int, ...], ...]  # full symmetric matrix, diag ignored
    vertex_colours_ignored: bool = False
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        l = len(self.vertex_colours)
        if l < 1:
            raise ValueError("pattern needs at least one vertex")
        if self.r < 2:
            raise ValueError("pattern needs r >= 2")
        if len(self.edge_rows) != l or any(len(row) != l for row in self.edge_rows):
            raise ValueError("edge colour matrix must be l x l")
        for i in range(l):
            if not 0 <= self.vertex_colours[i] < self.r:
                raise ValueError(f"vertex colour out of range at {i}")
            for j in range(i + 1, l):
                c = self.edge_rows[i][j]
                if not 0 <= c < self.r:
                    raise ValueError(f"edge colour out of range at ({i},{j})")
                if self.edge_rows[j][i] != c:
                    raise ValueError(f"edge colours not symmetric at ({i},{j})")

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_colours)

    def edge_colour(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("patterns have no self-loops")
        return self.edge_rows[i][j]

    def vertex_colour(self, i: int) -> int:
        return self.vertex_colours[i]

    @classmethod
    def from_parts(
        cls,
        r: int,
        vertex_colours: Sequence[int],
        edges: Mapping[tuple[int, int], int] | Sequence[Sequence[int]],
        default_edge_colour: int = RED,
        vertex_colours_ignored: bool = False,
        name: str | None = None,
    ) -> "TotallyColouredPattern":
        """Build from a sparse edge-colour assignment over a default colour."""
        l = len(vertex_colours)
        rows = [[default_edge_colour] * l for _ in range(l)]
        items = edges.items() if isinstance(edges, Mapping) else [((i, j), c) for i, j, c in edges]
        for (i, j), c in items:
            rows[i][j] = rows[j][i] = c
        return cls(
            r,
            tuple(vertex_colours),
            tuple(tuple(row) for row in rows),
            vertex_colours_ignored,
            name,
        )

    def swap(self) -> "TotallyColouredPattern":
        """The pattern with the two colours interchanged (r = 2 only)."""
        if self.r != 2:
            raise ValueError("colour swap is defined for 2-coloured patterns")
        l = self.num_vertices
        return TotallyColouredPattern(
            2,
            tuple(1 - c for c in self.vertex_colours),
            tuple(
                tuple((1 - self.edge_rows[i][j]) if i != j else 0 for j in range(l))
                for i in range(l)
            ),
            self.vertex_colours_ignored,
            f"{self.name}bar" if self.name else None,
        )

    def to_dict(self) -> dict:
        return {
            "l": self.num_vertices,
            "r": self.r,
            "vertexColours": list(self.vertex_colours),
            "edges": [
                [i, j, self.edge_rows[i][j]]
                for i in range(self.num_vertices)
                for j in range(i + 1, self.num_vertices)
            ],
            "vertexColoursIgnored": self.vertex_colours_ignored,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TotallyColouredPattern":
        l = int(data["l"])
        rows = [[0] * l for _ in range(l)]
        for u, v, c in data["edges"]:
            rows[u][v] = rows[v][u] = c
        return cls(
            int(data["r"]),
            tuple(int(c) for c in data["vertexColours"]),
            tuple(tuple(row) for row in rows),
            bool(data.get("vertexColoursIgnored", False)),
        )


@dataclass(frozen=True)
class BlowupWitness:
    """Disjoint host vertex sets certifying a (homogeneous) t-blow-up."""

    pattern: TotallyColouredPattern
    parts: tuple[tuple[int, ...], ...]
    t: int
    homogeneous: bool

    def to_dict(self) -> dict:
        return {
            "parts": [list(p) for p in self.parts],
            "t": self.t,
            "homogeneous": self.homogeneous,
            "pattern": self.pattern.name or self.pattern.to_dict(),
        }


def pattern_library() -> dict[str, TotallyColouredPattern | BipartiteColouring]:
    """The named patterns, keyed by the strings the CLI accepts."""
    p1 = TotallyColouredPattern.from_parts(
        2, (RED, RED), {(0, 1): BLUE}, name="P1"
    )
    p2 = TotallyColouredPattern.from_parts(
        2, (RED, BLUE), {(0, 1): RED}, name="P2"
    )
    p3 = TotallyColouredPattern.from_parts(
        2,
        (RED, BLUE, BLUE, RED),
        {(0, 1): BLUE, (1, 2): BLUE, (2, 3): BLUE},
        default_edge_colour=RED,
        name="P3",
    )
    p3o = TotallyColouredPattern.from_parts(
        2,
        (RED, BLUE, BLUE, RED),
        {(0, 1): BLUE, (1, 2): BLUE, (2, 3): BLUE},
        default_edge_colour=RED,
        vertex_colours_ignored=True,
        name="P3o",
    )
    c4 = TotallyColouredPattern.from_parts(
        2,
        (RED, RED, RED, RED),
        {(0, 2): BLUE, (1, 3): BLUE},  # red edges form the cycle 0-1-2-3-0
        default_edge_colour=RED,
        vertex_colours_ignored=True,
        name="C4",
    )
    m1 = BipartiteColouring.from_function(2, 2, lambda x, y: RED if x == y else BLUE)
    lib: dict[str, TotallyColouredPattern | BipartiteColouring] = {
        "P1": p1,
        "P2": p2,
        "P3": p3,
        "P3o": p3o,
        "C4": c4,
        "M1": m1,
        "P1bar": p1.swap(),
        "P2bar": p2.swap(),
        "C4bar": c4.swap(),
    }
    for name, pat in lib.items():
        if isinstance(pat, TotallyColouredPattern):
            object.__setattr__(pat, "name", name)
    return lib


def get_pattern(name: str) -> TotallyColouredPattern:
    lib = pattern_library()
    if name not in lib:
        raise KeyError(f"unknown pattern {name!r}; known: {sorted(lib)}")
    pat = lib[name]
    if not isinstance(pat, TotallyColouredPattern):
        raise KeyError(f"pattern {name!r} is bipartite, not a complete pattern")
    return pat


def induced_edge_pattern(
    G: ColouredCompleteGraph, S: Sequence[int], name: str | None = None
) -> TotallyColouredPattern:
    """The edge colouring G[S] as a pattern (vertex colours ignored).

    Hosts carry no vertex colours, so the pattern is flagged accordingly;
    pattern vertex i corresponds to the i-th smallest vertex of S.
    """
    verts = sorted(set(S))
    if not verts:
        raise ValueError("S must be nonempty")
    l = len(verts)
    rows = tuple(
        tuple(G.colour(verts[i], verts[j]) if i != j else 0 for j in range(l))
        for i in range(l)
    )
    return TotallyColouredPattern(
        G.r, (0,) * l, rows, vertex_colours_ignored=True, name=name
    )


def blow_up(H: TotallyColouredPattern, t: int) -> ColouredCompleteGraph:
    """The t-blow-up H[t]: vertex i becomes a t-clique in colour
    vertex_colour(i); cross edges between parts i and j get edge_colour(i,j).

    Part i occupies the contiguous vertex block [i*t, (i+1)*t).
    """
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    l = H.num_vertices

    def colour(u: int, v: int) -> int:
        pu, pv = u // t, v // t
        if pu == pv:
            return H.vertex_colour(pu)
        return H.edge_colour(pu, pv)

    return ColouredCompleteGraph.from_function(l * t, H.r, colour)


def is_unibalanced(H: TotallyColouredPattern) -> bool:
    """True iff every vertex of the 2-blow-up H[2] touches all r colours.

    Equivalently: for each vertex i, its own colour together with its
    incident edge colours covers 0..r-1.
    """
    l, r = H.num_vertices, H.r
    for i in range(l):
        seen = {H.vertex_colour(i)}
        for j in range(l):
            if j != i:
                seen.add(H.edge_colour(i, j))
        if len(seen) < r:
            return False
    return True


def verify_witness(G: ColouredCompleteGraph, w: BlowupWitness) -> bool:
    """Check a blow-up witness against the host.

    Returns False on colour mismatches; raises InvalidWitnessError when the
    witness is structurally broken (wrong part count or sizes, vertices out
    of range, overlapping parts).  Vertex-colour matching is skipped when
    the witness is homogeneous or the pattern ignores vertex colours.
    """
    H = w.pattern
    if len(w.parts) != H.num_vertices:
        raise InvalidWitnessError(
            f"witness has {len(w.parts)} parts, pattern has {H.num_vertices} vertices"
        )
    if w.t < 1:
        raise InvalidWitnessError(f"witness t must be >= 1, got {w.t}")
    seen: set[int] = set()
    for part in w.parts:
        if len(part) != w.t:
            raise InvalidWitnessError(f"part {part} does not have size t={w.t}")
        for v in part:
            if not 0 <= v < G.n:
                raise InvalidWitnessError(f"vertex {v} out of range")
            if v in seen:
                raise InvalidWitnessError(f"parts overlap at vertex {v}")
            seen.add(v)

    # t = 1 parts are vacuously monochromatic in any colour
    fixed_part_colours = not (w.homogeneous or H.vertex_colours_ignored)
    for i, part in enumerate(w.parts):
        if len(part) >= 2:
            c0 = G.colour(part[0], part[1])
            for u, v in itertools.combinations(part, 2):
                if G.colour(u, v) != c0:
                    return False
            if fixed_part_colours and c0 != H.vertex_colour(i):
                return False
    for i in range(len(w.parts)):
        for j in range(i + 1, len(w.parts)):
            want = H.edge_colour(i, j)
            for u in w.parts[i]:
                for v in w.parts[j]:
                    if G.colour(u, v) != want:
                        return False
    return True


DEFAULT_SEARCH_BUDGET = 10**12


def find_pattern_blowup_exhaustive(
    G: ColouredCompleteGraph,
    H: TotallyColouredPattern,
    t: int,
    homogeneous: bool = False,
    budget: int = DEFAULT_SEARCH_BUDGET,
) -> BlowupWitness | None:
    """Exhaustive search for a t-blow-up of H in G.

    Returns the lexicographically least witness (parts in pattern order,
    each part sorted) or None.  The nominal search space C(n,t)^l is
    checked against ``budget`` before starting; the actual search prunes
    via per-part candidate bitmasks.
    """
    l = H.num_vertices
    if l > 8:
        raise ValueError("exhaustive blow-up search supports patterns with l <= 8")
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    if comb(G.n, t) ** l > budget:
        raise SearchBudgetExceeded(
            f"C({G.n},{t})^{l} = {comb(G.n, t) ** l} exceeds budget {budget}"
        )
    used_colours = {H.edge_colour(i, j) for i in range(l) for j in range(i + 1, l)}
    if not (homogeneous or H.vertex_colours_ignored):
        used_colours.update(H.vertex_colour(i) for i in range(l))
    if used_colours and max(used_colours) >= G.r:
        return None
    n = G.n
    full = (1 << n) - 1
    match_part_colours = not (homogeneous or H.vertex_colours_ignored)
    bits = [G.colour_bits(c) for c in range(G.r)]

    def part_candidates(mask: int) -> list[int]:
        out = []
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            out.append(v)
        return out

    parts: list[tuple[int, ...]] = []

    def clique_colour(verts: tuple[int, ...]) -> int | None:
        """Colour of the monochromatic clique on verts, else None."""
        if len(verts) == 1:
            return -1  # any colour, no constraint
        c0 = G.colour(verts[0], verts[1])
        for u, v in itertools.combinations(verts, 2):
            if G.colour(u, v) != c0:
                return None
        return c0

    def search(i: int, allowed: tuple[int, ...], used: int) -> BlowupWitness | None:
        if i == l:
            return BlowupWitness(H, tuple(parts), t, homogeneous)
        cand_mask = allowed[i] & ~used
        cands = part_candidates(cand_mask)
        if len(cands) < t:
            return None
        for verts in itertools.combinations(cands, t):
            cc = clique_colour(verts)
            if cc is None:
                continue
            if match_part_colours and cc != -1 and cc != H.vertex_colour(i):
                continue
            new_allowed = list(allowed)
            ok = True
            for j in range(i + 1, l):
                m = new_allowed[j]
                want = H.edge_colour(i, j)
                for u in verts:
                    m &= bits[want][u]
                    if not m:
                        ok = False
                        break
                new_allowed[j] = m
                if not ok:
                    break
            if not ok:
                continue
            parts.append(verts)
            found = search(i + 1, tuple(new_allowed), used | sum(1 << v for v in verts))
            if found is not None:
                return found
            parts.pop()
        return None

    return search(0, tuple(full for _ in range(l)), 0)


# ---------------------------------------------------------------------------
# Isomorphism of small coloured objects (exhaustive, l <= 8)
# ---------------------------------------------------------------------------

def coloured_graphs_isomorphic(
    G1: ColouredCompleteGraph, G2: ColouredCompleteGraph
) -> bool:
    """Colour-preserving isomorphism of small edge-coloured complete graphs."""
    if G1.n != G2.n or G1.r != G2.r:
        return False
    if G1.n > 8:
        raise ValueError("exhaustive isomorphism supports n <= 8")
    n = G1.n
    for perm in itertools.permutations(range(n)):
        if all(
            G2.colour(perm[u], perm[v]) == G1.colour(u, v)
            for u in range(n)
            for v in range(u + 1, n)
        ):
            return True
    return False


def patterns_isomorphic(H1: TotallyColouredPattern, H2: TotallyColouredPattern) -> bool:
    """Isomorphism of totally coloured patterns.

    Vertex colours are compared unless both patterns flag them ignored.
    """
    if H1.num_vertices != H2.num_vertices or H1.r != H2.r:
        return False
    if H1.num_vertices > 8:
        raise ValueError("exhaustive isomorphism supports l <= 8")
    l = H1.num_vertices
    check_vertices = not (H1.vertex_colours_ignored and H2.vertex_colours_ignored)
    for perm in itertools.permutations(range(l)):
        if check_vertices and any(
            H2.vertex_colour(perm[i]) != H1.vertex_colour(i) for i in range(l)
        ):
            continue
        if all(
            H2.edge_colour(perm[i], perm[j]) == H1.edge_colour(i, j)
            for i in range(l)
            for j in range(i + 1, l)
        ):
            return True
    return False
