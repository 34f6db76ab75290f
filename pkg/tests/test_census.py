import itertools
import random
from math import comb

import pytest

from localbalance import (
    ALTERNATING_SPLITS_PER_CLASS,
    BipartiteColouring,
    C4_KEY,
    C4BAR_KEY,
    CLASS_KEYS,
    ColouredCompleteGraph,
    P3O_KEY,
    blow_up,
    census_k4,
    census_k4_reference,
    colour_swap,
    count_alternating_c4,
    count_m1,
    count_m1_reference,
    get_pattern,
    m1_copies_in_quadruples,
    make_Pk,
    make_random,
    make_split,
)
from localbalance.census import CLASS_SWAP

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

# frozen from the O(n^4) reference enumeration
PK2_CENSUS = {
    "000000": 1,
    "000001": 10,
    "000011": 8,
    "000111": 8,
    "001011": 8,
    "001100": 0,
    "001101": 16,
    "001111": 8,
    "011110": 0,
    "011111": 10,
    "111111": 1,
}


def census_by_permutation_oracle(G):
    """Third, dead-simple path: canonicalise each quadruple by minimising
    its colour tuple over all 24 relabellings."""
    counts = dict.fromkeys(CLASS_KEYS, 0)
    for quad in itertools.combinations(range(G.n), 4):
        best = None
        for perm in itertools.permutations(range(4)):
            code = tuple(
                G.colour(quad[perm[a]], quad[perm[b]]) for (a, b) in PAIRS
            )
            if best is None or code < best:
                best = code
        counts["".join(map(str, best))] += 1
    return counts


class TestClassTable:
    def test_eleven_classes(self):
        assert len(CLASS_KEYS) == 11
        assert len(set(CLASS_KEYS)) == 11

    def test_named_keys_are_distinct_classes(self):
        assert len({C4_KEY, C4BAR_KEY, P3O_KEY}) == 3

    def test_c4_key_matches_library_pattern(self):
        c4 = get_pattern("C4")
        counts = census_k4_reference(blow_up(c4, 1)).counts
        assert counts[C4_KEY] == 1
        assert sum(counts.values()) == 1

    def test_p3o_key_matches_library_pattern(self):
        counts = census_k4_reference(make_Pk(1)).counts
        assert counts[P3O_KEY] == 1

    def test_only_alternating_classes_are_the_named_three(self):
        # an alternating 4-cycle completes to exactly C4, C4bar or P3o
        alternating = {
            key
            for key, alt in zip(CLASS_KEYS, ALTERNATING_SPLITS_PER_CLASS)
            if alt > 0
        }
        assert alternating == {C4_KEY, C4BAR_KEY, P3O_KEY}

    def test_swap_fixes_p3o_and_exchanges_c4(self):
        idx = {k: i for i, k in enumerate(CLASS_KEYS)}
        assert CLASS_SWAP[idx[P3O_KEY]] == idx[P3O_KEY]
        assert CLASS_SWAP[idx[C4_KEY]] == idx[C4BAR_KEY]


class TestCensus:
    def test_mono_k6(self):
        G = ColouredCompleteGraph.from_function(6, 2, lambda u, v: 0)
        c = census_k4(G)
        assert c.count_c4 == c.count_c4bar == c.count_p3o == 0
        assert c.counts["000000"] == 15
        assert sum(c.counts.values()) == comb(6, 4)

    def test_pk1_single_p3o(self):
        c = census_k4(make_Pk(1))
        assert c.count_p3o == 1
        assert c.count_c4 == c.count_c4bar == 0

    def test_pk2_regression_fixture(self):
        assert census_k4(make_Pk(2)).counts == PK2_CENSUS
        assert census_k4_reference(make_Pk(2)).counts == PK2_CENSUS

    def test_counts_sum_to_quadruples(self):
        for seed in range(5):
            G = make_random(14, 2, seed)
            c = census_k4(G)
            assert sum(c.counts.values()) == comb(14, 4) == c.total_quadruples

    def test_optimized_equals_reference_seeded(self):
        rng = random.Random(0)
        for _ in range(30):
            n = rng.randrange(4, 25)
            G = make_random(n, 2, rng.randrange(10**6))
            assert census_k4(G).counts == census_k4_reference(G).counts

    def test_optimized_equals_reference_constructions(self):
        hosts = [make_Pk(k) for k in (1, 2, 3, 4, 5)]
        hosts += [make_split(a, 16 - a, seed=a, flips=2) for a in (4, 8, 12)]
        hosts += [blow_up(get_pattern("C4"), t) for t in (2, 4)]
        for G in hosts:
            assert census_k4(G).counts == census_k4_reference(G).counts

    def test_reference_equals_permutation_oracle(self):
        for seed in range(6):
            G = make_random(8, 2, seed)
            assert census_k4_reference(G).counts == census_by_permutation_oracle(G)

    def test_swap_symmetry(self):
        for seed in range(6):
            G = make_random(12, 2, seed)
            c = census_k4(G)
            cs = census_k4(colour_swap(G))
            assert cs.count_c4 == c.count_c4bar
            assert cs.count_c4bar == c.count_c4
            assert cs.count_p3o == c.count_p3o

    def test_rejects_three_colours(self):
        with pytest.raises(ValueError):
            census_k4(make_random(6, 3, 0))

    def test_tiny_hosts(self):
        for n in (1, 2, 3):
            c = census_k4(make_random(n, 2, 0))
            assert sum(c.counts.values()) == 0


class TestCountM1:
    def test_mono_red_k22(self):
        B = BipartiteColouring.from_function(2, 2, lambda x, y: 0)
        assert count_m1(B) == 0

    def test_proper_k22_is_one(self):
        B = BipartiteColouring.from_function(2, 2, lambda x, y: int(x == y))
        assert count_m1(B) == 1
        assert count_m1_reference(B) == 1

    def test_seeded_k55_fixture(self):
        B = BipartiteColouring.from_function(
            5, 5, lambda x, y: random.Random(42 + 11 * x + y).randrange(2)
        )
        assert count_m1_reference(B) == 12  # frozen brute-force value
        assert count_m1(B) == 12

    def test_codegree_equals_pairs_seeded(self):
        rng = random.Random(7)
        for _ in range(40):
            nx, ny = rng.randrange(1, 9), rng.randrange(1, 9)
            B = BipartiteColouring.from_function(
                nx, ny, lambda x, y: rng.randrange(2)
            )
            assert count_m1(B) == count_m1_reference(B)


class TestAlternatingC4:
    def test_p1_blowup_cross_all_blue(self):
        G = blow_up(get_pattern("P1"), 2)
        assert count_alternating_c4(G, (0, 1), (2, 3)) == 0

    def test_pk1_value(self):
        # 4 cross edges: (0,2) r, (0,3) r, (1,2) b, (1,3) r: vertex 0 sees no blue
        assert count_alternating_c4(make_Pk(1), (0, 1), (2, 3)) == 0

    def test_planted_single_alternator(self):
        def colour(u, v):
            x, y = min(u, v), max(u, v)
            if (x, y) in {(0, 4), (1, 5)}:
                return 1
            return 0

        G = ColouredCompleteGraph.from_function(6, 2, colour)
        # X = {0,1,2}, Y = {3,4,5}: only {0,1} x {4,5} alternates
        assert count_alternating_c4(G, (0, 1, 2), (3, 4, 5)) == 1

    def test_overlap_rejected(self):
        with pytest.raises(ValueError, match="disjoint"):
            count_alternating_c4(make_Pk(1), (0, 1), (1, 2))

    def test_matches_direct_enumeration(self):
        rng = random.Random(12)
        for _ in range(10):
            G = make_random(10, 2, rng.randrange(10**6))
            X, Y = (0, 1, 2, 3), (4, 5, 6, 7, 8)
            direct = 0
            for x1, x2 in itertools.combinations(X, 2):
                for y1, y2 in itertools.combinations(Y, 2):
                    a, b = G.colour(x1, y1), G.colour(x1, y2)
                    c, d = G.colour(x2, y1), G.colour(x2, y2)
                    if a != b and c != d and a != c:
                        direct += 1
            assert count_alternating_c4(G, X, Y) == direct


class TestCompletionIdentity:
    def quadruple_m1_total(self, G):
        total = 0
        for quad in itertools.combinations(range(G.n), 4):
            for (i, j), (k, l) in (
                ((0, 1), (2, 3)),
                ((0, 2), (1, 3)),
                ((0, 3), (1, 2)),
            ):
                a = G.colour(quad[i], quad[k])
                b = G.colour(quad[i], quad[l])
                c = G.colour(quad[j], quad[k])
                d = G.colour(quad[j], quad[l])
                if a != b and c != d and a != c:
                    total += 1
        return total

    def test_m1_total_matches_class_decomposition(self):
        for seed in range(5):
            G = make_random(10, 2, seed)
            assert m1_copies_in_quadruples(census_k4(G)) == self.quadruple_m1_total(G)

    def test_zero_classes_imply_zero_m1(self):
        # hosts with no C4, C4bar or P3o quadruples have no alternating splits
        hosts = [
            ColouredCompleteGraph.from_function(7, 2, lambda u, v: 0),
            blow_up(get_pattern("P1"), 3),
            blow_up(get_pattern("P2"), 3),
            make_split(5, 4, seed=0),
        ]
        for G in hosts:
            c = census_k4(G)
            if c.count_c4 + c.count_c4bar + c.count_p3o == 0:
                assert self.quadruple_m1_total(G) == 0
