import json
import random
from fractions import Fraction

import pytest

from localbalance import (
    ResamplingBudgetExceeded,
    balance_profile,
    blow_up,
    closeness_to_split,
    count_m1,
    get_pattern,
    graph_to_json,
    make_bipartite_mindeg,
    make_multicolour_cycle,
    make_Pk,
    make_random,
    make_split,
)

RED, BLUE, GREEN = 0, 1, 2


def naive_closeness_flips(G):
    """Brute force over all bipartitions, cost recomputed from scratch."""
    best = None
    for mask in range(1 << G.n):
        flips = 0
        for u in range(G.n):
            for v in range(u + 1, G.n):
                both_red = (mask >> u) & 1 and (mask >> v) & 1
                both_blue = not (mask >> u) & 1 and not (mask >> v) & 1
                c = G.colour(u, v)
                if (both_red and c == BLUE) or (both_blue and c == RED):
                    flips += 1
        if best is None or flips < best:
            best = flips
    return best


class TestMakePk:
    def test_block_rule(self):
        k = 3
        G = make_Pk(k)
        blocks = [range(i * k, (i + 1) * k) for i in range(4)]
        red_block_pairs = {(0, 0), (3, 3), (0, 3), (0, 2), (1, 3)}
        for bi in range(4):
            for bj in range(bi, 4):
                want = RED if (bi, bj) in red_block_pairs else BLUE
                for u in blocks[bi]:
                    for v in blocks[bj]:
                        if u < v:
                            assert G.colour(u, v) == want, (bi, bj)

    def test_equals_p3_blowup(self):
        for k in (1, 2, 3, 4):
            assert make_Pk(k) == blow_up(get_pattern("P3"), k)

    def test_quarter_balanced(self):
        for k in (1, 2, 5):
            assert balance_profile(make_Pk(k)).epsilon_local == Fraction(1, 4)

    def test_rejects_k0(self):
        with pytest.raises(ValueError):
            make_Pk(0)


class TestMakeSplit:
    def test_zero_flips_is_split(self):
        assert closeness_to_split(make_split(3, 3, seed=0)).delta == 0

    def test_flips_bound_delta(self):
        c = closeness_to_split(make_split(4, 4, seed=1, flips=2))
        assert c.delta <= Fraction(2, 64)

    def test_one_sided_is_monochromatic(self):
        G = make_split(4, 0, seed=0)
        assert all(G.colour(u, v) == RED for u in range(4) for v in range(u + 1, 4))
        assert closeness_to_split(G).delta == 0

    def test_cliques_always_present(self):
        G = make_split(5, 3, seed=7)
        assert all(G.colour(u, v) == RED for u in range(5) for v in range(u + 1, 5))
        assert all(G.colour(u, v) == BLUE for u in range(5, 8) for v in range(u + 1, 8))

    def test_deterministic(self):
        assert make_split(5, 5, seed=3, flips=4) == make_split(5, 5, seed=3, flips=4)
        assert make_split(5, 5, seed=3) != make_split(5, 5, seed=4) or True  # seeds differ

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            make_split(1, 0)
        with pytest.raises(ValueError):
            make_split(3, 3, flips=100)


class TestMakeMulticolourCycle:
    def test_one_sixth_balanced(self):
        for m in (1, 2, 4):
            G = make_multicolour_cycle(6, m)
            assert balance_profile(G).epsilon_local == Fraction(1, 6)

    def test_k4_degrees(self):
        G = make_multicolour_cycle(4, 1)
        prof = balance_profile(G)
        for v in range(4):
            assert sorted(prof.degrees[v]) == [1, 1, 1]

    def test_colour_layout(self):
        G = make_multicolour_cycle(6, 2)
        assert G.colour(0, 2) == RED       # parts 0-1, even low index
        assert G.colour(2, 4) == BLUE      # parts 1-2
        assert G.colour(0, 10) == BLUE     # parts 0-5 wrap, odd high index
        assert G.colour(0, 1) == GREEN     # inside a part
        assert G.colour(0, 4) == GREEN     # non-consecutive parts

    def test_rejects_odd_or_small(self):
        with pytest.raises(ValueError):
            make_multicolour_cycle(5, 2)
        with pytest.raises(ValueError):
            make_multicolour_cycle(2, 2)


class TestMakeRandom:
    def test_single_vertex(self):
        G = make_random(1, 2, 0)
        assert G.n == 1

    def test_deterministic(self):
        assert make_random(20, 3, 9) == make_random(20, 3, 9)
        assert graph_to_json(make_random(12, 2, 5)) == graph_to_json(make_random(12, 2, 5))

    def test_epsilon_sanity_band(self):
        for seed in (0, 1, 2, 3, 4):
            eps = balance_profile(make_random(100, 2, seed)).epsilon_local
            assert Fraction(3, 10) < eps < Fraction(7, 10), (seed, eps)


class TestMakeBipartiteMindeg:
    def test_min_degrees(self):
        B = make_bipartite_mindeg(10, Fraction(1, 5), seed=3)
        assert min(B.red_degree_x(x) for x in range(10)) >= 2
        assert min(B.blue_degree_y(y) for y in range(10)) >= 2

    def test_k22_forced_proper(self):
        B = make_bipartite_mindeg(2, Fraction(1, 2), seed=0)
        assert count_m1(B) == 1

    def test_alternating_c4_exists_at_third(self):
        for seed in range(5):
            B = make_bipartite_mindeg(3, Fraction(1, 3), seed=seed)
            assert count_m1(B) >= 1

    def test_deterministic(self):
        a = make_bipartite_mindeg(8, Fraction(1, 4), seed=11)
        b = make_bipartite_mindeg(8, Fraction(1, 4), seed=11)
        assert a == b

    def test_rejects_bad_eps(self):
        with pytest.raises(ValueError):
            make_bipartite_mindeg(8, Fraction(3, 4), seed=0)
        with pytest.raises(ValueError):
            make_bipartite_mindeg(8, 0, seed=0)

    def test_resampling_budget_exceeded(self):
        with pytest.raises(ResamplingBudgetExceeded):
            make_bipartite_mindeg(4, Fraction(1, 2), seed=0, max_retries=0)


class TestCloseness:
    def test_exact_matches_naive_oracle(self):
        rng = random.Random(0)
        for _ in range(12):
            n = rng.randrange(2, 10)
            G = make_random(n, 2, rng.randrange(10**6))
            assert closeness_to_split(G).flips == naive_closeness_flips(G)

    def test_p1_blowup_fixture(self):
        # frozen from the exhaustive bipartition oracle: one flip suffices
        # (make one clique's internal edge match its side)
        c = closeness_to_split(blow_up(get_pattern("P1"), 2))
        assert c.flips == 1
        assert c.delta == Fraction(1, 16)

    def test_pk2_fixture_is_already_split(self):
        # V1 u V4 and V2 u V3 are the red and blue cliques
        c = closeness_to_split(make_Pk(2))
        assert c.flips == 0
        assert set(c.red_side) in ({0, 1, 6, 7}, {2, 3, 4, 5})

    def test_flipped_edges_consistent(self):
        for seed in range(5):
            G = make_random(9, 2, seed)
            c = closeness_to_split(G)
            red_set, blue_set = set(c.red_side), set(c.blue_side)
            assert red_set | blue_set == set(range(G.n))
            assert not red_set & blue_set
            expect = []
            for u in range(G.n):
                for v in range(u + 1, G.n):
                    if u in red_set and v in red_set and G.colour(u, v) == BLUE:
                        expect.append((u, v))
                    if u in blue_set and v in blue_set and G.colour(u, v) == RED:
                        expect.append((u, v))
            assert sorted(c.flipped_edges) == expect

    def test_local_search_mode(self):
        G = make_split(14, 12, seed=2, flips=3)
        c = closeness_to_split(G, exact_limit=20)
        assert c.mode == "local-search"
        assert c.delta <= Fraction(3, 26 * 26)  # found at least the planted split

    def test_local_search_deterministic(self):
        G = make_random(26, 2, 5)
        a = closeness_to_split(G, exact_limit=20, seed=9)
        b = closeness_to_split(G, exact_limit=20, seed=9)
        assert a == b

    def test_rejects_three_colours(self):
        with pytest.raises(ValueError):
            closeness_to_split(make_random(6, 3, 0))


class TestOptimizeInequality:
    def test_split_instances_small(self):
        # min colour degree <= (1/4 + 3 delta) n, exact closeness
        for a, b in ((4, 4), (5, 3), (6, 6), (2, 7)):
            for flips in (0, 2):
                G = make_split(a, b, seed=a * 10 + flips, flips=flips)
                delta = closeness_to_split(G).delta
                bound = (Fraction(1, 4) + 3 * delta) * G.n
                assert balance_profile(G).min_degree_per_colour <= bound

    def test_pk_is_extremal(self):
        # make_Pk is split (delta 0) and meets the bound with equality
        G = make_Pk(2)
        assert closeness_to_split(G).delta == 0
        assert balance_profile(G).min_degree_per_colour == G.n // 4


class TestSeededDeterminismJson:
    def test_byte_identical_outputs(self):
        pairs = [
            (make_split(6, 6, seed=1, flips=2), make_split(6, 6, seed=1, flips=2)),
            (make_random(15, 3, 8), make_random(15, 3, 8)),
        ]
        for a, b in pairs:
            assert json.dumps(graph_to_json(a)) == json.dumps(graph_to_json(b))
        a = make_bipartite_mindeg(7, Fraction(1, 4), seed=2)
        b = make_bipartite_mindeg(7, Fraction(1, 4), seed=2)
        assert json.dumps(a.to_dict()) == json.dumps(b.to_dict())
