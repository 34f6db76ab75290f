import itertools
import random
from fractions import Fraction

import pytest

from localbalance import (
    BipartiteIncidence,
    CanonicalHypergraph,
    ColouredCompleteGraph,
    FinderConfig,
    blow_up,
    canonical_partition,
    find_homogeneous_blowup,
    get_pattern,
    hypergraph_cover,
    kst_star,
    make_Pk,
    make_random,
    min_degree_cleanup,
    ramsey_bound,
    ramsey_clique,
    verify_witness,
)
from localbalance.blowup_finder import _canonical_copies, _random_equitable_partition

RED, BLUE = 0, 1


def random_hypergraph(rng, l, part_size, density):
    parts = [
        tuple(range(i * part_size, (i + 1) * part_size)) for i in range(l)
    ]
    edges = [
        e
        for e in itertools.product(*parts)
        if rng.random() < density
    ]
    return CanonicalHypergraph.from_edges(parts, edges)


def naive_cleanup_fixpoint(Hg, threshold):
    """Repeat full rescans of the edge list until nothing changes."""
    edges = set(Hg.edges())
    cut = Fraction(threshold) * len(Hg.parts[-1])
    while True:
        degrees = {}
        for e in edges:
            degrees[e[:-1]] = degrees.get(e[:-1], 0) + 1
        bad = {p for p, d in degrees.items() if 0 < d < cut}
        if not bad:
            break
        edges = {e for e in edges if e[:-1] not in bad}
    return edges


class TestCanonicalHypergraph:
    def test_edge_accounting(self):
        parts = [(0, 1), (2, 3), (4, 5)]
        edges = [(0, 2, 4), (0, 2, 5), (1, 3, 4)]
        Hg = CanonicalHypergraph.from_edges(parts, edges)
        assert Hg.edge_count == 3
        assert list(Hg.edges()) == sorted(edges)
        assert Hg.prefix_degree((0, 2)) == 2
        assert Hg.prefix_degree((1, 2)) == 0

    def test_rejects_duplicates_and_strays(self):
        parts = [(0, 1), (2, 3)]
        with pytest.raises(ValueError, match="duplicate"):
            CanonicalHypergraph.from_edges(parts, [(0, 2), (0, 2)])
        with pytest.raises(ValueError, match="not in part"):
            CanonicalHypergraph.from_edges(parts, [(0, 4)])
        with pytest.raises(ValueError, match="one vertex per part"):
            CanonicalHypergraph.from_edges(parts, [(0, 2, 3)])

    def test_shadow(self):
        parts = [(0, 1), (2, 3), (4, 5)]
        Hg = CanonicalHypergraph.from_edges(parts, [(0, 2, 4), (0, 2, 5), (1, 2, 4)])
        sh = Hg.shadow()
        assert sh.parts == ((0, 1), (2, 3))
        assert list(sh.edges()) == [(0, 2), (1, 2)]


class TestMinDegreeCleanup:
    def test_identity_when_degrees_high(self):
        parts = [(0, 1), (2, 3)]
        Hg = CanonicalHypergraph.from_edges(
            parts, [(0, 2), (0, 3), (1, 2), (1, 3)]
        )
        out = min_degree_cleanup(Hg, Fraction(1, 2))
        assert set(out.edges()) == set(Hg.edges())

    def test_single_edge_below_threshold_emptied(self):
        parts = [(0, 1), (2, 3)]
        Hg = CanonicalHypergraph.from_edges(parts, [(0, 2)])
        assert min_degree_cleanup(Hg, Fraction(3, 4)).is_empty

    def test_matches_naive_fixpoint_oracle(self):
        rng = random.Random(5)
        for _ in range(100):
            l = rng.randrange(2, 5)
            Hg = random_hypergraph(rng, l, rng.randrange(2, 7), rng.random())
            thr = Fraction(rng.randrange(0, 8), 8)
            got = set(min_degree_cleanup(Hg, thr).edges())
            assert got == naive_cleanup_fixpoint(Hg, thr)

    def test_idempotent(self):
        rng = random.Random(6)
        for _ in range(10):
            Hg = random_hypergraph(rng, 3, 4, 0.4)
            once = min_degree_cleanup(Hg, Fraction(1, 4))
            twice = min_degree_cleanup(once, Fraction(1, 4))
            assert set(once.edges()) == set(twice.edges())

    def test_shadow_degrees_meet_threshold_after_cleanup(self):
        rng = random.Random(7)
        for _ in range(20):
            Hg = random_hypergraph(rng, 3, 5, 0.3)
            thr = Fraction(2, 5)
            cleaned = min_degree_cleanup(Hg, thr)
            if cleaned.is_empty:
                continue
            cut = thr * len(cleaned.parts[-1])
            for prefix in cleaned.shadow().edges():
                assert cleaned.prefix_degree(prefix) >= cut


class TestCanonicalPartition:
    def test_planted_c4_count_under_planted_partition(self):
        for t in (2, 3):
            pat = get_pattern("C4")
            G = blow_up(pat, t)
            parts = [tuple(range(i * t, (i + 1) * t)) for i in range(4)]
            copies = _canonical_copies(G, pat, parts)
            assert len(copies) == t**4

    def test_planted_p3o_has_edges_after_retries(self):
        pat = get_pattern("P3o")
        G = blow_up(pat, 5)
        for seed in range(5):
            res = canonical_partition(G, pat, FinderConfig(seed=seed))
            assert res.hypergraph.edge_count >= 1

    def test_zero_copy_host_best_effort(self):
        mono = ColouredCompleteGraph.from_function(8, 2, lambda u, v: RED)
        res = canonical_partition(mono, get_pattern("P3o"), FinderConfig(seed=0, max_partition_retries=3))
        assert res.hypergraph.edge_count == 0
        assert not res.met_target
        assert res.achieved_copies == 0

    def test_partition_equitable(self):
        rng = random.Random(3)
        for n, l in ((10, 4), (12, 3), (9, 2)):
            parts = _random_equitable_partition(rng, n, l)
            sizes = [len(p) for p in parts]
            assert min(sizes) >= n // l
            assert sum(sizes) == n
            assert sorted(v for p in parts for v in p) == list(range(n))

    def test_met_target_on_dense_planted(self):
        pat = get_pattern("C4")
        G = blow_up(pat, 6)
        res = canonical_partition(G, pat, FinderConfig(c=Fraction(1, 10**6), seed=1))
        assert res.met_target


class TestKstStar:
    def test_complete_bipartite_gives_whole_b(self):
        F = BipartiteIncidence(("a", "b", "c"), (0b111,) * 3, 0b111)
        for s in (1, 2, 3):
            star = kst_star(F, s, FinderConfig())
            assert star is not None
            assert star.common == 0b111
            assert len(star.members) == s

    def test_planted_block_recovered_exactly(self):
        # A = 6 items; items 0..2 share neighbourhood {0..4}; others sparse
        planted = 0b11111
        nbrs = (planted, planted, planted, 0b1, 0b10, 0b100)
        F = BipartiteIncidence(tuple(range(6)), nbrs, (1 << 5) - 1)
        star = kst_star(F, 3, FinderConfig())
        assert star.mode == "exact"
        assert set(star.members) == {0, 1, 2}
        assert star.common == planted

    def test_empty_graph_none(self):
        F = BipartiteIncidence((0, 1), (0, 0), 0b11)
        assert kst_star(F, 1, FinderConfig()) is None

    def test_greedy_mode_on_large_a(self):
        rng = random.Random(2)
        n_a, n_b = 30, 20
        nbrs = tuple(rng.getrandbits(n_b) | 1 for _ in range(n_a))
        F = BipartiteIncidence(tuple(range(n_a)), nbrs, (1 << n_b) - 1)
        star = kst_star(F, 15, FinderConfig(subset_search_budget=100))
        assert star is None or star.mode == "greedy"

    def test_result_is_complete_bipartite(self):
        rng = random.Random(9)
        for _ in range(10):
            n_a, n_b = 8, 10
            nbrs = tuple(rng.getrandbits(n_b) for _ in range(n_a))
            F = BipartiteIncidence(tuple(range(n_a)), nbrs, (1 << n_b) - 1)
            star = kst_star(F, 3, FinderConfig())
            if star is None:
                continue
            for item in star.members:
                assert star.common & ~nbrs[item] == 0

    def test_nonempty_under_density_hypothesis(self):
        # e(F) >= c m n and s <= (c/2) m + 1 guarantee a nonempty result in
        # exact mode (the double-counting bound behind the star lemma)
        rng = random.Random(13)
        for _ in range(20):
            m, n_b = 10, 12
            c = Fraction(1, 2)
            while True:
                nbrs = tuple(rng.getrandbits(n_b) for _ in range(m))
                if sum(x.bit_count() for x in nbrs) >= c * m * n_b:
                    break
            s = int((c / 2) * m) + 1
            F = BipartiteIncidence(tuple(range(m)), nbrs, (1 << n_b) - 1)
            star = kst_star(F, s, FinderConfig())
            assert star is not None
            assert star.common != 0


class TestRamseyClique:
    def test_monochromatic_input_returns_everything(self):
        verts = list(range(10))
        clique, colour = ramsey_clique(verts, lambda u, v: RED, 2)
        assert clique == tuple(verts)
        assert colour == RED

    def test_seeded_k16(self):
        rng = random.Random(4)
        table = {}
        for u in range(16):
            for v in range(u + 1, 16):
                table[(u, v)] = rng.randrange(2)
        phi = lambda u, v: table[(min(u, v), max(u, v))]
        clique, colour = ramsey_clique(range(16), phi, 2)
        assert len(clique) >= 2
        for u, v in itertools.combinations(clique, 2):
            assert phi(u, v) == colour

    def test_split_with_red_cross(self):
        def phi(u, v):
            same = (u < 8) == (v < 8)
            if not same:
                return RED
            return RED if u < 8 else BLUE

        clique, colour = ramsey_clique(range(16), phi, 2)
        assert len(clique) >= 4
        for u, v in itertools.combinations(clique, 2):
            assert phi(u, v) == colour

    def test_greedy_bound_two_colours(self):
        rng = random.Random(8)
        for n in (4, 16, 64, 100):
            table = {}
            for u in range(n):
                for v in range(u + 1, n):
                    table[(u, v)] = rng.randrange(2)
            phi = lambda u, v: table[(min(u, v), max(u, v))]
            clique, colour = ramsey_clique(range(n), phi, 2)
            assert len(clique) >= ramsey_bound(n, 2)

    def test_greedy_bound_three_colours(self):
        rng = random.Random(3)
        for n in (36, 100, 216):
            table = {}
            for u in range(n):
                for v in range(u + 1, n):
                    table[(u, v)] = rng.randrange(3)
            phi = lambda u, v: table[(min(u, v), max(u, v))]
            clique, colour = ramsey_clique(range(n), phi, 3)
            assert len(clique) >= ramsey_bound(n, 3)
            for u, v in itertools.combinations(clique, 2):
                assert phi(u, v) == colour

    def test_bound_values(self):
        assert ramsey_bound(16, 2) == 2
        assert ramsey_bound(63, 2) == 2
        assert ramsey_bound(64, 2) == 3
        assert ramsey_bound(1, 2) == 0
        assert ramsey_bound(216, 3) == 3

    def test_single_vertex(self):
        clique, colour = ramsey_clique([7], lambda u, v: RED, 2)
        assert clique == (7,)
        assert colour == 0


def cover_contract_holds(Hg, cover, phi):
    """The three covering conditions, checked directly."""
    # (a) phi constant on each set
    for S in cover.sets:
        for u, v in itertools.combinations(S, 2):
            if phi(u, v) != phi(S[0], S[1]):
                return False
    # (b) every cross pair lies in a hypergraph edge
    pair_sets = set()
    for e in Hg.edges():
        for u, v in itertools.combinations(e, 2):
            pair_sets.add((min(u, v), max(u, v)))
    for i in range(len(cover.sets)):
        for j in range(i + 1, len(cover.sets)):
            for u in cover.sets[i]:
                for v in cover.sets[j]:
                    if (min(u, v), max(u, v)) not in pair_sets:
                        return False
    # (c) an explicit matching of |S1| disjoint edges of Hg on the union
    if len(cover.matching) != len(cover.sets[0]):
        return False
    union = set().union(*map(set, cover.sets))
    seen = set()
    all_edges = set(Hg.edges())
    for e in cover.matching:
        if e not in all_edges or set(e) & seen or not set(e) <= union:
            return False
        seen.update(e)
    return True


class TestHypergraphCover:
    def test_base_case_all_singletons_mono(self):
        Hg = CanonicalHypergraph.from_edges([(0, 1, 2, 3)], [(v,) for v in range(4)])
        cover = hypergraph_cover(Hg, lambda u, v: RED, 2, FinderConfig())
        assert cover.sets == ((0, 1, 2, 3),)
        assert cover.colours == (RED,)
        assert len(cover.matching) == 4

    def test_planted_product_recovers_parts(self):
        t = 3
        pat = get_pattern("C4")
        G = blow_up(pat, t)
        parts = [tuple(range(i * t, (i + 1) * t)) for i in range(4)]
        Hg = CanonicalHypergraph.from_edges(parts, _canonical_copies(G, pat, parts))
        cover = hypergraph_cover(Hg, G.colour, 2, FinderConfig())
        assert cover.sets == tuple(parts)
        assert cover_contract_holds(Hg, cover, G.colour)

    def test_single_edge(self):
        parts = [(0, 1), (2, 3), (4, 5)]
        Hg = CanonicalHypergraph.from_edges(parts, [(1, 2, 5)])
        cover = hypergraph_cover(Hg, lambda u, v: RED, 2, FinderConfig())
        assert cover.sets == ((1,), (2,), (5,))
        assert cover.matching == ((1, 2, 5),)

    def test_contract_on_random_hypergraphs(self):
        rng = random.Random(10)
        for _ in range(25):
            l = rng.randrange(1, 5)
            Hg = random_hypergraph(rng, l, rng.randrange(2, 6), 0.5)
            if Hg.is_empty:
                continue
            table = {}
            phi = lambda u, v: table.setdefault(
                (min(u, v), max(u, v)), rng.randrange(2)
            )
            cover = hypergraph_cover(Hg, phi, 2, FinderConfig())
            assert cover.min_size >= 1
            assert cover_contract_holds(Hg, cover, phi)

    def test_empty_rejected(self):
        Hg = CanonicalHypergraph([(0, 1)], {})
        with pytest.raises(ValueError):
            hypergraph_cover(Hg, lambda u, v: RED, 2, FinderConfig())


class TestFindHomogeneousBlowup:
    def test_planted_hosts_reach_two(self):
        for name in ("C4", "P3o"):
            pat = get_pattern(name)
            G = blow_up(pat, 6)
            res = find_homogeneous_blowup(G, pat, FinderConfig(seed=0), target_t=2)
            assert res.achieved_t >= 2
            assert res.witness is not None
            assert verify_witness(G, res.witness)

    def test_mono_host_no_copies(self):
        mono = ColouredCompleteGraph.from_function(10, 2, lambda u, v: RED)
        res = find_homogeneous_blowup(
            mono, get_pattern("P3o"), FinderConfig(seed=0, max_partition_retries=4)
        )
        assert res.achieved_t == 0
        assert res.witness is None

    def test_pk8_p3o(self):
        G = make_Pk(8)
        res = find_homogeneous_blowup(
            G, get_pattern("P3o"), FinderConfig(seed=2, max_partition_retries=128),
            target_t=2,
        )
        assert res.achieved_t >= 2
        assert verify_witness(G, res.witness)

    def test_deterministic_per_seed(self):
        G = make_Pk(4)
        cfg = FinderConfig(seed=5, max_partition_retries=16)
        a = find_homogeneous_blowup(G, get_pattern("P3o"), cfg, target_t=2)
        b = find_homogeneous_blowup(G, get_pattern("P3o"), cfg, target_t=2)
        assert a == b

    def test_witnesses_always_verify_on_random_hosts(self):
        for seed in range(6):
            G = make_random(16, 2, seed)
            res = find_homogeneous_blowup(
                G, get_pattern("C4"), FinderConfig(seed=seed, max_partition_retries=8)
            )
            if res.witness is not None:
                assert verify_witness(G, res.witness)

    def test_asymptotic_target_reported(self):
        G = make_Pk(4)
        res = find_homogeneous_blowup(G, get_pattern("P3o"), FinderConfig(seed=1))
        assert res.asymptotic_target_t >= 0.0
