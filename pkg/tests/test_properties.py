"""Randomised invariant suites on seeded graph samples plus the structural
laws that hold for every constructed family."""

import random

from locdt.graphs import (
    INF,
    Graph,
    analyze,
    bfs_distances,
    diameter,
    distance2_components,
    girth,
    lift_group,
    lift_to_subdivision,
    line_graph,
    moore_bound,
    sphere,
    subdivision,
)
from locdt.geometry import hoffman_singleton, petersen, petersen_s5


def random_connected_graph(rng, max_n=40):
    """Random spanning tree plus a few extra edges; always connected."""
    n = rng.randint(2, max_n)
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    extra = rng.randint(0, max(1, n))
    for _ in range(extra):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph(n, sorted(edges))


def random_connected_bipartite(rng, max_n=40):
    """Random tree (bipartite by construction) plus random extra edges
    across its two colour classes."""
    n = rng.randint(2, max_n)
    color = [0] * n
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
        color[v] = 1 - color[u]
    for _ in range(rng.randint(0, n)):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v and color[u] != color[v]:
            edges.add((min(u, v), max(u, v)))
    return Graph(n, sorted(edges))


def test_delta_in_range_random_graphs():
    rng = random.Random(20260809)
    for _ in range(200):
        g = random_connected_graph(rng)
        d = diameter(g)
        s, _ = subdivision(g)
        dd = diameter(s)
        assert 2 * d <= dd <= 2 * d + 2


def test_bipartite_doubles_diameter_exactly():
    rng = random.Random(4242)
    for _ in range(200):
        g = random_connected_bipartite(rng)
        s, _ = subdivision(g)
        assert diameter(s) == 2 * diameter(g)


def test_girth_doubles_under_subdivision():
    rng = random.Random(99)
    seen_cycles = 0
    for _ in range(200):
        g = random_connected_graph(rng)
        gi = girth(g)
        s, _ = subdivision(g)
        if gi == INF:
            assert girth(s) == INF
        else:
            seen_cycles += 1
            assert girth(s) == 2 * gi
    assert seen_cycles > 100  # the sample must actually exercise the law


def test_distance2_components_reproduce_base_and_line_graph():
    rng = random.Random(7)
    checked = 0
    for _ in range(200):
        g = random_connected_bipartite(rng)
        if g.m < 2:
            continue
        s, _ = subdivision(g)
        a, b = distance2_components(s)
        assert a.adjacency == g.adjacency
        assert b.adjacency == line_graph(g).adjacency
        checked += 1
    assert checked > 150


def test_moore_bound_matches_independent_evaluation():
    # tree-counting oracle: breadth-first levels of the hypothetical
    # minimal graph, grown leaf by leaf
    def tree_count(k, g):
        if g % 2 == 1:
            total, layer = 1, k
            for _ in range((g - 1) // 2):
                total += layer
                layer *= k - 1
            return total
        total, layer = 0, 1
        for _ in range(g // 2):
            total += layer
            layer *= k - 1
        return 2 * total

    for k in range(3, 8):
        for g in range(4, 9):
            assert moore_bound(k, g) == tree_count(k, g)


def test_sphere_size_law_on_odd_girth_cages():
    # for a (k, 2d+1)-cage, the odd spheres around any edge vertex have
    # sizes 2(k-1)^(i-1) and the last one has size (k-1)^d
    for g in (petersen(), hoffman_singleton()):
        rep = analyze(g)
        assert rep.is_cage and rep.girth % 2 == 1
        k = rep.valency_max
        d = (rep.girth - 1) // 2
        s, smap = subdivision(g)
        for e in range(g.n, g.n + smap.m):
            dist = bfs_distances(s, e)
            for i in range(1, d + 1):
                size = sum(1 for v in range(s.n) if dist[v] == 2 * i - 1)
                assert size == 2 * (k - 1) ** (i - 1)
            top = sum(1 for v in range(s.n) if dist[v] == 2 * d + 1)
            assert top == (k - 1) ** d


def test_lift_is_a_homomorphism():
    g, s5 = petersen_s5()
    _, smap = subdivision(g)
    rng = random.Random(3)
    elements = list(s5.elements())
    for _ in range(25):
        p = rng.choice(elements)
        q = rng.choice(elements)
        lifted = lift_to_subdivision(p * q, smap)
        split = lift_to_subdivision(p, smap) * lift_to_subdivision(q, smap)
        assert lifted.images == split.images


def test_sphere_partition_is_exact():
    rng = random.Random(11)
    for _ in range(50):
        g = random_connected_graph(rng, max_n=25)
        x = rng.randrange(g.n)
        dist = bfs_distances(g, x)
        ecc = max(dist)
        total = 0
        for i in range(ecc + 1):
            total += len(sphere(g, x, i))
        assert total == g.n


def test_lifted_group_acts_on_subdivision():
    g, s5 = petersen_s5()
    s, smap = subdivision(g)
    lifted = lift_group(s5, smap)
    assert lifted.order() == 120
    part = lifted.orbits()
    assert sorted(part.sizes()) == [10, 15]
