"""Structural consequences checked directly on the classified rows: when
the subdivision passes at depth 2d, the base graph and its line graph are
distance transitive, the base graph is d-arc transitive with girth pinned
to {2d, 2d+1}, and it is a cage with girth in the admissible spectrum."""

import pytest

from locdt.autgrp import automorphism_group
from locdt.checks import (
    CAGE_GIRTHS,
    cage_certificate,
    check_arc_transitive,
    check_local_sdt,
)
from locdt.graphs import analyze, diameter, lift_group, line_graph, subdivision
from locdt.geometry import (
    complete_bipartite,
    cycle,
    incidence_pg2,
    incidence_w3,
    petersen_s5,
)
from locdt.harness import chamber_groups_on_w32


def _rows_for_properties():
    g, s5 = petersen_s5()
    heawood = incidence_pg2(2).graph
    tc = incidence_w3(2).graph
    return [
        ("k33", complete_bipartite(3, 3), automorphism_group(complete_bipartite(3, 3))),
        ("petersen", g, s5),
        ("pg2-q2", heawood, automorphism_group(heawood)),
        ("w3-q2-m10", tc, chamber_groups_on_w32()["m10"]),
        ("cycle-7", cycle(7), automorphism_group(cycle(7))),
    ]


@pytest.mark.parametrize("name,g,G", _rows_for_properties(), ids=lambda v: v if isinstance(v, str) else "")
def test_depth2d_pass_implies_line_graph_distance_transitive(name, g, G):
    rep = analyze(g)
    sub, smap = subdivision(g)
    lifted = lift_group(G, smap)
    assert check_local_sdt(sub, lifted, 2 * rep.diameter).verdict
    if rep.subdivision_diameter > 2 * rep.diameter + 1:
        pytest.skip("law needs subdivision diameter at most 2d+1")
    # base graph: vertex transitive and locally distance transitive
    assert len(G.orbit(0)) == g.n
    assert check_local_sdt(g, G, rep.diameter).verdict
    # line graph with the induced edge action
    lg = line_graph(g)
    edge_action = lifted.restrict(range(g.n, g.n + smap.m))
    assert len(edge_action.orbit(0)) == lg.n
    assert check_local_sdt(lg, edge_action, diameter(lg)).verdict


@pytest.mark.parametrize("name,g,G", _rows_for_properties(), ids=lambda v: v if isinstance(v, str) else "")
def test_depth2d_pass_implies_d_arc_transitive_and_girth_window(name, g, G):
    rep = analyze(g)
    if rep.valency_max < 3:
        pytest.skip("valency at least 3 required")
    assert check_arc_transitive(g, G, rep.diameter).transitive
    assert 2 * rep.diameter <= rep.girth <= 2 * rep.diameter + 1


@pytest.mark.parametrize("name,g,G", _rows_for_properties(), ids=lambda v: v if isinstance(v, str) else "")
def test_depth2d_pass_implies_cage_with_admissible_girth(name, g, G):
    rep = analyze(g)
    if rep.valency_max < 3:
        pytest.skip("valency at least 3 required")
    cert = cage_certificate(g)
    assert cert.is_cage
    assert cert.girth_in_spectrum
    assert cert.girth in CAGE_GIRTHS
