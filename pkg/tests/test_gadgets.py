import random
from dataclasses import replace
from itertools import combinations

import pytest

from cocolour import patterns, solvers
from cocolour.gadgets import (
    HUANG_FREENESS_PATTERNS,
    LabelledGadget,
    NiceCritical,
    SatInstance,
    X3CInstance,
    all_three_var_clauses,
    build_huang_gadget,
    build_x3c_gadget,
    catalog_nice,
    random_x3c_instance,
    sat_instances_up_to,
    verify_huang_gadget,
    verify_nice_critical,
    verify_x3c_gadget,
)
from cocolour.cli import parse_pattern
from cocolour.graphs import Graph, cycle, path


FIG3 = X3CInstance(
    q=3,
    k=6,
    triples=tuple(
        tuple(sorted(x - 1 for x in t))
        for t in [
            (1, 2, 3),
            (2, 3, 4),
            (3, 4, 7),
            (4, 5, 6),
            (6, 7, 8),
            (7, 8, 9),
        ]
    ),
)


def add_edge(g, u, v):
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph(g.n, tuple(adj))


def remove_edge(g, u, v):
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return Graph(g.n, tuple(adj))


class TestX3CInstance:
    def test_validation(self):
        with pytest.raises(ValueError):
            X3CInstance(q=0, k=1, triples=())
        with pytest.raises(ValueError):
            X3CInstance(q=2, k=1, triples=((0, 1, 2),))
        with pytest.raises(ValueError):
            X3CInstance(q=1, k=1, triples=((0, 1, 1),))
        with pytest.raises(ValueError):
            X3CInstance(q=1, k=1, triples=((0, 1, 3),))
        with pytest.raises(ValueError):
            X3CInstance(q=1, k=2, triples=((0, 1, 2),))

    def test_json_round_trip(self):
        inst = X3CInstance.from_json(FIG3.to_json())
        assert inst == FIG3


class TestX3CGadget:
    def test_reference_instance_sizes(self):
        gadget = build_x3c_gadget(FIG3)
        assert gadget.graph.n == 18
        assert gadget.graph.edge_count == 72

    def test_minimal_instance_shape(self):
        gadget = build_x3c_gadget(X3CInstance(q=1, k=1, triples=((0, 1, 2),)))
        g = gadget.graph
        assert g.n == 4
        assert gadget.vertices("A") == ()
        # triangle on the ground set plus one triple vertex seeing all of it
        assert all(g.has_edge(u, v) for u, v in combinations(range(3), 2))
        assert g.degree(3) == 3

    def test_reference_instance_passes_verification(self):
        report = verify_x3c_gadget(build_x3c_gadget(FIG3))
        assert report.ok, report.failures()
        assert len(report.checks) == 13

    def test_random_instances_pass_verification(self):
        rng = random.Random(40)
        for _ in range(30):
            q = rng.randint(1, 3)
            k = rng.randint(q, 7)
            gadget = build_x3c_gadget(random_x3c_instance(rng, q, k))
            report = verify_x3c_gadget(gadget)
            assert report.ok, report.failures()

    def test_injected_padding_ground_edge_is_reported(self):
        inst = X3CInstance(
            q=1, k=2, triples=((0, 1, 2), (0, 1, 2))
        )
        gadget = build_x3c_gadget(inst)
        a = gadget.vertices("A")[0]
        w = gadget.vertices("W")[0]
        bad = LabelledGadget(add_edge(gadget.graph, a, w), gadget.labels)
        report = verify_x3c_gadget(bad)
        assert not report.ok
        names = {c.name for c in report.failures()}
        assert "padding-anticomplete-to-ground" in names

    def test_freeness_failure_carries_witness(self):
        # a long path is nothing like the gadget; freeness checks fail loudly
        fake = LabelledGadget(
            path(7), tuple(("W", i) for i in range(7))
        )
        report = verify_x3c_gadget(fake)
        failing = {c.name: c for c in report.failures()}
        assert "free-of-P6" in failing
        assert failing["free-of-P6"].detail is not None

    def test_reduction_equivalence_small(self):
        rng = random.Random(41)
        for _ in range(40):
            q = rng.randint(1, 2)
            k = rng.randint(q, 5)
            inst = random_x3c_instance(rng, q, k)
            g = build_x3c_gadget(inst).graph
            cover_k, _ = solvers.clique_cover_number(g)
            assert cover_k >= k  # triple vertices are independent
            assert (cover_k <= k) == (solvers.solve_x3c_brute(inst) is not None)


class TestSatInstance:
    def test_validation(self):
        with pytest.raises(ValueError):
            SatInstance(n=0, clauses=())
        with pytest.raises(ValueError):
            SatInstance(n=3, clauses=((1, 2),))
        with pytest.raises(ValueError):
            SatInstance(n=3, clauses=((1, 1, 2),))
        with pytest.raises(ValueError):
            SatInstance(n=2, clauses=((1, 2, 3),))
        # repeated variable with opposite signs is allowed
        SatInstance(n=2, clauses=((1, -1, 2),))

    def test_dimacs_round_trip(self):
        inst = SatInstance(n=3, clauses=((1, -2, 3), (-1, 2, -3)))
        assert SatInstance.from_dimacs(inst.to_dimacs()) == inst

    def test_dimacs_requires_problem_line(self):
        with pytest.raises(ValueError):
            SatInstance.from_dimacs("1 -2 3 0\n")


class TestNiceCritical:
    def test_catalog_passes(self):
        cat = catalog_nice()
        assert cat["c7"].k == 3
        assert verify_nice_critical(cat["c7"])
        assert cat["fig5"].k == 4
        assert cat["fig5"].graph.n == 7
        assert cat["fig5"].graph.edge_count == 12
        assert verify_nice_critical(cat["fig5"])

    def test_c6_is_not_nice_3_critical(self):
        assert not verify_nice_critical(
            NiceCritical(graph=cycle(6), triple=(0, 2, 4), k=3)
        )

    def test_mutated_fig5_fails(self):
        nc = catalog_nice()["fig5"]
        # removing the e-f edge breaks 4-criticality
        mutated = replace(nc, graph=remove_edge(nc.graph, 4, 5))
        assert not verify_nice_critical(mutated)

    def test_adjacent_triple_rejected(self):
        assert not verify_nice_critical(
            NiceCritical(graph=cycle(7), triple=(0, 1, 3), k=3)
        )


class TestHuangGadget:
    def test_c7_sizes(self):
        sat = SatInstance(n=2, clauses=((1, -1, 2),))
        g = build_huang_gadget(catalog_nice()["c7"], sat).graph
        assert g.n == 13
        assert g.edge_count == 39

    def test_fig5_sizes(self):
        sat = SatInstance(n=3, clauses=((1, 2, 3),))
        g = build_huang_gadget(catalog_nice()["fig5"], sat).graph
        assert g.n == 16

    def test_blocks_induce_the_nice_graph(self):
        cat = catalog_nice()
        sat = SatInstance(n=3, clauses=((1, -2, 3), (-1, 2, -3)))
        for nc in cat.values():
            gadget = build_huang_gadget(nc, sat)
            for j in range(sat.m):
                block = [
                    v
                    for v, lab in enumerate(gadget.labels)
                    if lab[0] in ("C", "U") and lab[1] == j
                ]
                sub = gadget.graph.induced(block)
                assert patterns.is_isomorphic(sub, nc.graph)

    def test_verification_passes(self):
        cat = catalog_nice()
        sat = SatInstance(n=3, clauses=((1, -2, 3),))
        for name, nc in cat.items():
            specs = HUANG_FREENESS_PATTERNS[name]
            gadget = build_huang_gadget(nc, sat)
            report = verify_huang_gadget(
                gadget, nc, [parse_pattern(s) for s in specs], specs
            )
            assert report.ok, report.failures()

    def test_extra_cross_variable_edge_is_reported(self):
        nc = catalog_nice()["c7"]
        sat = SatInstance(n=2, clauses=((1, -1, 2),))
        gadget = build_huang_gadget(nc, sat)
        x = gadget.vertices("X")
        bad = LabelledGadget(add_edge(gadget.graph, x[0], x[2]), gadget.labels)
        specs = HUANG_FREENESS_PATTERNS["c7"]
        report = verify_huang_gadget(
            bad, nc, [parse_pattern(s) for s in specs], specs
        )
        assert not report.ok
        assert any(c.name == "xd-sparse" for c in report.failures())

    def test_equivalence_small(self):
        cat = catalog_nice()
        rng = random.Random(42)
        clauses = all_three_var_clauses(3)
        for nc in cat.values():
            for _ in range(8):
                m = rng.randint(1, 2)
                sat = SatInstance(
                    n=3, clauses=tuple(rng.choice(clauses) for _ in range(m))
                )
                g = build_huang_gadget(nc, sat).graph
                colourable = solvers.is_k_colourable(g, nc.k + 1) is not None
                satisfiable = solvers.solve_sat_brute(sat) is not None
                assert colourable == satisfiable

    def test_enumeration_helpers(self):
        assert len(all_three_var_clauses(3)) == 8
        assert len(all_three_var_clauses(4)) == 32
        insts = sat_instances_up_to(3, 1)
        assert len(insts) == 8
        assert all(inst.m == 1 for inst in insts)
