import random

import networkx as nx
import pytest

from conftest import corpus_instances, exact_width, random_decomposition
from surfwidth.assignment import edge_assignment
from surfwidth.decomposition import (
    Decomposition,
    apex_bound,
    apex_set,
    augment,
    compose,
    dual_bags,
    dual_decomposition,
    fs_bags,
    fs_decomposition,
    identity_decomposition,
    path_decomposition,
    remove_vertices,
    theorem_bound,
    theorem_pipeline,
    verify,
    width,
)
from surfwidth.embedding import dual_graph, face_subdivision, radial_union
from surfwidth.errors import PreconditionError
from surfwidth.spanning import delete_edge_for_sphere, find_low_excess_tree
from surfwidth.widths import decomposition_from_certificate

NAMES = sorted(corpus_instances())


def tau_for(g):
    budget = 0 if g.chi >= 0 else -2 * g.chi - 1
    t = find_low_excess_tree(g, 3, budget)
    return edge_assignment(g, delete_edge_for_sphere(t) if g.chi == 2 else t)


# ------------------------------------------------------------------ verify


def test_verify_accepts_identity():
    g = nx.petersen_graph()
    assert verify(identity_decomposition(g), g)


def test_verify_path_decomposition_of_path():
    p5 = nx.path_graph(5)
    d = path_decomposition([{0, 1}, {1, 2}, {2, 3}, {3, 4}])
    assert verify(d, p5)
    assert width(d) == 1


def test_width_units():
    bags = [{0, 1, 2}]
    assert width(path_decomposition(bags)) == 2
    assert width(Decomposition(nx.path_graph(1), {0: {0, 1, 2}}, "general")) == 3


def test_verify_condition_d1():
    d = path_decomposition([{0, 1}, {1, 2}])
    v = verify(d, nx.path_graph(4))
    assert not v and v.condition == "D1"


def test_verify_condition_d2_and_d2prime():
    c4 = nx.cycle_graph(4)
    bags = {0: {0, 1}, 1: {1, 2}, 2: {2, 3}}
    general = Decomposition(nx.path_graph(3), bags, "general")
    v = verify(general, c4)
    assert not v and v.condition == "D2"
    # edge 0-3 lies across adjacent bags: enough for D2, not for D2'
    bags = {0: {0, 1}, 1: {1, 2, 3}}
    assert verify(Decomposition(nx.path_graph(2), bags, "general"), c4)
    v = verify(Decomposition(nx.path_graph(2), bags, "path"), c4)
    assert not v and v.condition == "D2'"


def test_verify_condition_d3():
    d = path_decomposition([{0, 1}, {1, 2}, {0, 2}])
    v = verify(d, nx.path_graph(3))
    assert not v and v.condition == "D3"


def test_verify_host_shape_and_foreign_vertices():
    star = nx.star_graph(3)
    d = Decomposition(star, {h: {0} for h in star.nodes}, "path")
    assert verify(d, nx.empty_graph(1)).condition == "host"
    d = Decomposition(nx.cycle_graph(3), {h: {0} for h in range(3)}, "tree")
    assert verify(d, nx.empty_graph(1)).condition == "host"
    d = path_decomposition([{0, 9}])
    assert verify(d, nx.empty_graph(1)).condition == "bags"


def test_decomposition_rejects_bad_kind_and_index():
    with pytest.raises(ValueError):
        Decomposition(nx.path_graph(2), {0: {0}, 1: {0}}, "banana")
    with pytest.raises(ValueError):
        Decomposition(nx.path_graph(2), {0: {0}}, "path")


# ------------------------------------------------------------ constructions


@pytest.mark.parametrize("name", NAMES)
def test_dual_bags_verify_and_match_residual_degree(name):
    g = corpus_instances()[name]
    tau = tau_for(g)
    d = dual_bags(g, tau)
    assert verify(d, dual_graph(g))
    residual = set(range(g.edge_count)) - tau.image()
    for v in range(g.vertex_count):
        assert len(d.bags[v]) == sum(1 for e in g.rotations[v] if e in residual)
    assert sum(len(b) for b in d.bags.values()) == 2 * len(residual)


@pytest.mark.parametrize("name", NAMES)
def test_fs_bags_verify_on_radial_union_and_subdivision(name):
    g = corpus_instances()[name]
    d = fs_bags(g, tau_for(g))
    assert verify(d, radial_union(g))
    assert verify(d, face_subdivision(g))


def test_tetrahedron_fs_bag_total():
    g = corpus_instances()["tetrahedron"]
    d = fs_bags(g, tau_for(g))
    assert sum(len(b) for b in d.bags.values()) == 8


def test_cube_fs_bags_at_most_four():
    g = corpus_instances()["cube"]
    assert fs_bags(g, tau_for(g)).max_bag() <= 4


def test_torus_fs_after_apex():
    cons = fs_decomposition(corpus_instances()["torus3x3"])
    assert len(cons.apex) <= 2
    assert cons.reduced.max_bag() <= 4


@pytest.mark.parametrize("name", NAMES)
def test_apex_removal_bounds(name):
    g = corpus_instances()[name]
    cons = dual_decomposition(g)
    assert cons.reduced.max_bag() <= 3
    assert len(cons.apex) <= apex_bound(g.chi)
    te_h, te_t, growth = cons.te_chain()
    assert len(cons.apex) <= te_h <= te_t + 2 * growth


def test_apex_set_takes_smallest_ids():
    d = Decomposition(nx.path_graph(2), {0: {5, 1, 7, 3}, 1: {2, 4}}, "general")
    assert apex_set(d, 3) == {1}
    assert apex_set(d, 2) == {1, 3}
    with pytest.raises(ValueError):
        apex_set(d, 0)


def test_remove_and_augment():
    g = corpus_instances()["torus3x3"]
    cons = dual_decomposition(g)
    target = dual_graph(g).copy()
    target.remove_nodes_from(cons.apex)
    assert verify(remove_vertices(cons.bags, cons.apex), target)
    back = augment(cons.reduced, cons.apex, dual_graph(g))
    assert all(cons.apex <= b for b in back.bags.values())


def test_augment_detects_wrong_target():
    g = corpus_instances()["cube"]
    cons = dual_decomposition(g)
    with pytest.raises(AssertionError):
        augment(cons.reduced, cons.apex, g.graph)


def test_hampath_mode_bags():
    for name in ("tetrahedron", "cube", "prism5", "torus3x3", "k6_projective"):
        g = corpus_instances()[name]
        cons = dual_decomposition(g, "hampath")
        assert cons.reduced.max_bag() <= 2
        assert len(cons.apex) <= apex_bound(g.chi, "hampath")


# ------------------------------------------------------------------- compose


def test_compose_bag_is_union():
    d1 = Decomposition(nx.path_graph(3), {0: {"a"}, 1: {"b", "c"}, 2: {"c"}}, "general")
    d2 = path_decomposition([{0, 1}, {1, 2}])
    out = compose(d1, d2)
    assert out.kind == "path"
    assert out.bags == {0: frozenset("abc"), 1: frozenset("bc")}


def test_compose_rejects_mismatch():
    d1 = Decomposition(nx.path_graph(2), {0: {0}, 1: {1}}, "general")
    with pytest.raises(ValueError):
        compose(d1, path_decomposition([{0}]))
    with pytest.raises(ValueError):
        compose(d1, path_decomposition([{0, 1, 2}]))


@pytest.mark.parametrize("kind", ["general", "tree", "path"])
def test_compose_with_random_decomposition(kind):
    rng = random.Random(7)
    for name in ("cube", "torus3x3", "k6_projective"):
        g = corpus_instances()[name]
        cons = dual_decomposition(g)
        d2 = random_decomposition(g.graph, rng, kind)
        assert verify(d2, g.graph)
        out = compose(cons.bags, d2)
        assert out.kind == kind
        assert verify(out, dual_graph(g))
        assert out.max_bag() <= cons.bags.max_bag() * d2.max_bag()


# ------------------------------------------------------------------ pipeline


@pytest.mark.parametrize(
    "which, chi, w, want",
    [
        ("thm3", 2, 5, 15), ("thm3", 1, 5, 15), ("thm3", 0, 5, 17), ("thm3", -1, 5, 20),
        ("thm4", 2, 5, 17), ("thm4", 1, 5, 17), ("thm4", 0, 5, 19), ("thm4", -2, 5, 26),
        ("thm5-tw", 1, 4, 19), ("thm5-pw", 0, 4, 21), ("thm5-pw", -1, 4, 24),
        ("hampath-pw", 2, 4, 11), ("hampath-pw", -1, 4, 13),
    ],
)
def test_theorem_bound_table(which, chi, w, want):
    assert theorem_bound(which, chi, w) == want


def test_theorem_bound_unknown():
    with pytest.raises(ValueError):
        theorem_bound("thm9", 0, 1)


def test_tetrahedron_thm4():
    g = corpus_instances()["tetrahedron"]
    cert = exact_width("tetrahedron", "graph", "pw")
    res = theorem_pipeline(g, "thm4", decomposition_from_certificate(cert, g.graph))
    assert res.ok and res.bound == 11
    assert res.decomposition.kind == "path"
    assert exact_width("tetrahedron", "dual", "pw").value == 3 <= res.certified_width <= 11


def test_torus_thm4_bound():
    g = corpus_instances()["torus3x3"]
    cert = exact_width("torus3x3", "graph", "pw")
    res = theorem_pipeline(g, "thm4", decomposition_from_certificate(cert, g.graph))
    assert res.ok
    assert res.bound == 3 * cert.value + 4


def test_cube_thm5_tw():
    g = corpus_instances()["cube"]
    cert = exact_width("cube", "graph", "tw")
    res = theorem_pipeline(g, "thm5-tw", decomposition_from_certificate(cert, g.graph))
    assert res.ok and res.decomposition.kind == "tree"
    assert res.bound == 4 * cert.value + 3
    assert res.extra_targets["fs"]


def test_pipeline_preconditions():
    g = corpus_instances()["cube"]
    tw = decomposition_from_certificate(exact_width("cube", "graph", "tw"), g.graph)
    with pytest.raises(PreconditionError):
        theorem_pipeline(g, "thm4", tw)
    bad = path_decomposition([{0, 1}])
    with pytest.raises(PreconditionError):
        theorem_pipeline(g, "thm4", bad)
    with pytest.raises(ValueError):
        theorem_pipeline(g, "thm7", bad)


def test_dual_bags_not_vacuous():
    # dropping one face from one bag must be caught somewhere on every instance
    for name in ("tetrahedron", "cube", "torus3x3", "k6_projective"):
        g = corpus_instances()[name]
        d = dual_bags(g, tau_for(g))
        target = dual_graph(g)
        caught = 0
        for v, bag in d.bags.items():
            for f in bag:
                mutated = dict(d.bags)
                mutated[v] = bag - {f}
                caught += not verify(d.with_bags(mutated), target)
        assert caught > 0
