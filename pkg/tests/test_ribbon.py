import random
from fractions import Fraction

import pytest

from systolic import ribbon
from systolic.ribbon import (
    CrgParseError,
    CubicRibbonGraph,
    beineke_harary_lower_bound,
    deserialize,
    faces,
    genus_closed,
    girth,
    pred,
    serialize,
    slot,
    succ,
    turn_letter,
)

from _oracles import small_complete_corpus, theta_graph


def test_slot_arithmetic():
    assert slot(2, 1) == 7
    assert succ(7) == 8 and succ(8) == 6 and succ(6) == 7
    assert pred(7) == 6 and pred(6) == 8
    with pytest.raises(ValueError):
        slot(0, 3)


def test_turn_letter_convention():
    assert turn_letter(0, 1) == "L"
    assert turn_letter(0, 2) == "R"
    # every slot has exactly the two non-backtracking exits
    for s in range(6):
        assert {turn_letter(s, succ(s)), turn_letter(s, pred(s))} == {"L", "R"}
    with pytest.raises(ValueError):
        turn_letter(0, 0)
    with pytest.raises(ValueError):
        turn_letter(0, 4)


def test_add_and_remove_edges():
    g = CubicRibbonGraph(2)
    g.add_edge(0, 3)
    assert g.degree(0) == 1 and g.degree(1) == 1
    assert g.pair(0) == 3 and g.pair(3) == 0
    with pytest.raises(ValueError):
        g.add_edge(0, 4)  # slot 0 occupied
    with pytest.raises(ValueError):
        g.add_edge(1, 1)
    before = serialize(g := g.copy())
    g.remove_edge(0, 3)
    g.add_edge(0, 3)
    assert serialize(g) == before
    with pytest.raises(ValueError):
        g.remove_edge(1, 4)  # not present


def test_seed_edges_cannot_be_removed():
    g = CubicRibbonGraph(2)
    g.add_edge(0, 3, seed=True)
    g.add_edge(1, 4)
    with pytest.raises(ValueError):
        g.remove_edge(0, 3)
    g.remove_edge(1, 4)
    assert g.seed_edges() == [(0, 3)]


def test_faces_of_the_two_vertex_graphs():
    straight = theta_graph(twisted=False)
    fs = faces(straight)
    assert sorted(len(f) for f in fs) == [6]
    twisted = theta_graph(twisted=True)
    fs = faces(twisted)
    assert sorted(len(f) for f in fs) == [2, 2, 2]
    with pytest.raises(ValueError):
        faces(CubicRibbonGraph(2))


def test_faces_partition_the_darts():
    for g in small_complete_corpus():
        fs = faces(g)
        darts = [d for f in fs for d in f]
        assert sorted(darts) == list(range(3 * g.num_vertices))


def test_face_cycles_read_all_left_turns():
    for g in (theta_graph(False), theta_graph(True)):
        pair = g.pair_table()
        for f in faces(g):
            for i, d in enumerate(f):
                assert turn_letter(pair[d], f[(i + 1) % len(f)]) == "L"
            # reversal duality: the same cycle backwards turns R everywhere
            rev = tuple(pair[d] for d in reversed(f))
            for i, d in enumerate(rev):
                assert turn_letter(pair[d], rev[(i + 1) % len(rev)]) == "R"


def test_genus_of_the_two_vertex_graphs():
    (comp,) = genus_closed(theta_graph(twisted=True))
    assert comp.genus == 0 and comp.num_cusps == 3
    (comp,) = genus_closed(theta_graph(twisted=False))
    assert comp.genus == 1 and comp.num_cusps == 1


def test_euler_identity_on_corpus():
    for g in small_complete_corpus():
        comps = genus_closed(g)
        total_faces = len(faces(g))
        lhs = sum(2 - 2 * c.genus for c in comps)
        assert lhs == total_faces - g.num_vertices // 2
        assert sum(len(c.vertices) for c in comps) == g.num_vertices
        assert sum(c.num_cusps for c in comps) == total_faces


def test_girth_examples():
    assert girth(theta_graph(False)) == 2
    loop = CubicRibbonGraph(1)
    loop.add_edge(0, 1)
    assert girth(loop) == 1
    path = CubicRibbonGraph(2)
    path.add_edge(0, 3)
    assert girth(path) is None
    assert girth(CubicRibbonGraph(3)) is None


def test_girth_on_simple_cubic_graphs_against_networkx():
    nx = pytest.importorskip("networkx")
    rng = random.Random(5)
    checked = 0
    for g in small_complete_corpus():
        G = nx.MultiGraph()
        G.add_nodes_from(range(g.num_vertices))
        for a, b in g.edges():
            G.add_edge(a // 3, b // 3)
        if any(u == v for u, v in G.edges()) or G.number_of_edges() != len(set(map(frozenset, G.edges()))):
            continue  # loops and parallels are covered by the frozen examples
        assert girth(g) == nx.girth(nx.Graph(G)), g.edges()
        checked += 1
    assert checked >= 5


def test_girth_restricted_to_component():
    g = CubicRibbonGraph(3)
    g.add_edge(0, 1)  # loop at vertex 0
    g.add_edge(slot(1, 0), slot(2, 0))
    g.add_edge(slot(1, 1), slot(2, 1))
    assert girth(g) == 1
    assert girth(g, vertices=[1, 2]) == 2


def test_beineke_harary_examples():
    assert beineke_harary_lower_bound(2, 3, 2) == 0
    assert beineke_harary_lower_bound(14, 21, 6) == 1
    assert beineke_harary_lower_bound(3, 4, 3) == Fraction(1, 6)
    assert isinstance(beineke_harary_lower_bound(3, 4, 3), Fraction)
    with pytest.raises(ValueError):
        beineke_harary_lower_bound(2, 3, 0)


def test_serialize_roundtrip():
    for g in (theta_graph(False), theta_graph(True)):
        assert deserialize(serialize(g)) == g
    g = CubicRibbonGraph(3)
    g.add_edge(0, 5, seed=True)
    g.add_edge(1, 6)
    text = serialize(g)
    assert "SEED" in text and "0.0-1.2" in text
    assert deserialize(text) == g
    assert serialize(deserialize(text)) == text


def test_serialize_format_shape():
    g = theta_graph(False)
    assert serialize(g) == "CRG 1\n2\n0: 1.0 1.1 1.2\n1: 0.0 0.1 0.2\n"


def test_deserialize_errors():
    good = serialize(theta_graph(False))

    with pytest.raises(CrgParseError, match="header"):
        deserialize("CRG 2\n0\n")
    with pytest.raises(CrgParseError, match="vertex count"):
        deserialize("CRG 1\nxx\n")
    with pytest.raises(CrgParseError, match="pairs with itself"):
        deserialize("CRG 1\n1\n0: 0.0 - -\n")
    # a loop (two distinct slots of one vertex) is legal, not a self-pair
    loop = deserialize("CRG 1\n1\n0: 0.1 0.0 -\n")
    assert loop.pair(0) == 1
    # slot pointed to twice: 0.0 -> 1.0 and 0.1 -> 1.0
    with pytest.raises(CrgParseError, match="paired twice|pair back"):
        deserialize("CRG 1\n2\n0: 1.0 1.0 -\n1: 0.0 - -\n")
    # asymmetric: partner is marked free (also the odd-paired-slot-count case)
    with pytest.raises(CrgParseError, match="pair back"):
        deserialize("CRG 1\n2\n0: 1.0 - -\n1: - - -\n")
    with pytest.raises(CrgParseError, match="outside"):
        deserialize("CRG 1\n1\n0: 3.0 - -\n")
    with pytest.raises(CrgParseError, match="expected"):
        deserialize("CRG 1\n2\n0: - - -\n")
    with pytest.raises(CrgParseError, match="SEED"):
        deserialize(good + "JUNK\n")
    with pytest.raises(CrgParseError, match="not an edge"):
        deserialize(good + "SEED\n0.0-1.1\n")
    with pytest.raises(CrgParseError, match="duplicate"):
        deserialize(good + "SEED\n0.0-1.0\n0.0-1.0\n")
    with pytest.raises(CrgParseError, match="LF"):
        deserialize(good.replace("\n", "\r\n"))
    with pytest.raises(CrgParseError, match="ASCII"):
        deserialize(good + "SEED\n0.0–1.0\n")


def test_parse_error_carries_line_number():
    try:
        deserialize("CRG 1\n2\n0: 1.0 1.1 1.2\n1: 0.0 0.1 bogus\n")
    except CrgParseError as exc:
        assert exc.line == 4
        assert "line 4" in str(exc)
    else:
        pytest.fail("expected CrgParseError")


def test_relabeled_permutes_vertices():
    g = theta_graph(True)
    h = g.relabeled([1, 0])
    assert h.pair(slot(1, 0)) == slot(0, 0)
    assert sorted(len(f) for f in faces(h)) == [2, 2, 2]
    with pytest.raises(ValueError):
        g.relabeled([0, 0])


def test_components():
    g = CubicRibbonGraph(4)
    g.add_edge(slot(0, 0), slot(1, 0))
    g.add_edge(slot(2, 0), slot(3, 0))
    assert g.components() == [[0, 1], [2, 3]]


def test_serialize_roundtrip_fuzzed_partial_graphs():
    rng = random.Random(11)
    for _ in range(60):
        g = CubicRibbonGraph(rng.randint(1, 9))
        free = g.free_slots()
        rng.shuffle(free)
        while len(free) >= 2:
            a, b = free.pop(), free.pop()
            if rng.random() < 0.3:
                continue  # leave some slots free
            g.add_edge(a, b, seed=rng.random() < 0.5)
        text = serialize(g)
        again = deserialize(text)
        assert again == g
        assert serialize(again) == text
