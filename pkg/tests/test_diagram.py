import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DIAGRAM_FILES, KNOT_FILES, load_d, load_q, raw_pd
from oracles import raw_structure
from quandlesum.coloring import count_colorings
from quandlesum.diagram import (
    Diagram,
    braid_closure,
    canonical_form,
    crossing_sign,
    diagram_from_json,
    fundamental_presentation,
    isomorphic,
    mirror,
    parse_gauss,
    parse_pd,
    reverse_orientation,
    to_gauss,
    to_pd_text,
)
from quandlesum.errors import (
    AmbiguousOverDirection,
    EdgeCountMismatch,
    NonPlanarRotation,
    OverStrandMismatch,
    PDSyntaxError,
    SignConflict,
    UnderStrandMismatch,
    UnpairedCrossing,
)

TREFOIL_GAUSS = "O1+ U2+ O3+ U1+ O2+ U3+"


def test_gauss_trefoil(trefoil):
    assert trefoil.n_crossings == 3
    assert len(trefoil.arcs) == 3
    assert trefoil.signs == (1, 1, 1)
    assert len(trefoil.faces) == 5


def test_mirror_trefoil_signs_negative(trefoil):
    m = mirror(trefoil)
    assert m.signs == (-1, -1, -1) and m.writhe == -3
    assert isomorphic(m, load_d("trefoil_left.json"))


def test_sign_rule_against_gauss_signs():
    # Gauss codes carry signs explicitly; the successor rule must reproduce them
    codes = [TREFOIL_GAUSS] + [to_gauss(load_d(n)) for n in ("figure8.pd", "knot_7_1.json", "hopf.json")]
    for code in codes:
        d = parse_gauss(code)
        again = Diagram(d.crossings, d.components)
        assert again.signs == d.signs


def test_classic_pd_text_from_gauss_round_trip(trefoil):
    text = to_pd_text(trefoil)
    again = parse_pd(text)
    assert again.signs == trefoil.signs and again.arcs == trefoil.arcs


def test_inconsistent_classic_trefoil_text_is_rejected():
    # consecutive numbering makes edge 3 end at two different crossings
    with pytest.raises(OverStrandMismatch):
        parse_pd("PD[X[1,4,2,3], X[3,6,4,5], X[5,2,6,1]]")


def test_edge_count_mismatch():
    with pytest.raises(EdgeCountMismatch) as err:
        parse_pd(json.dumps({"crossings": [[1, 7, 2, 2]], "components": [[1, 2, 7]]}))
    assert err.value.edge == 1 or err.value.edge == 7


def test_edge_appearing_once():
    with pytest.raises(EdgeCountMismatch) as err:
        parse_pd(json.dumps({"crossings": [[1, 1, 2, 7]], "components": [[1, 2, 7]]}))
    assert err.value.edge in (2, 7)


def test_under_strand_mismatch():
    with pytest.raises(UnderStrandMismatch) as err:
        parse_pd(json.dumps({"crossings": [[2, 4, 1, 5], [4, 2, 5, 3], [6, 3, 1, 6]],
                             "components": [[1, 2, 3, 4, 5, 6]]}))
    assert err.value.crossing == 0


def test_ambiguous_over_direction():
    with pytest.raises(AmbiguousOverDirection):
        parse_pd(json.dumps({"crossings": [[3, 2, 4, 1], [4, 2, 3, 1]],
                             "components": [[1, 2], [3, 4]]}))


def test_signs_key_resolves_ambiguity():
    d = load_d("unlink2.json")
    assert d.needs_signs and d.signs == (1, -1)
    assert json.loads(d.dumps())["signs"] == [1, -1]


def test_syntax_error_position():
    with pytest.raises(PDSyntaxError) as err:
        parse_pd("PD[X[1,2,3,4] X[1,2,3,4]]")
    assert err.value.position == 14
    with pytest.raises(PDSyntaxError):
        parse_pd("PD[X[1,2,3]]")
    with pytest.raises(PDSyntaxError):
        parse_pd('{"crossings": [}')


def test_zero_crossing_unknot():
    d = parse_pd("PD[]")
    assert len(d.arcs) == 1 and d.signs == () and len(d.faces) == 2
    gens, rels = fundamental_presentation(d)
    assert gens == [0] and rels == []


def test_one_crossing_unknot():
    d = parse_pd("PD[X[1,1,2,2]]")
    assert len(d.arcs) == 1 and len(d.faces) == 3
    gens, rels = fundamental_presentation(d)
    assert gens == [0] and rels == [(0, 0, 0, d.signs[0])]


def test_trefoil_presentation(trefoil):
    gens, rels = fundamental_presentation(trefoil)
    assert gens == [0, 1, 2] and len(rels) == 3
    assert sorted(r[0] for r in rels) == [0, 1, 2]
    assert all(r[3] == crossing_sign(trefoil, i) for i, r in enumerate(rels))


def test_gauss_errors():
    with pytest.raises(UnpairedCrossing) as err:
        parse_gauss("O1+ U1+ O2+")
    assert err.value.label == 2
    with pytest.raises(SignConflict) as err:
        parse_gauss("O1+ U1−")
    assert err.value.label == 1
    with pytest.raises(PDSyntaxError):
        parse_gauss("O1+ X1+")


def test_multi_component_gauss():
    d = parse_gauss("O1- U2-\nU1- O2-")
    assert len(d.components) == 2 and d.signs == (-1, -1)
    assert isomorphic(d, load_d("hopf.json"))


def test_non_planar_rotation():
    # a virtual-knot style code: each strand passes twice with no planar embedding
    with pytest.raises(NonPlanarRotation):
        parse_gauss("O1+ O2+ U1+ U2+")


@pytest.mark.parametrize("name", DIAGRAM_FILES)
def test_json_round_trip(name):
    d = load_d(name)
    again = parse_pd(d.dumps())
    assert again == d and again.dumps() == d.dumps()


@pytest.mark.parametrize("name", DIAGRAM_FILES)
def test_arcs_and_signs_match_raw_oracle(name):
    d = load_d(name)
    crossings, components, signs = raw_pd(name)
    raw_signs, arc_of, n = raw_structure(crossings, components, signs)
    assert tuple(raw_signs) == d.signs
    assert n == len(d.arcs)
    assert all(arc_of[e] == d.edge_arc[e] for e in d.edges)


@pytest.mark.parametrize("name", DIAGRAM_FILES)
def test_euler_characteristic(name):
    d = load_d(name)
    pieces = len(d.components) if d.n_crossings == 0 else None
    if d.n_crossings and not d.free_loops():
        # every fixture with crossings is connected
        assert d.n_crossings - 2 * d.n_crossings + len(d.faces) == 2
    elif pieces:
        assert len(d.faces) == 2 * pieces


@pytest.mark.parametrize("name", [n for n in DIAGRAM_FILES if not n.startswith("unknot0")])
def test_reverse_orientation_keeps_signs(name):
    d = load_d(name)
    r = reverse_orientation(d)
    assert r.signs == d.signs


@pytest.mark.parametrize("name", KNOT_FILES[1:])
def test_gauss_round_trip_on_knots(name):
    d = load_d(name)
    g = parse_gauss(to_gauss(d))
    assert len(g.arcs) == len(d.arcs)
    assert sorted(g.signs) == sorted(d.signs)
    assert isomorphic(g, d)
    for q in ("dihedral3", "dihedral5", "tetrahedral"):
        assert count_colorings(g, load_q(q)) == count_colorings(d, load_q(q))


def test_braid_closure_torus_knot():
    d = braid_closure([1, 1, 1])
    assert isomorphic(d, parse_gauss(TREFOIL_GAUSS))
    assert braid_closure([1, 1]).signs == (1, 1)
    assert len(braid_closure([1, 1]).components) == 2


def test_canonical_form_ignores_numbering(trefoil):
    relabel = {e: 10 + (e * 5) % 7 for e in trefoil.edges}
    shuffled = Diagram([tuple(relabel[x] for x in c) for c in reversed(trefoil.crossings)],
                       [[relabel[e] for e in comp] for comp in trefoil.components])
    assert canonical_form(shuffled) == canonical_form(trefoil)
    assert isomorphic(shuffled, trefoil)
    assert not isomorphic(trefoil, mirror(trefoil))


def test_diagram_from_json_accepts_dict():
    d = diagram_from_json({"crossings": [], "components": [[1]]})
    assert d.free_loops() == [1]


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=7))
@settings(max_examples=60, deadline=None)
def test_braid_closures_are_valid_and_round_trip(word):
    d = braid_closure(word, strands=3)
    assert d.writhe == sum(1 if g > 0 else -1 for g in word)
    assert parse_pd(d.dumps()) == d
    assert reverse_orientation(d).signs == d.signs
    assert mirror(d).signs == tuple(-s for s in d.signs)
