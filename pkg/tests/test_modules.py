import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from qgrade import grgroup as G
from qgrade import modules as M
from qgrade.errors import CircleMismatch, GradingSetMismatch, ParseError, UnknownAlgebraElement, UnknownGenerator, UnknownWord

from conftest import GENUS2, TORUS, el


def load(name):
    return M.load_presentation(M.data_path(name))


@pytest.fixture(scope="module")
def solid():
    return load("solid_torus_inf.cfa.json")


@pytest.fixture(scope="module")
def trefoil():
    return load("trefoil_m2.cfd.json")


def as_dict(m):
    """Module presentation back to its file form (with element strings)."""
    return {
        "side": m.side,
        "pmc": m.pmc.to_dict(),
        "subgroup": [str(g) for g in m.subgroup.generators],
        "algebra": "torus",
        "generators": [{"name": g.name, "idempotent": sorted(g.idempotent), "grading": str(g.grading)} for g in m.generators],
        "operations": [{"from": o.source, "algebra": list(o.algebra), "to": o.target} for o in m.operations],
    }


# ------------------------------------------------------------------ torus algebra
@pytest.mark.parametrize(
    "word, expected",
    [
        ("1", el("-1/2", 1, 0, 0)),
        ("2", el("-1/2", 0, 1, 0)),
        ("rho3", el("-1/2", 0, 0, 1)),
        ("12", el("-1/2", 1, 1, 0)),
        ("23", el("-1/2", 0, 1, 1)),
        ("rho123", el("-1/2", 1, 1, 1)),
    ],
)
def test_torus_algebra_gradings(word, expected):
    assert M.torus_algebra_grading(word) == expected


@pytest.mark.parametrize("word", ["13", "21", "4", "", "rho", "sigma1"])
def test_unknown_words(word):
    with pytest.raises(UnknownWord):
        M.torus_algebra_grading(word)


def test_torus_idempotents():
    # rho1 runs from point 1 to 2, rho12 from 1 to 3, rho3 from 3 to 4
    assert M.torus_idempotents("rho1") == (0, 1)
    assert M.torus_idempotents("rho12") == (0, 0)
    assert M.torus_idempotents("rho3") == (0, 1)
    assert M.torus_idempotents("rho2") == (1, 0)
    assert M.torus_idempotents("rho23") == (1, 1)


# ------------------------------------------------------------------ consistency
def test_trefoil_arrows_all_pass(trefoil):
    report = M.check_graded_D(trefoil)
    assert len(report.checks) == 5 and report.passed
    assert all(c.idempotents_ok for c in report.checks)


def test_trefoil_arrow_needing_the_subgroup(trefoil):
    # x1 -rho12-> x3 only closes up after one step along the periodic generator
    x1, x3 = trefoil.generator("x1").grading, trefoil.generator("x3").grading
    lhs = G.mul(M.torus_algebra_grading("12"), x3)
    assert lhs != G.mul(G.lambda_pow(TORUS, -1), x1)
    assert G.in_left_coset(trefoil.subgroup, lhs, G.mul(G.lambda_pow(TORUS, -1), x1)).holds
    assert not G.in_left_coset(G.trivial_subgroup(TORUS), lhs, G.mul(G.lambda_pow(TORUS, -1), x1)).holds


def test_perturbed_grading_is_caught(trefoil):
    data = as_dict(trefoil)
    y1 = next(g for g in data["generators"] if g["name"] == "y1")
    y1["grading"] = str(G.mul(G.lambda_pow(TORUS), trefoil.generator("y1").grading))
    report = M.check(M.presentation_from_dict(data))
    failed = sorted(str(c.operation) for c in report.checks if not c.passed)
    assert failed == ["x1 -[rho3]-> y1", "y1 -[rho2]-> x2"]


def test_recorded_unknot_fails_two_arrows():
    report = M.check(load("unknot_m2.cfd.json"))
    verdict = {str(c.operation): (c.passed, c.idempotents_ok) for c in report.checks}
    assert verdict == {
        "a -[rho3]-> b2": (True, True),
        "a -[rho2]-> b1": (False, False),
        "b2 -[rho23]-> b1": (False, True),
    }


def test_unknot_variant_is_consistent():
    report = M.check(load("unknot_m2_corrected.cfd.json"))
    assert report.passed and all(c.idempotents_ok for c in report.checks)


def test_solid_torus_relation(solid):
    report = M.check_graded_A(solid)
    assert report.passed and report.checks[0].idempotents_ok


def test_solid_torus_fails_without_its_subgroup(solid):
    data = as_dict(solid)
    data["subgroup"] = []
    assert not M.check(M.presentation_from_dict(data)).passed


def test_type_a_differential_and_single_action():
    data = {
        "side": "A",
        "pmc": TORUS.to_dict(),
        "generators": [
            {"name": "x", "idempotent": [0], "grading": "(0;0,0,0)"},
            {"name": "y", "idempotent": [0], "grading": "(-1;0,0,0)"},
            {"name": "z", "idempotent": [1], "grading": "(-1/2;1,0,0)"},
        ],
        "operations": [
            {"from": "x", "algebra": [], "to": "y"},
            {"from": "x", "algebra": ["rho1"], "to": "z"},
        ],
    }
    report = M.check(M.presentation_from_dict(data))
    assert report.passed and all(c.idempotents_ok for c in report.checks)
    data["operations"][1]["to"] = "y"
    report = M.check(M.presentation_from_dict(data))
    assert [c.passed for c in report.checks] == [True, False]
    assert report.checks[1].idempotents_ok is False


def test_presentation_errors(trefoil):
    data = as_dict(trefoil)
    data["operations"].append({"from": "x1", "algebra": ["rho9"], "to": "y1"})
    with pytest.raises(UnknownAlgebraElement):
        M.presentation_from_dict(data)
    data = as_dict(trefoil)
    data["operations"].append({"from": "w", "algebra": ["rho1"], "to": "y1"})
    with pytest.raises(UnknownGenerator):
        M.presentation_from_dict(data)
    data = as_dict(trefoil)
    data["operations"][0]["algebra"] = ["rho1", "rho2"]
    with pytest.raises(ParseError):
        M.presentation_from_dict(data)
    data = as_dict(trefoil)
    data["generators"][0]["grading"] = {"maslov": 0.5, "h1": [0, 0, 0]}
    with pytest.raises(ParseError, match="float"):
        M.presentation_from_dict(data)
    with pytest.raises(ParseError):
        M.check_graded_A(trefoil)


def test_custom_algebra_table_skips_idempotents():
    data = {
        "side": "D",
        "pmc": GENUS2.to_dict(),
        "algebra": [{"name": "a", "grading": "(-1/2;1,0,0,0,0,0,0)"}],
        "generators": [
            {"name": "x", "idempotent": [0, 1], "grading": "(0;0,0,0,0,0,0,0)"},
            {"name": "y", "idempotent": [0, 2], "grading": "(-1/2;-1,0,0,0,0,0,0)"},
        ],
        "operations": [{"from": "x", "algebra": "a", "to": "y"}],
    }
    report = M.check(M.presentation_from_dict(data))
    assert report.passed and report.checks[0].idempotents_ok is None
    with pytest.raises(ParseError, match="torus"):
        M.presentation_from_dict({**data, "algebra": "torus"})


# ------------------------------------------------------------------ tensor
def names(ts):
    return sorted(t.name for t in ts)


def test_tensor_generators(solid, trefoil):
    ts = M.tensor_generators(solid, trefoil)
    assert names(ts) == ["n*y1", "n*y2"]
    assert names(M.tensor_generators(solid, load("unknot_m2.cfd.json"))) == ["n*b1", "n*b2"]
    t = {t.name: t for t in ts}["n*y1"]
    assert t.grading.rep == el("3/2", 0, 2, 1)
    assert G.same_subgroup(t.grading.left, G.span_subgroup([el("-1/2", 1, 1, 0)]))
    assert G.same_subgroup(t.grading.right, G.span_subgroup([el("-3/2", -1, 1, 2)]))


def test_tensor_argument_checks(solid, trefoil):
    with pytest.raises(ParseError):
        M.tensor_generators(trefoil, solid)
    other = M.presentation_from_dict({"side": "A", "pmc": GENUS2.to_dict(), "algebra": [], "generators": []})
    with pytest.raises(CircleMismatch):
        M.tensor_generators(other, trefoil)


def test_empty_type_a_module(trefoil):
    empty = M.presentation_from_dict({"side": "A", "pmc": TORUS.to_dict(), "generators": []})
    assert M.tensor_generators(empty, trefoil) == []
    assert M.grading_table([]) == []


def test_trefoil_relative_grading(solid, trefoil):
    t = {t.name: t for t in M.tensor_generators(solid, trefoil)}
    assert M.relative_Q_grading(t["n*y2"], t["n*y1"]) == G.Same(F(3, 2))
    assert M.relative_Q_grading(t["n*y1"], t["n*y2"]) == G.Same(F(-3, 2))
    assert M.relative_Q_grading(t["n*y1"], t["n*y1"]) == G.Same(0)


def test_unknot_relative_grading(solid):
    for name in ("unknot_m2.cfd.json", "unknot_m2_corrected.cfd.json"):
        t = {t.name: t for t in M.tensor_generators(solid, load(name))}
        assert M.relative_Q_grading(t["n*b2"], t["n*b1"]) == G.Same(F(-1, 2))
        assert M.relative_Q_grading(t["n*b1"], t["n*b2"]) == G.Same(F(1, 2))


def test_grading_set_mismatch(solid, trefoil):
    a = M.tensor_generators(solid, trefoil)[0]
    b = M.tensor_generators(solid, load("unknot_m2.cfd.json"))[0]
    with pytest.raises(GradingSetMismatch):
        M.relative_Q_grading(a, b)


def test_grading_table(solid, trefoil):
    ts = M.tensor_generators(solid, trefoil)
    (cls,) = M.grading_table(ts)
    assert cls.base == "n*y1" and cls.offsets == {"n*y1": 0, "n*y2": F(-3, 2)}
    (cls,) = M.grading_table(ts, base="n*y2")
    assert cls.base == "n*y2" and cls.offsets == {"n*y1": F(3, 2), "n*y2": 0}
    with pytest.raises(UnknownGenerator):
        M.grading_table(ts, base="n*y3")
    (cls,) = M.grading_table(M.tensor_generators(solid, load("unknot_m2.cfd.json")))
    assert sorted(abs(q) for q in cls.offsets.values()) == [0, F(1, 2)]


def test_grading_table_splits_orbits(solid):
    # a second D generator in a different homology class is not comparable
    data = as_dict(load("unknot_m2_corrected.cfd.json"))
    data["generators"].append({"name": "c", "idempotent": [0], "grading": "(0;1,0,0)"})
    data["operations"] = []
    ts = M.tensor_generators(solid, M.presentation_from_dict(data))
    table = M.grading_table(ts)
    assert [sorted(c.offsets) for c in table] == [["n*b1", "n*b2"], ["n*c"]]


# ------------------------------------------------------------------ properties
def _shift_reps(m, coeffs):
    """Replace every representative g by g.p (type D) or p.g (type A) with p in the subgroup."""
    (gen,) = m.subgroup.generators
    data = as_dict(m)
    for g, c in zip(data["generators"], coeffs):
        p = G.scale(c, gen)
        rep = m.generator(g["name"]).grading
        g["grading"] = str(G.mul(rep, p) if m.side == "D" else G.mul(p, rep))
    return M.presentation_from_dict(data)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=5, max_size=5), st.integers(-4, 4))
def test_base_point_naturality(cd, ca):
    solid, trefoil = load("solid_torus_inf.cfa.json"), load("trefoil_m2.cfd.json")
    before = {t.name: t for t in M.tensor_generators(solid, trefoil)}
    after = {t.name: t for t in M.tensor_generators(_shift_reps(solid, [ca]), _shift_reps(trefoil, cd))}
    for a in before:
        for b in before:
            assert M.relative_Q_grading(after[a], after[b]) == M.relative_Q_grading(before[a], before[b])
    assert M.check(_shift_reps(trefoil, cd)).passed


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=3))
def test_relative_grading_telescopes(shifts):
    # three D generators in one orbit: q(a,c) = q(a,b) + q(b,c)
    solid = load("solid_torus_inf.cfa.json")
    P = el("1/2", -1, 1, 2)
    gens = []
    for i, (m, t, s) in enumerate(shifts):
        g = G.mul(el(F(m, 2), 0, 1, 0), G.scale(t, P), G.lambda_pow(TORUS, F(s, 3)))
        gens.append({"name": f"g{i}", "idempotent": [0], "grading": str(g)})
    data = {"side": "D", "pmc": TORUS.to_dict(), "subgroup": [str(P)], "generators": gens}
    ts = M.tensor_generators(solid, M.presentation_from_dict(data))
    a, b, c = ts
    ab, bc, ac = (M.relative_Q_grading(*p) for p in ((a, b), (b, c), (a, c)))
    assert ab.is_same and bc.is_same and ac.q == ab.q + bc.q
