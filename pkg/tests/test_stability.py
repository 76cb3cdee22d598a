import json

import pytest

from conftest import KNOTS, jones
from headtail.algebra import LaurentPoly
from headtail.cache import ResultCache, cached_colored_jones
from headtail.diagram import PDCode, mirror
from headtail.stability import (
    FAIL,
    INAPPLICABLE,
    PASS,
    SKIPPED,
    CensusEntry,
    Inapplicable,
    MissingVolume,
    V0,
    head_tail,
    load_census,
    mirror_prediction,
    partial_sum_check,
    predict,
    three_term_check,
    verify_span,
    verify_stabilization,
    volume_bounds,
)
from headtail.statesum import colored_jones
from headtail.stategraphs import graph_stats


def _pred(name, n):
    d = KNOTS[name]
    return predict(graph_stats(d, "A"), graph_stats(d, "B"), n)


def test_unknot_head_tail():
    ht = head_tail(colored_jones(PDCode.unknot(), 4))
    assert ht.head == (1, 0, 0) and ht.tail == (1, 0, 0)
    assert ht.q_span == 0 and ht.degenerate


def test_head_tail_reads_both_ends():
    ht = head_tail(LaurentPoly({0: 1, -4: -3, -8: 5, -40: 2, -36: -7, -32: 11}))
    assert ht.head == (1, -3, 5)
    assert ht.tail == (2, -7, 11)
    assert ht.q_span == 10
    assert ht.head_alternating and ht.tail_alternating


def test_predictions_for_worked_examples():
    p = _pred("12a_217", 3)
    assert p.head == (1, 4, 2)
    assert p.tail == (1, 4, 4)
    assert _pred("12a_1228", 3).head == (1, 4, 3)
    assert _pred("12a_217", 4).head == p.head


def test_color_two_third_coefficient():
    # C(b+1, 2) + n(2) - tau with b = 4, n(2) = 3, tau = 4
    assert _pred("12a_217", 2).head_signed == (1, -4, 9)


def test_jones_polynomial_misses_third_coefficient():
    assert jones("12a_217", 2).normalized == jones("12a_1228", 2).normalized
    assert _pred("12a_217", 3).head[2] != _pred("12a_1228", 3).head[2]


def test_trefoil_raw_third_coefficient_is_negative(trefoil):
    p = predict(graph_stats(trefoil, "A"), graph_stats(trefoil, "B"), 3)
    tri = p.tail_signed if graph_stats(trefoil, "B").v == 3 else p.head_signed
    assert tri == (1, -1, -1)
    ht = head_tail(jones("3_1", 3))
    got = ht.tail if tri is p.tail_signed else ht.head
    assert tuple(abs(x) for x in got) == (1, 1, 1)


def test_predict_requires_adequacy(kink):
    with pytest.raises(Inapplicable):
        predict(graph_stats(kink, "A"), graph_stats(kink, "B"), 3)
    with pytest.raises(Inapplicable):
        _pred("4_1", 1)


@pytest.mark.parametrize("name", ["3_1", "5_2", "6_2", "7_4", "12a_217"])
def test_prediction_mirror_symmetry(name):
    d, md = KNOTS[name], mirror(KNOTS[name])
    p = _pred(name, 3)
    q = predict(graph_stats(md, "A"), graph_stats(md, "B"), 3)
    mp = mirror_prediction(p)
    assert (q.head_signed, q.tail_signed) == (mp.head_signed, mp.tail_signed)


def test_span_examples(trefoil):
    assert verify_span(jones("3_1", 2), 3).status == PASS
    assert verify_span(jones("4_1", 3), 4).expected == 12
    assert verify_span(jones("4_1", 3), 4).status == PASS
    assert verify_span(jones("4_1", 1), 4).got == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_partial_sums(n):
    for name in ("4_1", "5_2", "6_3"):
        assert partial_sum_check(jones(name, n)).status == PASS


@pytest.mark.parametrize("name", ["3_1", "4_1", "8_19", "10_132"])
def test_three_term_bracket_law(name):
    for pol in "AB":
        c = three_term_check(KNOTS[name], pol)
        assert c.status in (PASS, INAPPLICABLE)
        assert (c.status == PASS) == graph_stats(KNOTS[name], pol).adequate


def test_figure_eight_full_report(figure_eight, census):
    r = verify_stabilization(figure_eight, 4, census=census["4_1"])
    assert r.passed
    assert r.colors == [2, 3, 4] and r.untested == []
    assert r.headtails[3].abs_head == r.headtails[4].abs_head == r.headtails[3].abs_tail
    assert any(c.id == "volume-bounds" and c.status == PASS for c in r.checks)


def test_unknot_report():
    r = verify_stabilization(PDCode.unknot(), 3)
    assert r.passed
    assert all(h.degenerate for h in r.headtails.values())


def test_inadequate_knot_marks_checks_inapplicable():
    r = verify_stabilization(KNOTS["8_19"], 3)
    assert r.passed
    assert any(c.status == INAPPLICABLE for c in r.checks)


def test_every_check_has_a_status():
    r = verify_stabilization(KNOTS["5_2"], 3)
    assert {c.status for c in r.checks} <= {PASS, FAIL, INAPPLICABLE, SKIPPED}
    vol = [c for c in r.checks if c.id == "volume-bounds"]
    assert len(vol) == 1 and vol[0].status == SKIPPED
    json.dumps(r.to_json())


def test_engine_cap_marks_colors_untested():
    r = verify_stabilization(KNOTS["4_1"], 4, frontier_cap=50)
    assert 4 in r.untested
    assert any(c.status == SKIPPED and c.id == "compute[n=4]" for c in r.checks)


def test_volume_bounds_examples(census):
    c = volume_bounds(_pred("4_1", 2), census["4_1"])
    assert c.status == PASS
    assert c.expected == [0.0, pytest.approx(10 * V0)]
    c = volume_bounds(_pred("12a_217", 2), census["12a_217"])
    assert c.expected == [pytest.approx(6 * V0), pytest.approx(70 * V0)]
    assert c.status == PASS
    assert volume_bounds(_pred("3_1", 2), census["3_1"]).status == INAPPLICABLE
    with pytest.raises(MissingVolume):
        volume_bounds(_pred("4_1", 2), None)


def test_volume_bound_failure_is_reported():
    entry = CensusEntry("fake", 100.0, True, True, False)
    assert volume_bounds(_pred("4_1", 2), entry).status == FAIL


def test_census_parsing(tmp_path):
    f = tmp_path / "c.csv"
    f.write_text("name,volume,alternating,prime,torus\n3_1,,true,true,true\n4_1,2.03,yes,yes,no\n")
    c = load_census(f)
    assert c["3_1"].volume is None and c["3_1"].torus
    assert c["4_1"].volume == 2.03 and not c["4_1"].torus
    f.write_text("name,volume,alternating,prime,torus\nx,-1,true,true,false\n")
    with pytest.raises(ValueError):
        load_census(f)


def test_cache_round_trip(tmp_path):
    cache = ResultCache(tmp_path)
    cold = cached_colored_jones(KNOTS["5_2"], 3, cache=cache)
    assert len(list(tmp_path.glob("*.json"))) == 1
    warm = cached_colored_jones(KNOTS["5_2"], 3, cache=cache)
    assert warm == cold
    assert warm.normalized.to_json() == cold.normalized.to_json()
