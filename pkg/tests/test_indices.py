from collections import defaultdict

import pytest

from cfcalc import (
    CharacteristicCycle,
    ConstructibleFunction,
    Expectations,
    ModelError,
    RealComplexPair,
    Stratum,
    build_model,
    full_subcomplex,
    hyperfunction_dimension,
    hyperfunction_index,
    indicator,
    parity_index,
    simplex,
    smooth_stratum,
    solution_index,
    subcomplex,
    verify_scene,
)
from conftest import diameter, disk, polygon, reflection


def count_components(sims) -> int:
    adjacency = defaultdict(set)
    vertices = set()
    for s in sims:
        vs = s.vertices
        vertices.update(vs)
        for a in vs:
            adjacency[a].update(v for v in vs if v != a)
    seen: set = set()
    components = 0
    for v in sorted(vertices):
        if v in seen:
            continue
        components += 1
        stack = [v]
        while stack:
            u = stack.pop()
            if u not in seen:
                seen.add(u)
                stack.extend(adjacency[u] - seen)
    return components


def link_within(support, center):
    """Simplices of the support avoiding center but spanning a coface with it."""
    out = []
    for s in support.simplices:
        if center.contains(s) or set(center.vertices) & set(s.vertices):
            continue
        joined = tuple(sorted(set(s.vertices) | set(center.vertices)))
        if support.has(joined):
            out.append(s)
    return out


def one_variable_pair():
    d = disk(3)
    return RealComplexPair(
        ambient=d,
        real_form=diameter(d),
        complex_dim=1,
        conjugation=reflection(d),
        probes=(simplex("c"), simplex("b0", "c"), simplex("b3", "c")),
    )


class TestStratumValidation:
    def test_multiplicity_must_be_positive(self):
        d = disk(3)
        with pytest.raises(ModelError, match="multiplicity"):
            smooth_stratum("flat", full_subcomplex(d), 0, 0)

    def test_disconnected_support_rejected(self):
        d = disk(3)
        two_points = subcomplex(d, [["b0"], ["b3"]])
        with pytest.raises(ModelError, match="disconnected"):
            smooth_stratum("pts", two_points, 1, 1)

    def test_eu_must_live_on_support(self):
        d = disk(3)
        origin = subcomplex(d, [["c"]])
        stray = indicator(full_subcomplex(d))
        with pytest.raises(ModelError, match="not supported"):
            Stratum("origin", origin, 1, 1, stray, smooth=False)

    def test_smooth_forces_unit_eu(self):
        d = disk(3)
        origin = subcomplex(d, [["c"]])
        doubled = ConstructibleFunction(d, {simplex("c"): 2})
        with pytest.raises(ModelError, match="smooth"):
            Stratum("origin", origin, 1, 1, doubled, smooth=True)

    def test_empty_support_rejected(self):
        d = disk(3)
        with pytest.raises(ModelError, match="empty"):
            smooth_stratum("nothing", subcomplex(d, []), 1, 1)


class TestCycleAndPair:
    def test_duplicate_names_rejected(self):
        d = disk(3)
        st1 = smooth_stratum("flat", full_subcomplex(d), 0, 1)
        st2 = smooth_stratum("flat", subcomplex(d, [["c"]]), 1, 1)
        with pytest.raises(ModelError, match="names"):
            CharacteristicCycle([st1, st2])

    def test_duplicate_supports_rejected(self):
        d = disk(3)
        st1 = smooth_stratum("one", full_subcomplex(d), 0, 1)
        st2 = smooth_stratum("two", full_subcomplex(d), 0, 2)
        with pytest.raises(ModelError, match="supports"):
            CharacteristicCycle([st1, st2])

    def test_conjugation_fixed_set_must_match(self):
        d = disk(3)
        wrong = subcomplex(d, [["c"]])
        with pytest.raises(ModelError, match="fixed point set"):
            RealComplexPair(d, wrong, 1, reflection(d))

    def test_probe_must_lie_in_real_form(self):
        d = disk(3)
        with pytest.raises(ModelError, match="probe"):
            RealComplexPair(d, diameter(d), 1, None, (simplex("b1"),))


class TestIndexFormulas:
    def test_solution_index_one_variable(self):
        pair = one_variable_pair()
        origin = smooth_stratum("origin", subcomplex(pair.ambient, [["c"]]), 1, 2)
        flat = smooth_stratum("flat", full_subcomplex(pair.ambient), 0, 3)
        cycle = CharacteristicCycle([origin, flat])
        sol = solution_index(cycle, pair.ambient)
        assert sol.value("c") == 3 - 2  # codim signs: +flat, -origin
        assert sol.value(["b1", "c"]) == 3

    def test_hyperfunction_index_one_variable(self):
        pair = one_variable_pair()
        origin = smooth_stratum("origin", subcomplex(pair.ambient, [["c"]]), 1, 2)
        flat = smooth_stratum("flat", full_subcomplex(pair.ambient), 0, 3)
        hyper = hyperfunction_index(pair, CharacteristicCycle([origin, flat]))
        assert hyper.value("c") == 5
        assert hyper.value(["b0", "c"]) == 3
        assert hyper.value(["b3", "c"]) == 3

    def test_dimension_matches_index_when_smooth(self):
        pair = one_variable_pair()
        origin = smooth_stratum("origin", subcomplex(pair.ambient, [["c"]]), 1, 2)
        flat = smooth_stratum("flat", full_subcomplex(pair.ambient), 0, 3)
        cycle = CharacteristicCycle([origin, flat])
        dim = hyperfunction_dimension(pair, cycle)
        hyper = hyperfunction_index(pair, cycle)
        for p in pair.probes:
            assert dim.value(p) == hyper.value(p)
        assert all(v >= 0 for _, v in dim.items)

    def test_dimension_refuses_singular_strata(self):
        scene = build_model("node_curve")
        with pytest.raises(ModelError, match="node"):
            hyperfunction_dimension(scene.pair, scene.cycle)

    def test_parity_index_node(self):
        scene = build_model("node_curve")
        parity = parity_index(scene.pair, scene.cycle)
        assert parity.value(["c.c"]) == 0  # eu = 2 at the crossing
        assert parity.value(["b0.c", "c.c"]) == 1

    def test_node_center_doubles(self):
        scene = build_model("node_curve", m=2)
        hyper = hyperfunction_index(scene.pair, scene.cycle)
        assert hyper.value(["c.c"]) == 4
        assert hyper.value(["b0.c", "c.c"]) == 2
        assert hyper.value(["b0.b0", "b0.c", "c.c"]) == 0

    def test_linearity_in_cycles(self):
        pair = one_variable_pair()
        origin = smooth_stratum("origin", subcomplex(pair.ambient, [["c"]]), 1, 2)
        flat = smooth_stratum("flat", full_subcomplex(pair.ambient), 0, 3)
        both = CharacteristicCycle([origin, flat])
        only_origin = CharacteristicCycle([origin])
        only_flat = CharacteristicCycle([flat])
        for op in (
            lambda cc: solution_index(cc, pair.ambient),
            lambda cc: hyperfunction_index(pair, cc),
            lambda cc: hyperfunction_dimension(pair, cc),
        ):
            assert op(both) == op(only_origin) + op(only_flat)
        scaled = CharacteristicCycle(
            [smooth_stratum("origin", subcomplex(pair.ambient, [["c"]]), 1, 6)]
        )
        assert solution_index(scaled, pair.ambient) == 3 * solution_index(
            only_origin, pair.ambient
        )


class TestBranchCountOracle:
    def test_node_link_has_two_circles(self):
        """The eu override at the crossing is the branch count of the link."""
        scene = build_model("node_curve")
        support = scene.subcomplex("node")
        link = link_within(support, simplex("c.c"))
        assert count_components(link) == 2
        (stratum,) = scene.cycle
        assert stratum.eu.value(["c.c"]) == 2

    def test_smooth_line_link_is_one_circle(self):
        scene = build_model("smooth_line_in_C2")
        support = scene.subcomplex("complex_line")
        link = link_within(support, simplex("c.c"))
        assert count_components(link) == 1


class TestVerifyScene:
    def test_every_model_passes(self):
        for name in (
            "kashiwara_point", "pair_C_R", "smooth_line_in_C2",
            "node_curve", "antipodal_cover",
        ):
            report = build_model(name).verify()
            assert report.passed, report.to_text()

    def test_node_dimension_reported_not_applicable(self):
        report = build_model("node_curve").verify()
        entries = [e for e in report.entries if e.check == "dimension_formula"]
        assert entries and all(e.status == "not_applicable" for e in entries)
        assert "singular" in entries[0].note

    def test_failing_expectation_shows_values(self):
        scene = build_model("kashiwara_point")
        wrong = Expectations(hyperfunction_index=((simplex("c"), 99),))
        report = verify_scene(scene.pair, scene.cycle, wrong, name="tampered")
        assert not report.passed
        (entry,) = [e for e in report.entries if e.status == "fail"]
        assert entry.check == "value[hyperfunction_index]"
        assert entry.expected == "99" and entry.computed == "5"

    def test_declaring_inapplicable_check_fails(self):
        scene = build_model("kashiwara_point")
        bold = Expectations(checks=("covering_parity",))
        report = verify_scene(scene.pair, scene.cycle, bold)
        declared = [e for e in report.entries if e.check == "declared_checks"]
        assert len(declared) == 1 and declared[0].status == "fail"

    def test_seed_changes_random_subjects_not_verdict(self):
        scene = build_model("pair_C_R")
        for seed in (0, 1, 99):
            assert scene.verify(seed=seed).passed

    def test_report_renders(self):
        report = build_model("pair_C_R").verify()
        text = report.to_text()
        assert text.splitlines()[0] == "scene: pair_C_R(k=3, m=1)"
        assert "result: PASS" in text
        blob = report.to_json_obj()
        assert blob["passed"] is True
        assert blob["counts"]["fail"] == 0
        assert {e["check"] for e in blob["entries"]} >= {
            "triangle_identity", "parity_formula",
        }
