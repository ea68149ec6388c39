import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from brat.bratteli import BratteliDiagram
from brat.cli import group_from_data, group_to_data, main
from brat.dot import export_dot
from brat.ordered_group import CyclicOrderedGroup
from gen import diagrams, supernaturals

E55 = "catalog:example-5.5"
FINDIM = "catalog:findim-4-6"

DRIFT_DATA = {
    "levels": [1, 2, 2],
    "matrices": [[[1], [1]], [[1, 1], [0, 1]]],
    "tail": "repeat-last",
}


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestValidate:
    def test_ok(self, capsys):
        status, out, err = run(capsys, "validate", E55)
        assert (status, out, err) == (0, '{"ok": true}\n', "")

    def test_violations_exit_one(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"levels": [1, 2], "matrices": [[[0], [1]]]}))
        status, out, err = run(capsys, "validate", str(path))
        assert status == 1
        report = json.loads(out)
        assert report["ok"] is False
        assert report["violations"][0]["kind"] == "zero-row"
        assert report["violations"][0]["level"] == 1


class TestTowers:
    def test_golden(self, capsys):
        status, out, _ = run(capsys, "towers", E55, "--depth", "4")
        assert status == 0
        assert out == (
            '{"depth": 4, "heights": [[1], [1, 1], [3, 3], [9, 9], [27, 27]], '
            '"gcds": [1, 1, 3, 9, 27], "ratios": [1, 3, 3, 3]}\n'
        )

    def test_default_depth_infinite(self, capsys):
        status, out, _ = run(capsys, "towers", E55)
        payload = json.loads(out)
        assert status == 0 and payload["depth"] == 16
        assert len(payload["gcds"]) == 17

    def test_default_depth_clamps_to_finite_length(self, capsys):
        status, out, _ = run(capsys, "towers", FINDIM)
        payload = json.loads(out)
        assert status == 0 and payload["depth"] == 1
        assert payload["heights"] == [[1], [4, 6]]

    def test_explicit_depth_past_finite_end_is_an_error(self, capsys):
        status, out, err = run(capsys, "towers", FINDIM, "--depth", "8")
        assert (status, out) == (2, "")
        assert err == (
            '{"error": {"type": "input", "message": '
            '"depth 8 exceeds the 1 levels of a finite diagram"}}\n'
        )

    def test_negative_depth(self, capsys):
        status, _, err = run(capsys, "towers", E55, "--depth", "-3")
        assert status == 2
        assert "nonnegative" in json.loads(err)["error"]["message"]


class TestMu:
    def test_example_golden(self, capsys):
        status, out, _ = run(capsys, "mu", E55)
        assert (status, out) == (0, '{"mu": {"3": "inf"}, "exactness": "certified"}\n')

    def test_findim_golden(self, capsys):
        status, out, _ = run(capsys, "mu", FINDIM)
        assert (status, out) == (0, '{"mu": {"2": 1}, "exactness": "certified"}\n')

    def test_truncated_flag(self, capsys, tmp_path):
        path = tmp_path / "drift.json"
        path.write_text(json.dumps(DRIFT_DATA))
        status, out, _ = run(capsys, "mu", str(path))
        assert status == 0
        assert json.loads(out) == {"mu": {}, "exactness": "truncated-at-depth"}

    def test_uhf_catalog_pattern(self, capsys):
        status, out, _ = run(capsys, "mu", "catalog:uhf-12")
        assert (status, out) == (0, '{"mu": {"2": 2, "3": 1}, "exactness": "certified"}\n')

    def test_deterministic_bytes(self, capsys):
        first = run(capsys, "mu", E55)
        second = run(capsys, "mu", E55)
        assert first == second


class TestOdometer:
    def test_json_golden(self, capsys):
        status, out, _ = run(capsys, "odometer", E55, "--depth", "4")
        assert status == 0
        assert out == (
            '{"levels": [1, 1, 1, 1, 1], '
            '"matrices": [[[1]], [[3]], [[3]], [[3]]], "tail": "repeat-last"}\n'
        )

    def test_dot_golden(self, capsys):
        status, out, _ = run(capsys, "odometer", E55, "--depth", "2", "--format", "dot")
        assert status == 0
        assert out == (
            "digraph bratteli {\n"
            "  rankdir=TB;\n"
            '  node [shape=circle, label=""];\n'
            "  { rank=same; v_0_0; }\n"
            "  { rank=same; v_1_0; }\n"
            "  { rank=same; v_2_0; }\n"
            "  v_0_0 -> v_1_0;\n"
            "  v_1_0 -> v_2_0;\n"
            "  v_1_0 -> v_2_0;\n"
            "  v_1_0 -> v_2_0;\n"
            "}\n"
        )

    def test_output_feeds_back_into_validate(self, capsys, tmp_path):
        status, out, _ = run(capsys, "odometer", E55, "--depth", "3")
        path = tmp_path / "odo.json"
        path.write_text(out)
        status, out, _ = run(capsys, "validate", str(path))
        assert (status, out) == (0, '{"ok": true}\n')


class TestDot:
    def test_labels_past_parallel_limit(self):
        text = export_dot(BratteliDiagram((1, 1), (((5,),),)), 1)
        assert 'v_0_0 -> v_1_0 [label="5"];' in text
        assert text.count("v_0_0 -> v_1_0;") == 0

    def test_parallel_edges_at_limit(self):
        text = export_dot(BratteliDiagram((1, 1), (((4,),),)), 1)
        assert text.count("v_0_0 -> v_1_0;") == 4

    def test_zero_multiplicity_omitted(self):
        text = export_dot(BratteliDiagram((1, 2, 2), (((1,), (1,)), ((1, 0), (1, 1)))), 2)
        assert "v_1_1 -> v_2_0" not in text
        assert text.index("v_0_0 -> v_1_0") < text.index("v_0_0 -> v_1_1")


class TestPremorphism:
    def test_data_golden(self, capsys):
        status, out, _ = run(capsys, "premorphism", E55, "--depth", "2")
        assert status == 0
        assert out == (
            '{"level_map": [0, 1, 2], '
            '"matrices": [[[1]], [[1], [1]], [[1], [1]]]}\n'
        )

    def test_verify(self, capsys):
        status, out, _ = run(capsys, "premorphism", E55, "--depth", "3", "--verify")
        assert (status, out) == (0, '{"verified": true, "depth": 3}\n')


class TestEmbed:
    def test_yes(self, capsys):
        status, out, _ = run(capsys, "embed", E55, "--uhf", '{"3": "inf"}')
        assert (status, out) == (0, '{"embeds": "yes", "depth": 16}\n')

    def test_no_certified(self, capsys):
        status, out, _ = run(capsys, "embed", E55, "--uhf", '{"2": 1}')
        assert (status, out) == (1, '{"embeds": "no-certified", "depth": 16}\n')

    def test_no_within_depth(self, capsys, tmp_path):
        path = tmp_path / "drift.json"
        path.write_text(json.dumps(DRIFT_DATA))
        status, out, _ = run(capsys, "embed", str(path), "--uhf", '{"2": 1}')
        assert (status, out) == (1, '{"embeds": "no-within-depth", "depth": 16}\n')

    def test_trivial_always_embeds(self, capsys):
        status, out, _ = run(capsys, "embed", FINDIM, "--uhf", "{}")
        assert (status, out) == (0, '{"embeds": "yes", "depth": 1}\n')

    def test_bad_number(self, capsys):
        status, _, err = run(capsys, "embed", E55, "--uhf", '{"4": 1}')
        assert status == 2 and "bad supernatural number" in json.loads(err)["error"]["message"]


class TestK0Divides:
    def test_witness(self, capsys):
        status, out, _ = run(capsys, "k0-divides", E55, "--n", "27")
        assert (status, out) == (0, '{"stage": 4, "vector": [1, 1]}\n')

    def test_miss(self, capsys):
        status, out, _ = run(capsys, "k0-divides", E55, "--n", "2")
        assert (status, out) == (1, '{"witness": null, "depth": 16}\n')

    def test_bad_n(self, capsys):
        status, _, err = run(capsys, "k0-divides", E55, "--n", "0")
        assert status == 2 and "positive" in json.loads(err)["error"]["message"]


class TestRsub:
    def test_member(self, capsys):
        status, out, _ = run(capsys, "rsub", E55, "--stage", "1", "--vector", "1,1")
        assert status == 0
        assert out == '{"member": true, "stage": 1, "lambda": "1", "m": 1, "q": 1}\n'

    def test_scaled_member(self, capsys):
        status, out, _ = run(capsys, "rsub", E55, "--stage", "2", "--vector", "6,6")
        assert status == 0
        assert json.loads(out) == {"member": True, "stage": 2, "lambda": "2", "m": 1, "q": 2}

    def test_miss(self, capsys):
        status, out, _ = run(capsys, "rsub", E55, "--stage", "1", "--vector", "1,0")
        assert status == 1
        assert out == '{"member": false, "reason": "no witness up to depth", "depth": 16}\n'

    def test_stage_out_of_range(self, capsys):
        status, _, err = run(capsys, "rsub", FINDIM, "--stage", "3", "--vector", "1,1")
        assert status == 2 and "outside" in json.loads(err)["error"]["message"]

    def test_bad_vector(self, capsys):
        status, _, err = run(capsys, "rsub", E55, "--stage", "1", "--vector", "1,x")
        assert status == 2 and "bad integer vector" in json.loads(err)["error"]["message"]


class TestTheta:
    def test_golden(self, capsys):
        status, out, _ = run(capsys, "theta", E55, "--x", "1/3")
        assert (status, out) == (0, '{"stage": 2, "vector": [1, 1]}\n')

    def test_unit_itself(self, capsys):
        status, out, _ = run(capsys, "theta", E55, "--x", "1")
        assert (status, out) == (0, '{"stage": 0, "vector": [1]}\n')

    def test_outside_rational_group(self, capsys):
        status, _, err = run(capsys, "theta", E55, "--x", "1/5")
        assert status == 2
        assert "outside the rational group" in json.loads(err)["error"]["message"]

    def test_admissible_but_too_shallow(self, capsys):
        status, _, err = run(capsys, "theta", E55, "--x", "1/27", "--depth", "3")
        assert status == 2
        assert "not yet divisible" in json.loads(err)["error"]["message"]

    def test_bad_fraction(self, capsys):
        status, _, err = run(capsys, "theta", E55, "--x", "1/0")
        assert status == 2 and "bad rational" in json.loads(err)["error"]["message"]


class TestDivide:
    def test_golden(self, capsys):
        status, out, _ = run(capsys, "divide", E55, "--stage", "1", "--vector", "1,1", "--m", "3")
        assert (status, out) == (0, '{"stage": 2, "vector": [1, 1]}\n')

    def test_miss(self, capsys):
        status, out, _ = run(capsys, "divide", E55, "--stage", "1", "--vector", "1,1", "--m", "2")
        assert (status, out) == (1, '{"witness": null, "depth": 16}\n')

    def test_negative_entries_rejected(self, capsys):
        status, _, err = run(capsys, "divide", E55, "--stage", "1", "--vector", "1,-1", "--m", "2")
        assert status == 2 and "nonnegative" in json.loads(err)["error"]["message"]


class TestTelescope:
    def test_golden(self, capsys):
        status, out, _ = run(capsys, "telescope", E55, "--cuts", "1,3")
        assert status == 0
        assert out == (
            '{"levels": [1, 2, 2], '
            '"matrices": [[[1], [1]], [[5, 4], [4, 5]]], "tail": "repeat-last"}\n'
        )

    def test_bad_cuts(self, capsys):
        status, _, err = run(capsys, "telescope", E55, "--cuts", "3,2")
        assert status == 2 and "increasing" in json.loads(err)["error"]["message"]

    def test_finite_overrun(self, capsys):
        status, _, err = run(capsys, "telescope", FINDIM, "--cuts", "1,2")
        assert status == 2 and "exceeds" in json.loads(err)["error"]["message"]


class TestSn:
    def test_divides(self, capsys):
        status, out, _ = run(capsys, "sn", "divides", '{"2": 1}', '{"2": "inf"}')
        assert (status, out) == (0, '{"divides": true}\n')

    def test_divides_false_exit(self, capsys):
        status, out, _ = run(capsys, "sn", "divides", '{"2": 2}', '{"2": 1}')
        assert (status, out) == (1, '{"divides": false}\n')

    def test_mul(self, capsys):
        status, out, _ = run(capsys, "sn", "mul", '{"2": 1}', '{"2": "inf"}', '{"3": 2}')
        assert (status, out) == (0, '{"product": {"2": "inf", "3": 2}}\n')

    def test_sup_inf(self, capsys):
        status, out, _ = run(capsys, "sn", "sup", '{"2": 1}', '{"2": "inf", "3": 1}')
        assert (status, out) == (0, '{"sup": {"2": "inf", "3": 1}}\n')
        status, out, _ = run(capsys, "sn", "inf", '{"2": 1}', '{"2": "inf", "3": 1}')
        assert (status, out) == (0, '{"inf": {"2": 1}}\n')

    def test_ell(self, capsys):
        status, out, _ = run(capsys, "sn", "ell", '{"2": "inf"}', "3")
        assert (status, out) == (0, '{"ell": 8}\n')

    def test_ell_arity(self, capsys):
        status, _, err = run(capsys, "sn", "ell", '{"2": "inf"}')
        assert status == 2 and "stage" in json.loads(err)["error"]["message"]

    def test_ell_bad_stage(self, capsys):
        status, _, err = run(capsys, "sn", "ell", '{"2": "inf"}', "x")
        assert status == 2 and "bad stage" in json.loads(err)["error"]["message"]

    def test_divides_arity(self, capsys):
        status, _, _ = run(capsys, "sn", "divides", "{}")
        assert status == 2

    def test_bad_json_operand(self, capsys):
        status, _, err = run(capsys, "sn", "mul", "{oops}")
        assert status == 2 and "bad supernatural number" in json.loads(err)["error"]["message"]


class TestGroup:
    def test_propd_holds(self, capsys):
        status, out, _ = run(capsys, "group", "propd", "catalog:cone-2-3-unit-2")
        assert (status, out) == (0, '{"holds": true}\n')

    def test_propd_counterexample(self, capsys):
        status, out, _ = run(capsys, "group", "propd", "catalog:cone-2-3-unit-6")
        assert (status, out) == (1, '{"holds": false, "counterexample": [2, 3]}\n')

    def test_maxsn_absent(self, capsys):
        status, out, _ = run(capsys, "group", "maxsn", "catalog:free-product-2-3")
        assert (status, out) == (1, '{"maxsn": null}\n')

    def test_maxsn_trivial_but_present(self, capsys):
        status, out, _ = run(capsys, "group", "maxsn", "catalog:cone-2-3-unit-2")
        assert (status, out) == (0, '{"maxsn": {}}\n')

    def test_maxsn_quadratic(self, capsys):
        status, out, _ = run(capsys, "group", "maxsn", "catalog:quadratic-sqrt2")
        assert (status, out) == (0, '{"maxsn": {"2": "inf"}}\n')

    def test_divides_witness(self, capsys):
        status, out, _ = run(capsys, "group", "divides", "catalog:cone-2-3-unit-6", "--n", "2")
        assert (status, out) == (0, '{"witness": 3}\n')

    def test_divides_miss(self, capsys):
        status, out, _ = run(capsys, "group", "divides", "catalog:cone-2-3-unit-6", "--n", "6")
        assert (status, out) == (1, '{"witness": null}\n')

    def test_divides_quadratic_witness(self, capsys):
        status, out, _ = run(capsys, "group", "divides", "catalog:quadratic-sqrt2", "--n", "2")
        assert (status, out) == (0, '{"witness": {"k": "1/2", "z": 0}}\n')

    def test_rsub_cyclic(self, capsys):
        status, out, _ = run(capsys, "group", "rsub", "catalog:free-product-2-3", "--g", "2")
        assert (status, out) == (0, '{"member": true, "m": 3, "q": 1}\n')

    def test_rsub_quadratic(self, capsys):
        status, out, _ = run(capsys, "group", "rsub", "catalog:quadratic-sqrt2", "--g", "3/4,0")
        assert (status, out) == (0, '{"member": true, "m": 4, "q": 3}\n')

    def test_rsub_quadratic_miss(self, capsys):
        status, out, _ = run(capsys, "group", "rsub", "catalog:quadratic-sqrt2", "--g", "0,1")
        assert (status, out) == (1, '{"member": false}\n')

    def test_rsub_negative_element_with_equals_form(self, capsys):
        status, out, _ = run(capsys, "group", "rsub", "catalog:free-product-2-3", "--g=-2")
        assert (status, out) == (0, '{"member": true, "m": 3, "q": -1}\n')

    def test_missing_flag(self, capsys):
        status, _, err = run(capsys, "group", "divides", "catalog:cone-2-3-unit-6")
        assert status == 2 and "--n" in json.loads(err)["error"]["message"]

    def test_outside_group_element(self, capsys):
        status, _, err = run(capsys, "group", "rsub", "catalog:quadratic-sqrt2", "--g", "1/3,0")
        assert status == 2 and "outside the group" in json.loads(err)["error"]["message"]


class TestCatalog:
    def test_list_golden(self, capsys):
        status, out, _ = run(capsys, "catalog")
        assert status == 0
        assert out == (
            '{"entries": ["cone-2-3-unit-2", "cone-2-3-unit-6", "example-5.5", '
            '"findim-4-6", "free-product-2-3", "quadratic-sqrt2"], '
            '"patterns": ["uhf-<n>"]}\n'
        )

    def test_entry_payload(self, capsys):
        status, out, _ = run(capsys, "catalog", "findim-4-6")
        assert status == 0
        entry = json.loads(out)
        assert entry["kind"] == "diagram"
        assert entry["payload"]["matrices"] == [[[4], [6]]]
        assert entry["expected"]["mu"] == {"value": {"2": 1}, "exactness": "certified"}

    def test_uhf_pattern_entry(self, capsys):
        status, out, _ = run(capsys, "catalog", "uhf-30")
        entry = json.loads(out)
        assert status == 0 and entry["payload"]["tail"] == "repeat-last"
        assert entry["expected"]["mu"]["value"] == {"2": 1, "3": 1, "5": 1}

    def test_unknown(self, capsys):
        status, _, err = run(capsys, "catalog", "uhf-0")
        assert status == 2 and "unknown catalog entry" in json.loads(err)["error"]["message"]


class TestLoading:
    def test_diagram_from_file(self, capsys, tmp_path):
        path = tmp_path / "d.json"
        path.write_text(json.dumps({"levels": [1, 1], "matrices": [[[6]]], "tail": "repeat-last"}))
        status, out, _ = run(capsys, "mu", str(path))
        assert (status, out) == (0, '{"mu": {"2": "inf", "3": "inf"}, "exactness": "certified"}\n')

    def test_group_from_file(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(json.dumps({"kind": "cyclic", "generators": [1], "unit": 12}))
        status, out, _ = run(capsys, "group", "maxsn", str(path))
        assert (status, out) == (0, '{"maxsn": {"2": 2, "3": 1}}\n')

    def test_quadratic_group_from_file(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(json.dumps({
            "kind": "quadratic",
            "H": {"2": "inf", "3": 1},
            "alpha_square": 2,
            "unit": {"k": "3/2", "z": 4},
        }))
        status, out, _ = run(capsys, "group", "divides", str(path), "--n", "2")
        assert (status, out) == (0, '{"witness": {"k": "3/4", "z": 2}}\n')

    def test_missing_file(self, capsys):
        status, _, err = run(capsys, "mu", "no-such-file.json")
        assert status == 2 and "cannot read" in json.loads(err)["error"]["message"]

    def test_bad_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{")
        status, _, err = run(capsys, "mu", str(path))
        assert status == 2 and "bad JSON" in json.loads(err)["error"]["message"]

    def test_kind_mismatch(self, capsys):
        status, _, err = run(capsys, "mu", "catalog:cone-2-3-unit-6")
        assert status == 2 and "is a group, not a diagram" in json.loads(err)["error"]["message"]
        status, _, err = run(capsys, "group", "propd", E55)
        assert status == 2 and "is a diagram, not a group" in json.loads(err)["error"]["message"]

    def test_bad_group_kind(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(json.dumps({"kind": "mystery"}))
        status, _, err = run(capsys, "group", "propd", str(path))
        assert status == 2 and "cyclic" in json.loads(err)["error"]["message"]


class TestSerializationRoundTrips:
    def test_cyclic_group(self):
        group = CyclicOrderedGroup((2, 3), 6)
        assert group_from_data(group_to_data(group)) == group

    @given(diagrams())
    def test_diagram_via_json_text(self, diagram):
        text = json.dumps(diagram.to_data())
        assert BratteliDiagram.from_data(json.loads(text)) == diagram

    @given(supernaturals())
    def test_supernatural_via_json_text(self, number):
        from brat.supernatural import SupernaturalNumber

        text = json.dumps(number.to_data())
        assert SupernaturalNumber.from_data(json.loads(text)) == number


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "brat", "mu", E55],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert proc.stdout == '{"mu": {"3": "inf"}, "exactness": "certified"}\n'
