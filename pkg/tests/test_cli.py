"""End-to-end command line coverage: exit codes, golden bytes, determinism.

The fixture documents under fixtures/ are generated from the example objects
by scripts/generate_fixtures.py; these tests treat them as opaque inputs and
drive the installed commands the way a user would.
"""

import json
import pathlib
import shutil
import subprocess
import time

import pytest
from click.testing import CliRunner

from hopfgal import zoo
from hopfgal.cli import _exit_code, _format_shifted, _verdict_from_tristate, main
from hopfgal.comodule import Verdict
from hopfgal.exact_linear import QQ
from hopfgal.hopf_core import sweedler_h4

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def fx(name: str) -> str:
    return str(FIXTURES / name)


def invoke(args, env=None):
    return CliRunner().invoke(main, [str(a) for a in args], env=env)


def verdict_map(result):
    doc = json.loads(result.stdout)
    return {v["name"]: v["status"] for v in doc["verdicts"]}


# ---------------------------------------------------------------------------
# check


class TestCheckHopf:
    def test_sweedler_passes(self):
        r = invoke(["check", "hopf", fx("hopf_sweedler.json"), "--format", "json"])
        assert r.exit_code == 0
        statuses = verdict_map(r)
        assert set(statuses.values()) == {"pass"}
        assert "antipode_inverse" in statuses
        assert len(statuses) == 13

    def test_corrupted_value_fails_with_localized_witness(self, tmp_path):
        doc = json.load(open(fx("hopf_sweedler.json")))
        doc["sections"]["hopf"]["comult"]["triples"][0][2] = "7"
        p = tmp_path / "bad.json"
        p.write_text(json.dumps(doc))
        r = invoke(["check", "hopf", str(p), "--format", "json"])
        assert r.exit_code == 1
        doc = json.loads(r.stdout)
        failed = [v for v in doc["verdicts"] if v["status"] == "fail"]
        assert failed
        # every failure names the basis element where the identity breaks
        assert all("basis" in v["witness"] for v in failed)

    def test_text_report_lists_every_check(self):
        r = invoke(["check", "hopf", fx("hopf_sweedler.json")])
        assert r.exit_code == 0
        assert "coassociativity" in r.stdout
        assert "dims: hopf=4" in r.stdout


class TestCheckComoduleAlgebra:
    def test_quadratic_field(self):
        r = invoke(["check", "comodule-algebra", fx("qsqrt2.json"), "--format", "json"])
        assert r.exit_code == 0
        statuses = verdict_map(r)
        assert statuses["coaction_multiplicative"] == "pass"
        assert json.loads(r.stdout)["dims"] == {"algebra": 2, "hopf": 2}


class TestCheckGalois:
    def test_quadratic_field_is_galois(self):
        r = invoke(["check", "galois", fx("qsqrt2.json"), "--format", "json"])
        assert r.exit_code == 0
        assert verdict_map(r)["hopf_galois"] == "pass"

    def test_regular_extension_is_galois(self):
        r = invoke(["check", "galois", fx("regular_z4.json"), "--format", "json"])
        assert r.exit_code == 0
        assert verdict_map(r)["hopf_galois"] == "pass"

    def test_trivial_coaction_is_not_galois(self):
        r = invoke(["check", "galois", fx("trivial_coaction.json"), "--format", "json"])
        assert r.exit_code == 1
        doc = json.loads(r.stdout)
        verdict = {v["name"]: v for v in doc["verdicts"]}["hopf_galois"]
        assert verdict["status"] == "fail"
        assert "dimension 2" in verdict["witness"]


class TestCheckCartesian:
    def test_group_change_passes(self):
        r = invoke(["check", "cartesian", fx("cartesian_z4_z2.json"), "--format", "json"])
        assert r.exit_code == 0
        statuses = verdict_map(r)
        assert statuses["cartesian"] == "pass"
        assert statuses["base_restriction"] == "pass"

    def test_dimension_mismatch_fails(self):
        r = invoke(["check", "cartesian", fx("trivial_noncartesian.json"), "--format", "json"])
        assert r.exit_code == 1
        doc = json.loads(r.stdout)
        verdict = {v["name"]: v for v in doc["verdicts"]}["cartesian"]
        assert verdict["status"] == "fail"
        assert "not bijective (2x1, rank 1)" in verdict["witness"]

    def test_identity_morphism_passes(self):
        r = invoke(["check", "cartesian", fx("commutative_identity.json")])
        assert r.exit_code == 0


class TestCheckModule:
    def test_self_module(self):
        r = invoke(["check", "module", fx("module_self_qsqrt2.json"), "--format", "json"])
        assert r.exit_code == 0
        statuses = verdict_map(r)
        assert statuses["hopf_compatibility"] == "pass"
        assert len(statuses) == 5


# ---------------------------------------------------------------------------
# at


class TestAt:
    def test_single_index_golden_line(self):
        r = invoke(["at", "--n", "1", "--k", "2"])
        assert r.exit_code == 0
        assert r.stdout == "2 [L1] - 1 [L0]\n"

    def test_negative_index_golden_json(self):
        r = invoke(["at", "--n", "2", "--k", "-1", "--format", "json"])
        assert r.exit_code == 0
        assert r.stdout == '{"n":2,"k":-1,"coords":[3,-3,1]}\n'

    def test_default_range_is_zero_to_n(self):
        r = invoke(["at", "--n", "2"])
        assert r.exit_code == 0
        lines = r.stdout.splitlines()
        assert lines[0].split() == ["k", "class"]
        assert len(lines) == 4  # header plus k = 0, 1, 2

    def test_explicit_range_with_self_check(self):
        r = invoke(["at", "--n", "2", "--k-range", "-2..3", "--self-check"])
        assert r.exit_code == 0
        assert r.stdout.splitlines()[-1] == "self-check: ok"
        assert "3 [L2] - 8 [L1] + 6 [L0]" in r.stdout

    def test_range_json_rows(self):
        r = invoke(["at", "--n", "1", "--k-range", "0..2", "--format", "json"])
        assert r.exit_code == 0
        doc = json.loads(r.stdout)
        assert doc["rows"] == [
            {"k": 0, "coords": [1, 0]},
            {"k": 1, "coords": [0, 1]},
            {"k": 2, "coords": [-1, 2]},
        ]

    def test_self_check_at_64_is_fast(self):
        started = time.perf_counter()
        r = invoke(["at", "--n", "64", "--self-check"])
        elapsed = time.perf_counter() - started
        assert r.exit_code == 0
        assert elapsed < 5.0

    def test_rejects_negative_degree(self):
        assert invoke(["at", "--n", "-1"]).exit_code == 2

    def test_rejects_both_selectors(self):
        r = invoke(["at", "--n", "2", "--k", "1", "--k-range", "0..1"])
        assert r.exit_code == 2

    @pytest.mark.parametrize("bad", ["1..2..3", "abc..3", "5", "3..1"])
    def test_rejects_malformed_ranges(self, bad):
        assert invoke(["at", "--n", "2", "--k-range", bad]).exit_code == 2


# ---------------------------------------------------------------------------
# phi


class TestPhi:
    def test_commutative_flip(self):
        r = invoke(["phi", fx("commutative_flip.json"), "--format", "json"])
        assert r.exit_code == 0
        doc = json.loads(r.stdout)
        assert doc["phi"] == {
            "rows": 4,
            "cols": 4,
            "triples": [[0, 0, "1"], [1, 2, "1"], [2, 1, "1"], [3, 3, "1"]],
        }

    def test_sweedler_matches_closed_form(self):
        r = invoke(["phi", fx("sweedler_self.json"), "--format", "json"])
        assert r.exit_code == 0
        doc = json.loads(r.stdout)
        expected = zoo.yd_phi_expected(zoo.with_antipode_inverse(sweedler_h4()))
        triples = [
            [i, j, QQ.format(expected.entry(i, j))]
            for i in range(expected.rows)
            for j in range(expected.cols)
            if expected.entry(i, j)
        ]
        assert doc["phi"]["triples"] == triples
        assert {v["name"]: v["status"] for v in doc["verdicts"]}[
            "kappa_after_phi_is_mirror"
        ] == "pass"

    def test_noncartesian_is_refused(self):
        r = invoke(["phi", fx("trivial_noncartesian.json")])
        assert r.exit_code == 1
        assert r.stdout.splitlines()[0] == "kappa not bijective"

    def test_noncartesian_json_reasons(self):
        r = invoke(["phi", fx("trivial_noncartesian.json"), "--format", "json"])
        assert r.exit_code == 1
        doc = json.loads(r.stdout)
        assert doc["error"] == "kappa not bijective"
        assert any("rank 1" in reason for reason in doc["reasons"])


# ---------------------------------------------------------------------------
# bundle


class TestBundle:
    def test_sign_line_bundle(self):
        r = invoke(["bundle", fx("bundle_sign_qsqrt2.json"), "--format", "json"])
        assert r.exit_code == 0
        doc = json.loads(r.stdout)
        assert doc["fgp"]["kind"] == "field"
        assert doc["fgp"]["rank"] == 1
        assert doc["dims"]["bundle"] == 1

    def test_regular_fiber_over_sweedler(self):
        r = invoke(["bundle", fx("bundle_regular_sweedler.json"), "--format", "json"])
        assert r.exit_code == 0
        doc = json.loads(r.stdout)
        assert doc["fgp"]["rank"] == 4
        assert doc["dims"] == {"bundle": 4, "base": 1, "ambient": 4, "fiber": 4}

    def test_text_report_carries_fgp_line(self):
        r = invoke(["bundle", fx("bundle_sign_qsqrt2.json")])
        assert r.exit_code == 0
        assert "fgp: kind=field rank=1" in r.stdout

    def test_requires_marker_section(self, tmp_path):
        doc = json.load(open(fx("bundle_sign_qsqrt2.json")))
        del doc["sections"]["bundle_request"]
        p = tmp_path / "nomarker.json"
        p.write_text(json.dumps(doc))
        r = invoke(["bundle", str(p)])
        assert r.exit_code == 2
        assert "sections.bundle_request" in r.stderr


# ---------------------------------------------------------------------------
# schema errors and warnings


class TestSchemaErrors:
    def test_malformed_json_names_the_file(self, tmp_path):
        p = tmp_path / "broken.json"
        p.write_text('{"schema_version": "1", ')
        r = invoke(["check", "hopf", str(p)])
        assert r.exit_code == 2
        assert str(p) in r.stderr
        assert "invalid JSON" in r.stderr

    def test_wrong_schema_version(self, tmp_path):
        p = tmp_path / "v2.json"
        p.write_text(json.dumps({"schema_version": "2", "field": "Q", "sections": {}}))
        r = invoke(["check", "hopf", str(p)])
        assert r.exit_code == 2
        assert "error at schema_version" in r.stderr

    def test_unknown_section_rejected(self, tmp_path):
        p = tmp_path / "sec.json"
        p.write_text(json.dumps({"schema_version": "1", "field": "Q", "sections": {"mystery": {}}}))
        r = invoke(["check", "hopf", str(p)])
        assert r.exit_code == 2
        assert "sections.mystery" in r.stderr

    def test_missing_required_section(self, tmp_path):
        p = tmp_path / "empty.json"
        p.write_text(json.dumps({"schema_version": "1", "field": "Q", "sections": {}}))
        r = invoke(["check", "hopf", str(p)])
        assert r.exit_code == 2
        assert "sections.hopf" in r.stderr

    def test_bad_field_tag(self, tmp_path):
        p = tmp_path / "field.json"
        p.write_text(json.dumps({"schema_version": "1", "field": "R", "sections": {}}))
        r = invoke(["check", "hopf", str(p)])
        assert r.exit_code == 2
        assert "error at field" in r.stderr

    def test_unparsable_scalar_names_the_triple(self, tmp_path):
        doc = json.load(open(fx("hopf_sweedler.json")))
        doc["sections"]["hopf"]["comult"]["triples"][0][2] = "one half"
        p = tmp_path / "scalar.json"
        p.write_text(json.dumps(doc))
        r = invoke(["check", "hopf", str(p)])
        assert r.exit_code == 2
        assert "sections.hopf.comult.triples[0]" in r.stderr

    def test_float_scalar_rejected(self, tmp_path):
        doc = json.load(open(fx("hopf_sweedler.json")))
        doc["sections"]["hopf"]["comult"]["triples"][0][2] = 0.5
        p = tmp_path / "float.json"
        p.write_text(json.dumps(doc))
        r = invoke(["check", "hopf", str(p)])
        assert r.exit_code == 2
        assert "scalar must be a string" in r.stderr

    def test_duplicate_triple_rejected(self, tmp_path):
        doc = json.load(open(fx("hopf_sweedler.json")))
        triples = doc["sections"]["hopf"]["comult"]["triples"]
        triples.append(list(triples[0]))
        p = tmp_path / "dup.json"
        p.write_text(json.dumps(doc))
        r = invoke(["check", "hopf", str(p)])
        assert r.exit_code == 2
        assert "duplicate entry" in r.stderr

    def test_out_of_bounds_index_rejected(self, tmp_path):
        doc = json.load(open(fx("hopf_sweedler.json")))
        doc["sections"]["hopf"]["comult"]["triples"][0][0] = 99
        p = tmp_path / "oob.json"
        p.write_text(json.dumps(doc))
        r = invoke(["check", "hopf", str(p)])
        assert r.exit_code == 2
        assert "outside" in r.stderr

    def test_shape_mismatch_rejected(self, tmp_path):
        doc = json.load(open(fx("hopf_sweedler.json")))
        doc["sections"]["hopf"]["counit"]["rows"] = 2
        p = tmp_path / "shape.json"
        p.write_text(json.dumps(doc))
        r = invoke(["check", "hopf", str(p)])
        assert r.exit_code == 2
        assert "counit" in r.stderr

    def test_duplicate_basis_names_rejected(self, tmp_path):
        doc = json.load(open(fx("hopf_sweedler.json")))
        names = doc["sections"]["hopf"]["basis_names"]
        names[1] = names[0]
        p = tmp_path / "names.json"
        p.write_text(json.dumps(doc))
        r = invoke(["check", "hopf", str(p)])
        assert r.exit_code == 2
        assert "unique" in r.stderr

    def test_missing_file_is_usage_error(self):
        r = invoke(["check", "hopf", "no_such_file.json"])
        assert r.exit_code == 2

    def test_unknown_key_warns_without_touching_stdout(self, tmp_path):
        doc = json.load(open(fx("hopf_sweedler.json")))
        doc["sections"]["hopf"]["color"] = "blue"
        p = tmp_path / "extra.json"
        p.write_text(json.dumps(doc))
        clean = invoke(["check", "hopf", fx("hopf_sweedler.json"), "--format", "json"])
        noisy = invoke(["check", "hopf", str(p), "--format", "json"])
        assert noisy.exit_code == 0
        assert noisy.stderr.count("warning: unknown key at sections.hopf.color") == 1
        assert noisy.stdout == clean.stdout

    def test_max_dim_cap(self):
        r = invoke(
            ["check", "galois", fx("regular_z4.json")],
            env={"HOPFGAL_MAX_DIM": "8"},
        )
        assert r.exit_code == 2
        assert "exceeds HOPFGAL_MAX_DIM=8" in r.stderr


# ---------------------------------------------------------------------------
# report plumbing


class TestReportPlumbing:
    def test_exit_code_precedence(self):
        assert _exit_code([("a", "pass", None)]) == 0
        assert _exit_code([("a", "pass", None), ("b", "undecided", None)]) == 3
        assert _exit_code([("a", "undecided", None), ("b", "fail", None)]) == 1

    def test_tristate_rendering(self):
        name, status, witness = _verdict_from_tristate(
            "normal_basis", Verdict(None, ("budget exhausted",))
        )
        assert status == "undecided"
        assert witness == "budget exhausted"

    def test_shifted_formatting(self):
        assert _format_shifted((0, 0)) == "0"
        assert _format_shifted((3, -3, 1)) == "1 [L2] - 3 [L1] + 3 [L0]"
        assert _format_shifted((-2,)) == "-2 [L0]"

    def test_timings_flag_adds_a_line(self):
        r = invoke(["check", "hopf", fx("hopf_sweedler.json"), "--timings"])
        assert r.exit_code == 0
        assert "timings_ms:" in r.stdout


# ---------------------------------------------------------------------------
# determinism


APPLICABLE = {
    "qsqrt2.json": [["check", "hopf"], ["check", "comodule-algebra"], ["check", "galois"]],
    "regular_z4.json": [["check", "galois"]],
    "trivial_coaction.json": [["check", "galois"]],
    "hopf_sweedler.json": [["check", "hopf"]],
    "cartesian_z4_z2.json": [["check", "cartesian"], ["phi"]],
    "sweedler_self.json": [["check", "cartesian"], ["phi"]],
    "commutative_identity.json": [["check", "cartesian"], ["phi"]],
    "commutative_flip.json": [["check", "cartesian"], ["phi"]],
    "trivial_noncartesian.json": [["check", "cartesian"], ["phi"]],
    "module_self_qsqrt2.json": [["check", "module"]],
    "bundle_sign_qsqrt2.json": [["bundle"]],
    "bundle_regular_sweedler.json": [["bundle"]],
}


class TestDeterminism:
    def test_every_fixture_is_covered(self):
        assert sorted(APPLICABLE) == sorted(p.name for p in FIXTURES.glob("*.json"))

    @pytest.mark.parametrize("fmt", ["text", "json"])
    def test_full_suite_twice_is_identical(self, fmt):
        def sweep():
            chunks = []
            for name, commands in sorted(APPLICABLE.items()):
                for cmd in commands:
                    args = cmd + [fx(name)]
                    if fmt == "json":
                        args += ["--format", "json"]
                    r = invoke(args)
                    chunks.append((name, cmd[0], r.exit_code, r.stdout))
            return chunks
        assert sweep() == sweep()

    def test_subprocess_runs_are_byte_identical(self):
        hopfgal = shutil.which("hopfgal")
        if hopfgal is None:
            pytest.skip("console script not on PATH")
        cmd = [hopfgal, "check", "galois", fx("qsqrt2.json"), "--format", "json"]
        first = subprocess.run(cmd, capture_output=True)
        second = subprocess.run(cmd, capture_output=True)
        assert first.returncode == second.returncode == 0
        assert first.stdout == second.stdout
        assert first.stdout.endswith(b"\n")


class TestEntryPoint:
    def test_console_script_golden_line(self):
        hopfgal = shutil.which("hopfgal")
        if hopfgal is None:
            pytest.skip("console script not on PATH")
        out = subprocess.run(
            [hopfgal, "at", "--n", "1", "--k", "2"], capture_output=True
        )
        assert out.returncode == 0
        assert out.stdout == b"2 [L1] - 1 [L0]\n"
