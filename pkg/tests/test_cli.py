from __future__ import annotations

import json

import pytest

from algebra.catalog import boolean_algebra, lukasiewicz_chain, two
from algebra.structure import FiniteIpoAlgebra
from ui.cli import EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, main
from ui.documents import parse


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCheck:
    def test_affirmative(self, capsys, write_doc, noncyclic):
        code, out, _ = _run(capsys, "check", write_doc(noncyclic))
        assert code == EXIT_OK
        assert "commutative" in out

    def test_negative_with_witness(self, capsys, write_doc, noncyclic):
        ident = list(range(noncyclic.n))
        broken = FiniteIpoAlgebra.from_tables(noncyclic.leq, noncyclic.mul, ident, ident)
        code, out, _ = _run(capsys, "--format", "json", "check", write_doc(broken))
        assert code == EXIT_NEGATIVE
        report = json.loads(out)
        assert report["flags"]["antitone"] is False
        assert report["witnesses"]["antitone"]

    def test_parse_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{ nope", encoding="utf-8")
        code, _, err = _run(capsys, "check", str(path))
        assert code == EXIT_USAGE
        assert "line 1" in err

    def test_unknown_subcommand(self, capsys):
        code, _, _ = _run(capsys, "frobnicate")
        assert code == EXIT_USAGE

    def test_strict_flag(self, capsys, tmp_path, diamond, write_doc):
        body = json.loads(open(write_doc(diamond), encoding="utf-8").read())
        body["extra"] = 1
        path = tmp_path / "extra.json"
        path.write_text(json.dumps(body), encoding="utf-8")
        assert _run(capsys, "check", str(path))[0] == EXIT_OK
        assert _run(capsys, "--strict", "check", str(path))[0] == EXIT_USAGE


def test_classify(capsys, write_doc, diamond):
    code, out, _ = _run(capsys, "classify", write_doc(diamond))
    assert code == EXIT_OK
    lines = out.split()
    assert "loc_int_ipo_semigroup" in lines
    assert "ipo_monoid" not in lines


def test_decompose_then_glue(capsys, write_doc, diamond, tmp_path):
    code, out, _ = _run(capsys, "decompose", write_doc(diamond))
    assert code == EXIT_OK
    system_path = tmp_path / "system.json"
    system_path.write_text(out, encoding="utf-8")
    code, out, err = _run(capsys, "glue", str(system_path))
    assert code == EXIT_OK
    assert err == ""
    assert parse(out).payload == diamond


def test_defective_glue_exits_negative(capsys, write_doc, collapsing_diamond):
    code, out, err = _run(capsys, "glue", write_doc(collapsing_diamond))
    assert code == EXIT_NEGATIVE
    assert "defect transitivity" in err
    assert parse(out).payload.n == 8


def test_glue_linear(capsys, write_doc):
    code, out, _ = _run(capsys, "glue", "--linear", write_doc(two()), write_doc(lukasiewicz_chain(3)))
    assert code == EXIT_OK
    assert parse(out).payload.n == 5


def test_subreduct(capsys, write_doc, diamond):
    code, out, _ = _run(capsys, "subreduct", write_doc(diamond))
    assert code == EXIT_NEGATIVE
    assert "bounds" in out
    assert _run(capsys, "subreduct", write_doc(lukasiewicz_chain(3)))[0] == EXIT_OK


def test_extend(capsys, write_doc, diamond):
    code, out, _ = _run(capsys, "extend", "--bottom", write_doc(boolean_algebra(2)), write_doc(lukasiewicz_chain(3)))
    assert code == EXIT_OK
    assert parse(out).payload.n == 7
    code, _, err = _run(capsys, "extend", write_doc(diamond))
    assert code == EXIT_NEGATIVE
    assert "0_p <= 1_q" in err


def test_enumerate_rows(capsys):
    code, out, _ = _run(capsys, "enumerate", "--class", "ipo_semigroup", "--size", "1..3")
    assert code == EXIT_OK
    assert out.splitlines()[:3] == ["ipo_semigroup,1,1", "ipo_semigroup,2,4", "ipo_semigroup,3,10"]


def test_enumerate_output_independent_of_workers(capsys):
    outputs = []
    for workers in ("1", "4", "8"):
        code, out, _ = _run(
            capsys, "enumerate", "--class", "loc_int_ipo_semigroup", "--size", "4",
            "--retain", "--workers", workers,
        )
        assert code == EXIT_OK
        outputs.append(out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_enumerate_budget_is_usage_error(capsys):
    code, _, err = _run(capsys, "enumerate", "--class", "ipo_semigroup", "--size", "9")
    assert code == EXIT_USAGE
    assert "budget" in err


def test_composite_route_on_direct_only_class_is_usage_error(capsys):
    code, _, err = _run(
        capsys, "enumerate", "--class", "ipo_monoid", "--size", "2", "--route", "composite"
    )
    assert code == EXIT_USAGE
    assert "no composite route" in err


def test_enumerate_with_cache(capsys, tmp_path):
    argv = ("--set", f"store.path={tmp_path / 'cache.db'}", "enumerate",
            "--class", "integral_ipo_monoid", "--size", "4", "--retain", "--cache")
    first = _run(capsys, *argv)
    second = _run(capsys, *argv)
    assert first[0] == second[0] == EXIT_OK
    assert first[1] == second[1]


def test_dualize_and_primalize(capsys, write_doc, diamond, tmp_path):
    code, out, _ = _run(capsys, "dualize", write_doc(diamond))
    assert code == EXIT_OK
    dual_path = tmp_path / "dual.json"
    dual_path.write_text(out, encoding="utf-8")
    code, out, _ = _run(capsys, "primalize", str(dual_path))
    assert code == EXIT_OK
    primal = tmp_path / "primal.json"
    primal.write_text(out, encoding="utf-8")
    assert _run(capsys, "iso", str(primal), write_doc(diamond))[0] == EXIT_OK


def test_dualize_rejects_non_idempotent(capsys, write_doc):
    code, _, _ = _run(capsys, "dualize", write_doc(lukasiewicz_chain(3)))
    assert code == EXIT_NEGATIVE


def test_export(capsys, write_doc, diamond, tmp_path):
    code, out, _ = _run(capsys, "export", "--mode", "order", write_doc(diamond))
    assert code == EXIT_OK
    assert out.startswith("strict digraph")
    target = tmp_path / "order.dot"
    assert _run(capsys, "export", "--mode", "order", "--out", str(target), write_doc(diamond))[0] == EXIT_OK
    assert target.read_text(encoding="utf-8").startswith("strict digraph")
    assert _run(capsys, "export", "--mode", "dual", write_doc(diamond))[0] == EXIT_USAGE


class TestIso:
    def test_relabelled_copy(self, capsys, write_doc):
        alg = lukasiewicz_chain(4)
        code, out, _ = _run(capsys, "iso", write_doc(alg), write_doc(alg.relabel([2, 0, 3, 1])))
        assert code == EXIT_OK
        assert out.startswith("isomorphic")

    def test_distinct(self, capsys, write_doc):
        code, out, _ = _run(capsys, "iso", write_doc(lukasiewicz_chain(4)), write_doc(boolean_algebra(2)))
        assert code == EXIT_NEGATIVE
        assert out.strip() == "not isomorphic"

    def test_duals(self, capsys, write_doc, dual_chain):
        assert _run(capsys, "iso", write_doc(dual_chain), write_doc(dual_chain))[0] == EXIT_OK

    def test_mixed_kinds(self, capsys, write_doc, dual_chain, diamond):
        assert _run(capsys, "iso", write_doc(diamond), write_doc(dual_chain))[0] == EXIT_USAGE


def test_set_override_reaches_config(capsys, write_doc, diamond):
    code, out, _ = _run(capsys, "--set", "io.indent=0", "decompose", write_doc(diamond))
    assert code == EXIT_OK
    assert "\n  " not in out


def test_bad_set_syntax(capsys, write_doc, diamond):
    assert _run(capsys, "--set", "io.indent", "check", write_doc(diamond))[0] == EXIT_USAGE


@pytest.mark.parametrize("fmt", ["table", "json"])
def test_formats_for_enumerate(capsys, fmt):
    code, out, _ = _run(capsys, "--format", fmt, "enumerate", "--class", "boolean_algebra", "--size", "4")
    assert code == EXIT_OK
    if fmt == "json":
        assert json.loads(out) == [{"class": "boolean_algebra", "size": 4, "count": 1}]
    else:
        assert out.splitlines()[0] == "boolean_algebra,4,1"
