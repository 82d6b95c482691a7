import pytest

from finring import constructions as cons
from finring import theorems as th
from finring.ringspec import expand_context, parse_context, parse_manifest, parse_spec
from finring.ringspec import elaborate


def run(check_id, spec):
    t = parse_spec(spec)
    return th.run_ring_check(check_id, elaborate(t), t)


@pytest.mark.parametrize("check_id,spec", [
    ("lemma-char-uj", "Z16"), ("lemma-char-uj", "mat(2,Z2)"), ("lemma-char-uj", "GF(3,1)"),
    ("prop-basic", "Z8"), ("prop-basic", "GF(2,1)"), ("prop-basic", "tri(2,Z2)"),
    ("prop-semilocal", "Z8"), ("prop-semilocal", "GF(2,2)"), ("prop-semilocal", "prod(Z4,Z2)"),
    ("rem-uu-nil", "Z8"), ("rem-uu-nil", "mat(2,Z2)"), ("rem-uu-nil", "B2"),
    ("prop-center", "tri(2,Z2)"), ("prop-center", "Z8"), ("prop-center", "tri(2,Z4)"),
    ("prop-corners", "tri(2,Z2)"), ("prop-corners", "mat(2,Z2)"),
    ("prop-jc", "Z8"), ("prop-jc", "GF(2,2)"), ("prop-jc", "mat(2,Z2)"),
    ("thm-clean", "Z8"), ("thm-clean", "GF(2,2)"), ("thm-clean", "mat(2,Z2)"), ("thm-clean", "Z6"),
    ("thm-nil-clean", "Z4"), ("thm-nil-clean", "mat(2,Z2)"), ("thm-nil-clean", "prod(Z2,Z4)"),
    ("radical-oracle", "tri(3,Z2)"), ("ex-uj", "Z4"), ("ex-uj", "GF(2,2)"), ("ex-uj", "B3"),
    ("prop-basic-7", "prod(Z4,Z2)"), ("prop-basic-7", "prod(Z2,Z3)"), ("cor-zn", "Z64"), ("cor-zn", "Z12"),
])
def test_spec_examples_pass(check_id, spec):
    assert run(check_id, spec).verdict == th.PASS


def test_witness_texts():
    assert run("thm-clean", "Z8").witness == "items=TTTT"
    assert run("thm-clean", "GF(2,2)").witness == "items=FFFF"
    assert run("thm-clean", "mat(2,Z2)").witness == "items=FFFF"
    assert run("lemma-char-uj", "Z8").witness == "conditions=TTTTTT"
    w = run("thm-nil-clean", "mat(2,Z2)").witness
    assert "items1236=FFFF" in w and "nilclean=T" in w and "working-definition45=" in w
    assert run("prop-basic", "GF(2,1)").witness == "items=1,2,3,4,5,6"


def test_skips():
    assert run("prop-center", "mat(2,Z2)").verdict == th.SKIPPED
    assert run("prop-basic-7", "Z8").verdict == th.SKIPPED
    assert run("cor-zn", "mat(2,Z2)").verdict == th.SKIPPED
    r = th.run_ring_check("lemma-char-uj", cons.zmod(1))
    assert (r.verdict, r.witness) == (th.SKIPPED, "degenerate ring")


def test_check_zn():
    assert th.check_zn(64) == (th.PASS, "n<=64")
    assert th.is_power_of_two(64) and not th.is_power_of_two(12)


def test_broken_predicate_is_caught(monkeypatch):
    # a check must fail, not pass, when the underlying decision is wrong
    monkeypatch.setattr(th, "is_uj", lambda R: False)
    assert run("cor-zn", "Z8").verdict == th.FAIL
    assert run("prop-semilocal", "Z8").verdict == th.FAIL


@pytest.mark.parametrize("text,items", [
    ("Z4; Z4; 0; 0; zero", "t_uj=T,vw_wv_in_j=T,quotient_splits=T"),
    ("Z2; Z2; reg; reg; mult", "t_uj=F,vw_wv_in_j=F,quotient_splits=F"),
    ("Z2; Z2; reg; 0; zero", "t_uj=T,vw_wv_in_j=T,quotient_splits=T"),
])
def test_morita_examples(text, items):
    [ctx] = expand_context(parse_context(text))
    r = th.run_context_check(ctx)
    assert r.verdict == th.PASS and r.witness == items


def test_run_corpus_filters_and_order():
    entries = parse_manifest("mat(2,Z2)\nZ8\ncontext: Z2; Z2; reg; 0; zero\n")
    ledger = th.run_corpus(entries, "lemma-char-uj")
    lines = ledger.text().splitlines()
    assert lines[0].startswith("lemma-char-uj mat(2,Z2) pass")
    assert lines[1].startswith("lemma-char-uj Z8 pass")
    assert all(not ln.startswith("thm-morita") for ln in lines)
    only_ctx = th.run_corpus(entries, "thm-morita")
    assert [r.check for r in only_ctx.rows] == ["thm-morita"]


def test_empty_corpus():
    ledger = th.run_corpus([])
    assert ledger.rows == [] and ledger.text() == ""


def test_infinite_rows():
    ledger = th.run_corpus(parse_manifest("Z2\n"))
    skipped = [r for r in ledger.rows if r.witness == th.INFINITE_WITNESS]
    assert [r.check for r in skipped] == list(th.INFINITE_IDS)
    assert all(r.verdict == th.SKIPPED for r in skipped)


def test_ledger_summary_and_json():
    ledger = th.run_corpus(parse_manifest("Z8\nmat(2,Z2)\n"), "lemma-char-uj")
    assert ledger.summary()["lemma-char-uj"] == {"pass": 2, "fail": 0, "skipped": 0, "uj": 1, "non-uj": 1}
    assert '"summary"' in ledger.to_json()
    assert "# summary lemma-char-uj pass=2 fail=0 skipped=0 uj=1 non-uj=1" in ledger.text()
