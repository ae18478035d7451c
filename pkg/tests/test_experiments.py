import pytest

from glmaps import cli, experiments
from glmaps.errors import TooLarge, UnknownSuite
from glmaps.experiments import SuiteConfig, run_suite


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nope")


def test_guards():
    with pytest.raises(TooLarge):
        run_suite("mode-agreement", SuiteConfig(random_tables=10**9))
    with pytest.raises(ValueError):
        run_suite("harmonic", SuiteConfig(threads=0))


def test_prop1_counts():
    rep = run_suite("prop1")
    assert rep.passed
    by_space = {c["space"]: c for c in rep.cases}
    assert by_space["GF(2)^3"]["subsets"] == 210
    assert by_space["GF(2)^2"]["subsets"] == 10
    assert by_space["GF(3)^2"]["subsets"] == 36 + 84 + 126


def test_prop2_frozen_counts():
    # frozen from the oracle sweep over subsets of size 2..5
    rep = run_suite("prop2")
    assert rep.passed
    got = {c["space"]: (c["subsets"], c["fully_extendable"], c["harmonic"]) for c in rep.cases}
    assert got == {
        "P(GF(3)^2)": (11, 11, 1),
        "P(GF(2)^3)": (112, 63, 0),
        "P(GF(3)^3)": (2366, 611, 13),
        "P(GF(5)^2)": (56, 35, 0),
    }


def test_reports_are_deterministic():
    for name in ("harmonic", "examples", "ftpg-roundtrip"):
        a = run_suite(name, SuiteConfig(seed=3)).to_json(timing=False)
        b = run_suite(name, SuiteConfig(seed=3)).to_json(timing=False)
        assert a == b


def test_seed_changes_sampled_content():
    a = run_suite("ftpg-roundtrip", SuiteConfig(seed=1, roundtrips=8, corruptions=4))
    b = run_suite("ftpg-roundtrip", SuiteConfig(seed=2, roundtrips=8, corruptions=4))
    assert a.passed and b.passed and a.seed == 1 and b.seed == 2


def test_mode_agreement_small():
    rep = run_suite("mode-agreement", SuiteConfig(random_tables=200))
    assert rep.passed and rep.counts["disagreements"] == 0
    fams = {c["family"]: c for c in rep.cases}
    assert fams["all GF(2)^2->GF(2)^2"]["gl_mappings"] == 22


def test_failed_suite_exits_nonzero(monkeypatch, capsys):
    def broken(config, report):
        report.fail("forced failure")

    monkeypatch.setitem(experiments._RUNNERS, "harmonic", broken)
    assert cli.main(["verify", "--suite", "harmonic", "--no-timing"]) == 1
    assert "FAIL harmonic" in capsys.readouterr().err
