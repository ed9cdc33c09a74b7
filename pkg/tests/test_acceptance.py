"""The eight acceptance criteria, one test each, each printing a PASS/FAIL line."""

import pytest

import criteria


def report(capsys, number, title, result):
    ok, detail = result
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {number} ({title}): {detail}")
    return ok, detail


def test_criterion_1_proof_corpus(capsys, data_dir):
    ok, detail = report(capsys, 1, "proof corpus and mutations", criteria.proof_corpus(data_dir))
    assert ok, detail


def test_criterion_2_model_catalog(capsys, data_dir):
    ok, detail = report(capsys, 2, "finite model catalog", criteria.catalog(data_dir))
    assert ok, detail


def test_criterion_3_infinite_separations(capsys, data_dir):
    ok, detail = report(capsys, 3, "infinite chain separations", criteria.separations(data_dir))
    assert ok, detail


# Four of the 32 tabulated equivalences do not hold under the forcing
# semantics (the left sides fall in other classes; see test_chains).  The
# criterion is kept as stated and expected to fail.
@pytest.mark.xfail(strict=True, reason="4 of the 32 tabulated equivalences are false")
def test_criterion_4_non_full_model(capsys):
    ok, detail = report(capsys, 4, "non-full model closure and equivalences", criteria.nonfull())
    assert ok, detail


def test_criterion_5_characterization(capsys):
    ok, detail = report(capsys, 5, "DP/HE characterization table", criteria.characterization())
    assert ok, detail


def test_criterion_6_kernel_semantics_coherence(capsys, data_dir):
    ok, detail = report(capsys, 6, "kernel/semantics coherence", criteria.coherence(data_dir))
    assert ok, detail


def test_criterion_7_zone_oracle(capsys, data_dir):
    ok, detail = report(capsys, 7, "zone and degenerate-family oracles", criteria.zone_oracle(data_dir))
    assert ok, detail


def test_criterion_8_hierarchy(capsys):
    ok, detail = report(capsys, 8, "hierarchy and DOT export", criteria.hierarchy())
    assert ok, detail
