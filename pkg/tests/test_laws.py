from __future__ import annotations

import pytest

from ccsn.laws import SUITES, run_laws


@pytest.fixture(scope="module")
def results():
    return {r.name: r for r in run_laws(seed=0, cases=300)}


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes(results, name):
    r = results[name]
    assert r.ok, r.example
    assert r.cases >= 300


def test_replay_is_deterministic(results):
    again = {r.name: r.digest for r in run_laws(seed=0, cases=300)}
    assert again == {name: r.digest for name, r in results.items()}
    other = {r.name: r.digest for r in run_laws(seed=1, cases=300, only=["glb"])}
    assert other["glb"] != results["glb"].digest


def test_suites_exercise_both_outcomes(results):
    assert 0 < results["msync-oracle"].notes["synchronising"] < results["msync-oracle"].cases
    assert results["binary-interaction-symmetry"].notes["interacting"] > 0


def test_broken_choice_is_caught():
    (r,) = run_laws(seed=0, cases=200, mutate=True, only=["choice-assoc-comm"])
    assert r.failures > 0 and r.example is not None
