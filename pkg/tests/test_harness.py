import json

import pytest

from tokenslide.errors import UnknownSubject
from tokenslide.exact import SearchLimits
from tokenslide.harness import (
    CampaignReport,
    CampaignSpec,
    Mismatch,
    exhaustive_size,
    recheck,
    run_campaign,
    structure_errors,
)
from tokenslide.instance import make_instance, parse_instance
from tokenslide.reductions import read_artifact, reduce


def solver_spec(**kw):
    return CampaignSpec("solver_equivalence", **kw)


def reduction_spec(**kw):
    return CampaignSpec("reduction_soundness", **kw)


def test_zero_trials_is_an_empty_pass():
    for spec in (solver_spec(subject="cograph", trials=0), reduction_spec(subject="split", trials=0)):
        rep = run_campaign(spec)
        assert rep.passed and rep.trials_run == 0 and rep.truncated == 0


def test_unknown_subjects():
    with pytest.raises(UnknownSubject):
        run_campaign(solver_spec(subject="oracle"))
    with pytest.raises(UnknownSubject):
        run_campaign(reduction_spec(subject="toroidal"))


@pytest.mark.parametrize(
    "kw",
    [
        {"mode": "other"},
        {"trials": -1},
        {"n_min": 5, "n_max": 4},
        {"k_min": 3, "k_max": 2},
        {"policies": ()},
        {"policies": ("coin",)},
        {"graph_class": "torus"},
    ],
)
def test_invalid_campaign_specs(kw):
    base = dict(mode="solver_equivalence", subject="cycle")
    base.update(kw)
    with pytest.raises(ValueError):
        CampaignSpec(**base)


def test_same_seed_same_report():
    spec = solver_spec(subject="cograph", trials=40, seed=9, n_max=7)
    assert run_campaign(spec).content() == run_campaign(spec).content()
    red = reduction_spec(subject="planar", trials=30, seed=9, n_max=6, policies=("lex", "seed:1"))
    assert run_campaign(red).content() == run_campaign(red).content()


def test_small_cycle_family_is_enumerated_exhaustively():
    spec = solver_spec(subject="cycle", n_min=3, n_max=5)
    rep = run_campaign(spec)
    assert rep.exhaustive and rep.passed
    assert rep.trials_run == exhaustive_size(spec)
    # triangle: k=0 gives 1 pair, k=1 gives 9; times 8 orientations
    assert exhaustive_size(solver_spec(subject="cycle", n_min=3, n_max=3)) == 80


def test_sampled_campaign_counts_every_target_with_all_targets():
    rep = run_campaign(solver_spec(subject="cograph", trials=20, n_max=6, all_targets=True))
    assert not rep.exhaustive and rep.passed and rep.trials_run > 20


def test_truncated_runs_are_counted_separately():
    spec = solver_spec(subject="cycle", n_min=8, n_max=8, trials=10, exhaustive=False, limits=SearchLimits(max_states=1))
    rep = run_campaign(spec)
    assert rep.passed
    assert rep.trials_run + rep.truncated >= 10
    assert rep.truncated > 0


def test_wrong_class_is_a_mismatch():
    rep = run_campaign(solver_spec(subject="cycle", graph_class="path_forest", trials=5, n_min=3, n_max=5))
    assert not rep.passed
    assert all("rejected" in m.reason for m in rep.mismatches)


def test_report_json_fields():
    rep = CampaignReport(trials_run=3, truncated=1, wall_time=0.0123)
    rep.mismatches.append(Mismatch("p tsd 1 0\ns 0\nt 0\n", "x", {}, "a.tsd"))
    data = json.loads(rep.dumps())
    assert data == {"trials_run": 3, "mismatch_count": 1, "mismatch_paths": ["a.tsd"], "truncated": 1, "wall_time_ms": 12}


def test_planar_mismatches_are_persisted_and_reproducible(tmp_path):
    spec = reduction_spec(subject="planar", trials=150, seed=0, policies=("lex", "seed:1"), out_dir=str(tmp_path))
    rep = run_campaign(spec)
    assert rep.mismatches, "the planar gadget construction is expected to disagree on some inputs"
    for m in rep.mismatches:
        assert m.path and parse_instance(open(m.path).read()) == m.instance
        art = read_artifact(m.path[:-4] + ".map")
        assert art.kind == "planar" and art.policy == m.provenance["policy"]
        assert recheck(spec, m)


def test_structure_errors_flag_broken_outputs():
    inst = make_instance(2, [(1, 2)], [1], [2])
    red, art = reduce("bipartite", inst)
    assert structure_errors("bipartite", inst, red, art) == []
    broken = make_instance(4, [(1, 2), (2, 3), (3, 4)], [1], [2])
    assert "N(1) != N(1')" in structure_errors("bipartite", inst, broken, art)
