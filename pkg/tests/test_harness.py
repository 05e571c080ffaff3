import json

from affschub.harness import CrosscheckConfig, crosscheck_run, pinned_gap, run_trial, write_outputs
from affschub.sampler import Instance
from affschub.schemas import validate
from affschub import oracle_membership


def strip_time(records):
    return [{k: v for k, v in r.items() if k != "wall_time"} for r in records]


def test_pinned_gap():
    assert pinned_gap() == {"finitary_outcome": "exhausted", "finitary_best": 0, "oracle_d": 1,
                            "opposite_cell": [1], "ok": True}


def test_records_validate_and_are_reproducible():
    cfg = CrosscheckConfig(trials=6, n=2, seed=9)
    records, summary, repros = crosscheck_run(cfg)
    assert len(records) == 18 == summary["records"]
    for rec in records:
        validate(rec, "crosscheck_record")
    assert strip_time(records) == strip_time(crosscheck_run(cfg)[0])
    assert summary["strict_violations"] == 0
    assert summary["agree"] + summary["discrepancies"] == 18
    assert len(repros) == summary["discrepancies"]
    for doc in repros:
        inst = Instance.from_json(doc)
        assert oracle_membership(inst.M, inst.w) == inst.label


def test_parallel_matches_serial():
    serial = crosscheck_run(CrosscheckConfig(trials=4, n=3, seed=2))[0]
    parallel = crosscheck_run(CrosscheckConfig(trials=4, n=3, seed=2, jobs=2))[0]
    assert strip_time(serial) == strip_time(parallel)


def test_permutation_flags_never_disagree():
    _, summary, repros = crosscheck_run(CrosscheckConfig(trials=8, n=3, seed=4, identity_factors=True))
    assert summary["discrepancies"] == 0 and not repros


def test_single_trial_slots():
    records, _ = run_trial(CrosscheckConfig(n=3, w_per_instance=4), 0)
    assert [r["w_slot"] for r in records] == [0, 1, 2, 3]
    assert len({r["matrix_id"] for r in records}) == 1


def test_write_outputs(tmp_path):
    cfg = CrosscheckConfig(trials=3, n=2, seed=1)
    records, summary, repros = crosscheck_run(cfg)
    paths = write_outputs(tmp_path / "run", records, summary, repros)
    lines = open(paths["log"]).read().splitlines()
    assert [json.loads(x) for x in lines] == json.loads(json.dumps(records))
    saved = json.load(open(paths["summary"]))
    assert saved["records"] == len(records) and len(saved["reproducers"]) == len(repros)
    assert open(paths["figure"], "rb").read(4) == b"\x89PNG"
