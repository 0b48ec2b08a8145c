import json

import pytest

from skewring.builtins import builtin_spec
from skewring.homology import ext_dims, proj_dim
from skewring.suite import (
    REFUTED,
    SKIPPED,
    VERIFIED,
    BatteryConfig,
    Instance,
    _Claims,
    check_coinduction,
    check_copure_duality,
    check_dim_transfer,
    check_dual_commutes,
    check_eckmann_shapiro,
    check_nd_transfer,
    check_pd_transfer,
    check_quinn,
    check_resolution_independence,
    check_resolutions,
    check_separability,
    check_summand_lemma,
    check_tor_lemma,
    report_json,
    run_battery,
)

ALL = [check_separability, check_eckmann_shapiro, check_tor_lemma, check_summand_lemma,
       check_pd_transfer, check_nd_transfer, check_dim_transfer, check_copure_duality,
       check_dual_commutes, check_coinduction, check_resolutions, check_resolution_independence]

_CACHE: dict = {}


def inst_for(name):
    if name not in _CACHE:
        _CACHE[name] = Instance(builtin_spec(name))
    return _CACHE[name]


def by_id(reports):
    return {r.theorem_id: r for r in reports}


@pytest.mark.parametrize("name", ["f2_c2_full", "f3_c2_full"])
def test_h_equals_g_everything_holds(name):
    inst = inst_for(name)
    assert inst.H.index == 1
    for check in ALL:
        for r in check(inst):
            assert r.status == VERIFIED, (r.theorem_id, r.witness)


def test_es_f2_trivial_subgroup_values():
    inst = inst_for("f2_c2")
    r = check_eckmann_shapiro(inst)[0]
    assert r.status == VERIFIED
    item = next(it for it in r.details["items"]
                if it["form"] == 1 and it["side"] == "left" and it["N"] == "H.reg" and it["M"] == "k")
    # over the field, Ext(k, k) is Hom in degree 0; k induced is free over F_2[C_2]
    k_field = inst.pools["left_RH"][0]
    expected = ext_dims(k_field, k_field, 4)
    assert expected == [1, 0, 0, 0, 0]
    assert item["rh"] == item["rg"] == expected


@pytest.mark.parametrize("name", ["f3_c2", "f7_s3_c2", "q_c3", "q_qxq_swap"])
def test_semisimple_instances_give_zeros(name):
    inst = inst_for(name)
    es = check_eckmann_shapiro(inst)[0]
    assert es.status == VERIFIED
    assert all(x == 0 for it in es.details["items"] for x in it["rh"][1:])
    tor = check_tor_lemma(inst)[0]
    assert all(x == 0 for it in tor.details["items"] for x in it["rh"][1:])
    for r in check_pd_transfer(inst):
        assert r.status == VERIFIED
        assert all(it["rh"] == it["rg"] == "finite(0)" for it in r.details["items"])


def test_summand_lemma_maschke_case():
    reps = by_id(check_summand_lemma(inst_for("f7_s3_c2")))
    assert reps["summand_lemma.part1"].status == VERIFIED
    assert reps["summand_lemma.part2"].status == VERIFIED
    assert all(it["split_pair_checked"] for r in reps.values() for it in r.details["items"])


def test_gated_claims_skipped_on_quiver_instance():
    inst = inst_for("quiver_swap_f2")
    assert not inst.separable
    reps = by_id(check_summand_lemma(inst) + check_pd_transfer(inst) + check_nd_transfer(inst)
                 + check_dim_transfer(inst))
    assert reps["summand_lemma.part1"].status == VERIFIED
    for key in ("summand_lemma.part2", "pd_transfer.restricted_equality", "nd_transfer.item4",
                "dim_transfer.restricted_equality"):
        r = reps[key]
        assert r.status == SKIPPED
        assert r.reason.startswith("hypothesis not met")
        assert "informational_failures" in r.details
    for key in ("pd_transfer.induced", "pd_transfer.restricted", "nd_transfer.item1"):
        assert reps[key].status == VERIFIED


def test_pd_transfer_inequality_direction_f2c2():
    r = by_id(check_pd_transfer(inst_for("f2_c2")))["pd_transfer.restricted"]
    item = next(it for it in r.details["items"] if it["N"] == "k")
    assert item["rh"] == "finite(0)"
    assert item["rg"] == "infinite (Omega^0 ~= Omega^1)"
    assert item["ok"]
    ind = by_id(check_pd_transfer(inst_for("f2_c2")))["pd_transfer.induced"]
    # modules over the field induce to free modules
    assert all(it["rh"] == it["rg"] == "finite(0)" for it in ind.details["items"])


@pytest.mark.parametrize("name", ["f2_c2", "dual_numbers_f3", "f2_s3_c3"])
def test_dual_commutes_and_coinduction(name):
    inst = inst_for(name)
    assert check_dual_commutes(inst)[0].status == VERIFIED
    assert check_coinduction(inst)[0].status == VERIFIED


def test_resolution_checks():
    inst = inst_for("dual_numbers_f2")
    for r in check_resolutions(inst) + check_copure_duality(inst):
        assert r.status == VERIFIED
    ri = check_resolution_independence(inst)[0]
    assert ri.status == VERIFIED
    assert ri.details["sampled"] >= 0.25 * ri.details["total_queries"]


def test_quinn_only_for_graded():
    assert check_quinn(inst_for("f2_c2"))[0].status == SKIPPED
    r = check_quinn(inst_for("smash_f2_dual_trivial"))[0]
    assert r.status == VERIFIED
    assert any(it.get("claim") == "R#G splits into |G| blocks" for it in r.details["items"])


def test_claims_refutation_keeps_first_witness():
    c = _Claims("demo", inst_for("f2_c2"))
    c.add(True, x=1)
    c.add(False, x=2)
    c.add(False, x=3)
    r = c.report()
    assert r.status == REFUTED and r.witness["x"] == 2
    gated = _Claims("demo", inst_for("f2_c2"), gate=False)
    gated.add(False, x=4)
    r = gated.report()
    assert r.status == SKIPPED and r.details["informational_failures"] == 1
    assert _Claims("demo", inst_for("f2_c2")).report().status == SKIPPED


def test_empty_battery():
    cfg = BatteryConfig(instances=[])
    res = run_battery(cfg)
    assert res.reports == [] and res.refuted == []
    doc = json.loads(report_json(res, cfg))
    assert doc["summary"]["reports"] == 0


def test_battery_deterministic():
    cfg = BatteryConfig(instances=["f2_c2", "smash_f2_c2_graded"], seed=3)
    a = report_json(run_battery(cfg), cfg)
    b = report_json(run_battery(cfg), cfg)
    assert a == b
    assert json.loads(a)["summary"]["refuted"] == 0


def test_unknown_check_rejected():
    with pytest.raises(ValueError):
        run_battery(BatteryConfig(instances=[], checks=["nope"]))


def test_pd_reference_values():
    # the quiver simples repeat after two steps; induction changes the period
    inst = inst_for("quiver_swap_f2")
    Sx = inst.declared["Sx"]
    assert proj_dim(Sx).witness[:2] == (0, 2)
    assert proj_dim(inst.up(Sx)).witness[:2] == (0, 1)
