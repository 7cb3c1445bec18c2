import pytest

from causaldef.exactfield import QQ, quad_field
from causaldef.plans import PLANS, overall, plan_ids, run_plan
from causaldef.witnesses import RegimeViolation, Status

ALL_IDS = [
    "psi-ts", "psi-tl", "psi-st", "psi-sl", "psi-ls", "psi-lt", "nondef-3var", "e-ts", "u-tl",
    "e-st-2d", "u-sl-2d", "nrf2-suite", "no-e2-def", "e-ts-hat", "u-tl-hat", "e-st-hat-2d",
    "t-eps-no-exist-lambda", "h-inversion-no-def-from-lambda", "w-sl", "w-st", "w-mirror-2d",
    "swap-2d", "non-eucl-q-sqrt2",
]


def test_ids():
    assert list(plan_ids()) == ALL_IDS == list(PLANS)


@pytest.mark.parametrize("pid", ALL_IDS)
def test_default_regime_passes(pid):
    plan = PLANS[pid]
    ctx = quad_field(2) if plan.default_field == "Q(rt2)" else QQ
    verdicts = run_plan(pid, plan.default_n, ctx, trials=10, seed=0)
    assert verdicts
    assert overall(verdicts) is Status.PASS, [v.notes for v in verdicts]


@pytest.mark.parametrize("pid, n, ctx", [("psi-ls", 2, QQ), ("swap-2d", 3, QQ), ("w-mirror-2d", 3, QQ), ("non-eucl-q-sqrt2", 3, QQ)])
def test_regime_violations(pid, n, ctx):
    with pytest.raises(RegimeViolation):
        run_plan(pid, n, ctx, trials=4)


@pytest.mark.parametrize("pid", ["e-st-2d", "u-sl-2d", "e-st-hat-2d"])
def test_mirrors_fail_in_three_dimensions(pid):
    verdicts = run_plan(pid, 3, QQ, trials=4)
    assert overall(verdicts) is Status.FAIL
    assert any(v.counterexample for v in verdicts)


def test_overall():
    assert overall([]) is Status.PASS
