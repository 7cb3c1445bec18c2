import random

import pytest

from causaldef.exactfield import QQ
from causaldef.formulas import UnknownName, builtin, eval_qf, matrix, parse
from causaldef.minkowski import Point, RelKind, relate
from causaldef.sampling import sample_pair
from causaldef.witnesses import (
    COUNTEREXAMPLES,
    DegenerateZ,
    RegimeViolation,
    Status,
    WrongRelation,
    check_counterexample,
    check_formula,
    counterexample,
    h_replay,
    refuter_PsiLS,
    refuter_PsiST,
    refuter_PsiTS,
    refuter_Wsl,
    t_eps_replay,
    witness_Est,
    witness_EstHat,
    witness_Ets,
    witness_EtsHat,
    witness_PsiLS,
    witness_PsiST_inner,
    witness_PsiTS_inner,
    witness_Wsl,
)

T, L, S, E = RelKind.TIMELIKE, RelKind.LIGHTLIKE, RelKind.SPACELIKE, RelKind.EQUAL
Q = QQ.parse


def P(*c):
    return Point([Q(x) if isinstance(x, str) else x for x in c])


def matrix_holds(name, p, q, env):
    nf = builtin(name)
    full = dict(zip(nf.free, (p, q)))
    full.update(env)
    return eval_qf(matrix(nf.formula), full)


# -- existential templates --------------------------------------------------

def test_ets_template_on_canonical_pair():
    p, q = P(0, 0), P(0, 1)
    env = witness_Ets(p, q)
    assert env == {"r": P("3/4", "1/2"), "x": P("3/8", "-1/8"), "s": P(0, "1/2"), "z": P("3/8", "9/8")}
    assert matrix_holds("Ets", p, q, env)


def test_ets_scaled_pair():
    p, q = P(0, 0), P(0, 3)
    assert matrix_holds("Ets", p, q, witness_Ets(p, q))


def test_ets_wrong_relation():
    with pytest.raises(WrongRelation):
        witness_Ets(P(0, 0), P(1, 0))


def test_ets_hat_template():
    p, q = P(0, 0), P(0, 1)
    env = witness_EtsHat(p, q)
    assert env == {"x": P("3/4", 0), "y": P(0, "1/2"), "z": P("3/4", 1)}
    assert matrix_holds("EtsHat", p, q, env)
    p, q = P(5, 5), P(5, 6)
    assert matrix_holds("EtsHat", p, q, witness_EtsHat(p, q))
    with pytest.raises(WrongRelation):
        witness_EtsHat(P(0, 0), P(1, 0))


def test_mirror_witnesses_in_2d():
    p, q = P(0, 0), P(1, 0)
    assert matrix_holds("Est", p, q, witness_Est(p, q))
    assert matrix_holds("EstHat", p, q, witness_EstHat(p, q))


@pytest.mark.parametrize("n", [2, 3])
def test_existential_builders_seeded(n):
    r = random.Random(f"ets-{n}")
    for _ in range(60):
        p, q = sample_pair(r, S, n)
        assert matrix_holds("Ets", p, q, witness_Ets(p, q))
        assert matrix_holds("EtsHat", p, q, witness_EtsHat(p, q))


# -- Psi formulas -----------------------------------------------------------

def test_psi_ts_inner_off_plane():
    p, q = P(0, 0, 0), P(0, 1, 0)
    z = P(1, 5, 0)
    u = witness_PsiTS_inner(z, p, q)
    assert u == P(0, 5, 0)
    assert (relate(u, z), relate(u, p), relate(u, q)) == (T, S, S)


def test_psi_ts_inner_in_plane():
    p, q = P(0, 0), P(0, 1)
    z = P(0, "1/2")
    u = witness_PsiTS_inner(z, p, q)
    assert u == P("1/8", "1/2")
    assert relate(u, z) is T and relate(u, p) is S and relate(u, q) is S


def test_psi_ts_inner_degenerate():
    with pytest.raises(DegenerateZ):
        witness_PsiTS_inner(P(0, 0), P(0, 0), P(0, 1))


def test_psi_st_inner():
    p, q = P(0, 0, 0), P(1, 0, 0)
    z = P(5, 1, 0)
    u = witness_PsiST_inner(z, p, q)
    assert u == P(5, 0, 0)
    assert (relate(u, z), relate(u, p), relate(u, q)) == (S, T, T)
    z = P("1/2", 0)
    u = witness_PsiST_inner(z, P(0, 0), P(1, 0))
    assert u == P("1/2", "1/4")
    assert (relate(u, z), relate(u, P(0, 0)), relate(u, P(1, 0))) == (S, T, T)
    with pytest.raises(DegenerateZ):
        witness_PsiST_inner(P(1, 0), P(0, 0), P(1, 0))


def test_refuter_psi_ts():
    r = random.Random("ref-ts")
    p, q = P(0, 0), P(2, 0)
    z, checked, bad = refuter_PsiTS(p, q, r, samples=50)
    assert z == P(1, 0) and checked == 50 and bad is None
    u = P(3, "1/2")
    assert relate(u, z) is T and relate(u, p) is T
    z, _, bad = refuter_PsiTS(P(0, 0), P(1, 1), r, samples=50)
    assert z == P("1/2", "1/2") and bad is None
    with pytest.raises(WrongRelation):
        refuter_PsiTS(P(0, 0), P(0, 1), r)


def test_refuter_psi_st():
    r = random.Random("ref-st")
    z, checked, bad = refuter_PsiST(P(0, 0), P(0, 2), r, samples=50)
    assert z == P(0, 1) and checked == 50 and bad is None
    with pytest.raises(WrongRelation):
        refuter_PsiST(P(0, 0), P(1, 0), r)


def test_psi_ls_witness():
    p, q = P(0, 0, 0), P(0, 1, 0)
    z = witness_PsiLS(p, q)
    assert z == P(1, 0, 1)
    assert relate(p, z) is L and relate(q, z) is S
    with pytest.raises(RegimeViolation):
        witness_PsiLS(P(0, 0), P(0, 1))


def test_psi_ls_refuter():
    p, q = P(0, 0, 0), P(2, 0, 0)
    u = refuter_PsiLS(p, q, P(3, 3, 0))
    assert u == P(1, 1, 0)
    z = P(3, 3, 0)
    assert (relate(u, p), relate(u, q), relate(u, z)) == (L, L, L)


def test_psi_ls_refuter_precondition():
    # (1,1,0) is lightlike to q=(2,0,0) as well, so it is outside the refuter's domain
    with pytest.raises(WrongRelation):
        refuter_PsiLS(P(0, 0, 0), P(2, 0, 0), P(1, 1, 0))
    with pytest.raises(WrongRelation):
        refuter_PsiLS(P(0, 0, 0), P(2, 0, 0), P(1, 0, 0))


# -- W formulas ------------------------------------------------------------

def _pattern(z, w, p, q):
    return relate(z, w) is not S and relate(z, p) is S and relate(z, q) is S


def test_wsl_witness_3d():
    p, q = P(0, 0, 0), P(1, 1, 0)
    u, v = P(1, 0, 0), P(0, 5, 0)
    tag, z = witness_Wsl(p, q, u, v)
    assert tag in ("zu", "zv")
    assert _pattern(z, u if tag == "zu" else v, p, q)


def test_wsl_witness_on_segment():
    p, q = P(0, 0, 0), P(1, 1, 0)
    u, v = P("1/2", "1/2", 0), P("3/4", "3/4", 0)
    assert relate(u, v) is L
    assert witness_Wsl(p, q, u, v) == ("uv", None)


def test_wsl_refuter():
    u, v = refuter_Wsl(P(0, 0, 0), P(2, 0, 0))
    assert (u, v) == (P(1, 1, 0), P(1, -1, 0))
    assert relate(u, v) is S
    with pytest.raises(WrongRelation):
        refuter_Wsl(P(0, 0), P(0, 1))


# -- counterexamples --------------------------------------------------------

def test_counterexample_points():
    env = counterexample("EstLightlike3D")
    assert {k: tuple(env[k].coords) for k in env} == {
        "p": (-2, -2, 0), "s": (0, 0, 0), "q": (2, 2, 0), "x": (-2, 0, 0), "z": (2, 0, 0), "r": (0, 0, 1),
    }
    env = counterexample("EstHatLightlike3D")
    assert tuple(env["x"].coords) == (-2, 0, 3) and tuple(env["z"].coords) == (2, 0, 3)


@pytest.mark.parametrize("name, kind", [("EstLightlike3D", L), ("EstSpacelike3D", S), ("EstHatLightlike3D", L)])
def test_counterexamples_hold(name, kind):
    ok, env = check_counterexample(name)
    assert ok
    assert relate(env["p"], env["q"]) is kind
    fname = COUNTEREXAMPLES[name][0]
    assert eval_qf(matrix(builtin(fname).formula), env)


def test_counterexample_padding_and_unknown():
    assert check_counterexample("EstLightlike3D", n=4)[0]
    with pytest.raises(UnknownName):
        counterexample("Nope")


# -- check_formula ----------------------------------------------------------

@pytest.mark.parametrize(
    "name, n",
    [("PsiTS", 2), ("PsiST", 2), ("PsiTL", 2), ("PsiLS", 3), ("Ets", 2), ("EtsHat", 3), ("Wsl", 2), ("Est", 2), ("WslMirror", 2)],
)
def test_check_formula_passes(name, n):
    v = check_formula(name, trials=12, seed=1, n=n)
    assert v.status is Status.PASS, v.notes


def test_check_formula_regime():
    with pytest.raises(RegimeViolation):
        check_formula("PsiLS", trials=4, n=2)
    with pytest.raises(RegimeViolation):
        check_formula("WslMirror", trials=4, n=3)


def test_check_formula_fails_with_counterexample():
    v = check_formula("Est", trials=4, seed=0, n=3)
    assert v.status is Status.FAIL
    env = {k: v for k, v in v.counterexample.items()}
    assert eval_qf(matrix(builtin("Est").formula), env)
    assert relate(env["p"], env["q"]) is not T


def test_verdict_json_is_deterministic():
    a = check_formula("PsiTS", trials=6, seed="s", n=2).dumps()
    b = check_formula("PsiTS", trials=6, seed="s", n=2).dumps()
    assert a == b


def test_replays():
    assert t_eps_replay(10, seed=0).status is Status.PASS
    assert t_eps_replay(5, seed=0, n=3).status is Status.PASS
    assert h_replay(10, seed=0).status is Status.PASS


def test_inner_matrix_text():
    assert parse("u tau z & u ntau x & u ntau y") == matrix(
        builtin("PsiTS").formula.parts[1].body.parts[2]
    )
