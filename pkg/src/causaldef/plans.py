"""Registered check plans: one runnable entry per result.

``run_plan(id, n, ctx, trials, seed)`` returns a list of verdicts.  Plans
whose result is stated outside the requested regime raise
:class:`RegimeViolation`, except the 2D mirror results at n >= 3, which
return a failing verdict carrying the fixed counterexample.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from gmpy2 import mpq

from .exactfield import QQ, FieldCtx, quad_field
from .formulas import builtin, eval_qf, matrix, swap_time_space
from .graphembed import nrf2_relation_report
from .minkowski import SIG, TAU, Point, RelKind, relate
from .relalg import (
    REDUCTS,
    Atom,
    AtomSet,
    closure,
    decide_3var_definable,
    validate_table,
)
from .sampling import rand_point, sample_null_offset, sample_pair, trial_rng
from .transforms import (
    hyperbolic_inversion,
    lifted_conjugation,
    swap_tx,
)
from .witnesses import (
    RegimeViolation,
    Status,
    Verdict,
    check_formula,
    h_replay,
    t_eps_replay,
    witness_Ets,
    witness_EtsHat,
)

__all__ = ["Plan", "PLANS", "plan_ids", "run_plan", "overall"]


@dataclass(frozen=True)
class Plan:
    id: str
    summary: str
    default_n: int
    run: Callable  # (n, ctx, trials, seed) -> list[Verdict]
    default_field: str = "Q"


def _formulas(*names, min_n=2):
    def run(n, ctx, trials, seed):
        if n < min_n:
            raise RegimeViolation(f"stated for n >= {min_n}; got n={n}")
        return [check_formula(name, trials, seed, n, ctx) for name in names]

    return run


def _nondef_3var(n, ctx, trials, seed):
    v = Verdict("nondef-3var", Status.PASS, 0, seed, n, str(ctx))
    s_full = closure({AtomSet.of(Atom.RHO)})
    v.counts["closure_size"] = len(s_full)
    v.counts["closure"] = sorted(s.name for s in s_full)
    if len(s_full) != 8:
        v.status = Status.FAIL
        v.notes.append("closure of {rho, =} is not the 8-element Boolean algebra")
    decided = {}
    for name, rho in REDUCTS.items():
        for tname, target in REDUCTS.items():
            if tname == name:
                continue
            ok = decide_3var_definable(target, rho)
            decided[f"{name}->{tname}"] = ok
            if ok:
                v.status = Status.FAIL
                v.notes.append(f"{tname} came out 3-variable definable from {name}")
    v.counts["definable"] = decided
    out = [v]
    for name, rho in REDUCTS.items():
        t = validate_table(n=n, rho=rho)
        t.seed = seed
        out.append(t)
    return out


def _nrf2(n, ctx, trials, seed):
    out = []
    for name, rho in (("tau", TAU), ("sig", SIG)):
        rep = nrf2_relation_report(n, rho, seed=seed)
        v = Verdict(f"nrf2-suite-{name}", Status.PASS if rep.ok else Status.FAIL, len(rep.rows), seed, n, str(ctx))
        v.counts = {"embeddings": len(rep.rows), "failures": len(rep.failures)}
        v.notes.append(rep.conclusion)
        out.append(v)
    return out


def _no_e2(n, ctx, trials, seed):
    out = _nrf2(n, ctx, trials, seed)
    for v in out:
        v.plan = v.plan.replace("nrf2-suite", "no-e2-def")
        v.notes.append(
            "a relation meeting tau, lam and sig is none of them, so no basic E2 formula "
            "defines another relation; A2 follows by negation"
        )
    return out


def _t_eps(n, ctx, trials, seed):
    return [t_eps_replay(trials, seed, n)]


def _sample_domain_point(r, n):
    while True:
        x = rand_point(r, n, 3)
        if x.quad():
            return x


def _sample_domain_lam_pair(r, n):
    while True:
        p = _sample_domain_point(r, n)
        q = p + Point(sample_null_offset(r, n))
        if q.quad():
            return p, q


def h_involution_check(trials: int, seed=0, n: int = 2) -> Verdict:
    v = Verdict("h-involution", Status.PASS, trials, seed, n)
    for i in range(trials):
        x = _sample_domain_point(trial_rng(seed, "h-inv", i), n)
        if hyperbolic_inversion(hyperbolic_inversion(x)) != x:
            v.status = Status.FAIL
            v.counterexample = {"x": x}
            break
    return v


def h_lambda_check(trials: int, seed=0, n: int = 2) -> Verdict:
    v = Verdict("h-preserves-lam", Status.PASS, trials, seed, n)
    for i in range(trials):
        p, q = _sample_domain_lam_pair(trial_rng(seed, "h-lam", i), n)
        if relate(hyperbolic_inversion(p), hyperbolic_inversion(q)) is not RelKind.LIGHTLIKE:
            v.status = Status.FAIL
            v.counterexample = {"p": p, "q": q}
            break
    return v


def h_fixture(n: int = 2) -> Verdict:
    p = Point([0, 1] + [0] * (n - 2))
    q = Point([mpq(3, 2), 1] + [0] * (n - 2))
    hp, hq = hyperbolic_inversion(p), hyperbolic_inversion(q)
    ok = relate(p, q) is RelKind.TIMELIKE and relate(hp, hq) is RelKind.SPACELIKE
    v = Verdict("h-fixture", Status.PASS if ok else Status.FAIL, 1, 0, n)
    v.witnesses.append({"p": p, "q": q, "h(p)": hp, "h(q)": hq})
    return v


def _h(n, ctx, trials, seed):
    return [
        h_fixture(n),
        h_involution_check(trials, seed, n),
        h_lambda_check(trials, seed, n),
        h_replay(min(trials, 100), seed, n),
    ]


def _swap(n, ctx, trials, seed):
    if n != 2:
        raise RegimeViolation(f"the coordinate swap is a symmetry only for n=2; got n={n}")
    v = Verdict("swap-2d", Status.PASS, trials, seed, n, str(ctx))
    f = swap_tx()
    flip = {RelKind.TIMELIKE: RelKind.SPACELIKE, RelKind.SPACELIKE: RelKind.TIMELIKE, RelKind.LIGHTLIKE: RelKind.LIGHTLIKE}
    for kind in flip:
        for i in range(trials):
            p, q = sample_pair(trial_rng(seed, f"swap:{kind.name}", i), kind, 2, ctx)
            if relate(f(p), f(q)) is not flip[kind]:
                v.status = Status.FAIL
                v.counterexample = {"p": p, "q": q}
                break
    mirrors = {"Ets": "Est", "EtsHat": "EstHat", "Utl": "Usl", "UtlHat": "UslHat", "Wsl": "WslMirror", "Wst": "WstMirror"}
    for base, mirror in mirrors.items():
        if swap_time_space(builtin(base).formula) != builtin(mirror).formula:
            v.status = Status.FAIL
            v.notes.append(f"{mirror} is not the swap of {base}")
    # a swapped witness certifies the mirrored matrix
    for builder, mname in ((witness_Ets, "Est"), (witness_EtsHat, "EstHat")):
        for i in range(min(trials, 50)):
            p, q = sample_pair(trial_rng(seed, f"swap-w:{mname}", i), RelKind.SPACELIKE, 2, ctx)
            env = {k: f(x) for k, x in builder(p, q).items()}
            env.update(p=f(p), q=f(q))
            if not eval_qf(matrix(builtin(mname).formula), env):
                v.status = Status.FAIL
                v.counterexample = env
    v.counts = {"mirrors": len(mirrors)}
    return [v]


def _non_eucl(n, ctx, trials, seed):
    if ctx.d is None:
        raise RegimeViolation("needs a field with an order-breaking automorphism, e.g. Q(rt2)")
    v = Verdict("non-eucl-q-sqrt2", Status.PASS, trials, seed, n, str(ctx))
    alpha = lifted_conjugation(ctx)
    rt = ctx.root()
    half = mpq(1, 2)
    tv = Point([1, 1 - rt * half] + [0] * (n - 2), ctx)
    sv = Point([1, 1 + rt * half] + [0] * (n - 2), ctx)
    origin = Point([0] * n, ctx)
    ok = (
        relate(origin, tv) is RelKind.TIMELIKE
        and relate(origin, sv) is RelKind.SPACELIKE
        and alpha(tv) == sv
        and alpha(sv) == tv
    )
    if not ok:
        v.status = Status.FAIL
        v.notes.append("the conjugation does not exchange the fixture vectors")
    for i in range(trials):
        r = trial_rng(seed, "non-eucl", i)
        p = Point([c + rt * d for c, d in zip(rand_point(r, n), rand_point(r, n))], ctx)
        scale = 1 + rt * mpq(r.randint(-4, 4), 4)
        off = Point(sample_null_offset(r, n), ctx).scale(scale)
        q = p + off
        if alpha(alpha(p)) != p or relate(alpha(p), alpha(q)) is not RelKind.LIGHTLIKE:
            v.status = Status.FAIL
            v.counterexample = {"p": p, "q": q}
            break
    v.witnesses.append({"timelike": tv, "image": alpha(tv)})
    v.notes.append(
        "the conjugation preserves lam and swaps a tau pair with a sig pair, so neither is "
        "definable from lam over this field"
    )
    return [v]


PLANS = {
    p.id: p
    for p in (
        Plan("psi-ts", "PsiTS defines sig from tau", 2, _formulas("PsiTS")),
        Plan("psi-tl", "PsiTL defines lam from tau", 2, _formulas("PsiTL")),
        Plan("psi-st", "PsiST defines tau from sig", 2, _formulas("PsiST")),
        Plan("psi-sl", "PsiSL defines lam from sig", 2, _formulas("PsiSL")),
        Plan("psi-ls", "PsiLS defines sig from lam (n >= 3)", 3, _formulas("PsiLS", min_n=3)),
        Plan("psi-lt", "PsiLT defines tau from lam (n >= 3)", 3, _formulas("PsiLT", min_n=3)),
        Plan("nondef-3var", "no relation is 3-variable definable from another", 2, _nondef_3var),
        Plan("e-ts", "Ets defines sig from tau", 2, _formulas("Ets")),
        Plan("u-tl", "Utl defines lam from tau", 2, _formulas("Utl")),
        Plan("e-st-2d", "Est defines tau from sig (n = 2)", 2, _formulas("Est")),
        Plan("u-sl-2d", "Usl defines lam from sig (n = 2)", 2, _formulas("Usl")),
        Plan("nrf2-suite", "every nrf2 graph embeds with each kind on the free pair", 2, _nrf2),
        Plan("no-e2-def", "no E2 or A2 definitions", 2, _no_e2),
        Plan("e-ts-hat", "EtsHat defines sig from tau", 2, _formulas("EtsHat")),
        Plan("u-tl-hat", "UtlHat defines lam from tau", 2, _formulas("UtlHat")),
        Plan("e-st-hat-2d", "EstHat and UslHat (n = 2)", 2, _formulas("EstHat", "UslHat")),
        Plan("t-eps-no-exist-lambda", "time compression: no existential definition of lam", 2, _t_eps),
        Plan("h-inversion-no-def-from-lambda", "hyperbolic inversion: tau and sig not definable from lam", 2, _h),
        Plan("w-sl", "Wsl defines lam from sig", 2, _formulas("Wsl")),
        Plan("w-st", "Wst defines tau from sig", 2, _formulas("Wst")),
        Plan("w-mirror-2d", "WslMirror and WstMirror (n = 2)", 2, _formulas("WslMirror", "WstMirror")),
        Plan("swap-2d", "the coordinate swap exchanges tau and sig in the plane", 2, _swap),
        Plan("non-eucl-q-sqrt2", "conjugation in Q(rt2) blocks definitions from lam", 3, _non_eucl, "Q(rt2)"),
    )
}


def plan_ids() -> list[str]:
    return list(PLANS)


def run_plan(plan_id: str, n: int | None = None, ctx: FieldCtx | None = None, trials: int = 200, seed=0) -> list:
    if plan_id not in PLANS:
        raise KeyError(plan_id)
    plan = PLANS[plan_id]
    n = plan.default_n if n is None else n
    if ctx is None:
        ctx = QQ if plan.default_field == "Q" else quad_field(2)
    return plan.run(n, ctx, trials, seed)


def overall(verdicts) -> Status:
    states = [v.status for v in verdicts]
    if Status.FAIL in states:
        return Status.FAIL
    if Status.INCONCLUSIVE in states:
        return Status.INCONCLUSIVE
    return Status.PASS
