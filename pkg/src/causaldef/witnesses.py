"""Witnesses, refuters and seeded checks for the defining formulas.

Existential blocks are certified by explicit points.  Universal blocks are
exercised by proof-guided refuters plus bounded seeded sampling; a passing
sampled direction is *evidence*, never a proof, and verdicts say so.

Witness templates live in canonical coordinates (``p = 0`` and ``q`` one of
``e0``, ``e0 + e1``, ``e1``) and are pulled back along the inverse of
:func:`canonicalize_pair`.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field as _field
from typing import Callable

from gmpy2 import mpq

from .exactfield import QQ, FieldCtx, NotASquare
from .formulas import Atom, NamedFormula, builtin, eval_qf, matrix, parse
from .minkowski import EQ, LAM, NE, Point, RelKind, RelSet, SIG, TAU, relate
from .sampling import (
    rand_point,
    rand_rat,
    sample_in_cone,
    sample_null_offset,
    sample_pair,
    trial_rng,
)
from .transforms import (
    NoEpsilonFound,
    canonical_pair,
    canonicalize_pair,
    escape_iteration,
    hyperbolic_inversion,
    swap_tx,
    time_compress,
)

__all__ = [
    "Status",
    "Strategy",
    "Verdict",
    "CheckPlan",
    "WitnessError",
    "WrongRelation",
    "DegenerateZ",
    "WitnessNotFound",
    "RegimeViolation",
    "witness_Ets",
    "witness_EtsHat",
    "witness_Est",
    "witness_EstHat",
    "witness_PsiTS_inner",
    "refuter_PsiTS",
    "witness_PsiST_inner",
    "refuter_PsiST",
    "witness_PsiLS",
    "refuter_PsiLS",
    "witness_Wsl",
    "refuter_Wsl",
    "search_assignment",
    "counterexample",
    "COUNTEREXAMPLES",
    "check_counterexample",
    "plan_for",
    "check_formula",
    "t_eps_replay",
    "h_replay",
]


class WitnessError(ValueError):
    pass


class WrongRelation(WitnessError):
    pass


class DegenerateZ(WitnessError):
    pass


class WitnessNotFound(WitnessError):
    pass


class RegimeViolation(Exception):
    pass


class Status(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    INCONCLUSIVE = "Inconclusive"


class Strategy(enum.Enum):
    EXACT_WITNESS = "ExactWitness"
    EXACT_REFUTER = "ExactRefuterInstance"
    SAMPLED = "SampledNoCounterexample"


def _env_json(env) -> dict:
    return {k: str(v) for k, v in env.items()} if env else {}


@dataclass
class Verdict:
    plan: str
    status: Status
    trials: int = 0
    seed: object = 0
    n: int = 2
    field: str = "Q"
    counts: dict = _field(default_factory=dict)
    witnesses: list = _field(default_factory=list)
    counterexample: dict | None = None
    notes: list = _field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "plan": self.plan,
            "status": self.status.value,
            "trials": self.trials,
            "seed": self.seed,
            "n": self.n,
            "field": self.field,
            "counts": self.counts,
            "witnesses": [_env_json(w) for w in self.witnesses],
            "counterexample": _env_json(self.counterexample) if self.counterexample else None,
            "notes": list(self.notes),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# ---------------------------------------------------------------------------
# canonical frames

def _canon(p: Point, q: Point, want: RelKind):
    if relate(p, q) is not want:
        raise WrongRelation(f"need a {want} pair, got {relate(p, q)}")
    f, tag = canonicalize_pair(p, q)
    return f, f.inverse()


def _pt(n: int, ctx: FieldCtx, *coords) -> Point:
    c = list(coords) + [0] * (n - len(coords))
    return Point(c, ctx)


def _pull(finv, n, ctx, template: dict) -> dict:
    return {k: finv(_pt(n, ctx, *v)) for k, v in template.items()}


F = mpq
ETS_TEMPLATE = {"r": (F(3, 4), F(1, 2)), "x": (F(3, 8), F(-1, 8)), "s": (0, F(1, 2)), "z": (F(3, 8), F(9, 8))}
ETS_HAT_TEMPLATE = {"x": (F(3, 4), 0), "y": (0, F(1, 2)), "z": (F(3, 4), 1)}


def witness_Ets(p: Point, q: Point) -> dict:
    """Points r, x, s, z satisfying the matrix of Ets for a spacelike pair."""
    f, finv = _canon(p, q, RelKind.SPACELIKE)
    return _pull(finv, p.n, f.ctx, ETS_TEMPLATE)


def witness_EtsHat(p: Point, q: Point) -> dict:
    """Points x, y, z satisfying the matrix of EtsHat for a spacelike pair."""
    f, finv = _canon(p, q, RelKind.SPACELIKE)
    return _pull(finv, p.n, f.ctx, ETS_HAT_TEMPLATE)


def _via_swap(builder, p, q):
    if p.n != 2:
        raise RegimeViolation("the time/space swap only exists for n = 2")
    a = swap_tx()
    return {k: a(v) for k, v in builder(a(p), a(q)).items()}


def witness_Est(p: Point, q: Point) -> dict:
    """n = 2: the Ets witness of the swapped (spacelike) pair, swapped back."""
    return _via_swap(witness_Ets, p, q)


def witness_EstHat(p: Point, q: Point) -> dict:
    return _via_swap(witness_EtsHat, p, q)


# ---------------------------------------------------------------------------
# Psi formulas

def witness_PsiTS_inner(z: Point, p: Point, q: Point) -> Point:
    """A point u with u tau z, u ntau p, u ntau q, for a spacelike pair p, q."""
    f, finv = _canon(p, q, RelKind.SPACELIKE)
    if z == p or z == q:
        raise DegenerateZ("z coincides with a free variable")
    zc = f(z)
    n, ctx = z.n, f.ctx
    if zc.time:
        # vertical projection onto the hyperplane t = 0 through p and q
        return finv(Point((ctx.zero(),) + zc.space, ctx))
    sp = zc.space
    dp = sum((c * c for c in sp), ctx.zero())
    dq = dp - 2 * sp[0] + 1
    m = min(dp, dq, ctx.one())
    delta = m / 2
    return finv(Point((delta,) + sp, ctx))


def witness_PsiST_inner(z: Point, p: Point, q: Point) -> Point:
    """A point u with u sig z, u nsig p, u nsig q, for a timelike pair p, q."""
    f, finv = _canon(p, q, RelKind.TIMELIKE)
    if z == p or z == q:
        raise DegenerateZ("z coincides with a free variable")
    zc = f(z)
    ctx = f.ctx
    zero = ctx.zero()
    if any(zc.space):
        # the point of the time axis on the horizontal hyperplane through z
        return finv(Point((zc.time,) + (zero,) * (z.n - 1), ctx))
    t = zc.time
    delta = min(abs(t), abs(t - 1)) / 2
    return finv(Point((t, delta) + (zero,) * (z.n - 2), ctx))


def _scale_of(p: Point, q: Point) -> mpq:
    """A rough rational size of the pair, used to scale sample offsets."""
    d = sum(abs(a - b) for a, b in zip(p.coords, q.coords))
    return F(d.a) if d.a else F(1)


def _scales(r, base):
    return base * r.choice((F(1, 4), F(1, 2), F(1), F(2), F(4)))


def refuter_PsiTS(p: Point, q: Point, r, samples: int = 8):
    """Midpoint z and sampled u tau z; each must be tau to p or to q.

    Returns ``(z, checked, violation)``, ``violation`` being a point u with
    u tau z, u ntau p and u ntau q, or None.
    """
    if relate(p, q) not in (RelKind.TIMELIKE, RelKind.LIGHTLIKE):
        raise WrongRelation("refuter needs a timelike or lightlike pair")
    z = p.midpoint(q)
    base = _scale_of(p, q)
    for _ in range(samples):
        u = sample_in_cone(r, z, RelKind.TIMELIKE, _scales(r, base))
        if relate(u, p) is not RelKind.TIMELIKE and relate(u, q) is not RelKind.TIMELIKE:
            return z, samples, u
    return z, samples, None


def refuter_PsiST(p: Point, q: Point, r, samples: int = 8, max_draws: int = 200):
    """Midpoint z and sampled u in C_p with u nsig q; each must be nsig to z.

    ``u`` is drawn inside the causal cone of ``p`` by construction and kept
    only if it also lies in the causal cone of ``q``.
    """
    if relate(p, q) not in (RelKind.SPACELIKE, RelKind.LIGHTLIKE):
        raise WrongRelation("refuter needs a spacelike or lightlike pair")
    z = p.midpoint(q)
    base = _scale_of(p, q)
    checked = 0
    for _ in range(max_draws):
        if checked >= samples:
            break
        kind = RelKind.TIMELIKE if r.random() < 0.8 else RelKind.LIGHTLIKE
        u = sample_in_cone(r, p, kind, _scales(r, base) * 2)
        if relate(u, q) is RelKind.SPACELIKE:
            continue
        checked += 1
        if relate(u, z) is RelKind.SPACELIKE:
            return z, checked, u
    return z, checked, None


def witness_PsiLS(p: Point, q: Point) -> Point:
    """z with p lam z and q nlam z such that no u is lam to p, q and z (n >= 3)."""
    if p.n < 3:
        raise RegimeViolation("lightlike cannot define spacelike when n = 2")
    f, finv = _canon(p, q, RelKind.SPACELIKE)
    return finv(_pt(p.n, f.ctx, 1, 0, 1))


def _bilinear(a: Point, b: Point):
    s = a.coords[0] * b.coords[0]
    for x, y in zip(a.coords[1:], b.coords[1:]):
        s = s - x * y
    return s


def refuter_PsiLS(p: Point, q: Point, z: Point) -> Point:
    """For p tau q and z lam p, z nlam q: the point u on line(p, z) with u lam q."""
    if relate(p, q) is not RelKind.TIMELIKE:
        raise WrongRelation("refuter needs a timelike pair")
    if relate(z, p) is not RelKind.LIGHTLIKE or relate(z, q) is RelKind.LIGHTLIKE:
        raise WrongRelation("need z lam p and z nlam q")
    a = p - q
    d = z - p
    s = -a.quad() / (2 * _bilinear(a, d))
    return p + d.scale(s)


# ---------------------------------------------------------------------------
# W formulas

def _norm_upper(v2: mpq, j: int) -> mpq:
    """A rational >= sqrt(v2) with denominator 10**j."""
    den = 10 ** j
    return F(math.isqrt(int(v2 * den * den)) + 1, den)


def _wsl_candidates(u: Point):
    """Points in the causal cone of u on the slices t = u0, t = 0 and t = 1."""
    n, ctx = u.n, u.ctx
    c = [x.a for x in u.space]
    u0 = u.time.a
    yield u
    dirs = []
    for i in range(n - 1):
        e = [F(0)] * (n - 1)
        e[i] = F(1)
        dirs.append(e)
        dirs.append([-x for x in e])
    away1 = list(c)
    away1[0] -= 1
    for d in (away1, list(c)):
        if any(d):
            dirs.append(d)
    for t0 in (F(0), F(1)):
        rad = abs(u0 - t0)
        if not rad:
            continue
        for d in dirs:
            d2 = sum(x * x for x in d)
            for j in (0, 1, 3):
                bound = _norm_upper(d2, j)
                for frac in (F(1), F(1, 2), F(9, 10)):
                    lam = rad * frac / bound
                    yield Point([t0] + [ci + lam * di for ci, di in zip(c, d)], ctx)


def _wsl_point(u: Point, p: Point, q: Point):
    for z in _wsl_candidates(u):
        if relate(z, u) is not RelKind.SPACELIKE and relate(z, p) is RelKind.SPACELIKE and relate(
            z, q
        ) is RelKind.SPACELIKE:
            return z
    return None


def witness_Wsl(p: Point, q: Point, u: Point, v: Point):
    """For a lightlike pair: ``("zu", z)``, ``("zv", z)`` or ``("uv", None)``.

    ``("uv", None)`` is the NonSpacelikeUV outcome: the disjunct u nsig v
    holds (the proof forces it when u and v both lie on segment pq).
    """
    f, finv = _canon(p, q, RelKind.LIGHTLIKE)
    if f.ctx.d is not None:
        raise WitnessNotFound("slice search runs over Q only")
    pc, qc = f(p), f(q)
    for tag, w in (("zu", u), ("zv", v)):
        z = _wsl_point(f(w), pc, qc)
        if z is not None:
            return tag, finv(z)
    if relate(u, v) is not RelKind.SPACELIKE:
        return "uv", None
    raise WitnessNotFound(f"no z found for u={u}, v={v}")


def refuter_Wsl(p: Point, q: Point) -> tuple[Point, Point]:
    """For a timelike pair: spacelike u, v on both light cones, mid-level."""
    f, finv = _canon(p, q, RelKind.TIMELIKE)
    n, ctx = p.n, f.ctx
    return finv(_pt(n, ctx, F(1, 2), F(1, 2))), finv(_pt(n, ctx, F(1, 2), F(-1, 2)))


# ---------------------------------------------------------------------------
# guided search for existential assignments

def _atoms_of(m):
    if isinstance(m, Atom):
        return [m]
    return list(m.parts)


def search_assignment(nf: NamedFormula, p: Point, q: Point, r, tries: int = 24, restarts: int = 3):
    """Try to satisfy an existential conjunctive matrix by sequential sampling.

    Each bound variable is proposed around an already placed point with an
    offset whose causal kind is allowed by the atom linking them.  Returns an
    assignment or None (None is not a proof of anything).
    """
    body = matrix(nf.formula)
    atoms = _atoms_of(body)
    free = nf.free
    order = []
    g = nf.formula
    while hasattr(g, "var"):
        order.append(g.var)
        g = g.body
    base = _scale_of(p, q)
    for _ in range(restarts):
        env = {free[0]: p, free[1]: q}
        ok = True
        for v in order:
            linked = [a for a in atoms if (a.left == v and a.right in env) or (a.right == v and a.left in env)]
            placed = None
            for _ in range(tries):
                a = r.choice(linked) if linked else None
                anchor = env[(a.right if a.left == v else a.left)] if a else r.choice(list(env.values()))
                kinds = [k for k in a.rel if k is not RelKind.EQUAL] if a else list(RelKind)[1:]
                kind = r.choice(kinds) if kinds else RelKind.EQUAL
                cand = sample_in_cone(r, anchor, kind, _scales(r, base))
                env[v] = cand
                if all(relate(env[b.left], env[b.right]) in b.rel for b in linked):
                    placed = cand
                    break
            if placed is None:
                ok = False
                break
        if ok and eval_qf(body, env):
            return env
    return None


# ---------------------------------------------------------------------------
# counterexample fixtures

COUNTEREXAMPLES = {
    "EstLightlike3D": (
        "Est",
        RelKind.LIGHTLIKE,
        {"p": (-2, -2, 0), "s": (0, 0, 0), "q": (2, 2, 0), "x": (-2, 0, 0), "z": (2, 0, 0), "r": (0, 0, 1)},
    ),
    "EstSpacelike3D": (
        "Est",
        RelKind.SPACELIKE,
        {"p": (0, -2, 0), "q": (0, 2, 0), "x": (3, 2, -2), "s": (3, 0, 1), "z": (3, -2, -2), "r": (0, 0, -3)},
    ),
    "EstHatLightlike3D": (
        "EstHat",
        RelKind.LIGHTLIKE,
        {"p": (-2, -2, 0), "q": (2, 2, 0), "x": (-2, 0, 3), "y": (0, 0, 0), "z": (2, 0, 3)},
    ),
}


def counterexample(name: str, n: int = 3) -> dict:
    """The fixed point assignment, padded with zeros up to dimension ``n``."""
    from .formulas import UnknownName

    if name not in COUNTEREXAMPLES:
        raise UnknownName(name)
    _, _, pts = COUNTEREXAMPLES[name]
    return {k: Point(list(v) + [0] * (n - len(v))) for k, v in pts.items()}


def check_counterexample(name: str, n: int = 3) -> tuple[bool, dict]:
    """True when the matrix holds while the free pair is not of the target kind."""
    fname, kind, _ = COUNTEREXAMPLES[name]
    nf = builtin(fname)
    env = counterexample(name, n)
    ok = eval_qf(matrix(nf.formula), env) and relate(env["p"], env["q"]) is kind and kind is not nf.target
    return ok, env


# ---------------------------------------------------------------------------
# per-formula directions

_WRAPPED = {
    # complement formula -> (base formula, guard relation between the free pair)
    "PsiTL": ("PsiTS", ~TAU),
    "PsiSL": ("PsiST", ~SIG),
    "PsiLT": ("PsiLS", ~LAM),
    "Utl": ("Ets", ~TAU),
    "Usl": ("Est", ~SIG),
    "UtlHat": ("EtsHat", ~TAU),
    "UslHat": ("EstHat", ~SIG),
    "Wst": ("Wsl", ~SIG),
    "WstMirror": ("WslMirror", ~TAU),
}


@dataclass
class _Outcome:
    ok: bool
    exact: bool
    env: dict | None = None
    skipped: bool = False


_PSI_TS_INNER = parse("u tau z & u ntau x & u ntau y")
_PSI_ST_INNER = parse("u sig z & u nsig x & u nsig y")
_PSI_LS_OUTER = parse("x nlam y & x lam z & y nlam z")
_PSI_LS_INNER = parse("u lam x & u lam y & u lam z")


def _sample_z(r, p, q, f_inv, on_plane: bool):
    n, ctx = p.n, p.ctx
    if on_plane and f_inv is not None:
        c = [F(0)] + [rand_rat(r, 2) for _ in range(n - 1)]
        return f_inv(Point(c, ctx))
    base = _scale_of(p, q)
    return p + rand_point(r, n, 2).scale(base)


def _psi_pos(kind_in, builder, inner, p, q, r, zs):
    f, finv = _canon(p, q, kind_in)
    for j in range(zs):
        z = _sample_z(r, p, q, finv, on_plane=(j % 2 == 0))
        if z == p or z == q:
            continue
        if kind_in is RelKind.TIMELIKE and j % 2 == 0:
            # exercise the axis case of the construction too
            z = finv(_pt(p.n, f.ctx, rand_rat(r, 2) + F(1, 3)))
            if z == p or z == q:
                continue
        u = builder(z, p, q)
        env = {"x": p, "y": q, "z": z, "u": u}
        if not eval_qf(inner, env):
            return _Outcome(False, True, env)
    return _Outcome(True, False)


def _pos_PsiTS(p, q, r, k):
    return _psi_pos(RelKind.SPACELIKE, witness_PsiTS_inner, _PSI_TS_INNER, p, q, r, k)


def _pos_PsiST(p, q, r, k):
    return _psi_pos(RelKind.TIMELIKE, witness_PsiST_inner, _PSI_ST_INNER, p, q, r, k)


def _neg_PsiTS(p, q, r, k):
    z, _, u = refuter_PsiTS(p, q, r, k)
    if u is not None:
        return _Outcome(False, False, {"x": p, "y": q, "z": z, "u": u})
    return _Outcome(True, False)


def _neg_PsiST(p, q, r, k):
    z, checked, u = refuter_PsiST(p, q, r, k)
    if u is not None:
        return _Outcome(False, False, {"x": p, "y": q, "z": z, "u": u})
    return _Outcome(True, False, skipped=checked == 0)


def _pos_PsiLS(p, q, r, k):
    z = witness_PsiLS(p, q)
    env = {"x": p, "y": q, "z": z}
    if not eval_qf(_PSI_LS_OUTER, env):
        return _Outcome(False, True, env)
    base = _scale_of(p, q)
    d = z - p
    for j in range(k):
        if j % 2 == 0:
            s = rand_rat(r, 3)
            if s in (0, 1):
                s = F(-1, 2)
            u = p + d.scale(s)
        else:
            u = p + Point(sample_null_offset(r, p.n, _scales(r, base)), p.ctx)
        env_u = dict(env, u=u)
        if eval_qf(_PSI_LS_INNER, env_u):
            return _Outcome(False, False, env_u)
    return _Outcome(True, False)


def _neg_PsiLS(p, q, r, k):
    if relate(p, q) is RelKind.LIGHTLIKE:
        return _Outcome(True, True)  # x nlam y fails
    base = _scale_of(p, q)
    for _ in range(k):
        z = p + Point(sample_null_offset(r, p.n, _scales(r, base)), p.ctx)
        if relate(z, q) is RelKind.LIGHTLIKE:
            continue
        u = refuter_PsiLS(p, q, z)
        env = {"x": p, "y": q, "z": z, "u": u}
        if not eval_qf(_PSI_LS_INNER, env):
            return _Outcome(False, True, env)
    return _Outcome(True, False)


def _pos_E(builder, name):
    def run(p, q, r, k):
        env = builder(p, q)
        env.update(p=p, q=q)
        ok = eval_qf(matrix(builtin(name).formula), env)
        return _Outcome(ok, True, env)

    return run


def _neg_E(name):
    def run(p, q, r, k):
        env = search_assignment(builtin(name), p, q, r, restarts=max(1, k // 4))
        if env is not None:
            return _Outcome(False, True, env)
        return _Outcome(True, False)

    return run


_WSL_MATRIX = matrix(builtin("Wsl").formula.parts[2])  # the disjunction under forall/exists


def _wsl_check(p, q, u, v, tag, z):
    env = {"x": p, "y": q, "u": u, "v": v}
    if tag == "zu":
        env["zu"], env["zv"] = z, z
    elif tag == "zv":
        env["zu"], env["zv"] = z, z
    else:
        env["zu"] = env["zv"] = p
    return eval_qf(_WSL_MATRIX, env), env


def _wsl_uv(r, p, q, n):
    """Sample u, v: free points, points on segment pq, and on its null line."""
    base = _scale_of(p, q)
    out = []
    for _ in range(2):
        c = r.random()
        if c < 0.35:
            s = F(r.randint(0, 8), 8)
            out.append(p + (q - p).scale(s))
        elif c < 0.5:
            s = rand_rat(r, 2)
            out.append(p + (q - p).scale(s))
        else:
            out.append(p + rand_point(r, n, 2).scale(base))
    return out


def _pos_Wsl(p, q, r, k):
    for _ in range(k):
        u, v = _wsl_uv(r, p, q, p.n)
        tag, z = witness_Wsl(p, q, u, v)
        ok, env = _wsl_check(p, q, u, v, tag, z)
        if not ok:
            return _Outcome(False, True, env)
    return _Outcome(True, False)


def _neg_Wsl(p, q, r, k):
    if relate(p, q) is RelKind.SPACELIKE:
        return _Outcome(True, True)
    u, v = refuter_Wsl(p, q)
    env = {"x": p, "y": q, "u": u, "v": v}
    if relate(u, v) is not RelKind.SPACELIKE:
        return _Outcome(False, True, env)
    base = _scale_of(p, q)
    for _ in range(k):
        for w, tag in ((u, "zu"), (v, "zv")):
            kind = RelKind.TIMELIKE if r.random() < 0.8 else RelKind.LIGHTLIKE
            z = sample_in_cone(r, w, kind, _scales(r, base))
            if relate(z, p) is RelKind.SPACELIKE and relate(z, q) is RelKind.SPACELIKE:
                return _Outcome(False, False, dict(env, **{tag: z}))
    return _Outcome(True, False)


def _swapped(run):
    """Run a handler on the time/space swapped configuration (n = 2)."""

    def inner(p, q, r, k):
        a = swap_tx()
        out = run(a(p), a(q), r, k)
        if out.env:
            out.env = {key: a(v) for key, v in out.env.items()}
        return out

    return inner


_DIRECTIONS = {
    # name: (positive handler, negative handler, strategy on target, strategy off target)
    "PsiTS": (_pos_PsiTS, _neg_PsiTS, Strategy.EXACT_WITNESS, Strategy.SAMPLED),
    "PsiST": (_pos_PsiST, _neg_PsiST, Strategy.EXACT_WITNESS, Strategy.SAMPLED),
    "PsiLS": (_pos_PsiLS, _neg_PsiLS, Strategy.EXACT_WITNESS, Strategy.EXACT_REFUTER),
    "Ets": (_pos_E(witness_Ets, "Ets"), _neg_E("Ets"), Strategy.EXACT_WITNESS, Strategy.SAMPLED),
    "EtsHat": (_pos_E(witness_EtsHat, "EtsHat"), _neg_E("EtsHat"), Strategy.EXACT_WITNESS, Strategy.SAMPLED),
    "Est": (_pos_E(witness_Est, "Est"), _neg_E("Est"), Strategy.EXACT_WITNESS, Strategy.SAMPLED),
    "EstHat": (_pos_E(witness_EstHat, "EstHat"), _neg_E("EstHat"), Strategy.EXACT_WITNESS, Strategy.SAMPLED),
    "Wsl": (_pos_Wsl, _neg_Wsl, Strategy.EXACT_WITNESS, Strategy.EXACT_REFUTER),
    "WslMirror": (_swapped(_pos_Wsl), _swapped(_neg_Wsl), Strategy.EXACT_WITNESS, Strategy.EXACT_REFUTER),
}


@dataclass(frozen=True)
class CheckPlan:
    id: str
    formula: str
    target: RelKind
    strategies: tuple  # ((kind, Strategy), ...)

    @property
    def named(self) -> NamedFormula:
        return builtin(self.formula)

    @property
    def regime(self):
        return self.named.regime


def plan_for(name: str, plan_id: str | None = None) -> CheckPlan:
    nf = builtin(name)
    base, _ = _WRAPPED.get(name, (name, None))
    _, _, s_pos, s_neg = _DIRECTIONS[base]
    strategies = []
    for kind in (RelKind.TIMELIKE, RelKind.LIGHTLIKE, RelKind.SPACELIKE):
        if kind is builtin(base).target:
            strategies.append((kind, s_pos))
        elif name in _WRAPPED and kind is nf.source:
            strategies.append((kind, Strategy.EXACT_REFUTER))  # guard atom fails
        else:
            strategies.append((kind, s_neg))
    return CheckPlan(plan_id or name, name, nf.target, tuple(strategies))


_COUNTER_FOR = {"Est": ("EstLightlike3D", "EstSpacelike3D"), "Usl": ("EstLightlike3D",), "EstHat": ("EstHatLightlike3D",), "UslHat": ("EstHatLightlike3D",)}


def _evaluate(name: str, p: Point, q: Point, r, k: int) -> tuple[bool, _Outcome]:
    """Value of the named formula on (p, q), with the outcome that backs it."""
    if name in _WRAPPED:
        base, guard = _WRAPPED[name]
        if p == q or relate(p, q) not in guard:
            return False, _Outcome(True, True)
        val, out = _evaluate(base, p, q, r, k)
        return not val, out
    pos, neg, _, _ = _DIRECTIONS[name]
    if relate(p, q) is builtin(name).target:
        out = pos(p, q, r, k)
        return out.ok, out
    out = neg(p, q, r, k)
    return not out.ok, out


def check_formula(
    plan: CheckPlan | str,
    trials: int = 200,
    seed=0,
    n: int = 2,
    ctx: FieldCtx = QQ,
    inner: int = 4,
) -> Verdict:
    """Sample ``trials`` pairs of each kind and compare the formula with its target.

    ``inner`` bounds the universal-direction samples per pair.
    """
    if isinstance(plan, str):
        plan = plan_for(plan)
    nf = plan.named
    verdict = Verdict(plan.id, Status.PASS, trials, seed, n, str(ctx))
    if not nf.regime.admits_dimension(n):
        names = [c for c in _COUNTER_FOR.get(nf.name, ()) if n >= 3]
        if not names:
            raise RegimeViolation(f"{nf.name} is claimed only for {nf.regime.describe()}; got n={n}")
        for cname in names:
            ok, env = check_counterexample(cname, n)
            verdict.counts[cname] = "matrix holds" if ok else "matrix fails"
            if ok and verdict.counterexample is None:
                verdict.status = Status.FAIL
                verdict.counterexample = env
                verdict.notes.append(
                    f"{cname}: the {COUNTEREXAMPLES[cname][0]} matrix holds on a {relate(env['p'], env['q'])} pair; "
                    f"{nf.name} does not define {nf.target} for n={n}"
                )
        return verdict
    if nf.regime.needs_roots(n):
        verdict.notes.append(
            "field is not Euclidean; samples are restricted to pairs canonicalizable over " + str(ctx)
        )
    strategies = dict(plan.strategies)
    for kind in (RelKind.TIMELIKE, RelKind.LIGHTLIKE, RelKind.SPACELIKE):
        expect = kind is nf.target
        stats = {"pairs": 0, "agree": 0, "skipped": 0, "strategy": strategies[kind].value}
        for i in range(trials):
            r = trial_rng(seed, f"{plan.id}:{kind.name}", i)
            p, q = sample_pair(r, kind, n, ctx)
            stats["pairs"] += 1
            try:
                val, out = _evaluate(nf.name, p, q, r, inner)
            except NotASquare as e:
                stats["skipped"] += 1
                continue
            if val == expect:
                stats["agree"] += 1
                if expect and out.env and len(verdict.witnesses) < 3:
                    verdict.witnesses.append(out.env)
            elif verdict.counterexample is None:
                verdict.status = Status.FAIL
                verdict.counterexample = dict(out.env or {}, p=p, q=q)
                verdict.notes.append(
                    f"{kind} pair evaluated to {val}, expected {expect} (trial {i})"
                )
        verdict.counts[kind.name.lower()] = stats
    if verdict.status is Status.PASS and all(
        s["skipped"] == s["pairs"] for s in verdict.counts.values() if isinstance(s, dict)
    ):
        verdict.status = Status.INCONCLUSIVE
        verdict.notes.append("every pair needed an unavailable square root (NotASquare)")
    if any(s is not Strategy.EXACT_WITNESS for s in strategies.values()):
        verdict.notes.append("universal directions: sampling evidence, not a proof")
    return verdict


# ---------------------------------------------------------------------------
# theorem replays

_TAU_ATOMS = (EQ, TAU, ~TAU & NE)
_LAM_ATOMS = (EQ, LAM, ~LAM & NE)


def _diagram(points: dict, atoms, skip=("p", "q")):
    """The conjunction of atoms (from ``atoms``) holding between all pairs."""
    names = list(points)
    out = []
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if {a, b} == set(skip):
                continue
            k = relate(points[a], points[b])
            rel = next(s for s in atoms if k in s)
            out.append(Atom(a, rel, b))
    return out


def _holds(atoms, env) -> bool:
    return all(relate(env[a.left], env[a.right]) in a.rel for a in atoms)


def t_eps_replay(trials: int = 100, seed=0, n: int = 2, extra: int = 4) -> Verdict:
    """Time compression moves a satisfying assignment from a lightlike to a
    spacelike free pair without disturbing any tau-atom."""
    v = Verdict("t-eps-no-exist-lambda", Status.PASS, trials, seed, n)
    eps_seen = []
    for i in range(trials):
        r = trial_rng(seed, "t-eps", i)
        p, q = sample_pair(r, RelKind.LIGHTLIKE, n)
        env = {"p": p, "q": q}
        for j in range(extra):
            anchor = r.choice(list(env.values()))
            kind = r.choice((RelKind.TIMELIKE, RelKind.LIGHTLIKE, RelKind.SPACELIKE))
            env[f"z{j}"] = sample_in_cone(r, anchor, kind, _scales(r, _scale_of(p, q)))
        atoms = _diagram(env, _TAU_ATOMS)
        names = list(env)
        try:
            eps, images = time_compress([env[k] for k in names], (0, 1))
        except NoEpsilonFound as e:
            v.status = Status.FAIL
            v.counterexample = env
            v.notes.append(f"trial {i}: {e}")
            break
        img = dict(zip(names, images))
        if not _holds(atoms, img) or relate(img["p"], img["q"]) is not RelKind.SPACELIKE:
            v.status = Status.FAIL
            v.counterexample = env
            v.notes.append(f"trial {i}: image assignment breaks the matrix")
            break
        eps_seen.append(eps)
    v.counts = {"assignments": len(eps_seen), "min_eps": str(min(eps_seen)) if eps_seen else None}
    return v


def h_replay(trials: int = 100, seed=0, n: int = 2, extra: int = 4, t=F(3, 2)) -> Verdict:
    """Hyperbolic inversion (after escaping the light cone of the origin)
    turns the timelike pair (0,1),(t,1) into a spacelike pair and keeps every
    lam / = atom of a random assignment."""
    v = Verdict("h-inversion-no-def-from-lambda", Status.PASS, trials, seed, n)
    p = _pt(n, QQ, 0, 1)
    q = _pt(n, QQ, t, 1)
    done = 0
    for i in range(trials):
        r = trial_rng(seed, "h-replay", i)
        env = {"p": p, "q": q}
        for j in range(extra):
            anchor = r.choice(list(env.values()))
            kind = r.choice((RelKind.TIMELIKE, RelKind.LIGHTLIKE, RelKind.SPACELIKE))
            env[f"z{j}"] = sample_in_cone(r, anchor, kind, F(r.randint(1, 4), 2))
        atoms = _diagram(env, _LAM_ATOMS)
        names = list(env)
        moved = dict(zip(names, escape_iteration([env[k] for k in names], RelKind.TIMELIKE)))
        mp, mq = moved["p"], moved["q"]
        in_place = mp == p and mq.space == p.space and mq.time * mq.time - 1 > 1
        img = {k: hyperbolic_inversion(x) for k, x in moved.items()}
        if not (in_place and _holds(atoms, img) and relate(img["p"], img["q"]) is RelKind.SPACELIKE):
            v.status = Status.FAIL
            v.counterexample = env
            v.notes.append(f"trial {i}: replay failed")
            break
        done += 1
    v.counts = {"assignments": done}
    return v
