# Defining one causal relation from another, and checking the definitions.
from causaldef import Point, builtin, check_formula, eval_qf, relate, to_text
from causaldef.formulas import matrix
from causaldef.witnesses import check_counterexample, counterexample, witness_Ets

# sig from tau with one universal and one existential quantifier
nf = builtin("PsiTS")
print(nf.name, "vars =", nf.vars, "prefix =", nf.prefix)
print(" ", to_text(nf.formula))

# an existential definition with four bound variables; the proof's
# points make every atom of the matrix true
nf = builtin("Ets")
p, q = Point((0, 0)), Point((0, 1))
env = witness_Ets(p, q)
print("\n" + nf.name, {k: str(v) for k, v in env.items()})
print("  matrix holds:", eval_qf(matrix(nf.formula), {"p": p, "q": q, **env}))

# sampled check against every kind of pair
v = check_formula("PsiTS", trials=50, seed=0, n=2)
print("\nPsiTS in the plane:", v.status.value)
for kind, c in v.counts.items():
    print(f"  {kind}: {c['agree']}/{c['pairs']} ({c['strategy']})")

# the sig-mirror of Ets works in the plane but not in space
v = check_formula("Est", trials=10, seed=0, n=3)
print("\nEst in 3 dimensions:", v.status.value)
ok, env = check_counterexample("EstLightlike3D")
print("  matrix true on a", relate(env["p"], env["q"]), "pair:", ok)
print("  points:", {k: str(x) for k, x in counterexample("EstLightlike3D").items()})
