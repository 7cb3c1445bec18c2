# Why some definitions need more variables or quantifiers.
from causaldef import TAU, SIG, LAM
from causaldef.graphembed import enumerate_nrf2, nrf2_relation_report, orbits
from causaldef.relalg import Atom, AtomSet, closure, decide_3var_definable, hasse
from causaldef.status import render_text
from causaldef.witnesses import t_eps_replay

# with 3 variables only unions of =, rho and rho-bar minus = are definable
s = closure({AtomSet.of(Atom.RHO)})
print(len(s), "relations:", sorted(x.name for x in s))
print("covering pairs:", len(hasse(s)))
for target, name in ((SIG, "sig"), (LAM, "lam")):
    print(f"  {name} definable from tau with 3 variables:", decide_3var_definable(target, TAU))

# two bound variables: every basic formula embeds with each kind on p, q
graphs = enumerate_nrf2(TAU)
print(f"\n{len(graphs)} graphs, {len(orbits(graphs))} up to symmetry")
rep = nrf2_relation_report(2, TAU)
print(rep.conclusion, f"({len(rep.rows)} embeddings)")

# existential formulas cannot separate lam from sig
v = t_eps_replay(20, seed=0)
print("\ntime compression replay:", v.status.value, v.trials, "assignments")

print()
print(render_text(2))
