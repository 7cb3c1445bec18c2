# Maps that preserve the causal relations, and the special maps of the proofs.
from causaldef import Point, QQ, relate
from causaldef.transforms import (
    boost,
    canonicalize_pair,
    hyperbolic_inversion,
    swap_tx,
    time_compress,
)

# a boost with speed 3/5 stays inside Q since sqrt(1 - 9/25) = 4/5
b = boost(1, QQ.parse("3/5"))
print("boost(3/5) sends (1,0) to", b(Point((1, 0))))

# every pair can be moved to one of three canonical pairs
for p, q in [(Point((1, 1)), Point((2, 1))), (Point((0, 0)), Point((3, 3))), (Point((1, 2)), Point((2, 5)))]:
    f, tag = canonicalize_pair(p, q)
    print(f"{p} {q} -> {f(p)} {f(q)}  ({tag})")

# in the plane, exchanging t and x keeps lam and swaps tau with sig
s = swap_tx()
p, q = Point((0, 0)), Point((1, 0))
print("\nswap:", relate(p, q), "->", relate(s(p), s(q)))

# scaling time down turns a lightlike pair spacelike and keeps tau
pts = [Point((0, 0)), Point((2, 0)), Point((1, 1))]
eps, imgs = time_compress(pts, (0, 2))
print("\ntime compression with eps =", eps)
for i in range(3):
    for j in range(i + 1, 3):
        print(f"  {pts[i]} {pts[j]}: {relate(pts[i], pts[j])} -> {relate(imgs[i], imgs[j])}")

# the inversion r -> r / Q(r) keeps lam but not tau
p, q = Point((0, 1)), Point((QQ.parse("3/2"), 1))
hp, hq = hyperbolic_inversion(p), hyperbolic_inversion(q)
print("\ninversion:", p, q, relate(p, q), "->", hp, hq, relate(hp, hq))
