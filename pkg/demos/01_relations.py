# Timelike, lightlike and spacelike relatedness with exact arithmetic.
from causaldef import Point, QQ, mink_form, quad_field, relate
from causaldef.exactfield import conjugate
from causaldef.minkowski import in_future_of, on_light_cone

p = Point((0, 0))
for q in [(1, 0), (1, 1), (0, 1), (2, -1)]:
    q = Point(q)
    print(p, q, relate(p, q), "form =", mink_form(p, q))

# the relations only depend on the sign of the form, so no tolerance is needed
a, b = Point((-2, -2, 0)), Point((2, 2, 0))
print("\n", a, b, relate(a, b))

print("\nfuture of the origin?")
print("  (2,0) timelike:", in_future_of(Point((2, 0)), p))
print("  (1,1) timelike:", in_future_of(Point((1, 1)), p))
print("  (1,1) causal:  ", in_future_of(Point((1, 1)), p, "causal"))
print("  (1,1) on the light cone:", on_light_cone(Point((1, 1)), p))

# over Q(rt2) the conjugation x + y rt -> x - y rt keeps the field
# operations but not the order, so it swaps these two vectors
K = quad_field(2)
o = Point.origin(3, K)
v = Point.parse("(1,1-1/2*rt,0)", K)
w = Point([conjugate(c) for c in v], K)
print("\nover", K)
print(" ", v, relate(o, v))
print(" ", w, relate(o, w))
print("  rationals embed:", QQ.parse("3/4") + K.parse("1*rt"))
