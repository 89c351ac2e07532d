"""Differential forms on polytopal complexes, all in exact arithmetic.

A form on a complex is a form per polytope whose pullbacks along the
gluings match on the shared faces.  This makes piecewise-polynomial
calculus rigorous: the exterior derivative and wedge work cellwise, the
Stokes identity holds exactly on chains, and the cone construction inverts
d on closed forms.
"""

from ribboncells.polyform import (AffineMap, Form, FormOnComplex, Gluing,
                                  Polynomial, Polytope, PolytopalComplex,
                                  cone_homotopy, integrate, polytope_chain,
                                  stokes_check, validate_form, volume)

# two unit squares sharing the segment x = 0
right = Polytope.from_bounds([(0, 1), (0, 1)])
left = Polytope.from_bounds([(-1, 0), (0, 1)])
edge = Polytope.from_bounds([(0, 1)])
embed = AffineMap.create([[0], [1]], [0, 0])
cx = PolytopalComplex({"right": right, "left": left, "edge": edge},
                      [Gluing("edge", "right", embed),
                       Gluing("edge", "left", embed)])

one = Polynomial.constant(2, 1)
w = FormOnComplex(cx, 1, {
    "right": Form(2, 1, {(0,): one, (1,): one}),                 # dx + dy
    "left": Form(2, 1, {(0,): one * (-2), (1,): one}),           # -2dx + dy
    "edge": Form(1, 1, {(0,): Polynomial.constant(1, 1)}),       # ds
})
print("piecewise 1-form compatible:", validate_form(cx, w) is None)

bad = FormOnComplex(cx, 1, dict(w.forms))
bad.forms["left"] = Form(2, 1, {(0,): one, (1,): one * 2})
print("perturbed form fails on:", validate_form(cx, bad))

both = polytope_chain("right", right) + polytope_chain("left", left)
lhs, rhs, ok = stokes_check(cx, both, w)
print(f"Stokes across the seam: int d(w) = {lhs}, boundary integral = {rhs},"
      f" equal: {ok}")

# a single square: int_sq d(x dy) = area = boundary integral of x dy
sq = PolytopalComplex({"sq": right}, [])
xdy = FormOnComplex(sq, 1, {"sq": Form(2, 1, {(1,): Polynomial.variable(0, 2)})})
c = polytope_chain("sq", right)
print("d(x dy) over the square:", integrate(xdy.d(), c),
      "= x dy over its boundary:", integrate(xdy, c.boundary()))

# the cone construction: a primitive for the area form around the origin
area = Form(2, 2, {(0, 1): one})
h = cone_homotopy(right, (0, 0), area)
print("cone primitive of dx^dy:", h, "-> d of it:", h.d())

print("volume of a 4-cube of side 2:",
      volume(Polytope.from_bounds([(0, 2)] * 4)))
