"""The genus-zero algebraic model: separating configurations by value
vectors of degree-1 functions.

For each marked point the unique (up to scale) degree-1 rational function
with a pole there and zero value sum at the others produces a projective
value vector.  The collection is invariant under fractional-linear changes
of coordinate and separates exactly the cross-ratio classes for n = 4.
"""

from ribboncells.model0 import (INFINITY, PointConfig, QQi, full_map,
                                full_maps_agree, mobius_apply)

q = QQi.of

cfg = PointConfig.create([q(0), q(1), q(3), INFINITY])
print("configuration:", [str(p) for p in cfg.points])
for i, pt in enumerate(full_map(cfg), start=1):
    print(f"  map {i}: ({', '.join(str(c) for c in pt.coords)})")

moved = mobius_apply((q(2), q(1), q(1), q(3)), cfg)  # z -> (2z+1)/(z+3)
print("\nafter z -> (2z+1)/(z+3):", [str(p) for p in moved.points])
print("full maps agree:", full_maps_agree(full_map(cfg), full_map(moved)))

other = PointConfig.create([q(0), q(1), q(4), INFINITY])
print("\ndifferent cross-ratio configuration separated:",
      not full_maps_agree(full_map(cfg), full_map(other)))

# n = 3 is a single point of moduli: every configuration maps to the same
# projective value vectors
a = full_map(PointConfig.create([q(0), q(1), q(2)]))
b = full_map(PointConfig.create([q(5), q(7, 2), INFINITY]))
print("all 3-point configurations agree:", full_maps_agree(a, b))
