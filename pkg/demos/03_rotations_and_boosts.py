# SU(2) covers SO(3) twice; Lorentz boosts and their algebra.
import math

import numpy as np

from liesym import lorentz as lz
from liesym import so3su2 as su2

np.set_printoptions(precision=4, suppress=True)

axis = np.array([1.0, 2.0, 2.0]) / 3.0
theta = 1.2
q = su2.su2_from_axis_angle(axis, theta)
r = np.real(su2.so_n_rotation(axis, theta))
print("q =", q.as_tuple())
print("R(q) == R(-q) == Rodrigues:",
      np.allclose(su2.quaternion_to_rotation(q), r), np.allclose(su2.quaternion_to_rotation(-q), r))
print("a full turn gives q = -1:", su2.su2_from_axis_angle(axis, 2 * math.pi).as_tuple())

# The full-angle form cos(t) + sin(t) u rotates by 2t.
print(su2.rotate_by_conjugation(su2.full_angle_quaternion("x", 0.4), [0, 1, 0]),
      [0, math.cos(0.8), math.sin(0.8)])

# Isospin ladder.
print("I+ n =", su2.apply_isospin(su2.ladder("plus"), su2.NEUTRON))
print("I+ p =", su2.apply_isospin(su2.ladder("plus"), su2.PROTON))

# Boost along x with rapidity pi/2.
b = np.real(lz.boost("x", math.pi / 2))
print("boost:\n", b)
print("coordinate speed:", lz.coordinate_velocity(b), "-tanh(pi/2) =", -math.tanh(math.pi / 2))
for m in (np.eye(4), lz.T_P, lz.T_P @ lz.T_T, lz.T_T):
    print(lz.classify(m).as_dict())

print("algebra residuals, exp(+i theta G) basis:", lz.lorentz_algebra_report("plus"))
print("algebra residuals, exp(-i theta G) basis:", lz.lorentz_algebra_report("minus"))
print("Poincare commutators:", lz.poincare_commutators("minus"))
