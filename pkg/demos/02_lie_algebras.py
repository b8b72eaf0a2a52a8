# Lie algebras from matrix curves: generators, exponentials, structure constants.
import math

import numpy as np

from liesym import liecore as lc
from liesym import so3su2 as su2
from liesym import su3flavor as su3

np.set_printoptions(precision=4, suppress=True)

# Differentiate the rotation about z at the identity to get its generator.
curve = lc.ParamCurve(3, 1, lambda a: su2.so_n_rotation("z", a[0]))
x, err = lc.extract_generator(curve)
print("X_z =\n", x, "\nerror estimate", err)
print("exp(i 0.3 X_z) == R_z(0.3):", np.allclose(lc.exp_map(lc.GeneratorBasis("z", (x,)), [0.3]),
                                                 su2.so_n_rotation("z", 0.3)))

# Structure constants [X_a, X_b] = i f_abc X_c.
re_f, _ = lc.exact_structure_constants(su2.pauli_basis())
print("Pauli f_123 (exact):", re_f[0, 1, 2])
print("SO(3) f_123:", lc.structure_constants(su2.so3_basis()).f[0, 1, 2].real)
print("signed ratio Pauli/SO(3):", lc.rescale_ratio(su2.pauli_basis(), su2.so3_basis()))

sc = su3.su3_structure_constants()
nz = [(a + 1, b + 1, c + 1, round(sc.f[a, b, c], 4))
      for a in range(8) for b in range(a + 1, 8) for c in range(b + 1, 8) if abs(sc.f[a, b, c]) > 1e-12]
print("non-zero su(3) f_abc (a<b<c):", nz)

# Jacobi identity on random elements.
for name, basis in (("su2", su2.pauli_basis()), ("su3", su3.su3_basis())):
    print(name, lc.verify_bracket_properties(basis, 100, 0))

# Weights of the triplet in the (I3, X8) plane.
print(su3.weights_csv(with_hypercharge=True))
print("sqrt(3)/6 =", math.sqrt(3) / 6)
