# Finite groups: Cayley tables, the regular representation, unitarization.
import numpy as np

from liesym import finitegroup as fg

np.set_printoptions(precision=4, suppress=True)

# The rotations of a square by multiples of 90 degrees.
c4 = fg.c4_group()
print("elements:", c4.elements)
print("Cayley table:\n", c4.table)

# Regular representation: each element permutes the group itself.
reg = fg.build_regular_representation(c4)
for lab in c4.elements:
    print(lab, "\n", reg[lab].astype(int))
print("homomorphism holds:", fg.verify_representation(reg))

# A non-unitary representation of the two-element group ...
c2 = fg.Representation(fg.parity_group(), (np.eye(2), np.array([[1.0, 1.0], [0.0, -1.0]])))
res = fg.unitarize(c2)
print("S = sum D^dagger D =\n", res.S.real)
print("unitarized D(g) =\n", res.unitarized[1].real)
print("unitary:", fg.is_unitary_representation(res.unitarized))

# ... and an equivalent copy hidden behind a random change of basis.
rng = np.random.default_rng(0)
s3 = fg.s3_permutation_representation()
hidden = fg.conjugate(s3, fg.random_invertible(3, rng, 100.0))
s = fg.are_equivalent(s3, hidden)
print("intertwiner found:", s is not None)
print("residual:", max(np.abs(np.linalg.inv(s) @ a @ s - b).max() for a, b in zip(s3.images, hidden.images)))

# A multiplication table that is not a group.
try:
    fg.verify_group_axioms(["a", "b"], [[0, 0], [0, 1]])
except fg.GroupAxiomError as exc:
    print("rejected:", exc.axiom, exc.witness)
