"""SU(3) flavor: Gell-Mann matrices, weights of the triplet, hypercharge."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .liecore import GeneratorBasis, StructureConstants, structure_constants
from .numkernel import mat_exp, max_abs

SQRT3 = math.sqrt(3.0)


def gell_mann(alpha: int) -> np.ndarray:
    """Gell-Mann matrix ``lambda_alpha`` for alpha in 1..8.

    lambda_8 is diag(1, 1, -2)/sqrt(3), which makes tr(l_a l_b) = 2 delta_ab.
    """
    if isinstance(alpha, bool) or alpha not in range(1, 9):
        raise ValueError(f"Gell-Mann index must be 1..8, got {alpha!r}")
    m = np.zeros((3, 3), dtype=np.complex128)
    # (row, col) of the off-diagonal pair for lambda 1,2 / 4,5 / 6,7
    pairs = {1: (0, 1), 2: (0, 1), 4: (0, 2), 5: (0, 2), 6: (1, 2), 7: (1, 2)}
    if alpha in (1, 4, 6):
        r, c = pairs[alpha]
        m[r, c] = m[c, r] = 1
    elif alpha in (2, 5, 7):
        r, c = pairs[alpha]
        m[r, c] = -1j
        m[c, r] = 1j
    elif alpha == 3:
        m[0, 0], m[1, 1] = 1, -1
    else:
        m[0, 0] = m[1, 1] = 1 / SQRT3
        m[2, 2] = -2 / SQRT3
    return m


def lambda8_one_third_variant() -> np.ndarray:
    """The 1/3-prefactor variant, kept so its eigenvalues can be compared."""
    return np.diag([1.0, 1.0, -2.0]).astype(np.complex128) / 3.0


def su3_basis() -> GeneratorBasis:
    """``X_a = lambda_a / 2``."""
    return GeneratorBasis("su3", tuple(gell_mann(a) / 2.0 for a in range(1, 9)))


def gell_mann_basis() -> GeneratorBasis:
    return GeneratorBasis("gell-mann", tuple(gell_mann(a) for a in range(1, 9)))


def su3_structure_constants() -> StructureConstants:
    return structure_constants(su3_basis())


def total_antisymmetry_residual(f: np.ndarray) -> float:
    """Max deviation of ``f`` from total antisymmetry under index swaps."""
    return max(
        max_abs(f + np.transpose(f, (1, 0, 2))),
        max_abs(f + np.transpose(f, (0, 2, 1))),
        max_abs(f + np.transpose(f, (2, 1, 0))),
    )


def verify_traceless_determinant_identity(basis: GeneratorBasis, trials: int = 20, seed: int = 0,
                                          tol: float = 1e-10) -> dict:
    """Check ``det exp(i t X) == 1`` for each generator at random real ``t``.

    A generator with non-zero trace has ``det = exp(i t tr X)`` and is listed
    under ``non_special``.
    """
    rng = np.random.default_rng(seed)
    ts = rng.uniform(-math.pi, math.pi, size=trials)
    per_gen = []
    for x in basis.generators:
        worst = 0.0
        for t in ts:
            worst = max(worst, abs(np.linalg.det(mat_exp(1j * t * x)) - 1.0))
        per_gen.append(float(worst))
    non_special = [i for i, v in enumerate(per_gen) if v > tol]
    return {
        "max_deviation": max(per_gen),
        "per_generator": per_gen,
        "traces": [complex(np.trace(x)) for x in basis.generators],
        "non_special": non_special,
        "pass": not non_special,
    }


@dataclass(frozen=True)
class WeightPoint:
    label: str
    i3: float
    x8: float

    @property
    def hypercharge(self) -> float:
        """``Y = (2/sqrt(3)) x8`` -- a conventional normalization, not derived here."""
        return 2.0 / SQRT3 * self.x8


def fundamental_weights() -> list:
    """Simultaneous eigenvalues of ``X3`` and ``X8`` on e1, e2, e3.

    Both generators are diagonal, so the eigenpairs are read off the diagonals.
    """
    x3 = gell_mann(3) / 2.0
    x8 = gell_mann(8) / 2.0
    return [WeightPoint(f"e{k + 1}", float(x3[k, k].real), float(x8[k, k].real)) for k in range(3)]


def weight_eigen_residual(w: WeightPoint) -> float:
    k = int(w.label[1:]) - 1
    v = np.zeros(3, dtype=np.complex128)
    v[k] = 1
    r3 = np.linalg.norm(gell_mann(3) / 2.0 @ v - w.i3 * v)
    r8 = np.linalg.norm(gell_mann(8) / 2.0 @ v - w.x8 * v)
    return float(max(r3, r8))


def weights_csv(weights=None, with_hypercharge: bool = False) -> str:
    weights = fundamental_weights() if weights is None else weights
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["label", "i3", "x8"] + (["y"] if with_hypercharge else [])
    writer.writerow(header)
    for w in weights:
        row = [w.label, repr(w.i3), repr(w.x8)]
        if with_hypercharge:
            row.append(repr(w.hypercharge))
        writer.writerow(row)
    return buf.getvalue()


@dataclass(frozen=True)
class FlavorQuantumNumbers:
    baryon_number: Fraction
    strangeness: Fraction
    hypercharge: Fraction


def hypercharge(baryon_number, strangeness) -> FlavorQuantumNumbers:
    """``Y = B + S`` in exact rational arithmetic.

    Inputs may be ints, Fractions or strings like ``"1/3"``; floats are
    rejected to keep the sum exact.
    """
    def _q(v) -> Fraction:
        if isinstance(v, float):
            raise TypeError("use an int, Fraction or 'p/q' string, not a float")
        return Fraction(v)

    b, s = _q(baryon_number), _q(strangeness)
    return FlavorQuantumNumbers(b, s, b + s)


QUARKS = {
    "u": hypercharge(Fraction(1, 3), 0),
    "d": hypercharge(Fraction(1, 3), 0),
    "s": hypercharge(Fraction(1, 3), -1),
}


def is_hermitian_traceless_combo(c, tol: float = 1e-12) -> bool:
    m = su3_basis().combine(np.asarray(c, dtype=float))
    return max_abs(m - m.conj().T) <= tol and abs(np.trace(m)) <= tol
