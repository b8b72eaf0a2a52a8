"""Matrix Lie groups and algebras.

Generators follow the physics convention ``D(alpha) = exp(i alpha^j X_j)`` and
structure constants are defined by ``[X_a, X_b] = i f_ab^c X_c``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .numkernel import (
    DEFAULT_TOL,
    as_matrix,
    commutator,
    eig_hermitian,
    mat_exp,
    matrix_from_json,
    matrix_to_json,
    max_abs,
)

CLOSURE_TOL = 1e-8


class NotIdentityAtZeroError(ValueError):
    pass


class NotClosedError(ValueError):
    """A bracket of two basis elements leaves the span of the basis."""

    def __init__(self, message: str, residual: float, pair: tuple):
        super().__init__(message)
        self.residual = residual
        self.pair = pair


def levi_civita(i: int, j: int, k: int) -> int:
    """Permutation symbol on indices 1..3."""
    for x in (i, j, k):
        if x not in (1, 2, 3):
            raise ValueError(f"Levi-Civita index {x} outside 1..3")
    return (i - j) * (j - k) * (k - i) // 2


def kronecker_delta(i, j) -> int:
    return 1 if i == j else 0


def epsilon_tensor() -> np.ndarray:
    """``eps[a, b, c]`` with zero-based indices."""
    eps = np.zeros((3, 3, 3))
    for a in range(3):
        for b in range(3):
            for c in range(3):
                eps[a, b, c] = levi_civita(a + 1, b + 1, c + 1)
    return eps


@dataclass(frozen=True)
class ParamCurve:
    """A smooth matrix-valued curve ``alpha -> D(alpha)``.

    ``derivative(alpha, j)`` may supply the exact partial derivative; when it
    is present :func:`extract_generator` uses it instead of finite
    differences.
    """

    dim: int
    param_count: int
    evaluate: Callable[[np.ndarray], np.ndarray]
    derivative: Optional[Callable[[np.ndarray, int], np.ndarray]] = None
    at_zero_is_identity: bool = True

    def __call__(self, alpha) -> np.ndarray:
        return np.asarray(self.evaluate(np.atleast_1d(np.asarray(alpha, dtype=float))), dtype=np.complex128)


def extract_generator(curve: ParamCurve, j: int = 0, h: float = 1e-5):
    """Estimate ``X_j = -i dD/dalpha_j (0)``.

    Uses a central difference at steps ``h`` and ``h/2`` combined by one level
    of Richardson extrapolation. Returns ``(X, error_estimate)``.
    """
    zero = np.zeros(curve.param_count)
    if curve.at_zero_is_identity and max_abs(curve(zero) - np.eye(curve.dim)) > DEFAULT_TOL:
        raise NotIdentityAtZeroError("curve does not pass through the identity at alpha = 0")
    if not 0 <= j < curve.param_count:
        raise IndexError(f"parameter index {j} out of range")
    if curve.derivative is not None:
        return -1j * np.asarray(curve.derivative(zero, j), dtype=np.complex128), 0.0

    e = np.zeros(curve.param_count)
    e[j] = 1.0

    def central(step):
        return (curve(step * e) - curve(-step * e)) / (2.0 * step)

    coarse = central(h)
    fine = central(h / 2.0)
    rich = (4.0 * fine - coarse) / 3.0
    return -1j * rich, max_abs(rich - fine)


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    name: str
    generators: tuple = field(default=())

    def __post_init__(self):
        gens = tuple(as_matrix(g) for g in self.generators)
        if not gens:
            raise ValueError("a basis needs at least one generator")
        if len({g.shape for g in gens}) != 1:
            raise ValueError("generators must share one dimension")
        gram = _gram(gens)
        w = eig_hermitian(gram).eigenvalues
        if w[0] <= 1e-10 * max(1.0, w[-1]):
            raise ValueError(f"generators of {self.name!r} are linearly dependent")
        object.__setattr__(self, "generators", gens)

    def __len__(self):
        return len(self.generators)

    def __getitem__(self, i) -> np.ndarray:
        return self.generators[i]

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0]

    def scaled(self, s: float, name=None) -> "GeneratorBasis":
        return GeneratorBasis(name or f"{s}*{self.name}", tuple(s * g for g in self.generators))

    def combine(self, coeffs) -> np.ndarray:
        coeffs = np.asarray(coeffs)
        return np.tensordot(coeffs, np.array(self.generators), axes=1)


def _gram(gens) -> np.ndarray:
    vecs = np.array([g.ravel() for g in gens])
    return vecs.conj() @ vecs.T


def exp_map(basis: GeneratorBasis, alpha) -> np.ndarray:
    """Group element ``exp(i alpha^j X_j)``."""
    alpha = np.atleast_1d(np.asarray(alpha, dtype=float))
    if alpha.shape != (len(basis),):
        raise ValueError(f"expected {len(basis)} parameters, got {alpha.shape[0]}")
    return mat_exp(1j * basis.combine(alpha))


@dataclass(frozen=True, eq=False)
class StructureConstants:
    f: np.ndarray
    residual: float

    def __getitem__(self, idx):
        return self.f[idx]

    @property
    def max_imag(self) -> float:
        return float(np.max(np.abs(self.f.imag)))


def structure_constants(basis: GeneratorBasis, tol: float = CLOSURE_TOL) -> StructureConstants:
    """Least-squares expansion of every bracket ``[X_a, X_b]`` in the basis.

    Only pairs ``a < b`` are solved; the rest follow from antisymmetry, so
    ``f[a, b] == -f[b, a]`` holds exactly. Raises :class:`NotClosedError`
    when a bracket leaves the span by more than ``tol``.
    """
    n = len(basis)
    vecs = np.array([g.ravel() for g in basis.generators]).T
    f = np.zeros((n, n, n), dtype=np.complex128)
    worst = 0.0
    for a in range(n):
        for b in range(a + 1, n):
            target = commutator(basis[a], basis[b]).ravel()
            coeff, *_ = np.linalg.lstsq(vecs, target, rcond=None)
            res = max_abs(vecs @ coeff - target)
            worst = max(worst, res)
            if res > tol:
                raise NotClosedError(
                    f"[X_{a}, X_{b}] leaves the span of {basis.name!r} (residual {res:.3e})", res, (a, b)
                )
            f[a, b] = -1j * coeff
            f[b, a] = -f[a, b]
    return StructureConstants(f, worst)


# --- exact rational path ----------------------------------------------------

def _solve_exact(a: list, b: list) -> Optional[list]:
    """Solve the square system ``a x = b`` over the rationals (Gauss-Jordan)."""
    n = len(a)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                fac = m[r][col]
                m[r] = [x - fac * y for x, y in zip(m[r], m[col])]
    return [row[n] for row in m]


def exact_structure_constants(basis: GeneratorBasis):
    """Structure constants in exact rational arithmetic.

    Every matrix entry is converted to a :class:`fractions.Fraction` without
    rounding, the normal equations are solved exactly, and the expansion is
    checked to reproduce each bracket with zero residual. Suitable for bases
    with small integer (or dyadic) entries.

    Returns ``(re, im)``: two ``n x n x n`` object arrays of Fractions.
    """
    n = len(basis)
    gens = [[(Fraction(z.real), Fraction(z.imag)) for z in g.ravel()] for g in basis.generators]
    d2 = len(gens[0])

    # real form: unknown c_k = x_k + i y_k; column for x_k is (re, im) of g_k,
    # column for y_k is (-im, re) of g_k
    cols = []
    for g in gens:
        cols.append([re for re, im in g] + [im for re, im in g])
    for g in gens:
        cols.append([-im for re, im in g] + [re for re, im in g])
    normal = [[sum(ci * cj for ci, cj in zip(cols[i], cols[j])) for j in range(2 * n)] for i in range(2 * n)]

    def mat(g):
        d = int(round(len(g) ** 0.5))
        return [[g[r * d + c] for c in range(d)] for r in range(d)]

    def mul(x, y):
        d = len(x)
        out = [[(Fraction(0), Fraction(0))] * d for _ in range(d)]
        for r in range(d):
            for c in range(d):
                re = im = Fraction(0)
                for k in range(d):
                    a, b = x[r][k]
                    p, q = y[k][c]
                    re += a * p - b * q
                    im += a * q + b * p
                out[r][c] = (re, im)
        return out

    mats = [mat(g) for g in gens]
    re_f = np.empty((n, n, n), dtype=object)
    im_f = np.empty((n, n, n), dtype=object)
    re_f[...] = Fraction(0)
    im_f[...] = Fraction(0)
    for a in range(n):
        for b in range(a + 1, n):
            ab = mul(mats[a], mats[b])
            ba = mul(mats[b], mats[a])
            comm = [(ab[r][c][0] - ba[r][c][0], ab[r][c][1] - ba[r][c][1])
                    for r in range(len(ab)) for c in range(len(ab))]
            target = [re for re, im in comm] + [im for re, im in comm]
            rhs = [sum(ci * t for ci, t in zip(cols[i], target)) for i in range(2 * n)]
            sol = _solve_exact(normal, rhs)
            if sol is None:
                raise ValueError("basis is linearly dependent over the reals")
            fitted = [sum(cols[k][r] * sol[k] for k in range(2 * n)) for r in range(2 * d2)]
            if fitted != target:
                raise NotClosedError(f"[X_{a}, X_{b}] is not in the span", float("inf"), (a, b))
            for c in range(n):
                x, y = sol[c], sol[n + c]
                # f = -i (x + i y) = y - i x
                re_f[a, b, c], im_f[a, b, c] = y, -x
                re_f[b, a, c], im_f[b, a, c] = -y, x
    return re_f, im_f


# --- bracket identities -------------------------------------------------------

def verify_bracket_properties(basis: GeneratorBasis, trials: int = 100, seed: int = 0) -> dict:
    """Max residual of each Lie bracket property over random real combinations.

    Keys: ``self_bracket``, ``bilinearity``, ``antisymmetry``, ``jacobi``.
    """
    rng = np.random.default_rng(seed)
    n = len(basis)
    out = {"self_bracket": 0.0, "bilinearity": 0.0, "antisymmetry": 0.0, "jacobi": 0.0}
    for _ in range(trials):
        ca, cb, cc = rng.uniform(-1.0, 1.0, size=(3, n))
        s, t = rng.uniform(-1.0, 1.0, size=2)
        a, b, c = basis.combine(ca), basis.combine(cb), basis.combine(cc)
        out["self_bracket"] = max(out["self_bracket"], max_abs(commutator(a, a)))
        lin = commutator(s * a + t * b, c) - s * commutator(a, c) - t * commutator(b, c)
        out["bilinearity"] = max(out["bilinearity"], max_abs(lin))
        out["antisymmetry"] = max(out["antisymmetry"], max_abs(commutator(a, b) + commutator(b, a)))
        jac = (commutator(a, commutator(b, c)) + commutator(b, commutator(c, a))
               + commutator(c, commutator(a, b)))
        out["jacobi"] = max(out["jacobi"], max_abs(jac))
    return out


def jacobi_residual(basis: GeneratorBasis) -> float:
    """Max cyclic-sum residual over all basis triples."""
    g = basis.generators
    worst = 0.0
    for a in g:
        for b in g:
            for c in g:
                jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b))
                worst = max(worst, max_abs(jac))
    return worst


def rescale_ratio(b1: GeneratorBasis, b2: GeneratorBasis, tol: float = CLOSURE_TOL) -> Optional[float]:
    """Real ``s`` with ``f(b1) == s f(b2)`` elementwise, sign allowed; ``None`` if not proportional."""
    if len(b1) != len(b2):
        raise ValueError("bases have different sizes")
    f1 = structure_constants(b1).f
    f2 = structure_constants(b2).f
    denom = float(np.vdot(f2, f2).real)
    if denom == 0.0:
        return 1.0 if max_abs(f1) <= tol else None
    s = float(np.vdot(f2, f1).real / denom)
    return s if max_abs(f1 - s * f2) <= tol else None


def algebras_isomorphic_by_rescale(b1: GeneratorBasis, b2: GeneratorBasis, tol: float = CLOSURE_TOL) -> Optional[float]:
    """Positive ``s`` with ``structure_constants(b1) == structure_constants(s * b2)``.

    Rescaling a basis by ``s`` rescales its structure constants by ``s``, so
    this is the positive proportionality factor between the two tensors
    under the fixed index pairing. ``None`` if no positive factor works.
    """
    s = rescale_ratio(b1, b2, tol)
    return s if s is not None and s > 0 else None


# --- file format ----------------------------------------------------------------

def basis_to_json(basis: GeneratorBasis) -> dict:
    return {"name": basis.name, "generators": [matrix_to_json(g) for g in basis.generators]}


def basis_from_json(obj) -> GeneratorBasis:
    return GeneratorBasis(obj["name"], tuple(matrix_from_json(m) for m in obj["generators"]))


def save_basis(basis: GeneratorBasis, path) -> None:
    Path(path).write_text(json.dumps(basis_to_json(basis)))


def load_basis(path) -> GeneratorBasis:
    return basis_from_json(json.loads(Path(path).read_text()))
