"""Lorentz and Poincare groups in their 4D (and 5D affine) representations.

Index order is (t, x, y, z) and the metric is diag(-1, 1, 1, 1).

Generator conventions
---------------------
``"plus"``: the stored matrices, with ``Lambda = exp(+i theta G)``. Rotation
generators reproduce the rotation matrices (J_x acts on the y-z block as
[[0, i], [-i, 0]]) and ``exp(i theta K_x)`` has entries cosh and -sinh.
In this basis the brackets come out as [J_i, J_j] = -i eps J_k, etc.

``"minus"``: the negated matrices, i.e. ``Lambda = exp(-i theta G)``
(``Lambda ~ 1 - i eps G`` near the identity). Here [J_i, J_j] = +i eps J_k,
[J_i, K_j] = +i eps K_k and [K_i, K_j] = -i eps J_k hold as written.

Both bases describe the same group elements. Reports evaluate the textbook
relations in each one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .liecore import GeneratorBasis, epsilon_tensor
from .numkernel import commutator, mat_exp, max_abs

AXES = ("x", "y", "z")
CONVENTIONS = ("plus", "minus")
LORENTZ_TOL = 1e-10

METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])
T_P = np.diag([1.0, -1.0, -1.0, -1.0])
T_T = np.diag([-1.0, 1.0, 1.0, 1.0])


def _axis(axis) -> int:
    if isinstance(axis, str) and axis in AXES:
        return AXES.index(axis)
    if axis in (0, 1, 2) and not isinstance(axis, bool):
        return int(axis)
    raise ValueError(f"unknown axis {axis!r}")


def _sign(convention: str) -> float:
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be 'plus' or 'minus', got {convention!r}")
    return 1.0 if convention == "plus" else -1.0


# --- group elements -----------------------------------------------------------

def verify_lorentz(lam, tol: float = LORENTZ_TOL) -> bool:
    """True iff ``Lambda eta Lambda^T == eta`` within ``tol`` (max-abs)."""
    lam = np.asarray(lam)
    if lam.shape != (4, 4):
        raise ValueError("a Lorentz matrix is 4x4")
    if np.iscomplexobj(lam):
        if max_abs(lam.imag) > tol:
            raise ValueError("Lorentz matrices must be real")
        lam = lam.real
    lam = lam.astype(float)
    return max_abs(lam @ METRIC @ lam.T - METRIC) <= tol


def lorentz_residual(lam) -> float:
    lam = np.real(np.asarray(lam))
    return max_abs(lam @ METRIC @ lam.T - METRIC)


@dataclass(frozen=True)
class LorentzClassification:
    det: float
    lambda00: float
    det_sign: int
    time_sign: int
    category: int

    def as_dict(self) -> dict:
        return {"det": self.det, "lambda00": self.lambda00, "category": self.category}


_CATEGORY = {(1, 1): 1, (-1, 1): 2, (1, -1): 3, (-1, -1): 4}


def classify(lam, tol: float = LORENTZ_TOL) -> LorentzClassification:
    """Component of the Lorentz group from (sign det, sign Lambda^0_0)."""
    lam = np.real(np.asarray(lam, dtype=np.complex128))
    if lam.shape != (4, 4):
        raise ValueError("a Lorentz matrix is 4x4")
    l00 = float(lam[0, 0])
    if abs(l00) < 1.0 - tol:
        raise ValueError(f"|Lambda^0_0| = {abs(l00):.6g} < 1; not a Lorentz transformation")
    det = float(np.linalg.det(lam))
    ds = 1 if det > 0 else -1
    ts = 1 if l00 > 0 else -1
    return LorentzClassification(det, l00, ds, ts, _CATEGORY[(ds, ts)])


def lorentz_generator(kind: str, axis, convention: str = "plus") -> np.ndarray:
    """4x4 rotation (``kind='rotation'``) or boost (``'boost'``) generator."""
    k = _axis(axis)
    g = np.zeros((4, 4), dtype=np.complex128)
    if kind in ("rotation", "J"):
        a, b = [(2, 3), (3, 1), (1, 2)][k]
        g[a, b] = 1j
        g[b, a] = -1j
    elif kind in ("boost", "K"):
        g[0, k + 1] = 1j
        g[k + 1, 0] = 1j
    else:
        raise ValueError(f"kind must be 'rotation' or 'boost', got {kind!r}")
    return _sign(convention) * g


def rotation(axis, theta: float) -> np.ndarray:
    return mat_exp(1j * theta * lorentz_generator("rotation", axis))


def boost(axis, theta: float) -> np.ndarray:
    """``exp(i theta K_axis)``: the time row/column carries cosh and -sinh."""
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    return mat_exp(1j * theta * lorentz_generator("boost", axis))


def coordinate_velocity(lam, axis="x") -> float:
    """``dx/dt`` of a particle at rest after ``lam``: ratio of the boosted four-velocity components."""
    u = np.real(np.asarray(lam) @ np.array([1.0, 0.0, 0.0, 0.0]))
    return float(u[_axis(axis) + 1] / u[0])


def lorentz_basis(convention: str = "minus") -> GeneratorBasis:
    gens = [lorentz_generator("rotation", a, convention) for a in AXES]
    gens += [lorentz_generator("boost", a, convention) for a in AXES]
    return GeneratorBasis(f"lorentz-{convention}", tuple(gens))


def _jk(convention):
    j = [lorentz_generator("rotation", a, convention) for a in AXES]
    k = [lorentz_generator("boost", a, convention) for a in AXES]
    return j, k


# --- algebra -------------------------------------------------------------------------

def _bracket_residual(a, b, rhs_sign, c) -> float:
    """max over i, j of |[a_i, b_j] - rhs_sign * i eps_ijk c_k|."""
    eps = epsilon_tensor()
    worst = 0.0
    for i in range(3):
        for j in range(3):
            rhs = rhs_sign * 1j * sum(eps[i, j, k] * c[k] for k in range(3))
            worst = max(worst, max_abs(commutator(a[i], b[j]) - rhs))
    return worst


def algebra_residuals(j, k) -> dict:
    """Residuals of [J,J] = i eps J, [J,K] = i eps K, [K,K] = -i eps J for given J, K lists."""
    return {
        "JJ": _bracket_residual(j, j, 1.0, j),
        "JK": _bracket_residual(j, k, 1.0, k),
        "KK": _bracket_residual(k, k, -1.0, j),
    }


def lorentz_algebra_report(convention: str = "minus") -> dict:
    """All pairwise brackets of the 4D J, K against the three textbook relations."""
    j, k = _jk(convention)
    return algebra_residuals(j, k)


def n_operators(j, k):
    n_plus = [j[i] + 1j * k[i] for i in range(3)]
    n_minus = [j[i] - 1j * k[i] for i in range(3)]
    return n_plus, n_minus


def n_decomposition_residuals(j, k) -> dict:
    n_plus, n_minus = n_operators(j, k)
    cross = max(max_abs(commutator(n_minus[a], n_plus[b])) for a in range(3) for b in range(3))
    return {
        "NpNp": _bracket_residual(n_plus, n_plus, 2.0, n_plus),
        "NmNm": _bracket_residual(n_minus, n_minus, 2.0, n_minus),
        "NmNp": cross,
        "sum_is_2J": max(max_abs(n_plus[i] + n_minus[i] - 2 * j[i]) for i in range(3)),
    }


def n_decomposition(convention: str = "minus") -> dict:
    """N+- = J +- iK from the 4D generators and their brackets."""
    j, k = _jk(convention)
    return n_decomposition_residuals(j, k)


def integer_parts(m) -> tuple:
    """Exact integer (real, imag) parts of a matrix whose entries are Gaussian integers."""
    m = np.asarray(m, dtype=np.complex128)
    re, im = np.rint(m.real), np.rint(m.imag)
    if max_abs(re - m.real) or max_abs(im - m.imag):
        raise ValueError("matrix entries are not Gaussian integers")
    return re.astype(np.int64), im.astype(np.int64)


def parity_action_exact() -> dict:
    """``T_p G T_p^T`` for each 4D generator in exact integer arithmetic.

    Returns, per generator, whether the conjugate equals ``+G`` (rotations are
    expected to) or ``-G`` (boosts are expected to).
    """
    tp = np.rint(T_P).astype(np.int64)
    out = {}
    for kind, name in (("rotation", "J"), ("boost", "K")):
        for a in AXES:
            re, im = integer_parts(lorentz_generator(kind, a))
            cre, cim = tp @ re @ tp.T, tp @ im @ tp.T
            out[f"{name}_{a}"] = {
                "even": bool(np.array_equal(cre, re) and np.array_equal(cim, im)),
                "odd": bool(np.array_equal(cre, -re) and np.array_equal(cim, -im)),
            }
    return out


# --- 2D chiral representations ---------------------------------------------------

_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


@dataclass(frozen=True, eq=False)
class ChiralRep:
    handedness: str
    J: tuple
    K: tuple


def chiral_rep(handedness: str) -> ChiralRep:
    """Left: ``K = -i sigma/2`` (so N- = 0); right: ``K = +i sigma/2`` (so N+ = 0)."""
    if handedness not in ("left", "right"):
        raise ValueError("handedness must be 'left' or 'right'")
    s = -1j if handedness == "left" else 1j
    return ChiralRep(handedness, tuple(x / 2 for x in _SIGMA), tuple(s * x / 2 for x in _SIGMA))


def parity_flip(rep: ChiralRep) -> ChiralRep:
    """``J -> J``, ``K -> -K``; exchanges left and right."""
    other = "right" if rep.handedness == "left" else "left"
    return ChiralRep(other, rep.J, tuple(-k for k in rep.K))


def chiral_vanishing_n(rep: ChiralRep) -> float:
    """Max-abs of the N operator that should vanish (N- for left, N+ for right)."""
    n_plus, n_minus = n_operators(list(rep.J), list(rep.K))
    return max(max_abs(x) for x in (n_minus if rep.handedness == "left" else n_plus))


def chiral_same_as(a: ChiralRep, b: ChiralRep) -> bool:
    return a.handedness == b.handedness and all(
        max_abs(x - y) == 0 for x, y in zip(a.J + a.K, b.J + b.K)
    )


# --- Poincare --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PoincareAffineRep:
    """5x5 generators acting on (t, x, y, z, 1)."""

    convention: str
    J: tuple
    K: tuple
    P: tuple  # (P_t, P_x, P_y, P_z)

    def translation(self, a) -> np.ndarray:
        """Group element for the displacement ``a = (a_t, a_x, a_y, a_z)``."""
        gen = sum(float(ai) * p for ai, p in zip(a, self.P))
        return mat_exp(_sign(self.convention) * 1j * gen)


def _embed5(g4) -> np.ndarray:
    g = np.zeros((5, 5), dtype=np.complex128)
    g[:4, :4] = g4
    return g


def poincare_affine(convention: str = "minus") -> PoincareAffineRep:
    """Lorentz block plus translation column.

    ``P_mu`` is chosen so that ``exp(s i a P_mu)`` (s = +1 for 'plus', -1 for
    'minus') shifts coordinate mu by ``a``: ``P_mu = -s i E_{mu,4}``.
    """
    s = _sign(convention)
    j, k = _jk(convention)
    ps = []
    for mu in range(4):
        p = np.zeros((5, 5), dtype=np.complex128)
        p[mu, 4] = -s * 1j
        ps.append(p)
    return PoincareAffineRep(convention, tuple(_embed5(x) for x in j), tuple(_embed5(x) for x in k), tuple(ps))


def poincare_commutators(convention: str = "minus") -> dict:
    """Residuals of the translation brackets, plus both readings of the
    ambiguous mixed relation with ``i delta_ij P_t`` on the right."""
    rep = poincare_affine(convention)
    j, k, p = rep.J, rep.K, rep.P
    pt, ps = p[0], p[1:]
    eps = epsilon_tensor()
    r_jp = max(
        max_abs(commutator(j[a], ps[b]) - 1j * sum(eps[a, b, c] * ps[c] for c in range(3)))
        for a in range(3) for b in range(3)
    )
    r_pp = max(max_abs(commutator(x, y)) for x in p for y in p)
    r_jpt = max(max_abs(commutator(j[a], pt)) for a in range(3))
    r_kpt = max(max_abs(commutator(k[a], pt) + 1j * ps[a]) for a in range(3))
    # literal left side [J_i, K_j]; and the K-P reading
    r_jk_delta = max(
        max_abs(commutator(j[a], k[b]) - (1j * pt if a == b else 0)) for a in range(3) for b in range(3)
    )
    r_kp_delta = max(
        max_abs(commutator(k[a], ps[b]) - (1j * pt if a == b else 0)) for a in range(3) for b in range(3)
    )
    r_kp_delta_neg = max(
        max_abs(commutator(k[a], ps[b]) + (1j * pt if a == b else 0)) for a in range(3) for b in range(3)
    )
    nil = max(max_abs(x @ x) for x in p)
    block = max(
        max_abs(rep.J[a][:4, :4] - lorentz_generator("rotation", a, convention))
        + max_abs(rep.K[a][:4, :4] - lorentz_generator("boost", a, convention))
        for a in range(3)
    )
    return {
        "JP": r_jp,
        "PP": r_pp,
        "JPt": r_jpt,
        "KPt": r_kpt,
        "mixed_literal_JK": r_jk_delta,
        "mixed_reading_KP": r_kp_delta,
        "mixed_reading_KP_negated": r_kp_delta_neg,
        "P_nilpotent": nil,
        "lorentz_block": block,
    }


def translation_matches(convention: str = "minus", a=(0.5, 1.0, -2.0, 3.0)) -> float:
    """Residual between the exponentiated translation and ``x -> x + a``."""
    rep = poincare_affine(convention)
    t = rep.translation(a)
    want = np.eye(5)
    want[:4, 4] = a
    return max_abs(t - want)
