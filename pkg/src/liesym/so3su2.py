"""Rotations, SU(2) and the quaternion double cover, isospin ladders.

Quaternion basis (2x2 images)::

    1 = [[1, 0], [0, 1]]    I = [[0, i], [i, 0]]
    J = [[0, 1], [-1, 0]]   K = [[i, 0], [0, -i]]

These satisfy I^2 = J^2 = K^2 = -1 but IJ = -K (not +K), i.e. they realise the
opposite of Hamilton's orientation. :func:`quat_mul` follows the matrices, so
its cross-product term carries a minus sign. Pauli matrices are
``sigma = -i (I, J, K)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .liecore import GeneratorBasis
from .numkernel import DEFAULT_TOL, mat_exp, max_abs

AXES = ("x", "y", "z")
UNIT_TOL = 1e-10


def _axis_index(axis) -> int:
    if isinstance(axis, str) and axis.lower() in AXES:
        return AXES.index(axis.lower())
    if axis in (0, 1, 2) and not isinstance(axis, bool):
        return int(axis)
    raise ValueError(f"unknown axis {axis!r}; expected one of x, y, z")


def _unit_axis(axis, tol=UNIT_TOL) -> np.ndarray:
    if isinstance(axis, str) or isinstance(axis, int):
        e = np.zeros(3)
        e[_axis_index(axis)] = 1.0
        return e
    u = np.asarray(axis, dtype=float).reshape(3)
    if not np.all(np.isfinite(u)) or abs(float(np.linalg.norm(u)) - 1.0) > tol:
        raise ValueError("axis must be a unit 3-vector")
    return u


# --- SO(2) / SO(3) ----------------------------------------------------------

def so_n_rotation(axis=None, theta: float = 0.0) -> np.ndarray:
    """2x2 rotation ``R(theta)`` when ``axis`` is None, else a 3x3 rotation.

    ``axis`` may be 'x', 'y', 'z' or any unit 3-vector (Rodrigues formula).
    """
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    c, s = math.cos(theta), math.sin(theta)
    if axis is None:
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    u = _unit_axis(axis)
    ux = np.array([[0.0, -u[2], u[1]], [u[2], 0.0, -u[0]], [-u[1], u[0], 0.0]])
    r = c * np.eye(3) + s * ux + (1.0 - c) * np.outer(u, u)
    return r.astype(np.complex128)


def so3_generator(axis) -> np.ndarray:
    """``X_i = -i dR_i/dtheta (0)``, so that ``R_i(theta) = exp(i theta X_i)``."""
    k = _axis_index(axis)
    x = np.zeros((3, 3), dtype=np.complex128)
    a, b = [(1, 2), (2, 0), (0, 1)][k]
    x[a, b] = 1j
    x[b, a] = -1j
    return x


def so3_basis() -> GeneratorBasis:
    return GeneratorBasis("so3", tuple(so3_generator(a) for a in AXES))


def pauli(axis) -> np.ndarray:
    k = _axis_index(axis)
    return [
        np.array([[0, 1], [1, 0]], dtype=np.complex128),
        np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
        np.array([[1, 0], [0, -1]], dtype=np.complex128),
    ][k]


def pauli_basis() -> GeneratorBasis:
    return GeneratorBasis("pauli", tuple(pauli(a) for a in AXES))


def spin_operator(axis) -> np.ndarray:
    """Spin-1/2 operator ``sigma / 2`` (units of hbar); eigenvalues +-1/2."""
    return pauli(axis) / 2.0


def spin_half_basis() -> GeneratorBasis:
    return GeneratorBasis("spin-1/2", tuple(spin_operator(a) for a in AXES))


# --- U(1) inside 2x2 real matrices ----------------------------------------------

U1_ONE = np.eye(2, dtype=np.complex128)
U1_I = np.array([[0, -1], [1, 0]], dtype=np.complex128)


def u1_image(z: complex) -> np.ndarray:
    """Real 2x2 image ``Re(z) * 1 + Im(z) * i`` of a complex number."""
    z = complex(z)
    return z.real * U1_ONE + z.imag * U1_I


def su2_matrix(alpha: complex, beta: complex, tol: float = UNIT_TOL) -> np.ndarray:
    """``[[alpha, -conj(beta)], [beta, conj(alpha)]]``; needs ``|alpha|^2 + |beta|^2 = 1``."""
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > tol:
        raise ValueError("|alpha|^2 + |beta|^2 must equal 1")
    return np.array([[alpha, -np.conj(beta)], [beta, np.conj(alpha)]], dtype=np.complex128)


# --- quaternions ----------------------------------------------------------------

QUAT_I = np.array([[0, 1j], [1j, 0]])
QUAT_J = np.array([[0, 1], [-1, 0]], dtype=np.complex128)
QUAT_K = np.array([[1j, 0], [0, -1j]])


@dataclass(frozen=True)
class Quaternion:
    a: float
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.b, self.c, self.d])

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    def norm(self) -> float:
        return math.sqrt(self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2)

    def is_unit(self, tol: float = UNIT_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol

    def matrix(self) -> np.ndarray:
        return self.a * np.eye(2) + self.b * QUAT_I + self.c * QUAT_J + self.d * QUAT_K

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return quat_mul(self, other)
        return Quaternion(self.a * other, self.b * other, self.c * other, self.d * other)

    __rmul__ = __mul__

    def close_to(self, other: "Quaternion", tol: float = UNIT_TOL) -> bool:
        return max(abs(x - y) for x, y in zip(self.as_tuple(), other.as_tuple())) <= tol


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def quat_from_matrix(m) -> Quaternion:
    """Inverse of :meth:`Quaternion.matrix` (real coefficients only)."""
    m = np.asarray(m, dtype=np.complex128)
    a = 0.5 * (m[0, 0] + m[1, 1]).real
    d = 0.5 * (m[0, 0] - m[1, 1]).imag
    b = 0.5 * (m[0, 1] + m[1, 0]).imag
    c = 0.5 * (m[0, 1] - m[1, 0]).real
    return Quaternion(float(a), float(b), float(c), float(d))


def quat_mul(q1: Quaternion, q2: Quaternion) -> Quaternion:
    """Product matching the 2x2 images: ``(q1 q2).matrix() == q1.matrix() @ q2.matrix()``."""
    v1, v2 = q1.vector, q2.vector
    a = q1.a * q2.a - float(v1 @ v2)
    v = q1.a * v2 + q2.a * v1 - np.cross(v1, v2)
    return Quaternion(float(a), float(v[0]), float(v[1]), float(v[2]))


def quat_conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.a, -q.b, -q.c, -q.d)


def embed_vector(x: float, y: float, z: float) -> Quaternion:
    return Quaternion(0.0, float(x), float(y), float(z))


def extract_vector(q: Quaternion, tol: float = UNIT_TOL) -> tuple:
    if abs(q.a) > tol:
        raise ValueError(f"quaternion has non-zero real part {q.a:.3e}")
    return (q.b, q.c, q.d)


def rotate_by_conjugation(t: Quaternion, v: Sequence[float], tol: float = UNIT_TOL) -> np.ndarray:
    """Rotate ``v`` by the unit quaternion ``t``.

    Computes ``conj(t) m t`` with ``m = embed(v)``. Because the basis is
    anti-Hamiltonian this is the ordering that turns
    ``cos(phi/2) + sin(phi/2) u`` into a right-handed rotation by ``phi``
    about ``u``. (``t m conj(t)`` gives the rotation by ``-phi``.)
    """
    if not t.is_unit(tol):
        raise ValueError(f"rotation quaternion must be unit, |t| = {t.norm():.12g}")
    m = embed_vector(*v)
    out = quat_mul(quat_mul(quat_conj(t), m), t)
    # real part is exactly zero analytically; roundoff only
    return np.array([out.b, out.c, out.d])


def rotate_left_conjugation(t: Quaternion, v: Sequence[float], tol: float = UNIT_TOL) -> np.ndarray:
    """The ``t m conj(t)`` ordering, kept for comparison."""
    if not t.is_unit(tol):
        raise ValueError("rotation quaternion must be unit")
    out = quat_mul(quat_mul(t, embed_vector(*v)), quat_conj(t))
    return np.array([out.b, out.c, out.d])


def su2_from_axis_angle(axis, theta: float) -> Quaternion:
    """Half-angle unit quaternion whose conjugation is the rotation by ``theta``."""
    u = _unit_axis(axis)
    h = 0.5 * theta
    s = math.sin(h)
    return Quaternion(math.cos(h), float(s * u[0]), float(s * u[1]), float(s * u[2]))


def full_angle_quaternion(axis, theta: float) -> Quaternion:
    """Full-angle form ``cos(theta) + sin(theta) u``; conjugation rotates by ``2 theta``."""
    u = _unit_axis(axis)
    s = math.sin(theta)
    return Quaternion(math.cos(theta), float(s * u[0]), float(s * u[1]), float(s * u[2]))


def quaternion_to_rotation(t: Quaternion) -> np.ndarray:
    """3x3 real matrix of ``v -> rotate_by_conjugation(t, v)``."""
    return np.column_stack([rotate_by_conjugation(t, e) for e in np.eye(3)])


def preimages(r, tol: float = 1e-9) -> tuple:
    """The two unit quaternions ``{q, -q}`` that conjugate to the rotation ``r``."""
    r = np.real(np.asarray(r, dtype=np.complex128))
    if max_abs(r.T @ r - np.eye(3)) > tol or abs(np.linalg.det(r) - 1.0) > tol:
        raise ValueError("not a proper rotation")
    # axis-angle via the antisymmetric part; robust branch on the largest diagonal
    tr = float(np.trace(r))
    w = math.sqrt(max(0.0, 1.0 + tr)) / 2.0
    if w > 1e-3:
        x = (r[2, 1] - r[1, 2]) / (4.0 * w)
        y = (r[0, 2] - r[2, 0]) / (4.0 * w)
        z = (r[1, 0] - r[0, 1]) / (4.0 * w)
    else:
        i = int(np.argmax(np.diag(r)))
        j, k = (i + 1) % 3, (i + 2) % 3
        v = [0.0, 0.0, 0.0]
        v[i] = math.sqrt(max(0.0, 1.0 + r[i, i] - r[j, j] - r[k, k])) / 2.0
        v[j] = (r[j, i] + r[i, j]) / (4.0 * v[i])
        v[k] = (r[k, i] + r[i, k]) / (4.0 * v[i])
        w = (r[k, j] - r[j, k]) / (4.0 * v[i])
        x, y, z = v
    q = Quaternion(w, x, y, z)
    q = q * (1.0 / q.norm())
    return (q, -q)


def double_cover_samples(n: int = 100, seed: int = 0) -> list:
    """Random (axis, theta) samples with the residual between the quaternion
    rotation and the Rodrigues rotation, plus the ``-q`` residual."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        theta = float(rng.uniform(-2 * math.pi, 2 * math.pi))
        q = su2_from_axis_angle(axis, theta)
        r = np.real(so_n_rotation(axis, theta))
        res = max_abs(quaternion_to_rotation(q) - r)
        res_neg = max_abs(quaternion_to_rotation(-q) - r)
        out.append({
            "axis": [float(a) for a in axis],
            "theta": theta,
            "q": list(q.as_tuple()),
            "rotation_residual": res,
            "negated_residual": res_neg,
        })
    return out


# --- isospin ------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class IsospinState:
    components: tuple

    def __post_init__(self):
        comp = tuple(complex(c) for c in self.components)
        if len(comp) != 2:
            raise ValueError("an isospin state has two components")
        object.__setattr__(self, "components", comp)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.components, dtype=np.complex128)

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def close_to(self, other, tol: float = DEFAULT_TOL) -> bool:
        return isinstance(other, IsospinState) and max_abs(self.vector - other.vector) <= tol

    def __repr__(self):
        return f"IsospinState({self.components[0]:.6g}, {self.components[1]:.6g})"


class _Annihilated:
    """Result of a ladder operator pushing a state off the end of the doublet."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ANNIHILATED"

    def __bool__(self):
        return False


ANNIHILATED = _Annihilated()
PROTON = IsospinState((1, 0))
NEUTRON = IsospinState((0, 1))


def ladder(which: str) -> np.ndarray:
    """``I+- = (sigma_x +- i sigma_y) / 2``."""
    if which in ("plus", "+"):
        return (pauli("x") + 1j * pauli("y")) / 2.0
    if which in ("minus", "-"):
        return (pauli("x") - 1j * pauli("y")) / 2.0
    raise ValueError(f"ladder expects 'plus' or 'minus', got {which!r}")


def apply_isospin(op, state: IsospinState, tol: float = DEFAULT_TOL) -> Union[IsospinState, _Annihilated]:
    v = np.asarray(op, dtype=np.complex128) @ state.vector
    if max_abs(v) <= tol:
        return ANNIHILATED
    return IsospinState(tuple(v))


def spinor_action(alpha: Sequence[float], state: IsospinState) -> IsospinState:
    """``exp(i alpha^a sigma_a) v``."""
    gen = sum(float(a) * pauli(ax) for a, ax in zip(alpha, AXES))
    return IsospinState(tuple(mat_exp(1j * gen) @ state.vector))


def isospin_eigenvalue(state: IsospinState, tol: float = DEFAULT_TOL) -> Optional[float]:
    """Eigenvalue of ``sigma_z / 2`` if ``state`` is an eigenvector, else None."""
    v = state.vector
    w = spin_operator("z") @ v
    lam = complex(np.vdot(v, w) / np.vdot(v, v))
    return lam.real if max_abs(w - lam * v) <= tol else None
