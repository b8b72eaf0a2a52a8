"""Finite groups given by Cayley tables, and their matrix representations.

Group elements are integer indices into ``FiniteGroup.elements``; labels are
metadata only. ``table[a][b]`` is the index of ``f(a, b)``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .numkernel import (
    DEFAULT_TOL,
    as_matrix,
    dagger,
    eig_hermitian,
    is_unitary,
    matrix_from_json,
    matrix_to_json,
    max_abs,
)


class GroupAxiomError(ValueError):
    """A Cayley table violates a group axiom.

    ``axiom`` is one of ``"closure"``, ``"associativity"``, ``"identity"`` or
    ``"inverse"``; ``witness`` holds the offending element indices.
    """

    def __init__(self, axiom: str, witness: tuple, message: str):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


class DimensionMismatchError(ValueError):
    pass


class SingularGramError(ValueError):
    """The averaged Gram operator is singular, so the input was not a representation."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    elements: tuple
    table: np.ndarray
    identity: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(np.flatnonzero(self.table[a] == self.identity)[0])

    def index(self, label) -> int:
        return self.elements.index(label)

    def same_as(self, other: "FiniteGroup") -> bool:
        return self is other or (
            self.elements == other.elements and np.array_equal(self.table, other.table)
        )


def verify_group_axioms(elements, table) -> FiniteGroup:
    """Validate a Cayley table and return the group.

    Axioms are checked in the order closure, associativity, identity,
    inverse; the first violation raises :class:`GroupAxiomError` carrying a
    witness.
    """
    elements = tuple(elements)
    n = len(elements)
    if n == 0:
        raise GroupAxiomError("identity", (), "empty set has no identity element")
    t = np.asarray(table)
    if t.shape != (n, n):
        raise GroupAxiomError("closure", (), f"table must be {n}x{n}, got {t.shape}")
    if not np.issubdtype(t.dtype, np.integer):
        if not np.all(np.equal(np.mod(t, 1), 0)):
            raise GroupAxiomError("closure", (), "table entries must be integers")
        t = t.astype(np.int64)
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        a, b = (int(x) for x in bad[0])
        raise GroupAxiomError("closure", (a, b), f"f({elements[a]}, {elements[b]}) is outside the set")
    t = t.astype(np.int64)

    # (ab)c == a(bc), vectorised over all triples
    left = t[t[:, :, None], np.arange(n)[None, None, :]]
    right = t[np.arange(n)[:, None, None], t[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = (int(x) for x in bad[0])
        raise GroupAxiomError(
            "associativity", (a, b, c),
            f"f(f({elements[a]},{elements[b]}),{elements[c]}) != f({elements[a]},f({elements[b]},{elements[c]}))",
        )

    ar = np.arange(n)
    candidates = [e for e in range(n) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
    if not candidates:
        raise GroupAxiomError("identity", (), "no element acts as a two-sided identity")
    e = candidates[0]

    for a in range(n):
        if not any(t[a, b] == e and t[b, a] == e for b in range(n)):
            raise GroupAxiomError("inverse", (a,), f"{elements[a]} has no two-sided inverse")
    t.setflags(write=False)
    return FiniteGroup(elements, t, e)


@dataclass(frozen=True, eq=False)
class Representation:
    group: FiniteGroup
    images: tuple = field(default=())

    def __post_init__(self):
        imgs = tuple(as_matrix(m) for m in self.images)
        if len(imgs) != self.group.order:
            raise ValueError(f"need {self.group.order} images, got {len(imgs)}")
        dims = {m.shape[0] for m in imgs}
        if len(dims) != 1:
            raise DimensionMismatchError(f"images have differing dimensions {sorted(dims)}")
        d = imgs[0].shape[0]
        if max_abs(imgs[self.group.identity] - np.eye(d)) > 1e-8:
            raise ValueError("the identity element must map to the identity matrix")
        for i, m in enumerate(imgs):
            if abs(np.linalg.det(m)) < 1e-12:
                raise ValueError(f"image of {self.group.elements[i]} is singular")
        object.__setattr__(self, "images", imgs)

    @property
    def dim(self) -> int:
        return self.images[0].shape[0]

    def __getitem__(self, label_or_index) -> np.ndarray:
        if isinstance(label_or_index, (int, np.integer)):
            return self.images[label_or_index]
        return self.images[self.group.index(label_or_index)]


def homomorphism_violation(rep: Representation, tol: float = DEFAULT_TOL):
    """First pair ``(a, b)`` (row-major) with ``D(a)D(b) != D(f(a,b))``, else ``None``.

    The comparison is relative: the residual is measured against
    ``max(1, |D(a)| |D(b)|)`` so that badly conditioned but valid
    representations are not rejected for roundoff.
    """
    g = rep.group
    d = rep.dim
    if max_abs(rep.images[g.identity] - np.eye(d)) > tol:
        return (g.identity, g.identity)
    norms = [max_abs(m) * d for m in rep.images]
    for a in range(g.order):
        for b in range(g.order):
            lhs = rep.images[a] @ rep.images[b]
            res = max_abs(lhs - rep.images[g.mul(a, b)])
            if res > tol * max(1.0, norms[a] * norms[b]):
                return (a, b)
    return None


def verify_representation(rep: Representation, tol: float = DEFAULT_TOL) -> bool:
    return homomorphism_violation(rep, tol) is None


def build_regular_representation(g: FiniteGroup) -> Representation:
    """Permutation representation of ``g`` acting on itself from the left.

    Column ``j`` of the image of ``r`` is the basis vector of ``f(r, j)``;
    basis order follows element order.
    """
    n = g.order
    images = []
    for r in range(n):
        k = np.zeros((n, n))
        for j in range(n):
            k[g.mul(r, j), j] = 1.0
        images.append(k)
    return Representation(g, tuple(images))


@dataclass(frozen=True, eq=False)
class UnitarizationResult:
    S: np.ndarray
    S_half: np.ndarray
    unitarized: Representation


def unitarize(rep: Representation, tol: float = DEFAULT_TOL) -> UnitarizationResult:
    """Conjugate ``rep`` into a unitary representation.

    ``S = sum_g D(g)^dagger D(g)`` is positive definite; with
    ``R = S^(1/2)`` every ``R D(g) R^-1`` is unitary.
    """
    s = sum(dagger(m) @ m for m in rep.images)
    s = 0.5 * (s + dagger(s))
    dec = eig_hermitian(s, tol=tol)
    w = dec.eigenvalues
    if w[0] <= tol * max(1.0, w[-1]):
        raise SingularGramError(f"S has eigenvalue {w[0]:.3e}; input is not a representation")
    v = dec.eigenvectors
    root = np.sqrt(w)
    s_half = (v * root) @ dagger(v)
    s_half_inv = (v / root) @ dagger(v)
    s_half = 0.5 * (s_half + dagger(s_half))
    images = tuple(s_half @ m @ s_half_inv for m in rep.images)
    return UnitarizationResult(s, s_half, Representation(rep.group, images))


def are_equivalent(rep1: Representation, rep2: Representation, tol: float = 1e-9, seed: int = 0):
    """Find ``S`` with ``rep2(g) == S^-1 rep1(g) S`` for every ``g``, or return ``None``.

    Solves the stacked linear system ``rep1(g) S - S rep2(g) = 0`` for its
    null space and draws seeded random combinations until one is invertible.
    """
    if not rep1.group.same_as(rep2.group):
        raise ValueError("representations belong to different groups")
    if rep1.dim != rep2.dim:
        raise DimensionMismatchError(f"dimensions differ: {rep1.dim} != {rep2.dim}")
    d = rep1.dim
    eye = np.eye(d)
    scale = max(1.0, max(max_abs(m) for m in rep1.images + rep2.images))

    if all(max_abs(a - b) <= tol * scale for a, b in zip(rep1.images, rep2.images)):
        return eye.astype(np.complex128)

    # column-major vec: vec(A S) = (I kron A) vec(S), vec(S B) = (B^T kron I) vec(S)
    blocks = [np.kron(eye, a) - np.kron(b.T, eye) for a, b in zip(rep1.images, rep2.images)]
    system = np.vstack(blocks)
    _, sv, vh = np.linalg.svd(system)
    sv_full = np.zeros(d * d)
    sv_full[: len(sv)] = sv
    null = vh[sv_full <= 1e-9 * max(1.0, sv_full[0])].conj()
    if len(null) == 0:
        return None

    rng = np.random.default_rng(seed)
    for _ in range(8):
        coeff = rng.normal(size=len(null)) + 1j * rng.normal(size=len(null))
        s = (coeff @ null).reshape((d, d), order="F")
        svals = np.linalg.svd(s, compute_uv=False)
        if svals[-1] <= 1e-8 * svals[0]:
            continue
        s = s / svals[0]
        s_inv = np.linalg.inv(s)
        if all(max_abs(s_inv @ a @ s - b) <= tol * scale * np.linalg.cond(s)
               for a, b in zip(rep1.images, rep2.images)):
            return s
    return None


# --- bundled groups --------------------------------------------------------

def cyclic_group(n: int, labels=None) -> FiniteGroup:
    labels = labels or [f"g{k}" for k in range(n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return verify_group_axioms(labels, table)


def c4_group() -> FiniteGroup:
    """Quarter-turn rotations of the square, composed by adding angles."""
    return cyclic_group(4, ["R_0", "R_90", "R_180", "R_270"])


def parity_group() -> FiniteGroup:
    return verify_group_axioms(["1", "P"], [[0, 1], [1, 0]])


S3_PERMUTATIONS = tuple(itertools.permutations(range(3)))


def s3_group() -> FiniteGroup:
    """Symmetric group on three letters; ``f(a, b)`` is the composition ``a o b``."""
    perms = S3_PERMUTATIONS
    table = [[perms.index(tuple(a[b[i]] for i in range(3))) for b in perms] for a in perms]
    labels = ["".join(str(i) for i in p) for p in perms]
    return verify_group_axioms(labels, table)


def c4_rotation_representation() -> Representation:
    """The 2x2 rotation matrices of the square's symmetry group."""
    mats = [
        [[1, 0], [0, 1]],
        [[0, -1], [1, 0]],
        [[-1, 0], [0, -1]],
        [[0, 1], [-1, 0]],
    ]
    return Representation(c4_group(), tuple(np.array(m, dtype=float) for m in mats))


def parity_representation() -> Representation:
    """Parity acting as a reflection of the first axis."""
    return Representation(parity_group(), (np.eye(2), np.diag([-1.0, 1.0])))


def s3_permutation_representation() -> Representation:
    imgs = []
    for p in S3_PERMUTATIONS:
        m = np.zeros((3, 3))
        for i in range(3):
            m[p[i], i] = 1.0
        imgs.append(m)
    return Representation(s3_group(), tuple(imgs))


BUNDLED_GROUPS = {"c4": c4_group, "parity": parity_group, "s3": s3_group}
BUNDLED_UNITARY_REPS = {
    "c4": c4_rotation_representation,
    "parity": parity_representation,
    "s3": s3_permutation_representation,
}


def random_invertible(dim: int, rng: np.random.Generator, max_cond: float = 1e3) -> np.ndarray:
    """Random complex matrix with condition number in ``[1, max_cond]``."""
    def haar():
        z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        q, r = np.linalg.qr(z)
        return q * (np.diag(r) / np.abs(np.diag(r)))

    sv = np.exp(rng.uniform(0.0, np.log(max_cond), size=dim))
    sv[0], sv[-1] = 1.0, max(sv[-1], 1.0)
    sv = np.clip(sv, 1.0, max_cond)
    return haar() @ np.diag(sv) @ haar()


def conjugate(rep: Representation, s) -> Representation:
    """The equivalent representation ``g -> S^-1 D(g) S``."""
    s = as_matrix(s)
    s_inv = np.linalg.inv(s)
    return Representation(rep.group, tuple(s_inv @ m @ s for m in rep.images))


def is_unitary_representation(rep: Representation, tol: float = DEFAULT_TOL) -> bool:
    return all(is_unitary(m, tol) for m in rep.images)


# --- file formats ----------------------------------------------------------

def group_to_json(g: FiniteGroup) -> dict:
    return {"elements": list(g.elements), "table": g.table.tolist()}


def group_from_json(obj) -> FiniteGroup:
    if not isinstance(obj, dict) or "elements" not in obj or "table" not in obj:
        raise ValueError("group object needs 'elements' and 'table'")
    return verify_group_axioms(obj["elements"], obj["table"])


def save_group(g: FiniteGroup, path) -> None:
    Path(path).write_text(json.dumps(group_to_json(g)))


def load_group(path) -> FiniteGroup:
    return group_from_json(json.loads(Path(path).read_text()))


def representation_to_json(rep: Representation, group_ref=None) -> dict:
    """``group_ref`` may be a path string; otherwise the group is inlined."""
    return {
        "group": group_ref if group_ref is not None else group_to_json(rep.group),
        "images": {str(lab): matrix_to_json(m) for lab, m in zip(rep.group.elements, rep.images)},
    }


def representation_from_json(obj, base_dir=".") -> Representation:
    ref = obj["group"]
    g = load_group(Path(base_dir) / ref) if isinstance(ref, str) else group_from_json(ref)
    images = obj["images"]
    missing = [lab for lab in g.elements if str(lab) not in images]
    if missing:
        raise ValueError(f"no image for elements {missing}")
    return Representation(g, tuple(matrix_from_json(images[str(lab)]) for lab in g.elements))


def load_representation(path) -> Representation:
    path = Path(path)
    return representation_from_json(json.loads(path.read_text()), base_dir=path.parent)
