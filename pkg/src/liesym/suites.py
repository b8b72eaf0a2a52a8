"""Verification suites behind ``liesym verify``.

Each suite returns a report dict::

    {suite, seed, tolerances, checks: [{name, value, tol, pass, ref}],
     discrepancies: [{id, summary}], data, passed, first_failure}

``run_suite`` adds the timestamp. Values are plain floats/ints/strings so
the JSON encoding is byte-stable for a given seed.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import finitegroup as fg
from . import liecore as lc
from . import lorentz as lz
from . import noether as nl
from . import so3su2 as su2
from . import su3flavor as su3
from .numkernel import commutator, eig_hermitian, is_hermitian, mat_exp, max_abs

SUITES = ("finite", "lie", "so3su2", "su3", "lorentz", "poincare", "noether")

DEFAULT_TOLERANCES = {
    "finite": {"unitary": 1e-9, "homomorphism": 1e-9, "intertwiner": 1e-9, "max_cond": 1e3, "trials": 100},
    "lie": {"closure": 1e-8, "su3_closure": 1e-10, "jacobi": 1e-11, "generator": 1e-8, "exp_reproduce": 1e-8,
            "abelian": 1e-10, "trials": 100},
    "so3su2": {"double_cover": 1e-10, "orthogonal": 1e-12, "norm": 1e-12, "samples": 1000},
    "su3": {"weights": 1e-12, "eigenpair": 1e-12, "gram": 1e-12, "closure": 1e-10, "det": 1e-10},
    "lorentz": {"lorentz": 1e-10, "algebra": 1e-12, "boost": 1e-12, "speed": 1e-9, "hyperbolic": 1e-12},
    "poincare": {"algebra": 1e-12},
    "noether": {"E_drift_rel": nl.E_DRIFT_TOL, "P_drift_abs": nl.P_DRIFT_TOL, "L_abs": nl.L_TOL,
                "BO_drift_rel": nl.E_DRIFT_TOL, "order_min": 1.8, "dispersion": 1e-9},
}

DISCREPANCIES = {
    "so3-bracket-normalization": "The SO(3) generators give [X_i, X_j] = -i eps_ijk X_k; a factor 2i eps is not reproduced.",
    "su2-so3-rescale": "Pauli and SO(3) structure constants differ by a factor -2; no positive rescale maps one to the other.",
    "quaternion-orientation": "The 2x2 quaternion basis multiplies as IJ = -K (anti-Hamiltonian).",
    "full-angle-quaternion": "cos(theta) + sin(theta) u conjugates to a rotation by 2 theta, not theta.",
    "tz-repeats-I": "The z-axis quaternion is built from K; a form that repeats I would not be a quaternion rotation.",
    "pauli-eigenvalues": "Pauli matrices have eigenvalues +-1; +-1/2 belongs to sigma/2.",
    "lambda8-prefactor": "lambda_8 uses 1/sqrt(3); a 1/3 prefactor contradicts the stated eigenvalues and weights.",
    "jx-stray-entry": "The 4D J_x generator has a stray 1 on the diagonal; it is dropped.",
    "lorentz-sign-convention": "The stored J, K (exp(+i theta G)) satisfy the algebra with the opposite overall sign; relations hold as written for exp(-i theta G).",
    "mixed-jk-relation": "[J_i, K_j] = i delta_ij P_t is false; the K-P reading holds with sign set by the generator convention.",
    "energy-drift-tolerance": "Leapfrog energy error is O(dt^2); at dt = 0.05 it is ~6e-4, above a 1e-5 bound.",
}

class _Collector:
    def __init__(self, suite: str, seed: int, tolerances: dict):
        self.suite = suite
        self.seed = seed
        self.tol = tolerances
        self.checks = []
        self.discrepancies = []
        self.data = {}

    def check(self, name, value, ok, ref, tol=None):
        self.checks.append({"name": name, "value": _clean(value), "tol": _clean(tol), "pass": bool(ok), "ref": ref})

    def le(self, name, value, tol, ref):
        value = float(value)
        self.check(name, value, value <= tol, ref, tol)

    def flag(self, key):
        if all(d["id"] != key for d in self.discrepancies):
            self.discrepancies.append({"id": key, "summary": DISCREPANCIES[key]})

    def report(self) -> dict:
        failed = [c["name"] for c in self.checks if not c["pass"]]
        return {
            "suite": self.suite,
            "seed": self.seed,
            "tolerances": _clean(self.tol),
            "checks": self.checks,
            "discrepancies": self.discrepancies,
            "data": _clean(self.data),
            "passed": not failed,
            "first_failure": failed[0] if failed else None,
        }


def _clean(v):
    """Convert numpy / complex / Fraction values into JSON-safe primitives."""
    if isinstance(v, dict):
        return {str(k): _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if isinstance(v, np.ndarray):
        return _clean(v.tolist())
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (float, np.floating)):
        f = float(v)
        if not math.isfinite(f):
            return str(f)
        return f
    return v


# --- finite groups ------------------------------------------------------------------

def suite_finite(seed: int, tol: dict) -> dict:
    c = _Collector("finite", seed, tol)
    g = fg.c4_group()
    reg = fg.build_regular_representation(g)
    reference = {
        "R_0": np.eye(4),
        "R_90": np.array([[0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]]),
        "R_180": np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]),
        "R_270": np.array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0]]),
    }
    mismatch = max(max_abs(reg[k] - v) for k, v in reference.items())
    c.check("regular_c4_matches_reference", mismatch, mismatch == 0.0, "regular-representation", 0.0)
    exact01 = all(set(np.unique(m.real).tolist()) <= {0.0, 1.0} and max_abs(m.imag) == 0 for m in reg.images)
    c.check("regular_c4_zero_one_entries", exact01, exact01, "regular-representation")
    viol = fg.homomorphism_violation(reg, 0.0)
    c.check("regular_c4_homomorphism_exhaustive", viol is None, viol is None, "representation-homomorphism")

    par = fg.parity_representation()
    p = par.images[1]
    c.le("parity_squares_to_identity", max_abs(p @ p - np.eye(p.shape[0])), 1e-15, "parity-group")
    w = eig_hermitian(p).eigenvalues
    c.le("parity_eigenvalues_pm1", max_abs(np.sort(w) - np.array([-1.0, 1.0])), 1e-12, "parity-group")

    # worked Gram example for C2 with D(g) = [[1, 1], [0, -1]]
    c2 = fg.Representation(fg.parity_group(), (np.eye(2), np.array([[1, 1], [0, -1]])))
    res = fg.unitarize(c2)
    gram_err = max_abs(res.S - np.array([[2, 1], [1, 3]]))
    c.le("c2_gram_matrix", gram_err, 1e-12, "unitarization")
    c.check("c2_unitarized_is_unitary", fg.is_unitary_representation(res.unitarized, tol["unitary"]),
            fg.is_unitary_representation(res.unitarized, tol["unitary"]), "unitarization")

    try:
        fg.verify_group_axioms(["a", "b"], [[0, 0], [0, 1]])
        axiom = None
    except fg.GroupAxiomError as exc:
        axiom = exc.axiom
    c.check("non_group_table_rejected", axiom, axiom == "inverse", "group-axioms")

    rng = np.random.default_rng(seed)
    worst_unitary = 0.0
    worst_intertwiner = 0.0
    worst_cond = 0.0
    found = 0
    total = 0
    trials = int(tol["trials"])
    for name in ("c4", "parity", "s3"):
        base = fg.BUNDLED_UNITARY_REPS[name]()
        for t in range(trials):
            s = fg.random_invertible(base.dim, rng, tol["max_cond"])
            worst_cond = max(worst_cond, float(np.linalg.cond(s)))
            conj = fg.conjugate(base, s)
            u = fg.unitarize(conj).unitarized
            worst_unitary = max(worst_unitary, max(
                float(np.max(np.sum(np.abs(m @ m.conj().T - np.eye(base.dim)), axis=1))) for m in u.images))
            inter = fg.are_equivalent(base, conj, tol["intertwiner"], seed=seed + t)
            total += 1
            if inter is not None:
                found += 1
                inv = np.linalg.inv(inter)
                scale = max(1.0, max(max_abs(b) for b in conj.images)) * np.linalg.cond(inter)
                worst_intertwiner = max(worst_intertwiner, max(
                    max_abs(inv @ a @ inter - b) for a, b in zip(base.images, conj.images)) / scale)
    c.le("unitarized_images_unitary", worst_unitary, tol["unitary"], "unitarization")
    c.check("intertwiners_found", f"{found}/{total}", found == total, "equivalent-representations")
    # residual relative to |D2| cond(S), the roundoff scale of S^-1 D1 S
    c.le("intertwiner_residual_rel", worst_intertwiner, tol["intertwiner"], "equivalent-representations")
    c.data["conjugation_max_condition"] = worst_cond
    c.data["c2_gram"] = res.S.real
    return c.report()


# --- Lie core ------------------------------------------------------------------------

def _curve_checks(c: _Collector, tol: dict, seed: int):
    rng = np.random.default_rng(seed)
    curves = {
        "so2": (lc.ParamCurve(2, 1, lambda a: su2.so_n_rotation(None, a[0])),
                np.array([[0, 1j], [-1j, 0]])),
    }
    for ax in su2.AXES:
        curves[f"so3_{ax}"] = (lc.ParamCurve(3, 1, lambda a, ax=ax: su2.so_n_rotation(ax, a[0])),
                               su2.so3_generator(ax))
        curves[f"boost_{ax}"] = (lc.ParamCurve(4, 1, lambda a, ax=ax: _boost_closed(ax, a[0])),
                                 lz.lorentz_generator("boost", ax))
    worst_gen = 0.0
    worst_rep = 0.0
    for name, (curve, closed) in curves.items():
        x, _ = lc.extract_generator(curve, 0)
        worst_gen = max(worst_gen, max_abs(x - closed))
        for a in rng.uniform(-2.0, 2.0, size=20):
            worst_rep = max(worst_rep, max_abs(mat_exp(1j * a * x) - curve(a)))
    c.le("extracted_generators_match_closed_form", worst_gen, tol["generator"], "generator-definition")
    c.le("exp_of_extracted_reproduces_curve", worst_rep, tol["exp_reproduce"], "exponential-map")


def _boost_closed(axis, theta):
    """cosh/sinh boost written out directly (independent of the exponential)."""
    k = lz._axis(axis) + 1
    m = np.eye(4, dtype=np.complex128)
    m[0, 0] = m[k, k] = math.cosh(theta)
    m[0, k] = m[k, 0] = -math.sinh(theta)
    return m


def suite_lie(seed: int, tol: dict) -> dict:
    c = _Collector("lie", seed, tol)
    eps = lc.epsilon_tensor()

    # Pauli: exact rational path
    re_f, im_f = lc.exact_structure_constants(su2.pauli_basis())
    exact_ok = all(re_f[a, b, k] == 2 * int(eps[a, b, k]) and im_f[a, b, k] == 0
                   for a in range(3) for b in range(3) for k in range(3))
    c.check("pauli_f_equals_2eps_exact", exact_ok, exact_ok, "pauli-algebra")

    sc3 = su3.su3_structure_constants()
    c.le("su3_closure_residual", sc3.residual, tol["su3_closure"], "structure-constants")
    c.le("su3_f123_equals_1", abs(sc3.f[0, 1, 2] - 1.0), tol["su3_closure"], "structure-constants")

    so3 = lc.structure_constants(su2.so3_basis())
    dev_claim = max_abs(so3.f - 2 * eps)
    dev_minus = max_abs(so3.f + eps)
    c.le("so3_f_equals_minus_eps", dev_minus, tol["closure"], "so3-generators")
    flagged = dev_claim > tol["closure"]
    c.check("so3_2ieps_claim_flagged", flagged, flagged, "so3-generators")
    if flagged:
        c.flag("so3-bracket-normalization")
    c.data["so3_f"] = {f"{a + 1}{b + 1}{k + 1}": float(so3.f[a, b, k].real)
                       for a in range(3) for b in range(3) for k in range(3) if so3.f[a, b, k] != 0}

    ratio = lc.rescale_ratio(su2.pauli_basis(), su2.so3_basis())
    positive = lc.algebras_isomorphic_by_rescale(su2.pauli_basis(), su2.so3_basis())
    c.data["pauli_vs_so3_signed_ratio"] = ratio
    c.data["pauli_vs_so3_positive_rescale"] = positive
    c.data["spin_half_vs_pauli_rescale"] = lc.algebras_isomorphic_by_rescale(su2.spin_half_basis(), su2.pauli_basis())
    if positive is None:
        c.flag("su2-so3-rescale")

    trials = int(tol["trials"])
    bases = {"su2": su2.pauli_basis(), "su3": su3.su3_basis(), "lorentz": lz.lorentz_basis("minus")}
    for name, basis in bases.items():
        props = lc.verify_bracket_properties(basis, trials, seed)
        c.le(f"jacobi_{name}", props["jacobi"], tol["jacobi"], "jacobi-identity")
        c.le(f"antisymmetry_{name}", props["antisymmetry"], tol["jacobi"], "bracket-properties")
        c.le(f"bilinearity_{name}", props["bilinearity"], tol["jacobi"], "bracket-properties")
        sc = lc.structure_constants(basis)
        anti = max_abs(sc.f + np.transpose(sc.f, (1, 0, 2)))
        c.check(f"f_antisymmetric_exact_{name}", anti, anti == 0.0, "structure-constants", 0.0)

    _curve_checks(c, tol, seed)

    u1 = lc.GeneratorBasis("u1", (np.array([[0, 1j], [-1j, 0]]),))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for a, b in rng.uniform(-3, 3, size=(20, 2)):
        worst = max(worst, max_abs(lc.exp_map(u1, [a]) @ lc.exp_map(u1, [b]) - lc.exp_map(u1, [a + b])))
    c.le("abelian_exp_closure", worst, tol["abelian"], "exponential-map")
    return c.report()


# --- SO(3) / SU(2) ---------------------------------------------------------------------

def suite_so3su2(seed: int, tol: dict) -> dict:
    c = _Collector("so3su2", seed, tol)
    samples = su2.double_cover_samples(int(tol["samples"]), seed)
    c.le("double_cover_rotation_match", max(s["rotation_residual"] for s in samples), tol["double_cover"],
         "double-cover")
    c.le("double_cover_negated_match", max(s["negated_residual"] for s in samples), tol["double_cover"],
         "double-cover")

    rng = np.random.default_rng(seed + 1)
    worst_full = 0.0
    worst_orth = 0.0
    worst_norm = 0.0
    for _ in range(int(tol["samples"])):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        theta = float(rng.uniform(-math.pi, math.pi))
        worst_full = max(worst_full, max_abs(
            su2.quaternion_to_rotation(su2.full_angle_quaternion(axis, theta)) - np.real(su2.so_n_rotation(axis, 2 * theta))))
        r = np.real(su2.so_n_rotation(axis, theta))
        worst_orth = max(worst_orth, max_abs(r.T @ r - np.eye(3)), abs(np.linalg.det(r) - 1.0))
        v = rng.normal(size=3)
        worst_norm = max(worst_norm, abs(np.linalg.norm(su2.rotate_by_conjugation(su2.su2_from_axis_angle(axis, theta), v))
                                         - np.linalg.norm(v)))
    c.le("full_angle_form_gives_2theta", worst_full, tol["double_cover"], "double-cover")
    c.flag("full-angle-quaternion")
    c.le("rotations_orthogonal_det1", worst_orth, tol["orthogonal"], "so3-rotations")
    c.le("conjugation_preserves_norm", worst_norm, tol["norm"], "quaternion-rotation")

    q = su2.su2_from_axis_angle("x", 2 * math.pi)
    c.le("two_pi_quaternion_is_minus_one", max(abs(q.a + 1), abs(q.b), abs(q.c), abs(q.d)), 1e-15, "double-cover")
    c.le("two_pi_rotation_is_identity", max_abs(su2.quaternion_to_rotation(q) - np.eye(3)), 1e-15, "double-cover")

    # quaternion basis relations, straight from the 2x2 matrices
    sq = max(max_abs(b.matrix() @ b.matrix() + np.eye(2)) for b in (su2.I, su2.J, su2.K))
    c.check("quaternion_units_square_to_minus_one", sq, sq == 0.0, "quaternion-basis", 0.0)
    ij = su2.quat_from_matrix(su2.QUAT_I @ su2.QUAT_J)
    c.data["I_times_J"] = list(ij.as_tuple())
    c.check("quat_mul_matches_matrices", True, su2.quat_mul(su2.I, su2.J).close_to(ij, 0.0), "quaternion-basis")
    if ij.close_to(-su2.K, 0.0):
        c.flag("quaternion-orientation")
    c.flag("tz-repeats-I")

    e = lc.epsilon_tensor()
    ok = True
    for a in range(3):
        for b in range(3):
            rhs = 2j * sum(e[a, b, k] * su2.pauli(k) for k in range(3))
            ok &= bool(np.array_equal(commutator(su2.pauli(a), su2.pauli(b)), rhs))
    c.check("pauli_commutators_exact", ok, ok, "pauli-algebra")

    w_pauli = eig_hermitian(su2.pauli("z")).eigenvalues
    w_spin = eig_hermitian(su2.spin_operator("z")).eigenvalues
    c.le("pauli_eigenvalues_pm1", max_abs(w_pauli - np.array([-1, 1])), 1e-15, "pauli-matrices")
    c.le("spin_half_eigenvalues_pm_half", max_abs(w_spin - np.array([-0.5, 0.5])), 1e-15, "pauli-matrices")
    c.flag("pauli-eigenvalues")

    up = su2.apply_isospin(su2.ladder("plus"), su2.NEUTRON)
    down = su2.apply_isospin(su2.ladder("minus"), su2.PROTON)
    c.check("raise_neutron_to_proton", True, up.close_to(su2.PROTON, 0.0), "ladder-operators")
    c.check("lower_proton_to_neutron", True, down.close_to(su2.NEUTRON, 0.0), "ladder-operators")
    kill = su2.apply_isospin(su2.ladder("plus"), su2.PROTON)
    c.check("raise_proton_annihilates", repr(kill), kill is su2.ANNIHILATED, "ladder-operators")

    th = np.linspace(-math.pi, math.pi, 13)
    u1 = max(max_abs(su2.u1_image(complex(math.cos(t), math.sin(t))) - su2.so_n_rotation(None, t)) for t in th)
    c.le("u1_image_equals_so2", u1, 1e-15, "u1-so2")

    c.data["double_cover_samples"] = samples[:20]
    return c.report()


# --- SU(3) ---------------------------------------------------------------------------------

def suite_su3(seed: int, tol: dict) -> dict:
    c = _Collector("su3", seed, tol)
    ws = su3.fundamental_weights()
    expected = [(0.5, math.sqrt(3) / 6), (-0.5, math.sqrt(3) / 6), (0.0, -math.sqrt(3) / 3)]
    dev = max(max(abs(w.i3 - e[0]), abs(w.x8 - e[1])) for w, e in zip(ws, expected))
    c.le("fundamental_weights", dev, tol["weights"], "su3-weights")
    c.le("weights_sum_to_zero", max(abs(sum(w.i3 for w in ws)), abs(sum(w.x8 for w in ws))), tol["weights"],
         "su3-weights")
    c.le("weights_are_eigenpairs", max(su3.weight_eigen_residual(w) for w in ws), tol["eigenpair"], "su3-weights")
    c.data["weights"] = [{"label": w.label, "i3": w.i3, "x8": w.x8} for w in ws]

    lams = [su3.gell_mann(a) for a in range(1, 9)]
    herm = all(is_hermitian(m, 0.0) for m in lams)
    c.check("gell_mann_hermitian", herm, herm, "gell-mann")
    c.le("gell_mann_traceless", max(abs(np.trace(m)) for m in lams), 1e-15, "gell-mann")
    gram = np.array([[np.trace(a @ b) for b in lams] for a in lams])
    c.le("trace_orthonormality", max_abs(gram - 2 * np.eye(8)), tol["gram"], "gell-mann")
    block = max(max_abs(lams[a][:2, :2] - su2.pauli(a)) for a in range(3))
    c.check("isospin_block_is_pauli", block, block == 0.0, "gell-mann", 0.0)
    w8 = eig_hermitian(lams[7]).eigenvalues
    c.le("lambda8_eigenvalues", max_abs(w8 - np.array([-2, 1, 1]) / math.sqrt(3)), 1e-12, "gell-mann")
    w8p = eig_hermitian(su3.lambda8_one_third_variant()).eigenvalues
    c.data["lambda8_one_third_variant_eigenvalues"] = w8p
    c.flag("lambda8-prefactor")

    rng = np.random.default_rng(seed)
    worst = 0
    for coeffs in rng.normal(size=(50, 8)):
        m = su3.su3_basis().combine(coeffs)
        worst = max(worst, max_abs(m - m.conj().T), abs(np.trace(m)))
    c.le("real_combinations_hermitian_traceless", worst, 1e-12, "su3-parametrization")

    sc = su3.su3_structure_constants()
    c.le("structure_constant_closure", sc.residual, tol["closure"], "structure-constants")
    c.le("f123", abs(sc.f[0, 1, 2] - 1), tol["closure"], "structure-constants")
    c.le("total_antisymmetry", su3.total_antisymmetry_residual(sc.f), tol["closure"], "structure-constants")
    sub = lc.structure_constants(su2.spin_half_basis()).f
    c.le("su2_subalgebra_slice", max_abs(sc.f[:3, :3, :3] - sub), tol["closure"], "structure-constants")

    det = su3.verify_traceless_determinant_identity(su3.su3_basis(), 20, seed, tol["det"])
    c.le("det_exp_equals_one", det["max_deviation"], tol["det"], "tracelessness")
    traced = su3.verify_traceless_determinant_identity(lc.GeneratorBasis("traced", (np.diag([1.0, 0, 0]),)),
                                                       5, seed, tol["det"])
    c.check("traced_generator_flagged", traced["non_special"], traced["non_special"] == [0], "tracelessness")

    hy = {k: su3.QUARKS[k].hypercharge for k in ("u", "d", "s")}
    ok = hy == {"u": Fraction(1, 3), "d": Fraction(1, 3), "s": Fraction(-2, 3)}
    c.check("quark_hypercharges", hy, ok, "hypercharge")
    return c.report()


# --- Lorentz ----------------------------------------------------------------------------------

def suite_lorentz(seed: int, tol: dict) -> dict:
    c = _Collector("lorentz", seed, tol)
    rng = np.random.default_rng(seed)
    worst = 0.0
    cats = set()
    elements = []
    for _ in range(50):
        ax = lz.AXES[int(rng.integers(3))]
        th = float(rng.uniform(-5, 5))
        m = lz.boost(ax, th) if rng.random() < 0.5 else lz.rotation(ax, th)
        worst = max(worst, lz.lorentz_residual(m), max_abs(m.imag))
        cats.add(lz.classify(m).category)
        elements.append(np.real(m))
    c.le("generated_elements_preserve_metric", worst, tol["lorentz"], "lorentz-constraint")
    c.check("generated_elements_category_1", sorted(cats), cats == {1}, "lorentz-categories")

    comp_worst = 0.0
    prod_cats = set()
    for _ in range(50):
        prod = np.eye(4)
        for _ in range(5):
            ax = lz.AXES[int(rng.integers(3))]
            th = float(rng.uniform(-1, 1))
            prod = prod @ np.real(lz.boost(ax, th) if rng.random() < 0.5 else lz.rotation(ax, th))
        comp_worst = max(comp_worst, lz.lorentz_residual(prod))
        prod_cats.add(lz.classify(prod).category)
    c.le("compositions_preserve_metric", comp_worst, tol["lorentz"], "lorentz-constraint")
    c.check("compositions_stay_category_1", sorted(prod_cats), prod_cats == {1}, "lorentz-categories")

    fixed = {"identity": np.eye(4), "T_p": lz.T_P, "T_pT_t": lz.T_P @ lz.T_T, "T_t": lz.T_T}
    got = {k: lz.classify(v).category for k, v in fixed.items()}
    c.check("classification_1234", got, got == {"identity": 1, "T_p": 2, "T_pT_t": 3, "T_t": 4},
            "lorentz-categories")
    coset = {k: sorted({lz.classify(v @ m, 1e-6).category for m in elements[:10]}) for k, v in fixed.items()}
    c.check("cosets_reach_all_categories", coset,
            coset == {"identity": [1], "T_p": [2], "T_pT_t": [3], "T_t": [4]}, "lorentz-categories")
    bad = not lz.verify_lorentz(np.diag([2.0, 1, 1, 1]))
    c.check("non_lorentz_rejected", bad, bad, "lorentz-constraint")

    b = lz.boost("x", math.pi / 2)
    vec = np.real(b @ np.array([1.0, 0, 0, 0]))
    want = np.array([math.cosh(math.pi / 2), -math.sinh(math.pi / 2), 0, 0])
    c.le("boost_pi_over_2_four_velocity", max_abs(vec - want), tol["boost"], "boost-matrices")
    v = lz.coordinate_velocity(b)
    c.le("coordinate_speed", abs(v - (-math.tanh(math.pi / 2))), tol["speed"], "boost-velocity")
    c.le("coordinate_speed_six_digits", abs(v - (-0.917152)), 1e-6, "boost-velocity")
    c.data["coordinate_speed"] = v

    th = np.linspace(-5, 5, 101)
    c.le("cosh2_minus_sinh2", float(np.max(np.abs(np.cosh(th) ** 2 - np.sinh(th) ** 2 - 1) / np.cosh(th) ** 2)),
         tol["hyperbolic"], "hyperbolic-functions")

    alg = lz.lorentz_algebra_report("minus")
    for k, val in alg.items():
        c.le(f"algebra_{k}", val, tol["algebra"], "lorentz-algebra")
    nd = lz.n_decomposition("minus")
    for k, val in nd.items():
        c.le(f"n_decomposition_{k}", val, tol["algebra"], "n-plus-minus")
    alg_plus = lz.lorentz_algebra_report("plus")
    c.data["algebra_residuals_stored_basis"] = alg_plus
    c.data["n_residuals_stored_basis"] = lz.n_decomposition("plus")
    if max(alg_plus.values()) > tol["algebra"]:
        c.flag("lorentz-sign-convention")
    c.flag("jx-stray-entry")
    kx_herm = is_hermitian(lz.lorentz_generator("boost", "x"))
    c.check("boost_generator_not_hermitian", kx_herm, not kx_herm, "boost-generators")

    for h in ("left", "right"):
        rep = lz.chiral_rep(h)
        van = lz.chiral_vanishing_n(rep)
        c.check(f"chiral_{h}_opposite_n_vanishes", van, van == 0.0, "chiral-representations", 0.0)
        res = lz.algebra_residuals(list(rep.J), list(rep.K))
        c.le(f"chiral_{h}_algebra", max(res.values()), tol["algebra"], "chiral-representations")
    flipped = lz.chiral_same_as(lz.parity_flip(lz.chiral_rep("left")), lz.chiral_rep("right"))
    c.check("parity_flip_left_is_right", flipped, flipped, "parity-action")
    pa = lz.parity_action_exact()
    ok = all(pa[f"J_{a}"]["even"] for a in lz.AXES) and all(pa[f"K_{a}"]["odd"] for a in lz.AXES)
    c.check("parity_action_exact_integer", ok, ok, "parity-action")
    return c.report()


def suite_poincare(seed: int, tol: dict) -> dict:
    c = _Collector("poincare", seed, tol)
    res = lz.poincare_commutators("minus")
    for key in ("JP", "PP", "JPt", "KPt"):
        c.le(f"commutator_{key}", res[key], tol["algebra"], "poincare-algebra")
    c.le("translations_nilpotent", res["P_nilpotent"], 0.0, "poincare-affine")
    c.le("lorentz_block_matches_4d", res["lorentz_block"], 0.0, "poincare-affine")
    c.le("translation_exponential", lz.translation_matches("minus"), 1e-15, "poincare-affine")
    plus = lz.poincare_commutators("plus")
    c.data["mixed_relation"] = {
        "literal_JK_residual": res["mixed_literal_JK"],
        "KP_reading_minus_convention": res["mixed_reading_KP"],
        "KP_reading_negated_minus_convention": res["mixed_reading_KP_negated"],
        "KP_reading_plus_convention": plus["mixed_reading_KP"],
        "resolution": ("[J_i, K_j] = i delta_ij P_t fails in both conventions; "
                       "[K_i, P_j] = i delta_ij P_t holds in the exp(+i theta G) basis and with "
                       "the opposite sign in the exp(-i theta G) basis"),
    }
    literal_false = res["mixed_literal_JK"] > tol["algebra"] and plus["mixed_literal_JK"] > tol["algebra"]
    reading_resolved = min(plus["mixed_reading_KP"], res["mixed_reading_KP_negated"]) <= tol["algebra"]
    c.check("mixed_relation_resolved", literal_false and reading_resolved,
            literal_false and reading_resolved, "poincare-algebra")
    c.flag("mixed-jk-relation")
    c.data["commutators_stored_basis"] = {k: plus[k] for k in ("JP", "PP", "JPt", "KPt")}
    return c.report()


# --- Noether -----------------------------------------------------------------------------------

def noether_acceptance(seed: int, tol: dict) -> _Collector:
    c = _Collector("noether", seed, tol)
    cfg = nl.LatticeConfig(1, 256, 1.0, 0.05, 1.0, 2000)
    rep = nl.conservation_report(cfg, "gaussian", sample=1)
    d = rep["drift"]
    c.le("energy_drift_rel", d["E_drift_rel"], tol["E_drift_rel"], "energy-conservation")
    if d["E_drift_rel"] > tol["E_drift_rel"]:
        c.flag("energy-drift-tolerance")
    study = nl.dt_study(cfg, "gaussian", (0.1, 0.05, 0.025))
    orders = [r["E_drift_rel_order"] for r in study[1:]]
    c.check("energy_drift_second_order_in_dt", orders, all(o is not None and o >= tol["order_min"] for o in orders),
            "energy-conservation", tol["order_min"])
    c.le("momentum_drift_abs", d["P_drift_abs"], tol["P_drift_abs"], "momentum-conservation")
    p_nonzero = abs(d["P0"][0]) > 1e-3
    c.check("travelling_packet_has_momentum", d["P0"][0], p_nonzero, "momentum-conservation")
    refine = nl.refinement_table(cfg, "gaussian", 3)
    div_orders = [r["divergence_max_order"] for r in refine[1:]]
    c.check("divergence_residual_second_order", div_orders,
            all(o is not None and o >= tol["order_min"] for o in div_orders), "stress-tensor-divergence",
            tol["order_min"])
    c.le("boost_charge_drift_rel", d["BO_drift_rel"], tol["BO_drift_rel"], "boost-charge")

    cfg3 = nl.LatticeConfig(3, 32, 1.0, 0.05, 1.0, 200)
    rep3 = nl.conservation_report(cfg3, "gaussian", sample=20)
    c.le("angular_momentum_symmetric_bump", rep3["drift"]["L_max_abs"], tol["L_abs"], "angular-momentum")

    c.data["run_1d"] = {k: d[k] for k in sorted(d)}
    c.data["divergence_max_1d"] = rep["divergence"]["max_abs"]
    c.data["moment_rate_1d"] = rep["moment_rate"]
    c.data["dt_study"] = study
    c.data["refinement"] = refine
    c.data["run_3d"] = rep3["drift"]
    return c


def suite_noether(seed: int, tol: dict) -> dict:
    c = noether_acceptance(seed, tol)

    vac_cfg = nl.LatticeConfig(1, 64, 1.0, 0.05, 0.0, 100)
    zero = nl.vacuum(vac_cfg)
    sim = nl.simulate(vac_cfg, zero)
    dz = nl.drift_summary(sim["records"])
    vac_all = max(dz["E_drift_abs"], dz["P_drift_abs"], dz["BO_drift_abs"], sim["divergence_max"],
                  max_abs(sim["final"].phi))
    c.check("vacuum_stays_vacuum", vac_all, vac_all == 0.0, "energy-conservation", 0.0)

    mcfg = nl.LatticeConfig(1, 64, 1.0, 0.1, 0.0, 200)
    st = nl.evolve(nl.initial_state(mcfg, "mode:1"), mcfg)
    k = 2 * math.pi / 64
    omega = nl.lattice_frequency(mcfg, k)
    want = math.cos(omega * mcfg.steps * mcfg.dt) * np.cos(k * np.arange(64))
    c.le("single_mode_lattice_dispersion", max_abs(st.phi - want), tol["dispersion"], "field-dynamics")

    f = nl.assemble_em_tensor([1, 0, 0], [0, 0, 0], 1.0)
    ok = f[0, 1] == -1 and f[1, 0] == 1 and np.count_nonzero(f) == 2
    c.check("em_tensor_layout", ok, ok, "em-field-tensor")
    g = nl.assemble_em_tensor(np.random.default_rng(seed).normal(size=3), np.random.default_rng(seed + 1).normal(size=3), 3.0)
    c.check("em_tensor_antisymmetric", max_abs(g + g.T), max_abs(g + g.T) == 0.0, "em-field-tensor", 0.0)
    return c.report()


SUITE_FUNCS = {
    "finite": suite_finite,
    "lie": suite_lie,
    "so3su2": suite_so3su2,
    "su3": suite_su3,
    "lorentz": suite_lorentz,
    "poincare": suite_poincare,
    "noether": suite_noether,
}


def run_suite(name: str, seed: int = 0, tol_overrides: dict = None) -> dict:
    """Run one suite (not ``all``; see the CLI for aggregation)."""
    if name not in SUITE_FUNCS:
        raise KeyError(name)
    tol = dict(DEFAULT_TOLERANCES[name])
    for k, v in (tol_overrides or {}).items():
        if k in tol:
            tol[k] = v
    return SUITE_FUNCS[name](seed, tol)
