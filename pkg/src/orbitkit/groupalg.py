"""Group-algebra checks of the orbit method in C[B].

X_chi = sum_l chi(l) l, with l running over the common element set of B and L(B).
Products of a group element with X_chi permute coefficients, so they are computed
exactly as exponent rows (coefficient at g is zeta_e^row[g]).  The closed forms
for b X_chi and X_chi b are compared against those direct products, and the
trace of the right regular action on V_Omega is read off the resulting
phase-permutation matrices.

Inner product: <x, y> = (1/|B|) sum_g x_g conj(y_g).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cyclo import RootMultiple, exponent_counts, reduce_counts, root_sum_equals, roots_to_complex
from .errors import BudgetExceeded, FormulaMismatch, IdealViolation, TraceMismatch
from .nilgroup import Class2Group
from .orbits import Character, Orbit, OrbitMethod, orbit_dimension, orbit_method

MAX_ORDER = 243
FLOAT_TOL = 1e-12


def _om(B: Class2Group) -> OrbitMethod:
    if B.order > MAX_ORDER:
        raise BudgetExceeded(f"|B| = {B.order} exceeds the dense group-algebra budget of {MAX_ORDER}")
    return orbit_method(B)


@dataclass
class AlgebraElement:
    coeffs: np.ndarray  # complex, indexed by B's element order

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)

    def inner(self, other: "AlgebraElement") -> complex:
        return complex(np.vdot(other.coeffs, self.coeffs) / len(self.coeffs))


def group_element(B: Class2Group, b) -> AlgebraElement:
    x = np.zeros(B.order, dtype=complex)
    x[B.index(b)] = 1
    return AlgebraElement(x)


def convolve(B: Class2Group, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Product in C[B]: sum_{g,h} x_g y_h (g h)."""
    w = np.outer(x.coeffs, y.coeffs).ravel()
    idx = np.asarray(B.mul_table, dtype=np.int64).ravel()
    re = np.bincount(idx, weights=w.real, minlength=B.order)
    im = np.bincount(idx, weights=w.imag, minlength=B.order)
    return AlgebraElement(re + 1j * im)


@dataclass
class XBasis:
    B: Class2Group
    exponents: np.ndarray  # [t, g] exponent of X_chi_t's coefficient at g
    e: int

    def __len__(self):
        return len(self.exponents)

    def vector(self, t: int) -> AlgebraElement:
        return AlgebraElement(roots_to_complex(self.exponents[t], self.e))

    def matrix(self) -> np.ndarray:
        return roots_to_complex(self.exponents, self.e)

    def gram_exact(self) -> np.ndarray:
        """Boolean matrix: entry (s, t) holds iff <X_s, X_t> equals delta_st exactly."""
        E, e = self.exponents, self.e
        n = E.shape[1]
        out = np.zeros((len(E), len(E)), dtype=bool)
        for s in range(len(E)):
            counts = exponent_counts(E[s][None, :] - E, e)  # sum_g zeta^(E_s - E_t)
            target = np.zeros(e, dtype=np.int64)
            target[0] = n
            ok_zero = ~np.any(reduce_counts(counts, e), axis=-1)
            ok_diag = ~np.any(reduce_counts(counts - target, e), axis=-1)
            out[s] = ok_zero
            out[s, s] = ok_diag[s]
        return out

    def gram_float(self) -> np.ndarray:
        X = self.matrix()
        return X @ X.conj().T / X.shape[1]


def build_xbasis(B: Class2Group) -> XBasis:
    om = _om(B)
    return XBasis(B, om.chi_table, om.e)


# ---------------------------------------------------------------------------
# left / right multiplication
# ---------------------------------------------------------------------------


def _recognize(om: OrbitMethod, rows: np.ndarray):
    """Write exponent rows as phase * X_chi'.  Returns (phase, chi' index, ok mask)."""
    G = om.G
    phase = rows[:, 0]  # X_chi'(identity) = 1
    rel = (rows - phase[:, None]) % om.e
    basis = om.structure.basis
    vals = rel[:, basis]
    w = G.char_weights
    divisible = ~np.any(vals % w, axis=1) if len(basis) else np.ones(len(rows), bool)
    img = G.index_array(vals // w) if len(basis) else np.zeros(len(rows), np.int64)
    ok = divisible & np.all(rel == om.chi_table[img], axis=1)
    return phase, img, ok


def left_rows(om: OrbitMethod, b: int, ts) -> np.ndarray:
    """Exponent rows of b X_chi_t: coefficient at b l is chi(l)."""
    E = om.chi_table[np.asarray(ts)]
    out = np.empty_like(E)
    out[:, np.asarray(om.B.mul_table[b], dtype=np.int64)] = E
    return out


def right_rows(om: OrbitMethod, b: int, ts) -> np.ndarray:
    """Exponent rows of X_chi_t b: coefficient at l b is chi(l)."""
    E = om.chi_table[np.asarray(ts)]
    out = np.empty_like(E)
    out[:, np.asarray(om.B.mul_table[:, b], dtype=np.int64)] = E
    return out


def _closed_form(om: OrbitMethod, b: int, ts, side: str):
    B = om.B
    ts = np.asarray(ts)
    phase = om.chi_table[ts, B.inv_table[b]]  # chi(-b), since -b = b^-1
    h = int(B.half_table[b])
    if side == "right":
        h = int(B.inv_table[h])  # -b/2
    img = om.coad_perm(h)[ts]
    return phase, img


def _action(B: Class2Group, b, chi: Character, side: str):
    om = _om(B)
    bi, t = B.index(b), chi.index
    rows = (left_rows if side == "left" else right_rows)(om, bi, [t])
    phase, img = _closed_form(om, bi, [t], side)
    closed = (phase[:, None] + om.chi_table[img]) % om.e
    if not np.array_equal(rows, closed):
        raise FormulaMismatch(f"{side} action of {B.element(bi)} on chi={chi.t} disagrees with closed form",
                              (str(B.element(bi)), chi.t))
    # floating convolution as an independent route
    delta = group_element(B, b)
    X = AlgebraElement(roots_to_complex(om.chi_table[t], om.e))
    prod = convolve(B, delta, X) if side == "left" else convolve(B, X, delta)
    if np.max(np.abs(prod.coeffs - roots_to_complex(closed[0], om.e))) > FLOAT_TOL:
        raise FormulaMismatch(f"floating convolution disagrees ({side}, b={B.element(bi)})")
    return RootMultiple(1, om.e, int(phase[0])), om.character_at(int(img[0]))


def left_action(B: Class2Group, b, chi: Character):
    """b X_chi = chi(-b) X_{Ad*(b/2) chi}; returns (phase, image character)."""
    return _action(B, b, chi, "left")


def right_action(B: Class2Group, chi: Character, b):
    """X_chi b = chi(-b) X_{Ad*(-b/2) chi}; returns (phase, image character)."""
    return _action(B, b, chi, "right")


@dataclass
class SweepReport:
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def action_sweep(B: Class2Group) -> SweepReport:
    """Every (b, chi): direct products vs the closed forms, both sides, exact."""
    om = _om(B)
    report = SweepReport()
    ts = np.arange(om.G.order)
    for b in range(B.order):
        for side, rows_fn in (("left", left_rows), ("right", right_rows)):
            rows = rows_fn(om, b, ts)
            phase, img = _closed_form(om, b, ts, side)
            bad = np.flatnonzero(np.any(rows != (phase[:, None] + om.chi_table[img]) % om.e, axis=1))
            report.checks += len(ts)
            if len(bad):
                report.failures.append((side, str(B.element(b)), om.G.element(int(bad[0]))))
    return report


# ---------------------------------------------------------------------------
# ideals and traces
# ---------------------------------------------------------------------------


@dataclass
class IdealReport:
    orbit: int
    size: int
    action_checks: int = 0
    product_checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def product_is_zero(om: OrbitMethod, s: int, t: int) -> bool:
    """X_s X_t == 0 exactly: coefficient at g is sum_l chi_s(l) chi_t(l^-1 g)."""
    B = om.B
    n = B.order
    l = np.arange(n)
    partner = np.asarray(B.mul_table, dtype=np.int64)[B.inv_table[l][None, :], np.arange(n)[:, None]]
    exps = om.chi_table[s][None, :] + om.chi_table[t][partner]  # [g, l]
    return not np.any(reduce_counts(exponent_counts(exps, om.e), om.e))


def verify_ideal(B: Class2Group, orbit: Orbit, samples: int = 8, rng=0, raise_on_failure=False) -> IdealReport:
    """V_Omega is closed under left and right multiplication by B; V_Omega V_Omega' = 0 (sampled)."""
    om = _om(B)
    k = om.orbits.index(orbit)
    members = np.array(orbit.member_idx)
    inside = np.zeros(om.G.order, dtype=bool)
    inside[members] = True
    report = IdealReport(k, orbit.size)
    for b in range(B.order):
        for side, rows_fn in (("left", left_rows), ("right", right_rows)):
            _, img, ok = _recognize(om, rows_fn(om, b, members))
            report.action_checks += len(members)
            bad = np.flatnonzero(~ok | ~inside[img])
            if len(bad):
                report.failures.append((side, str(B.element(b)), om.G.element(int(members[bad[0]]))))
    rng = np.random.default_rng(rng)
    others = np.flatnonzero(~inside)
    if len(others):
        for _ in range(samples):
            s = int(rng.choice(members))
            t = int(rng.choice(others))
            report.product_checks += 2
            for a, c in ((s, t), (t, s)):
                if not product_is_zero(om, a, c):
                    report.failures.append(("product", om.G.element(a), om.G.element(c)))
    if raise_on_failure and report.failures:
        raise IdealViolation(f"orbit {k}: {report.failures[0]}", report.failures[0])
    return report


@dataclass
class TraceResult:
    value: RootMultiple  # trace of R(g) on V_Omega, exact
    degree: int
    counts: np.ndarray  # the same trace as a histogram of e-th roots

    @property
    def per_degree(self) -> RootMultiple:
        """trace / n: the irreducible character's value."""
        v = self.value
        return RootMultiple(v.scale // self.degree, v.order, v.exponent) if v.scale else v

    def __complex__(self):
        return complex(self.value)


def regular_trace(B: Class2Group, orbit: Orbit, g) -> TraceResult:
    """Trace of R(g) x = x g^-1 on V_Omega, from the directly computed action.

    Checked exactly against n^2 chi(g) on the stabiliser and 0 off it.
    """
    om = _om(B)
    gi = B.index(g)
    members = np.array(orbit.member_idx)
    rows = right_rows(om, int(B.inv_table[gi]), members)
    phase, img, ok = _recognize(om, rows)
    if not ok.all():
        raise TraceMismatch("R(g) X_chi is not a multiple of a basis vector", str(B.element(gi)))
    fixed = img == members
    counts = np.bincount(phase[fixed] % om.e, minlength=om.e)
    n = orbit_dimension(orbit)
    t = orbit.member_idx[0]
    in_stab = gi in set(om.stabilizer_idx(t).tolist())
    expected = RootMultiple(n * n, om.e, int(om.chi_table[t, gi])) if in_stab else RootMultiple.zero(om.e)
    if not root_sum_equals(counts, expected, om.e):
        raise TraceMismatch(f"trace of R({B.element(gi)}) on orbit {t} is not {expected.render()}",
                            str(B.element(gi)))
    return TraceResult(expected, n, counts)
