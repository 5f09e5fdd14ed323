"""Rational functions in barycentric form and the AAA algorithm."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np
import scipy.linalg

from .precision import get_precision_bits


class AAAError(RuntimeError):
    """AAA could not produce a fit free of spurious pole-zero pairs."""


@dataclass(frozen=True)
class BarycentricRational:
    """r(x) = sum_j w_j v_j / (x - z_j)  /  sum_j w_j / (x - z_j).

    With ``m + 1`` support nodes this is a rational function of type at most
    ``(m, m)``; ``r(z_j) = v_j`` whenever ``w_j != 0``.
    """

    nodes: np.ndarray
    values: np.ndarray
    weights: np.ndarray
    type_bound: int | None = None

    def __post_init__(self):
        obj = any(np.asarray(a).dtype == object for a in (self.nodes, self.values, self.weights))
        dtype = object if obj else float
        z, v, w = (np.array(a, dtype=dtype).ravel() for a in (self.nodes, self.values,
                                                               self.weights))
        if not len(z) == len(v) == len(w) or len(z) == 0:
            raise ValueError("nodes, values and weights must be non-empty and equally long")
        if len(np.unique(z.astype(float))) != len(z):
            raise ValueError("support nodes must be distinct")
        if not np.any(w != 0):
            raise ValueError("weights must not all vanish")
        bound = len(z) - 1 if self.type_bound is None else int(self.type_bound)
        if len(z) > bound + 1:
            raise ValueError(f"{len(z)} nodes exceed type ({bound}, {bound})")
        for a in (z, v, w):
            a.setflags(write=False)
        object.__setattr__(self, "nodes", z)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "type_bound", bound)

    @property
    def degree(self) -> int:
        return len(self.nodes) - 1

    def __call__(self, x):
        return eval_rational(self, x)

    def denominator(self, x):
        """sum_j w_j / (x - z_j); ``inf`` at a node."""
        x = np.atleast_1d(np.asarray(x))
        with np.errstate(divide="ignore", invalid="ignore"):
            return (1 / (x[:, None] - self.nodes[None, :])) @ self.weights

    def poles(self) -> np.ndarray:
        """Poles, as eigenvalues of the barycentric arrowhead pencil."""
        return _pencil_roots(self.nodes, self.weights)

    def zeros(self) -> np.ndarray:
        return _pencil_roots(self.nodes, self.weights * self.values)

    def residues(self, poles=None) -> np.ndarray:
        """Residues at ``poles`` from the barycentric quotient rule."""
        poles = self.poles() if poles is None else poles
        z = self.nodes.astype(float)
        w = self.weights.astype(float)
        v = self.values.astype(float)
        with np.errstate(divide="ignore", invalid="ignore"):
            C = 1 / (poles[:, None] - z[None, :])
            num = C @ (w * v)
            dden = -(C**2) @ w
            return num / dden

    def real_poles_in(self, lo, hi, rtol: float = 1e-10) -> np.ndarray:
        pol = self.poles()
        scale = max(abs(float(lo)), abs(float(hi)), float(hi) - float(lo))
        real = pol[np.abs(pol.imag) <= rtol * scale].real
        return real[(real >= float(lo)) & (real <= float(hi))]

    def is_pole_free(self, lo, hi, grid_size: int = 4096) -> bool:
        """True if no pole lies on ``[lo, hi]``.

        Checks both the pencil eigenvalues and the sign of the full denominator
        q(x) = D(x) prod_j (x - z_j) on a Chebyshev validation grid.
        """
        if len(self.real_poles_in(lo, hi)):
            return False
        if len(self.nodes) == 1:
            return True
        k = np.arange(grid_size)
        x = float(lo) + (float(hi) - float(lo)) * (1 - np.cos(np.pi * k / (grid_size - 1))) / 2
        z = self.nodes.astype(float)
        x = x[~np.isin(x, z)]
        d = self.denominator(x).astype(float)
        # sign of prod_j (x - z_j) flips once per node to the right of x
        n_right = np.sum(x[:, None] < z[None, :], axis=1)
        q_sign = np.sign(d) * (-1.0) ** n_right
        w = self.weights.astype(float)
        zs = np.argsort(z)
        # q(z_j) = w_j prod_{l != j}(z_j - z_l)
        node_sign = np.sign(w[zs]) * (-1.0) ** (len(z) - 1 - np.arange(len(z)))
        signs = np.concatenate([q_sign, node_sign])
        signs = signs[signs != 0]
        return bool(np.all(signs == signs[0]))

    def astype_float(self) -> "BarycentricRational":
        return BarycentricRational(self.nodes.astype(float), self.values.astype(float),
                                   self.weights.astype(float), self.type_bound)


def _pencil_roots(z, coeffs):
    z = np.asarray(z, dtype=float)
    c = np.asarray(coeffs, dtype=float)
    m = len(z)
    if m <= 1:
        return np.array([], dtype=complex)
    E = np.zeros((m + 1, m + 1))
    E[0, 1:] = c
    E[1:, 0] = 1
    E[1:, 1:] = np.diag(z)
    B = np.eye(m + 1)
    B[0, 0] = 0
    ev = scipy.linalg.eigvals(E, B)
    return ev[np.isfinite(ev)]


def eval_rational(r: BarycentricRational, x):
    """Evaluate ``r`` at ``x``; exact at support nodes, signed infinity at a pole."""
    scalar = np.ndim(x) == 0
    dtype = object if (np.asarray(x).dtype == object or r.nodes.dtype == object) else float
    xa = np.atleast_1d(np.asarray(x, dtype=dtype))
    z, v, w = r.nodes, r.values, r.weights
    if len(z) == 1:
        out = np.empty(len(xa), dtype=dtype)
        out[:] = v[0]
        return out[0] if scalar else out
    D = xa[:, None] - z[None, :]
    hit = D == 0
    if dtype == object:
        with mpmath.workprec(get_precision_bits()):
            D = np.where(hit, 1, D)
            C = 1 / D
            num = C @ (w * v)
            den = C @ w
            out = np.empty(len(xa), dtype=object)
            for i in range(len(xa)):
                out[i] = num[i] / den[i] if den[i] != 0 else mpmath.inf * mpmath.sign(num[i])
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            C = 1 / np.where(hit, 1.0, D)
            out = (C @ (w * v)) / (C @ w)
    rows, cols = np.nonzero(hit)
    out[rows] = v[cols]
    return out[0] if scalar else out


def _solve_weights(Z, F, z, f, mask):
    C = 1 / (Z[mask, None] - z[None, :])
    L = F[mask, None] * C - C * f[None, :]
    _, _, Vh = np.linalg.svd(L, full_matrices=False)
    return Vh[-1].conj()


def _rational_on(Z, z, f, w):
    with np.errstate(divide="ignore", invalid="ignore"):
        D = Z[:, None] - z[None, :]
        hit = D == 0
        C = 1 / np.where(hit, 1.0, D)
        R = (C @ (w * f)) / (C @ w)
    rows, cols = np.nonzero(hit)
    R[rows] = f[cols]
    return R


def _spurious(r: BarycentricRational, fscale: float, scale: float,
              cleanup_tol: float):
    """Indices of poles forming Froissart doublets, and the poles."""
    pol = r.poles()
    if len(pol) == 0:
        return np.array([], dtype=int), pol
    res = r.residues(pol)
    bad = np.abs(res) < cleanup_tol * fscale
    zer = r.zeros()
    if len(zer):
        gap = np.min(np.abs(pol[:, None] - zer[None, :]), axis=1)
        bad |= gap < cleanup_tol * scale
    return np.flatnonzero(bad), pol


def aaa_fit(sample_points, sample_values, max_degree: int, tol: float = 1e-13,
            cleanup_tol: float = 1e-13) -> BarycentricRational:
    """Adaptive Antoulas-Anderson rational fit of real samples.

    Support points are added greedily where the current error is largest and
    the weights are the minimal right singular vector of the Loewner matrix.
    Iteration stops once the sample error is below ``tol * max|F|`` or
    ``max_degree + 1`` support points are in use.  Pole-zero pairs closer than
    ``cleanup_tol`` (or poles with negligible residue) are removed by dropping
    the nearest support point and re-solving.

    Raises
    ------
    AAAError
        If spurious pairs survive repeated clean-up.
    """
    Z = np.asarray(sample_points, dtype=float).ravel()
    F = np.asarray(sample_values, dtype=float).ravel()
    if len(Z) != len(F):
        raise ValueError("sample_points and sample_values differ in length")
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    if len(np.unique(Z)) != len(Z):
        raise ValueError("sample points must be distinct")
    if len(Z) < 2 * max_degree + 2:
        raise ValueError(f"need at least {2 * max_degree + 2} sample points")
    fscale = float(np.max(np.abs(F))) or 1.0
    scale = float(np.max(Z) - np.min(Z)) or 1.0

    mask = np.ones(len(Z), dtype=bool)
    R = np.full(len(Z), np.mean(F))
    support = []
    w = np.ones(1)
    for _ in range(max_degree + 1):
        j = int(np.argmax(np.abs(F - R) * mask))
        support.append(j)
        mask[j] = False
        z, f = Z[support], F[support]
        w = _solve_weights(Z, F, z, f, mask) if mask.any() else np.ones(len(z))
        R = _rational_on(Z, z, f, w)
        if np.max(np.abs(F - R)) <= tol * fscale:
            break

    r = BarycentricRational(Z[support], F[support], w)
    for _ in range(3):
        bad, pol = _spurious(r, fscale, scale, cleanup_tol)
        if len(bad) == 0 or len(support) == 1:
            return r
        drop = set()
        for p in pol[bad]:
            drop.add(int(np.argmin(np.abs(Z[support] - p))))
        support = [s for i, s in enumerate(support) if i not in drop]
        mask = np.ones(len(Z), dtype=bool)
        mask[support] = False
        z, f = Z[support], F[support]
        w = _solve_weights(Z, F, z, f, mask)
        r = BarycentricRational(z, f, w)
    bad, _ = _spurious(r, fscale, scale, cleanup_tol)
    if len(bad):
        raise AAAError(f"{len(bad)} Froissart doublet(s) survived clean-up")
    return r
