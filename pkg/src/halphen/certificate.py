"""Equioscillation certificates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_CERTIFICATE_TOL = 1e-3


@dataclass(frozen=True)
class EquioscillationCertificate:
    """Alternation set witnessing (near-)optimality of a minimax approximant.

    Attributes
    ----------
    points : ndarray
        Alternation points, strictly increasing.
    signs : ndarray
        Sign (+1/-1) of the error at each point; strictly alternating.
    levelled_error : float
        The level the exchange step equalized the error to.
    residual_defect : float
        ``max_i | |e(points[i])| - levelled_error | / levelled_error``.
    degenerate : bool
        Set when the target is reproduced exactly and no alternation exists.
    """

    points: np.ndarray
    signs: np.ndarray
    levelled_error: float
    residual_defect: float
    degenerate: bool = False

    @classmethod
    def from_errors(cls, points, errors, levelled_error, degenerate=False):
        errors = np.asarray(errors)
        level = abs(levelled_error)
        mags = np.abs(errors.astype(float))
        if level > 0:
            defect = float(np.max(np.abs(mags - float(level))) / float(level))
        else:
            defect = 0.0
        return cls(
            points=np.asarray(points),
            signs=np.sign(errors.astype(float)).astype(int),
            levelled_error=level,
            residual_defect=defect,
            degenerate=degenerate,
        )

    def __len__(self):
        return len(self.points)

    def is_valid(self, tol: float = DEFAULT_CERTIFICATE_TOL, domain=None) -> bool:
        """Check ordering, alternation and levelling against ``tol``."""
        if self.degenerate:
            return True
        pts = np.asarray(self.points, dtype=float)
        if np.any(np.diff(pts) <= 0):
            return False
        if domain is not None:
            lo, hi = domain
            if pts[0] < float(lo) or pts[-1] > float(hi):
                return False
        s = np.asarray(self.signs)
        if np.any(s == 0) or np.any(s[1:] == s[:-1]):
            return False
        return self.residual_defect <= tol
