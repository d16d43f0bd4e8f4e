"""Dense kernels used as independent oracles: cyclic Jacobi and Taylor expm."""

from __future__ import annotations

import numpy as np


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


def hermiticity_error(a: np.ndarray) -> float:
    return float(np.abs(a - a.conj().T).max())


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigh(a, tol: float = 1e-10, max_sweeps: int = 50, eps: float = 1e-15):
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each (p, q) rotation first removes the phase of ``a[p, q]`` and then
    applies the real symmetric Schur rotation. Returns ``(w, v)`` with
    ``a @ v = v @ diag(w)``, eigenvalues ascending (stable order).

    Raises NotHermitianError when ``a`` deviates from Hermitian by more than
    ``tol`` and ConvergenceError if ``max_sweeps`` sweeps do not suffice.
    """
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("square matrix required")
    if hermiticity_error(a) > tol:
        raise NotHermitianError(f"matrix is not Hermitian (error {hermiticity_error(a):.3e})")
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = max(np.linalg.norm(a), 1.0)

    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off <= eps * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= eps * scale * 1e-3:
                    continue
                phase = apq / r
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    else:
        off = _off_norm(a)
        if off > eps * scale * 10:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps (off={off:.3e})")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def expm_taylor(a, norm_bound: float = 0.5, terms: int = 16) -> np.ndarray:
    """exp(a) by scaling to 1-norm below ``norm_bound``, Taylor series, squaring.

    The series keeps powers 0..terms. No eigendecomposition is involved.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    norm = np.abs(a).sum(axis=0).max()
    squarings = 0
    while norm / 2**squarings >= norm_bound:
        squarings += 1
    b = a / 2**squarings
    out = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for j in range(1, terms + 1):
        term = term @ b / j
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out
