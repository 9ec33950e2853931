"""Brute-force reference computations, kept independent of numkernel."""
import numpy as np


def oracle_angle_min(x, M, sweeps=3):
    """``min_c ||x - M c|| / ||x||`` by normal equations plus iterative refinement.

    Only for cross-checking the angle routines; the normal equations square
    the condition number of ``M``, so keep ``M`` reasonably conditioned.
    """
    x = np.asarray(x, dtype=np.complex128).ravel()
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    nx = np.linalg.norm(x)
    if nx == 0.0:
        raise ValueError("x must be nonzero")
    G = M.conj().T @ M
    c = np.linalg.solve(G, M.conj().T @ x)
    for _ in range(sweeps):
        r = x - M @ c
        c = c + np.linalg.solve(G, M.conj().T @ r)
    return float(min(1.0, np.linalg.norm(x - M @ c) / nx))
