"""Chebyshev collocation machinery on [-1, 1].

Provides dense differentiation matrices on Chebyshev-Gauss-Lobatto nodes,
Clenshaw-Curtis quadrature weights on the same nodes, and a clamped-boundary
restriction built by basis recombination: the columns of the injection map
are (1 - z^2)^2 * T_j(z), normalized so that interior nodal values act as
the degrees of freedom.  Derivatives of the recombined basis are evaluated
from exact Chebyshev coefficient differentiation, which keeps the clamped
fourth-derivative map free of the extra rounding a product of second-order
maps would introduce.
"""

from dataclasses import dataclass

import numpy as np
import numpy.polynomial.chebyshev as ncheb

from .errors import ParameterError

N_MIN = 8
N_MAX = 512


@dataclass(frozen=True, eq=False)
class SpectralOperator:
    """Collocation operator bundle of polynomial order N.

    nodes are ordered from +1 down to -1 (standard Gauss-Lobatto order),
    the endpoints are exact and the grid is exactly antisymmetric.
    D1..D4 are the first- through fourth-derivative matrices, qweights the
    Clenshaw-Curtis weights on the same nodes (sum = 2).
    """

    N: int
    nodes: np.ndarray
    D1: np.ndarray
    D2: np.ndarray
    D3: np.ndarray
    D4: np.ndarray
    qweights: np.ndarray


@dataclass(frozen=True, eq=False)
class ClampedMaps:
    """Restriction of the collocation operators to the clamped subspace.

    inject maps N-3 interior values to full nodal vectors satisfying
    f = f' = 0 at both walls; its rows at the interior index set are the
    identity.  basis_d1/basis_d2/basis_d4 hold the derivative values of the
    same recombined basis on the full grid.  D2c and D4c are the square
    clamped second- and fourth-derivative maps on interior values.
    """

    interior_idx: np.ndarray
    inject: np.ndarray
    basis_d1: np.ndarray
    basis_d2: np.ndarray
    basis_d4: np.ndarray
    D2c: np.ndarray
    D4c: np.ndarray
    basis_cond: float


def _chebdif(N, maxorder=4):
    """Differentiation matrices of orders 1..maxorder on N+1 CGL nodes.

    Trigonometric-identity construction with the negative-sum diagonal
    correction; the node vector is symmetrized so z = 0 is exact on even
    grids and the set is exactly antisymmetric.
    """
    n = N + 1
    k = np.arange(n)
    theta = np.pi * k / N
    x = np.cos(theta)
    x = 0.5 * (x - x[::-1])
    T = np.tile(theta / 2, (n, 1))
    DX = 2 * np.sin(T.T + T) * np.sin(T - T.T)
    m = (n + 1) // 2
    DX[m:, :] = -np.flipud(np.fliplr(DX[: n - m, :]))
    np.fill_diagonal(DX, 1.0)
    c = np.ones(n)
    c[0] = 2.0
    c[-1] = 2.0
    c = c * (-1.0) ** k
    C = np.outer(c, 1.0 / c)
    Z = 1.0 / DX
    np.fill_diagonal(Z, 0.0)
    D = np.eye(n)
    mats = {}
    for ell in range(1, maxorder + 1):
        D = ell * Z * (C * np.tile(np.diag(D), (n, 1)).T - D)
        np.fill_diagonal(D, 0.0)
        np.fill_diagonal(D, -np.sum(D, axis=1))
        mats[ell] = D.copy()
    return x, mats


def _clencurt(N):
    """Clenshaw-Curtis quadrature weights on the N+1 CGL nodes."""
    theta = np.pi * np.arange(N + 1) / N
    w = np.zeros(N + 1)
    ii = np.arange(1, N)
    v = np.ones(N - 1)
    if N % 2 == 0:
        w[0] = w[N] = 1.0 / (N**2 - 1)
        for kk in range(1, N // 2):
            v -= 2.0 * np.cos(2 * kk * theta[ii]) / (4 * kk**2 - 1)
        v -= np.cos(N * theta[ii]) / (N**2 - 1)
    else:
        w[0] = w[N] = 1.0 / N**2
        for kk in range(1, (N - 1) // 2 + 1):
            v -= 2.0 * np.cos(2 * kk * theta[ii]) / (4 * kk**2 - 1)
    w[ii] = 2.0 * v / N
    return w


def build_operator(N):
    """Build the collocation bundle of order N (8 <= N <= 512)."""
    if not isinstance(N, (int, np.integer)):
        raise ParameterError(f"N must be an integer, got {N!r}")
    if not (N_MIN <= N <= N_MAX):
        raise ParameterError(f"N must lie in [{N_MIN}, {N_MAX}], got {N}")
    x, D = _chebdif(int(N), maxorder=4)
    w = _clencurt(int(N))
    return SpectralOperator(N=int(N), nodes=x, D1=D[1], D2=D[2], D3=D[3],
                            D4=D[4], qweights=w)


def clamped_restrict(op):
    """Clamped-boundary restriction maps for the given operator bundle.

    The N-3 basis functions are (1 - z^2)^2 * T_j, j = 0..N-4, renormalized
    to a cardinal set on the interior nodes (indices 2..N-2).  Wall rows of
    the value and first-derivative tables are set to their exact zeros.
    """
    if not isinstance(op, SpectralOperator):
        raise ParameterError("clamped_restrict expects a SpectralOperator")
    N = op.N
    x = op.nodes
    nm = N - 3
    phi = np.array([3 / 8, 0.0, -1 / 2, 0.0, 1 / 8])  # (1-z^2)^2, Chebyshev coeffs
    V = np.empty((N + 1, nm))
    V1 = np.empty((N + 1, nm))
    V2 = np.empty((N + 1, nm))
    V4 = np.empty((N + 1, nm))
    for j in range(nm):
        cj = np.zeros(j + 1)
        cj[j] = 1.0
        pj = ncheb.chebmul(phi, cj)
        V[:, j] = ncheb.chebval(x, pj)
        V1[:, j] = ncheb.chebval(x, ncheb.chebder(pj, 1))
        V2[:, j] = ncheb.chebval(x, ncheb.chebder(pj, 2))
        V4[:, j] = ncheb.chebval(x, ncheb.chebder(pj, 4))
    for tab in (V, V1):
        tab[0, :] = 0.0
        tab[N, :] = 0.0
    idx = np.arange(2, N - 1)
    Vint = V[idx, :]
    C = np.linalg.solve(Vint, np.eye(nm))
    R = V @ C
    R[idx, :] = np.eye(nm)
    G1 = V1 @ C
    G2 = V2 @ C
    G4 = V4 @ C
    return ClampedMaps(interior_idx=idx, inject=R, basis_d1=G1, basis_d2=G2,
                       basis_d4=G4, D2c=G2[idx, :], D4c=G4[idx, :],
                       basis_cond=float(np.linalg.cond(Vint)))
