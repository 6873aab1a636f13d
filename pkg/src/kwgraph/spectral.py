"""Spectral decomposition of -Delta in the mu-inner product.

The combinatorial Laplacian L = D - W is symmetrized to
M^{-1/2} L M^{-1/2} (M = diag(mu)), decomposed with a dense symmetric
eigensolver, and mapped back through M^{-1/2}, which makes the
eigenvectors exactly mu-orthonormal up to rounding. Eigenvalues are
grouped into distinct values at a relative tolerance; each group's
basis is re-orthonormalized in the mu-inner product and given a
deterministic sign (first nonzero entry positive).

Eigenvalue groups are indexed 0..m-1 with lambda_0 = 0; E_k denotes the
direct sum of the eigenspaces for lambda_1..lambda_k, and E_k^perp its
mu-orthogonal complement inside the mean-zero subspace H.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import mu_inner, project_mean_zero
from .graphs import Graph, as_vertex_function

__all__ = [
    "DEFAULT_GROUPING_TOL",
    "Spectrum",
    "compute_spectrum",
    "poincare_constant",
    "project_Ek",
    "project_Ek_perp",
    "spectrum_from_dict",
    "spectrum_to_dict",
]

DEFAULT_GROUPING_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Distinct eigenvalues of -Delta with mu-orthonormal eigenbases.

    ``bases[k]`` holds the eigenfunctions of the k-th distinct
    eigenvalue as rows, mu-orthonormal across the entire spectrum;
    ``bases[0]`` is the single constant Vol(V)^{-1/2}.
    """

    distinct_eigenvalues: np.ndarray
    multiplicities: np.ndarray
    bases: tuple[np.ndarray, ...]
    grouping_tol: float

    @property
    def num_distinct(self) -> int:
        return len(self.distinct_eigenvalues)

    def eigenvalue(self, k: int) -> float:
        if not 0 <= k < self.num_distinct:
            raise IndexError(f"eigenvalue index {k} out of range 0..{self.num_distinct - 1}")
        return float(self.distinct_eigenvalues[k])

    def basis(self, k: int) -> np.ndarray:
        """Rows spanning the k-th eigenspace."""
        if not 0 <= k < self.num_distinct:
            raise IndexError(f"eigenvalue index {k} out of range 0..{self.num_distinct - 1}")
        return self.bases[k]


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    nonzero = np.flatnonzero(np.abs(v) > 1e-12 * float(np.max(np.abs(v))))
    if len(nonzero) and v[nonzero[0]] < 0:
        return -v
    return v


def _mu_orthonormalize(g: Graph, rows: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt in the mu-inner product, with reorthogonalization."""
    out: list[np.ndarray] = []
    for row in rows:
        v = row.astype(float).copy()
        for _ in range(2):
            for q in out:
                v -= mu_inner(g, v, q) * q
        norm = np.sqrt(mu_inner(g, v, v))
        if norm <= 1e-13:
            raise np.linalg.LinAlgError("rank loss while orthonormalizing an eigenspace")
        out.append(v / norm)
    return np.array(out)


def compute_spectrum(g: Graph, grouping_tol: float = DEFAULT_GROUPING_TOL) -> Spectrum:
    """Eigendecomposition of -Delta on a connected graph.

    Raises ValueError for nonpositive ``grouping_tol`` or when the zero
    eigenvalue is not simple (the graph is disconnected).
    """
    if not grouping_tol > 0:
        raise ValueError(f"grouping_tol must be positive, got {grouping_tol!r}")
    n = g.num_vertices
    weights = np.zeros((n, n))
    ei, ej, ew = g.edge_arrays
    weights[ei, ej] = ew
    weights[ej, ei] = ew
    lap = np.diag(weights.sum(axis=1)) - weights
    inv_sqrt_mu = 1.0 / np.sqrt(g.mu)
    sym = lap * np.outer(inv_sqrt_mu, inv_sqrt_mu)
    sym = 0.5 * (sym + sym.T)
    evals, evecs = np.linalg.eigh(sym)
    vectors = evecs * inv_sqrt_mu[:, None]

    scale = max(float(evals[-1]), 1.0)
    groups: list[list[int]] = [[0]]
    for idx in range(1, n):
        if evals[idx] - evals[groups[-1][-1]] <= grouping_tol * scale:
            groups[-1].append(idx)
        else:
            groups.append([idx])
    if len(groups[0]) != 1:
        raise ValueError(
            "zero eigenvalue is not simple: the graph is disconnected (run validate)"
        )

    distinct = [0.0]
    multiplicities = [1]
    bases: list[np.ndarray] = [np.full((1, n), 1.0 / np.sqrt(g.volume))]
    for group in groups[1:]:
        distinct.append(float(np.mean(evals[group])))
        multiplicities.append(len(group))
        block = _mu_orthonormalize(g, vectors[:, group].T)
        bases.append(np.array([_canonical_sign(row) for row in block]))
    for block in bases:
        block.flags.writeable = False
    return Spectrum(
        distinct_eigenvalues=np.array(distinct),
        multiplicities=np.array(multiplicities, dtype=int),
        bases=tuple(bases),
        grouping_tol=float(grouping_tol),
    )


def project_Ek(spectrum: Spectrum, g: Graph, f, k: int) -> np.ndarray:
    """mu-orthogonal projection onto E_k = span of eigenspaces 1..k."""
    f = as_vertex_function(g, f)
    if not 0 <= k <= spectrum.num_distinct - 1:
        raise ValueError(f"k={k} out of range 0..{spectrum.num_distinct - 1}")
    out = np.zeros_like(f)
    for s in range(1, k + 1):
        basis = spectrum.bases[s]
        out += (basis @ (g.mu * f)) @ basis
    return out


def project_Ek_perp(spectrum: Spectrum, g: Graph, f, k: int) -> np.ndarray:
    """mu-orthogonal projection onto E_k^perp inside the mean-zero subspace.

    For k = 0 this is the plain mean-zero projection.
    """
    f = as_vertex_function(g, f)
    if not 0 <= k <= spectrum.num_distinct - 1:
        raise ValueError(f"k={k} out of range 0..{spectrum.num_distinct - 1}")
    return project_mean_zero(g, f) - project_Ek(spectrum, g, f, k)


def poincare_constant(spectrum: Spectrum) -> float:
    """Sharp Poincare constant C_P = 1/lambda_1 on the mean-zero subspace."""
    if spectrum.num_distinct < 2:
        raise ValueError("graph has a single vertex: no nonzero eigenvalue exists")
    return 1.0 / spectrum.eigenvalue(1)


def spectrum_to_dict(spectrum: Spectrum) -> dict:
    """JSON-ready dict; floats survive a json round-trip bit-exactly."""
    return {
        "distinct_eigenvalues": [float(v) for v in spectrum.distinct_eigenvalues],
        "multiplicities": [int(m) for m in spectrum.multiplicities],
        "bases": [[[float(x) for x in row] for row in block] for block in spectrum.bases],
        "grouping_tol": float(spectrum.grouping_tol),
    }


def spectrum_from_dict(doc: dict) -> Spectrum:
    """Inverse of :func:`spectrum_to_dict`; ignores unknown keys."""
    bases = tuple(np.array(block, dtype=float) for block in doc["bases"])
    for block in bases:
        block.flags.writeable = False
    return Spectrum(
        distinct_eigenvalues=np.array(doc["distinct_eigenvalues"], dtype=float),
        multiplicities=np.array(doc["multiplicities"], dtype=int),
        bases=bases,
        grouping_tol=float(doc["grouping_tol"]),
    )
