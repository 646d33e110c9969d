"""Dense complex Hermitian linear algebra.

Spectral decompositions, generalized matrix powers, tensor-product
bookkeeping, partial traces, Schatten norms, Jordan-Hahn splits, and the
seeded random ensembles used by the verification harness.  Everything here
is plain numpy; matrices are ``complex128`` ndarrays unless wrapped in
:class:`PsdOperator` / :class:`DensityMatrix`, which cache one spectral
decomposition for reuse downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InvalidMatrix, InvalidRank, NotPSD, ShapeMismatch

EPS = float(np.finfo(np.float64).eps)

# Tolerances, relative to matrix scale unless noted.
HERMITICITY_TOL = 1e-10
PSD_TOL = 1e-10
TRACE_TOL = 1e-10
ORTHO_TOL = 1e-10
RECONSTRUCT_TOL = 1e-8
DEGENERACY_TOL = 1e-9


def hermitize(m: np.ndarray) -> np.ndarray:
    """Hermitian part (m + m*)/2."""
    return (m + m.conj().T) / 2.0


def as_matrix(m) -> np.ndarray:
    """Coerce to a square complex matrix, unwrapping spectral wrappers."""
    if isinstance(m, PsdOperator):
        return m.mat
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidMatrix(f"expected a square matrix, got shape {a.shape}")
    return a


def assert_hermitian(m, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Return m as ndarray, raising InvalidMatrix unless m = m* within tol."""
    a = as_matrix(m)
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    dev = float(np.abs(a - a.conj().T).max(initial=0.0))
    if dev > tol * scale:
        raise InvalidMatrix(f"matrix deviates from Hermitian by {dev:.3e} (scale {scale:.3e})")
    return a


def spectral_decompose(m, tol: float = HERMITICITY_TOL):
    """Eigenvalues (ascending) and orthonormal eigenvector columns of a Hermitian m."""
    a = assert_hermitian(m, tol)
    w, v = np.linalg.eigh(hermitize(a))
    return w, v


def default_cutoff(eigs: np.ndarray) -> float:
    """Numerical-rank threshold: dim * eps * largest eigenvalue magnitude."""
    eigs = np.asarray(eigs, dtype=float)
    top = float(np.abs(eigs).max(initial=0.0))
    return len(eigs) * EPS * top


def matrix_power(m, beta: float, cutoff: float | None = None) -> np.ndarray:
    """Generalized power m^beta of a PSD matrix.

    Eigenvalues above ``cutoff`` map to ``lam**beta``; the rest map to 0,
    which realizes the generalized inverse for negative exponents.
    """
    if isinstance(m, PsdOperator):
        return m.power(beta, cutoff)
    w, v = spectral_decompose(m)
    return _power_from_spectrum(w, v, beta, cutoff)


def _power_from_spectrum(w, v, beta, cutoff):
    scale = float(np.abs(w).max(initial=0.0))
    if w.min(initial=0.0) < -PSD_TOL * max(1.0, scale):
        raise NotPSD(f"eigenvalue {w.min():.3e} below -{PSD_TOL:.0e} * scale")
    cut = default_cutoff(w) if cutoff is None else cutoff
    wp = np.where(w > cut, np.clip(w, cut, None), 1.0) ** beta
    wp[w <= cut] = 0.0
    return hermitize((v * wp) @ v.conj().T)


def matrix_function(m, fn, cutoff: float | None = None) -> np.ndarray:
    """Apply a scalar function to the above-cutoff spectrum of Hermitian m."""
    w, v = (m.eigs, m.vecs) if isinstance(m, PsdOperator) else spectral_decompose(m)
    cut = default_cutoff(w) if cutoff is None else cutoff
    keep = w > cut
    fw = np.zeros_like(w)
    fw[keep] = fn(w[keep])
    return hermitize((v * fw) @ v.conj().T)


def singular_values(m) -> np.ndarray:
    return np.linalg.svd(as_matrix(m), compute_uv=False)


def norms(m) -> tuple[float, float, float]:
    """(trace norm, Hilbert-Schmidt norm, operator norm) via singular values."""
    s = singular_values(m)
    return float(s.sum()), float(np.sqrt((s * s).sum())), float(s.max(initial=0.0))


def trace_norm(m) -> float:
    return norms(m)[0]


def hs_norm(m) -> float:
    # Frobenius norm; cheaper than the SVD route and equal to it.
    return float(np.linalg.norm(as_matrix(m)))


def op_norm(m) -> float:
    return float(singular_values(m).max(initial=0.0))


def jordan_hahn(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split Hermitian m = P - Q with P, Q >= 0, PQ = 0, and the projector onto range(P)."""
    w, v = spectral_decompose(m)
    pos = np.clip(w, 0.0, None)
    neg = np.clip(-w, 0.0, None)
    p = hermitize((v * pos) @ v.conj().T)
    q = hermitize((v * neg) @ v.conj().T)
    proj = hermitize((v * (w > 0.0).astype(float)) @ v.conj().T)
    return p, q, proj


def tensor(a, b) -> np.ndarray:
    """Kronecker product in factor order a (x) b."""
    return np.kron(as_matrix(a), as_matrix(b))


@dataclass(frozen=True)
class FactorizedSpace:
    """Ordered tensor factorization of a Hilbert space, e.g. (2, 2, 2) for A|B|C."""

    dims: tuple[int, ...]

    def __post_init__(self):
        if not self.dims or any(int(d) < 1 for d in self.dims):
            raise ShapeMismatch(f"factor dims must be positive integers, got {self.dims}")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    @property
    def nfactors(self) -> int:
        return len(self.dims)

    def check(self, m) -> np.ndarray:
        a = as_matrix(m)
        if a.shape[0] != self.dim:
            raise ShapeMismatch(f"matrix dim {a.shape[0]} != product of factors {self.dims}")
        return a

    def normalize_keep(self, keep) -> tuple[int, ...]:
        keep = tuple(sorted({int(k) for k in (keep if isinstance(keep, Iterable) else (keep,))}))
        if not keep or any(k < 0 or k >= self.nfactors for k in keep):
            raise ShapeMismatch(f"keep set {keep} invalid for {self.nfactors} factors")
        return keep

    def subspace(self, keep) -> "FactorizedSpace":
        keep = self.normalize_keep(keep)
        return FactorizedSpace(tuple(self.dims[k] for k in keep))

    def partial_trace(self, m, keep) -> np.ndarray:
        """Trace out every factor not in ``keep``; result ordered by kept factors."""
        keep = self.normalize_keep(keep)
        a = self.check(m)
        n = self.nfactors
        t = a.reshape(self.dims + self.dims)
        # einsum subscripts: traced factors share a row/col index.
        row = list(range(n))
        col = [i + n if i in keep else i for i in range(n)]
        out = [i for i in keep] + [i + n for i in keep]
        return np.einsum(t, row + col, out).reshape(self.subspace(keep).dim, -1)

    def embed(self, op, slots) -> np.ndarray:
        """Tensor ``op`` (acting on the given factor slots, ascending) with identities elsewhere."""
        slots = self.normalize_keep(slots)
        sub = self.subspace(slots)
        a = sub.check(op)
        n = self.nfactors
        sub_dims = sub.dims
        t = a.reshape(sub_dims + sub_dims)
        operands = [t, [slots[i] for i in range(len(slots))] + [slots[i] + n for i in range(len(slots))]]
        for i in range(n):
            if i not in slots:
                operands += [np.eye(self.dims[i]), [i, i + n]]
        out = list(range(n)) + [i + n for i in range(n)]
        return np.einsum(*operands, out).reshape(self.dim, self.dim)


def partial_trace(m, space: FactorizedSpace, keep) -> np.ndarray:
    """Module-level alias for :meth:`FactorizedSpace.partial_trace`."""
    return space.partial_trace(m, keep)


class PsdOperator:
    """Positive semi-definite operator with a cached spectral decomposition.

    ``eigs`` is ascending and ``vecs`` holds orthonormal eigenvector columns;
    ``cutoff`` is the numerical-rank threshold used for generalized inverses.
    """

    __slots__ = ("mat", "eigs", "vecs", "cutoff")

    def __init__(self, mat, cutoff: float | None = None, psd_tol: float = PSD_TOL):
        a = assert_hermitian(mat)
        w, v = np.linalg.eigh(hermitize(a))
        scale = float(np.abs(w).max(initial=0.0))
        if w.min(initial=0.0) < -psd_tol * max(1.0, scale):
            raise NotPSD(f"eigenvalue {w.min():.3e} below tolerance")
        self.mat = a
        self.eigs = w
        self.vecs = v
        self.cutoff = default_cutoff(w) if cutoff is None else float(cutoff)

    @classmethod
    def wrap(cls, m) -> "PsdOperator":
        return m if isinstance(m, PsdOperator) else cls(m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def trace(self) -> float:
        return float(self.eigs.sum())

    def power(self, beta: float, cutoff: float | None = None) -> np.ndarray:
        cut = self.cutoff if cutoff is None else cutoff
        w = self.eigs
        wp = np.where(w > cut, np.clip(w, cut, None), 1.0) ** beta
        wp[w <= cut] = 0.0
        return hermitize((self.vecs * wp) @ self.vecs.conj().T)

    def sqrt(self) -> np.ndarray:
        return self.power(0.5)

    def pinv(self) -> np.ndarray:
        return self.power(-1.0)

    def support_projector(self) -> np.ndarray:
        keep = (self.eigs > self.cutoff).astype(float)
        return hermitize((self.vecs * keep) @ self.vecs.conj().T)

    def min_positive_eig(self) -> float:
        above = self.eigs[self.eigs > self.cutoff]
        if len(above) == 0:
            raise NotPSD("operator has no eigenvalue above cutoff")
        return float(above[0])

    def max_eig(self) -> float:
        return float(self.eigs[-1])

    def rank(self) -> int:
        return int((self.eigs > self.cutoff).sum())


class DensityMatrix(PsdOperator):
    """Unit-trace PSD matrix (a quantum state), validated on construction."""

    def __init__(self, mat, cutoff: float | None = None,
                 psd_tol: float = PSD_TOL, trace_tol: float = TRACE_TOL):
        super().__init__(mat, cutoff=cutoff, psd_tol=psd_tol)
        tr = self.trace()
        if abs(tr - 1.0) > trace_tol:
            raise InvalidMatrix(f"trace {tr!r} deviates from 1 beyond {trace_tol:.0e}")
        self._validate_spectrum()

    def _validate_spectrum(self):
        v = self.vecs
        gram_dev = float(np.abs(v.conj().T @ v - np.eye(self.dim)).max())
        if gram_dev > ORTHO_TOL * self.dim:
            raise InvalidMatrix(f"eigenvectors not orthonormal (dev {gram_dev:.3e})")
        rec = (v * self.eigs) @ v.conj().T
        rec_dev = float(np.abs(rec - self.mat).max())
        if rec_dev > RECONSTRUCT_TOL * max(1.0, float(np.abs(self.mat).max())):
            raise InvalidMatrix(f"spectral reconstruction off by {rec_dev:.3e}")

    @property
    def spectrum(self) -> list[tuple[float, np.ndarray]]:
        return [(float(self.eigs[i]), self.vecs[:, i]) for i in range(self.dim)]

    def marginal(self, space: FactorizedSpace, keep) -> "DensityMatrix":
        return DensityMatrix(space.partial_trace(self.mat, keep))


# ----------------------------------------------------------------------------
# Seeded random ensembles
# ----------------------------------------------------------------------------

def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _ginibre(rng, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_density(dim: int, rank: int | None = None, seed=None) -> DensityMatrix:
    """State sampled as GG*/Tr(GG*) with G a dim x rank complex Gaussian matrix."""
    rank = dim if rank is None else int(rank)
    if rank < 1 or rank > dim:
        raise InvalidRank(f"rank {rank} outside [1, {dim}]")
    g = _ginibre(as_rng(seed), dim, rank)
    m = g @ g.conj().T
    return DensityMatrix(hermitize(m / np.trace(m).real))


def random_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar unitary via QR of a Gaussian matrix with the R-diagonal phase fix."""
    q, r = np.linalg.qr(_ginibre(as_rng(seed), dim, dim))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_contraction(dim: int, seed=None) -> np.ndarray:
    """Random matrix rescaled to operator norm in (0, 1]."""
    rng = as_rng(seed)
    g = _ginibre(rng, dim, dim)
    s = rng.uniform(0.5, 1.0)
    return g * (s / op_norm(g))


def random_hermitian(dim: int, seed=None, scale: float = 1.0) -> np.ndarray:
    g = _ginibre(as_rng(seed), dim, dim)
    return hermitize(g) * scale


# ----------------------------------------------------------------------------
# JSON exchange format: {"dim": n, "re": [[...]], "im": [[...]]}, row-major
# ----------------------------------------------------------------------------

def matrix_to_json(m) -> dict:
    a = as_matrix(m)
    return {"dim": a.shape[0], "re": a.real.tolist(), "im": a.imag.tolist()}


def matrix_from_json(obj) -> np.ndarray:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidMatrix(f"malformed matrix object: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise InvalidMatrix(f"matrix entries have shape {re.shape}, expected ({dim}, {dim})")
    return re + 1j * im


def save_matrix(path, m):
    with open(path, "w") as fh:
        json.dump(matrix_to_json(m), fh)


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))
