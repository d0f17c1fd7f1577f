"""Dense complex linear algebra for small composite Hilbert spaces.

Everything here works on explicit matrices of side at most ~64. Subsystem
dimensions are carried alongside the matrix and are read left to right as
tensor-factor order, so ``dims=(2, 3)`` is a qubit (A) followed by a
qutrit (B).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

ATOL = 1e-9
# eigenvalues below this are treated as exact zeros (supports, ranks, pseudo-inverses)
ZERO_EIG = 1e-12


class DimensionError(ValueError):
    """Shapes or subsystem signatures do not fit together."""


class InvalidStateError(ValueError):
    """An operator fails the density-matrix (or unit-norm) requirements."""


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _check_dims(dims, side: int) -> tuple[int, ...]:
    if dims is None:
        return (side,)
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DimensionError(f"subsystem dimensions must be positive, got {dims}")
    if prod(dims) != side:
        raise DimensionError(f"dims {dims} do not multiply to {side}")
    return dims


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """Square complex matrix with a subsystem-dimension signature."""

    data: np.ndarray
    dims: tuple[int, ...] | None = None

    # numpy scalars must defer to our operators so dims survive
    __array_ufunc__ = None

    def __post_init__(self):
        data = np.array(self.data, dtype=complex)
        if data.ndim != 2 or data.shape[0] != data.shape[1]:
            raise DimensionError(f"operator must be a square matrix, got shape {data.shape}")
        object.__setattr__(self, "dims", _check_dims(self.dims, data.shape[0]))
        object.__setattr__(self, "data", _frozen(data))

    @property
    def side(self) -> int:
        return self.data.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.data, dtype=dtype)

    def __repr__(self):
        return f"DenseOperator(dims={self.dims},\n{np.array2string(self.data, precision=4)})"

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, DenseOperator):
            if other.dims != self.dims:
                raise DimensionError(f"dims mismatch: {self.dims} vs {other.dims}")
            return other.data
        return np.asarray(other)

    def __add__(self, other):
        return DenseOperator(self.data + self._coerce(other), self.dims)

    __radd__ = __add__

    def __sub__(self, other):
        return DenseOperator(self.data - self._coerce(other), self.dims)

    def __rsub__(self, other):
        return DenseOperator(self._coerce(other) - self.data, self.dims)

    def __neg__(self):
        return DenseOperator(-self.data, self.dims)

    def __mul__(self, scalar):
        if isinstance(scalar, DenseOperator):
            raise TypeError("use @ for operator products")
        return DenseOperator(self.data * scalar, self.dims)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return DenseOperator(self.data / scalar, self.dims)

    def __matmul__(self, other):
        if isinstance(other, PureState):
            return self.data @ other.amplitudes
        return DenseOperator(self.data @ self._coerce(other), self.dims)

    def dag(self) -> DenseOperator:
        return DenseOperator(self.data.conj().T, self.dims)

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def expect(self, rho) -> float:
        """Real part of Tr(rho @ self)."""
        return float(np.real(np.trace(as_operator(rho).data @ self.data)))

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.data - self.data.conj().T)))

    def is_hermitian(self, tol: float = ATOL) -> bool:
        return self.hermiticity_defect() <= tol

    def allclose(self, other, atol: float = 1e-10) -> bool:
        return bool(np.allclose(self.data, self._coerce(other), atol=atol, rtol=0))


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector with a subsystem-dimension signature."""

    amplitudes: np.ndarray
    dims: tuple[int, ...] | None = None

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        nrm = np.linalg.norm(amps)
        if abs(nrm - 1.0) > ATOL:
            raise InvalidStateError(f"state vector has norm {nrm:.12g}, expected 1")
        object.__setattr__(self, "dims", _check_dims(self.dims, amps.size))
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @classmethod
    def normalized(cls, vec, dims=None) -> PureState:
        vec = np.asarray(vec, dtype=complex).reshape(-1)
        nrm = np.linalg.norm(vec)
        if nrm == 0:
            raise InvalidStateError("cannot normalize the zero vector")
        return cls(vec / nrm, dims)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def __repr__(self):
        return f"PureState(dims={self.dims}, {np.array2string(self.amplitudes, precision=4)})"

    @property
    def side(self) -> int:
        return self.amplitudes.size

    def proj(self) -> DenseOperator:
        return DenseOperator(np.outer(self.amplitudes, self.amplitudes.conj()), self.dims)

    def overlap(self, other) -> complex:
        """<self|other>."""
        other = other.amplitudes if isinstance(other, PureState) else np.asarray(other)
        return complex(np.vdot(self.amplitudes, other))

    def fidelity(self, other) -> float:
        """|<self|other>|^2 for a ket, <self|rho|self> for an operator."""
        if isinstance(other, DenseOperator):
            a = self.amplitudes
            return float(np.real(np.vdot(a, other.data @ a)))
        return abs(self.overlap(other)) ** 2


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray  # real, descending
    eigenvectors: np.ndarray  # orthonormal columns

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def eigenspace_projectors(self, tol: float = 1e-9) -> list[tuple[float, np.ndarray]]:
        """Group (near-)degenerate eigenvalues and return (value, projector) pairs.

        Individual eigenvectors inside a degenerate block are arbitrary; the
        projectors are not.
        """
        out = []
        vals, vecs = self.eigenvalues, self.eigenvectors
        start = 0
        for k in range(1, len(vals) + 1):
            if k == len(vals) or abs(vals[k] - vals[start]) > tol:
                block = vecs[:, start:k]
                out.append((float(np.mean(vals[start:k])), block @ block.conj().T))
                start = k
        return out


@dataclass(frozen=True)
class StateReport:
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    tol: float

    @property
    def valid(self) -> bool:
        return (
            self.hermiticity_defect <= self.tol
            and self.trace_defect <= self.tol
            and self.min_eigenvalue >= -self.tol
        )


def as_operator(x, dims=None) -> DenseOperator:
    """Coerce kets, arrays and operators to a DenseOperator (kets become projectors)."""
    if isinstance(x, DenseOperator):
        return x
    if isinstance(x, PureState):
        return x.proj()
    arr = np.asarray(x, dtype=complex)
    if arr.ndim == 1:
        return PureState(arr, dims).proj()
    return DenseOperator(arr, dims)


def basis(d: int, k: int) -> np.ndarray:
    v = np.zeros(d, dtype=complex)
    v[k] = 1.0
    return v


def identity(dims: int | Sequence[int]) -> DenseOperator:
    dims = (dims,) if isinstance(dims, (int, np.integer)) else tuple(dims)
    return DenseOperator(np.eye(prod(dims)), dims)


def maximally_mixed(dims: int | Sequence[int]) -> DenseOperator:
    op = identity(dims)
    return op / op.side


def kron(*factors):
    """Tensor product. Kets stay kets; anything mixed with an operator becomes an operator."""
    if not factors:
        raise ValueError("kron needs at least one factor")
    if all(isinstance(f, PureState) for f in factors):
        amps = factors[0].amplitudes
        dims = list(factors[0].dims)
        for f in factors[1:]:
            amps = np.kron(amps, f.amplitudes)
            dims += f.dims
        return PureState(amps, dims)
    ops = [as_operator(f) for f in factors]
    data = ops[0].data
    dims = list(ops[0].dims)
    for op in ops[1:]:
        data = np.kron(data, op.data)
        dims += op.dims
    return DenseOperator(data, dims)


def _normalize_keep(keep, n: int) -> list[int]:
    if isinstance(keep, (int, np.integer)):
        keep = [int(keep)]
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise DimensionError("keep must be non-empty")
    if keep[0] < 0 or keep[-1] >= n:
        raise DimensionError(f"subsystem index out of range for {n} subsystems: {keep}")
    return keep


def partial_trace(rho, keep: int | Iterable[int]) -> DenseOperator:
    """Trace out every subsystem not listed in ``keep``.

    Kept subsystems stay in their original order, whatever order ``keep``
    is given in.
    """
    rho = as_operator(rho)
    dims = rho.dims
    n = len(dims)
    keep = _normalize_keep(keep, n)
    if n < 2 or len(keep) == n:
        raise DimensionError("keep must be a proper subset of at least two subsystems")
    t = rho.data.reshape(dims + dims)
    cur = n
    for i in reversed(range(n)):
        if i not in keep:
            t = np.trace(t, axis1=i, axis2=i + cur)
            cur -= 1
    kdims = tuple(dims[i] for i in keep)
    side = prod(kdims)
    return DenseOperator(t.reshape(side, side), kdims)


def permute(x, order: Sequence[int]):
    """Reorder tensor factors so that new factor k is old factor ``order[k]``."""
    order = [int(i) for i in order]
    if sorted(order) != list(range(len(x.dims))):
        raise DimensionError(f"{order} is not a permutation of the {len(x.dims)} subsystems")
    new_dims = tuple(x.dims[i] for i in order)
    if isinstance(x, PureState):
        t = x.amplitudes.reshape(x.dims).transpose(order)
        return PureState(t.reshape(-1), new_dims)
    op = as_operator(x)
    n = len(op.dims)
    t = op.data.reshape(op.dims + op.dims).transpose(order + [n + i for i in order])
    return DenseOperator(t.reshape(op.side, op.side), new_dims)


def eig_hermitian(h, tol: float = ATOL) -> EigenDecomposition:
    h = as_operator(h)
    if not h.is_hermitian(tol):
        raise ValueError(f"operator is not Hermitian (defect {h.hermiticity_defect():.3g})")
    herm = 0.5 * (h.data + h.data.conj().T)
    vals, vecs = np.linalg.eigh(herm)
    return EigenDecomposition(_frozen(vals[::-1].copy()), _frozen(vecs[:, ::-1].copy()))


def trace_norm(a, tol: float = ATOL) -> float:
    """Tr|a| for Hermitian ``a``: the sum of absolute eigenvalues."""
    return float(np.sum(np.abs(eig_hermitian(a, tol).eigenvalues)))


def validate_state(m, tol: float = ATOL) -> StateReport:
    """Diagnose how far ``m`` is from being a density matrix. Never raises."""
    m = as_operator(m)
    herm = 0.5 * (m.data + m.data.conj().T)
    min_eig = float(np.linalg.eigvalsh(herm)[0])
    if -tol <= min_eig < 0:
        min_eig = 0.0
    return StateReport(
        hermiticity_defect=m.hermiticity_defect(),
        trace_defect=abs(m.trace() - 1.0),
        min_eigenvalue=min_eig,
        tol=tol,
    )


def require_density(rho, tol: float = ATOL) -> DenseOperator:
    rho = as_operator(rho)
    report = validate_state(rho, tol)
    if not report.valid:
        raise InvalidStateError(
            "not a density matrix: "
            f"hermiticity defect {report.hermiticity_defect:.3g}, "
            f"trace defect {report.trace_defect:.3g}, "
            f"min eigenvalue {report.min_eigenvalue:.3g}"
        )
    return rho


def psd_eigs(rho, tol: float = ATOL) -> np.ndarray:
    """Eigenvalues of a positive semidefinite operator, tiny negatives clamped to zero."""
    vals = eig_hermitian(rho, tol).eigenvalues
    if vals[-1] < -tol:
        raise InvalidStateError(f"operator has eigenvalue {vals[-1]:.3g} < 0")
    return np.clip(vals, 0.0, None)


def psd_power(rho, s: float, cutoff: float = ZERO_EIG) -> DenseOperator:
    """rho**s on the support of rho (eigenvalues below ``cutoff`` map to zero, any s)."""
    rho = as_operator(rho)
    eig = eig_hermitian(rho)
    vals = eig.eigenvalues
    powered = np.zeros_like(vals)
    on = vals > cutoff
    powered[on] = vals[on] ** s
    v = eig.eigenvectors
    return DenseOperator((v * powered) @ v.conj().T, rho.dims)


def support_projector(rho, cutoff: float = ZERO_EIG) -> DenseOperator:
    return psd_power(rho, 0.0, cutoff)


def purify(rho, tol: float = ATOL) -> PureState:
    """Purification sum_k sqrt(p_k) |phi_k> (x) |e_k> with an ancilla of dimension rank(rho)."""
    rho = require_density(rho, tol)
    eig = eig_hermitian(rho)
    keep = eig.eigenvalues > ZERO_EIG
    probs = eig.eigenvalues[keep]
    vecs = eig.eigenvectors[:, keep]
    r = int(keep.sum())
    # column k of vecs times sqrt(p_k), laid out as (system, ancilla)
    psi = (vecs * np.sqrt(probs)).reshape(-1)
    return PureState.normalized(psi, rho.dims + (r,))


# -- JSON wire format -------------------------------------------------------

def to_json(x) -> dict:
    """{"dims": [...], "re": [...], "im": [...]} for operators (2-D) and kets (1-D)."""
    arr = x.data if isinstance(x, DenseOperator) else x.amplitudes
    return {"dims": list(x.dims), "re": arr.real.tolist(), "im": arr.imag.tolist()}


def from_json(obj: dict):
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != im.shape:
        raise DimensionError("real and imaginary parts differ in shape")
    arr = re + 1j * im
    dims = obj.get("dims")
    if arr.ndim == 1:
        return PureState(arr, dims)
    return DenseOperator(arr, dims)
