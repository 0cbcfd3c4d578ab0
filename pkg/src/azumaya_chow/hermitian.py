"""Finite-dimensional Hermitian inner-product spaces and their canonical isometries.

Conventions used throughout:

* ``h(u, v) = sum_ij u_i * conj(v_j) * G[i, j]``, i.e. linear in the first slot
  and conjugate-linear in the second.  With this choice the Riesz map
  ``v -> h(-, v)`` is conjugate-linear.
* Tensor bases are ordered lexicographically with the left factor major:
  ``e_i (x) f_j`` sits at index ``i * dim(W) + j`` (the ``numpy.kron`` order).
* ``Hom(V, W)`` is identified with ``V^dual (x) W``; the basis vector
  ``e^i (x) f_j`` is the matrix unit ``E_{ji}`` (row ``j``, column ``i``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TOL = 1e-9
EPSILON = 1.0 / 100


class HermitianError(ValueError):
    pass


class NotHermitian(HermitianError):
    pass


class NotPositiveDefinite(HermitianError):
    pass


class DimensionMismatch(HermitianError):
    pass


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class HermitianSpace:
    dim: int
    gram: np.ndarray
    label: str = "V"

    def inner(self, u, v) -> complex:
        u = np.asarray(u, dtype=complex)
        v = np.asarray(v, dtype=complex)
        return complex(u @ self.gram @ np.conj(v))

    def __repr__(self):
        return f"HermitianSpace({self.label!r}, dim={self.dim})"


def make_space(dim: int, gram, label: str = "V", tol: float = TOL) -> HermitianSpace:
    if not isinstance(dim, (int, np.integer)) or dim < 1:
        raise DimensionMismatch(f"dimension must be a positive integer, got {dim!r}")
    g = np.array(gram, dtype=complex)
    if g.shape != (dim, dim):
        raise DimensionMismatch(f"Gram matrix has shape {g.shape}, expected {(dim, dim)}")
    scale = max(1.0, float(np.max(np.abs(g))))
    if np.max(np.abs(g - g.conj().T)) > tol * scale:
        raise NotHermitian(f"Gram matrix of {label} is not Hermitian")
    # symmetrize away round-off so downstream factorizations see an exact Hermitian matrix
    g = (g + g.conj().T) / 2
    try:
        np.linalg.cholesky(g)
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite(f"Gram matrix of {label} is not positive definite") from None
    return HermitianSpace(int(dim), _frozen(g), label)


def random_space(dim: int, seed: int, label: str = "V") -> HermitianSpace:
    """Seeded space with Gram ``B B^* + dim * EPSILON * I``."""
    rng = np.random.default_rng(seed)
    b = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    gram = b @ b.conj().T + dim * EPSILON * np.eye(dim)
    return make_space(dim, gram, label)


def standard_space(dim: int, label: str = "C") -> HermitianSpace:
    return make_space(dim, np.eye(dim), label)


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A matrix between two Hermitian spaces.

    If ``conjugate_linear`` is set the map acts as ``v -> matrix @ conj(v)``.
    """

    src: HermitianSpace
    dst: HermitianSpace
    matrix: np.ndarray
    conjugate_linear: bool = False

    def __post_init__(self):
        m = _frozen(self.matrix)
        if m.shape != (self.dst.dim, self.src.dim):
            raise DimensionMismatch(
                f"matrix shape {m.shape} does not fit {self.src.label} -> {self.dst.label}"
                f" ({self.dst.dim}x{self.src.dim})"
            )
        object.__setattr__(self, "matrix", m)

    def __call__(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=complex)
        return self.matrix @ (np.conj(v) if self.conjugate_linear else v)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """``self o other``; two conjugate-linear factors give a linear map."""
        if other.dst.dim != self.src.dim:
            raise DimensionMismatch(f"cannot compose {self.src.label} <- {other.dst.label}")
        inner = np.conj(other.matrix) if self.conjugate_linear else other.matrix
        return LinearMap(
            other.src,
            self.dst,
            self.matrix @ inner,
            self.conjugate_linear != other.conjugate_linear,
        )

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return self.compose(other)

    def inverse(self) -> "LinearMap":
        inv = np.linalg.inv(self.matrix)
        if self.conjugate_linear:
            inv = np.conj(inv)
        return LinearMap(self.dst, self.src, inv, self.conjugate_linear)


def identity_map(space: HermitianSpace) -> LinearMap:
    return LinearMap(space, space, np.eye(space.dim))


def tensor_maps(f: LinearMap, g: LinearMap) -> LinearMap:
    if f.conjugate_linear != g.conjugate_linear:
        raise HermitianError("cannot tensor a linear with a conjugate-linear map")
    return LinearMap(
        tensor_space(f.src, g.src),
        tensor_space(f.dst, g.dst),
        np.kron(f.matrix, g.matrix),
        f.conjugate_linear,
    )


# ---------------------------------------------------------------------------
# canonical constructions


def _inverse(g: np.ndarray) -> np.ndarray:
    """Inverse with one refinement step carried out in extended precision."""
    x = np.linalg.inv(g).astype(np.clongdouble)
    gl = g.astype(np.clongdouble)
    r = np.eye(len(g), dtype=np.clongdouble) - gl @ x
    return x + x @ r


def riesz(space: HermitianSpace) -> LinearMap:
    # theta(v)(e_i) = h(e_i, v) = sum_j G[i, j] conj(v_j)
    return LinearMap(space, dual_space(space), space.gram, conjugate_linear=True)


def dual_space(space: HermitianSpace) -> HermitianSpace:
    # columns of pre are theta^{-1}(e^i): theta^{-1}(f) = conj(G^{-1} f)
    pre = np.conj(_inverse(space.gram))
    g = space.gram.astype(np.clongdouble)
    n = space.dim
    gram = np.empty((n, n), dtype=np.clongdouble)
    for i in range(n):
        for j in range(n):
            gram[i, j] = np.conj(pre[:, i] @ g @ np.conj(pre[:, j]))
    return make_space(n, gram.astype(complex), f"{space.label}^")


def tensor_space(s1: HermitianSpace, s2: HermitianSpace) -> HermitianSpace:
    return make_space(s1.dim * s2.dim, np.kron(s1.gram, s2.gram), f"({s1.label}*{s2.label})")


def hom_space(s1: HermitianSpace, s2: HermitianSpace) -> HermitianSpace:
    """Metric on ``Hom(s1, s2)`` transported from ``dual(s1) (x) s2``.

    Coordinates of a ``s2.dim x s1.dim`` matrix are given by :func:`hom_vec`.
    """
    t = tensor_space(dual_space(s1), s2)
    return make_space(t.dim, t.gram, f"Hom({s1.label},{s2.label})")


def hom_vec(phi) -> np.ndarray:
    """Coordinates of a matrix in the matrix-unit basis of :func:`hom_space`."""
    return np.asarray(phi, dtype=complex).flatten(order="F")


def hom_unvec(vec, dim_src: int, dim_dst: int) -> np.ndarray:
    return np.asarray(vec, dtype=complex).reshape((dim_dst, dim_src), order="F")


def canonical_iota(space: HermitianSpace) -> LinearMap:
    """The evaluation map into the bidual, as ``theta_{V^} o theta_V``."""
    theta = riesz(space)
    return riesz(theta.dst).compose(theta)


def canonical_alpha(s1: HermitianSpace, s2: HermitianSpace) -> LinearMap:
    """``f (x) g -> (v (x) w -> f(v) g(w))``.

    Column ``i * d2 + j`` (the tensor ``e^i (x) f^j``) is filled by evaluating the
    functional on every ``e_k (x) f_l``; with the lexicographic orderings on both
    sides this gives the identity index map ``i * d2 + j -> i * d2 + j``.
    """
    d1, d2 = s1.dim, s2.dim
    src = tensor_space(dual_space(s1), dual_space(s2))
    dst = dual_space(tensor_space(s1, s2))
    eye1, eye2 = np.eye(d1), np.eye(d2)
    m = np.zeros((d1 * d2, d1 * d2), dtype=complex)
    for i in range(d1):
        for j in range(d2):
            f, g = eye1[i], eye2[j]
            for k in range(d1):
                for l in range(d2):
                    m[k * d2 + l, i * d2 + j] = (f @ eye1[k]) * (g @ eye2[l])
    return LinearMap(src, dst, m)


def canonical_swap(s1: HermitianSpace, s2: HermitianSpace) -> LinearMap:
    d1, d2 = s1.dim, s2.dim
    m = np.zeros((d1 * d2, d1 * d2))
    for i in range(d1):
        for j in range(d2):
            m[j * d1 + i, i * d2 + j] = 1
    return LinearMap(tensor_space(s1, s2), tensor_space(s2, s1), m)


def trace_pairing_map(s1: HermitianSpace, s2: HermitianSpace) -> LinearMap:
    """``phi -> (psi -> tr(psi o phi))`` from ``Hom(s1, s2)`` to ``Hom(s2, s1)^``."""
    d1, d2 = s1.dim, s2.dim
    src = hom_space(s1, s2)
    dst = dual_space(hom_space(s2, s1))
    n = d1 * d2
    m = np.zeros((n, n), dtype=complex)
    basis = np.eye(n)
    for col in range(n):
        phi = hom_unvec(basis[col], d1, d2)
        for row in range(n):
            psi = hom_unvec(basis[row], d2, d1)
            m[row, col] = np.trace(psi @ phi)
    return LinearMap(src, dst, m)


def isometry_residual(f: LinearMap) -> float:
    """Max-norm of ``f^* k - h``.

    A conjugate-linear map is compared against the conjugated source form,
    ``k(f u, f v) = conj(h(u, v))``, which is the isometry property of the Riesz map.
    """
    m = f.matrix
    if m.shape != (f.dst.dim, f.src.dim):
        raise DimensionMismatch("matrix does not fit its spaces")
    pulled = m.T @ f.dst.gram @ np.conj(m)
    target = np.conj(f.src.gram) if f.conjugate_linear else f.src.gram
    return float(np.max(np.abs(pulled - target)))


def natiso_map(e: HermitianSpace, m: HermitianSpace, n: HermitianSpace) -> LinearMap:
    """``E^ (x) E (x) M'^ (x) N'  ->  (E (x) M')^ (x) E (x) N'``.

    Built as ``(alpha_{E,M'} (x) 1 (x) 1) o (1 (x) swap(E, M'^) (x) 1)``.
    """
    e_dual, m_dual = dual_space(e), dual_space(m)
    step1 = tensor_maps(
        tensor_maps(identity_map(e_dual), canonical_swap(e, m_dual)), identity_map(n)
    )
    step2 = tensor_maps(
        tensor_maps(canonical_alpha(e, m), identity_map(e)), identity_map(n)
    )
    return step2.compose(step1)


def natiso_residual(e: HermitianSpace, m: HermitianSpace, n: HermitianSpace) -> float:
    return isometry_residual(natiso_map(e, m, n))


def bidual_residual(space: HermitianSpace) -> float:
    return float(np.max(np.abs(dual_space(dual_space(space)).gram - space.gram)))


def riesz_roundtrip_residual(space: HermitianSpace) -> float:
    theta = riesz(space)
    round_trip = theta.inverse().compose(theta)
    return float(np.max(np.abs(round_trip.matrix - np.eye(space.dim))))


# ---------------------------------------------------------------------------
# JSON


def matrix_to_json(m) -> list:
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in data], dtype=complex)
