"""q-numbers, the sl2 R-matrix of the N-dimensional representation, and a
banded contraction engine for braid operators on V^(tensor n).

The deformation parameter is always carried as its logarithm ``h`` with
``q = exp(h)``, so every fractional power ``q**r`` means ``exp(r*h)``.

Index conventions: ``R(e_k (x) e_l) = sum_{i,j} R[i,j,k,l] e_i (x) e_j``.  For R
the only nonzero entries have ``m = l - i = j - k >= 0``; for the inverse
``m = i - l = k - j >= 0``.  Both are banded in ``i + j = k + l``, which is what
:func:`apply_crossing` exploits.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property

import mpmath
import numpy as np

# above this color the q-factorial ratios are accumulated as log-magnitude + phase
LOG_SPACE_MIN_N = 65


@dataclass(frozen=True)
class QExponent:
    h: complex

    def __post_init__(self):
        h = complex(self.h)
        if not (math.isfinite(h.real) and math.isfinite(h.imag)):
            raise ValueError(f"q-exponent must be finite, got {self.h!r}")
        object.__setattr__(self, "h", h)

    @classmethod
    def root_of_unity(cls, N: int) -> QExponent:
        """q = exp(2 pi i / N)."""
        return cls(2j * math.pi / N)

    @classmethod
    def deformed(cls, u: complex, N: int) -> QExponent:
        """q = exp((u + 2 pi i) / N)."""
        return cls((complex(u) + 2j * math.pi) / N)

    @property
    def q(self) -> complex:
        return cmath.exp(self.h)

    def pow(self, r) -> complex:
        return cmath.exp(r * self.h)


def _as_qexp(q) -> QExponent:
    return q if isinstance(q, QExponent) else QExponent(q)


def qnum(m: int, q) -> complex:
    """{m} = q^(m/2) - q^(-m/2)."""
    h = _as_qexp(q).h
    return cmath.exp(m * h / 2) - cmath.exp(-m * h / 2)


def qfact(m: int, q) -> complex:
    """{m}! = {1}{2}...{m}, with {0}! = 1."""
    if m < 0:
        raise ValueError(f"q-factorial of negative integer {m}")
    q = _as_qexp(q)
    out = 1 + 0j
    for t in range(1, m + 1):
        out *= qnum(t, q)
    return out


def _qnum_ratio_product(a: int, b: int, m: int, q: QExponent, dps=None):
    """prod_{s=1}^{m} {a+s}{b+s}/{s}.

    This is {a+m}!{b+m}!/({a}!{b}!{m}!) with no factorial ever formed, so no
    {N} = 0 factor can appear at roots of unity.
    """
    if dps is not None:
        with mpmath.workdps(dps):
            h = mpmath.mpc(q.h)
            qn = lambda t: mpmath.exp(t * h / 2) - mpmath.exp(-t * h / 2)
            out = mpmath.mpc(1)
            for s in range(1, m + 1):
                out *= qn(a + s) * qn(b + s) / qn(s)
            return out
    if max(a, b) + m < LOG_SPACE_MIN_N:
        out = 1 + 0j
        for s in range(1, m + 1):
            out *= qnum(a + s, q) * qnum(b + s, q) / qnum(s, q)
        return out
    log_mag = 0.0
    phase = 0.0
    for s in range(1, m + 1):
        for t, power in ((a + s, 1), (b + s, 1), (s, -1)):
            z = qnum(t, q)
            log_mag += power * math.log(abs(z))
            phase += power * cmath.phase(z)
    return cmath.rect(math.exp(log_mag), phase)


def _check_index(N: int, *idx: int) -> None:
    for i in idx:
        if not 0 <= i <= N - 1:
            raise IndexError(f"basis index {i} out of range [0, {N - 1}]")


def r_entry(N: int, q, i: int, j: int, k: int, l: int, dps=None) -> complex:
    """Coefficient of e_i (x) e_j in R(e_k (x) e_l)."""
    _check_index(N, i, j, k, l)
    q = _as_qexp(q)
    m = l - i
    if m < 0 or j - k != m or m > min(N - 1 - i, j):
        return mpmath.mpc(0) if dps is not None else 0j
    c = (N - 1) / 2
    expo = (i - c) * (j - c) - m * (i - j) / 2 - m * (m + 1) / 4
    coeff = _qnum_ratio_product(i, N - 1 - j, m, q, dps)
    if dps is not None:
        with mpmath.workdps(dps):
            return coeff * mpmath.exp(expo * mpmath.mpc(q.h))
    return coeff * q.pow(expo)


def r_inverse_entry(N: int, q, i: int, j: int, k: int, l: int, dps=None) -> complex:
    """Coefficient of e_i (x) e_j in R^-1(e_k (x) e_l)."""
    _check_index(N, i, j, k, l)
    q = _as_qexp(q)
    m = i - l
    # nonzero only for m <= min(i, N-1-j), the range where both factorials exist
    if m < 0 or k - j != m or m > min(i, N - 1 - j):
        return mpmath.mpc(0) if dps is not None else 0j
    c = (N - 1) / 2
    expo = -(i - c) * (j - c) - m * (i - j) / 2 + m * (m + 1) / 4
    coeff = _qnum_ratio_product(j, N - 1 - i, m, q, dps)
    sign = -1 if m % 2 else 1
    if dps is not None:
        with mpmath.workdps(dps):
            return sign * coeff * mpmath.exp(expo * mpmath.mpc(q.h))
    return sign * coeff * q.pow(expo)


def mu_entry(N: int, q, i: int) -> complex:
    _check_index(N, i)
    return _as_qexp(q).pow((2 * i - N + 1) / 2)


def mu_diagonal(N: int, q) -> np.ndarray:
    h = _as_qexp(q).h
    return np.exp((2 * np.arange(N) - N + 1) / 2 * h)


@dataclass(frozen=True)
class RMatrixTable:
    """Band storage of R and R^-1 for fixed (N, q).

    ``bands(sign)[m]`` is an N x N array ``C[k, l]`` holding the coefficient
    that sends e_k (x) e_l to e_{l-m} (x) e_{k+m} (R) or e_{l+m} (x) e_{k-m}
    (R^-1); entries with no valid target are zero.  Total storage O(N^3).
    """

    N: int
    q: QExponent

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"color dimension must be >= 1, got {self.N}")
        object.__setattr__(self, "q", _as_qexp(self.q))

    def entry(self, sign: int, i: int, j: int, k: int, l: int) -> complex:
        f = r_entry if sign > 0 else r_inverse_entry
        return f(self.N, self.q, i, j, k, l)

    @cached_property
    def _bands_pos(self) -> np.ndarray:
        N = self.N
        C = np.zeros((N, N, N), dtype=complex)
        for m in range(N):
            for k in range(N - m):
                for l in range(m, N):
                    C[m, k, l] = r_entry(N, self.q, l - m, k + m, k, l)
        return C

    @cached_property
    def _bands_neg(self) -> np.ndarray:
        N = self.N
        C = np.zeros((N, N, N), dtype=complex)
        for m in range(N):
            for k in range(m, N):
                for l in range(N - m):
                    C[m, k, l] = r_inverse_entry(N, self.q, l + m, k - m, k, l)
        return C

    def bands(self, sign: int) -> np.ndarray:
        return self._bands_pos if sign > 0 else self._bands_neg

    def dense(self, sign: int = 1) -> np.ndarray:
        """R (or R^-1) as an N^2 x N^2 matrix, row (i, j), column (k, l)."""
        N = self.N
        M = np.zeros((N, N, N, N), dtype=complex)
        for i in range(N):
            for j in range(N):
                for k in range(N):
                    l = i + j - k
                    if 0 <= l < N:
                        M[i, j, k, l] = self.entry(sign, i, j, k, l)
        return M.reshape(N * N, N * N)


@dataclass(frozen=True)
class EnhancedYB:
    """The quadruple (R, mu, a, b) with a = q^((N^2-1)/4), b = 1."""

    table: RMatrixTable
    mu: np.ndarray = field(repr=False)
    a: complex
    b: complex = 1 + 0j

    @classmethod
    def colored_jones(cls, N: int, q) -> EnhancedYB:
        q = _as_qexp(q)
        return cls(RMatrixTable(N, q), mu_diagonal(N, q), q.pow((N * N - 1) / 4), 1 + 0j)


@dataclass(frozen=True)
class StateTensor:
    """Vector (or batch of vectors) in V^(tensor legs).

    ``data`` has shape ``(N,)*legs + batch``.  An operator on V^(tensor n) is
    the batch of its columns: ``batch == (N,)*n`` indexes the input basis
    vector, see :meth:`identity_operator`.
    """

    legs: int
    dim: int
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.data.shape[:self.legs] != (self.dim,) * self.legs:
            raise ValueError(
                f"data shape {self.data.shape} does not start with {self.legs} legs of size {self.dim}")

    @property
    def batch_shape(self) -> tuple[int, ...]:
        return self.data.shape[self.legs:]

    @property
    def is_operator(self) -> bool:
        return self.batch_shape == (self.dim,) * self.legs

    @classmethod
    def identity_operator(cls, legs: int, dim: int) -> StateTensor:
        eye = np.eye(dim ** legs, dtype=complex) if legs else np.ones((), dtype=complex)
        return cls(legs, dim, eye.reshape((dim,) * (2 * legs)))

    @classmethod
    def basis_columns(cls, legs: int, dim: int, columns: np.ndarray) -> StateTensor:
        """Batch of basis vectors e_c for flat indices ``columns``."""
        data = np.zeros((dim ** legs, len(columns)), dtype=complex)
        data[columns, np.arange(len(columns))] = 1
        return cls(legs, dim, data.reshape((dim,) * legs + (len(columns),)))

    def as_matrix(self) -> np.ndarray:
        n, N = self.legs, self.dim
        return self.data.reshape(N ** n, -1)


def apply_crossing(t: StateTensor, pos: int, sign: int, table: RMatrixTable) -> StateTensor:
    """Apply R^(+-1) on legs ``pos, pos+1`` (1-based) of every vector in the batch.

    Only the N bands of the R-matrix are touched, so the cost is O(N^(n+1))
    per vector instead of the dense O(N^(n+2)).
    """
    n, N = t.legs, t.dim
    if not 1 <= pos <= n - 1:
        raise IndexError(f"crossing position {pos} out of range for {n} legs")
    if table.N != N:
        raise ValueError(f"table dimension {table.N} does not match tensor dimension {N}")
    X = np.moveaxis(t.data, (pos - 1, pos), (0, 1))
    out = np.zeros_like(X)
    C = table.bands(sign)
    extra = (None,) * (X.ndim - 2)
    for m in range(N):
        Y = (C[m][(...,) + extra] * X).swapaxes(0, 1)  # Y[l, k] = C[k, l] X[k, l]
        if sign > 0:
            out[0:N - m, m:N] += Y[m:N, 0:N - m]
        else:
            out[m:N, 0:N - m] += Y[0:N - m, m:N]
    return StateTensor(n, N, np.moveaxis(out, (0, 1), (pos - 1, pos)))


def apply_diagonal(t: StateTensor, leg: int, diag: np.ndarray) -> StateTensor:
    """Multiply output leg ``leg`` (1-based) by a diagonal matrix."""
    shape = [1] * t.data.ndim
    shape[leg - 1] = t.dim
    return StateTensor(t.legs, t.dim, t.data * diag.reshape(shape))


def apply_word(t: StateTensor, letters, table: RMatrixTable) -> StateTensor:
    """Apply Phi(word) = M(letter_1) M(letter_2) ... : the last letter acts first."""
    for index, sign in reversed(tuple(letters)):
        t = apply_crossing(t, index, sign, table)
    return t


def partial_trace_last(t: StateTensor, weight: np.ndarray | None = None) -> StateTensor | complex:
    """Tr_n of an operator on V^(tensor n), optionally as Tr_n(X (Id (x) weight)).

    Returns an operator on n - 1 legs, or the scalar trace when n == 1.
    """
    n, N = t.legs, t.dim
    if n == 0:
        raise ValueError("cannot trace an operator with no legs")
    if not t.is_operator:
        raise ValueError("partial trace needs an operator (batch indexed by input legs)")
    data = t.data
    if weight is not None:
        shape = [1] * data.ndim
        shape[2 * n - 1] = N
        data = data * np.asarray(weight).reshape(shape)
    reduced = np.trace(data, axis1=n - 1, axis2=2 * n - 1)
    if n == 1:
        return complex(reduced)
    return StateTensor(n - 1, N, reduced)


def dense_operator(N: int, n: int, pos: int, sign: int, table: RMatrixTable) -> np.ndarray:
    """Id^(pos-1) (x) R^(+-1) (x) Id^(n-pos-1) as an N^n x N^n matrix (oracle path)."""
    R = table.dense(sign)
    return np.kron(np.kron(np.eye(N ** (pos - 1)), R), np.eye(N ** (n - pos - 1)))


def verify_yang_baxter(N: int, q) -> float:
    table = RMatrixTable(N, _as_qexp(q))
    R = table.dense(1)
    eye = np.eye(N)
    R12 = np.kron(R, eye)
    R23 = np.kron(eye, R)
    return float(np.max(np.abs(R12 @ R23 @ R12 - R23 @ R12 @ R23), initial=0.0))


def verify_mu_commutation(N: int, q) -> float:
    q = _as_qexp(q)
    R = RMatrixTable(N, q).dense(1)
    mm = np.diag(np.kron(mu_diagonal(N, q), mu_diagonal(N, q)))
    return float(np.max(np.abs(R @ mm - mm @ R), initial=0.0))


def verify_trace_axiom(N: int, q) -> float:
    """max over sign of |Tr_2(R^(+-1)(Id (x) mu)) - a^(+-1) Id|."""
    yb = EnhancedYB.colored_jones(N, q)
    worst = 0.0
    for sign in (1, -1):
        R = yb.table.dense(sign).reshape(N, N, N, N)
        op = StateTensor(2, N, R)
        reduced = partial_trace_last(op, yb.mu)
        target = yb.a ** sign * np.eye(N)
        worst = max(worst, float(np.max(np.abs(reduced.data - target))))
    return worst
