"""Link invariants from braids: the trace invariant, the colored Jones
polynomial (normalized so the unknot is 1), the Kashaev invariant, and the
closed forms for the figure-eight knot used to cross-check the state sum.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .braid import BraidWord, components, writhe
from .errors import EvaluationError
from .tensorq import (
    EnhancedYB,
    QExponent,
    StateTensor,
    _as_qexp,
    apply_word,
    mu_entry,
    qfact,
    qnum,
    r_entry,
    r_inverse_entry,
)

# columns pushed through the state sum per batch; bounds memory at N^n * CHUNK
COLUMN_CHUNK = 4096
SINGULAR_QNUM = 1e-12


class Method(str, enum.Enum):
    STATE_SUM = "state_sum"
    TANGLE_SCALAR = "tangle_scalar"
    FIG8_DOUBLE_SUM = "fig8_double_sum"
    FIG8_PRODUCT = "fig8_product"
    FIG8_SINGLE_SUM = "fig8_single_sum"


@dataclass(frozen=True)
class InvariantValue:
    value: complex
    N: int
    q: QExponent
    method: Method

    def __complex__(self):
        return complex(self.value)


def _weighted_trace(b: BraidWord, yb: EnhancedYB, open_first: int | None = None) -> complex:
    """sum over basis columns c of <c| Phi(b) W |c>.

    W is mu on every leg, or Id (x) mu^(n-1) with the first leg pinned to
    ``open_first`` when computing the (1,1)-tangle scalar.
    """
    n, N = b.strands, yb.table.N
    total = N ** n
    if open_first is None:
        cols = np.arange(total)
    else:
        cols = open_first * N ** (n - 1) + np.arange(N ** (n - 1))
    digits = np.array(np.unravel_index(cols, (N,) * n))  # shape (n, len(cols))
    log_mu = np.log(yb.mu)
    legs = range(n) if open_first is None else range(1, n)
    weights = np.exp(sum(log_mu[digits[leg]] for leg in legs)) if n > (open_first is not None) \
        else np.ones(len(cols), dtype=complex)
    acc = 0j
    for start in range(0, len(cols), COLUMN_CHUNK):
        chunk = cols[start:start + COLUMN_CHUNK]
        t = StateTensor.basis_columns(n, N, chunk)
        t = apply_word(t, b.letters, yb.table)
        flat = t.data.reshape(total, len(chunk))
        acc += np.sum(flat[chunk, np.arange(len(chunk))] * weights[start:start + COLUMN_CHUNK])
    return complex(acc)


def _crossing_maps(N: int, q: QExponent, dps: int) -> dict:
    """Sparse R and R^-1 at working precision: (k, l) -> [((i, j), coeff), ...]."""
    maps = {}
    for sign, entry in ((1, r_entry), (-1, r_inverse_entry)):
        table = {}
        for k in range(N):
            for l in range(N):
                out = []
                for m in range(N):
                    i, j = (l - m, k + m) if sign > 0 else (l + m, k - m)
                    if not (0 <= i < N and 0 <= j < N):
                        continue
                    c = entry(N, q, i, j, k, l, dps=dps)
                    if c != 0:
                        out.append(((i, j), c))
                table[(k, l)] = out
        maps[sign] = table
    return maps


def _weighted_trace_mp(b: BraidWord, N: int, q: QExponent, dps: int,
                       open_first: int | None = None):
    """Same contraction as :func:`_weighted_trace`, in mpmath at ``dps`` digits.

    Each basis state is pushed through the word as a sparse vector.  Slow, but
    free of the cancellation that limits float64 when the state-sum terms are
    much larger than their total.
    """
    n = b.strands
    with mpmath.workdps(dps):
        maps = _crossing_maps(N, q, dps)
        h = mpmath.mpc(q.h)
        mu = [mpmath.exp((2 * i - N + 1) * h / 2) for i in range(N)]
        firsts = range(N) if open_first is None else [open_first]
        total = mpmath.mpc(0)
        for first in firsts:
            for rest in np.ndindex(*(N,) * (n - 1)):
                state = (first, *rest)
                vec = {state: mpmath.mpc(1)}
                for pos, sign in reversed(b.letters):
                    table = maps[1 if sign > 0 else -1]
                    new = {}
                    for st, amp in vec.items():
                        for (i, j), c in table[(st[pos - 1], st[pos])]:
                            key = st[:pos - 1] + (i, j) + st[pos + 1:]
                            new[key] = new.get(key, 0) + amp * c
                    vec = new
                amp = vec.get(state, 0)
                if amp == 0:
                    continue
                weight = mpmath.mpc(1)
                for leg in range(0 if open_first is None else 1, n):
                    weight *= mu[state[leg]]
                total += amp * weight
        return total


def trace_invariant(b: BraidWord, N: int, q, dps: int | None = None) -> complex:
    """a^(-w) b^(-n) Tr_1(...Tr_n(Phi(b) mu^(tensor n))...) with a = q^((N^2-1)/4), b = 1.

    ``dps`` switches to the mpmath contraction at that many digits; the
    result is still returned as a Python complex.
    """
    q = _as_qexp(q)
    if dps is not None:
        with mpmath.workdps(dps):
            tr = _weighted_trace_mp(b, N, q, dps)
            a = mpmath.exp(mpmath.mpc(q.h) * mpmath.mpf(N * N - 1) / 4)
            return complex(a ** (-writhe(b)) * tr)
    yb = EnhancedYB.colored_jones(N, q)
    tr = _weighted_trace(b, yb)
    return yb.a ** (-writhe(b)) * yb.b ** (-b.strands) * tr


def colored_jones(b: BraidWord, N: int, q, dps: int | None = None) -> InvariantValue:
    """J_N of the closure of ``b`` as trace invariant times {1}/{N}.

    Raises :class:`EvaluationError` where {N} vanishes (q an N-th root of
    unity); use :func:`tangle_scalar` there.  ``dps`` selects the
    arbitrary-precision contraction.
    """
    q = _as_qexp(q)
    denom = qnum(N, q)
    if abs(denom) < SINGULAR_QNUM:
        raise EvaluationError(
            f"{{N}} = 0 at N={N}, h={q.h}; the normalized invariant needs the tangle scalar")
    value = trace_invariant(b, N, q, dps) * qnum(1, q) / denom
    return InvariantValue(value, N, q, Method.STATE_SUM)


def tangle_scalar(b: BraidWord, N: int, q, open_label: int | None = None) -> InvariantValue:
    """J_N of a knot by closing every strand but the first.

    Tr_2(...Tr_n(Phi(b)(Id (x) mu^(n-1)))...) = S Id_V, and J_N = a^(-w) S.
    S is read off the diagonal entry ``open_label`` (default N-1).  No division
    by {N}, so this is valid at q = exp(2 pi i / N).
    """
    if components(b) != 1:
        raise ValueError(f"closure of {str(b)!r} has {components(b)} components, not a knot")
    q = _as_qexp(q)
    yb = EnhancedYB.colored_jones(N, q)
    label = N - 1 if open_label is None else open_label
    if not 0 <= label <= N - 1:
        raise IndexError(f"open-strand label {label} out of range")
    S = _weighted_trace(b, yb, open_first=label)
    return InvariantValue(yb.a ** (-writhe(b)) * S, N, q, Method.TANGLE_SCALAR)


def kashaev(b: BraidWord, N: int) -> complex:
    """<K>_N = J_N(K; exp(2 pi i / N))."""
    if N < 2:
        raise ValueError("Kashaev invariant needs N >= 2")
    return tangle_scalar(b, N, QExponent.root_of_unity(N)).value


def fig8_double_sum(N: int, q) -> complex:
    """Figure-eight J_N as the double sum over labels i >= j of the braid diagram."""
    q = _as_qexp(q)
    total = 0j
    for i in range(N):
        for j in range(i + 1):
            sign = -1 if (N - 1 + i) % 2 else 1
            num = qfact(N - 1, q) * qfact(i, q) * qfact(N - 1 - j, q)
            den = qfact(j, q) ** 2 * qfact(i - j, q) * qfact(N - 1 - i, q)
            expo = (-i - i * i - 2 * i * j - 2 * j * j + 3 * N + 6 * N * i + 2 * N * j - 3 * N * N) / 4
            total += sign * num / den * q.pow(expo)
    return total


def _fig8_log_terms(N: int, q: QExponent) -> np.ndarray:
    """log of the N summands prod_{k<=j} {N-k}{N+k}, j = 0..N-1."""
    k = np.arange(1, N)
    h = q.h
    factors = ((np.exp((N - k) * h / 2) - np.exp(-(N - k) * h / 2))
               * (np.exp((N + k) * h / 2) - np.exp(-(N + k) * h / 2)))
    with np.errstate(divide="ignore"):
        logs = np.log(factors.astype(complex))
    return np.concatenate([[0j], np.cumsum(logs)])


def fig8_product(N: int, q, log: bool = False) -> complex:
    """sum_{j<N} prod_{k=1}^{j} (q^((N-k)/2) - q^(-(N-k)/2))(q^((N+k)/2) - q^(-(N+k)/2)).

    With ``log=True`` returns a logarithm of the sum (imaginary part only
    defined mod 2 pi), evaluated in log space so large N does not overflow.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    q = _as_qexp(q)
    if not log:
        total = 1 + 0j
        running = 1 + 0j
        for k in range(1, N):
            running *= qnum(N - k, q) * qnum(N + k, q)
            total += running
        return total
    terms = _fig8_log_terms(N, q)
    finite = np.isfinite(terms.real)
    terms = terms[finite]
    peak = terms.real.max()
    s = np.sum(np.exp(terms - peak))
    if s == 0:
        return complex(-math.inf, 0.0)
    return complex(peak + cmath.log(s))


def fig8_single_sum(N: int, q) -> complex:
    """(1/{N}) sum_{k<N} {N+k}! / {N-1-k}!."""
    q = _as_qexp(q)
    denom = qnum(N, q)
    if abs(denom) < SINGULAR_QNUM:
        raise EvaluationError(f"{{N}} = 0 at N={N}, h={q.h}; use fig8_product")
    total = 0j
    for k in range(N):
        # {N+k}!/{N-1-k}! = prod_{t=N-k}^{N+k} {t}
        term = 1 + 0j
        for t in range(N - k, N + k + 1):
            term *= qnum(t, q)
        total += term
    return total / denom


def fig8_invariant(N: int, q, method: Method) -> InvariantValue:
    from .braid import FIGURE_EIGHT

    q = _as_qexp(q)
    funcs = {
        Method.STATE_SUM: lambda: colored_jones(FIGURE_EIGHT, N, q).value,
        Method.TANGLE_SCALAR: lambda: tangle_scalar(FIGURE_EIGHT, N, q).value,
        Method.FIG8_DOUBLE_SUM: lambda: fig8_double_sum(N, q),
        Method.FIG8_PRODUCT: lambda: fig8_product(N, q),
        Method.FIG8_SINGLE_SUM: lambda: fig8_single_sum(N, q),
    }
    return InvariantValue(funcs[Method(method)](), N, q, Method(method))


def skein_residual_N2(triple: tuple[BraidWord, BraidWord, BraidWord], q) -> float:
    """|q J2(L+) - q^-1 J2(L-) - (q^(1/2) - q^(-1/2)) J2(L0)|."""
    q = _as_qexp(q)
    plus, minus, zero = (colored_jones(b, 2, q).value for b in triple)
    return abs(q.q * plus - minus / q.q - (q.pow(0.5) - q.pow(-0.5)) * zero)
