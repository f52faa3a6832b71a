"""The swap-based local deleting machine and its closed-form bound, the
global deleting construction, and the Schmidt-rank obstruction to local
deleting.

Deleting works on two copies of a|00> + b|11> held as (A, B) and (A', B');
the only closed local operations are local unitaries, so the machine here is
the unitary that swaps A with A' at Alice's side.  Its quality is the mean
of two relative-entropy terms: kept copy against the input, and the best
admissible separable target against the deleted copy.  For pure inputs the
admissible targets are the pure product states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg as la
from .qstate import (
    Ket,
    LabeledState,
    SchmidtPair,
    basis_ket,
    dm_from_ket,
    entropy_of_entanglement,
    relative_entropy,
    schmidt_decompose,
    schmidt_ket,
    trace_out,
)

TWO_COPY_LABELS = ("A", "B", "A'", "B'")
# surrogate weight steering the product search back onto the support
_OFF_SUPPORT_WEIGHT = 1e6
_PRODUCT_RESTARTS = 20
_PRODUCT_ITERATIONS = 30


@dataclass(frozen=True, eq=False)
class DeleteOutcome:
    """Outputs and quality terms of one run of the swap deleting machine.

    ``objective`` is the arithmetic mean of ``term_keep`` (kept copy vs the
    input) and ``term_separable`` (best pure product target vs the deleted
    copy), both in bits.
    """

    out_ab: LabeledState
    out_apbp: LabeledState
    term_keep: float
    term_separable: float
    objective: float


def two_copy_ket(pair: SchmidtPair) -> Ket:
    """psi (x) psi on registers (A, B, A', B')."""
    psi = schmidt_ket(pair)
    return Ket(np.kron(psi.amplitudes, psi.amplitudes), (2, 2, 2, 2))


def local_delete_swap(pair: SchmidtPair) -> DeleteOutcome:
    """Apply the swap deleter to two copies of a|00> + b|11>.

    Swapping A with A' and tracing either pair leaves diag(a^4, a^2 b^2,
    a^2 b^2, b^4) at both (A, B) and (A', B'); the inner minimisation over
    pure product targets is attained at |11> (for b >= a), giving the
    closed-form objective E(psi) - 2 log2(b).
    """
    ket = two_copy_ket(pair)
    swapped = la.permute_ket(ket.amplitudes, ket.dims, (2, 1, 0, 3))
    zeta = LabeledState(np.outer(swapped, swapped.conj()), ket.dims, TWO_COPY_LABELS)
    out_ab = trace_out(zeta, ("A'", "B'"))
    out_apbp = trace_out(zeta, ("A", "B"))
    term_keep = relative_entropy(dm_from_ket(schmidt_ket(pair)), out_ab)
    term_separable, _ = min_over_product_pure(out_apbp)
    return DeleteOutcome(
        out_ab=out_ab,
        out_apbp=out_apbp,
        term_keep=term_keep,
        term_separable=term_separable,
        objective=0.5 * (term_keep + term_separable),
    )


def delete_bound(pair: SchmidtPair) -> float:
    """Closed-form deleting bound E(psi) - 2 log2(b), in bits.

    Requires the convention b >= a; equals the swap deleter's objective.
    """
    if pair.a > pair.b + 1e-9:
        raise ValueError(f"convention b >= a violated: a = {pair.a}, b = {pair.b}")
    return entropy_of_entanglement(schmidt_ket(pair)) - 2.0 * math.log2(pair.b)


def _batched_top_eigvec(mflat: np.ndarray) -> np.ndarray:
    """Top eigenvector of each 2x2 Hermitian matrix in a flattened
    (R, 4) = [m00, m01, m10, m11] batch."""
    p = mflat[:, 0].real
    r = mflat[:, 3].real
    q = mflat[:, 1]
    q_sq = q.real * q.real + q.imag * q.imag
    gap = 0.5 * (r - p) + np.sqrt((0.5 * (p - r)) ** 2 + q_sq)  # top eigenvalue - p
    norm_sq = q_sq + gap * gap
    # norm ~ 0 means (nearly) diagonal with p >= r: the top eigenvector is e0
    degenerate = norm_sq < 1e-28
    vecs = np.empty((mflat.shape[0], 2), dtype=complex)
    vecs[:, 0] = np.where(degenerate, 1.0, q)
    vecs[:, 1] = np.where(degenerate, 0.0, gap)
    vecs *= 1.0 / np.sqrt(np.where(degenerate, 1.0, norm_sq))[:, None]
    return vecs


def _pair_weights(vecs: np.ndarray) -> np.ndarray:
    """(R, 4) outer products conj(v_i) v_k, flattened over (i, k)."""
    return (vecs.conj()[:, :, None] * vecs[:, None, :]).reshape(-1, 4)


def _min_product_pure_matrix(matrix: np.ndarray, restarts: int = _PRODUCT_RESTARTS):
    """Array-level core of :func:`min_over_product_pure`.

    Maximises <xy|G|xy> with G = log2(rho)|_support - W (I - P_support) by
    alternating exact 2x2 eigenvector updates on the two Bloch pairs, from
    the four computational product corners plus seeded random starts.
    Returns ``(value, x, y)`` with value = +inf when no product state lies
    in the support.
    """
    log_rho, projector = la.matrix_log2_on_support(matrix)
    complement = np.eye(4) - projector
    full_rank = float(np.max(np.abs(complement))) < 1e-12
    surrogate = log_rho if full_rank else log_rho - _OFF_SUPPORT_WEIGHT * complement
    g4 = surrogate.reshape(2, 2, 2, 2)
    # x-update: M_x[r] = sum_jl conj(y_j) y_l G[i,j,k,l]; row (i,k), col (j,l)
    gx = np.ascontiguousarray(g4.transpose(0, 2, 1, 3).reshape(4, 4))
    # y-update: rows (j,l), cols (i,k)
    gy = np.ascontiguousarray(g4.transpose(1, 3, 0, 2).reshape(4, 4))

    rng = np.random.default_rng(0)
    n_random = max(0, int(restarts))
    xs = np.zeros((4 + n_random, 2), dtype=complex)
    ys = np.zeros((4 + n_random, 2), dtype=complex)
    corners = [(0, 0), (0, 1), (1, 0), (1, 1)]
    for k, (i, j) in enumerate(corners):
        xs[k, i] = 1.0
        ys[k, j] = 1.0
    if n_random:
        raw = rng.standard_normal((2, n_random, 2, 2))
        xs[4:] = raw[0, :, :, 0] + 1j * raw[0, :, :, 1]
        ys[4:] = raw[1, :, :, 0] + 1j * raw[1, :, :, 1]
        xs[4:] /= np.linalg.norm(xs[4:], axis=1)[:, None]
        ys[4:] /= np.linalg.norm(ys[4:], axis=1)[:, None]

    previous = ys.copy()
    for iteration in range(_PRODUCT_ITERATIONS):
        xs = _batched_top_eigvec(_pair_weights(ys) @ gx.T)
        ys = _batched_top_eigvec(_pair_weights(xs) @ gy.T)
        if iteration >= 2:
            if float(np.max(np.abs(ys - previous))) < 1e-13:
                break
            previous = ys.copy()
        else:
            previous = ys.copy()

    w_x = _pair_weights(xs)
    w_y = _pair_weights(ys)
    lx = log_rho.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    qx = complement.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    values = -np.sum(w_x * (w_y @ lx.T), axis=1).real
    leaks = np.sum(w_x * (w_y @ qx.T), axis=1).real
    valid = leaks <= 1e-10
    if not np.any(valid):
        best = int(np.argmin(leaks))
        return math.inf, xs[best], ys[best]
    values = np.where(valid, values, math.inf)
    best = int(np.argmin(values))
    return float(values[best]), xs[best], ys[best]


def min_over_product_pure(state: LabeledState, restarts: int = _PRODUCT_RESTARTS):
    """Minimise S(|xy><xy| | rho) over pure product kets |x>(x)|y>.

    For a pure target the relative entropy reduces to -<xy| log2 rho |xy>,
    infinite when |xy> leaves the support of rho.  Returns ``(value,
    argmin_ket)``; the value is ``math.inf`` when every product direction
    meets a zero eigenvalue.
    """
    if state.dims != (2, 2):
        raise ValueError(f"two-qubit state required, got dims {state.dims}")
    value, x, y = _min_product_pure_matrix(state.matrix, restarts)
    return value, Ket(np.kron(x, y), (2, 2))


def global_delete(rho_ab: LabeledState, rho_apbp: LabeledState) -> LabeledState:
    """Delete the second of two equal copies with a global (closed) map.

    The (A, B) factor is untouched; each eigenvector of the deleted copy is
    sent to a computational product basis vector, eigenvalues assigned in
    descending order to |00>, |01>, |10>, |11> (row-major).  The output
    (A', B') marginal is therefore product-basis diagonal -- separable --
    with the spectrum of the input copy.
    """
    if rho_ab.dims != rho_apbp.dims:
        raise ValueError(f"dimension mismatch: {rho_ab.dims} vs {rho_apbp.dims}")
    if len(rho_apbp.dims) != 2:
        raise ValueError("the deleted copy must be bipartite")
    gap = float(np.max(np.abs(rho_ab.matrix - rho_apbp.matrix)))
    if gap > 1e-10:
        raise ValueError(f"equal copies required: max elementwise gap {gap:.3e}")
    values, _ = la.hermitian_eig(rho_apbp.matrix)
    spectrum = np.clip(values[::-1], 0.0, None)
    deleted = np.diag(spectrum.astype(complex))
    return LabeledState(
        la.kron(rho_ab.matrix, deleted),
        rho_ab.dims + rho_apbp.dims,
        rho_ab.labels + rho_apbp.labels,
    )


class SchmidtRankCheck(NamedTuple):
    rank_input: int
    rank_target: int
    deletable: bool


def schmidt_rank_nogo_check(pair: SchmidtPair) -> SchmidtRankCheck:
    """Compare Schmidt ranks across AA':BB' before and after ideal deleting.

    Two copies of an entangled a|00> + b|11> have rank 4 across the cut,
    while the deleted target psi (x) |0'> (x) |0''> has rank 2; local
    unitaries preserve the rank, so deleting is impossible whenever the
    ranks differ.  In the product limit both ranks are 1.
    """
    cut = ((0, 2), (1, 3))
    rank_input = schmidt_decompose(two_copy_ket(pair), cut).rank
    psi = schmidt_ket(pair)
    blank = basis_ket((2, 2), (0, 0))
    target = Ket(np.kron(psi.amplitudes, blank.amplitudes), (2, 2, 2, 2))
    rank_target = schmidt_decompose(target, cut).rank
    return SchmidtRankCheck(rank_input, rank_target, rank_input == rank_target)
