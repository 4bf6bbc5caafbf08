"""Two-qubit concurrence and the three-qubit concurrence-fill measure.

wootters_concurrence implements the standard mixed-state construction:
eigenvalues of rho (sy x sy) rho* (sy x sy), square-rooted in descending
order lam1 >= ... >= lam4, C = max(0, l1 - l2 - l3 - l4).

concurrence_fill treats the three squared one-to-other concurrences
C^2_{i(jk)} = 2 (1 - Tr rho_i^2) as triangle sides and returns the
normalized Heron area

    F = [ (16/3) Q (Q - a)(Q - b)(Q - c) ]^(1/4),   Q = (a + b + c)/2,

which is 1 on the GHZ state, 8/9 on the W state and 0 on product states.

Inputs with trace below one (produced by the non-recycled spontaneous-loss
model) are renormalized to the conditional no-loss state before either
measure is evaluated.
"""

from __future__ import annotations

import numpy as np

from .qubit_algebra import EmitterRegister, partial_trace

__all__ = ["wootters_concurrence", "one_to_other_c2", "concurrence_fill"]

# sigma_y (x) sigma_y in the computational basis; real, so it conjugates freely
_SPIN_FLIP = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ],
    dtype=complex,
)

_TRACE_TOL = 1e-6
_HERM_TOL = 1e-6
_PSD_TOL = -1e-8


def _validate_state(rho: np.ndarray, dim: int, check_psd: bool) -> float:
    """Sanity-check a density matrix and return its trace.

    Loss models (spontaneous emission without a recycling term) legitimately
    shrink the trace below one, so any trace in (0, 1] is accepted and the
    caller renormalizes to the conditional state.
    """
    if rho.shape != (dim, dim):
        raise ValueError(f"state has shape {rho.shape}, expected {(dim, dim)}")
    herm_defect = np.max(np.abs(rho - rho.conj().T))
    if herm_defect > _HERM_TOL:
        raise ValueError(f"state not hermitian (defect {herm_defect:.3e})")
    tr = np.trace(rho).real
    if not 0.0 < tr <= 1.0 + _TRACE_TOL:
        raise ValueError(f"state trace {tr} is not in (0, 1]")
    if check_psd:
        min_eig = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()
        if min_eig < _PSD_TOL * max(tr, _TRACE_TOL):
            raise ValueError(f"state not positive semidefinite (min eig {min_eig:.3e})")
    return tr


def wootters_concurrence(rho: np.ndarray) -> float:
    """Concurrence of a two-qubit density matrix, in [0, 1]."""
    tr = _validate_state(rho, 4, check_psd=True)
    rho = rho / tr
    flipped = rho @ _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    lams = np.linalg.eigvals(flipped).real
    lams[lams < 0.0] = 0.0  # roundoff only; spectrum is nonnegative in exact arithmetic
    roots = np.sort(np.sqrt(lams))[::-1]
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def one_to_other_c2(rho3: np.ndarray, i: int) -> float:
    """Squared concurrence across the bipartition {qubit i} vs {other two},
    from the purity of the reduced single-qubit state: 2 (1 - Tr rho_i^2)."""
    tr = _validate_state(rho3, 8, check_psd=False)
    if i not in (1, 2, 3):
        raise ValueError(f"qubit index must be 1, 2 or 3, got {i}")
    rho_i = partial_trace(rho3 / tr, EmitterRegister(3), {i})
    purity = np.trace(rho_i @ rho_i).real
    return float(2.0 * (1.0 - purity))


def concurrence_fill(rho3: np.ndarray) -> float:
    """Genuine tripartite entanglement of a three-qubit state, in [0, 1].

    The triangle inequality among the squared one-to-other concurrences is
    guaranteed for pure states only; a sufficiently mixed state can push one
    side past the sum of the other two (strongly chirally damped chains do
    this at late times).  The Heron factors are clamped at zero, so such
    states — like exactly degenerate triangles — report zero fill.
    """
    sides = np.array([one_to_other_c2(rho3, i) for i in (1, 2, 3)])
    sides = np.clip(sides, 0.0, 1.0)
    q = 0.5 * sides.sum()
    factors = np.clip(q - sides, 0.0, None)
    area4 = (16.0 / 3.0) * q * np.prod(factors)
    return float(max(0.0, area4) ** 0.25)
