"""Pure-Python (numpy/scipy) implementations of the hot kernels.

Arithmetic here must stay expression-for-expression identical to the
compiled versions in ``_kernels.pyx`` so that both lanes produce
bit-identical simulation streams.
"""

import numpy as np
from scipy.signal import lfilter


def permanent_kernel(m: np.ndarray) -> complex:
    """Gray-code Ryser permanent of a square complex matrix."""
    n = m.shape[0]
    row_sum = np.zeros(n, dtype=complex)
    total = 0.0 + 0.0j
    old_gray = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        bit = gray ^ old_gray
        j = bit.bit_length() - 1
        if gray & bit:
            row_sum += m[:, j]
        else:
            row_sum -= m[:, j]
        prod = complex(np.prod(row_sum))
        if bin(gray).count("1") & 1:
            total -= prod
        else:
            total += prod
        old_gray = gray
    if n & 1:
        total = -total
    return total


def pulse_chain(w, u_occ, x0, phi, c, amp, p1, p2, p3):
    """Latent AR(1) chain, brightness weights and per-pulse photon counts.

    x[0] = x0, x[k] = phi*x[k-1] + c*w[k-1]; the brightness weight is
    B = 1 + amp*(x^2 - 1); occupancy thresholds scale as p_n * B^n.
    Returns (counts uint8, x float64).
    """
    n = u_occ.shape[0]
    x = np.empty(n, dtype=np.float64)
    x[0] = x0
    if n > 1:
        x[1:] = lfilter([c], [1.0, -phi], w, zi=[phi * x0])[0]
    b = 1.0 + amp * (x * x - 1.0)
    q3 = p3 * (b * b * b)
    q2 = q3 + p2 * (b * b)
    q1 = q2 + p1 * b
    np.minimum(q1, 1.0, out=q1)
    counts = (u_occ < q1).astype(np.uint8)
    counts += u_occ < q2
    counts += u_occ < q3
    return counts, x
