"""Compiled inner loops of the stabilizer tableau.

Every kernel works in place on the ``(x, z, r)`` arrays of a
:class:`~qpsurf._tableau.StabilizerTableau`: ``x`` and ``z`` are
``(2n, n)`` ``uint8`` matrices, ``r`` is a ``uint8`` vector of length
``2n``.  Kernels never validate their arguments; the tableau methods do.

Channel kinds index the quasi-probability channel order:
``0`` identity, ``1`` X flip, ``2`` ``exp(-i pi/4 X)``, ``3`` the flip
applied after ``exp(-i pi/4 X)``.
"""

from __future__ import annotations

__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"
__all__ = (
    "KIND_FLIP_X",
    "KIND_FLIP_X_SQRT_X",
    "KIND_IDENTITY",
    "KIND_SQRT_X",
    "apply_channels",
    "cnot_pairs",
    "expectation",
    "measure",
    "measure_many",
    "rowsum",
)

import numba as nb
import numpy as np

KIND_IDENTITY = 0
KIND_FLIP_X = 1
KIND_SQRT_X = 2
KIND_FLIP_X_SQRT_X = 3


@nb.njit(cache=True, nogil=True)
def _phase(x1, z1, x2, z2):
    """Power of ``i`` picked up on one qubit by ``P1 * P2``."""
    if x1 == 1:
        if z1 == 1:
            return z2 - x2
        return z2 * (2 * x2 - 1)
    if z1 == 1:
        return x2 * (1 - 2 * z2)
    return 0


@nb.njit(cache=True, nogil=True)
def rowsum(x, z, r, h, i):
    """Multiply row *i* onto row *h*."""
    exponent = 2 * int(r[h]) + 2 * int(r[i])
    for j in range(x.shape[1]):
        exponent += _phase(int(x[i, j]), int(z[i, j]), int(x[h, j]), int(z[h, j]))
        x[h, j] = x[h, j] ^ x[i, j]
        z[h, j] = z[h, j] ^ z[i, j]
    r[h] = 1 if exponent % 4 == 2 else 0


@nb.njit(cache=True, nogil=True)
def _multiply_into(x, z, r, row, sx, sz, sr):
    """Multiply tableau *row* onto the scratch Pauli; return its new sign bit."""
    exponent = 2 * sr + 2 * int(r[row])
    for j in range(x.shape[1]):
        exponent += _phase(int(x[row, j]), int(z[row, j]), int(sx[j]), int(sz[j]))
        sx[j] = sx[j] ^ x[row, j]
        sz[j] = sz[j] ^ z[row, j]
    return 1 if exponent % 4 == 2 else 0


@nb.njit(cache=True, nogil=True)
def measure(x, z, r, q, bit):
    """Measure qubit *q* in the Z basis.

    *bit* is the outcome used when the result is random.  Returns
    ``(outcome_bit, deterministic)``.
    """
    n = x.shape[1]
    b = int(bit)
    p = -1
    for k in range(n, 2 * n):
        if x[k, q]:
            p = k
            break
    if p >= 0:
        for k in range(2 * n):
            if k != p and k != p - n and x[k, q]:
                rowsum(x, z, r, k, p)
        for j in range(n):
            x[p - n, j] = x[p, j]
            z[p - n, j] = z[p, j]
            x[p, j] = 0
            z[p, j] = 0
        r[p - n] = r[p]
        z[p, q] = 1
        r[p] = b
        return b, False

    sx = np.zeros(n, dtype=np.uint8)
    sz = np.zeros(n, dtype=np.uint8)
    sr = 0
    for k in range(n):
        if x[k, q]:
            sr = _multiply_into(x, z, r, k + n, sx, sz, sr)
    return sr, True


@nb.njit(cache=True, nogil=True)
def measure_many(x, z, r, qubits, bits, out):
    """Measure *qubits* in order; outcome bits go to *out*."""
    for a in range(qubits.shape[0]):
        outcome, _ = measure(x, z, r, qubits[a], bits[a])
        out[a] = outcome


@nb.njit(cache=True, nogil=True)
def apply_channels(x, z, r, qubits, kinds):
    """Apply channel ``kinds[a]`` to qubit ``qubits[a]`` for every *a*."""
    rows = x.shape[0]
    for a in range(qubits.shape[0]):
        q = qubits[a]
        kind = kinds[a]
        if kind == KIND_SQRT_X or kind == KIND_FLIP_X_SQRT_X:
            # Z -> -Y, Y -> Z
            for i in range(rows):
                if z[i, q] and not x[i, q]:
                    r[i] = r[i] ^ 1
                x[i, q] = x[i, q] ^ z[i, q]
        if kind == KIND_FLIP_X or kind == KIND_FLIP_X_SQRT_X:
            for i in range(rows):
                r[i] = r[i] ^ z[i, q]


@nb.njit(cache=True, nogil=True)
def cnot_pairs(x, z, r, controls, targets):
    """Apply ``CNOT(controls[a], targets[a])`` in order."""
    rows = x.shape[0]
    for a in range(controls.shape[0]):
        c = controls[a]
        t = targets[a]
        for i in range(rows):
            xa = int(x[i, c])
            za = int(z[i, c])
            xb = int(x[i, t])
            zb = int(z[i, t])
            if xa & zb & (xb ^ za ^ 1):
                r[i] = r[i] ^ 1
            x[i, t] = xb ^ xa
            z[i, c] = za ^ zb


@nb.njit(cache=True, nogil=True)
def expectation(x, z, r, px, pz):
    """``<P>`` in ``{-1, 0, +1}`` for the positive Pauli with bits ``(px, pz)``."""
    n = x.shape[1]
    for k in range(n, 2 * n):
        anti = 0
        for j in range(n):
            anti ^= (int(x[k, j]) & int(pz[j])) ^ (int(z[k, j]) & int(px[j]))
        if anti:
            return 0
    sx = np.zeros(n, dtype=np.uint8)
    sz = np.zeros(n, dtype=np.uint8)
    sr = 0
    for k in range(n):
        anti = 0
        for j in range(n):
            anti ^= (int(x[k, j]) & int(pz[j])) ^ (int(z[k, j]) & int(px[j]))
        if anti:
            sr = _multiply_into(x, z, r, k + n, sx, sz, sr)
    return -1 if sr else 1
