"""Brute-force reference constructions used only by the tests.

Everything here is built from dense Kronecker products and scipy's expm, with
no code shared with the package.
"""

from functools import reduce
from itertools import combinations

import numpy as np
from scipy.linalg import expm

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def site_op(n, i, op):
    """``op`` on qubit i (bit i of the basis index; bit 0 is the last factor)."""
    factors = [I2] * n
    factors[n - 1 - i] = op
    return reduce(np.kron, factors)


def dense_hams(n):
    hx = sum(site_op(n, i, SX) for i in range(n))
    hy = sum(site_op(n, i, SY) for i in range(n))
    hzz = sum(site_op(n, i, SZ) @ site_op(n, j, SZ) for i, j in combinations(range(n), 2))
    if n == 1:
        hzz = np.zeros((2, 2), dtype=complex)
    return {"X": hx, "Y": hy, "ZZ": hzz}


def dense_propagator(n, pairs):
    hams = dense_hams(n)
    u = np.eye(2**n, dtype=complex)
    for kind, angle in pairs:
        u = expm(-1j * angle * hams[kind]) @ u
    return u


def dense_run(n, pairs, psi=None):
    if psi is None:
        psi = np.zeros(2**n, dtype=complex)
        psi[0] = 1
    return dense_propagator(n, pairs) @ psi


def dicke_columns(n):
    """Dicke vectors built from bit strings, one column per excitation count."""
    cols = np.zeros((2**n, n + 1), dtype=complex)
    for k in range(2**n):
        cols[k, format(k, "b").count("1")] = 1
    return cols / np.linalg.norm(cols, axis=0)


def parity_op(n, axis):
    return reduce(np.kron, [SX if axis == "X" else SY] * n)


def w_vec(n):
    v = np.zeros(2**n, dtype=complex)
    for i in range(n):
        v[1 << i] = 1
    return v / np.sqrt(n)


def ghz_vec(n):
    v = np.zeros(2**n, dtype=complex)
    v[0] = v[-1] = 1
    return v / np.sqrt(2)


def random_state(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def phase_equal(a, b, atol=1e-10):
    """True if a = e^{i phi} b for some phi (matrices or vectors)."""
    a, b = np.asarray(a), np.asarray(b)
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    phase = a[idx] / b[idx]
    return abs(abs(phase) - 1) < atol and np.allclose(a, phase * b, atol=atol)
