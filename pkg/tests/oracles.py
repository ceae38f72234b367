"""Independent reference computations for the tests.

Nothing here calls into the package's kernels: steps are exact rational
arithmetic, products are naive loops and least squares goes through the
normal equations.
"""
from fractions import Fraction

import numpy as np


def frac_matrix(rows):
    return [[Fraction(v) for v in row] for row in rows]


def frac_cd_step(A, x, r, j):
    """Exact coordinate step on 0-based column j."""
    col = [row[j] for row in A]
    alpha = sum(a * ri for a, ri in zip(col, r)) / sum(a * a for a in col)
    x = list(x)
    x[j] += alpha
    return x, [ri - alpha * a for ri, a in zip(r, col)], alpha


def frac_oblique_step(A, x, r, p, j):
    """Exact oblique step pairing 0-based column j with p."""
    cp = [row[p] for row in A]
    cj = [row[j] for row in A]
    Np = sum(a * a for a in cp)
    G = sum(a * c for a, c in zip(cp, cj))
    g = sum(a * a for a in cj) - G * G / Np
    alpha = sum(a * ri for a, ri in zip(cj, r)) / g
    beta = -G / Np * alpha
    x = list(x)
    x[j] += alpha
    x[p] += beta
    r = [ri - alpha * a - beta * c for ri, a, c in zip(r, cj, cp)]
    return x, r, alpha, beta, g


def naive_gram(A):
    A = np.asarray(A)
    m, n = A.shape
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            s = 0.0
            for k in range(m):
                s += A[k, i] * A[k, j]
            out[i, j] = s
    return out


def normal_equations_lsq(A, z):
    A = np.asarray(A)
    return np.linalg.solve(A.T @ A, A.T @ z)


def decrease(A, x_before, x_after, x_ref):
    """||A(x_b - x_ref)||^2 - ||A(x_a - x_ref)||^2 as a difference of squares."""
    A = np.asarray(A)
    u = A @ (x_before - x_after)
    v = A @ (x_before + x_after - 2.0 * x_ref)
    return float(u @ v)
