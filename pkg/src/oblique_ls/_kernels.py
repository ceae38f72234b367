"""Compiled step updates and the driver loop behind every solver.

Indices are 0-based here. ``x`` and ``r`` are updated in place.
"""
import numba as nb
import numpy as np

from .rng import draw_index

_jit = {"nogil": True, "cache": True}

CD, RCD, GSO, RGSO = 0, 1, 2, 3
MODE_RRE, MODE_SOLUTION, MODE_GRADIENT = 0, 1, 2


@nb.njit(**_jit)
def cd_update(A, N, x, r, j, b_null, want_rre):
    """Exact line search along e_j. Returns ``(alpha, ||b_null - r||^2)``;
    the second value is only accumulated when ``want_rre`` is set."""
    m = A.shape[0]
    s = 0.0
    for i in range(m):
        s += A[i, j] * r[i]
    alpha = s / N[j]
    x[j] += alpha
    acc = 0.0
    if want_rre:
        for i in range(m):
            r[i] -= alpha * A[i, j]
            d = b_null[i] - r[i]
            acc += d * d
    else:
        for i in range(m):
            r[i] -= alpha * A[i, j]
    return alpha, acc


@nb.njit(**_jit)
def pair_terms(A, N, p, j):
    """``(G / N_p, g)`` for the pair (p, j), with ``G = <A_p, A_j>``.

    ``g = N_j - G^2 / N_p`` is evaluated as the squared norm of the part of
    A_j orthogonal to A_p; the subtraction form loses most of its digits
    when the columns are nearly parallel.
    """
    m = A.shape[0]
    G = 0.0
    for i in range(m):
        G += A[i, p] * A[i, j]
    ratio = G / N[p]
    g = 0.0
    for i in range(m):
        d = A[i, j] - ratio * A[i, p]
        g += d * d
    return ratio, g


@nb.njit(**_jit)
def oblique_apply(A, N, x, r, p, j, ratio, g, skip_relative, eps, b_null, want_rre):
    """Exact line search along e_j - ratio * e_p given the pair terms.

    Returns ``(applied, alpha, beta, ||b_null - r||^2)``. The step is
    skipped (x, r untouched) when ``g <= eps`` or ``g <= eps * N_j``.
    """
    m = A.shape[0]
    limit = eps * N[j] if skip_relative else eps
    acc = 0.0
    if not g > limit:
        if want_rre:
            for i in range(m):
                d = b_null[i] - r[i]
                acc += d * d
        return False, 0.0, 0.0, acc
    s = 0.0
    for i in range(m):
        s += A[i, j] * r[i]
    alpha = s / g
    beta = -ratio * alpha
    x[j] += alpha
    x[p] += beta
    if want_rre:
        for i in range(m):
            r[i] -= alpha * A[i, j] + beta * A[i, p]
            d = b_null[i] - r[i]
            acc += d * d
    else:
        for i in range(m):
            r[i] -= alpha * A[i, j] + beta * A[i, p]
    return True, alpha, beta, acc


@nb.njit(**_jit)
def oblique_update(A, N, x, r, p, j, skip_relative, eps, b_null, want_rre):
    """Pair terms plus :func:`oblique_apply`; returns
    ``(applied, alpha, beta, g, ||b_null - r||^2)``."""
    ratio, g = pair_terms(A, N, p, j)
    applied, alpha, beta, acc = oblique_apply(A, N, x, r, p, j, ratio, g,
                                              skip_relative, eps, b_null, want_rre)
    return applied, alpha, beta, g, acc


@nb.njit(**_jit)
def stop_metric(mode, A, x, r, b_null, x_star, b_norm_sq, x_star_norm_sq, atb_norm):
    """Current value of the stopping metric for ``mode``."""
    if mode == MODE_RRE:
        acc = 0.0
        for i in range(r.shape[0]):
            d = b_null[i] - r[i]
            acc += d * d
        return acc / b_norm_sq
    if mode == MODE_SOLUTION:
        acc = 0.0
        for t in range(x.shape[0]):
            d = x[t] - x_star[t]
            acc += d * d
        return acc / x_star_norm_sq
    m, n = A.shape
    acc = 0.0
    for j in range(n):
        s = 0.0
        for i in range(m):
            s += A[i, j] * r[i]
        acc += s * s
    gnorm = np.sqrt(acc)
    if atb_norm > 0.0:
        return gnorm / atb_norm
    return gnorm


@nb.njit(**_jit)
def is_converged(mode, value, threshold, atb_norm):
    if mode == MODE_RRE:
        return value < threshold
    if mode == MODE_GRADIENT and atb_norm == 0.0:
        return value == 0.0
    return value <= threshold


@nb.njit(**_jit)
def _pick_rgso(k, n, i_prev, i_prev2, seed, counter):
    if k == 1 or n == 2:
        u, counter = draw_index(seed, counter, n - 1)
        if u >= i_prev:
            u += 1
        return u, counter
    u, counter = draw_index(seed, counter, n - 2)
    lo = min(i_prev, i_prev2)
    hi = max(i_prev, i_prev2)
    if u >= lo:
        u += 1
    if u >= hi:
        u += 1
    return u, counter


@nb.njit(**_jit)
def next_index(method, k, n, i_prev, i_prev2, seed, counter):
    """Column for step ``k`` (0-based k, 0-based indices)."""
    if method == CD:
        return k % n, counter
    if method == RCD:
        return draw_index(seed, counter, n)
    if method == GSO:
        return k % n, counter
    if k == 0:
        return draw_index(seed, counter, n)
    if n == 1:
        return 0, counter
    return _pick_rgso(k, n, i_prev, i_prev2, seed, counter)


@nb.njit(**_jit)
def uses_oblique(method, k, n):
    return (method == GSO or method == RGSO) and k > 0 and n > 1


@nb.njit(**_jit)
def drive(method, A, N, x, r, b_null, x_star, mode, threshold, max_iters,
          check_every, skip_relative, eps, seed, counter,
          b_norm_sq, x_star_norm_sq, atb_norm, trace_stride, trace_k, trace_v):
    """Run ``method`` until the stop rule fires or ``max_iters`` steps.

    Returns ``(k, updates, skips, converged, counter, n_trace, i_prev,
    i_prev2, last_metric)``.
    """
    n = A.shape[1]
    k = 0
    updates = 0
    skips = 0
    n_trace = 0
    n_checks = 0
    i_prev = -1
    i_prev2 = -1

    # cyclic GSO only ever pairs (j - 1 mod n, j)
    cyc_ratio = np.empty(n if method == GSO else 0)
    cyc_g = np.empty(n if method == GSO else 0)
    if method == GSO and n > 1:
        for j in range(n):
            cyc_ratio[j], cyc_g[j] = pair_terms(A, N, (j - 1) % n, j)

    value = stop_metric(mode, A, x, r, b_null, x_star, b_norm_sq, x_star_norm_sq, atb_norm)
    converged = is_converged(mode, value, threshold, atb_norm)
    if trace_stride > 0 and n_trace < trace_k.shape[0]:
        trace_k[n_trace] = 0
        trace_v[n_trace] = value
        n_trace += 1
    n_checks += 1

    while not converged and k < max_iters:
        check = (k + 1) % check_every == 0 or k + 1 == max_iters
        want_rre = check and mode == MODE_RRE
        j, counter = next_index(method, k, n, i_prev, i_prev2, seed, counter)
        if uses_oblique(method, k, n):
            if method == GSO:
                ratio, g = cyc_ratio[j], cyc_g[j]
            else:
                ratio, g = pair_terms(A, N, i_prev, j)
            applied, _, _, acc = oblique_apply(A, N, x, r, i_prev, j, ratio, g,
                                               skip_relative, eps, b_null, want_rre)
            if applied:
                updates += 1
            else:
                skips += 1
        else:
            _, acc = cd_update(A, N, x, r, j, b_null, want_rre)
            updates += 1
        i_prev2 = i_prev
        i_prev = j
        k += 1
        if check:
            if mode == MODE_RRE:
                value = acc / b_norm_sq
            else:
                value = stop_metric(mode, A, x, r, b_null, x_star,
                                    b_norm_sq, x_star_norm_sq, atb_norm)
            converged = is_converged(mode, value, threshold, atb_norm)
            if trace_stride > 0 and (n_checks % trace_stride == 0 or converged
                                     or k == max_iters):
                if n_trace < trace_k.shape[0]:
                    trace_k[n_trace] = k
                    trace_v[n_trace] = value
                    n_trace += 1
            n_checks += 1

    return k, updates, skips, converged, counter, n_trace, i_prev, i_prev2, value
