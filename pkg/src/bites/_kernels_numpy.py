"""Vectorized numpy implementations of the hot numeric kernels.

These are the fallback twins of the numba kernels in ``_kernels_numba``;
``bites.backend`` picks one set at import time. Both sets share signatures
and must agree to floating tolerance (covered by tests/test_backend.py).
"""

import numpy as np


def cox_reduce(s_sorted, events_sorted, starts):
    """Negative Cox partial log-likelihood terms over time-sorted samples.

    ``s_sorted`` are max-shifted scores sorted by ascending time,
    ``events_sorted`` the matching 0/1 event flags, and ``starts`` the first
    position of every distinct-time group plus a trailing sentinel ``n``.
    Tied samples share the full risk set (Breslow convention), and the risk
    set at a time includes every sample with time >= it.

    Returns ``(nll_raw, grad_sorted)`` where ``nll_raw`` is the unnormalized
    loss and ``grad_sorted`` its derivative w.r.t. the sorted shifted scores;
    the caller divides both by the event count and undoes the sort.
    """
    exp_s = np.exp(s_sorted)
    rev_cum = np.cumsum(exp_s[::-1])[::-1]
    heads = starts[:-1]
    risk_sum = rev_cum[heads]
    d_g = np.add.reduceat(events_sorted, heads)
    # map each position to its group ordinal
    g_idx = np.searchsorted(heads, np.arange(s_sorted.shape[0]), side="right") - 1
    event_mask = events_sorted > 0
    nll_raw = float(np.sum(np.log(risk_sum[g_idx][event_mask])) - np.sum(s_sorted[event_mask]))
    cum_h = np.cumsum(d_g / risk_sum)
    grad_sorted = exp_s * cum_h[g_idx] - events_sorted
    return nll_raw, grad_sorted


def breslow_increments(s_sorted, events_sorted, starts):
    """Per-group cumulative-hazard increments d_k / sum_{risk set} exp(s).

    Same sorted/shifted inputs as :func:`cox_reduce`; returns one increment
    per distinct time (zero where a group holds no events). The caller
    rescales by exp(shift) to undo the max-subtraction.
    """
    exp_s = np.exp(s_sorted)
    rev_cum = np.cumsum(exp_s[::-1])[::-1]
    heads = starts[:-1]
    d_g = np.add.reduceat(events_sorted, heads)
    return d_g / rev_cum[heads]


def cost_matrix(x, y, p):
    """Pairwise cost ||x_i - y_j||^p between two point clouds."""
    sq = np.maximum(
        np.sum(x * x, axis=1)[:, None] + np.sum(y * y, axis=1)[None, :] - 2.0 * (x @ y.T),
        0.0,
    )
    if p == 2.0:
        return sq
    if p == 1.0:
        return np.sqrt(sq)
    return sq ** (p / 2.0)


def softmin_rows(cost, log_w, pot, eps):
    """Stabilized soft-minimum update of one dual potential.

    Returns ``out_i = -eps * log sum_j exp(log_w_j + (pot_j - cost_ij)/eps)``
    computed with max-subtraction per row.
    """
    z = log_w[None, :] + (pot[None, :] - cost) / eps
    m = np.max(z, axis=1)
    out = -eps * (m + np.log(np.sum(np.exp(z - m[:, None]), axis=1)))
    return out


def plan_grad_points(x, y, log_a, log_b, f, g, eps, cost, p):
    """Transport-plan weighted cost gradient w.r.t. the source points.

    With the implicit plan pi_ij = exp(log_a_i + log_b_j + (f_i + g_j - C_ij)/eps),
    returns sum_j pi_ij * d||x_i - y_j||^p / dx_i, one row per source point.
    """
    logits = log_a[:, None] + log_b[None, :] + (f[:, None] + g[None, :] - cost) / eps
    pi = np.exp(logits)
    if p == 2.0:
        w = 2.0 * pi
    else:
        r = np.sqrt(np.maximum(cost ** (2.0 / p), 0.0)) if p != 1.0 else cost
        with np.errstate(divide="ignore", invalid="ignore"):
            scale = np.where(r > 0.0, p * r ** (p - 2.0), 0.0)
        w = pi * scale
    return w.sum(axis=1)[:, None] * x - w @ y


def plan_marginals(log_a, log_b, f, g, eps, cost):
    """Row and column sums of the implicit transport plan."""
    logits = log_a[:, None] + log_b[None, :] + (f[:, None] + g[None, :] - cost) / eps
    pi = np.exp(logits)
    return pi.sum(axis=1), pi.sum(axis=0)


def harrell_stats(time, event, risk):
    """Concordant-pair score and comparable-pair count for Harrell's C.

    A pair (i, j) is comparable when i has an event and either y_i < y_j, or
    y_i == y_j with j censored. Risk ties score 0.5.
    """
    lt = time[:, None] < time[None, :]
    tied = (time[:, None] == time[None, :]) & (event[None, :] == 0)
    np.fill_diagonal(tied, False)
    comp = (event[:, None] > 0) & (lt | tied)
    gt_r = risk[:, None] > risk[None, :]
    eq_r = risk[:, None] == risk[None, :]
    num = float(np.sum(comp & gt_r) + 0.5 * np.sum(comp & eq_r))
    den = int(np.sum(comp))
    return num, den


def antolini_stats(time, event, curve_times, curve_values, curve_lens):
    """Concordant-pair score and count for the time-dependent C-index.

    Curves are given as padded (n, K) time/value arrays with per-curve
    lengths. For a comparable pair (i, j) the comparison is
    S_i(y_i) < S_j(y_i), each curve evaluated as a right-continuous step
    function; ties score 0.5. Comparability matches :func:`harrell_stats`.
    """
    n = time.shape[0]
    # V[j, i] = curve j evaluated at event time of i
    v = np.empty((n, n))
    for j in range(n):
        k = curve_lens[j]
        pos = np.searchsorted(curve_times[j, :k], time, side="right")
        vals = np.concatenate(([1.0], curve_values[j, :k]))
        v[j] = vals[pos]
    own = v[np.arange(n), np.arange(n)]
    lt = time[:, None] < time[None, :]
    tied = (time[:, None] == time[None, :]) & (event[None, :] == 0)
    np.fill_diagonal(tied, False)
    comp = (event[:, None] > 0) & (lt | tied)
    cross = v.T  # cross[i, j] = S_j(y_i)
    lower = own[:, None] < cross
    equal = own[:, None] == cross
    num = float(np.sum(comp & lower) + 0.5 * np.sum(comp & equal))
    den = int(np.sum(comp))
    return num, den
