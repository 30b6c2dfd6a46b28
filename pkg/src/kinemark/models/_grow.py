"""Compiled CART growth shared by every tree-based model."""
import numpy as np
from numba import njit

GINI = 0
SSE = 1


@njit(cache=True)
def _node_stats(y, rows, criterion):
    m = rows.shape[0]
    s = 0.0
    for r in rows:
        s += y[r]
    mean = s / m
    if criterion == GINI:
        return mean, 2.0 * mean * (1.0 - mean)
    acc = 0.0
    for r in rows:
        d = y[r] - mean
        acc += d * d
    return mean, acc / m


@njit(cache=True)
def grow(X, y, rows0, criterion, max_depth, min_leaf, max_features, seed):
    """Grow one tree depth-first.

    Nodes split whenever they are impure, shallower than ``max_depth`` and some
    candidate feature admits a split leaving ``min_leaf`` rows per side; the
    split with the largest impurity decrease wins, ties going to the lower
    feature index and then the lower threshold. ``max_features < p`` draws a
    fresh sorted feature subset per node from a generator seeded with ``seed``.
    ``rows0`` lists the training rows (repeats allowed, as in a bootstrap).

    Returns (feature, threshold, left, right, value, n_node, impurity,
    importance); leaves have feature == -1.
    """
    p = X.shape[1]
    n = rows0.shape[0]
    cap = 2 * n + 1
    feature = np.full(cap, -1, np.int64)
    threshold = np.zeros(cap)
    left = np.full(cap, -1, np.int64)
    right = np.full(cap, -1, np.int64)
    value = np.zeros(cap)
    n_node = np.zeros(cap, np.int64)
    impurity = np.zeros(cap)
    importance = np.zeros(p)

    np.random.seed(seed)
    idx = rows0.copy()
    scratch = np.empty(n, np.int64)
    pool = np.arange(p)
    k = min(max_features, p)

    st_node = np.empty(cap, np.int64)
    st_start = np.empty(cap, np.int64)
    st_end = np.empty(cap, np.int64)
    st_depth = np.empty(cap, np.int64)
    top = 0
    st_node[0] = 0
    st_start[0] = 0
    st_end[0] = n
    st_depth[0] = 0
    top = 1
    count = 1

    while top > 0:
        top -= 1
        node = st_node[top]
        start = st_start[top]
        end = st_end[top]
        depth = st_depth[top]
        rows = idx[start:end]
        m = end - start
        mean, imp = _node_stats(y, rows, criterion)
        value[node] = mean
        impurity[node] = imp
        n_node[node] = m
        if depth >= max_depth or m < 2 * min_leaf or imp <= 0.0:
            continue

        if k < p:
            for i in range(k):
                j = np.random.randint(i, p)
                t = pool[i]
                pool[i] = pool[j]
                pool[j] = t
            cand = np.sort(pool[:k].copy())
        else:
            cand = pool

        total = 0.0
        for r in rows:
            total += y[r]

        best_gain = -np.inf
        best_f = -1
        best_thr = 0.0
        vals = np.empty(m)
        ys = np.empty(m)
        for f in cand:
            for i in range(m):
                vals[i] = X[rows[i], f]
            order = np.argsort(vals, kind="mergesort")
            lo = vals[order[0]]
            hi = vals[order[m - 1]]
            if lo == hi:
                continue
            for i in range(m):
                ys[i] = y[rows[order[i]]]
            sl = 0.0
            for i in range(m - 1):
                sl += ys[i]
                nl = i + 1
                nr = m - nl
                if nr < min_leaf:
                    break
                if nl < min_leaf:
                    continue
                a = vals[order[i]]
                b = vals[order[i + 1]]
                if a == b:
                    continue
                sr = total - sl
                if criterion == GINI:
                    # count-weighted Gini: n*g = 2*s*(n-s)/n
                    gain = (2.0 * total * (m - total) / m
                            - 2.0 * sl * (nl - sl) / nl
                            - 2.0 * sr * (nr - sr) / nr)
                else:
                    gain = sl * sl / nl + sr * sr / nr - total * total / m
                if gain > best_gain:
                    best_gain = gain
                    best_f = f
                    thr = (a + b) / 2.0
                    if thr == b:
                        thr = a
                    best_thr = thr

        if best_f < 0:
            continue

        nl = 0
        nr = 0
        for i in range(m):
            r = rows[i]
            if X[r, best_f] <= best_thr:
                idx[start + nl] = r
                nl += 1
            else:
                scratch[nr] = r
                nr += 1
        for i in range(nr):
            idx[start + nl + i] = scratch[i]

        feature[node] = best_f
        threshold[node] = best_thr
        importance[best_f] += max(best_gain, 0.0)
        lc = count
        rc = count + 1
        count += 2
        left[node] = lc
        right[node] = rc
        # right pushed first so the left child is expanded first
        st_node[top] = rc
        st_start[top] = start + nl
        st_end[top] = end
        st_depth[top] = depth + 1
        top += 1
        st_node[top] = lc
        st_start[top] = start
        st_end[top] = start + nl
        st_depth[top] = depth + 1
        top += 1

    return (feature[:count], threshold[:count], left[:count], right[:count],
            value[:count], n_node[:count], impurity[:count], importance)
