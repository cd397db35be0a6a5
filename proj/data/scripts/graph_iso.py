"""Individualization-refinement isomorphism search for small dense graphs."""
import numpy as np


def _refine(a1, a2, c1, c2):
    """Refine two colourings in lockstep; None when they become incompatible."""
    while True:
        k = int(max(c1.max(), c2.max())) + 1
        onehot = np.eye(k, dtype=np.int32)
        m1 = a1.astype(np.int32) @ onehot[c1]
        m2 = a2.astype(np.int32) @ onehot[c2]
        k1 = np.concatenate([c1[:, None], m1], axis=1)
        k2 = np.concatenate([c2[:, None], m2], axis=1)
        u1, inv1, cnt1 = np.unique(k1, axis=0, return_inverse=True, return_counts=True)
        u2, inv2, cnt2 = np.unique(k2, axis=0, return_inverse=True, return_counts=True)
        if u1.shape != u2.shape or not (u1 == u2).all() or not (cnt1 == cnt2).all():
            return None
        inv1 = inv1.reshape(-1)
        inv2 = inv2.reshape(-1)
        if len(u1) == len(np.unique(c1)):
            return inv1, inv2
        c1, c2 = inv1, inv2


def _search(a1, a2, c1, c2):
    r = _refine(a1, a2, c1, c2)
    if r is None:
        return None
    c1, c2 = r
    vals, cnt = np.unique(c1, return_counts=True)
    if cnt.max() == 1:
        pos2 = {int(c): i for i, c in enumerate(c2)}
        perm = np.array([pos2[int(c)] for c in c1])
        if (a1 == a2[np.ix_(perm, perm)]).all():
            return perm
        return None
    _, col = min((n, v) for v, n in zip(vals, cnt) if n > 1)
    v = int(np.where(c1 == col)[0][0])
    fresh = int(c1.max()) + 1
    for w in np.where(c2 == col)[0]:
        d1, d2 = c1.copy(), c2.copy()
        d1[v] = fresh
        d2[w] = fresh
        res = _search(a1, a2, d1, d2)
        if res is not None:
            return res
    return None


def isomorphism(a1, a2, v1, v2):
    """An isomorphism a1 -> a2 (as an index array) sending v1 to v2, or None."""
    n = len(a1)
    c1 = np.zeros(n, dtype=np.int64)
    c2 = np.zeros(n, dtype=np.int64)
    c1[v1] = 1
    c2[v2] = 1
    return _search(a1, a2, c1, c2)
