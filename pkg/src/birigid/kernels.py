"""Hot integer kernels: finite-field cone enumeration and the lattice-grid
quadratic minimizer.

Both kernels work on int64 data and return exact integers, so the numba
and numpy paths agree bit-for-bit.  See backend.resolve_backend for how a
path is chosen.
"""

from __future__ import annotations

import numpy as np

from .backend import HAVE_NUMBA, resolve_backend

if HAVE_NUMBA:
    from numba import njit
else:  # pragma: no cover - environment without numba
    def njit(*args, **kwargs):
        def wrap(f):
            return f
        return wrap if not (args and callable(args[0])) else args[0]


# -- finite-field solution counting -------------------------------------------

def _power_table(q: int, max_exp: int) -> np.ndarray:
    t = np.ones((q, max_exp + 1), dtype=np.int64)
    for v in range(q):
        for e in range(1, max_exp + 1):
            t[v, e] = (t[v, e - 1] * v) % q
    return t


@njit(cache=True)
def _count_numba(coeffs, exps, offsets, q, arity, must_zero, must_nonzero, pow_t):  # pragma: no cover - jitted
    total = 1
    for _ in range(arity):
        total *= q
    n_polys = offsets.shape[0] - 1
    point = np.zeros(arity, dtype=np.int64)
    count = 0
    for idx in range(total):
        t = idx
        for i in range(arity):
            point[i] = t % q
            t //= q
        ok = True
        for i in range(arity):
            if must_zero[i] and point[i] != 0:
                ok = False
                break
            if must_nonzero[i] and point[i] == 0:
                ok = False
                break
        if not ok:
            continue
        sat = True
        for pi in range(n_polys):
            acc = 0
            for ti in range(offsets[pi], offsets[pi + 1]):
                v = coeffs[ti]
                for i in range(arity):
                    e = exps[ti, i]
                    if e:
                        v = (v * pow_t[point[i], e]) % q
                acc = (acc + v) % q
            if acc != 0:
                sat = False
                break
        if sat:
            count += 1
    return count


def _count_numpy(coeffs, exps, offsets, q, arity, must_zero, must_nonzero, pow_t):
    n_polys = offsets.shape[0] - 1
    # enumerate the trailing `tail` coordinates as one block, loop the rest
    tail = arity
    while q ** tail > 1 << 21:
        tail -= 1
    block = np.indices((q,) * tail, dtype=np.int64).reshape(tail, -1).T
    count = 0
    heads = np.indices((q,) * (arity - tail), dtype=np.int64)
    heads = heads.reshape(arity - tail, -1).T if arity > tail else np.zeros((1, 0), np.int64)
    for head in heads:
        pts = np.empty((block.shape[0], arity), dtype=np.int64)
        if arity > tail:
            pts[:, :arity - tail] = head
        pts[:, arity - tail:] = block
        mask = np.ones(pts.shape[0], dtype=bool)
        for i in range(arity):
            if must_zero[i]:
                mask &= pts[:, i] == 0
            if must_nonzero[i]:
                mask &= pts[:, i] != 0
        for pi in range(n_polys):
            if not mask.any():
                break
            acc = np.zeros(pts.shape[0], dtype=np.int64)
            for ti in range(offsets[pi], offsets[pi + 1]):
                v = np.full(pts.shape[0], coeffs[ti], dtype=np.int64)
                for i in range(arity):
                    e = exps[ti, i]
                    if e:
                        v = (v * pow_t[pts[:, i], e]) % q
                acc = (acc + v) % q
            mask &= acc == 0
        count += int(mask.sum())
    return count


def count_modq_solutions(coeffs, exps, offsets, q: int, arity: int,
                         must_zero, must_nonzero,
                         backend: str | None = None) -> int:
    """Count points of F_q^arity where every polynomial of the system
    vanishes and the coordinate constraints hold.

    The system is given flattened: coeffs[t] and exps[t, :] describe term t,
    and poly p owns terms offsets[p]..offsets[p+1]-1.
    """
    coeffs = np.ascontiguousarray(coeffs, dtype=np.int64) % q
    exps = np.ascontiguousarray(exps, dtype=np.int64).reshape(len(coeffs), arity)
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    must_zero = np.ascontiguousarray(must_zero, dtype=np.bool_)
    must_nonzero = np.ascontiguousarray(must_nonzero, dtype=np.bool_)
    max_exp = int(exps.max()) if exps.size else 0
    pow_t = _power_table(q, max_exp)
    impl = _count_numba if resolve_backend(backend) == "numba" else _count_numpy
    return int(impl(coeffs, exps, offsets, q, arity, must_zero, must_nonzero, pow_t))


# -- lattice minimizer for the constrained quadratic ---------------------------

_INF = np.int64(1) << 62


@njit(cache=True)
def _simplex_min_numba(p, w, budget):  # pragma: no cover - jitted
    best = np.full(budget + 1, _INF, dtype=np.int64)
    best[0] = 0
    for i in range(p.shape[0]):
        pi = p[i]
        wi = w[i]
        nb = np.full(budget + 1, _INF, dtype=np.int64)
        for m in range(budget + 1):
            kmax = m // pi
            b = _INF
            for k in range(kmax + 1):
                prev = best[m - pi * k]
                if prev < _INF:
                    v = prev + wi * pi * k * k
                    if v < b:
                        b = v
            nb[m] = b
        best = nb
    return best[budget]


def _simplex_min_numpy(p, w, budget):
    best = np.full(budget + 1, _INF, dtype=np.int64)
    best[0] = 0
    for pi, wi in zip(p, w):
        nb = np.full(budget + 1, _INF, dtype=np.int64)
        for k in range(budget // pi + 1):
            shift = pi * k
            cost = wi * pi * k * k
            cand = best[:budget + 1 - shift] + cost
            np.minimum(nb[shift:], cand, out=nb[shift:])
        best = nb
    return best[budget]


def min_simplex_quadratic(p, w, budget: int, backend: str | None = None) -> int:
    """Exact minimum of sum_i w_i p_i c_i^2 over integer c_i >= 0 with
    sum_i p_i c_i = budget.  Feasible whenever some p_i equals 1."""
    p = np.ascontiguousarray(p, dtype=np.int64)
    w = np.ascontiguousarray(w, dtype=np.int64)
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    # worst single-term value must stay far below the int64 infinity
    if p.size and int(w.max()) * int(p.max()) * budget * budget >= int(_INF) // 4:
        raise OverflowError("budget too large for int64 arithmetic")
    impl = (_simplex_min_numba if resolve_backend(backend) == "numba"
            else _simplex_min_numpy)
    result = int(impl(p, w, int(budget)))
    if result >= int(_INF):
        raise ValueError("no lattice point satisfies the constraint")
    return result
