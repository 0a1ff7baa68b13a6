"""Jumps of x -> [x]_q at rationals and their total mass q/(1-q).

For x = [[c_1..c_N]] the jump is q^(C_N)(1-q)/(b_N B_N), with b_N the
denominator continuant and B_N its infinity-continuant (both continuants
of the tail word); summed over all rationals in (1, oo) the jumps
telescope (formally, and numerically where convergence is established)
to q/(1-q).

Numeric total-jump sums enumerate the word tree depth-first with certified
pruning: for real 0 < q < 1 the subtree below a prefix is bounded by the
variation of the monotone function [.]_q over the x-interval the subtree
fills; for complex q in D' the Weierstrass bound of the region applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .analytic import solve_a
from .cf import CFWord, continuant, infinity_continuant
from .errors import BracketingFailure, DomainError, EnumerationBudget, OutsideRegion
from .poly import IntLaurent, IntPoly, RatFuncQ

try:  # optional accelerator for the deep enumerations; pure-Python fallback below
    from numba import njit as _njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


@dataclass(frozen=True)
class JumpRecord:
    """A single jump: word, weight C_N, and the jump value."""

    word: CFWord
    weight: int
    value: object  # RatFuncQ (symbolic) or complex/float (numeric)


def jump_at(word: CFWord, q=None) -> JumpRecord:
    """Jump of [.]_q at the rational encoded by word.

    The determinant identity a_N b_{N+1} - a_{N+1} b_N = q^(C_N) applied to
    the limit digit gives

        Jump_x(q) = q^(C_N) / (b_N * b_{N+1}(c_1..c_N, oo))
                  = q^(C_N) (1-q) / (b_N * B_N),

    where b_N and B_N are the denominator continuant and its
    infinity-continuant (both are continuants of the tail word c_2..c_N).
    Symbolic (q is None) as a reduced rational function, else evaluated at
    q; positive for 0 < q < 1.
    """
    tail = word.digits[1:]
    b_n = continuant(tail)
    b_inf = infinity_continuant(CFWord(tail)) if tail else IntPoly.one()
    c = word.weight()
    if q is None:
        num = (IntPoly((1, -1))).shift(c)  # q^C (1 - q)
        value = RatFuncQ(num, b_n * b_inf)
        return JumpRecord(word, c, value)
    q = complex(q)
    value = q**c * (1.0 - q) / (b_n(q) * b_inf(q))
    if q.imag == 0:
        value = value.real
    return JumpRecord(word, c, value)


def enumerate_words(max_weight: int) -> Iterator[CFWord]:
    """All words with C_N <= max_weight, ordered by (C_N, digits) lexicographically."""
    for weight in range(1, max_weight + 1):
        yield from _words_of_weight(weight)


def _words_of_weight(weight: int) -> Iterator[CFWord]:
    def rec(remaining, prefix):
        if remaining == 0:
            yield CFWord(prefix)
            return
        for part in range(1, remaining + 1):
            yield from rec(remaining - part, prefix + [part + 1])

    yield from rec(weight, [])


def formal_total_jump(max_weight: int, budget: int = 1 << 22) -> IntLaurent:
    """Sum of all symbolic jumps with C_N <= max_weight, mod q^(max_weight+1).

    Equals q + q^2 + ... + q^max_weight exactly (the telescoping identity).
    """
    if max_weight < 1:
        raise DomainError("max_weight must be >= 1")
    if 1 << max_weight > budget:
        raise EnumerationBudget(f"2^{max_weight} words exceed the enumeration budget")
    order = max_weight + 1
    acc = [0] * order
    for word in enumerate_words(max_weight):
        c = word.weight()
        rel = order - c
        tail = word.digits[1:]
        b_n = continuant(tail)
        b_inf = infinity_continuant(CFWord(tail)) if tail else IntPoly.one()
        den = (b_n * b_inf).truncated(rel)
        inv = den.series_inverse(rel)
        # accumulate q^C (1-q) * inv; the term the (1-q) factor pushes to
        # exponent C + rel lands beyond the window
        prev = 0
        for i in range(rel):
            coeff = inv[i]
            acc[c + i] += coeff - prev
            prev = coeff
    return IntLaurent(0, acc, order)


class TotalJumpResult(NamedTuple):
    partial_sum: complex
    depth_used: int
    residual: float
    pruned_bound: float
    nodes: int
    converged: bool


def in_region_Dprime(q: complex) -> bool:
    """Membership in D' (inside D, where the jump series is Weierstrass-summable)."""
    q = complex(q)
    if q == 0:
        return True
    a = solve_a(q).a  # raises OutsideRegion outside D
    return a**-2 < 1.0 - abs(q)


def numeric_total_jump(
    q: complex,
    target_tol: float,
    budget: int = 2_000_000_000,
) -> TotalJumpResult:
    """Enumerate jumps until the partial sum is within target_tol of q/(1-q).

    Real 0 < q < 1 uses the monotone-variation pruning bound (certified for
    every q in (0,1)); complex q requires membership in D'.  The returned
    residual is measured against the target q/(1-q).  The pruning threshold
    is tightened adaptively: the pruned mass scales like a power of the
    threshold, so two cheap passes calibrate the exponent before the final
    pass.
    """
    q = complex(q)
    if q.imag == 0.0:
        if not (0.0 < q.real < 1.0):
            raise DomainError(f"real q must be in (0, 1), got {q.real}")
        run = _dfs_real
        qv = q.real
    else:
        if not in_region_Dprime(q):
            raise OutsideRegion(f"complex q = {q} is not in D'")
        run = _dfs_complex
        qv = q
    target = qv / (1.0 - qv)
    delta = min(target_tol / 8.0, 1e-9)
    nodes_total = 0
    prev = None  # (delta, pruned) of the previous pass, for exponent fitting
    while True:
        partial, depth, pruned, nodes = run(qv, delta, budget - nodes_total)
        nodes_total += nodes
        residual = abs(target - partial)
        if residual < target_tol or pruned < target_tol:
            return TotalJumpResult(partial, depth, residual, pruned, nodes_total, True)
        if nodes_total >= budget:
            raise EnumerationBudget(
                f"budget {budget} nodes exhausted; residual {residual:.3e} at depth {depth}"
            )
        used = delta
        if prev is not None and pruned < prev[1]:
            # extrapolate pruned ~ delta^beta toward the needed threshold,
            # conservatively (beta drifts between decades)
            beta = math.log(prev[1] / pruned) / math.log(prev[0] / used)
            needed = used * (0.8 * target_tol / pruned) ** (1.0 / beta)
            delta = max(needed, used / 3e5)
        else:
            delta /= 16.0
        prev = (used, pruned)


def _dfs_real(q: float, delta: float, budget: int):
    """Certified DFS for real q (jitted when numba is available)."""
    if _HAVE_NUMBA:
        partial, depth, pruned, nodes, overrun = _dfs_real_jit(q, delta, budget)
        if overrun:
            raise EnumerationBudget(f"node budget {budget} exceeded at delta={delta:.3e}")
        return partial, depth, pruned, nodes
    return _dfs_real_py(q, delta, budget)


if _HAVE_NUMBA:

    @_njit(cache=False)
    def _dfs_real_jit(q, delta, budget):  # pragma: no cover - exercised via _dfs_real
        one_minus_q = 1.0 - q
        partial = 0.0
        pruned = 0.0
        depth = 0
        nodes = 0
        cap = 1 << 12
        fst = np.empty((cap, 5), dtype=np.float64)  # a_prev a_cur b_prev b_cur qC
        ist = np.empty((cap, 2), dtype=np.int64)  # c_last C
        top = 0
        c = 2
        t = q
        while t >= delta:  # roots [c]: interval mass exactly q^(c-1)
            qi = (1.0 - t * q) / one_minus_q  # [c]_q with t = q^(c-1)
            fst[top, 0] = 1.0
            fst[top, 1] = qi
            fst[top, 2] = 0.0
            fst[top, 3] = 1.0
            fst[top, 4] = t
            ist[top, 0] = c
            ist[top, 1] = c - 1
            top += 1
            c += 1
            t *= q
        pruned += t / one_minus_q
        while top > 0:
            top -= 1
            a_prev = fst[top, 0]
            a_cur = fst[top, 1]
            b_prev = fst[top, 2]
            b_cur = fst[top, 3]
            qC = fst[top, 4]
            c_last = ist[top, 0]
            C = ist[top, 1]
            nodes += 1
            if nodes > budget:
                return partial, depth, pruned, nodes, True
            if C > depth:
                depth = int(C)
            w = q ** (c_last - 1)
            a_inf = a_cur - w * one_minus_q * a_prev
            b_inf = b_cur - w * one_minus_q * b_prev
            partial += qC * one_minus_q / (b_cur * b_inf)
            left_lim = a_inf / b_inf
            dec_a = a_cur - w * a_prev
            dec_b = b_cur - w * b_prev
            prev_val = dec_a / dec_b
            qc = q  # q^(c-1) for the child digit c
            qpc = q  # q^c after the multiply below
            c = 2
            while True:
                qpc *= q
                ci = (1.0 - qpc) / one_minus_q  # [c]_q
                ca = ci * a_cur - w * a_prev
                cb = ci * b_cur - w * b_prev
                val = ca / cb
                mass = val - prev_val
                if mass < 0.0:
                    mass = -mass
                if mass < delta:
                    rest = left_lim - prev_val
                    if rest < 0.0:
                        rest = -rest
                    pruned += rest
                    break
                if top >= cap:
                    ncap = cap * 2
                    nf = np.empty((ncap, 5), dtype=np.float64)
                    ni = np.empty((ncap, 2), dtype=np.int64)
                    nf[:cap] = fst
                    ni[:cap] = ist
                    fst = nf
                    ist = ni
                    cap = ncap
                fst[top, 0] = a_cur
                fst[top, 1] = ca
                fst[top, 2] = b_cur
                fst[top, 3] = cb
                fst[top, 4] = qC * qc
                ist[top, 0] = c
                ist[top, 1] = C + c - 1
                top += 1
                prev_val = val
                qc *= q
                c += 1
        return partial, depth, pruned, nodes, False


def _dfs_real_py(q: float, delta: float, budget: int):
    """Certified DFS for real q: child subtree mass is bounded by the
    variation of [.]_q between the bracketing one-sided limits."""
    one_minus_q = 1.0 - q
    partial = 0.0
    pruned = 0.0
    depth = 0
    nodes = 0
    # roots: words [c]; mass of ((c-1, c]) is exactly q^(c-1)
    roots = []
    c = 2
    while True:
        t = q ** (c - 1)
        if t < delta:
            pruned += t / one_minus_q  # sum over all further first digits
            break
        roots.append(c)
        c += 1
    stack = []
    for c in reversed(roots):
        qi = (1.0 - q**c) / one_minus_q
        # state: a_prev, a_cur, b_prev, b_cur, c_last, C, N
        stack.append((1.0, qi, 0.0, 1.0, c, c - 1, 1))
    while stack:
        a_prev, a_cur, b_prev, b_cur, c_last, C, n = stack.pop()
        nodes += 1
        if nodes > budget:
            raise EnumerationBudget(f"node budget {budget} exceeded at delta={delta:.3e}")
        if C > depth:
            depth = C
        w = q ** (c_last - 1)
        a_inf = a_cur - w * one_minus_q * a_prev
        b_inf = b_cur - w * one_minus_q * b_prev
        partial += q**C * one_minus_q / (b_cur * b_inf)
        left_lim = a_inf / b_inf  # [x_p]^-
        # children: appending digit c maps the tail interval boundary
        c = 2
        dec_a = a_cur - w * a_prev  # [[p, c-1]] continuants start from [[p,1]]=dec
        dec_b = b_cur - w * b_prev
        prev_val = dec_a / dec_b  # x-value at the c=1 boundary (word with last digit decremented)
        while True:
            ci = (1.0 - q**c) / one_minus_q
            ca = ci * a_cur - w * a_prev
            cb = ci * b_cur - w * b_prev
            val = ca / cb
            mass = abs(val - prev_val)  # total mass of child subtree + its node
            if mass < delta:
                pruned += abs(left_lim - prev_val)
                break
            stack.append((a_cur, ca, b_cur, cb, c, C + c - 1, n + 1))
            prev_val = val
            c += 1
    return partial, depth, pruned, nodes


def _dfs_complex(q: complex, delta: float, budget: int):
    """DFS for q in D' with the Weierstrass tail bound of the region."""
    params = solve_a(q)
    r, a = params.r, params.a
    gamma = a**-2 / (1.0 - r)
    pref = a**-1 / math.sqrt(r)
    geo = 1.0 / (1.0 - gamma)
    one_minus_q = 1.0 - q
    partial = 0.0 + 0.0j
    pruned = 0.0
    depth = 0
    nodes = 0
    stack = []
    c = 2
    while True:
        # child bound at level 1 with E = c - 2
        btot = r ** (c - 2) * pref * a**-2 * geo
        if btot < delta:
            pruned += btot / (1.0 - r)
            break
        stack.append((0.0j, 1.0 + 0j, c, c - 1, c - 2, 1))
        c += 1
    while stack:
        b_prev, b_cur, c_last, C, E, n = stack.pop()
        nodes += 1
        if nodes > budget:
            raise EnumerationBudget(f"node budget {budget} exceeded at delta={delta:.3e}")
        if C > depth:
            depth = C
        w = q ** (c_last - 1)
        b_inf = b_cur - w * one_minus_q * b_prev
        partial += q**C * one_minus_q / (b_cur * b_inf)
        c = 2
        while True:
            btot = r ** (E + c - 2) * pref * a ** (-2 * (n + 1)) * geo
            if btot < delta:
                pruned += btot / (1.0 - r)
                break
            ci = (1.0 - q**c) / one_minus_q
            cb = ci * b_cur - w * b_prev
            stack.append((b_cur, cb, c, C + c - 1, E + c - 2, n + 1))
            c += 1
    return partial, depth, pruned, nodes


# -- interaction series and the beta constants ------------------------------------


def phi_series(q: float, z: float = 1.0, tol: float = 1e-12) -> float:
    """phi(q, z) = sum_{n>=2} (qz)^(n-1) / [n]_q^2 with a geometric tail bound.

    The literal series vanishes at q = 0 (the n >= 2 normalization); this
    normalization is the one that reproduces the beta constants.  q = 1 with
    z <= 1 is supported through the classical sum_{n>=2} z^(n-1)/n^2, whose
    tail decays only like 1/n, so keep tol moderate there.
    """
    if q == 1.0 and 0.0 < z <= 1.0:
        total = 0.0
        n = 2
        while True:
            total += z ** (n - 1) / (n * n)
            tail = 1.0 / n if z == 1.0 else z**n / ((1.0 - z) * n * n)
            if tail <= tol:
                return total
            n += 1
    _check_qz(q, z)
    if q == 0.0:
        return 0.0
    total = 0.0
    qz = q * z
    n = 2
    while True:
        qn = _q_int(n, q)
        total += qz ** (n - 1) / (qn * qn)
        nxt = _q_int(n + 1, q)
        tail = qz**n / (nxt * nxt * (1.0 - qz))
        if tail <= tol:
            return total
        n += 1


def _q_int(n: int, q: float) -> float:
    return float(n) if q == 1.0 else (1.0 - q**n) / (1.0 - q)


def _check_qz(q, z):
    if not (0.0 <= q < 1.0):
        raise DomainError(f"q must be in [0, 1), got {q}")
    if q * z >= 1.0:
        raise DomainError(f"need q*z < 1, got {q * z}")


def _tail_1d(w: float, q: float, cap: int, shift: int) -> float:
    """sum_{k > cap} w^k / [k+shift]_q^2, bounded geometrically in the weight."""
    d = _q_int(cap + 1 + shift, q)
    return w ** (cap + 1) / ((1.0 - w) * d * d)


def h1_series(q: float, z: float = 1.0, tol: float = 1e-12) -> float:
    """h_1(q, z) = sum_{m,p>=1} q^(m+p) z^p / ([m+1][p+1] + q^(m+p+1))^2.

    Row-chunked so the cap can grow large for q close to 1 without building
    the full 2-D grid.
    """
    _check_qz(q, z)
    if q == 0.0:
        return 0.0
    cap = 24
    while True:
        idx = np.arange(1, cap + 1, dtype=float)
        qint = (1.0 - q ** (idx + 1.0)) / (1.0 - q)  # [k+1]_q
        qm = q**idx
        wp = (q * z) ** idx
        total = 0.0
        for i in range(cap):
            den = qint[i] * qint + q * qm[i] * qm
            total += qm[i] * float(np.sum(wp / (den * den)))
        # tails in each index: denominators >= [m+1]^2 [p+1]^2
        s_p = float(np.sum(wp / (qint * qint)))
        s_m = float(np.sum(qm / (qint * qint)))
        tail = _tail_1d(q, q, cap, 1) * s_p + _tail_1d(q * z, q, cap, 1) * s_m
        if tail <= tol or cap >= 65536:
            return total
        cap *= 2


def _h2_grid(q: float, z: float, cap: int) -> float:
    """Chunked 4-index sum for h_2 via the closed continuant product form."""
    idx = np.arange(1, cap + 1)
    qint = np.array([_q_int(int(k), q) for k in range(cap + 3)])
    qpow = q ** np.arange(0, cap + 2, dtype=float)
    wz = (q * z) ** idx.astype(float)  # weight for p-indices
    wq = q ** idx.astype(float)  # weight for m-indices
    # A(m1,p1) = [m1+1][p1] + q^(m1+p1); C(m1,p1) = [m1+1][p1-1] + q^(m1+p1-1)
    B = np.outer(qint[idx + 1], qint[idx + 1]) + q * np.outer(qpow[idx], qpow[idx])
    E = qint[idx + 1]  # [p2+1]
    total = 0.0
    for i, m1 in enumerate(idx):
        A1 = qint[m1 + 1] * qint[idx] + qpow[m1] * qpow[idx]  # over p1
        C1 = qint[m1 + 1] * qint[idx - 1] + qpow[m1] * qpow[idx - 1]
        W = A1[:, None, None] * B[None, :, :] - q * C1[:, None, None] * E[None, None, :]
        contrib = np.einsum("i,j,k,ijk->", wz, wq, wz, 1.0 / (W * W))
        total += wq[i] * contrib
    return total


def h2_series(q: float, z: float = 1.0, tol: float = 1e-9) -> float:
    """h_2(q, z): the distance-2 interaction sum over continuants
    a(m1+2, 2^(p1-1), m2+2, 2^(p2)) of four indices.

    The rigorous per-index tail bound drives a cap-doubling ladder; the
    grid is capped at 128 per index (the 4-index grid grows steeply), where
    the doubling difference scaled by q^(cap/2) estimates the remaining
    error (geometric in the cap).
    """
    _check_qz(q, z)
    if q == 0.0:
        return 0.0
    cap = 16
    prev = None
    while True:
        total = _h2_grid(q, z, cap)
        # tail: denominators >= q [m1+1][p1][m2][p2+1]; cut each index in turn
        s_m1 = sum(q**k / _q_int(k + 1, q) ** 2 for k in range(1, cap + 1))
        s_p1 = sum((q * z) ** k / _q_int(k, q) ** 2 for k in range(1, cap + 1))
        s_m2 = sum(q**k / _q_int(k, q) ** 2 for k in range(1, cap + 1))
        s_p2 = sum((q * z) ** k / _q_int(k + 1, q) ** 2 for k in range(1, cap + 1))
        tail = (
            _tail_1d(q, q, cap, 1) * s_p1 * s_m2 * s_p2
            + s_m1 * _tail_1d(q * z, q, cap, 0) * s_m2 * s_p2
            + s_m1 * s_p1 * _tail_1d(q, q, cap, 0) * s_p2
            + s_m1 * s_p1 * s_m2 * _tail_1d(q * z, q, cap, 1)
        ) / (q * q)
        if tail <= tol:
            return total
        if cap >= 128:
            if prev is not None:
                decay = q ** (cap // 2)
                est = 3.0 * abs(total - prev) * decay / max(1.0 - decay, 1e-9)
                if est <= tol:
                    return total
            return total  # best effort at the grid ceiling
        prev = total
        cap *= 2


_BETA_LEVELS = {
    0: (lambda q, tol: phi_series(q, 1.0, tol) * (1.0 + q), 0.55, 0.95, 1e-10),
    1: (lambda q, tol: h1_series(q, 1.0, tol) * (1.0 + q) ** 2, 0.70, 0.95, 1e-10),
    2: (lambda q, tol: h2_series(q, 1.0, tol) * (1.0 + q) ** 2, 0.88, 0.975, 3e-4),
}


def beta_root(level: int, tol: float = 1e-4) -> float:
    """Root of the level's interaction equation in (0, 1):

    level 0: phi(q)(1+q) = 1      (~0.816)
    level 1: h1(q)(1+q)^2 = 1     (~0.863)
    level 2: h2(q)(1+q)^2 = 1     (the continuant-based series; see tests)

    The level-2 sum is expensive near 1, so its bisection runs a cheap
    coarse stage before tightening the series tolerance.
    """
    if level not in _BETA_LEVELS:
        raise DomainError(f"level must be 0, 1 or 2, got {level}")
    fn, lo, hi, inner = _BETA_LEVELS[level]
    inner = max(inner, tol * 1e-3)
    if level == 2 and tol < 2e-2:
        lo, hi = _bisect(fn, lo, hi, 2e-2, max(10 * inner, 3e-3), level)
    lo, hi = _bisect(fn, lo, hi, tol, inner, level)
    return 0.5 * (lo + hi)


def _bisect(fn, lo, hi, tol, inner, level):
    flo, fhi = fn(lo, inner) - 1.0, fn(hi, inner) - 1.0
    if flo * fhi > 0:
        raise BracketingFailure(f"no sign change on [{lo}, {hi}] for level {level}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (fn(mid, inner) - 1.0) * flo <= 0:
            hi = mid
        else:
            lo, flo = mid, fn(mid, inner) - 1.0
    return lo, hi


def jump_star_partial(q: float, z: float, s: int, max_weight: int) -> float:
    """Truncation of Jump*(q,z)_s: jumps of words with c_1 >= 3 and exactly
    s digits >= 3, weighted by z^length, summed over C_N <= max_weight."""
    total = 0.0
    for word in enumerate_words(max_weight):
        if word.digits[0] < 3:
            continue
        if sum(1 for c in word.digits if c >= 3) != s:
            continue
        total += jump_at(word, q).value * z ** len(word)
    return total
