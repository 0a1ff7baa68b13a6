"""q-adic series for q-real numbers.

[x]_q for x >= 1 lives in Z[[q]]; the first C_N = sum(c_i - 1) coefficients
are frozen once N digits are known, because consecutive convergents satisfy
a_N b_{N+1} - a_{N+1} b_N = q^(C_N).  Everything here works with exact
integer coefficients; estimates of the radius of convergence and the
fast-growth counterexample construction sit on top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cf import CFStream, CFWord, DigitSource, _continuants_from_digits
from .errors import DomainError, InsufficientData, SearchBudgetExceeded, StreamExhausted
from .poly import IntLaurent, IntPoly

#: golden-ratio radius constant (3 - sqrt(5))/2; -R_STAR is the branch point of [phi]_q
R_STAR = (3.0 - math.sqrt(5.0)) / 2.0


def _prefix_reaching(src: DigitSource, order: int) -> tuple[tuple[int, ...], bool]:
    """Digits to use for work mod q^order.

    Returns (digits, complete): a finite word is complete (exact to all
    orders); for a stream the smallest prefix with C_N >= order is taken.
    """
    if isinstance(src, CFWord):
        return src.digits, True
    digits = []
    weight = 0
    n = 0
    while weight < order:
        n += 1
        try:
            c = src.digit(n)
        except StopIteration as exc:  # pragma: no cover - defensive
            raise StreamExhausted(f"stream ended at digit {n}") from exc
        digits.append(c)
        weight += c - 1
        if n > 4 * order + 16:
            # every digit adds >= 1 to the weight, so this cannot happen
            # for a well-formed stream; guard against a constant-1 source.
            raise StreamExhausted("stream cannot reach the requested order")
    return tuple(digits), False


def q_real_series(src: DigitSource, order: int) -> IntLaurent:
    """[x]_q as an integer power series, exact through q^(order-1)."""
    if order < 1:
        raise DomainError("order must be >= 1")
    digits, _ = _prefix_reaching(src, order)
    a, b = _continuants_from_digits(digits)
    inv = b.truncated(order).series_inverse(order)
    return IntLaurent(0, (a.truncated(order) * inv).coeffs, order)


def reciprocal_series(src: DigitSource, order: int) -> IntLaurent:
    """1/[x]_q by summing q^(C_j) / (a_j a_{j+1}), exact through q^(order-1).

    Terms with C_j >= order cannot touch the window; for a finite word the
    sum over all j < N is the exact rational expansion.
    """
    if order < 1:
        raise DomainError("order must be >= 1")
    digits, complete = _prefix_reaching(src, order + 1)
    total = IntLaurent.zero(order)
    a_prev, a_cur = IntPoly.one(), IntPoly.q_integer(digits[0])
    weight = 0  # C_j for the term about to be added
    j = 0
    while weight < order:
        rel = order - weight
        prod = (a_prev * a_cur).truncated(rel)
        total = total + IntLaurent(weight, prod.series_inverse(rel).coeffs, order)
        if j + 1 >= len(digits):
            break  # complete word: all N terms of the exact expansion added
        # advance continuants: a_{j+1} -> a_{j+2}
        c_next = digits[j + 1]
        w = digits[j] - 1
        a_prev, a_cur = a_cur, IntPoly.q_integer(c_next) * a_cur - a_prev.shift(w)
        weight += w
        j += 1
    return total


def radius_estimate(coeffs: IntLaurent, window: int) -> float:
    """max |beta_n|^(1/n) over the last `window` known coefficients.

    A lower-bound proxy for limsup |beta_n|^(1/n) = 1/R; callers must treat
    it together with the window it was computed on.  Returns 0.0 when every
    coefficient in the window vanishes (entire / polynomial input).
    """
    if window < 1:
        raise DomainError("window must be >= 1")
    hi = coeffs.order
    lo = hi - window
    if lo < 1:
        raise InsufficientData(f"window {window} exceeds the {hi - 1} usable coefficients")
    best = 0.0
    for n in range(lo, hi):
        beta = coeffs.coefficient(n)
        if beta:
            best = max(best, math.exp(math.log(abs(beta)) / n))
    return best


@dataclass
class GrowthSchedule:
    """Block boundaries n_1 < n_2 < ... of the fast-growth word, plus search state."""

    targets: list[int] = field(default_factory=list)
    budget: int = 5000
    scanned: list[int] = field(default_factory=list)

    def stage_bound(self, m: int) -> float:
        """Growth threshold 1/(R* + 1/m) that stage m must reach."""
        return 1.0 / (R_STAR + 1.0 / m)


def _stage_digit_fn(targets: list[int]):
    """Digit function of x(m): blocks for each target, then 2, 3, 3, ..."""
    boundary = set(targets)

    def gen(i: int) -> int:
        # positions right after a completed block (and position 1) hold a 2
        if i == 1:
            return 2
        if (i - 1) in boundary:
            return 2
        return 3

    return gen


def counterexample_stream(stages: int, budget: int = 5000) -> tuple[CFStream, GrowthSchedule]:
    """Fast-growth word whose series has radius of convergence <= R*.

    Stage m expands the coefficients beta_n of the current eventually-golden
    word x(m-1) until |beta_n|^(1/n) >= 1/(R* + 1/m), records that n as n_m,
    and restarts with the extended block structure.  The returned stream is
    x(stages) (blocks, then 2, 3bar); its first n_stages coefficients agree
    with the limit word's.
    """
    if stages < 1:
        raise DomainError("stages must be >= 1")
    schedule = GrowthSchedule(budget=budget)
    for m in range(1, stages + 1):
        stream = CFStream(_stage_digit_fn(schedule.targets))
        bound = schedule.stage_bound(m)
        start = schedule.targets[-1] + 1 if schedule.targets else 1
        found = None
        order = max(start + 8, 16)
        series = q_real_series(stream, order)
        n = start
        while found is None:
            if n >= order:
                order = min(max(2 * order, n + 8), budget + 1)
                series = q_real_series(stream, order)
            if n >= order:
                raise SearchBudgetExceeded(
                    f"stage {m}: no index below budget {budget} meets {bound:.6f}"
                )
            beta = series.coefficient(n)
            if beta and math.exp(math.log(abs(beta)) / n) >= bound:
                found = n
            else:
                n += 1
                if n > budget:
                    raise SearchBudgetExceeded(
                        f"stage {m}: no index below budget {budget} meets {bound:.6f}"
                    )
        schedule.targets.append(found)
        schedule.scanned.append(found - start + 1)
    return CFStream(_stage_digit_fn(schedule.targets)), schedule


def verify_schedule(stream: CFStream, schedule: GrowthSchedule) -> list[tuple[int, float, float]]:
    """Recompute |beta_(n_m)|^(1/n_m) from the final stream for every stage.

    Returns (n_m, achieved, bound) triples; achieved >= bound must hold.
    """
    if not schedule.targets:
        return []
    series = q_real_series(stream, schedule.targets[-1] + 1)
    out = []
    for m, n in enumerate(schedule.targets, start=1):
        beta = series.coefficient(n)
        achieved = math.exp(math.log(abs(beta)) / n) if beta else 0.0
        out.append((n, achieved, schedule.stage_bound(m)))
    return out
