"""Adaptive Simpson quadrature with a hard cap on interval halving."""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .errors import NumericalError

# panels whose estimates differ only by rounding are accepted
_ROUNDING = 16 * sys.float_info.epsilon


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    evaluations: int


def adaptive_simpson(f, a, b, abs_tol=1e-9, max_depth=30):
    """Integrate ``f`` over [a, b] to an absolute tolerance.

    Each panel is split until the two-panel Simpson estimate differs from the
    one-panel estimate by at most ``15 * tol`` (tolerance halves per split)
    or by no more than rounding noise.
    The accepted value carries the Richardson correction. ``error`` is the sum
    of the per-panel error estimates.

    Raises NumericalError carrying the last two estimates when a panel still
    has not converged after ``max_depth`` halvings.
    """
    if not abs_tol > 0:
        raise ValueError("abs_tol must be positive")
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0

    fa, fm, fb = f(a), f((a + b) / 2), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    evaluations = 3
    total = 0.0
    error = 0.0
    # explicit stack keeps traversal left-to-right and deterministic
    stack = [(a, b, fa, fm, fb, whole, abs_tol, 0)]
    while stack:
        lo, hi, flo, fmid, fhi, est, tol, depth = stack.pop()
        mid = (lo + hi) / 2
        lm, rm = (lo + mid) / 2, (mid + hi) / 2
        flm, frm = f(lm), f(rm)
        evaluations += 2
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        refined = left + right
        diff = refined - est
        if abs(diff) <= max(15.0 * tol, _ROUNDING * abs(refined)):
            total += refined + diff / 15.0
            error += abs(diff) / 15.0
            continue
        if depth + 1 >= max_depth:
            raise NumericalError(
                f"adaptive Simpson did not converge on [{lo}, {hi}] after {max_depth} halvings",
                estimates=(est, refined),
            )
        stack.append((mid, hi, fmid, frm, fhi, right, tol / 2, depth + 1))
        stack.append((lo, mid, flo, flm, fmid, left, tol / 2, depth + 1))
    return QuadResult(sign * total, error, evaluations)
