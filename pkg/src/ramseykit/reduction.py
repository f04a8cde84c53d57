"""Monochromatic solutions of c_1 a_1^2 + ... + c_k a_k^2 = a_0 via witnesses.

For a zero-sum integer vector c the substitution a_l = (x + u_l y)/b turns a
monochromatic instance of the four-term pattern {x, x*y, x+y, x+u_l*y} into a
solution of the quadratic equation, provided u solves sum c_l u_l^2 = 0 and
b = 2 sum c_l u_l > 0.  Such u come from rational roots of

    p(t) = sum_l c_l (1 + l t)^2      (or q, which replaces the last
                                       addend by c_k (1 + 2k t)^2)

by clearing the denominator: t = num/d gives u_l = d + l*num.  Both p and q
are at most quadratic with zero constant term (the zero-sum kills it), so a
non-zero rational root is a closed-form check away; if neither variant
yields usable u the vector is rejected as degenerate.

The coloring side: chi on [1..N] lifts to chi~ on [1..bN] with
chi~(n) = chi(n/b) when b | n and a fresh color r + (n mod b) otherwise.
Any monochromatic witness of the pattern under chi~ is forced onto
multiples of b (x + y = x mod b gives b | y, then x*y = x mod b gives
b | x), so the decode below never truncates -- a division failure raises
rather than rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coloring import Coloring
from .families import reduction_family
from .polynomials import ZeroPolynomialError, rational_roots_deg2
from .witnesses import VerifyResult, iter_witnesses

__all__ = [
    "ReductionData",
    "QuadSolution",
    "DegenerateCoefficientsError",
    "DivisibilityViolation",
    "quadratic_setup",
    "lift_coloring",
    "exp_lift",
    "solve_quadratic",
    "verify_quad_solution",
    "solution_to_json",
]


class DegenerateCoefficientsError(ValueError):
    """Neither candidate polynomial yields a usable substitution vector."""


class DivisibilityViolation(RuntimeError):
    """A verified witness decoded off the multiples of b: an implementation bug."""


@dataclass(frozen=True)
class ReductionData:
    """The substitution data: which polynomial, its root, and the u vector."""

    c: tuple[int, ...]
    chosen_poly: str
    root_t: Fraction
    d: int
    u: tuple[int, ...]
    sign_flips: tuple[int, ...]
    b: int

    def to_json(self) -> dict:
        return {
            "c": list(self.c),
            "chosen_poly": self.chosen_poly,
            "root_t": [self.root_t.numerator, self.root_t.denominator],
            "d": self.d,
            "u": list(self.u),
            "sign_flips": list(self.sign_flips),
            "b": self.b,
        }


@dataclass(frozen=True)
class QuadSolution:
    a: tuple[int, ...]
    color: int
    source_witness: tuple[int, int]


def _candidate_coeffs(c: tuple[int, ...], variant: str) -> tuple[int, int, int]:
    """Ascending coefficients (0, alpha, beta) of the candidate polynomial."""
    k = len(c)
    alpha = 2 * sum(l * cl for l, cl in enumerate(c, 1))
    beta = sum(l * l * cl for l, cl in enumerate(c, 1))
    if variant == "q":
        alpha += 2 * k * c[-1]
        beta += 3 * k * k * c[-1]
    return (0, alpha, beta)


def quadratic_setup(c) -> ReductionData:
    """Find u with sum c u^2 = 0, all entries distinct, and b = 2 sum c u > 0.

    Tries p first, then q; within a candidate a zero sum c_l u_l is repaired
    by flipping the sign of one entry (recorded in sign_flips), and a
    negative sum by negating all of u.  Raises DegenerateCoefficientsError
    when both candidates fail, with the reason for each.
    """
    c = tuple(int(v) for v in c)
    k = len(c)
    if k < 2:
        raise ValueError("need at least two coefficients")
    if any(v == 0 for v in c):
        raise ValueError("coefficients must be non-zero")
    if sum(c) != 0:
        raise ValueError(f"coefficients must sum to zero (got {sum(c)})")

    failures = []
    for tag in ("p", "q"):
        try:
            roots = [t for t in rational_roots_deg2(_candidate_coeffs(c, tag)) if t != 0]
        except ZeroPolynomialError:
            failures.append(f"{tag} is identically zero")
            continue
        if not roots:
            failures.append(f"{tag} has no non-zero rational root")
            continue
        t = roots[0]
        d, num = t.denominator, t.numerator
        u = [d + l * num for l in range(1, k + 1)]
        if tag == "q":
            u[-1] = d + 2 * k * num
        if sum(cl * ul * ul for cl, ul in zip(c, u)) != 0:
            raise AssertionError("root did not clear the quadratic form")
        if len(set(u)) != k:
            failures.append(f"{tag} gives colliding u entries {tuple(u)}")
            continue

        s = sum(cl * ul for cl, ul in zip(c, u))
        flips: tuple[int, ...] = ()
        if s == 0:
            for idx in range(k):
                if u[idx] == 0:
                    continue
                cand = list(u)
                cand[idx] = -cand[idx]
                if len(set(cand)) != k:
                    continue
                s2 = s - 2 * c[idx] * u[idx]
                if s2 != 0:
                    u, s, flips = cand, s2, (idx,)
                    break
            else:
                failures.append(f"{tag}: sum c*u cannot be made non-zero by one flip")
                continue
        if s < 0:
            u = [-v for v in u]
            s = -s
        return ReductionData(c, tag, t, d, tuple(u), flips, 2 * s)

    raise DegenerateCoefficientsError(
        "no usable substitution vector: " + "; ".join(failures)
    )


def lift_coloring(chi: Coloring, b: int, r: int | None = None) -> Coloring:
    """Stretch chi by b: multiples of b inherit chi(n/b), the rest get
    fresh colors r+1 .. r+b-1 by residue.  The result colors [1..b*N]."""
    if b < 2:
        raise ValueError("b must be >= 2")
    if r is None:
        r = chi.r
    elif r != chi.r:
        raise ValueError(f"r={r} does not match the coloring's r={chi.r}")
    v = np.arange(1, b * chi.n + 1, dtype=np.int64)
    rem = v % b
    base = chi.colors[np.maximum(v // b, 1) - 1]
    lifted = np.where(rem == 0, base, r + rem).astype(np.int32)
    return Coloring(b * chi.n, r + b - 1, lifted)


def exp_lift(chi: Coloring, base: int) -> Coloring:
    """Pull back chi along i -> base^i: position i gets chi(base^i)."""
    if base < 2:
        raise ValueError("base must be >= 2")
    powers = []
    p = base
    while p <= chi.n:
        powers.append(p)
        p *= base
    if not powers:
        raise ValueError(f"domain too small: {base}^1 exceeds N={chi.n}")
    return Coloring(len(powers), chi.r, [chi.color_of(v) for v in powers])


def solve_quadratic(c, chi: Coloring, search_box=None) -> QuadSolution | None:
    """Monochromatic solution of sum c_l a_l^2 = a_0 under chi, if one exists
    within reach of the lifted witness search.

    Enumerates witnesses of the u-pattern under the lifted coloring in
    lexicographic assignment order and decodes the first one whose a-values
    are positive and pairwise distinct.  Returns None when the stream ends
    without a usable witness.
    """
    rd = quadratic_setup(c)
    lifted = lift_coloring(chi, rd.b)
    fam = reduction_family(rd.u)
    for w in iter_witnesses(fam, lifted, distinct=False, box=search_box):
        x, y = (int(v) for v in w.assignment)
        if x % rd.b or y % rd.b:
            raise DivisibilityViolation(
                f"witness (x={x}, y={y}) is not divisible by b={rd.b}"
            )
        a = [x * y // rd.b] + [(x + ul * y) // rd.b for ul in rd.u]
        if any(v < 1 for v in a) or len(set(a)) != len(a):
            continue
        if w.color > chi.r:
            raise DivisibilityViolation(
                f"witness color {w.color} is a residue color, not one of chi's {chi.r}"
            )
        return QuadSolution(tuple(a), w.color, (x, y))
    return None


def verify_quad_solution(c, chi: Coloring, sol: QuadSolution) -> VerifyResult:
    """Re-check a solution from scratch: equation, positivity, distinctness,
    one color.  Shares no arithmetic with the solver."""
    c = tuple(int(v) for v in c)
    a = sol.a
    if len(a) != len(c) + 1:
        return VerifyResult(False, f"expected {len(c) + 1} values, got {len(a)}")
    if any(v < 1 for v in a):
        return VerifyResult(False, "values must be positive")
    if len(set(a)) != len(a):
        return VerifyResult(False, "values must be pairwise distinct")
    lhs = sum(cl * al * al for cl, al in zip(c, a[1:]))
    if lhs != a[0]:
        return VerifyResult(False, f"equation fails: lhs={lhs} != a0={a[0]}")
    if any(v > chi.n for v in a):
        return VerifyResult(False, "a value falls outside the coloring's domain")
    cols = {chi.color_of(v) for v in a}
    if cols != {sol.color}:
        return VerifyResult(False, f"colors {sorted(cols)} do not all equal {sol.color}")
    return VerifyResult(True, None)


def solution_to_json(rd: ReductionData, sol: QuadSolution) -> dict:
    return {
        "c": list(rd.c),
        "u": list(rd.u),
        "b": rd.b,
        "a": list(sol.a),
        "color": sol.color,
        "source_witness": list(sol.source_witness),
    }
