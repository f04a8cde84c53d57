"""Round-by-round construction of a {x, x+y, x*y} witness from a coloring.

This is the elementary recipe run literally on finite sets: pick the color
class B_0 with the smallest max-gap (the finite stand-in for syndeticity);
each round intersects shifted copies of the current set,

    D_i = B_{i-1}  intersect_j  (B_{i-1} - (y_j^2...y_{i-1}^2) y_i),

dilates (B_i = y_i * D_i, truncated to [1..N]) and re-colors by the class of
largest overlap.  When a color repeats (t_j = t_i, forced by pigeonhole once
enough rounds complete), x~ = min B_i with y = y_{j+1}...y_i yields
x = x~/y and the monochromatic set {x, x+y, x*y}.  On literally computed
sets the containment chain is exact, so a non-integer x or a failed final
verification can only mean an implementation bug -- those raise
ConstructionInvariantError, while a round simply running out of usable y is
an expected outcome reported in the trace.

Sets over [1..N] are Python-int bitsets (bit v = membership of v); shifting
B - c is a single >> and the intersections are ANDs, so a round costs almost
nothing even at N = 10^6.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .coloring import Coloring
from .families import preset_family
from .witnesses import Instance, Witness, verify_witness

__all__ = [
    "FiniteSetWindow",
    "YSearch",
    "ConstructiveTrace",
    "ConstructionInvariantError",
    "max_gap",
    "select_y",
    "run_construction",
    "bits_from_values",
    "values_from_bits",
]


class ConstructionInvariantError(RuntimeError):
    """The exact containment/divisibility chain failed: an implementation bug."""


# ---- bitset helpers ----


def bits_from_values(values: Iterable[int] | np.ndarray, n: int) -> int:
    arr = np.zeros(n + 1, dtype=np.uint8)
    idx = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=np.int64)
    if idx.size:
        if idx.min() < 1 or idx.max() > n:
            raise ValueError(f"set elements must lie in [1..{n}]")
        arr[idx] = 1
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def values_from_bits(bits: int, n: int) -> np.ndarray:
    if bits == 0:
        return np.zeros(0, dtype=np.int64)
    raw = bits.to_bytes((n + 8) // 8 + 1, "little")
    flat = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return np.flatnonzero(flat[: n + 1]).astype(np.int64)


# ---- gap statistics ----


@dataclass(frozen=True)
class FiniteSetWindow:
    """A sorted subset of [lo..hi] viewed against its window."""

    elements: tuple[int, ...]
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty window")
        elems = tuple(sorted(set(self.elements)))
        if elems and (elems[0] < self.lo or elems[-1] > self.hi):
            raise ValueError("elements fall outside the window")
        object.__setattr__(self, "elements", elems)


def _max_gap_array(values: np.ndarray, lo: int, hi: int) -> int:
    """Max gap with the window edges as virtual neighbors at lo-1 and hi."""
    if values.size == 0:
        return hi - lo + 1
    padded = np.concatenate(([lo - 1], values, [hi]))
    return int(np.diff(padded).max())


def max_gap(s: FiniteSetWindow) -> int:
    """Largest distance between consecutive elements, edges included.

    Empty sets score the full window length; {50} in [1..100] scores 50.
    """
    return _max_gap_array(np.asarray(s.elements, dtype=np.int64), s.lo, s.hi)


# ---- shift-intersection search ----


@dataclass(frozen=True)
class YSearch:
    """Outcome of the smallest-y shift search, with diagnostics on failure."""

    y: int | None
    d: tuple[int, ...]
    best_y: int
    best_size: int

    @property
    def ok(self) -> bool:
        return self.y is not None


def _select_y_bits(
    bits: int, multipliers: Sequence[int], y_max: int, size_floor: int
) -> tuple[int | None, int, int, int]:
    best_y, best_size = 0, -1
    for y in range(1, y_max + 1):
        d = bits
        for m in multipliers:
            d &= bits >> (m * y)
            if not d:
                break
        size = d.bit_count()
        if size >= size_floor:
            return y, d, y, size
        if size > best_size:
            best_y, best_size = y, size
    return None, 0, best_y, best_size


def select_y(
    b: Iterable[int],
    n: int,
    multipliers: Sequence[int],
    y_max: int,
    size_floor: int = 1,
) -> YSearch:
    """Smallest y in [1..y_max] with |B and_k (B - m_k y)| >= size_floor.

    B - c means {v - c : v in B, v > c}.  Failure reports the best (y, |D|)
    seen, for diagnostics; it is data, not an exception.
    """
    if y_max < 1:
        raise ValueError("y_max must be >= 1")
    if size_floor < 1:
        raise ValueError("size_floor must be >= 1")
    mults = [int(m) for m in multipliers]
    if any(m < 1 for m in mults):
        raise ValueError("multipliers must be positive")
    bits = bits_from_values(b, n)
    y, d_bits, best_y, best_size = _select_y_bits(bits, mults, y_max, size_floor)
    d = tuple(int(v) for v in values_from_bits(d_bits, n)) if y is not None else ()
    return YSearch(y, d, best_y, best_size)


# ---- the construction itself ----


@dataclass
class ConstructiveTrace:
    n: int
    r: int
    params: dict
    t: list[int] = field(default_factory=list)
    y: list[int] = field(default_factory=list)
    b0_size: int = 0
    set_sizes: list[dict] = field(default_factory=list)
    repeat_pair: tuple[int, int] | None = None
    witness: Witness | None = None
    failure_reason: str | None = None

    @property
    def ok(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            x, yv = self.witness.assignment
            w = {"x": int(x), "y": int(yv), "color": self.witness.color}
        return {
            "n": self.n,
            "r": self.r,
            "params": self.params,
            "t": list(self.t),
            "y": list(self.y),
            "b0_size": self.b0_size,
            "set_sizes": self.set_sizes,
            "repeat_pair": list(self.repeat_pair) if self.repeat_pair else None,
            "witness": w,
            "failure_reason": self.failure_reason,
        }


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConstructionInvariantError(message)


def run_construction(
    coloring: Coloring,
    *,
    y_max: int | None = None,
    size_floor: int = 1,
    max_rounds: int | None = None,
    check_invariants: bool = True,
) -> ConstructiveTrace:
    """Run the shift-intersect-dilate rounds until a color repeats.

    Every round asserts the containment and divisibility invariants on the
    literal sets (check_invariants=False skips them for speed).  A repeat
    extracts and verifies the witness; running out of usable y or dilating to
    nothing ends the trace with failure_reason instead.
    """
    n, r = coloring.n, coloring.r
    y_max = n if y_max is None else y_max
    max_rounds = r + 1 if max_rounds is None else max_rounds
    trace = ConstructiveTrace(
        n, r, {"y_max": y_max, "size_floor": size_floor, "max_rounds": max_rounds}
    )

    class_bits = [0] * (r + 1)
    gaps = [0] * (r + 1)
    for t in range(1, r + 1):
        vals = coloring.class_values(t)
        class_bits[t] = bits_from_values(vals, n)
        gaps[t] = _max_gap_array(vals, 1, n)
    t0 = min(range(1, r + 1), key=lambda t: (gaps[t], t))
    trace.t.append(t0)
    b_bits = class_bits[t0]
    trace.b0_size = b_bits.bit_count()
    history = [b_bits]  # B_0, B_1, ... for invariant checks

    for i in range(1, max_rounds + 1):
        # multiplier list (y_j^2 ... y_{i-1}^2)_{j=1..i}; the last is the empty product 1
        mults = []
        acc = 1
        for l in range(i - 1, 0, -1):
            acc *= trace.y[l - 1] ** 2
            mults.append(acc)
        mults = mults[::-1] + [1]

        y_i, d_bits, best_y, best_size = _select_y_bits(b_bits, mults, y_max, size_floor)
        if y_i is None:
            trace.failure_reason = (
                f"round {i}: no y <= {y_max} reaches |D| >= {size_floor} "
                f"(best: y={best_y} gives |D|={best_size})"
            )
            return trace
        trace.y.append(y_i)
        if check_invariants:
            _require(d_bits & ~b_bits == 0, f"round {i}: D not inside B")
            for m in mults:
                _require(
                    d_bits & ~(b_bits >> (m * y_i)) == 0,
                    f"round {i}: D escapes B - {m}*{y_i}",
                )

        d_vals = values_from_bits(d_bits, n)
        scaled = d_vals * y_i
        kept = scaled[scaled <= n]
        truncated = bool(kept.size < scaled.size)
        d_size = int(d_vals.size)
        if kept.size == 0:
            trace.set_sizes.append({"D": d_size, "B": 0, "truncated": truncated})
            trace.failure_reason = f"round {i}: dilated set {y_i}*D is empty within [1..{n}]"
            return trace
        dil_bits = bits_from_values(kept, n)

        t_i = max(
            range(1, r + 1),
            key=lambda t: ((dil_bits & class_bits[t]).bit_count(), -t),
        )
        b_bits = dil_bits & class_bits[t_i]
        trace.t.append(t_i)
        trace.set_sizes.append(
            {"D": d_size, "B": b_bits.bit_count(), "truncated": truncated}
        )
        history.append(b_bits)

        if check_invariants:
            _require(b_bits & ~dil_bits == 0, f"round {i}: B not inside y*D")
            vals = values_from_bits(b_bits, n)
            div = 1
            for m in range(i - 1, -1, -1):
                div *= trace.y[m]
                if div == 1:
                    continue
                if div < (1 << 62):
                    bad = (vals % div).any()
                else:
                    bad = any(int(v) % div for v in vals)
                _require(
                    not bad,
                    f"round {i}: an element of B_{i} is not divisible by "
                    f"y_{m + 1}*...*y_{i} = {div}",
                )

        first = trace.t.index(t_i)
        if first < i:
            j = first
            xt = (b_bits & -b_bits).bit_length() - 1
            yprod = 1
            for l in range(j, i):
                yprod *= trace.y[l]
            _require(xt % yprod == 0, f"x~ = {xt} is not divisible by y = {yprod}")
            x = xt // yprod
            w = Witness(Instance((x, yprod), (x, x + yprod, x * yprod)), t_i)
            check = verify_witness(preset_family("xyxy"), coloring, w)
            _require(bool(check), f"extracted witness failed verification: {check.reason}")
            trace.repeat_pair = (j, i)
            trace.witness = w
            return trace

    trace.failure_reason = f"no repeated color within {max_rounds} rounds"
    return trace
