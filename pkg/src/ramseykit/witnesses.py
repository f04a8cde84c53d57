"""Instance enumeration and monochromatic witness search over [1..N].

Semantics (finite truncation): an assignment x in box (default [1..N]^s) is
*admissible* when every family term evaluates into [1..N]; it is a *witness*
under a coloring when additionally all term values share one color (and are
pairwise distinct, if requested).  Absence of a witness is a value, not an
error.

Enumeration is lexicographic in the assignment and prunes two ways, both
sound over positive assignments:
  * once a term's variables are all assigned, its value must lie in [1..N];
  * a term whose coefficients are all positive is monotone in every variable,
    so its value at the current prefix padded with ones is a lower bound --
    if that already exceeds N, the whole subtree (and all larger values of
    the current variable) dies.

Counting has a vectorized numpy path, chunked over the first variable, used
only when a symbolic bound proves int64 cannot overflow; otherwise it falls
back to the exact streaming path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .coloring import Coloring
from .families import PatternFamily
from .polynomials import IntPoly

__all__ = [
    "Instance",
    "Witness",
    "VerifyResult",
    "enumerate_instances",
    "enumeration_complete",
    "iter_witnesses",
    "find_witness",
    "find_witnesses",
    "count_witnesses",
    "verify_witness",
    "witness_to_json",
    "witness_from_json",
]

Box = tuple[tuple[int, int], ...]

# keep vectorized slabs around this many cells
_SLAB_CELLS = 1 << 21
# int64 is safe while |term| stays below this (headroom under 2^63)
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class Instance:
    assignment: tuple[int, ...]
    term_values: tuple[int, ...]


@dataclass(frozen=True)
class Witness:
    instance: Instance
    color: int

    @property
    def assignment(self) -> tuple[int, ...]:
        return self.instance.assignment

    @property
    def term_values(self) -> tuple[int, ...]:
        return self.instance.term_values


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _normalize_box(family: PatternFamily, n: int, box: Sequence | None) -> Box:
    if box is None:
        return tuple((1, n) for _ in range(family.num_vars))
    if isinstance(box, int):
        return tuple((1, box) for _ in range(family.num_vars))
    out = []
    for entry in box:
        if isinstance(entry, int):
            out.append((1, entry))
        else:
            lo, hi = entry
            out.append((int(lo), int(hi)))
    if len(out) != family.num_vars:
        raise ValueError(f"box needs {family.num_vars} entries, got {len(out)}")
    for lo, hi in out:
        if lo < 1:
            raise ValueError("box lower bounds must be >= 1 (assignments are positive)")
    return tuple(out)


def enumeration_complete(family: PatternFamily, n: int, box: Sequence | None = None) -> bool:
    """True iff the box provably covers every admissible assignment.

    The default box is [1..N] per variable, which is complete exactly when the
    family's box_complete() holds; an explicit box is complete when it also
    contains [1..N] in every coordinate.
    """
    nb = _normalize_box(family, n, box)
    return family.box_complete() and all(lo == 1 and hi >= n for lo, hi in nb)


def _last_var(term: IntPoly) -> int:
    used = term.used_vars()
    return max(used) if used else -1


def enumerate_instances(
    family: PatternFamily, n: int, box: Sequence | None = None
) -> Iterator[Instance]:
    """Yield admissible instances in lexicographic assignment order.

    Whether this stream provably contains *all* admissible instances is
    reported by enumeration_complete(family, n, box).
    """
    if n < 1:
        raise ValueError("N must be >= 1")
    nb = _normalize_box(family, n, box)
    nv = family.num_vars
    terms = family.terms
    k = len(terms)

    last = [_last_var(t) for t in terms]
    positive = [t.all_coeffs_positive() for t in terms]
    # constant terms either kill everything or impose nothing
    for i, t in enumerate(terms):
        if last[i] == -1 and not 1 <= t.constant_term() <= n:
            return
    finish_at: list[list[int]] = [[] for _ in range(nv)]
    for i in range(k):
        if last[i] >= 0:
            finish_at[last[i]].append(i)
    positive_open: list[list[int]] = [[] for _ in range(nv)]
    for i in range(k):
        if positive[i] and last[i] >= 0:
            for d in range(last[i]):
                positive_open[d].append(i)

    assignment = [0] * nv
    values = [t.constant_term() for t in terms]
    point = [1] * nv  # scratch: prefix + ones padding

    def walk(d: int) -> Iterator[Instance]:
        lo, hi = nb[d]
        for v in range(lo, hi + 1):
            assignment[d] = v
            point[d] = v
            dead = False
            # lower bounds of still-open positive terms only grow with v: break
            for i in positive_open[d]:
                for j in range(d + 1, nv):
                    point[j] = 1
                if terms[i].evaluate(point) > n:
                    return
            for i in finish_at[d]:
                val = terms[i].evaluate(assignment)
                if 1 <= val <= n:
                    values[i] = val
                elif positive[i]:
                    return  # monotone in v: larger v only worse
                else:
                    dead = True
                    break
            if dead:
                continue
            if d + 1 == nv:
                yield Instance(tuple(assignment), tuple(values))
            else:
                yield from walk(d + 1)

    if nv == 0:
        raise ValueError("family has no variables")
    yield from walk(0)


def iter_witnesses(
    family: PatternFamily,
    coloring: Coloring,
    *,
    distinct: bool | None = None,
    box: Sequence | None = None,
) -> Iterator[Witness]:
    """Witnesses in lexicographic assignment order (streaming)."""
    if distinct is None:
        distinct = family.distinct_required
    n = coloring.n
    cols = coloring.colors
    for inst in enumerate_instances(family, n, box):
        vals = inst.term_values
        if distinct and len(set(vals)) != len(vals):
            continue
        c = int(cols[vals[0] - 1])
        if all(int(cols[v - 1]) == c for v in vals[1:]):
            yield Witness(inst, c)


def find_witness(
    family: PatternFamily,
    coloring: Coloring,
    *,
    distinct: bool | None = None,
    box: Sequence | None = None,
) -> Witness | None:
    """Lexicographically smallest witness, or None."""
    return next(iter_witnesses(family, coloring, distinct=distinct, box=box), None)


def find_witnesses(
    family: PatternFamily,
    coloring: Coloring,
    *,
    distinct: bool | None = None,
    box: Sequence | None = None,
) -> list[Witness]:
    return list(iter_witnesses(family, coloring, distinct=distinct, box=box))


def _int64_safe(family: PatternFamily, nb: Box) -> bool:
    bounds = [hi for _, hi in nb]
    return all(t.max_abs_on_box(bounds) < _INT64_SAFE for t in family.terms)


def _eval_term_on_columns(term: IntPoly, cols: list[np.ndarray]) -> np.ndarray:
    total = np.zeros(cols[0].shape, dtype=np.int64)
    for exps, c in term.monomials:
        m = np.full(cols[0].shape, c, dtype=np.int64)
        for i, e in enumerate(exps):
            if e:
                m *= cols[i] ** e
        total += m
    return total


def count_witnesses(
    family: PatternFamily,
    coloring: Coloring,
    *,
    distinct: bool | None = None,
    box: Sequence | None = None,
) -> int:
    """Exact witness count; vectorized when overflow-provably-safe."""
    if distinct is None:
        distinct = family.distinct_required
    n = coloring.n
    nb = _normalize_box(family, n, box)
    if not _int64_safe(family, nb):
        return sum(1 for _ in iter_witnesses(family, coloring, distinct=distinct, box=box))

    nv = family.num_vars
    terms = family.terms
    sizes = [hi - lo + 1 for lo, hi in nb]
    if any(s <= 0 for s in sizes):
        return 0
    rest_total = 1
    for s in sizes[1:]:
        rest_total *= s
    # rest-grid in lexicographic order, reused across slabs of x0
    if nv > 1:
        rest = np.indices(sizes[1:]).reshape(nv - 1, -1).astype(np.int64)
        for i in range(1, nv):
            rest[i - 1] += nb[i][0]
    else:
        rest = np.zeros((0, 1), dtype=np.int64)
        rest_total = 1

    cols_colors = coloring.colors.astype(np.int64)
    slab = max(1, _SLAB_CELLS // max(1, rest_total))
    lo0, hi0 = nb[0]
    total = 0
    for start in range(lo0, hi0 + 1, slab):
        stop = min(hi0, start + slab - 1)
        x0 = np.arange(start, stop + 1, dtype=np.int64)
        cols = [np.repeat(x0, rest_total)]
        for i in range(1, nv):
            cols.append(np.tile(rest[i - 1], stop - start + 1))
        vals = [_eval_term_on_columns(t, cols) for t in terms]
        ok = np.ones(cols[0].shape, dtype=bool)
        for v in vals:
            ok &= (v >= 1) & (v <= n)
        if distinct:
            for i in range(len(vals)):
                for j in range(i + 1, len(vals)):
                    ok &= vals[i] != vals[j]
        idx0 = np.clip(vals[0], 1, n) - 1
        c0 = cols_colors[idx0]
        for v in vals[1:]:
            ok &= cols_colors[np.clip(v, 1, n) - 1] == c0
        total += int(ok.sum())
    return total


def verify_witness(
    family: PatternFamily,
    coloring: Coloring,
    witness: Witness,
    *,
    distinct: bool | None = None,
) -> VerifyResult:
    """Re-check a witness from scratch; the reason pinpoints the first failure.

    Term positions in reasons are 1-based.
    """
    if distinct is None:
        distinct = family.distinct_required
    inst = witness.instance
    if len(inst.assignment) != family.num_vars:
        return VerifyResult(False, "assignment arity mismatch")
    if any(v < 1 for v in inst.assignment):
        return VerifyResult(False, "assignment entries must be positive")
    if len(inst.term_values) != len(family.terms):
        return VerifyResult(False, "term value count mismatch")
    for i, t in enumerate(family.terms):
        val = t.evaluate(inst.assignment)
        if val != inst.term_values[i]:
            return VerifyResult(
                False, f"term {i + 1} value {inst.term_values[i]} != recomputed {val}"
            )
        if not 1 <= val <= coloring.n:
            return VerifyResult(False, f"term {i + 1} out of range")
    if distinct and len(set(inst.term_values)) != len(inst.term_values):
        return VerifyResult(False, "term values not pairwise distinct")
    for i, val in enumerate(inst.term_values):
        c = coloring.color_of(val)
        if c != witness.color:
            return VerifyResult(False, f"term {i + 1} colored {c} != {witness.color}")
    return VerifyResult(True, None)


def witness_to_json(family: PatternFamily, coloring: Coloring, witness: Witness) -> dict:
    return {
        "family_name": family.name,
        "family": family.to_json(),
        "n": coloring.n,
        "r": coloring.r,
        "assignment": list(witness.assignment),
        "term_values": list(witness.term_values),
        "color": witness.color,
    }


def witness_from_json(data: dict) -> tuple[Witness, PatternFamily | None]:
    """Rebuild a witness (and the embedded family, when present)."""
    w = Witness(
        Instance(tuple(data["assignment"]), tuple(data["term_values"])),
        int(data["color"]),
    )
    fam = PatternFamily.from_json(data["family"]) if "family" in data else None
    return w, fam
