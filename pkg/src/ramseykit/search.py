"""Avoiding-coloring search and threshold numbers.

An r-coloring of [1..N] *avoids* a family when no admissible instance is
monochromatic; the threshold T(P, r) is the least N with no avoiding
coloring.  The search is a backtracking DFS over positions 1..N:

  * instances are precomputed once and bucketed by their maximum term value,
    so placing a color at position v only inspects instances whose maximum
    is v (each stored as the sorted tuple of its other values);
  * symmetry breaking is the canonical color-introduction rule -- position 1
    takes color 1 and each new color label appears in increasing order --
    which divides the tree by up to r! and keeps the first avoider
    deterministic;
  * node and wall-clock budgets surface as SearchBudgetExceeded, a
    first-class outcome distinct from "no avoider".

Parallel mode distributes canonical prefixes of a small depth to worker
processes; whoever finds an avoider first wins (any avoider is acceptable
there -- lexicographically-first is only promised for jobs=1).
"""

from __future__ import annotations

import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field

from .coloring import Coloring
from .families import PatternFamily
from .witnesses import count_witnesses, enumerate_instances

__all__ = [
    "AvoidCertificate",
    "ThresholdResult",
    "SearchStats",
    "SearchBudgetExceeded",
    "IncompleteBoxError",
    "build_instance_index",
    "exists_avoiding",
    "find_all_avoiding",
    "threshold",
    "greedy_avoider",
    "verify_certificate",
]


class IncompleteBoxError(ValueError):
    """The family admits assignments outside [1..N]^s, so [1..N]-search is unsound."""


class SearchBudgetExceeded(RuntimeError):
    """Node or time budget ran out before the question was decided."""

    def __init__(self, message: str, nodes: int = 0, elapsed: float = 0.0):
        super().__init__(message)
        self.nodes = nodes
        self.elapsed = elapsed


@dataclass
class SearchStats:
    nodes: int = 0
    elapsed: float = 0.0

    def add(self, nodes: int, elapsed: float) -> None:
        self.nodes += nodes
        self.elapsed += elapsed


@dataclass
class AvoidCertificate:
    """A checked avoiding coloring, self-contained for later re-verification."""

    family: PatternFamily
    n: int
    r: int
    rle: list[list[int]]
    verified: bool = False
    box_relative: bool = False

    def to_coloring(self) -> Coloring:
        return Coloring.from_rle(self.n, self.r, self.rle)

    @classmethod
    def from_coloring(
        cls,
        family: PatternFamily,
        coloring: Coloring,
        *,
        box_relative: bool = False,
        verify: bool = True,
    ) -> "AvoidCertificate":
        cert = cls(
            family,
            coloring.n,
            coloring.r,
            coloring.to_rle(),
            verified=False,
            box_relative=box_relative,
        )
        if verify:
            if count_witnesses(family, coloring) != 0:
                raise ValueError("coloring is not avoiding; refusing to certify")
            cert.verified = True
        return cert

    def to_json(self) -> dict:
        return {
            "family_name": self.family.name,
            "family": self.family.to_json(),
            "fingerprint": self.family.fingerprint(),
            "n": self.n,
            "r": self.r,
            "coloring_rle": [list(run) for run in self.rle],
            "verified": self.verified,
            "box_relative": self.box_relative,
        }

    @classmethod
    def from_json(cls, data: dict) -> "AvoidCertificate":
        return cls(
            PatternFamily.from_json(data["family"]),
            int(data["n"]),
            int(data["r"]),
            [list(run) for run in data["coloring_rle"]],
            bool(data.get("verified", False)),
            bool(data.get("box_relative", False)),
        )


@dataclass
class ThresholdResult:
    family_name: str | None
    fingerprint: str
    r: int
    value: int
    exact: bool
    certificate: AvoidCertificate | None
    nodes: int = 0
    elapsed: float = 0.0

    def describe(self) -> str:
        return f"T = {self.value}" if self.exact else f"T >= {self.value}"

    def to_json(self) -> dict:
        return {
            "family_name": self.family_name,
            "fingerprint": self.fingerprint,
            "r": self.r,
            "value": self.value,
            "exact": self.exact,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "nodes": self.nodes,
        }


def build_instance_index(family: PatternFamily, n: int) -> list[list[tuple[int, ...]]]:
    """buckets[v] = sorted tuples of 'other values' of instances whose max is v.

    An empty tuple in a bucket marks a singleton value set: that position can
    never be colored without completing a monochromatic instance.
    """
    k = len(family.terms)
    buckets: list[set[tuple[int, ...]]] = [set() for _ in range(n + 1)]
    for inst in enumerate_instances(family, n):
        vals = inst.term_values
        if family.distinct_required and len(set(vals)) != k:
            continue
        vs = set(vals)
        mx = max(vs)
        buckets[mx].add(tuple(sorted(vs - {mx})))
    return [sorted(b) for b in buckets]


def _blocked(bucket: list[tuple[int, ...]], colors: list[int], c: int) -> bool:
    for others in bucket:
        hit = True
        for o in others:
            if colors[o] != c:
                hit = False
                break
        if hit:
            return True
    return False


def _dfs(
    buckets: list[list[tuple[int, ...]]],
    n: int,
    r: int,
    prefix: tuple[int, ...],
    max_nodes: int | None,
    time_limit: float | None,
    find_all: bool = False,
) -> tuple[list[list[int]], int]:
    """Canonical DFS from a fixed prefix.

    Returns (solutions, nodes); solutions holds the first avoiding coloring
    (or every one of them with find_all) as plain color lists.
    """
    t0 = time.monotonic()
    deadline = t0 + time_limit if time_limit is not None else None
    base = len(prefix)
    colors = [0] * (n + 1)
    used_before = [0] * (n + 2)
    for p, c in enumerate(prefix, start=1):
        colors[p] = c
        used_before[p + 1] = max(used_before[p], c)
    found: list[list[int]] = []
    if base >= n:
        return ([colors[1 : n + 1]] if n else []), 0
    pos = base + 1
    trial = [0] * (n + 2)
    trial[pos] = 1
    nodes = 0
    while pos > base:
        c = trial[pos]
        limit = min(r, used_before[pos] + 1)
        moved = False
        while c <= limit:
            nodes += 1
            if nodes & 2047 == 0:
                if deadline is not None and time.monotonic() > deadline:
                    raise SearchBudgetExceeded(
                        "time limit exceeded", nodes, time.monotonic() - t0
                    )
            if max_nodes is not None and nodes > max_nodes:
                raise SearchBudgetExceeded("node budget exceeded", nodes, time.monotonic() - t0)
            if not _blocked(buckets[pos], colors, c):
                colors[pos] = c
                trial[pos] = c + 1
                used_before[pos + 1] = max(used_before[pos], c)
                if pos == n:
                    found.append(colors[1 : n + 1])
                    if not find_all:
                        return found, nodes
                    colors[pos] = 0  # keep scanning siblings
                    c += 1
                    continue
                pos += 1
                trial[pos] = 1
                moved = True
                break
            c += 1
        if moved:
            continue
        colors[pos] = 0
        pos -= 1
    return found, nodes


def _worker_search(args) -> tuple[list[int] | None, int, str | None]:
    buckets, n, r, prefixes, max_nodes, time_limit = args
    nodes = 0
    for prefix in prefixes:
        try:
            found, k = _dfs(buckets, n, r, prefix, max_nodes, time_limit)
        except SearchBudgetExceeded as e:
            return None, nodes + e.nodes, str(e)
        nodes += k
        if found:
            return found[0], nodes, None
    return None, nodes, None


def _canonical_prefixes(
    buckets: list[list[tuple[int, ...]]], n: int, r: int, want: int
) -> tuple[list[tuple[int, ...]], int, list[int] | None]:
    """Expand consistent canonical prefixes until there are >= want of them.

    Returns (prefixes, nodes, full_solution); full_solution is set when the
    expansion reached depth n, i.e. the lex-first avoider was found outright.
    """
    prefixes: list[tuple[int, ...]] = [()]
    colors = [0] * (n + 1)
    nodes = 0
    depth = 0
    while len(prefixes) < want and depth < n:
        depth += 1
        nxt: list[tuple[int, ...]] = []
        for prefix in prefixes:
            for p, c in enumerate(prefix, start=1):
                colors[p] = c
            used = max(prefix, default=0)
            for c in range(1, min(r, used + 1) + 1):
                nodes += 1
                if not _blocked(buckets[depth], colors, c):
                    nxt.append(prefix + (c,))
            for p in range(1, len(prefix) + 1):
                colors[p] = 0
        prefixes = nxt
        if not prefixes:
            return [], nodes, None
        if depth == n:
            return [], nodes, list(prefixes[0])
    return prefixes, nodes, None


def exists_avoiding(
    family: PatternFamily,
    r: int,
    n: int,
    *,
    jobs: int = 1,
    max_nodes: int | None = None,
    time_limit: float | None = None,
    allow_box_relative: bool = False,
    stats: SearchStats | None = None,
) -> AvoidCertificate | None:
    """First avoiding coloring in canonical order, as a verified certificate.

    Box-incomplete families are rejected unless allow_box_relative is set, in
    which case the certificate is stamped box_relative=True (the search then
    only rules out instances with assignments inside [1..N]^s).
    """
    if r < 1 or n < 1:
        raise ValueError("need r >= 1 and n >= 1")
    box_relative = not family.box_complete()
    if box_relative and not allow_box_relative:
        missing = sorted(set(range(family.num_vars)) - set(family.bounded_vars()))
        raise IncompleteBoxError(
            f"variables {missing} are not bounded by any all-positive term; "
            "pass allow_box_relative=True for a box-relative search"
        )
    t0 = time.monotonic()
    buckets = build_instance_index(family, n)

    solution: list[int] | None = None
    nodes = 0
    if jobs <= 1:
        found, nodes = _dfs(buckets, n, r, (), max_nodes, time_limit)
        solution = found[0] if found else None
    else:
        prefixes, nodes, direct = _canonical_prefixes(buckets, n, r, 4 * jobs)
        if direct is not None:
            solution = direct
        elif prefixes:
            groups = [prefixes[i::jobs] for i in range(jobs)]
            groups = [g for g in groups if g]
            budget_msg = None
            with ProcessPoolExecutor(max_workers=len(groups)) as ex:
                futs = {
                    ex.submit(_worker_search, (buckets, n, r, g, max_nodes, time_limit))
                    for g in groups
                }
                pending = set(futs)
                while pending:
                    done, pending = wait(pending, return_when=FIRST_COMPLETED)
                    for fut in done:
                        sol, k, msg = fut.result()
                        nodes += k
                        if msg is not None:
                            budget_msg = msg
                        if sol is not None and solution is None:
                            solution = sol
                    if solution is not None:
                        for fut in pending:
                            fut.cancel()
                        break
            if solution is None and budget_msg is not None:
                raise SearchBudgetExceeded(budget_msg, nodes, time.monotonic() - t0)

    elapsed = time.monotonic() - t0
    if stats is not None:
        stats.add(nodes, elapsed)
    if solution is None:
        return None
    coloring = Coloring.from_sequence(solution, r)
    if count_witnesses(family, coloring) != 0:
        raise RuntimeError("internal error: search returned a non-avoiding coloring")
    cert = AvoidCertificate.from_coloring(
        family, coloring, box_relative=box_relative, verify=False
    )
    cert.verified = True
    return cert


def find_all_avoiding(
    family: PatternFamily,
    r: int,
    n: int,
    *,
    max_nodes: int | None = None,
    time_limit: float | None = None,
) -> list[tuple[int, ...]]:
    """Every canonical avoiding coloring (for naive-equivalence checks)."""
    if not family.box_complete():
        raise IncompleteBoxError("find_all_avoiding needs a box-complete family")
    buckets = build_instance_index(family, n)
    found, _ = _dfs(buckets, n, r, (), max_nodes, time_limit, find_all=True)
    return sorted(tuple(sol) for sol in found)


def threshold(
    family: PatternFamily,
    r: int,
    max_n: int,
    *,
    jobs: int = 1,
    max_nodes: int | None = None,
    time_limit: float | None = None,
) -> ThresholdResult:
    """Least N <= max_n with no avoiding coloring; lower bound when none.

    Exact results carry the avoider at T-1; lower bounds (exact=False,
    value = max_n+1) carry the avoider at max_n.
    """
    if not family.box_complete():
        raise IncompleteBoxError("threshold needs a box-complete family (else unsound)")
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    stats = SearchStats()
    t0 = time.monotonic()
    last_cert: AvoidCertificate | None = None
    for n in range(1, max_n + 1):
        remaining_nodes = None if max_nodes is None else max(0, max_nodes - stats.nodes)
        remaining_time = (
            None if time_limit is None else max(0.0, time_limit - (time.monotonic() - t0))
        )
        try:
            cert = exists_avoiding(
                family,
                r,
                n,
                jobs=jobs,
                max_nodes=remaining_nodes,
                time_limit=remaining_time,
                stats=stats,
            )
        except SearchBudgetExceeded as e:
            raise SearchBudgetExceeded(
                f"threshold undecided at N={n}: {e}", stats.nodes + e.nodes, time.monotonic() - t0
            ) from None
        if cert is None:
            return ThresholdResult(
                family.name,
                family.fingerprint(),
                r,
                n,
                True,
                last_cert,
                stats.nodes,
                time.monotonic() - t0,
            )
        last_cert = cert
    return ThresholdResult(
        family.name,
        family.fingerprint(),
        r,
        max_n + 1,
        False,
        last_cert,
        stats.nodes,
        time.monotonic() - t0,
    )


def greedy_avoider(
    family: PatternFamily,
    r: int,
    n: int,
    strategy: str = "first-fit",
    *,
    seed: int = 0,
    restarts: int = 32,
) -> AvoidCertificate | None:
    """Heuristic avoider: no backtracking, so failure proves nothing.

    first-fit: each position takes the smallest non-completing color
    (deterministic, single pass).  random: uniform choice among the legal
    colors, with restarts.  Successful colorings are verified via
    count_witnesses before being certified.
    """
    import random

    buckets = build_instance_index(family, n)
    box_relative = not family.box_complete()

    def one_pass(pick) -> list[int] | None:
        colors = [0] * (n + 1)
        for pos in range(1, n + 1):
            legal = [c for c in range(1, r + 1) if not _blocked(buckets[pos], colors, c)]
            if not legal:
                return None
            colors[pos] = pick(legal)
        return colors[1:]

    if strategy == "first-fit":
        result = one_pass(lambda legal: legal[0])
    elif strategy == "random":
        rng = random.Random(seed)
        result = None
        for _ in range(restarts):
            result = one_pass(rng.choice)
            if result is not None:
                break
    else:
        raise ValueError(f"unknown strategy {strategy!r} (first-fit or random)")
    if result is None:
        return None
    coloring = Coloring.from_sequence(result, r)
    if count_witnesses(family, coloring) != 0:
        raise RuntimeError("internal error: greedy produced a non-avoiding coloring")
    cert = AvoidCertificate.from_coloring(family, coloring, box_relative=box_relative, verify=False)
    cert.verified = True
    return cert


def verify_certificate(cert: AvoidCertificate, family: PatternFamily | None = None) -> bool:
    """Recompute the zero-witness claim from the stored coloring, independently."""
    fam = family if family is not None else cert.family
    try:
        coloring = cert.to_coloring()
    except (ValueError, TypeError):
        return False
    return count_witnesses(fam, coloring) == 0
