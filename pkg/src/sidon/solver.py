"""Exact maximisation of Sidon, weak-Sidon and l-thin subsets of [n] or Z_M.

The interval search extends sets in increasing order and keeps the set of
admissible next elements as a bitmask, so a node costs O(k) big-int
operations.  A node is pruned when

* ``size + |admissible| <= best``,
* ``size + bound(remaining span) <= best``, where the span bound is the exact
  maximum already computed for shorter intervals, capped by the closed-form
  bound for the kind.

Translations preserve all three properties, so interval searches only
consider sets containing 1; reflection ``x -> b + 1 - x`` additionally lets
the second element stay at most ``ceil((n + 1) / 2)``.  Both reductions keep
the lexicographically smallest optimum, which is the witness returned by a
sequential search.
"""

from __future__ import annotations

import json
import logging
import os
import time
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Union

from .bounds import closed_form_bound, weak_pair_sum_bound
from .core import (Cyclic, IntegerSet, Interval, is_sidon, is_weak_sidon,
                   thinness)

log = logging.getLogger(__name__)

KINDS = ("sidon", "weak", "thin")
BRUTE_FORCE_LIMIT = 24
DEFAULT_NODE_BUDGET = 10**9


@dataclass(frozen=True)
class SearchProblem:
    kind: str
    ambient: Union[Interval, Cyclic]
    ell: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if not isinstance(self.ambient, (Interval, Cyclic)):
            raise ValueError("ambient must be an Interval or Cyclic")
        if self.kind == "thin" and self.ell < 1:
            raise ValueError("thin problems need ell >= 1")
        if self.kind == "weak" and isinstance(self.ambient, Cyclic):
            raise ValueError("weak Sidon sets are only defined on intervals")
        if self.kind != "thin" and self.ell != 1:
            object.__setattr__(self, "ell", 1)

    @classmethod
    def interval(cls, kind: str, n: int, ell: int = 1) -> "SearchProblem":
        return cls(kind, Interval(n), ell)

    @property
    def size(self) -> int:
        return self.ambient.n if isinstance(self.ambient, Interval) else self.ambient.M

    @property
    def cyclic(self) -> bool:
        return isinstance(self.ambient, Cyclic)

    @property
    def cap(self) -> int:
        """Allowed multiplicity per difference (sidon and thin searches)."""
        return self.ell if self.kind == "thin" else 1

    def holds(self, A: IntegerSet) -> bool:
        if self.kind == "sidon":
            return is_sidon(A)
        if self.kind == "weak":
            return is_weak_sidon(A)
        return thinness(A) <= self.ell

    def at(self, size: int) -> "SearchProblem":
        amb = Interval(size) if not self.cyclic else Cyclic(size)
        return SearchProblem(self.kind, amb, self.ell)


@dataclass(frozen=True)
class PruneConfig:
    use_upper_bound_pruning: bool = True
    use_translation_normalization: bool = True
    parallel_degree: int = 1
    node_budget: int = DEFAULT_NODE_BUDGET

    def __post_init__(self):
        if self.parallel_degree < 1:
            raise ValueError("parallel_degree must be >= 1")
        if self.node_budget < 1:
            raise ValueError("node_budget must be positive")


@dataclass(frozen=True)
class SearchResult:
    max_size: int
    witness: IntegerSet
    nodes_explored: int = 0
    pruned_by_bound: int = 0
    elapsed: float = 0.0
    optimal: bool = True


class _BudgetExceeded(Exception):
    pass


# --- interval search ---------------------------------------------------------

class _IntervalSearch:
    def __init__(self, n, kind, cap, span_bound, best, budget, normalize, shared=None):
        self.n = n
        self.kind = kind
        self.cap = cap
        # span_bound[s]: most elements that fit in s consecutive integers
        self.span_bound = span_bound
        self.best = best
        self.witness: Optional[tuple[int, ...]] = None
        self.budget = budget
        self.normalize = normalize
        self.nodes = 0
        self.pruned = 0
        self.shared = shared
        self.counts = [0] * (n + 1)

    def _found(self, marks):
        self.best = len(marks)
        self.witness = tuple(marks)
        if self.shared is not None:
            with self.shared.get_lock():
                if self.shared.value < self.best:
                    self.shared.value = self.best

    def root_children(self) -> list[int]:
        n = self.n
        if not self.normalize:
            return list(range(1, n + 1))
        return list(range(2, min(n, (n + 2) // 2) + 1))

    def run(self, children=None):
        n = self.n
        full = ((1 << (n + 1)) - 1) ^ 1  # bits 1..n
        only = None if children is None else _mask(children)
        if not self.normalize:
            self._dfs([], full, 0, only)
            return
        if self.best < 1:
            self._found([1])
        if only is None:
            only = _mask(self.root_children())
        self._dfs([1], full ^ 2, 0, only)

    def _dfs(self, marks, cand, used, only=None):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded
        if self.shared is not None and self.shared.value > self.best:
            self.best = self.shared.value
        j = len(marks)
        if j > self.best:
            self._found(marks)
        n, span_bound = self.n, self.span_bound
        weak = self.kind == "weak"
        counts, cap = self.counts, self.cap
        c = cand
        while c:
            low = c & -c
            z = low.bit_length() - 1
            c ^= low
            # c now holds the admissible positions beyond z
            room = span_bound[n - z + 1] - 1
            pop = c.bit_count()
            if j + 1 + (room if room < pop else pop) <= self.best:
                self.pruned += 1
                break
            if only is not None and not (only >> z) & 1:
                continue
            if weak:
                new = 0
                for a in marks:
                    new |= 1 << (z + a)
                used2 = used | new
                excl = used2 >> z
                for a in marks:
                    excl |= new >> a
                marks.append(z)
                self._dfs(marks, c & ~excl, used2)
                marks.pop()
            else:
                newfull = 0
                for a in marks:
                    d = z - a
                    counts[d] += 1
                    if counts[d] == cap:
                        newfull |= 1 << d
                used2 = used | newfull
                excl = used2 << z
                if newfull:
                    for a in marks:
                        excl |= newfull << a
                marks.append(z)
                self._dfs(marks, c & ~excl, used2)
                marks.pop()
                for a in marks:
                    counts[z - a] -= 1


def _mask(positions) -> int:
    m = 0
    for p in positions:
        m |= 1 << p
    return m


# --- cyclic search -----------------------------------------------------------

class _CyclicSearch:
    def __init__(self, M, cap, best, budget, normalize):
        self.M = M
        self.cap = cap
        self.best = best
        self.witness = None
        self.budget = budget
        self.normalize = normalize
        self.nodes = 0
        self.pruned = 0
        self.counts = [0] * M
        # k(k-1) ordered differences spread over M-1 residues, each at most cap times
        k = 1
        while (k + 1) * k <= cap * (M - 1):
            k += 1
        self.size_cap = k

    def _increments(self, marks, z):
        inc = {}
        M = self.M
        for a in marks:
            for d in ((z - a) % M, (a - z) % M):
                inc[d] = inc.get(d, 0) + 1
        return inc

    def _admissible(self, marks, z):
        counts, cap = self.counts, self.cap
        return all(counts[d] + c <= cap for d, c in self._increments(marks, z).items())

    def run(self):
        if self.normalize:
            if self.best < 1:
                self.best, self.witness = 1, (1,)
            self._dfs([1])
        else:
            self._dfs([])

    def _dfs(self, marks):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded
        j = len(marks)
        if j > self.best:
            self.best, self.witness = j, tuple(marks)
        start = marks[-1] + 1 if marks else 1
        options = [z for z in range(start, self.M + 1) if self._admissible(marks, z)]
        for idx, z in enumerate(options):
            remaining = len(options) - idx - 1
            if j + 1 + remaining <= self.best or self.size_cap <= self.best:
                self.pruned += 1
                break
            inc = self._increments(marks, z)
            for d, c in inc.items():
                self.counts[d] += c
            marks.append(z)
            self._dfs(marks)
            marks.pop()
            for d, c in inc.items():
                self.counts[d] -= c


# --- span bounds and the exact-size cache --------------------------------------

# (kind, cap) -> list of exact sequential results for n = 1, 2, ...
_EXACT: dict[tuple[str, int], list[SearchResult]] = {}


def clear_memo() -> None:
    _EXACT.clear()


def closed_form_span_bound(kind: str, cap: int, s: int) -> int:
    """Rigorous cap on the size of a set of the kind inside s consecutive integers."""
    if s <= 0:
        return 0
    if s == 1:
        return 1
    if kind == "weak":
        return weak_pair_sum_bound(s)
    if kind == "thin" and cap > 1:
        return closed_form_bound("thin", s, ell=cap).implied_max
    return closed_form_bound("cilleruelo", s).implied_max


def _span_bounds(problem: SearchProblem, config: PruneConfig) -> list[int]:
    n, kind, cap = problem.size, problem.kind, problem.cap
    if not config.use_upper_bound_pruning:
        return list(range(n + 2))
    exact = _exact_prefix(problem, config, n - 1)
    out = [0]
    for s in range(1, n + 2):
        b = closed_form_span_bound(kind, cap, s)
        if s <= len(exact):
            b = min(b, exact[s - 1].max_size)
        out.append(b)
    return out


def _exact_prefix(problem: SearchProblem, config: PruneConfig, upto: int) -> list[SearchResult]:
    key = (problem.kind, problem.cap)
    table = _EXACT.setdefault(key, [])
    seq = PruneConfig(config.use_upper_bound_pruning, config.use_translation_normalization,
                      1, config.node_budget)
    while len(table) < upto:
        res = _solve_interval(problem.at(len(table) + 1), seq)
        if not res.optimal:
            break
        table.append(res)
    return table[:upto]


def _solve_interval(problem: SearchProblem, config: PruneConfig) -> SearchResult:
    t0 = time.perf_counter()
    n = problem.size
    bounds = _span_bounds(problem, config)
    best = 0
    if config.use_upper_bound_pruning and n > 1:
        prev = _EXACT.get((problem.kind, problem.cap), [])
        if len(prev) >= n - 1:
            best = prev[n - 2].max_size - 1  # the optimum never shrinks as n grows
    normalize = config.use_translation_normalization
    if config.parallel_degree > 1 and normalize and n > 2:
        return _solve_parallel(problem, config, bounds, best, t0)
    search = _IntervalSearch(n, problem.kind, problem.cap, bounds, best,
                             config.node_budget, normalize)
    optimal = True
    try:
        search.run()
    except _BudgetExceeded:
        optimal = False
        log.warning("node budget %d exhausted for %s", config.node_budget, problem)
    witness = search.witness or (1,)
    return SearchResult(len(witness), IntegerSet(witness, problem.ambient), search.nodes,
                        search.pruned, time.perf_counter() - t0, optimal)


_shared_best = None


def _init_worker(shared):
    global _shared_best
    _shared_best = shared


def _worker(args):
    n, kind, cap, bounds, best, budget, children = args
    search = _IntervalSearch(n, kind, cap, bounds, best, budget, True, _shared_best)
    done = True
    try:
        search.run(children)
    except _BudgetExceeded:
        done = False
    return search.witness, search.nodes, search.pruned, done


def _solve_parallel(problem, config, bounds, best, t0) -> SearchResult:
    import multiprocessing as mp
    from concurrent.futures import ProcessPoolExecutor

    n = problem.size
    probe = _IntervalSearch(n, problem.kind, problem.cap, bounds, best, 1, True)
    children = probe.root_children()
    workers = min(config.parallel_degree, len(children))
    chunks = [children[i::workers] for i in range(workers)]
    shared = mp.Value("i", best)
    budget = max(1, config.node_budget // workers)
    args = [(n, problem.kind, problem.cap, bounds, best, budget, ch) for ch in chunks]
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(shared,)) as ex:
        results = list(ex.map(_worker, args))
    witnesses = [w for w, *_ in results if w is not None]
    # shared pruning may hide equal-size sets, so only the size is worker-independent
    witness = min(witnesses, key=lambda w: (-len(w), w)) if witnesses else (1,)
    return SearchResult(len(witness), IntegerSet(witness, problem.ambient),
                        sum(r[1] for r in results), sum(r[2] for r in results),
                        time.perf_counter() - t0, all(r[3] for r in results))


def _solve_cyclic(problem: SearchProblem, config: PruneConfig) -> SearchResult:
    t0 = time.perf_counter()
    search = _CyclicSearch(problem.size, problem.cap, 0, config.node_budget,
                           config.use_translation_normalization)
    optimal = True
    try:
        search.run()
    except _BudgetExceeded:
        optimal = False
    witness = search.witness or (1,)
    return SearchResult(len(witness), IntegerSet(witness, problem.ambient), search.nodes,
                        search.pruned, time.perf_counter() - t0, optimal)


def maximize(problem: SearchProblem, config: PruneConfig | None = None) -> SearchResult:
    """Exact maximum size and a witness; ``optimal`` is False if the node budget ran out."""
    config = config or PruneConfig()
    if problem.cyclic:
        return _solve_cyclic(problem, config)
    n = problem.size
    if config.use_upper_bound_pruning and config.parallel_degree == 1:
        table = _exact_prefix(problem, config, n)
        if len(table) >= n:
            return table[n - 1]
    return _solve_interval(problem, config)


# --- independent oracle --------------------------------------------------------

def brute_force(problem: SearchProblem) -> SearchResult:
    """Exhaustive enumeration with the core predicates; shares nothing with ``maximize``.

    All three properties are hereditary, so once no subset of size k
    qualifies no larger one does.  Subsets of each size are scanned in
    lexicographic order, making the witness the lexicographically smallest
    optimum.
    """
    N = problem.size
    if N > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force limited to size {BRUTE_FORCE_LIMIT}, got {N}")
    t0 = time.perf_counter()
    best: tuple[int, ...] = ()
    tested = 0
    for k in range(1, N + 1):
        hit = None
        for combo in combinations(range(1, N + 1), k):
            tested += 1
            if problem.holds(IntegerSet(combo, problem.ambient)):
                hit = combo
                break
        if hit is None:
            break
        best = hit
    return SearchResult(len(best), IntegerSet(best, problem.ambient), tested, 0,
                        time.perf_counter() - t0, True)


# --- tables and the result cache ---------------------------------------------------

@dataclass
class ResultCache:
    """JSON file of verified optima keyed by kind, ell, ambient type and size."""

    path: str
    entries: dict = field(default_factory=dict)

    @staticmethod
    def key(problem: SearchProblem) -> str:
        amb = "cyclic" if problem.cyclic else "interval"
        return f"{problem.kind}|{problem.ell}|{amb}|{problem.size}"

    @classmethod
    def load(cls, path: str) -> "ResultCache":
        entries = {}
        if os.path.exists(path):
            try:
                with open(path) as fh:
                    entries = json.load(fh)
                if not isinstance(entries, dict):
                    raise ValueError("top level is not an object")
            except (OSError, ValueError) as exc:
                warnings.warn(f"ignoring unreadable cache {path}: {exc}")
                entries = {}
        return cls(path, entries)

    def get(self, problem: SearchProblem) -> Optional[SearchResult]:
        raw = self.entries.get(self.key(problem))
        if raw is None:
            return None
        try:
            witness = IntegerSet(tuple(raw["witness"]), problem.ambient)
            size = int(raw["max_size"])
            if len(witness) != size or not problem.holds(witness):
                raise ValueError("witness fails verification")
        except (KeyError, TypeError, ValueError) as exc:
            warnings.warn(f"rejecting corrupt cache entry {self.key(problem)}: {exc}")
            del self.entries[self.key(problem)]
            return None
        return SearchResult(size, witness)

    def put(self, problem: SearchProblem, result: SearchResult) -> None:
        if result.optimal:
            self.entries[self.key(problem)] = {"max_size": result.max_size,
                                               "witness": list(result.witness.elements)}

    def save(self) -> None:
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(self.entries, fh, sort_keys=True, indent=1)
        os.replace(tmp, self.path)


def maximize_cached(problem: SearchProblem, config: PruneConfig | None = None,
                    cache: ResultCache | None = None) -> SearchResult:
    if cache is not None:
        hit = cache.get(problem)
        if hit is not None:
            return hit
    result = maximize(problem, config)
    if cache is not None:
        cache.put(problem, result)
    return result


def extremal_table(kind: str, n_max: int, config: PruneConfig | None = None,
                   ell: int = 1, cache: ResultCache | None = None
                   ) -> list[tuple[int, int, IntegerSet]]:
    """``(n, max_size, witness)`` for n = 1..n_max."""
    rows = []
    for n in range(1, n_max + 1):
        problem = SearchProblem.interval(kind, n, ell)
        res = maximize_cached(problem, config, cache)
        if not res.optimal:
            raise ResourceLimit(f"node budget exhausted at n = {n}", rows, res)
        rows.append((n, res.max_size, res.witness))
    return rows


class ResourceLimit(RuntimeError):
    def __init__(self, message, rows=None, partial=None):
        super().__init__(message)
        self.rows = rows or []
        self.partial = partial
