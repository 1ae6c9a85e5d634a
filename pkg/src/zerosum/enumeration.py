"""Orderly enumeration of sequences, one representative per orbit.

The search walks sorted term tuples (nondecreasing element order) and keeps a
branch only while the partial sequence is the lexicographic minimum of its
automorphism orbit.  Minimality of a sorted tuple is inherited by its
prefixes (the k smallest images of a superset are dominated by the sorted
images of any k-subset), so pruning non-canonical prefixes at every depth is
exhaustive and yields each orbit exactly once, with no post-deduplication.

Monotone predicates (zero-sum free, no short zero-sum) are maintained
incrementally as sum-reachability sets and checked before the orbit test,
which is the expensive step (a vectorized pass over the permutation table).

Work is partitioned into subtrees below canonical prefixes of a fixed split
depth; workers process whole subtrees and results are merged in prefix
order, so output is identical for any worker count.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing
import os
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import __version__
from .errors import BudgetExceeded, SchemaError
from .groups import Group, group
from .sequences import Sequence

__all__ = [
    "EnumSpec",
    "SearchStats",
    "enumerate_sequences",
    "davenport",
    "s_leq",
    "max_length_with",
    "ResultCache",
    "resolve_cache",
    "DEFAULT_CACHE_DIR",
]

DEFAULT_CACHE_DIR = ".zs-cache"
CACHE_ENV_VAR = "ZS_CACHE"
# bump when search semantics or the storage layout change
CACHE_SCHEMA = f"{__version__}/1"

_SPLIT_DEPTH = 2
_CACHE_MAX_SEQUENCES = 100_000


# ---------------------------------------------------------------------------
# monotone predicates


class _All:
    """No constraint; used for raw census runs."""

    final_zero_sum = False
    admits_empty = True

    def __init__(self, grp: Group):
        pass

    def fresh(self):
        return None

    def can_extend(self, state, g: int, is_final: bool) -> bool:
        return True

    def extend(self, state, g: int):
        return None


class _ZeroSumFree:
    """State is the set of all nonempty subsequence sums (as indices)."""

    final_zero_sum = False
    admits_empty = True

    def __init__(self, grp: Group):
        self.add = grp.add_index_table()
        self.neg = grp.neg_index_table()

    def fresh(self):
        return frozenset()

    def can_extend(self, state, g: int, is_final: bool) -> bool:
        # a new zero-sum would have to use g: need -g among existing sums
        return g != 0 and self.neg[g] not in state

    def extend(self, state, g: int):
        row = self.add[g]
        return state | {row[r] for r in state} | {g}


class _MinimalZeroSum(_ZeroSumFree):
    """Prefixes must be zero-sum free; the last term closes the sum.

    A sorted sequence with zero sum whose length-(l-1) prefix is zero-sum
    free is minimal: any proper zero-sum subsequence could be chosen to
    avoid one copy of the largest term, hence would live in the prefix.

    The empty sequence is excluded by convention.
    """

    final_zero_sum = True
    admits_empty = False

    def can_extend(self, state, g: int, is_final: bool) -> bool:
        if is_final:
            return True
        return g != 0 and self.neg[g] not in state


class _NoShortZeroSum:
    """No zero-sum subsequence of length <= k.

    State keeps the sums of subsequences of each length 1..k-1 plus their
    union with {0}; sums of length k itself are never needed, since a new
    offender must end at the added term.
    """

    final_zero_sum = False
    admits_empty = True

    def __init__(self, grp: Group, k: int):
        if k < 1:
            raise SchemaError(f"k must be >= 1, got {k}")
        self.k = k
        self.add = grp.add_index_table()
        self.neg = grp.neg_index_table()
        self.zero = 0

    def fresh(self):
        layers = tuple(frozenset() for _ in range(self.k - 1))
        return (layers, frozenset([0]))

    def can_extend(self, state, g: int, is_final: bool) -> bool:
        return self.neg[g] not in state[1]

    def extend(self, state, g: int):
        layers, _ = state
        row = self.add[g]
        new_layers = []
        for l in range(len(layers)):
            if l == 0:
                new_layers.append(layers[0] | {g})
            else:
                new_layers.append(layers[l] | {row[r] for r in layers[l - 1]})
        union = set([0])
        for nl in new_layers:
            union |= nl
        return (tuple(new_layers), frozenset(union))


class _ZeroSumNoShort(_NoShortZeroSum):
    """No zero-sum of length <= k, and the full sequence sums to zero."""

    final_zero_sum = True


_PREDICATES = {
    "all": (_All, ()),
    "zero-sum-free": (_ZeroSumFree, ()),
    "minimal-zero-sum": (_MinimalZeroSum, ()),
    "no-short-zero-sum": (_NoShortZeroSum, ("k",)),
    "zero-sum-no-short": (_ZeroSumNoShort, ("k",)),
}


def _compile_predicate(grp: Group, name: str, params: dict):
    if name not in _PREDICATES:
        raise SchemaError(f"unknown predicate {name!r}; know {sorted(_PREDICATES)}")
    cls, wanted = _PREDICATES[name]
    extra = set(params) - set(wanted)
    missing = set(wanted) - set(params)
    if extra or missing:
        raise SchemaError(
            f"predicate {name!r} takes params {wanted}, got {sorted(params)}"
        )
    return cls(grp, **params)


@dataclass(frozen=True)
class EnumSpec:
    """What to enumerate: group modulus, exact length, named predicate."""

    n: int
    length: int
    predicate: str
    params: dict = field(default_factory=dict)
    up_to_symmetry: bool = True

    def key(self) -> dict:
        return {
            "op": "enumerate",
            "n": self.n,
            "length": self.length,
            "predicate": self.predicate,
            "params": dict(sorted(self.params.items())),
            "up_to_symmetry": self.up_to_symmetry,
        }


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    max_depth: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.leaves += other.leaves
        self.max_depth = max(self.max_depth, other.max_depth)


# ---------------------------------------------------------------------------
# reachability cut for runs whose leaves must sum to zero

_REACH_CACHE: dict[tuple[int, int], list[list[frozenset[int]]]] = {}


def _reach_table(grp: Group, max_len: int) -> list[list[frozenset[int]]]:
    """REACH[g][j]: sums achievable by j elements all >= g (index sets)."""
    key = (grp.n, max_len)
    got = _REACH_CACHE.get(key)
    if got is not None:
        return got
    size = grp.size
    add = grp.add_index_table()
    reach: list[list[frozenset[int]]] = [
        [frozenset() for _ in range(max_len + 1)] for _ in range(size + 1)
    ]
    for g in range(size + 1):
        reach[g] = [frozenset([0])] + list(reach[g][1:])
    for g in range(size - 1, -1, -1):
        row = add[g]
        out = [frozenset([0])]
        for j in range(1, max_len + 1):
            acc = set(reach[g + 1][j])
            acc.update(row[r] for r in out[j - 1])
            out.append(frozenset(acc))
        reach[g] = out
    _REACH_CACHE[key] = reach
    return reach


# ---------------------------------------------------------------------------
# the DFS engine


class _Engine:
    def __init__(
        self,
        grp: Group,
        predicate_name: str,
        params: dict,
        length: int | None,
        up_to_symmetry: bool,
        depth_cap: int | None = None,
    ):
        self.grp = grp
        self.pred = _compile_predicate(grp, predicate_name, params)
        self.length = length
        self.canonical = up_to_symmetry
        self.depth_cap = depth_cap
        self.gathering = False
        self.size = grp.size
        self.add = grp.add_index_table()
        self.neg = grp.neg_index_table()
        self.perm = np.ascontiguousarray(grp.perm_table()) if up_to_symmetry else None
        self.reach = (
            _reach_table(grp, length)
            if (length is not None and self.pred.final_zero_sum)
            else None
        )

    # orbit-minimality of the sorted tuple T
    def _is_canonical(self, T: list[int]) -> bool:
        B = self.perm[:, T]
        B.sort(axis=1)
        alive = None
        for j, tj in enumerate(T):
            col = B[:, j]
            if alive is None:
                if (col < tj).any():
                    return False
                alive = col == tj
            else:
                if (alive & (col < tj)).any():
                    return False
                alive &= col == tj
            if not alive.any():
                return True
        return True

    def _admit(self, T: list[int]) -> bool:
        return not self.canonical or self._is_canonical(T)

    def run_subtree(
        self, prefix: tuple[int, ...], collect: bool
    ) -> tuple[list[tuple[int, ...]], SearchStats]:
        """Complete the DFS below an admitted prefix.

        The prefix itself is not re-counted in stats; callers account for it
        while generating work units.
        """
        state = self.pred.fresh()
        sigma = 0
        for g in prefix:
            state = self.pred.extend(state, g)
            sigma = self.add[sigma][g]
        leaves: list[tuple[int, ...]] = []
        stats = SearchStats()
        T = list(prefix)
        self._dfs(T, state, sigma, prefix[-1] if prefix else 0, stats, leaves, collect)
        return leaves, stats

    def _dfs(self, T, state, sigma, last, stats, leaves, collect) -> None:
        depth = len(T)
        stats.max_depth = max(stats.max_depth, depth)
        if self.length is not None and depth == self.length:
            stats.leaves += 1
            if collect:
                leaves.append(tuple(T))
            return
        if self.depth_cap is not None and depth >= self.depth_cap:
            raise BudgetExceeded(
                f"search depth cap {self.depth_cap} reached; the maximum may "
                f"be unbounded for this predicate"
            )
        pred, add, neg = self.pred, self.add, self.neg
        if self.length is not None:
            remaining = self.length - depth - 1
            if pred.final_zero_sum and not self.gathering and remaining == 0:
                # the last term is forced by the zero-sum requirement
                g = neg[sigma]
                if g >= last and pred.can_extend(state, g, True):
                    T.append(g)
                    if self._admit(T):
                        stats.nodes += 1
                        self._dfs(T, None, 0, g, stats, leaves, collect)
                    T.pop()
                return
            reach = self.reach if not self.gathering else None
        else:
            remaining = None
            reach = None
        for g in range(last, self.size):
            if not pred.can_extend(state, g, False):
                continue
            if reach is not None:
                target = neg[add[sigma][g]]
                if target not in reach[g][remaining]:
                    continue
            T.append(g)
            if self._admit(T):
                stats.nodes += 1
                self._dfs(
                    T, pred.extend(state, g), add[sigma][g], g, stats, leaves, collect
                )
            T.pop()

    def gather_prefixes(self, depth: int) -> tuple[list[tuple[int, ...]], SearchStats]:
        """All admitted predicate-satisfying prefixes of exactly the given
        depth, in DFS (lex) order, plus stats for the shallower nodes."""
        if depth == 0:
            return [()], SearchStats()
        saved, self.length = self.length, depth
        self.gathering = True
        prefixes, stats = self.run_subtree((), collect=True)
        self.length = saved
        self.gathering = False
        # prefix nodes at depth == split are re-entered by run_subtree later,
        # so drop them from the shallow count; max_depth stays (it covers
        # forests whose deepest node is above the split)
        stats.nodes -= stats.leaves
        stats.leaves = 0
        return prefixes, stats


# ---------------------------------------------------------------------------
# parallel fan-out

_WORKER_ENGINES: dict[tuple, _Engine] = {}


def _unit_payload(spec_key: dict, prefix: tuple[int, ...], collect: bool) -> dict:
    return {"spec": spec_key, "prefix": prefix, "collect": collect}


def _run_unit(payload: dict):
    spec = payload["spec"]
    ekey = json.dumps(spec, sort_keys=True)
    engine = _WORKER_ENGINES.get(ekey)
    if engine is None:
        engine = _Engine(
            group(spec["n"]),
            spec["predicate"],
            spec["params"],
            spec["length"],
            spec["up_to_symmetry"],
            spec.get("depth_cap"),
        )
        _WORKER_ENGINES[ekey] = engine
    leaves, stats = engine.run_subtree(tuple(payload["prefix"]), payload["collect"])
    return leaves, stats


def _search(
    grp: Group,
    predicate: str,
    params: dict,
    length: int | None,
    up_to_symmetry: bool,
    jobs: int = 1,
    collect: bool = True,
    depth_cap: int | None = None,
) -> tuple[list[tuple[int, ...]], SearchStats]:
    """Fan out over canonical prefixes; deterministic for any job count."""
    engine = _Engine(grp, predicate, params, length, up_to_symmetry, depth_cap)
    if length is None:
        split = _SPLIT_DEPTH
    elif engine.pred.final_zero_sum:
        # keep the forced final step inside the subtree walks
        split = min(_SPLIT_DEPTH, max(length - 1, 0))
    else:
        split = min(_SPLIT_DEPTH, length)
    prefixes, stats = engine.gather_prefixes(split)
    spec_key = {
        "n": grp.n,
        "predicate": predicate,
        "params": params,
        "length": length,
        "up_to_symmetry": up_to_symmetry,
        "depth_cap": depth_cap,
    }
    leaves: list[tuple[int, ...]] = []
    if length is not None and split == length:
        # prefixes are already full leaves
        stats.nodes += len(prefixes)
        stats.leaves = len(prefixes)
        return (prefixes if collect else []), stats
    payloads = [_unit_payload(spec_key, p, collect) for p in prefixes]
    if jobs <= 1 or len(payloads) <= 1:
        results = map(_run_unit, payloads)
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(processes=jobs) as pool:
            results = pool.map(_run_unit, payloads, chunksize=1)
    for prefix, (unit_leaves, unit_stats) in zip(prefixes, results):
        stats.nodes += unit_stats.nodes + 1  # count the prefix node itself
        stats.leaves += unit_stats.leaves
        stats.max_depth = max(stats.max_depth, unit_stats.max_depth)
        leaves.extend(unit_leaves)
    return leaves, stats


# ---------------------------------------------------------------------------
# result cache


class ResultCache:
    """Directory of completed search results, keyed by a canonical JSON key.

    Each entry is one JSON file; a manifest records entry counts and is used
    as a checksum on read.  Mismatches are treated as misses.
    """

    def __init__(self, directory: str):
        self.directory = directory

    def _path(self, key: dict) -> str:
        digest = hashlib.sha256(
            json.dumps({**key, "schema": CACHE_SCHEMA}, sort_keys=True).encode()
        ).hexdigest()[:24]
        return os.path.join(self.directory, f"{digest}.json")

    def _manifest_path(self) -> str:
        return os.path.join(self.directory, "manifest.json")

    def _read_manifest(self) -> dict:
        try:
            with open(self._manifest_path()) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return {}
        return data if isinstance(data, dict) else {}

    def load(self, key: dict) -> dict | None:
        path = self._path(key)
        try:
            with open(path) as fh:
                entry = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return None
        if entry.get("key") != key or entry.get("schema") != CACHE_SCHEMA:
            return None
        manifest = self._read_manifest()
        recorded = manifest.get(os.path.basename(path))
        if recorded != entry.get("count"):
            return None
        seqs = entry.get("sequences")
        if seqs is not None and len(seqs) != entry["count"]:
            return None
        return entry

    def store(self, key: dict, payload: dict) -> None:
        os.makedirs(self.directory, exist_ok=True)
        path = self._path(key)
        entry = {"schema": CACHE_SCHEMA, "key": key, **payload}
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(entry, fh, sort_keys=True)
        os.replace(tmp, path)
        manifest = self._read_manifest()
        manifest[os.path.basename(path)] = entry.get("count")
        tmp = self._manifest_path() + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(manifest, fh, sort_keys=True, indent=0)
        os.replace(tmp, self._manifest_path())

    def purge(self) -> int:
        """Remove all cache entries; returns the number of files removed."""
        removed = 0
        if not os.path.isdir(self.directory):
            return 0
        for name in sorted(os.listdir(self.directory)):
            if name.endswith(".json"):
                os.remove(os.path.join(self.directory, name))
                removed += 1
        return removed


def resolve_cache(cache_dir: str | None = None, enabled: bool = True) -> ResultCache | None:
    """Cache in ``cache_dir``, else $ZS_CACHE, else ./.zs-cache."""
    if not enabled:
        return None
    directory = cache_dir or os.environ.get(CACHE_ENV_VAR) or DEFAULT_CACHE_DIR
    return ResultCache(directory)


# ---------------------------------------------------------------------------
# public operations


def _to_sequences(grp: Group, leaves: Iterable[tuple[int, ...]]) -> list[Sequence]:
    return [
        Sequence.from_terms(grp, (grp.unindex(i) for i in leaf)) for leaf in leaves
    ]


def enumerate_sequences(
    spec: EnumSpec,
    *,
    jobs: int = 1,
    cache: ResultCache | None = None,
) -> tuple[list[Sequence], SearchStats]:
    """All sequences matching the spec, lex-ordered, plus search statistics.

    With ``up_to_symmetry`` each orbit appears exactly once, as its least
    member.  Results (and node counts) are identical for every ``jobs``.
    """
    if spec.length < 0:
        raise SchemaError(f"length must be >= 0, got {spec.length}")
    grp = group(spec.n)
    if spec.length == 0:
        pred = _compile_predicate(grp, spec.predicate, spec.params)
        seqs = [Sequence.empty(grp)] if pred.admits_empty else []
        return seqs, SearchStats(leaves=len(seqs))
    key = spec.key()
    if cache is not None:
        entry = cache.load(key)
        if entry is not None and entry.get("sequences") is not None:
            stats = SearchStats(**entry["stats"])
            seqs = [Sequence.from_json_obj(obj) for obj in entry["sequences"]]
            return seqs, stats
    leaves, stats = _search(
        grp, spec.predicate, spec.params, spec.length, spec.up_to_symmetry, jobs=jobs
    )
    seqs = _to_sequences(grp, leaves)
    if cache is not None and len(seqs) <= _CACHE_MAX_SEQUENCES:
        cache.store(
            key,
            {
                "count": len(seqs),
                "stats": stats.__dict__,
                "sequences": [s.to_json_obj() for s in seqs],
            },
        )
    return seqs, stats


def max_length_with(
    grp: Group,
    predicate: str,
    params: dict | None = None,
    *,
    jobs: int = 1,
    depth_cap: int | None = None,
) -> tuple[int, SearchStats]:
    """Largest length of any sequence satisfying a monotone predicate.

    The whole canonical search forest is walked, so the returned maximum is
    exhaustive.  ``depth_cap`` guards predicates with unbounded maxima.
    """
    _, stats = _search(
        grp,
        predicate,
        params or {},
        None,
        True,
        jobs=jobs,
        collect=False,
        depth_cap=depth_cap,
    )
    return stats.max_depth, stats


def davenport(
    grp: Group,
    *,
    bound: int = 7,
    jobs: int = 1,
    cache: ResultCache | None = None,
) -> int:
    """Davenport constant: 1 + the longest zero-sum free length.

    Computed by exhausting the zero-sum-free search forest; no closed
    formula is consulted.  Moduli above ``bound`` raise BudgetExceeded.
    """
    if grp.n > bound:
        raise BudgetExceeded(
            f"davenport search for n={grp.n} exceeds the exhaustive bound {bound}"
        )
    key = {"op": "davenport", "n": grp.n}
    if cache is not None:
        entry = cache.load(key)
        if entry is not None:
            return entry["value"]
    longest, stats = max_length_with(
        grp, "zero-sum-free", jobs=jobs, depth_cap=grp.size + 1
    )
    value = longest + 1
    if cache is not None:
        cache.store(key, {"count": 1, "value": value, "stats": stats.__dict__})
    return value


def s_leq(
    grp: Group,
    k: int,
    *,
    bound: int = 5,
    jobs: int = 1,
    cache: ResultCache | None = None,
    depth_cap: int | None = None,
) -> int:
    """Least l such that every length-l sequence has a zero-sum subsequence
    of length at most k.

    Equals 1 + the longest length admitting no such subsequence.  For k
    below the modulus that maximum can be infinite, so the search carries a
    depth cap (default 4n) and raises BudgetExceeded on hitting it.
    """
    if k < 1:
        raise SchemaError(f"k must be >= 1, got {k}")
    if grp.n > bound:
        raise BudgetExceeded(
            f"s_leq search for n={grp.n} exceeds the exhaustive bound {bound}"
        )
    key = {"op": "s_leq", "n": grp.n, "k": k}
    if cache is not None:
        entry = cache.load(key)
        if entry is not None:
            return entry["value"]
    cap = depth_cap if depth_cap is not None else 4 * grp.n
    longest, stats = max_length_with(
        grp, "no-short-zero-sum", {"k": k}, jobs=jobs, depth_cap=cap
    )
    value = longest + 1
    if cache is not None:
        cache.store(key, {"count": 1, "value": value, "stats": stats.__dict__})
    return value
