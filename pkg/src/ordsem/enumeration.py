"""Exhaustive generation of all finite ordered semigroups up to a given
order, plus the verification census that drives the whole harness.

The Cayley-table enumerator fills cells row-major and checks, after every
assignment, exactly the associativity triples whose last unknown lookup
just became known, so dead prefixes are cut immediately.  Posets are
generated by deciding strict pairs one at a time while propagating
transitive closure, never by filtering all 2^(n^2-n) matrices.  Work is
partitioned by the first table row, which gives deterministic shard
recombination no matter how many processes run.
"""

from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass

from .classes import ClassReport, class_report, is_left_group_like, is_left_group_like_lgo
from .core import OrderedSemigroup, canonical_form
from .errors import OrderTooLarge
from .theorems import TAGS, theorem_verdicts

MAX_ORDER = 5


def _check_order(n):
    if not isinstance(n, int) or not 1 <= n <= MAX_ORDER:
        raise OrderTooLarge(f"order must be in 1..{MAX_ORDER}, got {n}")


# ---------------------------------------------------------------------------
# Cayley tables

def _triple_ok(table, a, b, c):
    bc = table[b][c]
    if bc < 0:
        return True
    ab = table[a][b]
    if ab < 0:
        return True
    left = table[a][bc]
    if left < 0:
        return True
    right = table[ab][c]
    if right < 0:
        return True
    return left == right


def _cell_consistent(n, table, p, q, products_eq):
    """Associativity triples whose last needed lookup is cell (p, q)."""
    for i in range(n):
        if not _triple_ok(table, i, p, q):
            return False
    for k in range(n):
        if not _triple_ok(table, p, q, k):
            return False
    for j, k in products_eq[q]:
        if not _triple_ok(table, p, j, k):
            return False
    for i, j in products_eq[p]:
        if not _triple_ok(table, i, j, q):
            return False
    return True


def _complete_tables(n, table, products_eq, start):
    if start == n * n:
        yield tuple(tuple(row) for row in table)
        return
    p, q = divmod(start, n)
    row = table[p]
    for v in range(n):
        row[q] = v
        products_eq[v].append((p, q))
        if _cell_consistent(n, table, p, q, products_eq):
            yield from _complete_tables(n, table, products_eq, start + 1)
        products_eq[v].pop()
    row[q] = -1


def _tables_with_first_row(n, first_row):
    table = [[-1] * n for _ in range(n)]
    products_eq = [[] for _ in range(n)]
    for q, v in enumerate(first_row):
        table[0][q] = v
        products_eq[v].append((0, q))
        if not _cell_consistent(n, table, 0, q, products_eq):
            return
    yield from _complete_tables(n, table, products_eq, n)


def _first_rows(n):
    """Shard keys: all n^n first rows in lexicographic order."""
    def rec(prefix):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(n):
            prefix.append(v)
            yield from rec(prefix)
            prefix.pop()
    yield from rec([])


def enumerate_semigroups(n):
    """Every associative n x n table exactly once, lexicographic order."""
    _check_order(n)
    table = [[-1] * n for _ in range(n)]
    yield from _complete_tables(n, table, [[] for _ in range(n)], 0)


# ---------------------------------------------------------------------------
# Partial orders

def enumerate_posets(n):
    """Every reflexive antisymmetric transitive matrix exactly once.

    Strict pairs are decided in a fixed order; setting a pair propagates
    transitive closure and prunes antisymmetry conflicts on the spot.
    """
    _check_order(n)
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    m = len(pairs)
    state = [[-1] * n for _ in range(n)]    # -1 unknown, 0 no, 1 yes
    trail = []

    def set_yes(i, j):
        stack = [(i, j)]
        while stack:
            a, b = stack.pop()
            s = state[a][b]
            if s == 1:
                continue
            if s == 0 or state[b][a] == 1:
                return False
            state[a][b] = 1
            trail.append((a, b))
            for x in range(n):
                if x != a and x != b:
                    if state[x][a] == 1:
                        stack.append((x, b))
                    if state[b][x] == 1:
                        stack.append((a, x))
        return True

    def undo(mark):
        while len(trail) > mark:
            a, b = trail.pop()
            state[a][b] = -1

    def dfs(idx):
        if idx == m:
            yield tuple(
                tuple(1 if a == b or state[a][b] == 1 else 0 for b in range(n))
                for a in range(n))
            return
        i, j = pairs[idx]
        if state[i][j] != -1:
            yield from dfs(idx + 1)
            return
        state[i][j] = 0
        yield from dfs(idx + 1)
        state[i][j] = -1
        mark = len(trail)
        if set_yes(i, j):
            yield from dfs(idx + 1)
        undo(mark)

    yield from dfs(0)


# ---------------------------------------------------------------------------
# Ordered semigroups

def _strict_pairs(leq):
    n = len(leq)
    return tuple((a, b) for a in range(n) for b in range(n)
                 if a != b and leq[a][b])


def _compatible(table, leq, pairs):
    n = len(table)
    for a, b in pairs:
        ta = table[a]
        tb = table[b]
        for x in range(n):
            tx = table[x]
            if not leq[tx[a]][tx[b]]:
                return False
            if not leq[ta[x]][tb[x]]:
                return False
    return True


_POSETS_MEMO = {}


def _posets_with_pairs(n):
    got = _POSETS_MEMO.get(n)
    if got is None:
        got = tuple((leq, _strict_pairs(leq)) for leq in enumerate_posets(n))
        _POSETS_MEMO[n] = got
    return got


def enumerate_ordered_semigroups(n, dedup=False):
    """Cross product of tables and posets filtered by compatibility.

    With dedup, one representative per isomorphism class (first seen in
    stream order).  Deterministic order either way.
    """
    _check_order(n)
    posets = _posets_with_pairs(n)
    seen = set()
    for table in enumerate_semigroups(n):
        for leq, pairs in posets:
            if _compatible(table, leq, pairs):
                S = OrderedSemigroup(n, table, leq, _checked=True)
                if dedup:
                    key = canonical_form(S)
                    if key in seen:
                        continue
                    seen.add(key)
                yield S


# ---------------------------------------------------------------------------
# Census

def _new_counts(which):
    return {
        "instances": 0,
        "flags": {name: 0 for name in ClassReport.FLAG_NAMES},
        "theorems": {tag: {"predicate_true": 0, "oracle_true": 0, "agree": 0}
                     for tag in which},
        "lgo_mismatches": 0,
        "lemma_violations": 0,
        "counterexamples": [],
    }


def _merge_counts(dst, src):
    dst["instances"] += src["instances"]
    for name, v in src["flags"].items():
        dst["flags"][name] += v
    for tag, row in src["theorems"].items():
        drow = dst["theorems"][tag]
        for key, v in row.items():
            drow[key] += v
    dst["lgo_mismatches"] += src["lgo_mismatches"]
    dst["lemma_violations"] += src["lemma_violations"]
    dst["counterexamples"].extend(src["counterexamples"])


def _analyze_into(S, order, which, counts):
    counts["instances"] += 1
    rep = class_report(S)
    for name in ClassReport.FLAG_NAMES:
        if getattr(rep, name):
            counts["flags"][name] += 1

    lgl = rep.left_group_like
    lgo = is_left_group_like_lgo(S)
    if lgl != lgo:
        counts["lgo_mismatches"] += 1
        counts["counterexamples"].append({
            "kind": "lgo",
            "order": order,
            "instance_key": canonical_form(S).hex(),
            "left_group_like": lgl,
            "left_group_like_lgo": lgo,
            "instance": S.to_json_dict(),
        })

    lemma_events = []
    for tag in which:
        pred, oracle, failure = theorem_verdicts(S, tag, lemma_events)
        row = counts["theorems"][tag]
        if pred:
            row["predicate_true"] += 1
        if oracle:
            row["oracle_true"] += 1
        if pred == oracle:
            row["agree"] += 1
        else:
            from .theorems import verify_theorem
            report = verify_theorem(S, tag, lemma_events)
            counts["counterexamples"].append({
                "kind": "theorem",
                "order": order,
                "instance": S.to_json_dict(),
                **report.to_dict(),
            })
    if lemma_events:
        counts["lemma_violations"] += len(lemma_events)
        for exc in lemma_events:
            counts["counterexamples"].append({
                "kind": "lemma",
                "order": order,
                "instance_key": canonical_form(S).hex(),
                "element": exc.element,
                "detail": str(exc),
                "instance": S.to_json_dict(),
            })


def _census_shard(args):
    n, shard_index, which = args
    first_row = _index_to_row(n, shard_index)
    posets = _posets_with_pairs(n)
    counts = _new_counts(which)
    for table in _tables_with_first_row(n, first_row):
        for leq, pairs in posets:
            if _compatible(table, leq, pairs):
                S = OrderedSemigroup(n, table, leq, _checked=True)
                _analyze_into(S, n, which, counts)
    return counts


def _index_to_row(n, index):
    row = []
    for _ in range(n):
        index, digit = divmod(index, n)
        row.append(digit)
    return tuple(reversed(row))


@dataclass
class CensusResult:
    """Aggregated counts for one order; reproducible bit-for-bit across
    runs and job counts."""
    order: int
    which: tuple
    shard_count: int
    completed_shards: int
    instances: int
    flags: dict
    theorems: dict
    lgo_mismatches: int
    lemma_violations: int
    counterexamples: list

    @property
    def complete(self):
        return self.completed_shards == self.shard_count

    @property
    def disagreements(self):
        return len(self.counterexamples)

    def to_dict(self):
        return {
            "order": self.order,
            "which": list(self.which),
            "shard_count": self.shard_count,
            "completed_shards": self.completed_shards,
            "complete": self.complete,
            "instances": self.instances,
            "flags": self.flags,
            "theorems": self.theorems,
            "lgo_mismatches": self.lgo_mismatches,
            "lemma_violations": self.lemma_violations,
            "counterexamples": self.counterexamples,
        }

    @classmethod
    def from_counts(cls, order, which, shard_count, completed, counts):
        return cls(order=order, which=tuple(which), shard_count=shard_count,
                   completed_shards=completed,
                   instances=counts["instances"], flags=counts["flags"],
                   theorems=counts["theorems"],
                   lgo_mismatches=counts["lgo_mismatches"],
                   lemma_violations=counts["lemma_violations"],
                   counterexamples=counts["counterexamples"])


def _load_checkpoint(path):
    if path and os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    return {"version": 1, "orders": {}}


def _write_checkpoint(path, data):
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(data, fh, sort_keys=True)
    os.replace(tmp, path)


def census(n, which=TAGS, jobs=1, checkpoint_path=None, progress=None,
           max_shards=None):
    """Sweep every ordered semigroup of order n and tally class flags,
    theorem verdicts and verdict agreement.

    Resumable: with checkpoint_path, completed shards are recorded and a
    rerun continues where the file says.  max_shards stops early after
    that many shards this call (the checkpoint stays resumable); it exists
    so interrupted runs can be exercised deterministically.
    """
    _check_order(n)
    which = tuple(which)
    for tag in which:
        if tag not in TAGS:
            raise ValueError(f"unknown theorem tag {tag!r}")
    shard_count = n ** n
    state = None
    checkpoint = None
    if checkpoint_path:
        checkpoint = _load_checkpoint(checkpoint_path)
        state = checkpoint["orders"].get(str(n))
        if state is not None and (tuple(state["which"]) != which
                                  or state["shard_count"] != shard_count):
            raise ValueError("checkpoint file does not match this sweep")
    if state is None:
        state = {"which": list(which), "shard_count": shard_count,
                 "next_shard": 0, "counts": _new_counts(which)}

    counts = _new_counts(which)
    _merge_counts(counts, state["counts"])
    start = state["next_shard"]
    todo = list(range(start, shard_count))
    if max_shards is not None:
        todo = todo[:max_shards]

    def consume(shard_index, shard_counts):
        _merge_counts(counts, shard_counts)
        state["next_shard"] = shard_index + 1
        state["counts"] = counts
        if checkpoint is not None:
            checkpoint["orders"][str(n)] = state
            _write_checkpoint(checkpoint_path, checkpoint)
        if progress is not None:
            progress(shard_index + 1, shard_count)

    if todo:
        args = [(n, idx, which) for idx in todo]
        if jobs > 1:
            with multiprocessing.Pool(jobs) as pool:
                for idx, shard_counts in zip(todo, pool.imap(_census_shard, args)):
                    consume(idx, shard_counts)
        else:
            for idx, arg in zip(todo, args):
                consume(idx, _census_shard(arg))

    return CensusResult.from_counts(n, which, shard_count,
                                    state["next_shard"], counts)
