"""Core types for finite ordered semigroups.

An ordered semigroup here is a carrier {0, ..., n-1} with an associative
multiplication table and a partial order compatible with multiplication on
both sides (a <= b forces x*a <= x*b and a*x <= b*x).  Elements are dense
indices; subsets are bitmask-backed so downsets, ideals and witness
searches stay cheap at the carrier sizes this package targets (n <= 6).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations

from .errors import InvalidInstance, ValidationError


# ---------------------------------------------------------------------------
# Violation records collected by validate()

@dataclass(frozen=True)
class NotAssociative:
    i: int
    j: int
    k: int

    def __str__(self):
        return f"associativity fails at triple ({self.i},{self.j},{self.k})"


@dataclass(frozen=True)
class NotPartialOrder:
    reason: str          # "not_reflexive" | "not_antisymmetric" | "not_transitive"
    pair: tuple          # offending indices: (i,), (i,j) or (i,j,k)

    def __str__(self):
        return f"order {self.reason} at {self.pair}"


@dataclass(frozen=True)
class NotCompatible:
    a: int
    b: int
    x: int
    side: str            # "left" (x*a vs x*b) | "right" (a*x vs b*x)

    def __str__(self):
        if self.side == "left":
            return (f"compatibility fails: {self.a} <= {self.b} but not "
                    f"{self.x}*{self.a} <= {self.x}*{self.b}")
        return (f"compatibility fails: {self.a} <= {self.b} but not "
                f"{self.a}*{self.x} <= {self.b}*{self.x}")


# ---------------------------------------------------------------------------

def _shape_check(n, table, leq, names=None):
    """Raise InvalidInstance unless the raw data has the right shape."""
    if not isinstance(n, int) or n < 1:
        raise InvalidInstance(f"carrier size must be a positive integer, got {n!r}")
    if len(table) != n or any(len(row) != n for row in table):
        raise InvalidInstance(f"table must be {n}x{n}")
    for row in table:
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise InvalidInstance(f"table entry {v!r} out of range 0..{n - 1}")
    if len(leq) != n or any(len(row) != n for row in leq):
        raise InvalidInstance(f"leq must be {n}x{n}")
    for row in leq:
        for v in row:
            if v not in (0, 1, True, False):
                raise InvalidInstance(f"leq entry {v!r} is not 0/1")
    if names is not None:
        if len(names) != n or any(not isinstance(s, str) for s in names):
            raise InvalidInstance("names must be a list of n strings")
        if len(set(names)) != n:
            raise InvalidInstance("names must be distinct")


def find_violations(n, table, leq):
    """Every axiom violation in the raw data, not just the first.

    Raises InvalidInstance on malformed shapes; otherwise returns a list of
    NotAssociative / NotPartialOrder / NotCompatible records (empty iff the
    data is a valid ordered semigroup).
    """
    _shape_check(n, table, leq)
    out = []
    rng = range(n)
    for i in rng:
        ti = table[i]
        for j in rng:
            tij = ti[j]
            tj = table[j]
            for k in rng:
                if table[tij][k] != ti[tj[k]]:
                    out.append(NotAssociative(i, j, k))
    for i in rng:
        if not leq[i][i]:
            out.append(NotPartialOrder("not_reflexive", (i,)))
    for i in rng:
        for j in rng:
            if i < j and leq[i][j] and leq[j][i]:
                out.append(NotPartialOrder("not_antisymmetric", (i, j)))
    for i in rng:
        for j in rng:
            if leq[i][j]:
                for k in rng:
                    if leq[j][k] and not leq[i][k]:
                        out.append(NotPartialOrder("not_transitive", (i, j, k)))
    for a in rng:
        for b in rng:
            if a != b and leq[a][b]:
                for x in rng:
                    if not leq[table[x][a]][table[x][b]]:
                        out.append(NotCompatible(a, b, x, "left"))
                    if not leq[table[a][x]][table[b][x]]:
                        out.append(NotCompatible(a, b, x, "right"))
    return out


class OrderedSemigroup:
    """A sealed finite ordered semigroup.

    Immutable after construction; all operations on it are pure, and
    derived data (ideals, Green's relations, canonical form, ...) is cached
    lazily on the instance.
    """

    __slots__ = ("n", "table", "leq", "names", "up", "down", "_cache")

    def __init__(self, n, table, leq, names=None, _checked=False):
        if not _checked:
            violations = find_violations(n, table, leq)
            if violations:
                raise ValidationError(violations)
            if names is not None:
                _shape_check(n, table, leq, names)
        self.n = n
        self.table = tuple(tuple(row) for row in table)
        self.leq = tuple(tuple(1 if v else 0 for v in row) for row in leq)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        # up[a]: bitmask of b with a <= b; down[b]: bitmask of a with a <= b
        up = [0] * n
        down = [0] * n
        for a in range(n):
            row = self.leq[a]
            for b in range(n):
                if row[b]:
                    up[a] |= 1 << b
                    down[b] |= 1 << a
        self.up = tuple(up)
        self.down = tuple(down)
        self._cache = {}

    # -- identity is structural on (n, table, leq); names are labels only --
    def __eq__(self, other):
        return (isinstance(other, OrderedSemigroup)
                and self.n == other.n
                and self.table == other.table
                and self.leq == other.leq)

    def __hash__(self):
        return hash((self.n, self.table, self.leq))

    def __repr__(self):
        return f"OrderedSemigroup(n={self.n})"

    def name_of(self, a):
        return self.names[a]

    # -- subset constructors ------------------------------------------------
    def subset(self, indices):
        mask = 0
        for i in indices:
            if not 0 <= i < self.n:
                raise InvalidInstance(f"subset index {i} out of range")
            mask |= 1 << i
        return SubsetHandle(self, mask)

    def subset_from_mask(self, mask):
        if mask >> self.n:
            raise InvalidInstance("subset mask has bits beyond the carrier")
        return SubsetHandle(self, mask)

    def full_subset(self):
        return SubsetHandle(self, (1 << self.n) - 1)

    def empty_subset(self):
        return SubsetHandle(self, 0)

    @property
    def full_mask(self):
        return (1 << self.n) - 1

    # -- JSON instance format ------------------------------------------------
    def to_json_dict(self):
        return {
            "n": self.n,
            "table": [list(row) for row in self.table],
            "leq": [list(row) for row in self.leq],
            "names": list(self.names),
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def validate(n, raw_table, raw_leq, names=None):
    """Check the three axiom families and seal an instance.

    Raises ValidationError carrying *every* violated triple, or
    InvalidInstance if the raw data is malformed.
    """
    violations = find_violations(n, raw_table, raw_leq)
    if violations:
        raise ValidationError(violations)
    if names is not None:
        _shape_check(n, raw_table, raw_leq, names)
    return OrderedSemigroup(n, raw_table, raw_leq, names, _checked=True)


def parse_instance(text):
    """Parse the JSON instance format into a sealed OrderedSemigroup.

    Format: {"n": int, "table": [[...]], "leq": [[0|1,...]]} with 0-based
    indices and leq[i][j]=1 iff e_i <= e_j.  An optional "names" array
    labels the elements for reports.  Ragged arrays and out-of-range
    entries are rejected.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInstance(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InvalidInstance("instance JSON must be an object")
    missing = {"n", "table", "leq"} - set(obj)
    if missing:
        raise InvalidInstance(f"missing keys: {sorted(missing)}")
    n, table, leq = obj["n"], obj["table"], obj["leq"]
    names = obj.get("names")
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise InvalidInstance("table must be a list of lists")
    if not isinstance(leq, list) or not all(isinstance(r, list) for r in leq):
        raise InvalidInstance("leq must be a list of lists")
    _shape_check(n, table, leq, names)
    return validate(n, table, leq, names)


class SubsetHandle:
    """A subset of a carrier, bound to its semigroup and bitmask-backed."""

    __slots__ = ("semigroup", "mask")

    def __init__(self, semigroup, mask):
        self.semigroup = semigroup
        self.mask = mask

    def __contains__(self, i):
        return bool((self.mask >> i) & 1)

    def __iter__(self):
        m = self.mask
        while m:
            lsb = m & -m
            yield lsb.bit_length() - 1
            m ^= lsb

    def __len__(self):
        return self.mask.bit_count()

    def __bool__(self):
        return self.mask != 0

    def __eq__(self, other):
        return (isinstance(other, SubsetHandle)
                and self.mask == other.mask
                and (self.semigroup is other.semigroup
                     or self.semigroup == other.semigroup))

    def __hash__(self):
        return hash((self.semigroup, self.mask))

    def __repr__(self):
        return f"SubsetHandle({self.indices()})"

    def indices(self):
        return tuple(self)

    def element_names(self):
        return [self.semigroup.names[i] for i in self]

    def union(self, other):
        self._check_bound(other)
        return SubsetHandle(self.semigroup, self.mask | other.mask)

    def intersection(self, other):
        self._check_bound(other)
        return SubsetHandle(self.semigroup, self.mask & other.mask)

    def difference(self, other):
        self._check_bound(other)
        return SubsetHandle(self.semigroup, self.mask & ~other.mask)

    def issubset(self, other):
        self._check_bound(other)
        return self.mask & ~other.mask == 0

    def _check_bound(self, other):
        if other.semigroup is not self.semigroup:
            raise ValueError("subsets bound to different semigroups")


def _require_bound(S, H):
    if H.semigroup is not S:
        raise ValueError("subset is not bound to this semigroup")


def downset_mask(S, mask):
    """Bitmask form of the downward closure ( . ]."""
    down = S.down
    out = 0
    m = mask
    while m:
        lsb = m & -m
        out |= down[lsb.bit_length() - 1]
        m ^= lsb
    return out


def downset(S, H):
    """(H] = every element below some member of H."""
    _require_bound(S, H)
    return SubsetHandle(S, downset_mask(S, H.mask))


def power(S, a, k):
    """k-fold product of a, k >= 1."""
    if k < 1:
        raise ValueError("exponent must be >= 1")
    row = S.table
    acc = a
    for _ in range(k - 1):
        acc = row[acc][a]
    return acc


@dataclass(frozen=True)
class PowerOrbit:
    """The eventually-periodic sequence a, a^2, a^3, ...

    orbit holds the distinct powers in order; index_len is the tail length
    before the cycle, period the cycle length, so
    a^(index_len + period + k) = a^(index_len + k) for all k >= 1.
    """
    element: int
    index_len: int
    period: int
    orbit: tuple

    @property
    def mask(self):
        m = 0
        for x in self.orbit:
            m |= 1 << x
        return m


def power_orbit(S, a):
    """Distinct powers of a with tail/cycle structure."""
    cache = S._cache.setdefault("orbit", {})
    got = cache.get(a)
    if got is not None:
        return got
    table = S.table
    seen = {}          # value -> position (1-based exponent)
    orbit = []
    cur = a
    k = 1
    while cur not in seen:
        seen[cur] = k
        orbit.append(cur)
        cur = table[cur][a]
        k += 1
    first = seen[cur]
    result = PowerOrbit(a, first - 1, k - first, tuple(orbit))
    cache[a] = result
    return result


def canonical_form(S):
    """Isomorphism-class key: the minimal byte encoding of (table, leq)
    over all simultaneous relabelings.  Brute force over n! permutations,
    fine for n <= 6."""
    cached = S._cache.get("canon")
    if cached is not None:
        return cached
    n = S.n
    table = S.table
    leq = S.leq
    best = None
    for perm in permutations(range(n)):
        inv = [0] * n
        for old, new in enumerate(perm):
            inv[new] = old
        buf = bytearray([n])
        for i in range(n):
            told = table[inv[i]]
            for j in range(n):
                buf.append(perm[told[inv[j]]])
        for i in range(n):
            lold = leq[inv[i]]
            for j in range(n):
                buf.append(lold[inv[j]])
        cand = bytes(buf)
        if best is None or cand < best:
            best = cand
    S._cache["canon"] = best
    return best


def relabel(S, perm):
    """The isomorphic copy with element i renamed perm[i]."""
    n = S.n
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    table = [[perm[S.table[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
    leq = [[S.leq[inv[i]][inv[j]] for j in range(n)] for i in range(n)]
    names = [S.names[inv[i]] for i in range(n)]
    return OrderedSemigroup(n, table, leq, names, _checked=True)
