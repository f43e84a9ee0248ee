"""Green's equivalences and (complete) semilattice congruence machinery.

Green's relations come from equality of principal ideals: a L b iff
L(a) = L(b), likewise R and J, and H = L n R.  A congruence rho is a
semilattice congruence when a rho a^2 and ab rho ba for all a, b; it is
complete when additionally a <= b forces a rho ab.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .core import SubsetHandle, downset_mask
from .errors import NotACongruence, NotCompleteSemilattice
from .ideals import _principal_masks


class EquivalenceRelation:
    """A partition of the carrier, normalized so class labels appear in
    first-occurrence order and classes are listed by their minimum element."""

    __slots__ = ("semigroup", "class_id", "classes")

    def __init__(self, semigroup, class_id):
        n = semigroup.n
        if len(class_id) != n:
            raise ValueError("class_id must label every element")
        relabel = {}
        norm = []
        for label in class_id:
            if label not in relabel:
                relabel[label] = len(relabel)
            norm.append(relabel[label])
        self.semigroup = semigroup
        self.class_id = tuple(norm)
        masks = [0] * len(relabel)
        for i, label in enumerate(self.class_id):
            masks[label] |= 1 << i
        self.classes = tuple(SubsetHandle(semigroup, m) for m in masks)

    @classmethod
    def identity(cls, S):
        return cls(S, tuple(range(S.n)))

    @classmethod
    def universal(cls, S):
        return cls(S, (0,) * S.n)

    @classmethod
    def from_blocks(cls, S, blocks):
        class_id = [-1] * S.n
        for label, block in enumerate(blocks):
            for i in block:
                if class_id[i] != -1:
                    raise ValueError("blocks overlap")
                class_id[i] = label
        if -1 in class_id:
            raise ValueError("blocks do not cover the carrier")
        return cls(S, class_id)

    def same(self, a, b):
        return self.class_id[a] == self.class_id[b]

    @property
    def n_classes(self):
        return len(self.classes)

    def __eq__(self, other):
        return (isinstance(other, EquivalenceRelation)
                and self.semigroup == other.semigroup
                and self.class_id == other.class_id)

    def __hash__(self):
        return hash((self.semigroup, self.class_id))

    def __repr__(self):
        blocks = [tuple(c) for c in self.classes]
        return f"EquivalenceRelation({blocks})"


class GreenRelations(NamedTuple):
    l: EquivalenceRelation
    r: EquivalenceRelation
    j: EquivalenceRelation
    h: EquivalenceRelation


def _partition_by(S, keys):
    seen = {}
    class_id = []
    for k in keys:
        if k not in seen:
            seen[k] = len(seen)
        class_id.append(seen[k])
    return EquivalenceRelation(S, class_id)


def green_relations(S):
    """(L, R, J, H) from principal-ideal equality; H = L n R."""
    cached = S._cache.get("green")
    if cached is not None:
        return cached
    L, R, I = _principal_masks(S)
    rel_l = _partition_by(S, L)
    rel_r = _partition_by(S, R)
    rel_j = _partition_by(S, I)
    rel_h = _partition_by(S, zip(L, R))
    out = GreenRelations(rel_l, rel_r, rel_j, rel_h)
    S._cache["green"] = out
    return out


def is_congruence(S, rho):
    """Left and right congruence test."""
    n = S.n
    table = S.table
    cid = rho.class_id
    for a in range(n):
        for b in range(a + 1, n):
            if cid[a] == cid[b]:
                for c in range(n):
                    if cid[table[c][a]] != cid[table[c][b]]:
                        return False
                    if cid[table[a][c]] != cid[table[b][c]]:
                        return False
    return True


def is_semilattice_congruence(S, rho, check_congruence=True):
    """a rho a^2 and ab rho ba for all a, b.

    With check_congruence (the default, for verification mode) a
    non-congruence raises NotACongruence; census-mode callers that have
    already filtered can skip the recheck.
    """
    if check_congruence and not is_congruence(S, rho):
        raise NotACongruence("relation is not a congruence")
    n = S.n
    table = S.table
    cid = rho.class_id
    for a in range(n):
        if cid[a] != cid[table[a][a]]:
            return False
        for b in range(a + 1, n):
            if cid[table[a][b]] != cid[table[b][a]]:
                return False
    return True


def is_complete_semilattice_congruence(S, rho, check_congruence=True):
    """Semilattice congruence with a <= b implying a rho ab."""
    if not is_semilattice_congruence(S, rho, check_congruence=check_congruence):
        return False
    n = S.n
    table = S.table
    leq = S.leq
    cid = rho.class_id
    for a in range(n):
        for b in range(n):
            if leq[a][b] and cid[a] != cid[table[a][b]]:
                return False
    return True


def _set_partitions(n):
    """All partitions of {0..n-1} as restricted-growth label tuples."""
    def rec(prefix, maxlabel):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for label in range(maxlabel + 2):
            prefix.append(label)
            yield from rec(prefix, max(maxlabel, label))
            prefix.pop()
    yield from rec([0], 0)


def enumerate_complete_semilattice_congruences(S):
    """All complete semilattice congruences, finest partitions first.

    Checks every partition of the carrier (Bell(n) of them), which is
    plenty fast at the orders this package enumerates.
    """
    rels = []
    for cid in _set_partitions(S.n):
        rho = EquivalenceRelation(S, cid)
        if is_congruence(S, rho) and is_complete_semilattice_congruence(
                S, rho, check_congruence=False):
            rels.append(rho)
    rels.sort(key=lambda r: (-r.n_classes, r.class_id))
    return rels


@dataclass(frozen=True)
class SemilatticeDecomposition:
    """Components S_alpha of a complete semilattice congruence, with the
    semilattice order on component indices (alpha <= beta iff
    alpha = alpha*beta on the index semilattice)."""
    congruence: EquivalenceRelation
    components: tuple
    order: tuple        # order[i][j] truthy iff component i <= component j


def decomposition(S, rho):
    """Split S along rho and verify the four decomposition conditions:
    disjointness, covering, S_a S_b <= S_ab, and
    S_b n (S_a] nonempty => b <= a."""
    if not is_congruence(S, rho) or not is_complete_semilattice_congruence(
            S, rho, check_congruence=False):
        raise NotCompleteSemilattice(
            "relation is not a complete semilattice congruence")
    n = S.n
    table = S.table
    cid = rho.class_id
    k = rho.n_classes
    components = rho.classes

    # product on the index set Y; well-definedness is rechecked below
    reps = [min(c) for c in components]
    prod = [[cid[table[reps[i]][reps[j]]] for j in range(k)] for i in range(k)]
    for a in range(n):
        for b in range(n):
            if cid[table[a][b]] != prod[cid[a]][cid[b]]:
                raise NotCompleteSemilattice(
                    f"class product ill-defined at ({a},{b})")

    # covering and disjointness are structural for partitions; recheck anyway
    union = 0
    for i, c in enumerate(components):
        for j in range(i + 1, k):
            if c.mask & components[j].mask:
                raise NotCompleteSemilattice("components overlap")
        union |= c.mask
    if union != S.full_mask:
        raise NotCompleteSemilattice("components do not cover the carrier")

    order = tuple(tuple(1 if prod[i][j] == i else 0 for j in range(k))
                  for i in range(k))

    # order must be a partial order
    for i in range(k):
        if not order[i][i]:
            raise NotCompleteSemilattice("component order not reflexive")
        for j in range(k):
            if i != j and order[i][j] and order[j][i]:
                raise NotCompleteSemilattice("component order not antisymmetric")
            for l in range(k):
                if order[i][j] and order[j][l] and not order[i][l]:
                    raise NotCompleteSemilattice("component order not transitive")

    # S_b n (S_a] nonempty => b <= a
    for i in range(k):
        dn = downset_mask(S, components[i].mask)
        for j in range(k):
            if components[j].mask & dn and not order[j][i]:
                raise NotCompleteSemilattice(
                    f"downset condition fails for components ({j},{i})")

    return SemilatticeDecomposition(rho, components, order)
