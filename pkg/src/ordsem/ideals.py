"""Ideal machinery: membership tests, principal ideals, exhaustive ideal
enumeration, and the kernel.

An ideal is a nonempty subset I with SI <= I (left), IS <= I (right), and
(I] = I.  Principal ideals follow the standard ordered-semigroup
definitions L(a) = (a u Sa], R(a) = (a u aS], I(a) = (a u Sa u aS u SaS].
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import SubsetHandle, _require_bound, downset_mask
from .errors import EmptySubset


def _is_left_ideal_mask(S, mask):
    table = S.table
    n = S.n
    m = mask
    while m:
        lsb = m & -m
        i = lsb.bit_length() - 1
        for x in range(n):
            if not (mask >> table[x][i]) & 1:
                return False
        m ^= lsb
    return downset_mask(S, mask) == mask


def _is_right_ideal_mask(S, mask):
    table = S.table
    n = S.n
    m = mask
    while m:
        lsb = m & -m
        i = lsb.bit_length() - 1
        row = table[i]
        for x in range(n):
            if not (mask >> row[x]) & 1:
                return False
        m ^= lsb
    return downset_mask(S, mask) == mask


def _is_ideal_mask(S, mask):
    table = S.table
    n = S.n
    m = mask
    while m:
        lsb = m & -m
        i = lsb.bit_length() - 1
        row = table[i]
        for x in range(n):
            if not (mask >> row[x]) & 1:
                return False
            if not (mask >> table[x][i]) & 1:
                return False
        m ^= lsb
    return downset_mask(S, mask) == mask


def _checked_mask(S, I):
    _require_bound(S, I)
    if I.mask == 0:
        raise EmptySubset("ideals must be nonempty")
    return I.mask


def is_left_ideal(S, I):
    return _is_left_ideal_mask(S, _checked_mask(S, I))


def is_right_ideal(S, I):
    return _is_right_ideal_mask(S, _checked_mask(S, I))


def is_ideal(S, I):
    return _is_ideal_mask(S, _checked_mask(S, I))


@dataclass(frozen=True)
class PrincipalIdeals:
    """Per-element principal left / right / two-sided ideals."""
    L: tuple        # L[a] = (a u Sa]
    R: tuple        # R[a] = (a u aS]
    I: tuple        # I[a] = (a u Sa u aS u SaS]


def _principal_masks(S):
    cached = S._cache.get("principal")
    if cached is not None:
        return cached
    n = S.n
    table = S.table
    L = []
    R = []
    I = []
    for a in range(n):
        sa = 1 << a
        as_ = 1 << a
        sas = 0
        for x in range(n):
            xa = table[x][a]
            sa |= 1 << xa
            as_ |= 1 << table[a][x]
            for y in range(n):
                sas |= 1 << table[xa][y]
        L.append(downset_mask(S, sa))
        R.append(downset_mask(S, as_))
        I.append(downset_mask(S, sa | as_ | sas))
    cached = (tuple(L), tuple(R), tuple(I))
    S._cache["principal"] = cached
    return cached


def principal_ideals(S):
    L, R, I = _principal_masks(S)
    wrap = lambda masks: tuple(SubsetHandle(S, m) for m in masks)
    return PrincipalIdeals(wrap(L), wrap(R), wrap(I))


def _all_ideal_masks(S):
    cached = S._cache.get("ideals")
    if cached is not None:
        return cached
    n = S.n
    found = []
    for mask in range(1, 1 << n):
        if _is_ideal_mask(S, mask):
            found.append(mask)
    found.sort(key=lambda m: (m.bit_count(), m))
    cached = tuple(found)
    S._cache["ideals"] = cached
    return cached


def all_ideals(S):
    """Every nonempty ideal, smallest-first then by index content."""
    return [SubsetHandle(S, m) for m in _all_ideal_masks(S)]


def kernel(S):
    """Intersection of all ideals, or None when empty."""
    inter = S.full_mask
    for m in _all_ideal_masks(S):
        inter &= m
    return SubsetHandle(S, inter) if inter else None
