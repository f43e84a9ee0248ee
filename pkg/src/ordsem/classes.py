"""Decision procedures for the ordered-semigroup classes the theorems
quantify over: regular, group like, left group like, Clifford, left
Clifford, nil; plus zero and nilpotent computations.

Membership criteria (all witness searches are exhaustive over the carrier):
  regular element   a <= a*x*a for some x
  group like        for all a,b there are x,y with a <= x*b and a <= b*y
  left group like   for all a,b there is x with a <= x*b
  Clifford          regular and a*b in (bSa] for all a,b
  left Clifford     regular and a*b in (Sa] for all a,b
  zero              z <= x for every x, with z*x = x*z = z
  nil               zero exists and every element has a power equal to it
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import SubsetHandle, power_orbit


def _reg_mask(S):
    cached = S._cache.get("reg")
    if cached is not None:
        return cached
    n = S.n
    table = S.table
    leq = S.leq
    mask = 0
    for a in range(n):
        row = table[a]
        for x in range(n):
            if leq[a][table[row[x]][a]]:
                mask |= 1 << a
                break
    S._cache["reg"] = mask
    return mask


def reg_set(S):
    """Elements a with a <= a*x*a for some x."""
    return SubsetHandle(S, _reg_mask(S))


def is_regular(S):
    return _reg_mask(S) == S.full_mask


def zero_element(S):
    """The unique z below every element with z*x = x*z = z, or None."""
    cached = S._cache.get("zero", "?")
    if cached != "?":
        return cached
    n = S.n
    table = S.table
    found = None
    for z in range(n):
        # z sits at the very bottom (z <= x for all x) and absorbs
        if S.up[z] != S.full_mask:
            continue
        row = table[z]
        if all(row[x] == z and table[x][z] == z for x in range(n)):
            found = z
            break
    S._cache["zero"] = found
    return found


def _nil_mask(S):
    z = zero_element(S)
    if z is None:
        return 0
    mask = 0
    for a in range(S.n):
        if (power_orbit(S, a).mask >> z) & 1:
            mask |= 1 << a
    return mask


def nilpotents(S):
    """Elements with some power equal to the zero (empty if no zero)."""
    return SubsetHandle(S, _nil_mask(S))


def is_nil(S):
    z = zero_element(S)
    return z is not None and _nil_mask(S) == S.full_mask


def is_group_like(S):
    """For all a,b there are x,y with a <= x*b and a <= b*y."""
    n = S.n
    table = S.table
    leq = S.leq
    for a in range(n):
        la = leq[a]
        for b in range(n):
            rb = table[b]
            if not any(la[table[x][b]] for x in range(n)):
                return False
            if not any(la[rb[y]] for y in range(n)):
                return False
    return True


def is_left_group_like(S):
    """For all a,b there is x with a <= x*b."""
    n = S.n
    table = S.table
    leq = S.leq
    for a in range(n):
        la = leq[a]
        for b in range(n):
            if not any(la[table[x][b]] for x in range(n)):
                return False
    return True


def is_left_group_like_lgo(S):
    """Alternative form: a in (aSab] for all a,b.

    Kept separate from is_left_group_like on purpose; the verification
    harness asserts the two agree on every enumerated instance instead of
    assuming the equivalence.
    """
    n = S.n
    table = S.table
    leq = S.leq
    for a in range(n):
        la = leq[a]
        ra = table[a]
        for b in range(n):
            ok = False
            for s in range(n):
                # a * s * a * b
                if la[table[table[ra[s]][a]][b]]:
                    ok = True
                    break
            if not ok:
                return False
    return True


def is_clifford(S):
    """Regular with a*b in (bSa] for all a,b."""
    if not is_regular(S):
        return False
    n = S.n
    table = S.table
    leq = S.leq
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            lab = leq[ab]
            rb = table[b]
            if not any(lab[table[rb[s]][a]] for s in range(n)):
                return False
    return True


def is_left_clifford(S):
    """Regular with a*b in (Sa] for all a,b."""
    if not is_regular(S):
        return False
    n = S.n
    table = S.table
    leq = S.leq
    for a in range(n):
        for b in range(n):
            ab = table[a][b]
            lab = leq[ab]
            if not any(lab[table[s][a]] for s in range(n)):
                return False
    return True


CLASS_PREDICATES = {
    "group_like": is_group_like,
    "left_group_like": is_left_group_like,
    "clifford": is_clifford,
    "left_clifford": is_left_clifford,
}


@dataclass(frozen=True)
class ClassReport:
    """Full classification of one instance; serializes with a stable field
    order for golden-file comparisons."""
    reg_set: SubsetHandle
    nil_set: SubsetHandle
    zero: object            # element index or None
    regular: bool
    group_like: bool
    left_group_like: bool
    clifford: bool
    left_clifford: bool
    nil: bool

    FLAG_NAMES = ("regular", "group_like", "left_group_like",
                  "clifford", "left_clifford", "nil")

    def flags(self):
        return {name: getattr(self, name) for name in self.FLAG_NAMES}

    def to_dict(self):
        S = self.reg_set.semigroup
        return {
            "reg_set": self.reg_set.element_names(),
            "nilpotents": self.nil_set.element_names(),
            "zero": None if self.zero is None else S.names[self.zero],
            "flags": self.flags(),
        }


def class_report(S):
    return ClassReport(
        reg_set=reg_set(S),
        nil_set=nilpotents(S),
        zero=zero_element(S),
        regular=is_regular(S),
        group_like=is_group_like(S),
        left_group_like=is_left_group_like(S),
        clifford=is_clifford(S),
        left_clifford=is_left_clifford(S),
        nil=is_nil(S),
    )
