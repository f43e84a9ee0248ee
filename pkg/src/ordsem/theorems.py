"""The four nil-extension characterization predicates and the verifier
that checks each against the structural oracle.

Binding structure, the one subtle fidelity point: the power n is
existentially quantified per tuple, and in the pairwise condition of ne7
the SAME n raises both a and b, so the search tracks the pair (a^n, b^n).
In ne6/ne8/ne9 only a is raised.  exists_power takes the varying tuple
explicitly so each predicate encodes its own binding.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classes import _reg_mask
from .core import canonical_form
from .extension import find_nil_extension_base

TAGS = ("ne6", "ne7", "ne8", "ne9")

ORACLE_CLASS = {
    "ne6": "left_group_like",
    "ne7": "group_like",
    "ne8": "clifford",
    "ne9": "left_clifford",
}


def exists_power(S, varying, test):
    """Bounded search for an n >= 1 with test(a_1^n, ..., a_k^n).

    Iterates n = 1, 2, ... over the tuple of simultaneous powers; the tuple
    sequence is eventually periodic, so the search stops with a definitive
    no once a tuple state repeats.  Returns (True, n) at the first hit or
    (False, None).
    """
    if not varying:
        raise ValueError("varying tuple must be nonempty")
    table = S.table
    state = tuple(varying)
    seen = set()
    n = 1
    while state not in seen:
        if test(*state):
            return True, n
        seen.add(state)
        state = tuple(table[p][a] for p, a in zip(state, varying))
        n += 1
    return False, None


def _exists_power_trace(S, varying, test):
    """exists_power plus the list of visited power tuples, for witnesses."""
    table = S.table
    state = tuple(varying)
    seen = set()
    trace = []
    n = 1
    while state not in seen:
        trace.append(state)
        if test(*state):
            return True, n, trace
        seen.add(state)
        state = tuple(table[p][a] for p, a in zip(state, varying))
        n += 1
    return False, None, trace


# --- helpers: one-witness searches over the carrier ------------------------

def _le_some_product(S, a, build):
    """a <= build(s) for some s."""
    la = S.leq[a]
    for s in range(S.n):
        if la[build(s)]:
            return True
    return False


# --- the four predicates ----------------------------------------------------
# Each _fail_* returns None when the condition holds, else a witness dict
# with the first failing tuple in lexicographic order and the power trace.

def _fail_ne6(S):
    n = S.n
    table = S.table
    leq = S.leq
    # (1) for all a,b there is n with a^n in (a^n S a^n b]
    for a in range(n):
        for b in range(n):
            def test(p):
                lp = leq[p]
                pb_row = table[p]
                for s in range(n):
                    if lp[table[table[pb_row[s]][p]][b]]:
                        return True
                return False
            hit, _, trace = _exists_power_trace(S, (a,), test)
            if not hit:
                return {"clause": 1, "tuple": (a, b), "powers_tried": trace}
    # (2) a in S, b regular, a <= b*a implies a <= a*x*b for some x
    reg = _reg_mask(S)
    for a in range(n):
        for b in range(n):
            if (reg >> b) & 1 and leq[a][table[b][a]]:
                ra = table[a]
                if not _le_some_product(S, a, lambda x: table[ra[x]][b]):
                    return {"clause": 2, "tuple": (a, b), "powers_tried": None}
    return None


def _fail_ne7(S):
    n = S.n
    table = S.table
    leq = S.leq
    # the same n raises both elements: a^n in (b^n S b^n]
    for a in range(n):
        for b in range(n):
            def test(p, q):
                lp = leq[p]
                rq = table[q]
                for s in range(n):
                    if lp[table[rq[s]][q]]:
                        return True
                return False
            hit, _, trace = _exists_power_trace(S, (a, b), test)
            if not hit:
                return {"clause": 1, "tuple": (a, b), "powers_tried": trace}
    return None


def _fail_ne8(S):
    n = S.n
    table = S.table
    leq = S.leq
    # (1) for all x,a,y there is n with
    #     x a^n y in (x a^n y S y a^n x] n (y a^n x S x a^n y]
    for x in range(n):
        for a in range(n):
            for y in range(n):
                def test(p):
                    m = table[table[x][p]][y]
                    w = table[table[y][p]][x]
                    lm = leq[m]
                    rm = table[m]
                    rw = table[w]
                    if not any(lm[table[rm[s]][w]] for s in range(n)):
                        return False
                    return any(lm[table[rw[s]][m]] for s in range(n))
                hit, _, trace = _exists_power_trace(S, (a,), test)
                if not hit:
                    return {"clause": 1, "tuple": (x, a, y),
                            "powers_tried": trace}
    # (2) a <= b with b regular implies a in (S a b]
    reg = _reg_mask(S)
    for a in range(n):
        la = leq[a]
        for b in range(n):
            if (reg >> b) & 1 and la[b]:
                ab = table[a][b]
                if not _le_some_product(S, a, lambda s: table[s][ab]):
                    return {"clause": 2, "tuple": (a, b), "powers_tried": None}
    return None


def _fail_ne9(S):
    n = S.n
    table = S.table
    leq = S.leq
    # (1) for all x,a,y there is n with
    #     x a^n y in (x a^n y S y a^n x] n (x a^n y S x a^n y]
    for x in range(n):
        for a in range(n):
            for y in range(n):
                def test(p):
                    m = table[table[x][p]][y]
                    w = table[table[y][p]][x]
                    lm = leq[m]
                    rm = table[m]
                    if not any(lm[table[rm[s]][w]] for s in range(n)):
                        return False
                    return any(lm[table[rm[s]][m]] for s in range(n))
                hit, _, trace = _exists_power_trace(S, (a,), test)
                if not hit:
                    return {"clause": 1, "tuple": (x, a, y),
                            "powers_tried": trace}
    # (2) a <= b with b regular implies a <= a*z*a*b for some z
    reg = _reg_mask(S)
    for a in range(n):
        la = leq[a]
        ra = table[a]
        for b in range(n):
            if (reg >> b) & 1 and la[b]:
                if not _le_some_product(
                        S, a, lambda z: table[table[ra[z]][a]][b]):
                    return {"clause": 2, "tuple": (a, b), "powers_tried": None}
    return None


_FAILURE = {"ne6": _fail_ne6, "ne7": _fail_ne7, "ne8": _fail_ne8,
            "ne9": _fail_ne9}


def cond_ne6(S):
    return _fail_ne6(S) is None


def cond_ne7(S):
    return _fail_ne7(S) is None


def cond_ne8(S):
    return _fail_ne8(S) is None


def cond_ne9(S):
    return _fail_ne9(S) is None


CONDITIONS = {"ne6": cond_ne6, "ne7": cond_ne7, "ne8": cond_ne8,
              "ne9": cond_ne9}


@dataclass(frozen=True)
class VerificationReport:
    """Pairing of a predicate verdict with the structural-oracle verdict
    for one instance and one theorem tag."""
    instance_key: str       # canonical form, hex
    theorem: str
    predicate_verdict: bool
    oracle_verdict: bool
    agree: bool
    witness: object         # dict when some verdict is false, else None

    def to_dict(self):
        return {
            "instance_key": self.instance_key,
            "theorem": self.theorem,
            "predicate_verdict": self.predicate_verdict,
            "oracle_verdict": self.oracle_verdict,
            "agree": self.agree,
            "witness": self.witness,
        }


def _jsonable_witness(w):
    if w is None:
        return None
    out = dict(w)
    if out.get("tuple") is not None:
        out["tuple"] = list(out["tuple"])
    if out.get("powers_tried") is not None:
        out["powers_tried"] = [list(t) for t in out["powers_tried"]]
    return out


def theorem_verdicts(S, tag, lemma_collector=None):
    """(predicate verdict, oracle verdict, predicate failure witness)."""
    failure = _FAILURE[tag](S)
    cert = find_nil_extension_base(S, ORACLE_CLASS[tag], lemma_collector)
    return failure is None, cert is not None, failure


def verify_theorem(S, tag, lemma_collector=None):
    """Evaluate one characterization predicate against the oracle.

    The oracle verdict is "some ideal base of the matching class exists and
    S is a nil extension of it".  A disagreement is the most valuable
    possible output; the report carries the minimal failing witness."""
    predicate_verdict, oracle_verdict, failure = theorem_verdicts(
        S, tag, lemma_collector)
    agree = predicate_verdict == oracle_verdict
    witness = None
    if not predicate_verdict:
        witness = {"side": "predicate"} | _jsonable_witness(failure)
    elif not oracle_verdict:
        witness = {"side": "oracle", "class": ORACLE_CLASS[tag],
                   "detail": "no ideal base of this class"}
    return VerificationReport(
        instance_key=canonical_form(S).hex(),
        theorem=tag,
        predicate_verdict=predicate_verdict,
        oracle_verdict=oracle_verdict,
        agree=agree,
        witness=witness,
    )
