"""Exception types shared across the package."""

from __future__ import annotations


class OrdsemError(Exception):
    """Base class for all package errors."""


class InvalidInstance(OrdsemError):
    """Raw instance data is malformed (ragged arrays, out-of-range entries,
    bad names).  Distinct from ValidationError: the data cannot even be
    interpreted as a candidate ordered semigroup."""


class ValidationError(OrdsemError):
    """A candidate instance violates the ordered-semigroup axioms.

    Carries every violation found, not just the first.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(
            f"{len(self.violations)} axiom violation(s): "
            + "; ".join(str(v) for v in self.violations[:5])
            + ("; ..." if len(self.violations) > 5 else "")
        )


class EmptySubset(OrdsemError):
    """An operation required a nonempty subset."""


class NotAnIdeal(OrdsemError):
    """The given subset is not an ideal."""


class NotClosed(OrdsemError):
    """The given subset is not closed under multiplication."""


class NotACongruence(OrdsemError):
    """The given equivalence relation is not a congruence."""


class NotCompleteSemilattice(OrdsemError):
    """The given relation is not a complete semilattice congruence."""


class LemmaViolation(OrdsemError):
    """The Rees-quotient-nilness test and the power-membership test of
    nil-extension-hood disagreed on some element.  Mathematically this
    should be impossible; an occurrence is a counterexample artifact."""

    def __init__(self, element, detail=""):
        self.element = element
        super().__init__(f"nil-extension paths disagree at element {element}"
                         + (f": {detail}" if detail else ""))


class OrderTooLarge(OrdsemError):
    """Requested enumeration order exceeds the exhaustive-mode cap."""
