"""Exception types shared across the package."""


class CshomError(Exception):
    """Base class for all package errors."""


class UnknownElement(CshomError):
    """An element label is not part of the structure."""


class UnknownLabel(CshomError):
    """A row/column label is not part of the Rees matrix semigroup."""


class NotAGroup(CshomError):
    """A multiplication table fails the group axioms."""


class NotASubgroup(CshomError):
    """A subset is not a subgroup of the ambient group."""


class NotAssociative(CshomError):
    """A multiplication table fails associativity."""

    def __init__(self, triple):
        self.triple = triple
        a, b, c = triple
        super().__init__(f"associativity fails at ({a}, {b}, {c})")


class NotCompletelySimple(CshomError):
    """The semigroup is not completely simple."""


class NotNormalized(CshomError):
    """The Rees matrix semigroup has no distinguished all-identity row/column."""


class CapExceeded(CshomError):
    """A search exceeded its configured cap."""

    def __init__(self, count):
        self.count = count
        super().__init__(f"cap exceeded after {count} results")


class ComponentMismatch(CshomError):
    """Morphism components do not fit the given source/target."""


class NotValidated(CshomError):
    """The morphism was applied before being validated."""


class NormalizationNotFixed(CshomError):
    """The index maps move the distinguished row/column."""


class NoGroupAmalgamFound(CshomError):
    """No group within the search bound receives both wings compatibly."""


class CoreMismatch(CshomError):
    """Amalgam wings disagree on the shared core."""


class ParseError(CshomError):
    """Workspace input is malformed."""

    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class DuplicateName(CshomError):
    """A workspace declaration reuses a name."""


class UnresolvedReference(CshomError):
    """A declaration refers to a name that does not exist."""


class DeadlineExceeded(CshomError):
    """The configured deadline expired before the search finished."""
