"""Exception types shared across the package."""


class PosgamesError(Exception):
    """Base class for all library errors."""


class BoardError(PosgamesError):
    """Malformed board data (bad indices, empty edges, broken invariants)."""


class FormatError(PosgamesError):
    """Unparseable or schema-violating JSON payload."""


class GuardExceeded(PosgamesError):
    """A resource guard tripped (memo cap, subset count, vertex count).

    Guards abort loudly; they never degrade into a truncated answer.
    """


class IllegalMove(PosgamesError):
    """A move that is not legal in the given state."""


class RestrictionError(PosgamesError):
    """A move-restriction family violates its structural hypotheses."""


class DegenerateTransversalError(PosgamesError):
    """Transversal of an empty edge family: the empty set hits everything,
    so the result cannot be represented as a hypergraph with non-empty edges.
    Games on the would-be result are trivially won by the claiming player.
    """
