"""Exception hierarchy shared by every stage of the pipeline.

The CLI maps these onto exit codes, so each class carries its own code.
"""


class EllRankError(Exception):
    exit_code = 1


class HypothesisViolated(EllRankError):
    """E[2] is not irreducible over the algebraic closure of k(t)."""

    exit_code = 2


class Undetermined(EllRankError):
    """A certificate could not be produced within the configured budget."""

    exit_code = 3


class CapabilityError(EllRankError):
    """Input lies outside a documented size or degree limit."""

    exit_code = 4


class PrecisionError(EllRankError):
    """A local computation needs a larger working precision."""

    exit_code = 4


class ConsistencyError(EllRankError):
    """Two independent computations disagreed. Always a bug."""

    exit_code = 1


class ParseError(EllRankError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)

    exit_code = 1
