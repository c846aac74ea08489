class RelcatError(Exception):
    """
    Base class for every error raised by relcat.
    """


class InfiniteUnsupported(RelcatError):
    """
    A family with an infinite cardinality was summed in a rig without an infinitary rule.
    """


class MalformedTable(RelcatError):
    """
    A rig table is not total over the carrier or has an entry outside it.
    """


class DomainMismatch(RelcatError):
    """
    Morphisms were combined whose domains / codomains do not line up.
    """


class ArityMismatch(RelcatError):
    """
    A structural morphism was requested with the wrong number of objects.
    """


class NotDaggerKernel(RelcatError):
    """
    A supposed dagger kernel violates m†∘m = id, injectivity or source∘m = 0.
    """


class RigMismatch(RelcatError):
    """
    Matrices over different rigs were combined.
    """


class SearchExhausted(RelcatError):
    """
    A bounded search would have to enumerate more candidates than configured.
    Suites attach the verdicts gathered so far as .report.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotAtomic(RelcatError):
    """
    A nonzero point dominates no atom.
    """

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class MuNotBijective(RelcatError):
    """
    The map (x, y) -> x ⊗ y on atoms is not a bijection onto the atoms of X ⊗ Y.
    """


class ParseError(RelcatError):
    """
    Input file could not be parsed. Carries the file, line and column of the problem.
    """

    def __init__(self, message, path="<input>", line=0, column=0):
        self.path = path
        self.line = line
        self.column = column
        self.reason = message
        super().__init__("%s:%d:%d: %s" % (path, line, column, message))


class OutputError(RelcatError):
    """
    A report, result or witness file could not be written.
    """

    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path
