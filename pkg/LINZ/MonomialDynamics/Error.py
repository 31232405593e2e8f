class Error(ValueError):
    pass


class SystemDefinitionError(Error):
    """
    Error in the text definition of a monomial system.  The span identifies
    the line and column where the problem was found.
    """

    def __init__(self, message, span=None):
        if span is not None:
            message = message + " at line " + str(span.line) + " column " + str(span.column)
        Error.__init__(self, message)
        self.span = span


class InvalidValueError(Error):
    pass


class OutOfRangeError(InvalidValueError):
    pass


class ResourceLimitError(Error):
    pass


class VerificationError(RuntimeError):
    pass
