class GgdkitError(Exception):
    """Base class for every error raised by ggdkit."""


class UnknownVertexError(GgdkitError, KeyError):
    def __init__(self, vertex_id):
        self.vertex_id = vertex_id
        super().__init__(f"unknown vertex {vertex_id!r}")

    def __str__(self):
        return self.args[0]


class UnknownEdgeError(GgdkitError, KeyError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"unknown edge {tuple(edge)!r}")

    def __str__(self):
        return self.args[0]


class DimensionMismatchError(GgdkitError, ValueError):
    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(f"dimension mismatch: {left} != {right}")


class InvalidGraphError(GgdkitError, ValueError):
    pass


class DocumentError(GgdkitError, ValueError):
    pass


class InvalidMatchingError(GgdkitError, ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"invalid matching:\n{report.format()}")


class IllegalEditOperationError(GgdkitError, ValueError):
    def __init__(self, index, rule, op):
        self.index = index
        self.rule = rule
        self.op = op
        super().__init__(f"op #{index} ({op!r}) is illegal: {rule}")


class InvalidInstanceError(GgdkitError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid 3-PARTITION instance: " + "; ".join(self.violations))


class LayoutInfeasibleError(GgdkitError, ValueError):
    pass


class InvalidCertificateError(GgdkitError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid 3-PARTITION certificate: " + "; ".join(self.violations))
