class LoopError(ValueError):
    def __init__(self, msg: str = "The graph needs to be loop-free.", *args, **kwargs):
        super().__init__(msg, *args, **kwargs)


class GraphFormatError(ValueError):
    def __init__(self, violations: list[str], *args, **kwargs):
        self.violations = list(violations)
        super().__init__(
            "The graph data is malformed: " + "; ".join(self.violations),
            *args,
            **kwargs,
        )


class InputSchemaError(ValueError):
    """
    Raised when JSON input does not match its schema.

    Every violation is prefixed by the JSON pointer of the offending value.
    """

    def __init__(self, violations: list[str], *args, **kwargs):
        self.violations = list(violations)
        super().__init__(
            "The input does not match the schema: " + "; ".join(self.violations),
            *args,
            **kwargs,
        )


class NotATreeError(ValueError):
    def __init__(
        self, msg: str = "The decomposition tree needs to be a tree.", *args, **kwargs
    ):
        super().__init__(msg, *args, **kwargs)


class NoPathError(ValueError):
    def __init__(self, u, v, *args, **kwargs):
        self.pair = (u, v)
        super().__init__(f"There is no path between {u} and {v}.", *args, **kwargs)


class DisconnectedGraphError(ValueError):
    def __init__(self, msg: str = "The graph needs to be connected.", *args, **kwargs):
        super().__init__(msg, *args, **kwargs)


class AutomorphismError(ValueError):
    """
    Raised when a vertex map does not preserve adjacency.

    The attribute ``witness`` is a pair of image vertices whose adjacency
    differs from the adjacency of their preimages.
    """

    def __init__(self, witness: tuple, *args, **kwargs):
        self.witness = witness
        super().__init__(
            f"The map is not an automorphism: the adjacency of {witness} "
            "is not preserved.",
            *args,
            **kwargs,
        )


class ActionError(ValueError):
    """
    Raised when an action does not permute the parts of a tree-decomposition.
    """

    def __init__(self, generator: int, node, *args, **kwargs):
        self.generator = generator
        self.node = node
        super().__init__(
            f"The generator {generator} maps the part of the node {node} "
            "onto a vertex set that is not a part.",
            *args,
            **kwargs,
        )


class SpecError(ValueError):
    def __init__(self, report, *args, **kwargs):
        self.report = report
        super().__init__(
            "The amalgamation spec is invalid: " + "; ".join(report.violations),
            *args,
            **kwargs,
        )


class NotBasicError(ValueError):
    def __init__(self, report, *args, **kwargs):
        self.report = report
        super().__init__(
            f"The tree-decomposition is not basic: {report.failure}.", *args, **kwargs
        )


class PreconditionError(ValueError):
    pass


class NoSplitFoundError(RuntimeError):
    def __init__(self, k: int, scale: int, *args, **kwargs):
        self.k = k
        self.scale = scale
        super().__init__(
            f"No split with adhesion at most {k} found at scale {scale}.",
            *args,
            **kwargs,
        )


class NonNestedOrbitError(RuntimeError):
    def __init__(self, crossing: tuple, *args, **kwargs):
        self.crossing = crossing
        first, second = crossing
        super().__init__(
            f"The separator orbit is not nested: {sorted(first)} "
            f"crosses {sorted(second)}.",
            *args,
            **kwargs,
        )


class InconclusiveError(RuntimeError):
    def __init__(self, reason: str, pointer=None, *args, **kwargs):
        self.reason = reason
        self.pointer = pointer
        msg = reason if pointer is None else f"{reason} (at {pointer})"
        super().__init__(msg, *args, **kwargs)


class InvariantError(RuntimeError):
    pass
