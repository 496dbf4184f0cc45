"""Exception types shared across the package."""


class PrecisionExhausted(ArithmeticError):
    """A result has no significant digit left at the working precision."""


class SearchExhausted(ArithmeticError):
    """A bounded search ended without finding what it was looking for."""


class InvalidDiscriminant(ValueError):
    pass


class NotPrincipal(ValueError):
    pass


class HypothesisViolated(ValueError):
    """A criterion was asked about an input outside its hypotheses."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        super().__init__(f"{hypothesis}: {detail}" if detail else hypothesis)


class IndexObstruction(ValueError):
    """A prime divides the index of Z[theta] in the maximal order."""


class ClosureFailure(ArithmeticError):
    pass
