class PrecisionExhausted(ArithmeticError):
    """Refinement hit the precision budget before a certificate was found."""


class HypothesisViolation(ValueError):
    """Input violates a precondition of the result being applied."""
