"""Exception types raised by dtop."""


class DtopError(Exception):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class NotToeplitzError(DtopError):
    """An operator failed the constant-diagonal (Brown-Halmos) check.

    ``where`` is the 1-based ``(i, j)`` with the largest
    ``|A[i, j] - A[i+1, j+1]|``.
    """

    def __init__(self, residual, where, tol):
        self.residual = residual
        self.where = where
        self.tol = tol
        i, j = where
        super().__init__(
            f"operator is not Toeplitz: |A[{i},{j}] - A[{i + 1},{j + 1}]| = "
            f"{residual:.3e} exceeds tolerance {tol:.1e}"
        )


class BoundViolationError(DtopError):
    """A recovered coefficient breaks the Cauchy-Schwarz bound of its oracle."""

    def __init__(self, k, value, bound):
        self.k = k
        self.value = value
        self.bound = bound
        super().__init__(
            f"coefficient c[{k}] violates the norm bound: {value:.6g} > {bound:.6g}"
        )


class ConvergenceError(DtopError):
    """Power iteration did not settle; ``estimate`` holds the last iterate."""

    def __init__(self, estimate, iterations):
        self.estimate = estimate
        self.iterations = iterations
        super().__init__(
            f"power iteration did not converge in {iterations} steps "
            f"(last estimate {estimate:.12g})"
        )


class QuadratureError(DtopError):
    """A disk quadrature is too coarse for the requested integrand."""


class SymbolFormatError(ValueError):
    """Malformed symbol / vector / matrix document."""
