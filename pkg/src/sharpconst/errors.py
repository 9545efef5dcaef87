"""Exception types shared across the package."""


class ConvergenceError(RuntimeError):
    """An iterative solver or quadrature ran out of budget before reaching
    its tolerance."""


class InadmissibleExponents(ValueError):
    """The exponent tuple (n, p, q) violates the admissibility restrictions
    of the inequality family.  The message cites the violated restriction."""
