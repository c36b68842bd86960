"""Exception types shared across the package."""


class RieszStencilError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(RieszStencilError, ValueError):
    """Invalid parameters (odd order, alpha out of range, bad lengths, ...)."""


class InstabilityError(RieszStencilError, ArithmeticError):
    """A numerical procedure lost accuracy or overflowed."""


class ConvergenceError(RieszStencilError, ArithmeticError):
    """An iterative procedure or series failed to converge."""


class SymmetryError(InstabilityError):
    """An inverse transform produced a non-negligible imaginary part."""
