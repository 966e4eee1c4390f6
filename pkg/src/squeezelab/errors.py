"""Exception types shared across the package."""


class GuardViolation(ValueError):
    """A numerical guard was violated (truncation, parameter range, window size).

    Raised when a requested computation falls outside the domain where the
    implementation can honour its accuracy contract.
    """


class DegenerateEvolutionError(GuardViolation):
    """The time-evolution factor B is numerically zero; the evolved
    wavefunction formula is singular at this point."""
