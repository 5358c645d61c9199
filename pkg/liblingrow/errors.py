#!/usr/bin/env python3
"""This Module is the base module for custom errors to allow for reduced tracebacks and
more actionable items on the user's side"""

class LingrowError(Exception):
    """Base class for lingrow exceptions."""
    exit_code = 3

    def __init__(self, arg):
        super().__init__(arg)
        self.msg = arg

# Configuration problems, exit code 2

class ConfigError(LingrowError):
    exit_code = 2

class CliArgumentError(ConfigError):
    pass

class ConfigParseError(ConfigError):
    pass

class ConfigSchemaError(ConfigError):
    def __init__(self, key, reason):
        super().__init__(reason)
        self.key = key
        self.msg = "Invalid configuration at '%s': %s" % (key, reason)

class FileOpenError(ConfigError):
    def __init__(self, value, reason):
        super().__init__(reason)
        self.msg = "File %s could not be opened due to %s" % (value, reason)

class JsonArgumentError(ConfigError):
    def __init__(self, value, reason):
        super().__init__(reason)
        self.msg = "Parse error for '%s' because '%s'" % (value, reason)

class SolverConfigError(ConfigError):
    pass

# Numerical failures, exit code 3

class AtomOnBoundaryError(LingrowError):
    def __init__(self, location, domain):
        super().__init__(location)
        self.msg = "Atom at %r lies on the boundary of the domain %r" % (location, domain)

class DegenerateAnisotropyError(LingrowError):
    def __init__(self, direction):
        super().__init__(direction)
        self.msg = "Anisotropy vanishes in the non-zero direction %r" % (direction,)

class DivergenceMismatchError(LingrowError):
    def __init__(self, cell, residual, tol):
        super().__init__(cell)
        self.cell = cell
        self.residual = residual
        self.msg = "Discrete divergence of the field differs from the measure on cell %s by %.3e (tol %.1e)" % (
            cell, residual, tol)

class H4ViolationError(LingrowError):
    def __init__(self, name):
        super().__init__(name)
        self.msg = "Integrand '%s' is not bounded below by its recession minus a constant" % name

class IdentityViolationError(LingrowError):
    def __init__(self, name, gap, tol):
        super().__init__(name)
        self.gap = gap
        self.msg = "Identity '%s' violated: gap %.3e exceeds tolerance %.1e" % (name, gap, tol)

class NonConvergentError(LingrowError):
    def __init__(self, quantity, spread, tol):
        super().__init__(quantity)
        self.msg = "%s did not converge: spread %.3e at the last rung exceeds %.1e" % (
            quantity, spread, tol)

class NonSingularPairError(LingrowError):
    def __init__(self):
        super().__init__(None)
        self.msg = "Positive and negative parts of the measure share support; " \
            "recovery sequences need a mutually singular pair"

class ParameterError(LingrowError):
    pass

class SingularityError(LingrowError):
    pass

# Dispatch failures, exit code 4

class UnknownCommandError(LingrowError):
    exit_code = 4

class UnknownExperimentError(UnknownCommandError):
    def __init__(self, name, known):
        super().__init__(name)
        self.msg = "Unknown experiment '%s', expected one of: %s" % (name, ", ".join(sorted(known)))

class UnknownLibraryKeyError(ConfigError):
    def __init__(self, kind, key, known):
        super().__init__(key)
        self.msg = "Unknown %s '%s', expected one of: %s" % (kind, key, ", ".join(sorted(known)))
