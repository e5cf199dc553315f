class StatusException(Exception):

    OK = 'OK'
    PARTIAL = 'PARTIAL'
    SKIPPED = 'SKIPPED'
    INVALID = 'INVALID'
    INCONSISTENT = 'INCONSISTENT'
    ERROR = 'ERROR'

    def __init__(self, status, message):
        self.status = status
        self.message = message
        super().__init__(self.message)


class ConfigError(StatusException):
    """Malformed configuration document (carries line and column when known)."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f'{message} (line {line}, column {column})'
        super().__init__(StatusException.INVALID, message)


class SchemaError(StatusException):
    """One or more keys missing or invalid. `errors` holds (key_path, reason) pairs."""

    def __init__(self, errors):
        self.errors = list(errors)
        lines = [f'{path}: {reason}' for path, reason in self.errors]
        super().__init__(StatusException.INVALID, 'Schema validation failed:\n  ' + '\n  '.join(lines))


class ModelValidationError(StatusException):

    def __init__(self, message):
        super().__init__(StatusException.INVALID, message)


class ConsistencyError(StatusException):

    def __init__(self, message):
        super().__init__(StatusException.INCONSISTENT, message)


class InspectionError(StatusException, LookupError):

    def __init__(self, message):
        super().__init__(StatusException.INVALID, message)


class RegistrationError(StatusException, ValueError):

    def __init__(self, message):
        super().__init__(StatusException.INVALID, message)


class SamplerError(StatusException, ValueError):

    def __init__(self, message):
        super().__init__(StatusException.INVALID, message)


class EmptyDistributionError(StatusException):

    def __init__(self, message='Cannot sample from a distribution with zero total weight'):
        super().__init__(StatusException.ERROR, message)


class StateError(StatusException):

    def __init__(self, message):
        super().__init__(StatusException.INVALID, message)


class InternalConsistencyFault(StatusException):
    """An accounting identity failed during a step."""

    def __init__(self, identity, quarter, residual, tolerance):
        self.identity = identity
        self.quarter = quarter
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(
            StatusException.INCONSISTENT,
            f'{identity} violated at quarter {quarter}: relative residual {residual:.3e} > {tolerance:.0e}'
        )


class EnsembleRunError(StatusException):

    def __init__(self, run_index, cause):
        self.run_index = run_index
        self.cause = cause
        status = cause.status if isinstance(cause, StatusException) else StatusException.ERROR
        super().__init__(status, f'Run {run_index} failed: {cause}')
