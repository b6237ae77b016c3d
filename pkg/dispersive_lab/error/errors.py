#!usr/bin/python

# Copyright 2024 dispersive-lab developers
# See LICENSE for details.


class LabBaseError(Exception):
    """Generic exception for package.

    Attributes:
        code: error's id in text format, generated by this package when a comprobation or a computation fails.
        message: error's description.

    Args:
        code: error's id in text format, generated by this package when a comprobation or a computation fails.
        message: error's description.
    """

    def __init__(self, code: str, message: str) -> None:
        self.code = code
        self.message = message
        super().__init__(self._build_message())

    def _build_message(self) -> str:
        """
        Formats the message for the exception.

        Returns:
            formatted message.
        """

        return f'{self.code}: {self.message} '


class LabInvalidArgumentError(LabBaseError, ValueError):
    """Exception thrown when a parameter violates the preconditions of an operation.

    Args:
        message: description of the violated precondition.
    """

    def __init__(self, message: str) -> None:
        super().__init__(code='INVALID_ARGUMENT', message=message)


class LabNumericError(LabBaseError):
    """Exception thrown when a numerical procedure (quadrature, transform, regression) does not produce a finite result.

    Args:
        message: description of the failure.
        diagnostics: values useful to reproduce the failure (panel count, scale, last estimate, ...).
    """

    def __init__(self, message: str, diagnostics: dict = None, code: str = 'NUMERIC_FAILURE') -> None:
        self.diagnostics = diagnostics if diagnostics is not None else {}
        if self.diagnostics:
            details = ', '.join(f'{k}={v}' for k, v in self.diagnostics.items())
            message = f'{message} ({details})'
        super().__init__(code=code, message=message)


class LabResolutionError(LabNumericError):
    """Exception thrown when a grid cannot resolve the requested region or would exceed the configured size cap.

    Args:
        required: size (length or point count) that should be resolved.
        available: size actually available.
        what: name of the quantity being resolved.
    """

    def __init__(self, required: float, available: float, what: str = 'region') -> None:
        self.required = required
        self.available = available
        super().__init__(message=f'unable to resolve {what}',
                         diagnostics={'required': required, 'available': available},
                         code='RESOLUTION_FAILURE')


class LabUnsupportedRegimeError(LabBaseError):
    """Exception thrown when an exponent formula or a kernel bound is requested outside the parameter regimes where it is stated.

    Args:
        what: name of the requested quantity.
        params: offending parameter values.
    """

    def __init__(self, what: str, **params) -> None:
        self.params = params
        values = ', '.join(f'{k}={v}' for k, v in params.items())
        super().__init__(code='UNSUPPORTED_REGIME', message=f'no {what} is available for {values}')


class BandLimitWarning(UserWarning):
    """Warning issued when a sampled spectrum times a multiplier is not negligible at the edges of the sampled window.
    """
