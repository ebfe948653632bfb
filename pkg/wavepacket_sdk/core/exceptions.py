"""
Custom Exception System for the Wave Packet SDK

This module defines the hierarchy of exceptions used throughout the SDK.
Every error carries a machine-readable error code, a context dictionary with
the numbers that triggered it (residuals, singular values, requested orders),
and recovery suggestions. The command-line front end maps these classes onto
its exit-status contract.

Features:
- Hierarchical exception structure for granular error handling
- Error codes derived from class names for automated processing
- Numeric context preservation for debugging tolerance failures
- Recovery suggestions for common issues
- Aggregation of several failures into one report
"""

from typing import Dict, Any, Optional, List
from datetime import datetime
import functools
import json
import traceback


class WavePacketError(Exception):
    """
    Base exception class for all Wave Packet SDK errors.
    Provides common functionality for error context, logging, and recovery suggestions.
    """

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        context: Optional[Dict[str, Any]] = None,
        suggestions: Optional[List[str]] = None,
        inner_exception: Optional[Exception] = None
    ):
        """
        Initialize base SDK exception with comprehensive error information.

        Args:
            message: Human-readable error message
            error_code: Machine-readable error code for automated handling
            context: Additional context information about the error
            suggestions: List of suggested solutions or recovery actions
            inner_exception: Original exception that caused this error (if any)
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self._get_default_error_code()
        self.context = context or {}
        self.suggestions = suggestions or []
        self.inner_exception = inner_exception
        self.timestamp = datetime.now()
        self.traceback_info = traceback.format_exc() if inner_exception else None

    def _get_default_error_code(self) -> str:
        """
        Generate default error code based on exception class name.

        Returns:
            Default error code string, e.g. SINGULARITY_ERROR
        """
        class_name = self.__class__.__name__
        error_code = ''.join(['_' + c.lower() if c.isupper() else c for c in class_name]).lstrip('_')
        return error_code.upper()

    def add_context(self, key: str, value: Any) -> 'WavePacketError':
        """
        Add additional context information to the exception.

        Args:
            key: Context key
            value: Context value

        Returns:
            Self for method chaining
        """
        self.context[key] = value
        return self

    def add_suggestion(self, suggestion: str) -> 'WavePacketError':
        """
        Add a recovery suggestion to the exception.

        Args:
            suggestion: Recovery suggestion text

        Returns:
            Self for method chaining
        """
        self.suggestions.append(suggestion)
        return self

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert exception to dictionary format for serialization.

        Returns:
            Exception data as dictionary
        """
        return {
            'error_type': self.__class__.__name__,
            'error_code': self.error_code,
            'message': self.message,
            'context': self.context,
            'suggestions': self.suggestions,
            'timestamp': self.timestamp.isoformat(),
            'inner_exception': str(self.inner_exception) if self.inner_exception else None,
            'traceback': self.traceback_info
        }

    def to_json(self) -> str:
        """Convert exception to JSON string for logging."""
        return json.dumps(self.to_dict(), indent=2, default=str)

    def get_user_message(self) -> str:
        """
        Get user-friendly error message with suggestions.

        Returns:
            Formatted user-friendly error message
        """
        user_message = self.message

        if self.suggestions:
            user_message += "\n\nSuggested solutions:"
            for i, suggestion in enumerate(self.suggestions, 1):
                user_message += f"\n{i}. {suggestion}"

        return user_message

    def is_recoverable(self) -> bool:
        """
        Check if this error is potentially recoverable.
        Base implementation returns True if suggestions are provided.
        """
        return len(self.suggestions) > 0


_FIELD_SUGGESTIONS = (
    (('k', 'j', 'exp', 'order', 'term'),
     "Check that multi-index components are nonnegative integers"),
    (('K', 'n', 'nodes', 'N', 'M'),
     "Check the requested orders and node counts against the configured caps"),
    (('d', 'A', 'B', 'S', 'a', 'eta', 'x', 'points', 'q', 'l'),
     "Check that all vectors and matrices share the dimension d"),
    (('params', 'complex entry', 'hbar'),
     "Check the params document: d, hbar, A and B as [re, im] pairs, a and eta"),
    (('grid',), "Write the grid as min:max:count per axis with finite bounds"),
    (('seed', 'spread'), "Use a non-negative integer seed and a positive spread"),
    (('table', 'method/frame', 'other'),
     "Rebuild the table with `wavepacket tables` for the same parameters"),
)


class ValidationError(WavePacketError):
    """
    Exception raised for invalid inputs: dimension mismatches, indices out of
    range, malformed JSON documents and similar caller mistakes.
    """

    def __init__(
        self,
        message: str,
        field_name: Optional[str] = None,
        expected_type: Optional[str] = None,
        actual_value: Optional[Any] = None,
        **kwargs
    ):
        """
        Initialize validation error with validation context.

        Args:
            message: Error message
            field_name: Name of field that failed validation
            expected_type: Expected data type, shape or range
            actual_value: Actual value that failed validation
            **kwargs: Additional arguments for base exception
        """
        context = kwargs.get('context', {})
        if field_name:
            context['field_name'] = field_name
        if expected_type:
            context['expected_type'] = expected_type
        if actual_value is not None:
            context['actual_value'] = str(actual_value)

        kwargs['context'] = context
        super().__init__(message, **kwargs)

        if not self.suggestions:
            self._add_validation_suggestions()

    def _add_validation_suggestions(self):
        """Add suggestions matching the field that failed validation"""
        field_name = self.context.get('field_name')
        for fields, suggestion in _FIELD_SUGGESTIONS:
            if field_name in fields:
                self.add_suggestion(suggestion)
                return
        self.add_suggestion("Compare the input against the documented JSON schema")


class AdmissibilityError(ValidationError):
    """
    Exception raised when a matrix pair (A, B) violates
    A*B + B*A = 2I or A^tB - B^tA = 0 beyond tolerance.
    """

    def __init__(
        self,
        message: str,
        residual1: Optional[float] = None,
        residual2: Optional[float] = None,
        tolerance: Optional[float] = None,
        **kwargs
    ):
        context = kwargs.get('context', {})
        if residual1 is not None:
            context['residual1'] = residual1
        if residual2 is not None:
            context['residual2'] = residual2
        if tolerance is not None:
            context['tolerance'] = tolerance

        kwargs['context'] = context
        kwargs.setdefault('suggestions', [
            "Run `wavepacket validate` to see both residuals",
            "Generate an admissible pair with `wavepacket gen --seed <n> --d <d>`",
            "Build B as (|A|^-2 + iS)A with S real symmetric and |A| real",
        ])
        super().__init__(message, **kwargs)


class SingularityError(WavePacketError):
    """
    Exception raised when a matrix is singular or too ill-conditioned for the
    requested operation.
    """

    def __init__(
        self,
        message: str,
        smallest_singular_value: Optional[float] = None,
        threshold: Optional[float] = None,
        **kwargs
    ):
        context = kwargs.get('context', {})
        if smallest_singular_value is not None:
            context['smallest_singular_value'] = smallest_singular_value
        if threshold is not None:
            context['threshold'] = threshold

        kwargs['context'] = context
        super().__init__(message, **kwargs)

        if not self.suggestions:
            self.add_suggestion("Check that A is invertible")
            self.add_suggestion("Rescale A so its entries are of order one")


class CapacityError(WavePacketError):
    """
    Exception raised when a requested order exceeds a configured cap
    (factorial cap, polynomial order cap, quadrature node cap).
    """

    def __init__(
        self,
        message: str,
        requested: Optional[int] = None,
        limit: Optional[int] = None,
        **kwargs
    ):
        context = kwargs.get('context', {})
        if requested is not None:
            context['requested'] = requested
        if limit is not None:
            context['limit'] = limit

        kwargs['context'] = context
        super().__init__(message, **kwargs)

        if not self.suggestions:
            self.add_suggestion("Request a smaller order")
            self.add_suggestion("Raise order_cap in WavePacketConfig if the larger table is really needed")


class UnsupportedInputError(WavePacketError):
    """
    Exception raised for inputs outside the supported class, e.g. a nonzero
    phase-space centre passed to a ladder operator.
    """

    def __init__(self, message: str, feature: Optional[str] = None, **kwargs):
        context = kwargs.get('context', {})
        if feature:
            context['feature'] = feature

        kwargs['context'] = context
        super().__init__(message, **kwargs)

        if not self.suggestions:
            self.add_suggestion("Set a and eta to zero; the ladder operators act on centred packets")


class GenerationError(WavePacketError):
    """Exception raised when the admissible-pair generator exhausts its retries."""

    def __init__(
        self,
        message: str,
        attempts: Optional[int] = None,
        condition_cap: Optional[float] = None,
        **kwargs
    ):
        context = kwargs.get('context', {})
        if attempts is not None:
            context['attempts'] = attempts
        if condition_cap is not None:
            context['condition_cap'] = condition_cap

        kwargs['context'] = context
        super().__init__(message, **kwargs)

        if not self.suggestions:
            self.add_suggestion("Increase condition_cap or max_generation_retries")
            self.add_suggestion("Try a different seed")


class TableIntegrityError(WavePacketError):
    """
    Exception raised when a polynomial table violates its structural
    invariants: missing or extra multi-indices, wrong degree, zero entries.
    """

    def __init__(self, message: str, index: Optional[Any] = None, **kwargs):
        context = kwargs.get('context', {})
        if index is not None:
            context['index'] = str(index)

        kwargs['context'] = context
        super().__init__(message, **kwargs)

        if not self.suggestions:
            self.add_suggestion("Regenerate the table with `wavepacket tables`")


class FileOperationError(WavePacketError):
    """
    Exception raised during file operations (read, write, parse).
    """

    def __init__(
        self,
        message: str,
        file_path: Optional[str] = None,
        operation: Optional[str] = None,
        **kwargs
    ):
        context = kwargs.get('context', {})
        if file_path:
            context['file_path'] = file_path
        if operation:
            context['operation'] = operation

        kwargs['context'] = context
        super().__init__(message, **kwargs)

        if not self.suggestions:
            self._add_file_operation_suggestions()

    def _add_file_operation_suggestions(self):
        """Add common suggestions for file operation errors"""
        self.add_suggestion("Check if the file path exists and is accessible")
        self.add_suggestion("Verify the file contains valid JSON")
        self.add_suggestion("Check available disk space if writing files")


class ConfigurationError(WavePacketError):
    """
    Exception raised for configuration-related errors.
    """

    def __init__(
        self,
        message: str,
        config_key: Optional[str] = None,
        config_file: Optional[str] = None,
        **kwargs
    ):
        context = kwargs.get('context', {})
        if config_key:
            context['config_key'] = config_key
        if config_file:
            context['config_file'] = config_file

        kwargs['context'] = context
        super().__init__(message, **kwargs)

        if not self.suggestions:
            self.add_suggestion("Check configuration file syntax and format")
            self.add_suggestion("Tolerances must be strictly positive")


def aggregate_exceptions(exceptions: List[Exception]) -> WavePacketError:
    """
    Aggregate multiple exceptions into a single comprehensive error.
    Used by batch verification where several checks may fail at once.

    Args:
        exceptions: List of exceptions to aggregate

    Returns:
        Aggregated exception with combined context and suggestions
    """
    if not exceptions:
        return WavePacketError("No exceptions to aggregate")

    if len(exceptions) == 1:
        first = exceptions[0]
        return first if isinstance(first, WavePacketError) else WavePacketError(str(first))

    message = f"Multiple errors occurred ({len(exceptions)} total)"
    context = {
        'exception_count': len(exceptions),
        'exception_types': [type(e).__name__ for e in exceptions],
        'individual_errors': []
    }

    suggestions: List[str] = []

    for i, exc in enumerate(exceptions):
        if isinstance(exc, WavePacketError):
            context['individual_errors'].append({
                'index': i,
                'type': type(exc).__name__,
                'message': exc.message,
                'error_code': exc.error_code,
                'context': exc.context
            })
            for suggestion in exc.suggestions:
                if suggestion not in suggestions:
                    suggestions.append(suggestion)
        else:
            context['individual_errors'].append({
                'index': i,
                'type': type(exc).__name__,
                'message': str(exc)
            })

    return WavePacketError(
        message=message,
        error_code='MULTIPLE_ERRORS',
        context=context,
        suggestions=suggestions
    )


def handle_exception(func):
    """
    Decorator for automatic exception handling and conversion.
    Converts standard exceptions raised by file, JSON and numeric handling into SDK
    exceptions with appropriate context.

    Args:
        func: Function to wrap with exception handling

    Returns:
        Decorated function with exception handling
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except WavePacketError:
            raise
        except FileNotFoundError as e:
            raise FileOperationError(
                message=f"File not found: {str(e)}",
                operation="read",
                inner_exception=e
            )
        except PermissionError as e:
            raise FileOperationError(
                message=f"Permission denied: {str(e)}",
                operation="access",
                inner_exception=e
            )
        except json.JSONDecodeError as e:
            raise FileOperationError(
                message=f"Malformed JSON: {str(e)}",
                operation="parse",
                inner_exception=e
            )
        except (ValueError, TypeError, KeyError, IndexError) as e:
            raise ValidationError(
                message=f"Invalid value: {str(e)}",
                inner_exception=e
            )
    return wrapper
