#!/usr/bin/env python
'''Exception classes raised by <multcorr>. Each class also derives from the
builtin exception that plain numerical code would raise in the same situation,
so callers catching <ValueError> or <ArithmeticError> keep working. The
<exit_code> attribute is used by the command line driver.
'''
from __future__ import absolute_import


class MultcorrError(Exception):
    exit_code = 1


class UsageError(MultcorrError, ValueError):
    '''Malformed invocation: bad flags, unparseable expressions.
    '''

    exit_code = 2


class ConfigError(UsageError):
    '''Control file could not be parsed. <lineno> is 1-based, or None when the
    problem is not tied to a particular line.
    '''

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = 'line {}: {}'.format(lineno, message)
        super(ConfigError, self).__init__(message)
        self.lineno = lineno


class SpecParseError(UsageError):
    '''A multiplicative function specification string is malformed. The
    offending token is kept in <token>.
    '''

    def __init__(self, message, token):
        super(SpecParseError, self).__init__(
                            '{} (offending token: "{}")'.format(message, token))
        self.token = token


class DomainError(MultcorrError, ValueError):
    '''Arguments lie outside the domain of the requested operation.
    '''

    exit_code = 3


class RangeError(DomainError):
    pass


class CapacityError(DomainError):
    pass


class ValidationError(DomainError):
    pass


class IntegrityError(DomainError):
    '''A factorization does not multiply back to the integer it belongs to.
    '''
    pass


class NumericError(MultcorrError, ArithmeticError):
    exit_code = 4
