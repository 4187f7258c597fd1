"""Exception hierarchy shared by every module of the package.

:class:`InvalidInput` marks problems with what the caller handed in (the
command line exits with status 2), :class:`MathError` marks a mathematical
contract that could not be met (exit status 1).
"""

__all__ = [
    'IdemFactorError', 'InvalidInput', 'MathError',
    'MalformedScalar', 'NotInRing', 'CompositeModulus', 'MalformedMatrix',
    'NotSingular', 'NotAField', 'WrongRing', 'TooLarge', 'InvalidTable',
    'AllInvertible',
    'DivisionByNonUnit', 'ImpureSpan', 'NotNested', 'NotIdempotent',
    'BadPerturbation', 'Injective', 'Independent', 'NotInvertible',
    'KernelTooSmall', 'PreconditionViolated', 'UnitInput', 'HypothesisFailed',
    'ConstructionFailure', 'InternalInconsistency',
]


class IdemFactorError(Exception):
    pass


class InvalidInput(IdemFactorError, ValueError):
    pass


class MathError(IdemFactorError):
    pass


class MalformedScalar(InvalidInput):
    pass


class NotInRing(InvalidInput):
    pass


class CompositeModulus(InvalidInput):
    pass


class MalformedMatrix(InvalidInput):
    pass


class NotSingular(InvalidInput):
    pass


class NotAField(InvalidInput):
    pass


class WrongRing(InvalidInput):
    pass


class TooLarge(InvalidInput):
    pass


class InvalidTable(InvalidInput):
    pass


class AllInvertible(InvalidInput):
    pass


class DivisionByNonUnit(MathError, ZeroDivisionError):
    pass


class ImpureSpan(MathError):
    pass


class NotNested(MathError):
    pass


class NotIdempotent(MathError):
    pass


class BadPerturbation(MathError):
    pass


class Injective(MathError):
    pass


class Independent(MathError):
    pass


class NotInvertible(MathError):
    pass


class KernelTooSmall(MathError):
    pass


class PreconditionViolated(MathError):
    pass


class UnitInput(MathError):
    pass


class HypothesisFailed(MathError):
    r"""No split of :attr:`element` meets the height-sum condition.

    Args:
        element (int): index of the offending monoid element.
        label (str): its label, used in the message.
    """

    def __init__(self, element: int, label: str = ''):
        self.element = element
        self.label = label
        super().__init__(f'no qualifying split for element {element} {label}'.rstrip())


class ConstructionFailure(MathError):
    pass


class InternalInconsistency(MathError):
    pass
