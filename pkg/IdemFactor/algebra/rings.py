"""Exact scalars over Q, F_p and the localization Z_(p).

Elements are plain Python values: :class:`fractions.Fraction` for Q and
Z_(p), ``int`` in ``[0, p)`` for F_p. The prime lives on the
:class:`RingDescriptor`, never on the element, so two matrices can only be
combined when their descriptors are equal.
"""

import logging
import math
import re
from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()
from fractions import Fraction

import numpy as np
from sympy import isprime, multiplicity

from ..utils.errors import (CompositeModulus, DivisionByNonUnit, MalformedMatrix,
                            MalformedScalar, NotInRing)

__all__ = ['RingKind', 'Operation', 'RingDescriptor', 'Scalar']

Scalar = Fraction | int

_SCALAR_PATTERN = re.compile(r'^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$')

logger = logging.getLogger(__name__)


class RingKind(StrEnum):
    Q = 'Q'
    FP = 'Fp'
    ZP = 'Zp'


class Operation(StrEnum):
    ADD = 'add'
    SUB = 'sub'
    MUL = 'mul'
    DIV = 'div'


@dataclass(frozen=True)
class RingDescriptor:
    r"""One of the three coefficient rings.

    Args:
        kind (RingKind): ``Q``, ``Fp`` or ``Zp``.
        p (int | None): the prime for ``Fp`` and ``Zp``; must be ``None`` for ``Q``.

    Raises:
        CompositeModulus: ``p`` is missing, composite or smaller than 2.
    """
    kind: RingKind
    p: int | None = None

    def __post_init__(self):
        object.__setattr__(self, 'kind', RingKind(self.kind))
        if self.kind == RingKind.Q:
            if self.p is not None:
                raise CompositeModulus(f'the rationals take no modulus, got p={self.p}')
            return
        if self.p is None or isinstance(self.p, bool) or not isinstance(self.p, int):
            raise CompositeModulus(f'{self.kind} needs an integer prime, got p={self.p!r}')
        if not isprime(self.p):
            raise CompositeModulus(f'p={self.p} is not prime')

    @classmethod
    def rationals(cls) -> 'RingDescriptor':
        return cls(RingKind.Q)

    @classmethod
    def prime_field(cls, p: int) -> 'RingDescriptor':
        return cls(RingKind.FP, p)

    @classmethod
    def local_integers(cls, p: int) -> 'RingDescriptor':
        return cls(RingKind.ZP, p)

    @property
    def is_field(self) -> bool:
        return self.kind != RingKind.ZP

    @property
    def name(self) -> str:
        match self.kind:
            case RingKind.Q:
                return 'Q'
            case RingKind.FP:
                return f'F_{self.p}'
            case RingKind.ZP:
                return f'Z_({self.p})'

    @property
    def residue_field(self) -> 'RingDescriptor':
        r"""The field the purity tests run in: F_p for Z_(p), the ring itself otherwise."""
        if self.kind == RingKind.ZP:
            return RingDescriptor.prime_field(self.p)
        return self

    def __str__(self) -> str:
        return self.name

    # ------------------------------------------------------------------ #
    # construction

    @property
    def zero(self) -> Scalar:
        return 0 if self.kind == RingKind.FP else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.kind == RingKind.FP else Fraction(1)

    def element(self, value: Scalar | str) -> Scalar:
        r"""Coerce ``value`` into the ring, validating membership.

        Strings go through :meth:`parse`. Over F_p, integers are reduced and a
        fraction ``a/b`` with ``p ∤ b`` becomes ``a·b⁻¹ mod p``.

        Raises:
            NotInRing: the value has a denominator divisible by ``p``.
        """
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool) or not isinstance(value, (int, Fraction, np.integer)):
            raise MalformedScalar(f'cannot read {value!r} as a scalar of {self.name}')
        value = Fraction(int(value)) if isinstance(value, np.integer) else Fraction(value)
        match self.kind:
            case RingKind.Q:
                return value
            case RingKind.ZP:
                if value.denominator % self.p == 0:
                    raise NotInRing(f'{value} is not in {self.name}: denominator divisible by {self.p}')
                return value
            case RingKind.FP:
                if value.denominator % self.p == 0:
                    raise NotInRing(f'{value} has no image in {self.name}')
                return value.numerator * pow(value.denominator, -1, self.p) % self.p

    def parse(self, text: str) -> Scalar:
        r"""Read ``[sign]digits[/digits]``, e.g. ``"-3/7"``.

        Raises:
            MalformedScalar: the text does not match the scalar format.
            NotInRing: the value is not an element of this ring.
        """
        match = _SCALAR_PATTERN.match(text) if isinstance(text, str) else None
        if match is None:
            raise MalformedScalar(f'malformed scalar {text!r}')
        numerator, denominator = match.groups()
        if denominator is not None and int(denominator) == 0:
            raise MalformedScalar(f'malformed scalar {text!r}: zero denominator')
        return self.element(Fraction(int(numerator), int(denominator or 1)))

    def render(self, x: Scalar) -> str:
        return str(x)

    def array(self, values) -> np.ndarray:
        r"""Object array of ring elements built from nested sequences."""
        raw = np.asarray(values, dtype=object)
        out = np.empty(raw.shape, dtype=object)
        for index, value in np.ndenumerate(raw):
            out[index] = self.element(value)
        return out

    def zeros(self, shape: int | tuple[int, ...]) -> np.ndarray:
        out = np.empty(shape, dtype=object)
        out.fill(self.zero)
        return out

    def identity_array(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def reduce(self, values: np.ndarray) -> np.ndarray:
        r"""Bring the entries of an object array back to normal form."""
        if self.kind == RingKind.FP:
            return values % self.p
        return values

    # ------------------------------------------------------------------ #
    # predicates

    def is_zero(self, x: Scalar) -> bool:
        return x == 0

    def is_unit(self, x: Scalar) -> bool:
        if self.kind == RingKind.ZP:
            return x != 0 and x.numerator % self.p != 0
        return x != 0

    def valuation(self, x: Scalar) -> int | float:
        r"""Exponent ``s`` with ``x = u·p^s``, ``u`` a unit; :data:`math.inf` for zero.

        Fields carry the trivial valuation: 0 on every nonzero element.
        """
        if x == 0:
            return math.inf
        if self.kind != RingKind.ZP:
            return 0
        return int(multiplicity(self.p, abs(x.numerator)))

    # ------------------------------------------------------------------ #
    # arithmetic

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.p if self.kind == RingKind.FP else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.p if self.kind == RingKind.FP else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return a * b % self.p if self.kind == RingKind.FP else a * b

    def neg(self, a: Scalar) -> Scalar:
        return -a % self.p if self.kind == RingKind.FP else -a

    def inverse(self, a: Scalar) -> Scalar:
        if not self.is_unit(a):
            raise DivisionByNonUnit(f'{a} is not a unit of {self.name}')
        if self.kind == RingKind.FP:
            return pow(a, -1, self.p)
        return 1 / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inverse(b))

    def quotient(self, a: Scalar, b: Scalar) -> Scalar:
        r"""Exact ``a / b`` when it lies in the ring.

        Over a field this is :meth:`div`. Over Z_(p) it only needs
        ``v_p(b) ≤ v_p(a)``, so pivots of minimum valuation can clear
        every entry below them.
        """
        if self.kind != RingKind.ZP:
            return self.div(a, b)
        if b == 0 or self.valuation(b) > self.valuation(a):
            raise DivisionByNonUnit(f'{a} / {b} leaves {self.name}')
        return a / b

    def residue(self, x: Scalar) -> int:
        r"""Image of ``x`` in the residue field F_p."""
        match self.kind:
            case RingKind.FP:
                return x
            case RingKind.ZP:
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise NotInRing(f'{self.name} has no residue field')

    def arithmetic(self, a: Scalar, b: Scalar, op: Operation | str) -> Scalar:
        r"""Apply one of the four operations.

        Raises:
            DivisionByNonUnit: ``op`` is ``div`` and ``b`` is not a unit.
        """
        match Operation(op):
            case Operation.ADD:
                return self.add(a, b)
            case Operation.SUB:
                return self.sub(a, b)
            case Operation.MUL:
                return self.mul(a, b)
            case Operation.DIV:
                return self.div(a, b)

    # ------------------------------------------------------------------ #
    # serialization

    def to_json(self) -> dict:
        if self.kind == RingKind.Q:
            return {'kind': str(self.kind)}
        return {'kind': str(self.kind), 'p': self.p}

    @classmethod
    def from_json(cls, payload: dict) -> 'RingDescriptor':
        if not isinstance(payload, dict) or 'kind' not in payload:
            raise MalformedMatrix(f'ring descriptor needs a "kind": {payload!r}')
        try:
            kind = RingKind(payload['kind'])
        except ValueError:
            raise MalformedMatrix(f'unknown ring kind {payload["kind"]!r}') from None
        return cls(kind, payload.get('p'))
