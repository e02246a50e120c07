"""
Pauli labels in symplectic form.

A label x = (a, b) stands for P_x = i^{a.b} X^a Z^b. Bit (n-1-k) of a and b
belongs to qubit k, so the leftmost character of a label string is the most
significant bit and the bit layout matches the computational-basis index of
the dense kernels.
"""

from dataclasses import dataclass
from typing import Iterator

from ..errors import DimensionError, InvalidInstanceError

# i^e for e = 0..3
PHASES: tuple[complex, ...] = (1 + 0j, 1j, -1 + 0j, -1j)

_CHAR_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_CHAR = {bits: char for char, bits in _CHAR_BITS.items()}


@dataclass(frozen=True, slots=True, order=True)
class PauliLabel:
    n: int
    a: int
    b: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInstanceError(f"qubit count must be positive, got {self.n}")
        limit = 1 << self.n
        if not (0 <= self.a < limit and 0 <= self.b < limit):
            raise InvalidInstanceError(f"label bits ({self.a}, {self.b}) exceed {self.n} qubits")

    @classmethod
    def identity(cls, n: int) -> "PauliLabel":
        return cls(n, 0, 0)

    @classmethod
    def from_string(cls, text: str) -> "PauliLabel":
        text = text.strip().upper()
        if not text:
            raise InvalidInstanceError("empty Pauli string")
        a = b = 0
        for char in text:
            if char not in _CHAR_BITS:
                raise InvalidInstanceError(f"invalid Pauli character '{char}' in '{text}'")
            xa, zb = _CHAR_BITS[char]
            a = (a << 1) | xa
            b = (b << 1) | zb
        return cls(len(text), a, b)

    @classmethod
    def from_index(cls, n: int, index: int) -> "PauliLabel":
        return cls(n, index >> n, index & ((1 << n) - 1))

    @property
    def index(self) -> int:
        """Position of this label in the 4^n ordering used by amplitude vectors."""
        return (self.a << self.n) | self.b

    @property
    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0

    @property
    def weight(self) -> int:
        return (self.a | self.b).bit_count()

    def commutes_with(self, other: "PauliLabel") -> bool:
        _check_same_n(self, other)
        return ((self.a & other.b).bit_count() + (self.b & other.a).bit_count()) % 2 == 0

    def __str__(self) -> str:
        chars = []
        for k in range(self.n - 1, -1, -1):
            chars.append(_BITS_CHAR[((self.a >> k) & 1, (self.b >> k) & 1)])
        return "".join(chars)


def _check_same_n(x: PauliLabel, y: PauliLabel) -> None:
    if x.n != y.n:
        raise DimensionError(f"labels act on {x.n} and {y.n} qubits")


def mul_exponent(first: tuple[int, int], second: tuple[int, int]) -> int:
    """Exponent e with P_x P_y = i^e P_{x xor y}, on raw (a, b) pairs."""
    a1, b1 = first
    a2, b2 = second
    a3, b3 = a1 ^ a2, b1 ^ b2
    e = (
        (a1 & b1).bit_count()
        + (a2 & b2).bit_count()
        - (a3 & b3).bit_count()
        + 2 * (b1 & a2).bit_count()
    )
    return e % 4


def pauli_mul(x: PauliLabel, y: PauliLabel) -> tuple[complex, PauliLabel]:
    """Product P_x P_y = phase * P_result under the i^{a.b} X^a Z^b convention."""
    _check_same_n(x, y)
    e = mul_exponent((x.a, x.b), (y.a, y.b))
    return PHASES[e], PauliLabel(x.n, x.a ^ y.a, x.b ^ y.b)


def all_labels(n: int) -> Iterator[PauliLabel]:
    """All 4^n labels in index order."""
    for index in range(1 << (2 * n)):
        yield PauliLabel.from_index(n, index)
