"""
Hamiltonian text format: one `<pauli-string> <coefficient>` term per line,
`#` starts a comment line.
"""

from pathlib import Path
from typing import Union

from ..errors import InvalidInstanceError
from .labels import PauliLabel
from .polynomial import SparseHamiltonian


def parse_hamiltonian(text: str) -> SparseHamiltonian:
    terms: dict[PauliLabel, float] = {}
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InvalidInstanceError(f"line {lineno}: expected '<pauli-string> <coefficient>'")
        label = PauliLabel.from_string(parts[0])
        try:
            coefficient = float(parts[1])
        except ValueError:
            raise InvalidInstanceError(f"line {lineno}: invalid coefficient '{parts[1]}'")
        if n is None:
            n = label.n
        elif label.n != n:
            raise InvalidInstanceError(f"line {lineno}: label {label} has {label.n} qubits, expected {n}")
        if label.is_identity:
            raise InvalidInstanceError(f"line {lineno}: identity terms are not allowed")
        if label in terms:
            raise InvalidInstanceError(f"line {lineno}: duplicate label {label}")
        if coefficient == 0.0:
            raise InvalidInstanceError(f"line {lineno}: zero coefficient for {label}")
        terms[label] = coefficient
    if n is None:
        raise InvalidInstanceError("no terms found")
    return SparseHamiltonian(n, terms)


def format_hamiltonian(H: SparseHamiltonian) -> str:
    return "".join(f"{label} {coefficient:.17g}\n" for label, coefficient in H.items())


def load_hamiltonian(path: Union[str, Path]) -> SparseHamiltonian:
    return parse_hamiltonian(Path(path).read_text())


def dump_hamiltonian(H: SparseHamiltonian, path: Union[str, Path]) -> None:
    Path(path).write_text(format_hamiltonian(H))
