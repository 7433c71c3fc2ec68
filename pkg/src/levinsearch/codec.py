"""Self-delimiting unary-length code for programs and proofs.

A body ``b`` of ``k`` bits is encoded as ``1^k 0 b`` so every codeword has
odd length ``2k + 1`` and the set of all codewords is prefix-free with a
Kraft sum that tends to exactly 1.

Bitstrings are plain ``str`` objects over the alphabet ``'0'``/``'1'``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

CODEC_ID = "unary-v1"

Bitstring = str


class MalformedCodeword(ValueError):
    """The stream ends inside a header or a body, or holds a non-bit character."""


def check_bits(bits: str) -> str:
    if any(c not in "01" for c in bits):
        raise ValueError(f"not a bitstring: {bits!r}")
    return bits


@dataclass(frozen=True, order=False)
class Codeword:
    body: Bitstring

    def __post_init__(self):
        check_bits(self.body)

    @property
    def bits(self) -> Bitstring:
        return "1" * len(self.body) + "0" + self.body

    @property
    def total_length(self) -> int:
        return 2 * len(self.body) + 1

    def sort_key(self) -> tuple[int, int]:
        return (len(self.body), int(self.body, 2) if self.body else 0)

    def __str__(self) -> str:
        return self.bits

    @classmethod
    def from_bits(cls, bits: str) -> "Codeword":
        """Parse a complete codeword; trailing bits are an error."""
        body, used = decode(bits)
        if used != len(bits):
            raise MalformedCodeword(f"{len(bits) - used} trailing bits after codeword")
        return cls(body)


def encode(body: Bitstring) -> Codeword:
    return Codeword(body)


def decode(stream: Bitstring, start: int = 0) -> tuple[Bitstring, int]:
    """Decode one codeword from ``stream[start:]``.

    Returns ``(body, consumed)``; raises :class:`MalformedCodeword` when the
    stream is truncated.
    """
    k = 0
    i = start
    n = len(stream)
    while True:
        if i >= n:
            raise MalformedCodeword("stream ends inside header")
        c = stream[i]
        i += 1
        if c == "0":
            break
        if c != "1":
            raise MalformedCodeword(f"bad character {c!r}")
        k += 1
    if i + k > n:
        raise MalformedCodeword("stream ends inside body")
    body = stream[i:i + k]
    check_bits(body)
    return body, 2 * k + 1


def encode_int(n: int) -> Bitstring:
    """Codeword bits for a natural number in minimal binary (0 has empty body)."""
    if n < 0:
        raise ValueError("negative")
    return Codeword(format(n, "b") if n else "").bits


def enumerate_codewords(max_total_length: int) -> Iterator[Codeword]:
    """All codewords of length <= ``max_total_length``, by length then body value."""
    if max_total_length < 1:
        raise ValueError("max_total_length must be >= 1")
    for k in range((max_total_length - 1) // 2 + 1):
        if k == 0:
            yield Codeword("")
            continue
        for v in range(1 << k):
            yield Codeword(format(v, f"0{k}b"))


def count_codewords(max_total_length: int) -> int:
    return (1 << ((max_total_length - 1) // 2 + 1)) - 1


def kraft_sum(codewords: Iterable[Codeword]) -> Fraction:
    total = Fraction(0)
    seen = set()
    for cw in codewords:
        if cw in seen:
            raise ValueError(f"duplicate codeword {cw}")
        seen.add(cw)
        total += Fraction(1, 1 << cw.total_length)
    return total
