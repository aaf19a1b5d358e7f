"""Synthetic address traces and trace file formats.

Three generators cover the access patterns used to exercise the
simulator: independent uniform addresses, a fixed-stride walk, and a
Zipf distribution over block indices for a skewed working set.  All
are deterministic for a given seed.

Two interchange formats are supported: a text format with one
lowercase hexadecimal byte address per line (optional 0x prefix, lines
starting with # ignored) and a headerless binary format of little-
endian unsigned 64-bit words.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "TRACE_KINDS",
    "TraceParseError",
    "uniform_trace",
    "stride_trace",
    "zipf_block_trace",
    "generate_trace",
    "read_trace_text",
    "write_trace_text",
    "read_trace_binary",
    "write_trace_binary",
]

TRACE_KINDS = ("uniform", "stride", "zipf-block")

_WORD = np.dtype("<u8")


class TraceParseError(ValueError):
    """A trace file does not conform to the text or binary format."""


def _check_length(length: int) -> int:
    if length != int(length) or int(length) < 1:
        raise ValueError(f"trace length must be a positive integer, got {length!r}")
    return int(length)


def _address_mask(address_bits: int) -> np.uint64:
    if not 1 <= address_bits <= 64:
        raise ValueError(f"generated addresses must fit in 1..64 bits, got {address_bits!r}")
    return np.uint64((1 << address_bits) - 1)


def uniform_trace(length: int, seed: int, address_bits: int = 40) -> np.ndarray:
    """Independent addresses uniform over the whole address space."""
    length = _check_length(length)
    high = int(_address_mask(address_bits))
    rng = np.random.default_rng(seed)
    return rng.integers(0, high, size=length, dtype=np.uint64, endpoint=True)


def stride_trace(length: int, stride: int = 64, base: int = 0, address_bits: int = 40) -> np.ndarray:
    """Arithmetic walk base, base+stride, ... wrapping at the address-space size."""
    length = _check_length(length)
    mask = _address_mask(address_bits)
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride!r}")
    if base < 0:
        raise ValueError(f"base must be >= 0, got {base!r}")
    steps = np.arange(length, dtype=np.uint64)
    # uint64 arithmetic wraps mod 2**64; masking afterwards yields
    # mod 2**address_bits because address_bits <= 64
    return (np.uint64(base) + steps * np.uint64(stride % (1 << 64))) & mask


def zipf_block_trace(
    length: int,
    seed: int,
    exponent: float = 1.2,
    num_blocks: int = 1 << 18,
    block_size: int = 64,
    address_bits: int = 40,
) -> np.ndarray:
    """Block-aligned addresses with Zipf-distributed block popularity.

    Block i (1-based) is drawn with probability proportional to
    i**-exponent over a bounded population, giving a few very hot
    blocks and a long cold tail.  Intended as a qualitative locality
    workload, not a calibrated benchmark.
    """
    length = _check_length(length)
    mask = _address_mask(address_bits)
    if not exponent > 0.0:
        raise ValueError(f"zipf exponent must be > 0, got {exponent!r}")
    if num_blocks < 1 or block_size < 1:
        raise ValueError("num_blocks and block_size must be >= 1")
    if num_blocks * block_size - 1 > int(mask):
        raise ValueError(
            f"footprint {num_blocks} blocks * {block_size} B exceeds the "
            f"{address_bits}-bit address space"
        )
    ranks = np.arange(1, num_blocks + 1, dtype=np.float64)
    weights = ranks ** -float(exponent)
    rng = np.random.default_rng(seed)
    blocks = rng.choice(num_blocks, size=length, p=weights / weights.sum())
    return blocks.astype(np.uint64) * np.uint64(block_size)


def generate_trace(kind: str, length: int, seed: int = 0, **params) -> np.ndarray:
    """Dispatch to one of the named generators (see TRACE_KINDS)."""
    if kind == "uniform":
        return uniform_trace(length, seed, **params)
    if kind == "stride":
        return stride_trace(length, **params)
    if kind == "zipf-block":
        return zipf_block_trace(length, seed, **params)
    raise ValueError(f"unknown trace kind {kind!r}; expected one of {', '.join(TRACE_KINDS)}")


def _as_word_array(addresses) -> np.ndarray:
    try:
        arr = np.asarray(addresses, dtype=np.uint64)
    except (OverflowError, TypeError, ValueError) as exc:
        raise ValueError(f"trace addresses must be unsigned 64-bit integers: {exc}") from None
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("a trace must be a non-empty one-dimensional sequence")
    return arr


def write_trace_text(path, addresses) -> None:
    arr = _as_word_array(addresses)
    with open(path, "w", encoding="ascii") as fh:
        fh.writelines(f"{int(a):x}\n" for a in arr)


def read_trace_text(path) -> np.ndarray:
    values = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                value = int(line, 16)
            except ValueError:
                raise TraceParseError(
                    f"{path}: line {lineno}: not a hexadecimal address: {line!r}"
                ) from None
            if value >= 1 << 64:
                raise TraceParseError(
                    f"{path}: line {lineno}: address {line!r} does not fit in 64 bits"
                )
            values.append(value)
    if not values:
        raise TraceParseError(f"{path}: no addresses found")
    return np.array(values, dtype=np.uint64)


def write_trace_binary(path, addresses) -> None:
    arr = _as_word_array(addresses)
    with open(path, "wb") as fh:
        fh.write(np.ascontiguousarray(arr, dtype=_WORD).tobytes())


def read_trace_binary(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    if not data:
        raise TraceParseError(f"{path}: empty trace file")
    if len(data) % _WORD.itemsize:
        raise TraceParseError(
            f"{path}: size {len(data)} is not a multiple of {_WORD.itemsize} bytes"
        )
    return np.frombuffer(data, dtype=_WORD).copy()
