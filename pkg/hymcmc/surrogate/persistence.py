"""Binary model file.

Layout, little-endian throughout::

    b"HMLP"                      magic
    u32 version                  currently 1
    u32 layer count L
    L times:
        u32 rows, u32 cols       weight shape (out, in)
        f64[rows * cols]         weights, row-major
        f64[rows]                biases
    u32 n_in, f64[n_in] lo, f64[n_in] hi          input normalization
    u32 n_out, f64[n_out] mean, f64[n_out] scale  output normalization
    u32 length, UTF-8 JSON                        training metadata

Floats are stored raw, so a save/load round trip is bit-exact.
"""

import json
import logging
import struct
from pathlib import Path
from typing import List, Union

import numpy as np

from hymcmc.errors import HymcmcPersistenceError, HymcmcValidationError
from hymcmc.surrogate.mlp import MlpModel

logger = logging.getLogger(__name__)

MAGIC = b"HMLP"
FORMAT_VERSION = 1

_U32 = struct.Struct("<I")


def encode_model(model: MlpModel) -> bytes:
    """Serialize a network to the binary format."""
    parts: List[bytes] = [MAGIC, _U32.pack(FORMAT_VERSION), _U32.pack(len(model.weights))]
    for w, b in zip(model.weights, model.biases):
        rows, cols = w.shape
        parts.append(_U32.pack(rows) + _U32.pack(cols))
        parts.append(np.ascontiguousarray(w, dtype="<f8").tobytes())
        parts.append(np.ascontiguousarray(b, dtype="<f8").tobytes())
    parts.append(_U32.pack(model.input_lo.size))
    parts.append(model.input_lo.astype("<f8").tobytes() + model.input_hi.astype("<f8").tobytes())
    parts.append(_U32.pack(model.out_mean.size))
    parts.append(model.out_mean.astype("<f8").tobytes() + model.out_scale.astype("<f8").tobytes())
    meta = json.dumps(model.meta, sort_keys=True).encode("utf-8")
    parts.append(_U32.pack(len(meta)) + meta)
    return b"".join(parts)


class _Reader:
    def __init__(self, buf: bytes):
        self.buf = buf
        self.pos = 0

    def take(self, size: int) -> bytes:
        if self.pos + size > len(self.buf):
            raise HymcmcPersistenceError(
                "Model file is truncated",
                details={"offset": self.pos, "needed": size, "size": len(self.buf)}
            )
        chunk = self.buf[self.pos:self.pos + size]
        self.pos += size
        return chunk

    def u32(self) -> int:
        return _U32.unpack(self.take(4))[0]

    def f64(self, count: int) -> np.ndarray:
        return np.frombuffer(self.take(8 * count), dtype="<f8").astype(np.float64)


def decode_model(buf: bytes) -> MlpModel:
    """Parse the binary format.

    Raises:
        HymcmcPersistenceError: Wrong magic, unsupported version, truncation or trailing bytes
    """
    reader = _Reader(buf)
    if reader.take(4) != MAGIC:
        raise HymcmcPersistenceError("Not a model file (bad magic)")
    version = reader.u32()
    if version != FORMAT_VERSION:
        raise HymcmcPersistenceError(
            "Unsupported model file version",
            details={"version": version, "supported": FORMAT_VERSION}
        )
    weights: List[np.ndarray] = []
    biases: List[np.ndarray] = []
    for _ in range(reader.u32()):
        rows, cols = reader.u32(), reader.u32()
        weights.append(reader.f64(rows * cols).reshape(rows, cols))
        biases.append(reader.f64(rows))
    n_in = reader.u32()
    lo, hi = reader.f64(n_in), reader.f64(n_in)
    n_out = reader.u32()
    mean, scale = reader.f64(n_out), reader.f64(n_out)
    meta_len = reader.u32()
    try:
        meta = json.loads(reader.take(meta_len).decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise HymcmcPersistenceError("Model metadata is corrupt", details=str(e))
    if reader.pos != len(buf):
        raise HymcmcPersistenceError("Model file has trailing bytes", details={"extra": len(buf) - reader.pos})
    try:
        return MlpModel(
            weights=weights, biases=biases,
            input_lo=lo, input_hi=hi,
            out_mean=mean, out_scale=scale,
            meta=meta,
        )
    except HymcmcValidationError as e:
        raise HymcmcPersistenceError(f"Model file holds an invalid network: {e.message}", details=e.details)


def save_model(model: MlpModel, path: Union[str, Path]) -> Path:
    """Write a model file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(encode_model(model))
    logger.info("Saved model %s to %s", model.layer_sizes, path)
    return path


def load_model(path: Union[str, Path]) -> MlpModel:
    """Read a model file.

    Raises:
        HymcmcPersistenceError: Missing or corrupt file
    """
    path = Path(path)
    try:
        buf = path.read_bytes()
    except OSError as e:
        raise HymcmcPersistenceError(f"Cannot read model file: {path}", details=str(e))
    return decode_model(buf)


__all__ = ['MAGIC', 'FORMAT_VERSION', 'encode_model', 'decode_model', 'save_model', 'load_model']
