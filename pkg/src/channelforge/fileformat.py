"""JSON channel and state files.

Complex numbers are ``[re, im]`` pairs and matrices are row-major nested
lists.  Floats are written with Python's round-trip ``repr`` so a
write/read cycle reproduces every entry bit for bit.  The schema is
documented in the "File format" section of README.md.
"""

import json
import re

import numpy as np

from .errors import DomainError, ShapeError
from .representations import (
    ChiMatrix,
    ChoiMatrix,
    DensityMatrix,
    KrausRep,
    StinespringRep,
    SuperOp,
)
from .transforms import representation_name
from .vectorize import OperatorBasis, VecConvention, elementary_basis, pauli_basis, pauli_qubits

CHANNEL_FORMAT = "channelforge/channel"
STATE_FORMAT = "channelforge/state"
BASIS_FORMAT = "channelforge/basis"
FORMAT_VERSION = 1


def encode_complex(z):
    z = complex(z)
    return [z.real, z.imag]


def encode_vector(v):
    return [encode_complex(z) for z in np.asarray(v).reshape(-1)]


def encode_matrix(m):
    m = np.asarray(m)
    return [[encode_complex(z) for z in row] for row in m]


def decode_vector(data):
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ShapeError("a vector must be a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def decode_matrix(data):
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ShapeError("a matrix must be a nested list of rows of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def encode_basis(basis):
    doc = {"label": basis.label}
    if basis.ordering is not None:
        doc["ordering"] = basis.ordering
    doc["elements"] = [encode_matrix(e) for e in basis.elements]
    return doc


def named_basis(name, dx, dy=None):
    """Built-in basis by name: ``pauli``, ``elementary-col`` or ``elementary-row``."""
    dy = dx if dy is None else dy
    if name == "pauli":
        if dx != dy:
            raise DomainError("the Pauli basis needs square operators")
        return pauli_basis(pauli_qubits(dx))
    if name in ("elementary", "elementary-col"):
        return elementary_basis(dx, dy, "col")
    if name == "elementary-row":
        return elementary_basis(dx, dy, "row")
    raise DomainError(f"unknown basis {name!r}")


def decode_basis(doc, dx, dy):
    if isinstance(doc, str):
        return named_basis(doc, dx, dy)
    if "elements" in doc:
        els = np.array([decode_matrix(e) for e in doc["elements"]])
        return OperatorBasis(els, label=doc.get("label", "custom"), ordering=doc.get("ordering"))
    label = doc.get("label")
    if label == "elementary":
        label = f"elementary-{doc.get('ordering', 'col')}"
    return named_basis(label, dx, dy)


def channel_to_dict(rep, metadata=None):
    name = representation_name(rep)
    doc = {
        "format": CHANNEL_FORMAT,
        "version": FORMAT_VERSION,
        "representation": name,
        "dx": int(rep.dx),
        "dy": int(rep.dy),
    }
    if name == "kraus":
        doc["data"] = [encode_matrix(k) for k in rep.ops]
    elif name == "stinespring":
        doc["denv"] = int(rep.denv)
        doc["data"] = encode_matrix(rep.a)
        if rep.env_state is not None:
            doc["env_state"] = encode_vector(rep.env_state)
        if rep.restricted_unitary is not None:
            doc["restricted_unitary"] = encode_matrix(rep.restricted_unitary)
    elif name == "superop":
        doc["vec_convention"] = rep.conv.kind
        if rep.conv.kind == "basis":
            doc["basis"] = encode_basis(rep.conv.basis)
        doc["data"] = encode_matrix(rep.mat)
    elif name == "choi":
        doc["choi_convention"] = rep.convention
        doc["data"] = encode_matrix(rep.mat)
    else:
        doc["basis"] = encode_basis(rep.basis)
        doc["data"] = encode_matrix(rep.mat)
    meta = dict(metadata or {})
    if rep.notes:
        meta.setdefault("notes", list(rep.notes))
    doc["metadata"] = meta
    return doc


def channel_from_dict(doc):
    if doc.get("format") != CHANNEL_FORMAT:
        raise DomainError(f"not a channel file (format={doc.get('format')!r})")
    try:
        name = doc["representation"]
        dx, dy = int(doc["dx"]), int(doc["dy"])
        data = doc["data"]
    except KeyError as exc:
        raise DomainError(f"channel file is missing field {exc}") from None
    if name == "kraus":
        rep = KrausRep([decode_matrix(k) for k in data])
    elif name == "stinespring":
        env = doc.get("env_state")
        u0 = doc.get("restricted_unitary")
        rep = StinespringRep(
            decode_matrix(data),
            int(doc["denv"]),
            env_state=None if env is None else decode_vector(env),
            restricted_unitary=None if u0 is None else decode_matrix(u0),
        )
    elif name == "superop":
        kind = doc.get("vec_convention", "col")
        conv = VecConvention(kind) if kind != "basis" else VecConvention(
            "basis", decode_basis(doc["basis"], dx, dx))
        rep = SuperOp(decode_matrix(data), dx, dy, conv)
    elif name == "choi":
        rep = ChoiMatrix(decode_matrix(data), dx, dy, doc.get("choi_convention", "col"))
    elif name == "chi":
        rep = ChiMatrix(decode_matrix(data), decode_basis(doc["basis"], dx, dy))
    else:
        raise DomainError(f"unknown representation {name!r}")
    if (rep.dx, rep.dy) != (dx, dy):
        raise ShapeError(f"data has dims ({rep.dx}, {rep.dy}) but the file declares ({dx}, {dy})")
    return rep


def state_to_dict(rho, metadata=None):
    mat = rho.mat if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return {
        "format": STATE_FORMAT,
        "version": FORMAT_VERSION,
        "dim": int(mat.shape[0]),
        "data": encode_matrix(mat),
        "metadata": dict(metadata or {}),
    }


def state_from_dict(doc, tol=1e-10, validate=True):
    if doc.get("format") != STATE_FORMAT:
        raise DomainError(f"not a state file (format={doc.get('format')!r})")
    mat = decode_matrix(doc["data"])
    if mat.shape != (doc["dim"], doc["dim"]):
        raise ShapeError(f"state data has shape {mat.shape}, file declares dim {doc['dim']}")
    return DensityMatrix(mat, tol=tol, validate=validate)


_PAIR = re.compile(r"\[\s+([^\[\],\s]+),\s+([^\[\],\s]+)\s+\]")


def dumps(doc):
    """Deterministic JSON text with each ``[re, im]`` pair on one line."""
    return _PAIR.sub(r"[\1, \2]", json.dumps(doc, indent=2)) + "\n"


def loads(text):
    return json.loads(text)


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
