"""JSON encodings shared by the CLI and the library.

    space   {"p": int, "q": int, "gram": [[...], ...]}
    vector  {"coords": [...]}
    tensor  {"space": space, "entries": [m^4 reals, row-major over (a, b, c, d)]}
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .curvature import AlgebraicCurvatureTensor
from .indefinite import DEFAULT_TOL, SignatureSpace
from .errors import SignatureError


def space_to_json(space):
    return {"p": space.p, "q": space.q, "gram": space.gram.tolist()}


def space_from_json(data):
    p, q = int(data["p"]), int(data["q"])
    if "gram" not in data:
        return SignatureSpace.standard(p, q)
    return SignatureSpace(p, q, np.array(data["gram"], dtype=float))


def vector_to_json(v):
    return {"coords": np.asarray(v, dtype=float).tolist()}


def vector_from_json(data, space=None):
    v = np.array(data["coords"], dtype=float)
    return v if space is None else space.check_vector(v)


def tensor_to_json(R):
    return {"space": space_to_json(R.space), "entries": R.entries.reshape(-1).tolist()}


def tensor_from_json(data, tol=DEFAULT_TOL):
    """Load and validate; raises SymmetryError naming the largest violation."""
    space = space_from_json(data["space"])
    flat = np.array(data["entries"], dtype=float)
    m = space.dim
    if flat.shape != (m ** 4,):
        raise SignatureError(f"expected {m ** 4} entries for m={m}, got {flat.size}")
    return AlgebraicCurvatureTensor.checked(space, flat.reshape((m,) * 4), tol)


def dumps(payload):
    """Canonical text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_json(path, payload):
    Path(path).write_text(dumps(payload), encoding="utf-8")


def read_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))
