import json

import numpy as np
import pytest

from jordan_osserman.curvature import constant_curvature_tensor, perturbed_constant_curvature
from jordan_osserman.errors import SignatureError, SymmetryError
from jordan_osserman.indefinite import SignatureSpace
from jordan_osserman.serialization import (
    dumps,
    read_json,
    space_from_json,
    space_to_json,
    tensor_from_json,
    tensor_to_json,
    vector_from_json,
    vector_to_json,
    write_json,
)


def test_space_round_trip():
    s = SignatureSpace.from_gram([[0.0, 1.0], [1.0, 0.0]])
    back = space_from_json(json.loads(dumps(space_to_json(s))))
    assert (back.p, back.q) == (1, 1) and np.array_equal(back.gram, s.gram)


def test_space_default_gram():
    assert np.array_equal(space_from_json({"p": 1, "q": 2}).gram, np.diag([-1.0, 1.0, 1.0]))


def test_vector_round_trip():
    v = np.array([0.1, -2.0, 3.5])
    assert np.array_equal(vector_from_json(vector_to_json(v)), v)
    with pytest.raises(SignatureError):
        vector_from_json(vector_to_json(v), SignatureSpace.standard(1, 1))


def test_tensor_round_trip_is_exact(tmp_path):
    R = perturbed_constant_curvature(SignatureSpace.standard(1, 3), 2.0, 0.01)
    path = tmp_path / "t.json"
    write_json(path, tensor_to_json(R))
    back = tensor_from_json(read_json(path))
    assert np.array_equal(back.entries, R.entries)


def test_tensor_rejects_bad_symmetry():
    data = tensor_to_json(constant_curvature_tensor(SignatureSpace.standard(0, 2), 1.0))
    data["entries"][1] = 0.5
    with pytest.raises(SymmetryError, match="max violation"):
        tensor_from_json(data)


def test_tensor_rejects_wrong_length():
    data = tensor_to_json(constant_curvature_tensor(SignatureSpace.standard(0, 2), 1.0))
    data["entries"].pop()
    with pytest.raises(SignatureError):
        tensor_from_json(data)


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == dumps({"a": [1, 2], "b": 1})
    assert dumps({}).endswith("\n")
