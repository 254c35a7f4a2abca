"""Shared test utilities: seeded random matrices and model draws."""

import json
import math

import numpy as np

from chiralspin.angmom import SpinLabel
from chiralspin.models import (
    CrossedFields,
    CrossedFieldsShifted,
    GeneralField,
    OHMolecule,
    ToyCoupled,
    TriaxialRotor,
)


def random_hermitian(rng, dim, scale=1.0):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * 0.5 * (a + a.conj().T)


def random_unit_vector(rng):
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_chiral_model(rng, family, max_twice_j=10, coupled_max=4):
    """One random parameter draw of a model family, restricted to parameters
    for which the documented partner exists (condition-met rotor, j >= 1/2,
    nondegenerate shifted rotor)."""
    if family == "crossed_fields":
        return CrossedFields(
            SpinLabel(int(rng.integers(1, max_twice_j + 1))),
            rng.uniform(-2, 2), rng.uniform(-2, 2),
        )
    if family == "crossed_fields_shifted":
        return CrossedFieldsShifted(
            SpinLabel(int(rng.integers(1, max_twice_j + 1))),
            rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
        )
    if family == "general_field":
        return GeneralField(
            SpinLabel(int(rng.integers(1, max_twice_j + 1))),
            rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
        )
    if family == "triaxial_rotor":
        ix, iy = rng.uniform(0.2, 2.0, size=2)
        iz = 2.0 / (1.0 / ix + 1.0 / iy)
        return TriaxialRotor(SpinLabel(int(rng.integers(2, max_twice_j + 1))), ix, iy, iz)
    if family == "toy_coupled":
        return ToyCoupled(
            SpinLabel(int(rng.integers(1, coupled_max + 1))),
            SpinLabel(int(rng.integers(1, coupled_max + 1))),
            rng.uniform(-2, 2), rng.uniform(-2, 2),
        )
    if family == "oh_molecule":
        return OHMolecule(
            delta=rng.uniform(0.2, 2.0), B=rng.uniform(0.0, 2.0),
            E=rng.uniform(0.2, 2.0), theta=rng.uniform(0.1, 1.4),
        )
    raise ValueError(family)


def expected_general_field_j52(a, b, c):
    """The printed six-dimensional form, (1/2) x the sqrt5/sqrt8/3 pattern."""
    d = a - 1j * b
    u = a + 1j * b
    s5 = math.sqrt(5.0)
    s8 = math.sqrt(8.0)
    return 0.5 * np.array(
        [
            [5 * c, s5 * d, 0, 0, 0, 0],
            [s5 * u, 3 * c, s8 * d, 0, 0, 0],
            [0, s8 * u, c, 3 * d, 0, 0],
            [0, 0, 3 * u, -c, s8 * d, 0],
            [0, 0, 0, s8 * u, -3 * c, s5 * d],
            [0, 0, 0, 0, s5 * u, -5 * c],
        ]
    )


def write_model(tmp_path, doc, name="model.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)
