"""Sato-Tate group models, equidistribution tests and elliptic-curve Frobenius data."""

import json

from ._core import (
    DEFAULT_CHAR_CAP,
    DEFAULT_Z,
    SatoTateError,
    character_value,
    cm_detect,
    count_points,
    generate_ap,
    haar_integral,
    model_names,
    sample_haar,
)
from . import _core

__all__ = [
    "DEFAULT_CHAR_CAP",
    "DEFAULT_Z",
    "SatoTateError",
    "artin_decompose",
    "character_value",
    "cm_detect",
    "count_points",
    "generate_ap",
    "haar_integral",
    "induction_check",
    "model",
    "model_names",
    "run_test",
    "sample_haar",
]


def model(name, char_cap=DEFAULT_CHAR_CAP):
    """Metadata and parity verdict of a built-in model as a dict."""
    return json.loads(_core._model_json(name, char_cap))


def induction_check(sub, amb, label):
    """Both induced-character integral identities for one character of the subgroup."""
    return json.loads(_core._induction_check_json(sub, amb, label))


def artin_decompose(model_name, label):
    return json.loads(_core._artin_decompose_json(model_name, label))


def run_test(curve=None, bound=100000, model="auto", char_cap=DEFAULT_CHAR_CAP, z=DEFAULT_Z,
             seed=0, synthetic=None, input_path=None, negate_ap=False):
    """Full test pipeline. Returns (report dict, exit code)."""
    text, code = _core._run_test_json(curve, bound, model, char_cap, z, seed, synthetic,
                                      input_path, negate_ap)
    return json.loads(text), code
