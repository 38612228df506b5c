import json
import pathlib

import pytest

from sctk.surface import golden_l_model, l_shaped_origami, torus
from sctk.zexp import origami_tree_stream, parse_theta, tessellation_stream, z_expansion

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def rcf_oracle():
    return json.loads((DATA / "rcf_oracle.json").read_text())


@pytest.fixture(scope="session")
def surfaces():
    return {"torus": torus(), "L(3)": l_shaped_origami(), "golden-L": golden_l_model()}


def _records(name, model, theta, terms):
    if name == "golden-L":
        stream = tessellation_stream(theta, model.tessellation)
    else:
        stream = origami_tree_stream(model, theta)
    return z_expansion(stream, theta, max_terms=terms)


@pytest.fixture(scope="session")
def pi_expansions(surfaces):
    """Z-expansions of pi on the three test surfaces, 16 records each."""
    theta = parse_theta("pi")
    return {name: _records(name, m, theta, 16) for name, m in surfaces.items()}


@pytest.fixture
def report_line(capsys):
    """Print a line straight to the terminal, bypassing capture."""

    def emit(text):
        with capsys.disabled():
            print(f"\n{text}")

    return emit
