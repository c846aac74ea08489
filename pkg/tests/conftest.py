import os

import pytest
from click.testing import CliRunner

import config
from relcat.formats import load_rig
from relcat.models import MatModel, RelModel


GOLDEN_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "golden")
EXAMPLES_DIR = os.path.join(config.CORPUS_DIR, "examples")


def golden(name):
    with open(os.path.join(GOLDEN_DIR, name), encoding="utf-8") as f:
        return f.read()


def example(name):
    return os.path.join(EXAMPLES_DIR, name)


@pytest.fixture
def rel_model():
    return RelModel()


@pytest.fixture
def chain3():
    return MatModel(load_rig("chain3"))


@pytest.fixture
def trunc3():
    return MatModel(load_rig("trunc3"))


@pytest.fixture
def gf2():
    return MatModel(load_rig("gf2"))


@pytest.fixture
def bool_mat():
    return MatModel(load_rig("bool"))


@pytest.fixture
def runner():
    return CliRunner()
