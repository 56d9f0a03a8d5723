"""Shared fixtures: the signature families used across the test modules"""

import json

import pytest

from src.selftest import FAMILIES
from src.signature import validate_signature


def family(name):
    return validate_signature(FAMILIES[name])


@pytest.fixture
def weyl():
    """W(0,0,0,1,0, Z): x^a d^m"""
    return family('weyl')


@pytest.fixture
def weyl_odd1():
    return family('weyl-odd1')


@pytest.fixture
def weyl_odd2():
    return family('weyl-odd2')


@pytest.fixture
def laurent():
    """W(0,0,1,0,0, Z): x^{a,i} d^m"""
    return family('laurent')


@pytest.fixture
def laurent_odd1():
    return family('laurent-odd1')


@pytest.fixture
def group2():
    """W(0,0,0,2,0, Z^2) with tau = (1, 1)"""
    return family('group2')


@pytest.fixture(params=sorted(FAMILIES))
def any_family(request):
    return family(request.param)


@pytest.fixture
def sig_file(tmp_path):
    """Write signature JSON to a temporary file and return its path"""
    def write(data, name='sig.json'):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return write
