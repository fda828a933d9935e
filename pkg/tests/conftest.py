import sys
from pathlib import Path

import pytest

import spa
from spa.data import load

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"


def circuit_triple(name):
    """(circuit, dag, moral graph) for a vendored benchmark."""
    circuit = spa.parse_netlist(load(name), "bench", name)
    dag = spa.build_dag(circuit)
    return circuit, dag, spa.moralize(dag)


@pytest.fixture(scope="session")
def c17():
    return circuit_triple("c17")


@pytest.fixture(scope="session")
def c432():
    return circuit_triple("c432")


@pytest.fixture(scope="session")
def c17_isc_text():
    return (FIXTURES / "c17.isc").read_text()
