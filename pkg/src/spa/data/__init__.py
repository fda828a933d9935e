"""Vendored benchmark netlists and their provenance manifest."""

import hashlib
import json
import pathlib

_HERE = pathlib.Path(__file__).parent

CIRCUITS = ("c17", "c432", "c499", "c880", "c1355", "c1908",
            "c2670", "c3540", "c5315", "c6288", "c7552")


def corpus_dir() -> pathlib.Path:
    """Directory holding the vendored .bench files."""
    return _HERE / "iscas85"


def circuit_path(name: str) -> pathlib.Path:
    p = corpus_dir() / f"{name}.bench"
    if not p.exists():
        raise KeyError(f"unknown circuit {name!r}; have {', '.join(CIRCUITS)}")
    return p


def load(name: str) -> str:
    """Netlist text for one of the vendored circuits."""
    return circuit_path(name).read_text()


def manifest() -> dict:
    with open(_HERE / "MANIFEST.json") as fh:
        return json.load(fh)


def verify_checksums() -> bool:
    """True iff every vendored file matches its manifest sha256."""
    want = manifest()["sha256"]
    for fname, sha in want.items():
        data = (corpus_dir() / fname).read_bytes()
        if hashlib.sha256(data).hexdigest() != sha:
            return False
    return True
