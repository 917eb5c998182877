"""Shared fixtures for qpsurf tests.

Layouts are cached per distance; random generators are seeded so every
statistical assertion is reproducible.
"""

from __future__ import annotations

__author__ = "Artur Barseghyan <artur.barseghyan@gmail.com>"
__copyright__ = "2026 Artur Barseghyan"
__license__ = "MIT"

import numpy as np
import pytest

from qpsurf._code import build_layout


@pytest.fixture()
def rng():
    """Seeded generator, fresh for every test."""
    return np.random.default_rng(20240611)


@pytest.fixture()
def layout_d3():
    return build_layout(3)


@pytest.fixture()
def layout_d5():
    return build_layout(5)


@pytest.fixture(autouse=True)
def _clean_qpsurf_env(monkeypatch):
    """Run every test without ``QPSURF_*`` overrides from the caller."""
    for name in (
        "QPSURF_WORKERS",
        "QPSURF_SEED",
        "QPSURF_EPSILON",
        "QPSURF_DELTA",
        "QPSURF_CHECK_CLEARANCE",
    ):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture()
def sweep_file(tmp_path):
    """Factory writing a sweep declaration and returning its path."""

    def build(payload: str):
        path = tmp_path / "sweep.json"
        path.write_text(payload, encoding="utf-8")
        return path

    return build


@pytest.fixture()
def layout_d7():
    return build_layout(7)
