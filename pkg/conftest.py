"""Shared fixtures; the checkout is used directly, without install"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import seshadri.certificates  # noqa: E402
import seshadri.surface  # noqa: E402


@pytest.fixture
def p2():
    return seshadri.surface.SurfaceData.p2()


@pytest.fixture
def rank1_surface():
    # L^2 = 2 with curve degrees in steps of 2.
    return seshadri.surface.SurfaceData(2, -4, 0, degree_unit=2, rank1=True, mode='RANK1')


@pytest.fixture
def store16(p2):
    return seshadri.certificates.builtin_store(p2, 16)


@pytest.fixture
def no_rc(monkeypatch, tmp_path):
    """Keep the user's rc file and certificate path out of CLI tests"""
    monkeypatch.setattr('run_seshadri.RC_FILE', str(tmp_path / 'missing-rc'))
    monkeypatch.delenv('SESHADRI_CERT_PATH', raising=False)
    return tmp_path
