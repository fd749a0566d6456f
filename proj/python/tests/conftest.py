import os
import pathlib
import shutil

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture
def data_dir():
    return pathlib.Path(os.environ.get("OCCIN_DATA", ROOT / "data"))


@pytest.fixture
def cli():
    path = os.environ.get("OCCIN_CLI") or shutil.which("occin")
    if not path:
        candidate = ROOT / "build" / "tools" / "occin"
        if not candidate.exists():
            pytest.skip("occin CLI not built")
        path = str(candidate)
    return path
