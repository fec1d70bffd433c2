import json
import os
from pathlib import Path
from typing import Any

import pytest

from psibeta.core import ConstantBeta, GeometricPsi, LinearBeta
from psibeta.kernels import KernelSpec

# Prevent pytest from catching exceptions when debugging in vscode so that break on
# exception works correctly (see: https://github.com/pytest-dev/pytest/issues/7409)
if os.getenv("PYTEST_RAISE", "0") == "1":

    @pytest.hookimpl(tryfirst=True)
    def pytest_exception_interact(call: pytest.CallInfo[Any]):
        if call.excinfo is not None:
            raise call.excinfo.value
        else:
            raise RuntimeError(
                f"{call} has no exception data, an unknown error has occurred"
            )

    @pytest.hookimpl(tryfirst=True)
    def pytest_internalerror(excinfo: pytest.ExceptionInfo[Any]):
        raise excinfo.value


@pytest.fixture
def half() -> KernelSpec:
    return KernelSpec(GeometricPsi(0.5), ConstantBeta(0.0))


@pytest.fixture
def half_shifted() -> KernelSpec:
    return KernelSpec(GeometricPsi(0.5), ConstantBeta(1.0))


@pytest.fixture
def rotating() -> KernelSpec:
    return KernelSpec(GeometricPsi(0.9), LinearBeta(1.0))


@pytest.fixture
def write_json(tmp_path: Path):
    def write(name: str, document: dict[str, Any]) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return path

    return write
