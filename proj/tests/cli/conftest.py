import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def binary():
    path = os.environ.get("ZIPFCACHE_BIN", str(ROOT / "build" / "zipfcache"))
    if not os.path.exists(path):
        pytest.skip(f"cli binary not found at {path}")
    return path


@pytest.fixture(scope="session")
def schemas():
    return pathlib.Path(os.environ.get("ZIPFCACHE_SCHEMAS", str(ROOT / "schemas")))


@pytest.fixture
def run(binary):
    def _run(*args, check=True):
        proc = subprocess.run([binary, *map(str, args)], capture_output=True, timeout=300)
        # decode by hand so CRLF line endings survive
        proc.stdout = proc.stdout.decode()
        proc.stderr = proc.stderr.decode()
        if check and proc.returncode != 0:
            raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
        return proc
    return _run


@pytest.fixture
def run_json(run):
    def _run_json(*args):
        return json.loads(run(*args).stdout)
    return _run_json
