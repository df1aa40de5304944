import json
import os
import subprocess
import sys

import pytest

BIN = os.environ.get("COLLIDERE_BIN")
SCHEMAS = os.environ.get("COLLIDERE_SCHEMAS")
PYMOD = os.environ.get("COLLIDERE_PYMOD")
FIXTURES = os.environ.get("COLLIDERE_FIXTURES")


class CliResult:
    def __init__(self, proc):
        self.returncode = proc.returncode
        self.stdout = proc.stdout
        self.stderr = proc.stderr

    @property
    def json(self):
        return json.loads(self.stdout)


@pytest.fixture(scope="session")
def cli():
    if not BIN or not os.path.exists(BIN):
        pytest.skip("COLLIDERE_BIN not set; run through ctest or export it")

    def run(*args, env_extra=None):
        env = dict(os.environ)
        env.pop("COLLIDERE_BUDGET", None)
        if env_extra:
            env.update(env_extra)
        return CliResult(
            subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
        )

    return run


@pytest.fixture(scope="session")
def schema():
    if not SCHEMAS or not os.path.isdir(SCHEMAS):
        pytest.skip("COLLIDERE_SCHEMAS not set")
    jsonschema = pytest.importorskip("jsonschema")
    cache = {}

    def validate(name, instance):
        if name not in cache:
            with open(os.path.join(SCHEMAS, f"{name}.schema.json")) as f:
                cache[name] = json.load(f)
        jsonschema.validate(instance=instance, schema=cache[name])
        return instance

    return validate


@pytest.fixture(scope="session")
def collidere():
    if PYMOD:
        sys.path.insert(0, PYMOD)
    return pytest.importorskip("collidere")


@pytest.fixture(scope="session")
def fixtures_dir():
    if not FIXTURES or not os.path.isdir(FIXTURES):
        pytest.skip("COLLIDERE_FIXTURES not set")
    return FIXTURES
