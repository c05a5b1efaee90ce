"""
Fixtures for end-to-end runs of the command line.
"""

import pytest


@pytest.fixture
def config_file(tmp_path):
    """Settings file that keeps logs out of the project tree."""
    path = tmp_path / "settings.yaml"
    path.write_text("runtime:\n  log_file: null\n  threads: 2\n")
    return path


@pytest.fixture
def cli(config_file):
    """Run multiboost with the test settings; returns the exit code."""
    from multiboost.cli.main import main

    def invoke(*argv: str) -> int:
        return main(["--config", str(config_file), *argv])

    return invoke
