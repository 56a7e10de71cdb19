import subprocess
import sys

import pytest

SCENARIOS = ("fig3b", "fig3c", "fig4b", "fig5", "fig6", "fig7")


@pytest.fixture(scope="session")
def dataset_dir(tmp_path_factory):
    """Scenario CSVs produced through the mwgates CLI (the data contract)."""
    out = tmp_path_factory.mktemp("datasets")
    for scenario in SCENARIOS:
        cmd = [
            sys.executable, "-m", "mwgates", "run", scenario,
            "--out", str(out / f"{scenario}.csv"), "--seed", "0",
        ]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        assert proc.returncode == 0, f"{scenario}: {proc.stderr}"
    return out
