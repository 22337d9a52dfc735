import json

import pytest

from posetmorse.cli import load, run
from posetmorse.fileformat import FIXTURE_DIR, fixture_names

GOLDEN = FIXTURE_DIR / "golden"


def command_for(name):
    return "relative-filtration" if load(name).down_set is not None else "filtration"


@pytest.mark.parametrize("name", fixture_names())
def test_golden_report(name, regen_golden):
    _, report, _ = run(command_for(name), [load(name)])
    path = GOLDEN / f"{name}.json"
    if regen_golden:
        path.parent.mkdir(exist_ok=True)
        path.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
        pytest.skip("golden file regenerated")
    assert path.exists(), f"missing golden file {path.name}; run pytest --regen-golden"
    assert report == json.loads(path.read_text(encoding="utf-8"))
