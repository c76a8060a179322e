import json
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
sys.path.insert(0, str(Path(__file__).resolve().parent))

from quandlesum.cohomology import cochain_from_json  # noqa: E402
from quandlesum.diagram import load_diagram  # noqa: E402
from quandlesum.quandle import quandle_from_json  # noqa: E402

KNOT_FILES = [
    "unknot0.pd", "unknot1.pd", "unknot2_kinks.json", "trefoil.gauss", "trefoil.pd",
    "trefoil_left.json", "figure8.pd", "cinquefoil.json", "braid6a.json", "braid6b.json",
    "braid6c.json", "knot_7_1.json", "torus_3_4.json",
]
LINK_FILES = [
    "hopf.json", "hopf_positive.json", "unlink2.json", "torus_link_2_4.json",
    "link5_lk0.json", "chain3.json",
]
DIAGRAM_FILES = KNOT_FILES + LINK_FILES
QUANDLE_FILES = ["dihedral3", "dihedral4", "dihedral5", "trivial2", "trivial3", "s3conj", "tetrahedral"]


def load_q(name):
    return quandle_from_json((FIXTURES / "quandles" / f"{name}.json").read_text())


def load_d(name):
    return load_diagram((FIXTURES / "diagrams" / name).read_text())


def load_c(name, quandle):
    data = json.loads((FIXTURES / "cochains" / name).read_text())
    return cochain_from_json(data, quandle.order)


def raw_pd(name):
    """(crossings, components, signs or None) as written in the fixture."""
    d = load_d(name).to_json()
    return d["crossings"], d["components"], d.get("signs")


def fixture_path(*parts):
    return str(FIXTURES.joinpath(*parts))


@pytest.fixture
def trefoil():
    return load_d("trefoil.gauss")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(lines):
        terminalreporter.write_line(lines[n])
