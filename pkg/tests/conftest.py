import pytest

from vesselmc import NormalVariable, VesselModel

MPA = 1e6
MM = 1e-3


def make_model(po=(13, 1), sy=(235, 10), su=(375, 12), do=(1000, 0.5), di=(960, 0.5)):
    """Vessel model from (mean, std) pairs in MPa / mm."""
    return VesselModel(
        NormalVariable(po[0] * MPA, po[1] * MPA),
        NormalVariable(sy[0] * MPA, sy[1] * MPA),
        NormalVariable(su[0] * MPA, su[1] * MPA),
        NormalVariable(do[0] * MM, do[1] * MM),
        NormalVariable(di[0] * MM, di[1] * MM),
    )


@pytest.fixture
def table2():
    return make_model()


@pytest.fixture
def deterministic_table2():
    return make_model(po=(13, 0), sy=(235, 0), su=(375, 0), do=(1000, 0), di=(960, 0))


# acceptance criterion id -> one-line verdict, filled by test_acceptance
VERDICTS: dict[tuple[str, str], str] = {}


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(VERDICTS, key=lambda k: (int(k[0]), k[1])):
        terminalreporter.write_line(VERDICTS[key])
