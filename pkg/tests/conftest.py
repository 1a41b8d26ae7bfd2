from pathlib import Path

import pytest

ACCEPTANCE = pytest.StashKey[list]()

FIXTURES = Path(__file__).parent / "fixtures"
GRAPHS = FIXTURES / "graphs"
CORPORA = {
    "fgd": FIXTURES / "fgd_sample.conllu",
    "ancora": FIXTURES / "ancora_sample.conllu",
}
GOLDENS = {
    "fgd": (FIXTURES / "fgd_sample.Functor.golden.tsv", "Functor"),
    "ancora": (FIXTURES / "ancora_sample.ArgTem.golden.tsv", "ArgTem"),
}
CANONICAL = sorted([*CORPORA.values(), *GRAPHS.glob("*.conllu")])


@pytest.fixture(params=sorted(CORPORA))
def framework(request):
    return request.param


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
