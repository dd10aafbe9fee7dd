import pytest
from hypothesis import settings

from symcorr.exact import ParameterSet

settings.register_profile("repo", max_examples=40, deadline=None)
settings.load_profile("repo")

PARAMS = {
    "q1": ParameterSet(q=(1,)),
    "q1h": ParameterSet(q=(1, "1/2")),
    "r": ParameterSet(r=("1/2",)),
    "mixed": ParameterSet(q=(1, "1/2"), r=("1/3",)),
}


@pytest.fixture(params=sorted(PARAMS))
def params(request):
    return PARAMS[request.param]


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    REPORT = getattr(mod, "REPORT", None)
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for k in sorted(REPORT):
            terminalreporter.write_line(REPORT[k])
