import pytest

from turing2.model import pdagger, reaction_taylor, steady_state
from turing2.normal_form import normal_form
from turing2.unfolding import planar_unfolding

# rounded Turing-Turing point used for the tabulated coefficients
DU_STAR, ALPHA_STAR = 0.0253, 0.5527


@pytest.fixture(scope="session")
def p():
    return pdagger()


@pytest.fixture(scope="session")
def lin(p):
    return steady_state(p)


@pytest.fixture(scope="session")
def p_tt(p):
    return p.replace(du=DU_STAR, alpha=ALPHA_STAR)


@pytest.fixture(scope="session")
def nf(p_tt):
    lin = steady_state(p_tt)
    return normal_form(lin, p_tt, reaction_taylor(lin, p_tt), 3, 4, singular_tol=1e-4)


@pytest.fixture(scope="session")
def unf(nf):
    return planar_unfolding(nf)


ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    return request.config.stash.setdefault(ACCEPTANCE_KEY, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
