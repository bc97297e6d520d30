import pytest

from topicsum import build_prototypes, fit, generate_fixture

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion for the terminal summary."""
    lines = request.config.stash[_LINES]

    def record(name, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


@pytest.fixture(scope="session")
def fixture_corpus():
    return generate_fixture(0)


@pytest.fixture(scope="session")
def fixture_tfidf(fixture_corpus):
    return fit(fixture_corpus)


@pytest.fixture(scope="session")
def fixture_topics(fixture_tfidf, fixture_corpus):
    return build_prototypes(fixture_tfidf, fixture_corpus)


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
