import pytest

from johnson_fft import build_plan

_CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion test")


@pytest.fixture(scope="session")
def plan_cache():
    cache = {}

    def get(n, k):
        if (n, k) not in cache:
            cache[n, k] = build_plan(n, k)
        return cache[n, k]

    return get


@pytest.fixture
def measured(request):
    """Record a measured quantity shown next to the acceptance line."""
    def record(text):
        request.node.user_properties.append(("measured", text))
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (rep.when != "call" and rep.passed):
        return
    number, title = marker.args
    detail = "; ".join(v for k, v in item.user_properties if k == "measured")
    entry = _CRITERIA.setdefault(number, [title, True, []])
    entry[1] = entry[1] and rep.passed
    if detail:
        entry[2].append(detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, passed, details = _CRITERIA[number]
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}"
        if details:
            line += "  [" + "; ".join(details) + "]"
        terminalreporter.write_line(line)
