import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from germforge import Ideal, Polynomial, Ring
from germforge.parsing import parse_germ_file

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile(
    "germforge",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("germforge")

CRITERIA = pytest.StashKey[dict]()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    number, title = mark.args
    results = item.config.stash.setdefault(CRITERIA, {})
    if rep.when == "call" or number not in results:
        results[number] = (title, rep.passed, rep.duration)


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(CRITERIA, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, passed, duration = results[number]
        word = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {word}  {title}  ({duration:.1f}s)")


def load(name):
    return parse_germ_file((FIXTURES / f"{name}.germ").read_text())


def corpus():
    """Every fixture file, as (name, GermFile) pairs with maps F and G."""
    return [(p.stem, parse_germ_file(p.read_text())) for p in sorted(FIXTURES.glob("*.germ"))]


def corpus_names():
    return [p.stem for p in sorted(FIXTURES.glob("*.germ"))]


def identity_names():
    return [n for n in corpus_names() if n.startswith("id_")]


def function_target_names():
    return [n for n, gf in corpus() if gf.maps["G"].target_dim == 1]


@pytest.fixture
def rng():
    return random.Random(0)


def random_ideal(rng, nvars=None, max_deg=4):
    nvars = nvars or rng.randint(1, 3)
    ring = Ring(["x", "y", "z"][:nvars])
    gens = []
    for _ in range(rng.randint(1, 3)):
        d = {}
        for _ in range(rng.randint(1, 3)):
            e = [0] * nvars
            for _ in range(rng.randint(0, max_deg)):
                e[rng.randrange(nvars)] += 1
            d[tuple(e)] = rng.choice([-3, -2, -1, 1, 2, 3])
        p = Polynomial(ring, d)
        if p:
            gens.append(p)
    return Ideal(ring, gens or [ring.gen(0)])
