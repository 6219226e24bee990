import math

import pytest

from linforest.generator import from_coordinates


def polygon(k, radius=1.0):
    return [(radius * math.cos(2 * math.pi * i / k), -radius * math.sin(2 * math.pi * i / k)) for i in range(k)]


def two_squares():
    """Two 4-cycles 0123 and 0456 sharing vertex 0."""
    pts = [(0, 0), (-1, -1), (-2, 0), (-1, 1), (1, -1), (2, 0), (1, 1)]
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)]
    return from_coordinates(pts, edges)


def c6_chord():
    """C6 on 0..5 with chord 0-3."""
    pts = polygon(6)
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(0, 3)]
    return from_coordinates(pts, edges)


def wrapped_square():
    """Square a=0 b=1 c=2 d=3, inner v=4 and outer w=5 both joined to a and c."""
    pts = [(-1, 0), (0, -1), (1, 0), (0, 1), (0, 0.2), (0, -3)]
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 2), (5, 0), (5, 2)]
    return from_coordinates(pts, edges)


@pytest.fixture
def squares():
    return two_squares()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
