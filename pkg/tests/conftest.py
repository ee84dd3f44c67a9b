import itertools

import pytest

from biclosed.root_system import RootSet, all_roots


def coefficient_vector(root, n):
    """Coordinates of a root over the simple roots alpha_1..alpha_n."""
    a, b = root
    lo, hi = min(a, b), max(a, b)
    sign = 1 if a < b else -1
    return tuple(sign if lo <= i < hi else 0 for i in range(1, n + 1))


def naive_is_closed(roots, n):
    """Closedness from the additive definition, over coefficient vectors."""
    vectors = {coefficient_vector(r, n): r for r in all_roots(n)}
    members = {coefficient_vector(r, n) for r in roots}
    for x, y in itertools.product(members, repeat=2):
        s = tuple(p + q for p, q in zip(x, y))
        if s in vectors and s not in members:
            return False
    return True


def all_subsets(n):
    roots = all_roots(n)
    for mask in range(1 << len(roots)):
        yield RootSet(n, mask)


@pytest.fixture(scope="session")
def biclosed_by_rank():
    """Biclosed sets of A_0..A_3 from the additive definition alone."""
    out = {}
    for n in range(4):
        out[n] = [C for C in all_subsets(n)
                  if naive_is_closed(C.roots(), n) and naive_is_closed(C.complement().roots(), n)]
    return out


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
