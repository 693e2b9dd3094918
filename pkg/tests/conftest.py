import os

import pytest

from borsukcube.satbackend import build_bundled_solver, find_solver


@pytest.fixture(scope="session")
def solver_path():
    """A working SAT solver executable for the whole session.

    Honors SAT_SOLVER / an installed solver; otherwise compiles the bundled
    one once.
    """
    if os.environ.get("SAT_SOLVER"):
        return find_solver()
    return build_bundled_solver()
