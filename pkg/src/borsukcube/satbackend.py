"""External SAT solver orchestration.

The solver is any executable accepting a DIMACS CNF path and printing an
"s SATISFIABLE"/"s UNSATISFIABLE" status line plus "v " model lines. The
search order for a solver is: explicit path, the SAT_SOLVER environment
variable, well-known solver names on PATH, and finally a small bundled
CDCL solver that is compiled from source on first use.
"""

from __future__ import annotations

import os
import shutil
import subprocess
import tempfile
from dataclasses import dataclass, field

_KNOWN_SOLVERS = ("kissat", "cadical", "cryptominisat5", "glucose", "minisat")
_BUNDLED_SOURCE = os.path.join(os.path.dirname(__file__), "_csrc", "mincdcl.c")


class SolverNotFoundError(RuntimeError):
    """No usable SAT solver executable could be located or built."""


class SolverProtocolError(RuntimeError):
    """The solver produced output with no recognizable status line."""


@dataclass
class SatResult:
    status: str                       # "sat" | "unsat" | "timeout"
    model: set[int] = field(default_factory=set)  # positive literals
    banner: str = ""


def _cache_dir() -> str:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(
        os.path.expanduser("~"), ".cache")
    path = os.path.join(base, "borsukcube")
    os.makedirs(path, exist_ok=True)
    return path


def build_bundled_solver(force: bool = False) -> str:
    """Compile the bundled solver if needed and return its path."""
    out = os.path.join(_cache_dir(), "mincdcl")
    src = _BUNDLED_SOURCE
    if not force and os.path.exists(out) \
            and os.path.getmtime(out) >= os.path.getmtime(src):
        return out
    cc = shutil.which("cc") or shutil.which("gcc") or shutil.which("clang")
    if cc is None:
        raise SolverNotFoundError(
            "no SAT solver configured and no C compiler available to build "
            "the bundled one; set SAT_SOLVER or pass --solver")
    tmp = out + ".tmp"
    proc = subprocess.run([cc, "-O2", "-o", tmp, src],
                          capture_output=True, text=True)
    if proc.returncode != 0:
        raise SolverNotFoundError(
            f"building the bundled solver failed:\n{proc.stderr}")
    os.replace(tmp, out)
    return out


def find_solver(explicit: str | None = None) -> str:
    """Resolve the solver executable path; see module docstring for order."""
    candidates = []
    if explicit:
        candidates.append(explicit)
    env = os.environ.get("SAT_SOLVER")
    if env:
        candidates.append(env)
    for cand in candidates:
        path = shutil.which(cand) or (cand if os.path.isfile(cand) else None)
        if path and os.access(path, os.X_OK):
            return path
        raise SolverNotFoundError(f"solver not found or not executable: {cand}")
    for name in _KNOWN_SOLVERS:
        path = shutil.which(name)
        if path:
            return path
    return build_bundled_solver()


def solver_banner(solver_path: str) -> str:
    """One identifying line for reports, best effort."""
    try:
        proc = subprocess.run([solver_path, "--version"], capture_output=True,
                              text=True, timeout=10)
        line = (proc.stdout or proc.stderr).strip().splitlines()
        if line:
            return f"{os.path.basename(solver_path)} {line[0]}"
    except (OSError, subprocess.TimeoutExpired):
        pass
    return os.path.basename(solver_path)


def run_solver(solver_path: str, dimacs_text: str, timeout_ms: int) -> SatResult:
    """Run the solver on the formula with a hard timeout.

    The exit status is ignored; only "s " status lines decide the outcome.
    The child process is killed (and reaped) when the timeout expires.
    """
    fd, path = tempfile.mkstemp(suffix=".cnf", prefix="cube-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(dimacs_text)
            if not dimacs_text.endswith("\n"):
                fh.write("\n")
        try:
            proc = subprocess.run(
                [solver_path, path], capture_output=True, text=True,
                timeout=max(timeout_ms, 1) / 1000.0)
        except subprocess.TimeoutExpired:
            return SatResult("timeout")
        except OSError as exc:
            raise SolverNotFoundError(f"failed to launch {solver_path}: {exc}")
        return parse_solver_output(proc.stdout)
    finally:
        try:
            os.unlink(path)
        except OSError:
            pass


def parse_solver_output(text: str) -> SatResult:
    status = None
    model: set[int] = set()
    banner = ""
    for line in text.splitlines():
        if line.startswith("c ") and not banner:
            banner = line[2:].strip()
        elif line.startswith("s "):
            word = line[2:].strip()
            if word == "SATISFIABLE":
                status = "sat"
            elif word == "UNSATISFIABLE":
                status = "unsat"
        elif line.startswith("v "):
            for tok in line[2:].split():
                lit = int(tok)
                if lit > 0:
                    model.add(lit)
    if status is None:
        raise SolverProtocolError(
            "no 's SATISFIABLE'/'s UNSATISFIABLE' line in solver output")
    return SatResult(status, model, banner)
