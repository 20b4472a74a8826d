"""Nox configuration."""

from __future__ import annotations

import nox

PYTHONS = ["3.12", "3.13", "3.14"]

nox.options.sessions = ["tests", "check"]


@nox.session(python=PYTHONS)
def tests(session: nox.Session):
    """Run the unit and end-to-end tests."""
    uv_sync(session)
    session.run("pytest", "-m", "not integration", *session.posargs)


@nox.session
def oracles(session: nox.Session):
    """Run the solver cross-checks (slow: full PDE runs and convergence studies)."""
    uv_sync(session)
    session.run("pytest", "-m", "integration", *session.posargs)


@nox.session
def check(session: nox.Session):
    """Run lint and type checks."""
    uv_sync(session)
    session.run("ruff", "check")
    session.run("ruff", "format", "--check")
    session.run("ty", "check", "src")


#
# Utils
#
def uv_sync(session: nox.Session):
    session.run("uv", "sync", "-q", "--active", external=True)
