"""Fixtures shared by the package-local unit tests.

``isolated_context`` runs a callable inside a copied ``contextvars``
context so run and experiment identifiers set by one test never reach
another. ``logger_with_capture`` builds named loggers whose output lands in
a ``StringIO`` using the compact ``[run][experiment] message`` layout.
``plus_state`` is the ancilla ``|+x⟩`` on site ``"anc"``.

Example::

    def test_scoped(isolated_context, logger_with_capture):
        logger, stream = logger_with_capture("anyon_interferometry.demo")

        def _inner():
            run_id_var.set("run-7")
            logger.info("ready")

        isolated_context(_inner)
        assert stream.getvalue().strip() == "[run-7][-] ready"
"""

from __future__ import annotations

import contextlib
import contextvars
import io
import logging
import math
import typing as typ

import pytest

from anyon_interferometry import ContextualLogFilter, StateVector

if typ.TYPE_CHECKING:
    import collections.abc as cabc

CAPTURE_FORMAT = "[%(run_id)s][%(experiment)s] %(message)s"


@pytest.fixture
def isolated_context() -> cabc.Callable[[cabc.Callable[[], None]], None]:
    """Return a runner that executes callables in a copied context."""

    def runner(func: cabc.Callable[[], None]) -> None:
        contextvars.copy_context().run(func)

    return runner


def _attach_capture(
    stack: contextlib.ExitStack, name: str
) -> tuple[logging.Logger, io.StringIO]:
    logger = logging.getLogger(name)
    stream = io.StringIO()
    handler = logging.StreamHandler(stream)
    handler.setFormatter(logging.Formatter(CAPTURE_FORMAT))
    handler.addFilter(ContextualLogFilter())

    stack.callback(setattr, logger, "propagate", logger.propagate)
    stack.callback(logger.setLevel, logger.level)
    stack.callback(handler.close)
    stack.callback(logger.removeHandler, handler)

    logger.addHandler(handler)
    logger.setLevel(logging.INFO)
    logger.propagate = False
    return logger, stream


@pytest.fixture
def logger_with_capture() -> cabc.Iterator[
    cabc.Callable[[str], tuple[logging.Logger, io.StringIO]]
]:
    """Yield a factory of captured loggers, restoring them on teardown.

    Yields
    ------
    cabc.Callable[[str], tuple[logging.Logger, io.StringIO]]
        Maps a logger name to the logger and the stream it writes to.

    """
    with contextlib.ExitStack() as stack:
        yield lambda name: _attach_capture(stack, name)


@pytest.fixture
def plus_state() -> StateVector:
    """Return ``(|0⟩ + |1⟩)/√2`` on site ``"anc"``."""
    half = 1 / math.sqrt(2)
    return StateVector.single_site("anc", [half, half])
