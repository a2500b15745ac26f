"""Run-scoped logging context for simulator experiments.

This module owns the context variables that identify the current run and
experiment, the ``ContextualLogFilter`` that copies them onto log records,
the ``RECOMMENDED_LOG_FORMAT`` constant, and ``default_run_id_generator``.

The CLI sets both variables around each experiment; library modules never
touch them and only log through ``logging.getLogger(__name__)``.
"""

from __future__ import annotations

import contextlib
import contextvars
import importlib
import logging
import typing as typ
import uuid

if typ.TYPE_CHECKING:
    import collections.abc as cabc

run_id_var: contextvars.ContextVar[str | None] = contextvars.ContextVar(
    "run_id", default=None
)
"""Identifier shared by every record emitted during one CLI invocation."""

experiment_var: contextvars.ContextVar[str | None] = contextvars.ContextVar(
    "experiment", default=None
)
"""Name of the experiment currently being evaluated."""

MISSING_CONTEXT_PLACEHOLDER: str = "-"
"""Rendered in place of an unset run or experiment identifier."""

RECOMMENDED_LOG_FORMAT: str = (
    "%(asctime)s - [%(levelname)s] - [%(run_id)s] - "
    "[%(experiment)s] - %(name)s - %(message)s"
)
"""Logging format string including run and experiment placeholders."""


class ContextualLogFilter(logging.Filter):
    """Inject ``run_id`` and ``experiment`` attributes into log records.

    Values come from ``run_id_var`` and ``experiment_var``; unset variables
    render as ``"-"``. Attributes already present on the record (for example
    supplied through ``extra=``) are left untouched. The filter never drops
    a record.

    Examples
    --------
    Attach to a handler::

        handler = logging.StreamHandler()
        handler.addFilter(ContextualLogFilter())
        handler.setFormatter(logging.Formatter(RECOMMENDED_LOG_FORMAT))

    """

    def filter(  # noqa: PLR6301 -- logging.Filter requires an instance method.
        self, record: logging.LogRecord
    ) -> bool:
        """Enrich *record* with run and experiment identifiers.

        Parameters
        ----------
        record : logging.LogRecord
            The log record to enrich.

        Returns
        -------
        bool
            Always ``True``.

        """
        if not hasattr(record, "run_id"):
            run_id = run_id_var.get()
            record.run_id = (
                run_id if run_id is not None else MISSING_CONTEXT_PLACEHOLDER
            )
        if not hasattr(record, "experiment"):
            experiment = experiment_var.get()
            record.experiment = (
                experiment if experiment is not None else MISSING_CONTEXT_PLACEHOLDER
            )
        return True


def default_run_id_generator() -> str:
    """Generate a UUIDv7 run identifier.

    Uses ``uuid.uuid7()`` when the interpreter provides it and falls back to
    ``uuid_utils.uuid7()`` otherwise.

    Returns
    -------
    str
        A UUIDv7 hex string.

    """
    uuid7 = getattr(uuid, "uuid7", None)
    if uuid7 is not None:
        return uuid7().hex

    uuid_utils = importlib.import_module("uuid_utils")
    return uuid_utils.uuid7().hex


@contextlib.contextmanager
def experiment_scope(experiment: str) -> cabc.Iterator[None]:
    """Bind ``experiment_var`` for the duration of a ``with`` block.

    Parameters
    ----------
    experiment : str
        Experiment name to expose to log records.

    Yields
    ------
    None
        Control returns to the caller with the variable bound.

    """
    token = experiment_var.set(experiment)
    try:
        yield
    finally:
        experiment_var.reset(token)


def configure_logging(level: str) -> logging.Handler:
    """Install a stderr handler carrying the contextual filter.

    Parameters
    ----------
    level : str
        Logging level name applied to the package logger.

    Returns
    -------
    logging.Handler
        The installed handler, so callers can remove it again.

    """
    handler = logging.StreamHandler()
    handler.addFilter(ContextualLogFilter())
    handler.setFormatter(logging.Formatter(RECOMMENDED_LOG_FORMAT))
    package_logger = logging.getLogger("anyon_interferometry")
    package_logger.addHandler(handler)
    package_logger.setLevel(level.upper())
    return handler
