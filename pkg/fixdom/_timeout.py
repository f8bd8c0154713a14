"""Implements a simple timeout decorator using signals."""

import signal
from typing import Optional

from .exceptions import TimeoutError


def timeout(seconds: Optional[int]):
    """A simple timeout decorator. If seconds = None, no time limit is imposed."""
    msg = f"Gave up after {seconds} seconds."

    def _stop(msg: str):
        """Stops the running computation on timeout."""

        def handler(*args, **kwargs):
            raise TimeoutError(msg)

        return handler

    def decorator(function):
        def wrapped(*args, **kwargs):
            if seconds is None:
                return function(*args, **kwargs)

            previous = signal.signal(signal.SIGALRM, _stop(msg))
            signal.alarm(seconds)
            try:
                return function(*args, **kwargs)
            finally:
                signal.alarm(0)
                signal.signal(signal.SIGALRM, previous)

        return wrapped

    return decorator
