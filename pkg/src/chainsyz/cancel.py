"""Cooperative cancellation for long-running computations."""

import threading


class Cancelled(RuntimeError):
    pass


class CancelToken:
    """Shared flag polled by Groebner and resolution loops."""

    def __init__(self):
        self._event = threading.Event()

    def cancel(self):
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()

    def check(self):
        if self._event.is_set():
            raise Cancelled("computation cancelled")
