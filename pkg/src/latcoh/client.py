from __future__ import annotations

import logging
import threading
from functools import lru_cache
from logging import Logger
from typing import Any, Optional

from . import api
from .core import Core
from .lhs import DEFAULT_IMAX

log: Logger = logging.getLogger(__name__)
lock = threading.Lock()


def init(word_cap: Optional[int] = None, imax: int = DEFAULT_IMAX) -> Client:
    """Synchronized helper function to initialize a :class:`Client`.

    :param word_cap: (optional) Longest free word allowed while iterating
        the lift, defaults to ``LATCOH_WORD_CAP`` or 10⁶.
    :type word_cap: Optional[int]
    :param imax: (optional) Highest E₂ column computed explicitly.
    :type imax: int
    :rtype: Client
    """
    lock.acquire()
    _cl = _client(word_cap=word_cap, imax=imax)
    lock.release()
    return _cl


@lru_cache(maxsize=1)
def _client(**kwargs: Any) -> Client:
    log.debug(
        "Initializing new client with [WordCap=%s, Imax=%s]",
        kwargs["word_cap"],
        kwargs["imax"],
    )
    return Client(Core(**kwargs))


class Client:
    def __init__(self, core: Core):
        self._core = core
        self.cohomology = api.Cohomology(self._core)
        self.obstruction = api.Obstruction(self._core)
        self.spectral = api.Spectral(self._core)
        self.euler = api.Euler(self._core)
        self.paper = api.Paper(self._core)
