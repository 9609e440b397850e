from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from enum import Enum
from functools import wraps
from logging import Logger
from typing import Any, Callable, Generic, Optional, TypeVar

from pydantic import ValidationError

from .exception import INTERNAL_STATUS, USAGE_STATUS, LatcohError
from .model.common import Error
from .model.response import R

F = TypeVar("F", bound=Callable[..., Any])

log: Logger = logging.getLogger(__name__)


def result(func: F) -> Callable[..., Result[R]]:
    @wraps(func)
    def _result(*args: Any, **kwargs: Any) -> Result[R]:
        obj: R | Exception = _wrapper(func, *args, **kwargs)
        return (
            Result.success(obj)
            if not isinstance(obj, Exception)
            else Result.failed(obj)
        )

    return _result


def _wrapper(func: F, *args: Any, **kwargs: Any) -> R | Exception:
    try:
        start_time: float = time.time()
        log.debug("Execution started [%s, %s]", args, kwargs)
        response: R = func(*args, **kwargs)
        log.debug(
            "Execution finished [Elapsed=%s, Status=%s]",
            time.time() - start_time,
            response.status,
        )
        return response
    except (LatcohError, ValidationError) as exc:
        if _status(exc) == INTERNAL_STATUS:
            log.exception("Unexpected issue occurred [%s]", exc)
        else:
            log.error(
                "Request rejected [Code=%s, %s]", type(exc).__name__, exc
            )
        return exc


def _error(exc: Exception) -> Error:
    return Error(
        status=_status(exc), code=type(exc).__name__, message=str(exc)
    )


def _status(exc: Exception) -> int:
    return exc.status if isinstance(exc, LatcohError) else USAGE_STATUS


@dataclass
class Result(Generic[R]):
    result_code: ResultCode
    response: Optional[R] = None
    error: Optional[Error] = None

    @classmethod
    def success(cls, response: R) -> Result[R]:
        return cls(ResultCode.SUCCESS, response)

    @classmethod
    def failed(cls, exc: Exception) -> Result[R]:
        return cls(ResultCode.ERROR, None, _error(exc))

    @property
    def exit_status(self) -> int:
        if self.error is not None:
            return self.error.status
        return self.response.status if self.response is not None else 0


class ResultCode(str, Enum):
    SUCCESS = "SUCCESS"
    ERROR = "ERROR"
