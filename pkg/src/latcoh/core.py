import logging
import os
from logging import Logger
from typing import Any, Callable, Dict, Optional, Type

from pydantic import BaseModel, Field, PositiveInt

from . import utils
from .alpha import DEFAULT_WORD_CAP
from .exception import UsageError
from .glattice import CyclicAction
from .lhs import DEFAULT_IMAX
from .model.enum import Command
from .model.response import R
from .result import result

WORD_CAP_ENV: str = "LATCOH_WORD_CAP"

log: Logger = logging.getLogger(__name__)


class Settings(BaseModel):
    word_cap: PositiveInt = DEFAULT_WORD_CAP
    imax: int = Field(default=DEFAULT_IMAX, ge=2)


class Core:
    def __init__(
        self, word_cap: Optional[int] = None, imax: int = DEFAULT_IMAX
    ):
        self._settings = Settings(
            word_cap=_word_cap(word_cap, os.getenv(WORD_CAP_ENV)), imax=imax
        )

    @property
    def word_cap(self) -> int:
        return self._settings.word_cap

    @property
    def imax(self) -> int:
        return self._settings.imax

    @result
    def send(
        self,
        class_: Type[R],
        command: Command,
        producer: Callable[[], Dict[str, Any]],
        action: Optional[CyclicAction] = None,
        provenance: Optional[Dict[str, Any]] = None,
    ) -> R:
        return self._process(class_, command, producer, action, provenance)

    def _process(
        self,
        class_: Type[R],
        command: Command,
        producer: Callable[[], Dict[str, Any]],
        action: Optional[CyclicAction],
        provenance: Optional[Dict[str, Any]],
    ) -> R:
        description: Dict[str, Any] = (
            action.to_json_dict() if action is not None else {}
        )
        description.update(provenance or {})
        label: str = action.label if action is not None else command.value
        log.debug(
            "Processing command [Command=%s, Class=%s, Label=%s, WordCap=%s]",
            command.value,
            class_.__name__,
            label,
            self.word_cap,
        )
        response: R = class_(
            command=command,
            label=label,
            digest=utils.digest(description),
            **producer(),
        )
        status: int = 0 if response.verdict else 1
        log.info(
            "Command finished [Command=%s, Label=%s, Status=%s]",
            command.value,
            label,
            status,
        )
        return response.model_copy(update={"status": status})


def _word_cap(explicit: Optional[int], env: Optional[str]) -> int:
    if explicit is not None:
        return explicit
    if not env:
        return DEFAULT_WORD_CAP
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"Invalid {WORD_CAP_ENV} [{env}]") from None
