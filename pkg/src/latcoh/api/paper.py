from typing import Any, Dict, Optional

from ..core import Core
from ..model.enum import Command
from ..model.request import SuiteRequest
from ..model.response import VerifyResp
from ..result import Result
from ..verify import Suite, SuiteSizes


class Paper:
    _core: Core

    def __init__(self, core: Core):
        self._core = core

    def verify(
        self,
        flip_sign: bool = False,
        corrupt: Optional[str] = None,
        quick: bool = False,
    ) -> Result[VerifyResp]:
        """Runs the self-check suite, one named check per result line.

        :param flip_sign: (optional) Use the opposite sign for α₁.
        :type flip_sign: bool
        :param corrupt: (optional) Built-in to replace by a wrong action.
        :type corrupt: Optional[str]
        :param quick: (optional) Use reduced random sample counts.
        :type quick: bool
        :rtype: Result[VerifyResp]
        """
        request = SuiteRequest(
            flip_sign=flip_sign, corrupt=corrupt, quick=quick
        )

        def _produce() -> Dict[str, Any]:
            suite = Suite(
                self._core.word_cap,
                request.flip_sign,
                request.corrupt,
                SuiteSizes.quick() if request.quick else None,
                request.seed,
            )
            return {
                "flip_sign": request.flip_sign,
                "corrupt": request.corrupt,
                "checks": suite.run(),
            }

        return self._core.send(
            VerifyResp,
            Command.VERIFY_PAPER,
            _produce,
            provenance=request.model_dump(),
        )
