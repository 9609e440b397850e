from typing import Any, Dict, Optional

from ..cohomology import tate_table, tate_vanishing_violations
from ..core import Core
from ..glattice import CyclicAction, is_free_outside_origin
from ..lhs import build_e2, checkerboard_violations
from ..model.common import TableCell
from ..model.enum import Command
from ..model.response import E2Resp, TateResp
from ..result import Result


class Cohomology:
    _core: Core

    def __init__(self, core: Core):
        self._core = core

    def tate(
        self, action: CyclicAction, jmax: Optional[int] = None
    ) -> Result[TateResp]:
        """Computes Ĥⁱ(G; Λʲ L^∧) for i ∈ {0, 1} and j = 0..jmax.

        The report fails when the action is free outside the origin and
        some cell with i + j odd is non-zero.

        :param action: Lattice with its cyclic action.
        :type action: CyclicAction
        :param jmax: (optional) Highest exterior power, defaults to n.
        :type jmax: Optional[int]
        :rtype: Result[TateResp]
        """

        def _produce() -> Dict[str, Any]:
            return {
                "free_outside_origin": is_free_outside_origin(action),
                "cells": [
                    TableCell.of(i, j, structure)
                    for i, j, structure in tate_table(action, jmax)
                ],
                "violations": tate_vanishing_violations(action, jmax),
            }

        return self._core.send(TateResp, Command.TATE, _produce, action)

    def e2(
        self, action: CyclicAction, imax: Optional[int] = None
    ) -> Result[E2Resp]:
        """Computes the E₂ page Hⁱ(G; Λʲ L^∧) for i ≤ imax.

        :param action: Lattice with its cyclic action.
        :type action: CyclicAction
        :param imax: (optional) Highest column, defaults to the client's.
        :type imax: Optional[int]
        :rtype: Result[E2Resp]
        """
        i_max: int = imax if imax is not None else self._core.imax

        def _produce() -> Dict[str, Any]:
            page = build_e2(action, i_max)
            return {
                "i_max": i_max,
                "cells": [
                    TableCell.of(i, j, page.structure(i, j))
                    for i, j in page.bidegrees()
                ],
                "checkerboard_violations": checkerboard_violations(page),
            }

        return self._core.send(E2Resp, Command.E2, _produce, action)
