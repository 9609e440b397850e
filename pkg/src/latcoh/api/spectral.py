from typing import Any, Dict, List, Optional

from ..alpha import compute_alpha, obstruction_nonzero
from ..core import Core
from ..glattice import CyclicAction
from ..lhs import DifferentialReport, build_e2, build_e3, d2, fold
from ..model.common import DifferentialMatrix, TableCell, Witness
from ..model.enum import Command
from ..model.response import CollapseResp, D2Resp, E3Resp
from ..result import Result


def _witnesses(report: DifferentialReport) -> List[Witness]:
    return [Witness(r=r, s=s, column=c) for r, s, c in report.witnesses]


class Spectral:
    _core: Core

    def __init__(self, core: Core):
        self._core = core

    def d2(self, action: CyclicAction, sign: int = -1) -> Result[D2Resp]:
        """Computes every d₂: E₂^{r,s+1} → E₂^{r+2,s} for r ∈ {0, 1, 2}.

        Higher columns repeat with period 2.

        :param action: Lattice with its cyclic action.
        :type action: CyclicAction
        :param sign: (optional) Convention sign relating α₁^∧ and δ.
        :type sign: int
        :rtype: Result[D2Resp]
        """

        def _produce() -> Dict[str, Any]:
            report = d2(action, self._core.word_cap, sign)
            return {
                "maps": [
                    DifferentialMatrix(
                        r=r,
                        s=s,
                        source=(r, s + 1),
                        target=(fold(r + 2), s),
                        matrix=matrix.to_rows(),
                    )
                    for (r, s), matrix in report.maps
                ],
                "all_zero": report.all_zero,
                "witnesses": _witnesses(report),
            }

        return self._core.send(D2Resp, Command.D2, _produce, action)

    def collapse(self, action: CyclicAction) -> Result[CollapseResp]:
        """Decides whether the spectral sequence collapses at E₂.

        :param action: Lattice with its cyclic action.
        :type action: CyclicAction
        :rtype: Result[CollapseResp]
        """

        def _produce() -> Dict[str, Any]:
            report = d2(action, self._core.word_cap)
            data = compute_alpha(action, self._core.word_cap)
            return {
                "collapses": report.all_zero,
                "obstruction_nonzero": obstruction_nonzero(action, data),
                "witnesses": _witnesses(report),
            }

        return self._core.send(
            CollapseResp, Command.COLLAPSE, _produce, action
        )

    def e3(
        self, action: CyclicAction, imax: Optional[int] = None
    ) -> Result[E3Resp]:
        """Computes E₃ = ker d₂ / im d₂ for i ≤ imax.

        :param action: Lattice with its cyclic action.
        :type action: CyclicAction
        :param imax: (optional) Highest column, defaults to the client's.
        :type imax: Optional[int]
        :rtype: Result[E3Resp]
        """
        i_max: int = imax if imax is not None else self._core.imax

        def _produce() -> Dict[str, Any]:
            e2_page = build_e2(action, i_max)
            e3_page = build_e3(action, i_max, self._core.word_cap)
            bidegrees = e2_page.bidegrees()
            return {
                "i_max": i_max,
                "cells": [
                    TableCell.of(i, j, e3_page.structure(i, j))
                    for i, j in bidegrees
                ],
                "changed": [
                    (i, j)
                    for i, j in bidegrees
                    if e3_page.structure(i, j).factors
                    != e2_page.structure(i, j).factors
                ],
            }

        return self._core.send(E3Resp, Command.E3, _produce, action)
