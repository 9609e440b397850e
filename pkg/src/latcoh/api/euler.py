from typing import Any, Dict, Optional

from ..core import Core
from ..glattice import CyclicAction
from ..lhs import (
    euler_ratio_check,
    fixed_point_ratio,
    min_k,
    prime_case_report,
)
from ..model.enum import Command
from ..model.response import EulerResp, PrimeResp
from ..result import Result


class Euler:
    _core: Core

    def __init__(self, core: Core):
        self._core = core

    def ratio(
        self, action: CyclicAction, k: Optional[int] = None
    ) -> Result[EulerResp]:
        """Compares the ratio of E₂ anti-diagonal orders at 2k and 2k+1
        with the alternating product of ĥ over the exterior powers.

        :param action: Lattice with its cyclic action.
        :type action: CyclicAction
        :param k: (optional) Anti-diagonal index with 2k > n.
        :type k: Optional[int]
        :rtype: Result[EulerResp]
        """
        index: int = k if k is not None else min_k(action.n)

        def _produce() -> Dict[str, Any]:
            check = euler_ratio_check(action, index)
            return {
                "k": index,
                "lhs": str(check.lhs),
                "rhs": str(check.rhs),
                "equal": check.equal,
                "fixed_points": fixed_point_ratio(action),
            }

        return self._core.send(EulerResp, Command.EULER, _produce, action)

    def prime(self, action: CyclicAction) -> Result[PrimeResp]:
        """Checks |H¹(G; L)| = p^s and the ratio p^(p^s) for a prime
        order action free outside the origin, n = (p − 1)s.

        :param action: Lattice with its cyclic action.
        :type action: CyclicAction
        :rtype: Result[PrimeResp]
        """

        def _produce() -> Dict[str, Any]:
            report = prime_case_report(action)
            return {
                "p": report.p,
                "n": report.n,
                "s": report.s,
                "h1_order": report.h1_order,
                "expected_h1": report.expected_h1,
                "ratio": str(report.ratio),
                "expected_ratio": report.expected_ratio,
                "even_order": report.even_order,
                "odd_order": report.odd_order,
                "prediction": report.prediction,
                "consistent": report.consistent,
            }

        return self._core.send(PrimeResp, Command.PRIME, _produce, action)
