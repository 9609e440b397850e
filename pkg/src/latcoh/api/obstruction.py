from typing import Any, Dict, Optional, Sequence

from ..alpha import (
    compute_alpha,
    obstruction_nonzero,
    pairing_value,
    pairing_values,
)
from ..core import Core
from ..glattice import CyclicAction
from ..model.enum import Command
from ..model.response import Alpha1Resp
from ..result import Result


class Obstruction:
    _core: Core

    def __init__(self, core: Core):
        self._core = core

    def alpha1(
        self,
        action: CyclicAction,
        witness: Optional[Sequence[int]] = None,
        sign: int = -1,
    ) -> Result[Alpha1Resp]:
        """Computes δ, α₁^∧ and whether [α₁] ∈ Ĥ⁰(G; hom(L, Λ²L)) is
        non-zero, with the pairing against every invariant witness.

        :param action: Lattice with its cyclic action.
        :type action: CyclicAction
        :param witness: (optional) Invariant element of Λ²L^∧ ⊗ L.
        :type witness: Optional[Sequence[int]]
        :param sign: (optional) Convention sign relating α₁^∧ and δ.
        :type sign: int
        :rtype: Result[Alpha1Resp]
        """

        def _produce() -> Dict[str, Any]:
            data = compute_alpha(action, self._core.word_cap, sign)
            return {
                "delta": data.delta.to_rows(),
                "alpha1": data.alpha1_wedge.to_rows(),
                "sign": sign,
                "obstruction_nonzero": obstruction_nonzero(action, data),
                "pairing_values": pairing_values(action, data),
                "witness_pairing": (
                    pairing_value(action, witness, data)
                    if witness is not None
                    else None
                ),
            }

        return self._core.send(Alpha1Resp, Command.ALPHA1, _produce, action)
