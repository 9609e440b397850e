from .__about__ import __version__
from .client import Client, init
from .glattice import (
    CyclicAction,
    counterexample,
    cyclotomic_lattice,
    direct_sum,
    dual,
    exterior_power,
    gauss_lattice,
    hom_lattice,
    make_action,
    paper_example_3,
    paper_example_6,
    permutation_lattice,
    sign_lattice,
    syzygy_lattice,
    trivial_lattice,
)
from .model.common import (
    AbelianGroupStructure,
    DifferentialMatrix,
    Error,
    TableCell,
    Witness,
)
from .model.enum import Builtin, CheckStatus, Command
from .model.request import LatticeSpecFile
from .model.response import (
    Alpha1Resp,
    CollapseResp,
    D2Resp,
    E2Resp,
    E3Resp,
    EulerResp,
    PrimeResp,
    TateResp,
    VerifyResp,
)
from .result import Result, ResultCode

__all__ = [
    "__version__",
    "AbelianGroupStructure",
    "Alpha1Resp",
    "Builtin",
    "CheckStatus",
    "Client",
    "CollapseResp",
    "Command",
    "CyclicAction",
    "D2Resp",
    "DifferentialMatrix",
    "E2Resp",
    "E3Resp",
    "Error",
    "EulerResp",
    "LatticeSpecFile",
    "PrimeResp",
    "Result",
    "ResultCode",
    "TableCell",
    "TateResp",
    "VerifyResp",
    "Witness",
    "counterexample",
    "cyclotomic_lattice",
    "direct_sum",
    "dual",
    "exterior_power",
    "gauss_lattice",
    "hom_lattice",
    "init",
    "make_action",
    "paper_example_3",
    "paper_example_6",
    "permutation_lattice",
    "sign_lattice",
    "syzygy_lattice",
    "trivial_lattice",
]
