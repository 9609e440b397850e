from enum import Enum


class Command(str, Enum):
    TATE = "tate"
    ALPHA1 = "alpha1"
    D2 = "d2"
    COLLAPSE = "collapse"
    E2 = "e2"
    E3 = "e3"
    EULER = "euler"
    PRIME = "prime"
    VERIFY_PAPER = "verify-paper"


class Builtin(str, Enum):
    PAPER3 = "paper3"
    PAPER6 = "paper6"
    CYCLOTOMIC = "cyclotomic"
    SYZYGY = "syzygy"
    PERMUTATION = "permutation"
    SIGN = "sign"
    GAUSS = "gauss"
    TRIVIAL = "trivial"
    COUNTEREXAMPLE = "counterexample"


class CheckStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
