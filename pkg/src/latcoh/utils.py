from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List

from pydantic import ValidationError

from . import glattice
from .exception import UsageError
from .glattice import CyclicAction
from .model.enum import Builtin
from .model.request import LatticeSpecFile

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

BUILTIN_ARITY: Dict[Builtin, int] = {
    Builtin.PAPER3: 0,
    Builtin.PAPER6: 0,
    Builtin.SIGN: 0,
    Builtin.GAUSS: 0,
    Builtin.CYCLOTOMIC: 2,
    Builtin.SYZYGY: 2,
    Builtin.PERMUTATION: 2,
    Builtin.TRIVIAL: 2,
    Builtin.COUNTEREXAMPLE: 1,
}

BUILTIN_FACTORY: Dict[Builtin, Callable[..., CyclicAction]] = {
    Builtin.PAPER3: glattice.paper_example_3,
    Builtin.PAPER6: glattice.paper_example_6,
    Builtin.SIGN: glattice.sign_lattice,
    Builtin.GAUSS: glattice.gauss_lattice,
    Builtin.CYCLOTOMIC: glattice.cyclotomic_lattice,
    Builtin.SYZYGY: glattice.syzygy_lattice,
    Builtin.PERMUTATION: glattice.permutation_lattice,
    Builtin.TRIVIAL: glattice.trivial_lattice,
    Builtin.COUNTEREXAMPLE: glattice.counterexample,
}


def parse_builtin(name: str) -> CyclicAction:
    """Resolves names such as ``paper3`` or ``cyclotomic:5:1``."""
    head, *params = name.strip().split(":")
    try:
        builtin = Builtin(head)
    except ValueError:
        raise UsageError(f"Unknown builtin [{name}]") from None
    if len(params) != BUILTIN_ARITY[builtin]:
        raise UsageError(
            f"Builtin expects {BUILTIN_ARITY[builtin]} parameter(s) [{name}]"
        )
    try:
        args: List[int] = [int(p) for p in params]
    except ValueError:
        raise UsageError(
            f"Builtin parameters must be integers [{name}]"
        ) from None
    if any(arg < 1 for arg in args):
        raise UsageError(f"Builtin parameters must be positive [{name}]")
    action: CyclicAction = BUILTIN_FACTORY[builtin](*args)
    return action.relabel(name) if params else action


def load_spec(path: str) -> LatticeSpecFile:
    """Reads a lattice description from a JSON or TOML file."""
    file = Path(path)
    try:
        text: str = file.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"Cannot read input [{path}, {exc}]") from exc
    try:
        data: Any = (
            tomllib.loads(text)
            if file.suffix.lower() == ".toml"
            else json.loads(text)
        )
    except (ValueError, tomllib.TOMLDecodeError) as exc:
        raise UsageError(f"Malformed input [{path}, {exc}]") from exc
    try:
        return LatticeSpecFile.model_validate(data)
    except ValidationError as exc:
        raise UsageError(f"Invalid input [{path}, {exc}]") from exc


def action_from_spec(spec: LatticeSpecFile) -> CyclicAction:
    if spec.builtin is not None:
        action: CyclicAction = parse_builtin(spec.builtin)
        return action.relabel(spec.label) if spec.label else action
    if spec.m is None or spec.matrix is None:
        raise UsageError("Input needs m and matrix")
    return glattice.make_action(spec.m, spec.matrix, spec.label or "input")


def canonical_json(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def digest(payload: Dict[str, Any]) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()
