from __future__ import annotations

import argparse
import logging
import sys
from logging import Logger
from typing import Any, List, Optional, Sequence

from pydantic import ValidationError

from . import utils
from .__about__ import __version__
from .alpha import paper_witness
from .client import Client, init
from .exception import LatcohError, UsageError
from .glattice import CyclicAction
from .lhs import DEFAULT_IMAX
from .model.enum import Command
from .model.response import BaseReport, ErrorResp
from .render import render, render_error
from .result import Result

log: Logger = logging.getLogger(__name__)


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument(
        "--word-cap",
        type=int,
        default=None,
        help="longest free word while iterating the lift",
    )
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log progress to stderr, twice for debug output",
    )
    return common


def _lattice(common: argparse.ArgumentParser) -> argparse.ArgumentParser:
    lattice = argparse.ArgumentParser(add_help=False, parents=[common])
    source = lattice.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="lattice file, JSON or TOML")
    source.add_argument("--builtin", help="built-in lattice name")
    return lattice


def _parser() -> argparse.ArgumentParser:
    common = _common()
    lattice = _lattice(common)
    parser = argparse.ArgumentParser(
        prog="latcoh",
        description="Cohomology of ℤ/m acting on lattices.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    tate = sub.add_parser(
        Command.TATE.value, parents=[lattice], help="Tate cohomology table"
    )
    tate.add_argument("--jmax", type=int, default=None)
    alpha1 = sub.add_parser(
        Command.ALPHA1.value, parents=[lattice], help="δ, α₁ and [α₁]"
    )
    alpha1.add_argument(
        "--witness",
        default=None,
        help="comma separated invariant element of Λ²L^∧ ⊗ L",
    )
    sub.add_parser(Command.D2.value, parents=[lattice], help="d₂ matrices")
    sub.add_parser(
        Command.COLLAPSE.value,
        parents=[lattice],
        help="collapse at d₂, exit 1 when it fails",
    )
    for command, label in ((Command.E2, "E₂"), (Command.E3, "E₃")):
        page = sub.add_parser(
            command.value, parents=[lattice], help=f"{label} page"
        )
        page.add_argument("--imax", type=int, default=DEFAULT_IMAX)
    euler = sub.add_parser(
        Command.EULER.value, parents=[lattice], help="order-ratio identity"
    )
    euler.add_argument("--k", type=int, default=None)
    sub.add_parser(
        Command.PRIME.value, parents=[lattice], help="prime order checks"
    )
    verify = sub.add_parser(
        Command.VERIFY_PAPER.value,
        parents=[common],
        help="run the self-check suite",
    )
    verify.add_argument("--flip-sign", action="store_true")
    verify.add_argument("--corrupt", default=None)
    verify.add_argument("--quick", action="store_true")
    return parser


def _configure_logging(verbosity: int) -> None:
    level: int = {0: logging.WARNING, 1: logging.INFO}.get(
        verbosity, logging.DEBUG
    )
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )


def _load(args: argparse.Namespace) -> CyclicAction:
    if args.input is not None:
        return utils.action_from_spec(utils.load_spec(args.input))
    return utils.parse_builtin(args.builtin)


def _witness(args: argparse.Namespace) -> Optional[List[int]]:
    if args.witness is not None:
        try:
            return [int(x) for x in args.witness.split(",")]
        except ValueError:
            raise UsageError(f"Malformed witness [{args.witness}]") from None
    return list(paper_witness()) if args.builtin == "paper3" else None


def _dispatch(
    client: Client, command: Command, args: argparse.Namespace
) -> Result[Any]:
    if command == Command.VERIFY_PAPER:
        return client.paper.verify(args.flip_sign, args.corrupt, args.quick)
    action: CyclicAction = _load(args)
    if command == Command.TATE:
        return client.cohomology.tate(action, args.jmax)
    if command == Command.ALPHA1:
        return client.obstruction.alpha1(action, _witness(args))
    if command == Command.D2:
        return client.spectral.d2(action)
    if command == Command.COLLAPSE:
        return client.spectral.collapse(action)
    if command == Command.E2:
        return client.cohomology.e2(action, args.imax)
    if command == Command.E3:
        return client.spectral.e3(action, args.imax)
    if command == Command.EULER:
        return client.euler.ratio(action, args.k)
    return client.euler.prime(action)


def _emit(command: Command, outcome: Result[Any], as_json: bool) -> None:
    if outcome.response is not None:
        report: BaseReport = outcome.response
        print(report.model_dump_json() if as_json else render(report))
        return
    if outcome.error is None:
        return
    failure = ErrorResp(
        command=command, status=outcome.error.status, error=outcome.error
    )
    if as_json:
        print(failure.model_dump_json())
    else:
        print(render_error(failure), file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    _configure_logging(args.verbose)
    command = Command(args.command)
    try:
        client: Client = init(word_cap=args.word_cap)
        outcome: Result[Any] = _dispatch(client, command, args)
    except (LatcohError, ValidationError) as exc:
        log.debug("Command rejected [%s]", exc)
        outcome = Result.failed(exc)
    _emit(command, outcome, args.json)
    return outcome.exit_status


if __name__ == "__main__":
    sys.exit(main())
