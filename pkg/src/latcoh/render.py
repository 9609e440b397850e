"""Plain-text rendering of reports; verdicts match the JSON output."""

from typing import Callable, Dict, List, Sequence, Tuple, Type

from .model.common import AbelianGroupStructure, TableCell
from .model.response import (
    Alpha1Resp,
    BaseReport,
    CollapseResp,
    D2Resp,
    E2Resp,
    E3Resp,
    ErrorResp,
    EulerResp,
    PrimeResp,
    TateResp,
    VerifyResp,
)


def _header(report: BaseReport) -> str:
    return (
        f"{report.command.value} [{report.label}]"
        f" digest={report.digest[:16]} status={report.status}"
    )


def _cell(cell: TableCell) -> str:
    return str(
        AbelianGroupStructure.model_construct(
            free_rank=cell.free_rank, torsion=cell.torsion
        )
    )


def _grid(cells: Sequence[TableCell], columns: Sequence[int]) -> List[str]:
    lookup: Dict[Tuple[int, int], str] = {
        (c.i, c.j): _cell(c) for c in cells
    }
    rows: List[int] = sorted({c.j for c in cells}, reverse=True)
    width: int = max([len(v) for v in lookup.values()] + [6])
    lines: List[str] = [
        "j\\i  " + " ".join(f"{i:>{width}}" for i in columns)
    ]
    for j in rows:
        lines.append(
            f"{j:>3}  "
            + " ".join(f"{lookup.get((i, j), ''):>{width}}" for i in columns)
        )
    return lines


def _matrix(rows: Sequence[Sequence[int]]) -> List[str]:
    return ["  [" + " ".join(f"{x:>3}" for x in row) + " ]" for row in rows]


def _tate(report: TateResp) -> List[str]:
    lines: List[str] = _grid(report.cells, (0, 1))
    lines.append(f"free outside origin: {report.free_outside_origin}")
    if report.violations:
        lines.append(f"non-zero cells with i+j odd: {report.violations}")
    return lines


def _alpha1(report: Alpha1Resp) -> List[str]:
    lines: List[str] = ["delta (columns are images of e_1..e_n):"]
    lines += _matrix(report.delta)
    lines.append(f"alpha1 = {report.sign:+d} * delta")
    lines.append("[α₁] ≠ 0" if report.obstruction_nonzero else "[α₁] = 0")
    lines.append(f"pairings with invariant witnesses: {report.pairing_values}")
    if report.witness_pairing is not None:
        lines.append(f"pairing with given witness: {report.witness_pairing}")
    return lines


def _d2(report: D2Resp) -> List[str]:
    lines: List[str] = []
    for diff in report.maps:
        if any(any(row) for row in diff.matrix):
            lines.append(f"d2 {diff.source} -> {diff.target}:")
            lines += _matrix(diff.matrix)
    lines.append("all d2 vanish" if report.all_zero else "d2 is non-zero")
    return lines


def _collapse(report: CollapseResp) -> List[str]:
    lines: List[str] = [
        f"collapses at d2: {'yes' if report.collapses else 'no'}",
        f"[α₁] ≠ 0: {report.obstruction_nonzero}",
    ]
    lines += [
        f"witness r={w.r} s={w.s} column={w.column}"
        for w in report.witnesses
    ]
    return lines


def _e2(report: E2Resp) -> List[str]:
    lines: List[str] = _grid(report.cells, range(report.i_max + 1))
    if report.checkerboard_violations:
        broken = report.checkerboard_violations
        lines.append(f"checkerboard broken at {broken}")
    return lines


def _e3(report: E3Resp) -> List[str]:
    lines: List[str] = _grid(report.cells, range(report.i_max + 1))
    lines.append(f"changed from E2: {report.changed or 'none'}")
    return lines


def _euler(report: EulerResp) -> List[str]:
    mark: str = "=" if report.equal else "≠"
    lines: List[str] = [f"k={report.k}: {report.lhs} {mark} {report.rhs}"]
    if report.fixed_points is not None:
        lines.append(f"fixed points present, ratio 1: {report.fixed_points}")
    return lines


def _prime(report: PrimeResp) -> List[str]:
    return [
        f"p={report.p} n={report.n} s={report.s}",
        f"|H1| = {report.h1_order} (expected {report.expected_h1})",
        f"ratio = {report.ratio} (expected {report.expected_ratio})",
        f"anti-diagonal orders: even {report.even_order},"
        f" odd {report.odd_order}",
        f"prediction: {report.prediction}",
        f"consistent: {report.consistent}",
    ]


def _verify(report: VerifyResp) -> List[str]:
    return [
        f"{check.status.value} {check.name}"
        + (f" ({check.detail})" if check.detail else "")
        for check in report.checks
    ]


RENDERERS: Dict[Type[BaseReport], Callable[..., List[str]]] = {
    TateResp: _tate,
    Alpha1Resp: _alpha1,
    D2Resp: _d2,
    CollapseResp: _collapse,
    E2Resp: _e2,
    E3Resp: _e3,
    EulerResp: _euler,
    PrimeResp: _prime,
    VerifyResp: _verify,
}


def render(report: BaseReport) -> str:
    body: List[str] = RENDERERS.get(type(report), lambda _: [])(report)
    return "\n".join([_header(report)] + body)


def render_error(report: ErrorResp) -> str:
    return (
        f"{report.command.value} failed [{report.error.code}]"
        f" status={report.status}: {report.error.message}"
    )
