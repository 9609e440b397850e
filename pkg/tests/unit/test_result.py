import logging

from pydantic import ValidationError

from latcoh import ResultCode
from latcoh.exception import ContractViolationError, UsageError
from latcoh.model.enum import Command
from latcoh.model.response import CollapseResp, TateResp
from latcoh.result import Result, result


def _collapse(collapses, status):
    return CollapseResp(
        command=Command.COLLAPSE,
        label="x",
        digest="0" * 64,
        status=status,
        collapses=collapses,
        obstruction_nonzero=False,
        witnesses=[],
    )


@result
def _send(response=None, exc=None):
    if exc is not None:
        raise exc
    return response


def test_result_success():
    outcome = _send(_collapse(True, 0))
    assert outcome.result_code == ResultCode.SUCCESS
    assert outcome.response.collapses
    assert outcome.error is None
    assert outcome.exit_status == 0


def test_result_success_with_failed_verdict():
    outcome = _send(_collapse(False, 1))
    assert outcome.result_code == ResultCode.SUCCESS
    assert not outcome.response.verdict
    assert outcome.exit_status == 1


def test_result_usage_error():
    outcome = _send(exc=UsageError("bad input"))
    assert outcome.result_code == ResultCode.ERROR
    assert outcome.response is None
    assert outcome.error.code == "UsageError"
    assert outcome.error.message == "bad input"
    assert outcome.exit_status == 2


def test_result_contract_violation():
    outcome = _send(exc=ContractViolationError("subquotient", "not a complex"))
    assert outcome.error.status == 3
    assert "subquotient" in outcome.error.message


def test_result_validation_error():
    try:
        TateResp(command=Command.TATE, label="x", digest="")
    except ValidationError as exc:
        outcome = _send(exc=exc)
    assert outcome.error.code == "ValidationError"
    assert outcome.exit_status == 2


def test_failed_result_from_exception():
    outcome = Result.failed(UsageError("nope"))
    assert outcome.result_code == ResultCode.ERROR
    assert outcome.exit_status == 2


def test_verdict_drives_status_only_through_core():
    report = _collapse(False, 0)
    assert not report.verdict
    assert Result.success(report).exit_status == 0


def test_usage_error_is_logged_without_traceback(caplog):
    with caplog.at_level(logging.ERROR, logger="latcoh.result"):
        _send(exc=UsageError("bad input"))
    assert len(caplog.records) == 1
    assert caplog.records[0].exc_info is None
    assert "UsageError" in caplog.records[0].getMessage()


def test_internal_error_is_logged_with_traceback(caplog):
    with caplog.at_level(logging.ERROR, logger="latcoh.result"):
        _send(exc=ContractViolationError("subquotient", "not a complex"))
    assert len(caplog.records) == 1
    assert caplog.records[0].exc_info is not None
