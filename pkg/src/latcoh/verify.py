"""Self-check suite over the built-in lattices and seeded random actions.

Every check returns a :class:`CheckResult`; an exception raised inside a
check marks that check as failed and the suite carries on.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from logging import Logger
from math import gcd, prod
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from sympy import divisors

from . import utils
from .alpha import (
    compute_alpha,
    delta_from_words,
    lift_has_order,
    obstruction_nonzero,
    pairing_value,
    paper_witness,
    syzygy_lift,
)
from .cohomology import (
    bar_oracle,
    group_cohomology,
    h_hat,
    tate_vanishing_violations,
)
from .exception import LatcohError, UsageError
from .glattice import (
    CyclicAction,
    counterexample,
    cyclotomic_lattice,
    direct_sum,
    dual,
    exterior_power,
    make_action,
    paper_example_3,
    permutation_lattice,
    random_action,
    trivial_lattice,
    wedge,
    wedge_basis,
)
from .intlinalg import (
    IntegerMatrix,
    determinant,
    hermite_normal_form,
    invariant_factors,
)
from .lhs import (
    DifferentialReport,
    build_e2,
    build_e3,
    d2,
    direct_sum_check,
    euler_ratio_check,
    fixed_point_ratio,
    min_k,
    prime_case_report,
    witness_summary,
)
from .model.enum import CheckStatus
from .model.response import CheckResult

log: Logger = logging.getLogger(__name__)

CYCLOTOMIC_FAMILY: Tuple[Tuple[int, int], ...] = (
    (2, 1),
    (3, 1),
    (2, 2),
    (5, 1),
    (7, 1),
    (2, 3),
    (3, 2),
)
PAIRED_RANK_LIMIT: int = 8
PRIME_CASES: Tuple[Tuple[int, int], ...] = ((2, 1), (2, 2), (3, 1), (5, 1))
EULER_BUILTINS: Tuple[str, ...] = (
    "paper3",
    "paper6",
    "sign",
    "gauss",
    "cyclotomic:3:1",
    "cyclotomic:5:1",
    "syzygy:4:1",
    "syzygy:6:2",
    "syzygy:6:3",
    "permutation:4:1",
    "permutation:6:2",
    "trivial:2:1",
    "trivial:3:2",
    "counterexample:8",
)
KNOWN_RATIOS: Dict[str, int] = {
    "sign": 4,
    "trivial:2:1": 1,
    "cyclotomic:3:1": 27,
}

CORRUPTIONS: Dict[str, Callable[[], CyclicAction]] = {
    "paper3": lambda: make_action(
        4, [[0, -1, 0], [1, 0, 0], [0, 0, 1]], "paper3"
    ),
    "paper6": lambda: direct_sum(
        paper_example_3(), trivial_lattice(4, 3)
    ).relabel("paper6"),
    "sign": lambda: trivial_lattice(2, 1).relabel("sign"),
}


@dataclass(frozen=True)
class SuiteSizes:
    random_collapse: int = 200
    random_euler: int = 50
    oracle: int = 100
    leibniz: int = 500
    smith: int = 60

    @classmethod
    def quick(cls) -> SuiteSizes:
        return cls(20, 5, 10, 50, 10)


class Suite:
    """Runs every named check with a fixed seed."""

    def __init__(
        self,
        word_cap: int,
        flip_sign: bool = False,
        corrupt: Optional[str] = None,
        sizes: Optional[SuiteSizes] = None,
        seed: int = 20240601,
    ):
        if corrupt is not None and corrupt not in CORRUPTIONS:
            raise UsageError(
                f"Unknown corruption target [{corrupt},"
                f" Known={sorted(CORRUPTIONS)}]"
            )
        self._word_cap = word_cap
        self._sign = 1 if flip_sign else -1
        self._corrupt = corrupt
        self._sizes = sizes or SuiteSizes()
        self._seed = seed

    def run(self) -> List[CheckResult]:
        results: List[CheckResult] = []
        for name, check in self._checks():
            try:
                failure: Optional[str] = check()
            except LatcohError as exc:
                failure = f"{type(exc).__name__}: {exc}"
            status = CheckStatus.FAIL if failure else CheckStatus.PASS
            log.info("Check finished [Name=%s, Status=%s]", name, status)
            results.append(
                CheckResult(name=name, status=status, detail=failure or "")
            )
        return results

    def _checks(self) -> List[Tuple[str, Callable[[], Optional[str]]]]:
        return [
            ("obstruction-example", self.obstruction_example),
            ("paper3-collapse", self.paper3_collapse),
            ("counterexample", self.counterexample),
            ("tate-vanishing", self.tate_vanishing),
            ("free-collapse", self.free_collapse),
            ("random-collapse", self.random_collapse),
            ("prime-case", self.prime_case),
            ("euler-ratio", self.euler_ratio),
            ("permutation-h-hat", self.permutation_h_hat),
            ("bar-oracle", self.bar_oracle),
            ("leibniz", self.leibniz),
            ("alpha-equivariance", self.alpha_equivariance),
            ("lift-independence", self.lift_independence),
            ("d2-square-zero", self.d2_square_zero),
            ("smith-brute-force", self.smith_brute_force),
            ("small-rank-obstruction", self.small_rank_obstruction),
            ("fixed-point-ratio", self.fixed_point_ratio),
            ("direct-sum-construction", self.direct_sum_construction),
            ("inflated-counterexample", self.inflated_counterexample),
            ("e3-drop", self.e3_drop),
        ]

    def _builtin(self, name: str) -> CyclicAction:
        if name == self._corrupt:
            return CORRUPTIONS[name]()
        return utils.parse_builtin(name)

    def _rng(self, salt: int) -> random.Random:
        return random.Random(self._seed * 1000 + salt)

    def _d2(self, a: CyclicAction) -> DifferentialReport:
        return d2(a, self._word_cap, self._sign)

    def _family(self) -> Iterator[CyclicAction]:
        for p, r in CYCLOTOMIC_FAMILY:
            name = f"cyclotomic:{p}:{r}"
            single: CyclicAction = self._builtin(name)
            yield single
            if 2 * single.n <= PAIRED_RANK_LIMIT:
                yield direct_sum(single, single).relabel(f"{name}+{name}")

    def obstruction_example(self) -> Optional[str]:
        a: CyclicAction = self._builtin("paper3")
        data = compute_alpha(a, self._word_cap, self._sign)
        expected = ((0, 0, 0), (0, 0, 0), (-1, 0, 0))
        if tuple(data.delta.columns()) != expected:
            return f"delta columns {data.delta.columns()}"
        if not obstruction_nonzero(a, data):
            return "obstruction vanishes"
        value: int = pairing_value(a, paper_witness(), data)
        return None if value == 2 else f"pairing {value} mod 4"

    def paper3_collapse(self) -> Optional[str]:
        report = self._d2(self._builtin("paper3"))
        return None if report.all_zero else f"witnesses {report.witnesses}"

    def counterexample(self) -> Optional[str]:
        six: CyclicAction = self._builtin("paper6")
        three: CyclicAction = self._builtin("paper3")
        expected = direct_sum(three, dual(exterior_power(three, 2)))
        if six.m != expected.m or six.action != expected.action:
            return "block structure differs from X + dual(Λ²X)"
        report = self._d2(six)
        if report.all_zero:
            return "all d2 vanish"
        if not any(s == 2 for _, s, _ in report.witnesses):
            return f"no witness with s = 2 {witness_summary(report)}"
        return None

    def tate_vanishing(self) -> Optional[str]:
        for a in self._family():
            violations = tate_vanishing_violations(a)
            if violations:
                return f"{a.label}: {violations}"
        return None

    def free_collapse(self) -> Optional[str]:
        for a in self._family():
            if not self._d2(a).all_zero:
                return f"{a.label} has a non-zero d2"
        return None

    def random_collapse(self) -> Optional[str]:
        rng = self._rng(6)
        for k in range(self._sizes.random_collapse):
            a = random_action(rng, rng.choice((2, 3, 6)), 4, f"random-{k}")
            if not self._d2(a).all_zero:
                return f"{a.label} m={a.m} matrix={a.action.to_rows()}"
        return None

    def prime_case(self) -> Optional[str]:
        for p, s in PRIME_CASES:
            a: CyclicAction = self._builtin(f"cyclotomic:{p}:1")
            for _ in range(s - 1):
                a = direct_sum(a, cyclotomic_lattice(p, 1))
            report = prime_case_report(a)
            if report.n != (p - 1) * s or not report.consistent:
                return (
                    f"p={p}, s={s}: |H1|={report.h1_order},"
                    f" ratio={report.ratio}"
                )
            for k in range(min_k(a.n), min_k(a.n) + 3):
                check = euler_ratio_check(a, k)
                if check.lhs != report.expected_ratio or not check.equal:
                    return f"p={p}, s={s}, k={k}: {check.lhs} vs {check.rhs}"
        return None

    def euler_ratio(self) -> Optional[str]:
        rng = self._rng(8)
        lattices: List[CyclicAction] = [
            self._builtin(name) for name in EULER_BUILTINS
        ]
        lattices += [
            random_action(rng, rng.randint(2, 6), 4, f"random-{k}")
            for k in range(self._sizes.random_euler)
        ]
        for a in lattices:
            for k in range(min_k(a.n), min_k(a.n) + 3):
                check = euler_ratio_check(a, k)
                if not check.equal:
                    return f"{a.label}, k={k}: {check.lhs} != {check.rhs}"
                expected = KNOWN_RATIOS.get(a.label)
                if expected is not None and check.lhs != expected:
                    return f"{a.label}, k={k}: {check.lhs} vs {expected}"
        return None

    def permutation_h_hat(self) -> Optional[str]:
        for h in divisors(12):
            value: Fraction = h_hat(permutation_lattice(12, int(h)))
            if value != h:
                return f"h={h}: {value}"
        return None

    def bar_oracle(self) -> Optional[str]:
        rng = self._rng(10)
        for k in range(self._sizes.oracle):
            a = random_action(rng, rng.randint(1, 6), 3, f"random-{k}")
            for i in range(4):
                ours = group_cohomology(a, i).structure
                oracle = bar_oracle(a, i)
                if ours.factors != oracle.factors:
                    return f"{a.label}, i={i}: {ours} vs {oracle}"
        return None

    def leibniz(self) -> Optional[str]:
        rng = self._rng(11)
        lattices: List[CyclicAction] = [
            self._builtin("paper3"),
            self._builtin("paper6"),
        ]
        for _ in range(self._sizes.leibniz):
            a: CyclicAction = rng.choice(lattices)
            data = compute_alpha(a, self._word_cap, self._sign)
            p: int = rng.randint(0, a.n - 1)
            q: int = rng.randint(0, a.n - 1 - p)
            u = [rng.randint(-3, 3) for _ in wedge_basis(a.n, p)]
            v = [rng.randint(-3, 3) for _ in wedge_basis(a.n, q)]
            left = data.alpha_s_wedge(p + q).apply(wedge(u, p, v, q, a.n))
            first = wedge(data.alpha_s_wedge(p).apply(u), p + 1, v, q, a.n)
            second = wedge(u, p, data.alpha_s_wedge(q).apply(v), q + 1, a.n)
            right = tuple(x + (-1) ** p * y for x, y in zip(first, second))
            if left != right:
                return f"{a.label}: p={p}, q={q}, u={u}, v={v}"
        return None

    def alpha_equivariance(self) -> Optional[str]:
        rng = self._rng(12)
        for k in range(self._sizes.random_euler):
            a = random_action(rng, rng.randint(2, 6), 4, f"random-{k}")
            compute_alpha(a, self._word_cap, self._sign)
        for name in ("paper3", "paper6", "cyclotomic:5:1", "syzygy:6:2"):
            a = self._builtin(name)
            data = compute_alpha(a, self._word_cap, self._sign)
            if data.delta != delta_from_words(a, self._word_cap):
                return f"{a.label}: truncated and word iterations disagree"
        for m, d in ((4, 1), (6, 2), (6, 3)):
            if not lift_has_order(syzygy_lift(m, d), m, self._word_cap):
                return f"syzygy lift ({m}, {d}) does not have order {m}"
        return None

    def lift_independence(self) -> Optional[str]:
        rng = self._rng(13)
        lattices: List[CyclicAction] = [
            self._builtin("paper3"),
            self._builtin("paper6"),
        ] + [
            random_action(rng, rng.choice((2, 4, 6)), 4, f"random-{k}")
            for k in range(self._sizes.random_euler)
        ]
        for a in lattices:
            ascending = compute_alpha(a, self._word_cap, self._sign)
            descending = compute_alpha(a, self._word_cap, self._sign, True)
            if obstruction_nonzero(a, ascending) != obstruction_nonzero(
                a, descending
            ):
                return f"{a.label}: obstruction depends on the lift"
            forward = d2(a, self._word_cap, self._sign)
            backward = d2(a, self._word_cap, self._sign, True)
            if forward.maps != backward.maps:
                return f"{a.label}: d2 depends on the lift"
        return None

    def d2_square_zero(self) -> Optional[str]:
        # d2 itself raises when a composite is non-zero
        for name in ("paper3", "paper6", "counterexample:8", "syzygy:4:1"):
            self._d2(self._builtin(name))
        return None

    def smith_brute_force(self) -> Optional[str]:
        rng = self._rng(15)
        for _ in range(self._sizes.smith):
            rows: int = rng.randint(1, 5)
            cols: int = rng.randint(1, 5)
            matrix = IntegerMatrix.from_rows(
                [
                    [rng.randint(-3, 3) for _ in range(cols)]
                    for _ in range(rows)
                ]
            )
            factors = invariant_factors(matrix)
            failure = _minor_mismatch(matrix, factors)
            if failure:
                return failure
            if len(factors) < rows or not 0 < prod(factors) <= 200:
                continue
            failure = _brute_force_mismatch(matrix, factors)
            if failure:
                return failure
        return None

    def small_rank_obstruction(self) -> Optional[str]:
        rng = self._rng(16)
        for k in range(self._sizes.random_euler):
            a = random_action(rng, rng.randint(2, 6), 2, f"random-{k}")
            data = compute_alpha(a, self._word_cap, self._sign)
            if obstruction_nonzero(a, data):
                return f"{a.label} matrix={a.action.to_rows()}"
        return None

    def fixed_point_ratio(self) -> Optional[str]:
        rng = self._rng(17)
        lattices: List[CyclicAction] = [
            self._builtin(name)
            for name in ("trivial:2:1", "trivial:5:2", "permutation:6:2")
        ] + [
            random_action(rng, rng.randint(2, 6), 3, f"random-{k}")
            for k in range(self._sizes.random_euler)
        ]
        for a in lattices:
            if fixed_point_ratio(a) is False:
                return f"{a.label}: ratio is not 1"
        return None

    def direct_sum_construction(self) -> Optional[str]:
        check = direct_sum_check(
            self._builtin("paper3"), self._word_cap, self._sign
        )
        if not check.obstruction:
            return "obstruction vanishes"
        if not check.witness_at_s2:
            return "no d2 witness with s = 2"
        return None

    def inflated_counterexample(self) -> Optional[str]:
        report = self._d2(counterexample(8))
        return None if not report.all_zero else "d2 vanishes after inflation"

    def e3_drop(self) -> Optional[str]:
        a: CyclicAction = self._builtin("paper6")
        report = self._d2(a)
        e2 = build_e2(a)
        e3 = build_e3(a, word_cap=self._word_cap)
        for r, s, _ in report.witnesses:
            before = e2.structure(r + 2, s).order()
            after = e3.structure(r + 2, s).order()
            if before is not None and after is not None and after < before:
                return None
        return f"no strict drop at {report.witnesses}"


def _minor_mismatch(
    matrix: IntegerMatrix, factors: Tuple[int, ...]
) -> Optional[str]:
    """Compares d₁⋯d_k with the gcd of all k×k minors."""
    rows, cols = matrix.shape
    grid: List[List[int]] = matrix.to_rows()
    for k in range(1, min(rows, cols) + 1):
        minors: int = 0
        for picked in combinations(range(rows), k):
            for chosen in combinations(range(cols), k):
                minors = gcd(
                    minors,
                    determinant(
                        IntegerMatrix.from_rows(
                            [[grid[i][j] for j in chosen] for i in picked]
                        )
                    ),
                )
        expected: int = prod(factors[:k]) if k <= len(factors) else 0
        if minors != expected:
            return f"{grid}: minors of size {k} give {minors} vs {expected}"
    return None


def _brute_force_mismatch(
    matrix: IntegerMatrix, factors: Tuple[int, ...]
) -> Optional[str]:
    """Counts d-torsion of ℤʳ/im(M) by enumerating a box of coset
    representatives and compares with the Smith prediction."""
    hnf = hermite_normal_form(matrix.transpose())
    size: int = matrix.rows
    pivots: List[int] = [hnf[i, i] for i in range(size)]

    def reduce(vector: List[int]) -> List[int]:
        out = list(vector)
        for i in range(size):
            q = out[i] // pivots[i]
            if q:
                for c in range(size):
                    out[c] -= q * hnf[i, c]
        return out

    reps: List[List[int]] = [[]]
    for pivot in pivots:
        reps = [rep + [x] for rep in reps for x in range(pivot)]
    order: int = prod(factors)
    if len(reps) != order:
        return f"{matrix.to_rows()}: {len(reps)} cosets vs order {order}"
    for d in divisors(order):
        counted: int = sum(
            1 for rep in reps if not any(reduce([d * x for x in rep]))
        )
        predicted: int = prod(gcd(int(d), f) for f in factors)
        if counted != predicted:
            return f"{matrix.to_rows()}: |G[{d}]| {counted} vs {predicted}"
    return None
