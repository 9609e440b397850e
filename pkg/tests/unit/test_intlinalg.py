import random
from itertools import combinations
from math import gcd, prod

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from latcoh import AbelianGroupStructure
from latcoh.exception import ContractViolationError, UsageError
from latcoh.intlinalg import (
    IntegerMatrix,
    cokernel_structure,
    determinant,
    hermite_normal_form,
    image_basis,
    induced_map,
    inverse_unimodular,
    invariant_factors,
    kernel_basis,
    kronecker,
    smith_normal_form,
    solve_integral,
    span_quotient,
    subquotient,
)


def _random_matrix(rng, rows, cols, bound=6):
    return IntegerMatrix.from_rows(
        [
            [rng.randint(-bound, bound) for _ in range(cols)]
            for _ in range(rows)
        ]
    )


def _sympy_factors(matrix):
    diag = sympy_snf(Matrix(matrix.to_rows()), domain=ZZ)
    size = min(matrix.shape)
    return sorted(abs(int(diag[k, k])) for k in range(size) if diag[k, k])


def test_smith_normal_form_decomposes(rng):
    for _ in range(30):
        matrix = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        snf = smith_normal_form(matrix)
        assert snf.u @ matrix @ snf.v == snf.d
        assert (snf.u @ snf.u_inv).is_identity()
        assert (snf.v @ snf.v_inv).is_identity()
        factors = snf.invariant_factors
        assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
        assert all(f > 0 for f in factors)


def test_invariant_factors_match_sympy(rng):
    for _ in range(30):
        matrix = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        assert sorted(invariant_factors(matrix)) == _sympy_factors(matrix)


def test_smith_normal_form_of_zero_matrix():
    snf = smith_normal_form(IntegerMatrix.zeros(2, 3))
    assert snf.rank == 0
    assert snf.invariant_factors == ()


def test_cokernel_structure():
    matrix = IntegerMatrix.from_rows([[2, 0, 0], [0, 6, 0]])
    structure = cokernel_structure(matrix)
    assert structure.free_rank == 0
    assert structure.torsion == (2, 6)
    assert cokernel_structure(IntegerMatrix.zeros(2, 0)).free_rank == 2


def test_determinant_matches_sympy(rng):
    for _ in range(20):
        size = rng.randint(1, 5)
        matrix = _random_matrix(rng, size, size)
        assert determinant(matrix) == Matrix(matrix.to_rows()).det()


def test_determinant_of_empty_matrix():
    assert determinant(IntegerMatrix.identity(0)) == 1


def test_determinant_non_square():
    with pytest.raises(UsageError):
        determinant(IntegerMatrix.zeros(2, 3))


def test_hermite_normal_form_shape():
    hnf = hermite_normal_form(IntegerMatrix.from_rows([[2, 4], [3, 5]]))
    assert hnf.to_rows() == [[1, 1], [0, 2]]


def test_kernel_basis_is_saturated(rng):
    for _ in range(20):
        matrix = _random_matrix(rng, rng.randint(1, 3), rng.randint(2, 5))
        kernel = kernel_basis(matrix)
        assert (matrix @ kernel).is_zero()
        snf = smith_normal_form(matrix)
        assert kernel.cols == matrix.cols - snf.rank
        if kernel.cols:
            assert set(invariant_factors(kernel)) <= {1}


def test_image_basis_spans_columns(rng):
    matrix = _random_matrix(rng, 3, 5)
    basis = image_basis(matrix)
    for col in matrix.columns():
        assert solve_integral(basis, col) is not None
    for col in basis.columns():
        assert solve_integral(matrix, col) is not None


def test_solve_integral():
    matrix = IntegerMatrix.from_rows([[2, 0], [0, 3]])
    assert solve_integral(matrix, [4, 9]) == (2, 3)
    assert solve_integral(matrix, [1, 0]) is None
    with pytest.raises(UsageError):
        solve_integral(matrix, [1])


def test_inverse_unimodular(rng):
    matrix = IntegerMatrix.from_rows([[2, 1], [1, 1]])
    assert (matrix @ inverse_unimodular(matrix)).is_identity()
    with pytest.raises(UsageError):
        inverse_unimodular(IntegerMatrix.from_rows([[2, 0], [0, 1]]))


def test_kronecker():
    left = IntegerMatrix.from_rows([[1, 2], [0, 1]])
    right = IntegerMatrix.from_rows([[0, 1], [1, 0]])
    assert kronecker(left, right).to_rows() == [
        [0, 1, 0, 2],
        [1, 0, 2, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ]


def test_ragged_rows():
    with pytest.raises(UsageError):
        IntegerMatrix.from_rows([[1, 2], [3]])


def test_subquotient_cyclic_group_cohomology():
    # ker N / im (t - 1) for the sign action
    aug = IntegerMatrix.from_rows([[-2]])
    norm = IntegerMatrix.from_rows([[0]])
    pres = subquotient(1, norm, aug)
    assert pres.structure.torsion == (2,)
    assert pres.coordinates([3]) == (1,)
    assert pres.is_zero_class([4])


def test_subquotient_rejects_non_complex():
    with pytest.raises(ContractViolationError):
        subquotient(1, IntegerMatrix.identity(1), IntegerMatrix.identity(1))


def test_span_quotient_with_redundant_generators():
    generators = IntegerMatrix.from_rows([[2, 4, 0], [0, 0, 3]])
    relations = IntegerMatrix.from_rows([[4], [0]])
    pres = span_quotient(2, generators, relations)
    assert pres.structure.free_rank == 1
    assert pres.structure.torsion == (2,)


def test_induced_map_multiplication():
    source = span_quotient(
        1, IntegerMatrix.identity(1), IntegerMatrix.from_rows([[4]])
    )
    target = span_quotient(
        1, IntegerMatrix.identity(1), IntegerMatrix.from_rows([[2]])
    )
    matrix = induced_map(IntegerMatrix.from_rows([[3]]), source, target)
    assert matrix.to_rows() == [[1]]


def test_induced_map_rejects_incompatible():
    source = span_quotient(
        1, IntegerMatrix.identity(1), IntegerMatrix.from_rows([[2]])
    )
    target = span_quotient(
        1, IntegerMatrix.identity(1), IntegerMatrix.from_rows([[4]])
    )
    with pytest.raises(ContractViolationError):
        induced_map(IntegerMatrix.identity(1), source, target)


def test_structure_from_factors():
    structure = AbelianGroupStructure.from_factors([6, 4, 1, 0])
    assert structure.free_rank == 1
    assert structure.torsion == (2, 12)
    assert str(structure) == "Z + Z/2 + Z/12"
    assert structure.order() is None
    assert AbelianGroupStructure.from_factors([2, 3]).torsion == (6,)


def test_structure_rejects_bad_chain():
    with pytest.raises(ValueError):
        AbelianGroupStructure(torsion=(4, 6))


def test_structure_trivial():
    trivial = AbelianGroupStructure.trivial()
    assert trivial.is_trivial()
    assert str(trivial) == "0"
    assert trivial.order() == 1


def _minor_gcd(matrix, k):
    rows = matrix.to_rows()
    value = 0
    for picked in combinations(range(matrix.rows), k):
        for chosen in combinations(range(matrix.cols), k):
            minor = IntegerMatrix.from_rows(
                [[rows[i][j] for j in chosen] for i in picked]
            )
            value = gcd(value, determinant(minor))
    return value


@pytest.mark.parametrize(
    "rows, cols", [(r, c) for r in range(1, 6) for c in range(1, 6)]
)
def test_invariant_factors_match_minors(rows, cols):
    rng = random.Random(rows * 10 + cols)
    for _ in range(4):
        matrix = _random_matrix(rng, rows, cols, bound=3)
        factors = invariant_factors(matrix)
        for k in range(1, min(rows, cols) + 1):
            expected = prod(factors[:k]) if k <= len(factors) else 0
            assert _minor_gcd(matrix, k) == expected


@pytest.mark.parametrize("rows, cols", [(2, 2), (2, 3), (3, 2), (4, 4)])
def test_cokernel_order_matches_coset_count(rows, cols):
    # ℤʳ/im(M) is finite exactly when M has full row rank
    rng = random.Random(rows * 10 + cols)
    matrix = _random_matrix(rng, rows, cols, bound=2)
    structure = cokernel_structure(matrix)
    if structure.is_finite():
        assert structure.order() == _minor_gcd(matrix, rows)
    else:
        assert _minor_gcd(matrix, rows) == 0


@pytest.mark.parametrize("seed", range(8))
def test_subquotient_ignores_basis_change(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    y = _random_matrix(rng, n, rng.randint(1, 3), bound=3)
    left = kernel_basis(y.transpose()).transpose()
    x = _random_matrix(rng, 2, left.rows, bound=2) @ left
    basis = IntegerMatrix.identity(n)
    for _ in range(4):
        i, j = rng.sample(range(n), 2)
        rows = IntegerMatrix.identity(n).to_rows()
        rows[i][j] = rng.choice((-1, 1))
        basis = IntegerMatrix.from_rows(rows) @ basis
    moved = subquotient(n, x @ inverse_unimodular(basis), basis @ y)
    original = subquotient(n, x, y)
    assert moved.structure.factors == original.structure.factors


def test_structure_is_finite():
    assert AbelianGroupStructure.from_factors([4, 2]).is_finite()
    assert not AbelianGroupStructure.from_factors([0, 2]).is_finite()
