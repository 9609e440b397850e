import pytest

from latcoh import utils
from latcoh.alpha import (
    FreeEndomorphism,
    FreeWord,
    MagnusTruncation,
    TruncatedEndomorphism,
    canonical_lift,
    compute_alpha,
    delta_from_words,
    endo_iterate_apply,
    invariant_witnesses,
    lcs_class,
    lift_has_order,
    magnus,
    obstruction_nonzero,
    pairing_value,
    pairing_values,
    paper_witness,
    syzygy_lift,
    word_invert,
    word_multiply,
    word_reduce,
)
from latcoh.exception import (
    ContractViolationError,
    ResourceLimitError,
    UsageError,
)
from latcoh.glattice import (
    cyclotomic_lattice,
    gauss_lattice,
    make_action,
    random_action,
    sign_lattice,
    trivial_lattice,
    wedge,
    wedge_basis,
)
from latcoh.lhs import collapse_at_d2
from tests.data import (
    ORDER_SIX_MATRICES,
    PAPER3_DELTA_COLUMNS,
    PAPER_WITNESS,
)

COMMUTATOR = FreeWord((1, 2, -1, -2))


def test_free_word_parse_reduces():
    word = FreeWord.parse([(1, 1), (2, 1), (2, -1), (3, -1)], 3)
    assert word.letters == (1, -3)
    assert word.pairs == ((1, 1), (3, -1))
    assert str(word) == "x1x3^-1"
    assert str(FreeWord()) == "1"


def test_free_word_parse_bad_exponent():
    with pytest.raises(UsageError):
        FreeWord.parse([(1, 2)])


def test_word_reduce_out_of_range():
    with pytest.raises(UsageError):
        word_reduce(FreeWord((3,)), n=2)


def test_word_multiply_and_invert():
    word = FreeWord((1, 2, -1))
    assert word_multiply(word, word_invert(word)).letters == ()
    assert len(word_multiply(word, word)) == 4


def test_magnus_of_commutator():
    expansion = magnus(COMMUTATOR, 2)
    assert expansion.linear == (0, 0)
    assert expansion.quadratic.to_rows() == [[0, 1], [-1, 0]]
    assert lcs_class(COMMUTATOR, 2) == (1,)
    assert lcs_class(word_invert(COMMUTATOR), 2) == (-1,)


def test_lcs_class_is_additive():
    c12 = FreeWord((1, 2, -1, -2))
    c23 = FreeWord((2, 3, -2, -3))
    assert lcs_class(word_multiply(c12, c23), 3) == (1, 0, 1)


def test_lcs_class_rejects_non_commutator():
    with pytest.raises(ContractViolationError):
        lcs_class(FreeWord((1,)), 2)


def test_endomorphism_abelianization(paper3):
    lift = canonical_lift(paper3)
    assert lift.abelianization() == paper3.inverse
    assert canonical_lift(paper3, True).abelianization() == paper3.inverse


def test_endomorphism_compose():
    swap = FreeEndomorphism((FreeWord((2,)), FreeWord((1,))))
    identity = swap.compose(swap)
    assert identity.images == (FreeWord((1,)), FreeWord((2,)))


def test_syzygy_lift_has_order():
    for m, d in ((2, 1), (3, 1), (4, 2), (6, 2), (5, 1)):
        assert lift_has_order(syzygy_lift(m, d), m)


def test_word_cap():
    doubling = FreeEndomorphism((FreeWord((1, 2)), FreeWord((2, 1, 2))))
    with pytest.raises(ResourceLimitError):
        endo_iterate_apply(doubling, 10, FreeWord((1,)), cap=50)
    with pytest.raises(UsageError):
        endo_iterate_apply(doubling, -1, FreeWord((1,)))


def test_delta_of_rank_three_example(paper3):
    data = compute_alpha(paper3)
    assert data.delta.columns() == PAPER3_DELTA_COLUMNS
    assert data.alpha1_wedge == data.delta.scale(-1)
    assert compute_alpha(paper3, sign=1).alpha1_wedge == data.delta


def test_convention_sign_is_checked(paper3):
    with pytest.raises(UsageError):
        compute_alpha(paper3, sign=2)


def test_obstruction_of_rank_three_example(paper3):
    assert obstruction_nonzero(paper3)
    assert pairing_value(paper3, PAPER_WITNESS) == 2
    assert paper_witness() == PAPER_WITNESS


def test_pairing_is_sign_invariant(paper3):
    flipped = compute_alpha(paper3, sign=1)
    assert pairing_value(paper3, PAPER_WITNESS, flipped) == 2


def test_pairing_rejects_non_invariant(paper3):
    with pytest.raises(ContractViolationError):
        pairing_value(paper3, (1, 0, 0, 0, 0, 0, 0, 0, 0))
    with pytest.raises(UsageError):
        pairing_value(paper3, (1, 0))


def test_invariant_witnesses_detect_obstruction(paper3):
    assert invariant_witnesses(paper3).cols >= 1
    assert any(value % 4 for value in pairing_values(paper3))


def test_free_actions_have_no_obstruction():
    for action in (cyclotomic_lattice(5, 1), gauss_lattice()):
        assert not obstruction_nonzero(action)


def test_small_rank_has_no_obstruction(rng):
    for _ in range(15):
        action = random_action(rng, rng.randint(2, 6), 2)
        assert not obstruction_nonzero(action)


def test_alpha_is_equivariant(rng):
    # compute_alpha raises when the equivariance check fails
    for _ in range(10):
        compute_alpha(random_action(rng, rng.choice((2, 3, 4, 6)), 4))


def test_alpha_s_is_a_derivation(paper6, rng):
    data = compute_alpha(paper6)
    n = paper6.n
    for _ in range(40):
        p = rng.randint(0, n - 1)
        q = rng.randint(0, n - 1 - p)
        u = [rng.randint(-2, 2) for _ in wedge_basis(n, p)]
        v = [rng.randint(-2, 2) for _ in wedge_basis(n, q)]
        left = data.alpha_s_wedge(p + q).apply(wedge(u, p, v, q, n))
        first = wedge(data.alpha_s_wedge(p).apply(u), p + 1, v, q, n)
        second = wedge(u, p, data.alpha_s_wedge(q).apply(v), q + 1, n)
        assert left == tuple(a + (-1) ** p * b for a, b in zip(first, second))


def test_alpha_s_shapes(paper3):
    data = compute_alpha(paper3)
    assert data.alpha_s_wedge(0).is_zero()
    assert data.alpha_s(1).shape == (3, 3)
    assert data.alpha_s(2).shape == (3, 1)
    with pytest.raises(UsageError):
        data.alpha_s_wedge(4)


@pytest.mark.parametrize(
    "action",
    [
        sign_lattice(),
        cyclotomic_lattice(2, 1),
        trivial_lattice(3, 1),
        trivial_lattice(4, 0),
    ],
    ids=["sign", "cyclotomic-2", "trivial-rank-1", "trivial-rank-0"],
)
def test_rank_below_two_has_zero_alpha(action):
    data = compute_alpha(action)
    assert data.delta.shape == (0, action.n)
    assert not obstruction_nonzero(action, data)
    assert not obstruction_nonzero(action)
    assert invariant_witnesses(action).cols == 0
    assert pairing_values(action, data) == []
    assert pairing_value(action, (), data) == 0


def test_truncated_product_matches_words():
    left = FreeWord((1, 2, -3, 1))
    right = FreeWord((-1, 3, 3, -2))
    product = magnus(left, 3) * magnus(right, 3)
    assert product == magnus(word_multiply(left, right), 3)
    assert magnus(left, 3).inverse() == magnus(word_invert(left), 3)
    assert magnus(left, 3) * magnus(left, 3).inverse() == (
        MagnusTruncation.identity(3)
    )


def test_truncated_endomorphism_is_a_homomorphism(paper6, rng):
    lift = canonical_lift(paper6)
    truncated = TruncatedEndomorphism.of(lift)
    for _ in range(10):
        letters = [
            rng.choice((1, -1)) * rng.randint(1, paper6.n) for _ in range(8)
        ]
        word = word_reduce(FreeWord(tuple(letters)))
        assert truncated.apply(magnus(word, paper6.n)) == magnus(
            lift.apply(word), paper6.n
        )
    with pytest.raises(UsageError):
        truncated.iterate(-1, MagnusTruncation.identity(paper6.n))
    with pytest.raises(UsageError):
        truncated.apply(MagnusTruncation.identity(2))


@pytest.mark.parametrize(
    "name",
    [
        "paper3",
        "paper6",
        "gauss",
        "cyclotomic:3:1",
        "cyclotomic:5:1",
        "syzygy:6:2",
        "permutation:4:1",
    ],
)
@pytest.mark.parametrize("descending", [False, True])
def test_truncated_iteration_matches_words(name, descending):
    action = utils.parse_builtin(name)
    data = compute_alpha(action, descending=descending)
    assert data.delta == delta_from_words(action, descending=descending)


@pytest.mark.parametrize("matrix", ORDER_SIX_MATRICES)
def test_long_lifts_stay_within_the_word_cap(matrix):
    action = make_action(6, matrix)
    data = compute_alpha(action)
    assert data.delta.shape == (3, 3)
    assert compute_alpha(action, descending=True).delta.shape == (3, 3)
    assert isinstance(obstruction_nonzero(action, data), bool)
    assert collapse_at_d2(action)


def test_word_cap_bounds_the_lift(paper3):
    with pytest.raises(ResourceLimitError):
        compute_alpha(paper3, word_cap=1)
    with pytest.raises(ResourceLimitError):
        delta_from_words(paper3, word_cap=1)
