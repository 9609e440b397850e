PAPER3_MATRIX = [[0, 1, 0], [-1, 0, 1], [0, 0, 1]]

PAPER3_DELTA_COLUMNS = [(0, 0, 0), (0, 0, 0), (-1, 0, 0)]

PAPER_WITNESS = (1, 1, 2, 0, 0, -1, 0, 1, 1)

# |H^1(G; L)| and the order ratio for Z[zeta_p]^s, keyed by (p, s)
PRIME_CASES = {
    (2, 1): (2, 4),
    (2, 2): (4, 16),
    (3, 1): (3, 27),
    (5, 1): (5, 3125),
}

SPEC_JSON = """
{
    "m": 4,
    "matrix": [[0, 1, 0], [-1, 0, 1], [0, 0, 1]],
    "label": "from-json"
}
"""

SPEC_TOML = """
m = 4
matrix = [[0, 1, 0], [-1, 0, 1], [0, 0, 1]]
label = "from-toml"
"""

SPEC_BUILTIN_JSON = '{"builtin": "cyclotomic:5:1"}'

SPEC_BOTH_JSON = '{"m": 2, "matrix": [[-1]], "builtin": "sign"}'

SPEC_NOT_INVERTIBLE_JSON = '{"m": 2, "matrix": [[2]]}'

# order-6 actions whose lifts blow up as literal free words
ORDER_SIX_MATRICES = [
    [[-3, 1, 2], [8, -1, -4], [-8, 2, 5]],
    [[-5, -8, -1], [3, 5, 0], [3, 4, 2]],
]
