"""Hand-checked reference families used as ground truth across the tests.

Everything here is written in exact radical form and evaluated once at
import, so equality checks can run at 1e-12 scale tolerances.
"""
import numpy as np

S = np.sqrt

# --- three rank-1 projections in M_2 summing to (3/2) I, from the vertices
# of an equilateral triangle centered at the origin.
TRIANGLE_VERTICES = np.array(
    [
        [1.0, 0.0],
        [0.5, -S(3.0) / 2],
        [-0.5, -S(3.0) / 2],
    ]
)

TRIANGLE_PROJECTIONS = np.array(
    [
        [[1.0, 0.0], [0.0, 0.0]],
        [[0.25, -S(3.0) / 4], [-S(3.0) / 4, 0.75]],
        [[0.25, S(3.0) / 4], [S(3.0) / 4, 0.75]],
    ]
)

# --- four rank-1 projections in M_3 summing to (4/3) I, from the vertices
# of a regular tetrahedron (pairwise inner products -1/3).
TETRAHEDRON_VERTICES = np.array(
    [
        [1.0, 0.0, 0.0],
        [-1.0 / 3, 2 * S(2.0) / 3, 0.0],
        [-1.0 / 3, -S(2.0) / 3, S(2.0 / 3)],
        [-1.0 / 3, -S(2.0) / 3, -S(2.0 / 3)],
    ]
)

TETRAHEDRON_PROJECTIONS = np.array(
    [
        [[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]],
        [
            [1.0 / 9, -2 * S(2.0) / 9, 0.0],
            [-2 * S(2.0) / 9, 8.0 / 9, 0.0],
            [0.0, 0.0, 0.0],
        ],
        [
            [1.0 / 9, S(2.0) / 9, -S(2.0) / (3 * S(3.0))],
            [S(2.0) / 9, 2.0 / 9, -2.0 / (3 * S(3.0))],
            [-S(2.0) / (3 * S(3.0)), -2.0 / (3 * S(3.0)), 2.0 / 3],
        ],
        [
            [1.0 / 9, S(2.0) / 9, S(2.0) / (3 * S(3.0))],
            [S(2.0) / 9, 2.0 / 9, 2.0 / (3 * S(3.0))],
            [S(2.0) / (3 * S(3.0)), 2.0 / (3 * S(3.0)), 2.0 / 3],
        ],
    ]
)

# --- four rank-2 projections in M_5 summing to (8/5) I.  One particular
# representative of the unitary-equivalence class produced by the second
# rung of the four-projection ladder; our constructor lands in a different
# basis, so comparisons go through an intertwining unitary.
_L1 = np.array(
    [
        [
            364.0 / 445,
            -12 / (89 * S(55.0)),
            102 * S(3.0 / 406285),
            (-96.0 / 5) * S(2.0 / 36935),
            -24 / (5 * S(445.0)),
        ],
        [
            -12 / (89 * S(55.0)),
            4188.0 / 24475,
            (3562.0 / 275) * S(3.0 / 7387),
            (144.0 / 5) * S(2.0 / 81257),
            36 / (5 * S(979.0)),
        ],
        [
            102 * S(3.0 / 406285),
            (3562.0 / 275) * S(3.0 / 7387),
            11689.0 / 22825,
            (96.0 / 415) * S(6.0 / 11),
            (24.0 / 5) * S(3.0 / 913),
        ],
        [
            (-96.0 / 5) * S(2.0 / 36935),
            (144.0 / 5) * S(2.0 / 81257),
            (96.0 / 415) * S(6.0 / 11),
            288.0 / 2075,
            (36.0 / 25) * S(2.0 / 83),
        ],
        [
            -24 / (5 * S(445.0)),
            36 / (5 * S(979.0)),
            (24.0 / 5) * S(3.0 / 913),
            (36.0 / 25) * S(2.0 / 83),
            9.0 / 25,
        ],
    ]
)

_L2 = np.array(
    [
        [
            12.0 / 445,
            444 / (445 * S(55.0)),
            (-34.0 / 5) * S(3.0 / 406285),
            -12 * S(2.0 / 36935),
            0.0,
        ],
        [
            444 / (445 * S(55.0)),
            16428.0 / 24475,
            (-1258.0 / 275) * S(3.0 / 7387),
            (-444.0 / 5) * S(2.0 / 81257),
            0.0,
        ],
        [
            (-34.0 / 5) * S(3.0 / 406285),
            (-1258.0 / 275) * S(3.0 / 7387),
            289.0 / 22825,
            (34.0 / 415) * S(6.0 / 11),
            0.0,
        ],
        [
            -12 * S(2.0 / 36935),
            (-444.0 / 5) * S(2.0 / 81257),
            (34.0 / 415) * S(6.0 / 11),
            24.0 / 83,
            0.0,
        ],
        [0.0, 0.0, 0.0, 0.0, 1.0],
    ]
)

_L3 = np.array(
    [
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [
            0.0,
            0.0,
            77.0 / 83,
            -3 * S(66.0) / 415,
            (-2.0 / 5) * S(33.0 / 83),
        ],
        [
            0.0,
            0.0,
            -3 * S(66.0) / 415,
            1976.0 / 2075,
            (-33.0 / 25) * S(2.0 / 83),
        ],
        [
            0.0,
            0.0,
            (-2.0 / 5) * S(33.0 / 83),
            (-33.0 / 25) * S(2.0 / 83),
            3.0 / 25,
        ],
    ]
)

_L4 = np.array(
    [
        [
            336.0 / 445,
            -384 / (445 * S(55.0)),
            (-476.0 / 5) * S(3.0 / 406285),
            (156.0 / 5) * S(2.0 / 36935),
            24 / (5 * S(445.0)),
        ],
        [
            -384 / (445 * S(55.0)),
            18544.0 / 24475,
            (-2304.0 / 275) * S(3.0 / 7387),
            60 * S(2.0 / 81257),
            -36 / (5 * S(979.0)),
        ],
        [
            (-476.0 / 5) * S(3.0 / 406285),
            (-2304.0 / 275) * S(3.0 / 7387),
            3367.0 / 22825,
            (-97.0 / 415) * S(6.0 / 11),
            (-2.0 / 5) * S(3.0 / 913),
        ],
        [
            (156.0 / 5) * S(2.0 / 36935),
            60 * S(2.0 / 81257),
            (-97.0 / 415) * S(6.0 / 11),
            456.0 / 2075,
            (-3.0 / 25) * S(2.0 / 83),
        ],
        [
            24 / (5 * S(445.0)),
            -36 / (5 * S(979.0)),
            (-2.0 / 5) * S(3.0 / 913),
            (-3.0 / 25) * S(2.0 / 83),
            3.0 / 25,
        ],
    ]
)

LADDER_RUNG2_PROJECTIONS = np.array([_L1, _L2, _L3, _L4])
