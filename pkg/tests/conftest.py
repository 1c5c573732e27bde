from qserre.qfield import RankTwoData

#: symmetrizable rank-two weight pairs up to G2-type asymmetry
WEIGHT_GRID = ((1, 1), (1, 2), (1, 3), (2, 1))


def data_points(a_range, grid=WEIGHT_GRID):
    """All valid rank-two data over an a_ij range and a weight grid."""
    for a in a_range:
        for d_i, d_j in grid:
            if (d_i * a) % d_j:
                continue
            yield RankTwoData(a, d_i * a // d_j, d_i, d_j)
