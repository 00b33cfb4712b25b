"""
Harrell's concordance index
"""

import numpy as np

ChunkSize = 2048
"""How many anchor records are compared against everyone at once"""

def concordance(riskScores: np.ndarray, times: np.ndarray, statuses: np.ndarray) -> float:
    """Computes Harrell's concordance

    A pair (i, j) is comparable when T_i < T_j and record i had an event. It
    is concordant when i has the higher risk; tied risks count one half.

    :param riskScores:
        The predicted risks, higher meaning earlier failure
    :param times:
        The observed times
    :param statuses:
        The event indicators

    :return float:
        The concordance, NaN if no pair is comparable
    """

    risk = np.asarray(riskScores, dtype = float)
    times = np.asarray(times, dtype = float)
    statuses = np.asarray(statuses)

    anchors = np.flatnonzero(statuses == 1)

    comparable = 0.0
    score = 0.0

    for start in range(0, len(anchors), ChunkSize):
        chunk = anchors[start:start + ChunkSize]

        later = times[None, :] > times[chunk][:, None]

        higher = risk[chunk][:, None] > risk[None, :]
        tied = risk[chunk][:, None] == risk[None, :]

        comparable += later.sum()
        score += (later & higher).sum() + 0.5 * (later & tied).sum()

    if comparable < 1:
        return float("nan")

    return float(score / comparable)
