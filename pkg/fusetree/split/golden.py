"""
Golden-section maximization
"""

import math
import typing

Ratio = 2.0 / (1.0 + math.sqrt(5.0))

def goldenMaximize(
    f: typing.Callable[[float], float],
    lower: float,
    upper: float,
    tolerance: float,
    maxIterations: int = 200
) -> typing.Tuple[float, float]:
    """Maximizes a function on an interval by golden-section search

    NaN function values count as minus infinity. The interval's end points
    are candidates too, so a monotone function returns its better end.

    :param f:
        The function
    :param lower:
        The interval's lower end
    :param upper:
        The interval's upper end
    :param tolerance:
        The final bracket width
    :param maxIterations:
        The most narrowing steps

    :return float:
        The maximizer
    :return float:
        The maximum
    """

    def value(x: float) -> float:
        y = f(x)

        return -math.inf if math.isnan(y) else y

    a = lower
    b = upper

    x1 = b - Ratio * (b - a)
    x2 = a + Ratio * (b - a)

    f1 = value(x1)
    f2 = value(x2)

    iteration = 0

    while (abs(b - a) > tolerance) and (iteration < maxIterations):
        if f1 >= f2:
            b = x2
            x2 = x1
            f2 = f1
            x1 = b - Ratio * (b - a)
            f1 = value(x1)

        else:
            a = x1
            x1 = x2
            f1 = f2
            x2 = a + Ratio * (b - a)
            f2 = value(x2)

        iteration += 1

    middle = 0.5 * (a + b)

    candidates = [(middle, value(middle)), (lower, value(lower)), (upper, value(upper))]

    # Stable max keeps the interior point on ties
    return max(candidates, key = lambda candidate: candidate[1])
