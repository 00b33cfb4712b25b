"""
The fused-penalty change of variables

With blocks sorted and the reference block's coefficient fixed at 0, the
fused penalty sum_k w_k |b_k - b_{k-1}| becomes a plain lasso penalty on
g = W B b, where B takes consecutive differences and W holds the adaptive
weights w_k = 1 / |bhat_k - bhat_{k-1}|. A design X for b becomes
X' = X B^-1 W^-1 for g, B^-1 being the all-ones lower triangle.
"""

import numpy as np

class FusionTransform:
    """The difference and weight matrices of a sorted leaf chain
    """

    def __init__(self, beta: np.ndarray) -> None:
        """Creates a new transform

        :param self:
            Self
        :param beta:
            The sorted block estimates, the reference's 0 first

        :raise ValueError:
            Tied neighbours, which would need infinite weights

        :return none:
        """

        beta = np.asarray(beta, dtype = float)

        differences = np.abs(np.diff(beta))

        if np.any(differences <= 0.0):
            raise ValueError("Neighbouring estimates tie; pre-fuse them first")

        p = len(differences)

        self.weights = 1.0 / differences

        self.B = np.eye(p) - np.eye(p, k = -1)
        self.Binv = np.tril(np.ones((p, p)))
        self.W = np.diag(self.weights)
        self.Winv = np.diag(differences)

    @property
    def size(self) -> int:
        return len(self.weights)

    def toGamma(self, beta: np.ndarray) -> np.ndarray:
        """Maps non-reference coefficients to lasso coefficients

        :param self:
            Self
        :param beta:
            The non-reference block coefficients

        :return np.ndarray:
            W B beta
        """

        return self.W @ self.B @ np.asarray(beta, dtype = float)

    def toBeta(self, gamma: np.ndarray) -> np.ndarray:
        """Maps lasso coefficients back to block coefficients

        :param self:
            Self
        :param gamma:
            The lasso coefficients

        :return np.ndarray:
            B^-1 W^-1 gamma
        """

        return self.Binv @ self.Winv @ np.asarray(gamma, dtype = float)

    def transformDesign(self, design: np.ndarray) -> np.ndarray:
        """Maps a block design to the lasso design

        :param self:
            Self
        :param design:
            The n x p block dummy design

        :return np.ndarray:
            X B^-1 W^-1
        """

        return np.asarray(design, dtype = float) @ self.Binv @ self.Winv

    def penalty(self, beta: np.ndarray) -> float:
        """Computes the fused penalty of non-reference coefficients

        :param self:
            Self
        :param beta:
            The non-reference block coefficients

        :return float:
            sum_k w_k |b_k - b_{k-1}|, with b_0 = 0
        """

        return float(np.sum(self.weights * np.abs(np.diff(np.concatenate([[0.0], beta])))))
