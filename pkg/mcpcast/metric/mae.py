from torchmetrics import Metric
import torch

class PriceMAE(Metric):
    """torchmetrics.Metric instance accumulating the mean absolute error of price batches
    in the original price scale"""

    def __init__(self):
        super().__init__()
        self.add_state("abs_error", default=torch.tensor(0, dtype=torch.float64), dist_reduce_fx="sum")
        self.add_state("count", default=torch.tensor(0, dtype=torch.int64), dist_reduce_fx="sum")

    # pylint: disable=method-hidden
    def update(self, preds: torch.Tensor, targets: torch.Tensor):
        """
        Arguments:
            preds (torch.Tensor) -- B x 24 predicted prices
            targets (torch.Tensor) -- B x 24 realized prices
        """
        assert preds.shape == targets.shape, "prediction shape {} does not match target shape {}".format(
            tuple(preds.shape), tuple(targets.shape))
        # pylint: disable=no-member
        self.abs_error += (preds.double() - targets.double()).abs().sum()
        self.count += targets.numel()

    # pylint: disable=method-hidden
    def compute(self) -> torch.Tensor:
        # pylint: disable=no-member
        return self.abs_error / self.count.clamp(min=1)
