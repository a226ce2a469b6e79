from typing import Dict, NamedTuple, Optional

import torch
import torch.nn as nn

from ..base import PriceArch
from ...errors import DimensionMismatch

class LstmState(NamedTuple):
    """hidden state h and cell state c, both B x hidden_size"""
    h: torch.Tensor
    c: torch.Tensor


class LstmCell(nn.Module):
    """Single LSTM step written out gate by gate

    i = sigmoid(W_xi x + W_hi h + b_i)
    c* = tanh(W_xc x + W_hc h + b_c)
    f = sigmoid(W_xf x + W_hf h + b_f)
    c' = f c + i c*
    o = sigmoid(W_xo x + W_ho h + b_o)
    h' = o tanh(c')
    """

    def __init__(self, input_size: int, hidden_size: int):
        super().__init__()
        assert input_size >= 1 and hidden_size >= 1, "lstm sizes must be positive"
        self.input_size = input_size
        self.hidden_size = hidden_size

        bound = 1.0 / hidden_size ** 0.5

        def weight(rows: int, cols: int) -> nn.Parameter:
            return nn.Parameter(torch.empty(rows, cols).uniform_(-bound, bound))

        def bias() -> nn.Parameter:
            return nn.Parameter(torch.zeros(hidden_size))

        self.W_xi, self.W_hi, self.b_i = weight(hidden_size, input_size), weight(hidden_size, hidden_size), bias()
        self.W_xc, self.W_hc, self.b_c = weight(hidden_size, input_size), weight(hidden_size, hidden_size), bias()
        self.W_xf, self.W_hf, self.b_f = weight(hidden_size, input_size), weight(hidden_size, hidden_size), bias()
        self.W_xo, self.W_ho, self.b_o = weight(hidden_size, input_size), weight(hidden_size, hidden_size), bias()

    def initial_state(self, batch_size: int, dtype=None) -> LstmState:
        dtype = self.W_xi.dtype if dtype is None else dtype
        zeros = torch.zeros(batch_size, self.hidden_size, dtype=dtype, device=self.W_xi.device)
        return LstmState(h=zeros, c=zeros.clone())

    def forward(self, x: torch.Tensor, state: LstmState) -> LstmState:
        """
        Args:
            x (torch.Tensor): B x input_size
            state (LstmState): previous state

        Returns:
            LstmState: next state
        """
        if x.shape[-1] != self.input_size:
            raise DimensionMismatch("lstm cell expects {} inputs, given {}".format(self.input_size, x.shape[-1]))
        if state.h.shape[-1] != self.hidden_size or state.c.shape[-1] != self.hidden_size:
            raise DimensionMismatch("lstm state must have {} units".format(self.hidden_size))

        h, c = state
        i = torch.sigmoid(x @ self.W_xi.T + h @ self.W_hi.T + self.b_i)
        candidate = torch.tanh(x @ self.W_xc.T + h @ self.W_hc.T + self.b_c)
        f = torch.sigmoid(x @ self.W_xf.T + h @ self.W_hf.T + self.b_f)
        c = f * c + i * candidate
        o = torch.sigmoid(x @ self.W_xo.T + h @ self.W_ho.T + self.b_o)
        h = o * torch.tanh(c)
        return LstmState(h=h, c=c)


class LSTM(PriceArch):
    """Reads the past hourly prices through an LstmCell, joins the final hidden state
    with the delivery day regressors and maps it to 24 prices.

    Input rows hold `sequence_length` hourly prices, oldest first, followed by the
    day regressors.
    """

    __CONFIGS__ = {
        "default": {
            "hidden_size": 16,
            "sequence_length": 168
        },

        "small": {
            "hidden_size": 8,
            "sequence_length": 72
        }
    }

    def __init__(self, config: Dict, in_features: Optional[int] = None, out_features: int = 24, **kwargs):
        super().__init__()
        assert "hidden_size" in config, "`hidden_size` must be defined in the config"
        assert "sequence_length" in config, "`sequence_length` must be defined in the config"

        self.sequence_length = int(config["sequence_length"])
        self.in_features = self.sequence_length if in_features is None else int(in_features)
        assert self.in_features >= self.sequence_length, \
            "input of {} features cannot hold a {} hour sequence".format(self.in_features, self.sequence_length)
        self.n_exo = self.in_features - self.sequence_length

        self.cell = LstmCell(1, int(config["hidden_size"]))
        self.head = nn.Linear(self.cell.hidden_size + self.n_exo, out_features)

    def forward(self, batch: torch.Tensor) -> torch.Tensor:
        if batch.shape[-1] != self.in_features:
            raise DimensionMismatch("network expects {} inputs, given {}".format(self.in_features, batch.shape[-1]))

        sequence = batch[:, :self.sequence_length]
        exo = batch[:, self.sequence_length:]

        state = self.cell.initial_state(batch.shape[0], dtype=batch.dtype)
        for t in range(self.sequence_length):
            state = self.cell(sequence[:, t:t + 1], state)

        return self.head(torch.cat([state.h, exo], dim=1))
