__all__ = ["forward", "backprop_grad", "lstm_step", "as_tensor"]

from typing import Dict, Union

import numpy as np
import torch
import torch.nn as nn

from ..arch.lstm.module import LstmCell, LstmState
from ..errors import DimensionMismatch

def as_tensor(values: Union[np.ndarray, torch.Tensor], like: nn.Module) -> torch.Tensor:
    dtype = next(like.parameters()).dtype
    if isinstance(values, torch.Tensor):
        return values.to(dtype)
    return torch.as_tensor(np.asarray(values, dtype=np.float64), dtype=dtype)

def forward(network: nn.Module, x: Union[np.ndarray, torch.Tensor]) -> np.ndarray:
    """Deterministic inference pass, dropout is inactive

    Args:
        network (nn.Module): architecture or PriceForecaster
        x (Union[np.ndarray, torch.Tensor]): one input vector or a batch of rows

    Returns:
        np.ndarray: 24 outputs per input row
    """
    batch = as_tensor(x, network)
    single = batch.ndim == 1
    if single:
        batch = batch.unsqueeze(0)
    was_training = network.training
    network.eval()
    with torch.no_grad():
        out = network(batch)
    network.train(was_training)
    out = out.double().numpy()
    return out[0] if single else out

def backprop_grad(network: nn.Module, X: Union[np.ndarray, torch.Tensor], Y: Union[np.ndarray, torch.Tensor],
        l1: float = 0.0) -> Dict[str, np.ndarray]:
    """Gradients of the training loss with respect to every parameter

    The loss is the squared error summed over outputs and averaged over the batch,
    plus `l1` times the absolute sum of the weights; the penalty subgradient at an
    exact zero is 0.

    Args:
        network (nn.Module): architecture exposing `compute_loss`
        X (np.ndarray): B x in_features inputs
        Y (np.ndarray): B x out_features targets

    Returns:
        Dict[str, np.ndarray]: parameter name to gradient
    """
    inputs = as_tensor(X, network)
    targets = as_tensor(Y, network)
    if inputs.ndim == 1:
        inputs, targets = inputs.unsqueeze(0), targets.reshape(1, -1)
    if inputs.shape[0] == 0:
        raise DimensionMismatch("batch must not be empty")
    if inputs.shape[0] != targets.shape[0]:
        raise DimensionMismatch("{} input rows for {} target rows".format(inputs.shape[0], targets.shape[0]))

    was_training = network.training
    network.eval()
    network.zero_grad()
    preds = network(inputs)
    if preds.shape != targets.shape:
        raise DimensionMismatch("network outputs {} values, targets have {}".format(preds.shape[-1], targets.shape[-1]))
    loss = network.compute_loss(preds, targets, hparams={"l1": l1})
    names = [name for name, _ in network.named_parameters()]
    grads = torch.autograd.grad(loss, [param for _, param in network.named_parameters()], allow_unused=True)
    network.train(was_training)

    return {
        name: np.zeros(tuple(param.shape)) if grad is None else grad.detach().double().numpy()
        for name, param, grad in zip(names, network.parameters(), grads)
    }

def lstm_step(cell: LstmCell, state: LstmState, x_t: Union[np.ndarray, torch.Tensor]) -> LstmState:
    """one recurrence of the gate equations, for a single input vector or a batch"""
    x = as_tensor(x_t, cell)
    if x.ndim == 1:
        x = x.unsqueeze(0)
    h = as_tensor(state.h, cell)
    c = as_tensor(state.c, cell)
    if h.ndim == 1:
        h, c = h.unsqueeze(0), c.unsqueeze(0)
    if h.shape[0] != x.shape[0]:
        raise DimensionMismatch("state batch {} does not match input batch {}".format(h.shape[0], x.shape[0]))
    return cell(x, LstmState(h=h, c=c))
