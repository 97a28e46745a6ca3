#! /usr/bin/env python
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
The interaction-aware module: edge-biased multi-head graph attention over the
observed vehicles, pooled per step and mapped to a yield probability per future step.
"""

from __future__ import annotations
import math
from dataclasses import dataclass
from functools import lru_cache
import numpy as np
from pclc.numerics import Tensor, as_tensor, broadcast_to, clip, concat, gather, relu, sigmoid, softmax
from pclc.utils.typing import List, Tuple
from pclc.model._module import Module, glorot
from pclc.model._layers import Linear

### Node feature order `[v, a, steer, y_lat, x_lon]` taken from the window order `[y_lat, x_lon, v, a, steer]`.
NODE_FEATURE_INDICES = (2, 3, 4, 0, 1)
NODE_FEATURES = len(NODE_FEATURE_INDICES)
EDGE_FEATURES = 4
### Sigmoid saturates to exactly 0 or 1 in float64 beyond |logit| ~ 37; outputs stay in the open interval.
PROB_EPS = 1e-12


@lru_cache(maxsize=None)
def neighbor_index(n_nodes: int) -> Tuple[int, ...]:
    """
    Flattened `(v, v - 1)` table of neighbor ids: row `i` lists every `j != i` in ascending order.
    The edge `i -> j` is stored at slot `j` if `j < i` else `j - 1`.
    """
    return tuple(j for i in range(n_nodes) for j in range(n_nodes) if j != i)


@dataclass(frozen=True, eq=False)
class GraphSnapshot:
    """
    Complete directed graphs without self-loops, one per observed step.

    Attributes
    ----------
    nodes: np.ndarray
        `(..., v, 5)` node features `[v, a, steer, y_lat, x_lon]`.

    edges: np.ndarray
        `(..., v, v - 1, 4)` edge features `[dv, da, dy, dx]` of `j` relative to `i`.
    """
    nodes: np.ndarray
    edges: np.ndarray

    @property
    def n_nodes(self) -> int:
        return self.nodes.shape[-2]

    @property
    def n_edges(self) -> int:
        return self.n_nodes * (self.n_nodes - 1)


def build_graph(X: np.ndarray) -> GraphSnapshot:
    """
    Build the per-step interaction graphs of a history block `(..., v, 5)`
    in window feature order.
    """
    X = np.asarray(X, dtype=np.float64)
    nodes = X[..., list(NODE_FEATURE_INDICES)]
    v = X.shape[-2]
    idx = np.asarray(neighbor_index(v), dtype=np.int64).reshape(v, v - 1)
    ### [v, a, y, x] of every node; the steering angle has no relative counterpart.
    rel = nodes[..., [0, 1, 3, 4]]
    others = rel[..., idx, :]
    edges = others - rel[..., :, None, :]
    return GraphSnapshot(nodes=nodes, edges=edges)


def attention_head(
        nodes,
        edges,
        W_Q: Tensor,
        W_K: Tensor,
        W_V: Tensor,
        W_M: Tensor,
        literal: bool = False,
    ) -> Tuple[Tensor, Tensor]:
    """
    One attention head over a batch of graphs.

    ```
    R_ij = Q_i . (K_j + M_ij) / sqrt(d)
    alpha_ij = softmax_j(R_ij)
    h_i = sum_j alpha_ij (V_j + M_ij)
    ```

    With `literal=True` the aggregate uses the focal node's value `V_i` and is
    passed through a softmax over features.

    Parameters
    ----------
    nodes: Tensor
        `(..., v, d_n)` node features.

    edges: Tensor
        `(..., v, v - 1, d_e)` edge features.

    Returns
    -------
    A tuple of the updated node features `(..., v, d)` and the coefficients `(..., v, v - 1)`.
    """
    nodes, edges = as_tensor(nodes), as_tensor(edges)
    v = nodes.shape[-2]
    d = W_Q.shape[1]
    lead = nodes.shape[:-2]
    pair_shape = (*lead, v, v - 1, d)

    Q = nodes @ W_Q
    K = nodes @ W_K
    V = nodes @ W_V
    M = edges @ W_M
    nb = neighbor_index(v)
    axis = len(lead)
    K_nb = gather(K, nb, axis=axis).reshape(pair_shape)
    Q_i = broadcast_to(Q.reshape(*lead, v, 1, d), pair_shape)
    R = (Q_i * (K_nb + M)).sum(axis=-1) / math.sqrt(d)
    alpha = softmax(R, axis=-1)
    weights = broadcast_to(alpha.reshape(*lead, v, v - 1, 1), pair_shape)
    if literal:
        values = broadcast_to(V.reshape(*lead, v, 1, d), pair_shape) + M
        h = softmax((weights * values).sum(axis=-2), axis=-1)
    else:
        values = gather(V, nb, axis=axis).reshape(pair_shape) + M
        h = (weights * values).sum(axis=-2)
    return h, alpha


class InteractionModule(Module):
    """
    Predict the new follower's yield probability for every future step.

    Per observed step: multi-head attention, head concatenation, mean pooling over
    nodes, a linear projection and a ReLU encoder. The per-step encodings are
    flattened over the history and mapped through a sigmoid layer to `T_pre` outputs,
    clipped to `[PROB_EPS, 1 - PROB_EPS]`.
    """

    def __init__(
            self,
            t_obs: int,
            t_pre: int,
            heads: int,
            d_head: int,
            d_q: int,
            d_e: int,
            rng: np.random.Generator,
            literal: bool = False,
        ):
        super().__init__()
        self.t_obs, self.t_pre = t_obs, t_pre
        self.heads, self.d_head = heads, d_head
        self.literal = literal
        for m in range(heads):
            self.add_param(f'W_Q{m}', glorot(rng, NODE_FEATURES, d_head))
            self.add_param(f'W_K{m}', glorot(rng, NODE_FEATURES, d_head))
            self.add_param(f'W_V{m}', glorot(rng, NODE_FEATURES, d_head))
            self.add_param(f'W_M{m}', glorot(rng, EDGE_FEATURES, d_head))
        self.add_module('pool_proj', Linear(heads * d_head, d_q, rng))
        self.add_module('step_encoder', Linear(d_q, d_e, rng))
        self.add_module('output', Linear(t_obs * d_e, t_pre, rng))

    def head_weights(self, m: int) -> Tuple[Tensor, Tensor, Tensor, Tensor]:
        return tuple(getattr(self, f'W_{kind}{m}') for kind in ('Q', 'K', 'V', 'M'))

    def pooled(self, graph: GraphSnapshot) -> Tensor:
        """Mean over nodes of the concatenated head outputs, `(B, T_obs, heads * d_head)`."""
        heads: List[Tensor] = [
            attention_head(graph.nodes, graph.edges, *self.head_weights(m), literal=self.literal)[0]
            for m in range(self.heads)
        ]
        return concat(heads, axis=-1).mean(axis=-2)

    def __call__(self, X) -> Tensor:
        """Map histories `(B, T_obs, 5, 5)` to yield probabilities `(B, T_pre)`."""
        X = X.values if isinstance(X, Tensor) else np.asarray(X, dtype=np.float64)
        if X.ndim == 3:
            X = X[None]
        graph = build_graph(X)
        gamma = self.pooled(graph)
        e = relu(self.step_encoder(self.pool_proj(gamma)))
        batch = X.shape[0]
        p = sigmoid(self.output(e.reshape(batch, self.t_obs * e.shape[-1])))
        return clip(p, PROB_EPS, 1.0 - PROB_EPS)
