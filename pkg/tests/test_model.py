#! /usr/bin/env python3
# -*- coding: utf-8 -*-
# vim:fenc=utf-8

"""
Test the network building blocks, the variants, and checkpoints.
"""

import json
import math
import numpy as np
import pytest

from pclc.numerics import Tensor, gradcheck, ShapeError
from pclc.model import (
    ModelConfig, Variant, Linear, MLP, GRUCell, TransformerBlock,
    HistoryEncoder, GaussianHead, sample_latent, build_graph, attention_head,
    InteractionModule, TrajectoryModel, build_model, composite_loss,
    Checkpoint, CheckpointError, save_checkpoint, load_checkpoint,
)
from pclc.model._interaction import PROB_EPS
from tests import debug

SMALL = {
    't_obs': 3,
    't_pre': 4,
    'd_h': 6,
    'd_z': 3,
    'heads': 2,
    'd_head': 3,
    'mlp_hidden': 8,
    'd_q': 5,
    'd_e': 4,
    'd_trans': 8,
    'trans_layers': 1,
    'trans_heads': 2,
    'd_pos': 3,
}
### Finite-difference step for networks with ReLU kinks.
H_KINKED = 1e-5
TOLERANCE = 1e-4


def _small(variant: str, seed: int = 0) -> TrajectoryModel:
    return build_model(variant, SMALL, seed=seed)


def _history(rng, batch: int = 2) -> np.ndarray:
    return rng.standard_normal((batch, SMALL['t_obs'], 5, 5))


@pytest.mark.parametrize('seed', range(5))
def test_gradcheck_mlp(seed):
    rng = np.random.default_rng(seed)
    mlp = MLP([4, 6, 3], rng)
    x = Tensor(rng.standard_normal((2, 4)))
    w = Tensor(rng.standard_normal((2, 3)))
    err = gradcheck(lambda x, *_: (mlp(x) * w).sum(), [x, *mlp.parameters()], h=H_KINKED, debug=debug)
    assert err < TOLERANCE


@pytest.mark.parametrize('seed', range(5))
def test_gradcheck_gru_step(seed):
    rng = np.random.default_rng(seed)
    cell = GRUCell(3, 4, rng)
    x = Tensor(rng.standard_normal((2, 3)))
    h = Tensor(rng.standard_normal((2, 4)))
    w = Tensor(rng.standard_normal((2, 4)))
    assert gradcheck(lambda x, h, *_: (cell(x, h) * w).sum(), [x, h, *cell.parameters()]) < TOLERANCE


@pytest.mark.parametrize('literal', [False, True])
@pytest.mark.parametrize('seed', range(5))
def test_gradcheck_attention_head(seed, literal):
    rng = np.random.default_rng(seed)
    graph = build_graph(rng.standard_normal((2, 5, 5)))
    nodes = Tensor(graph.nodes)
    weights = [Tensor(rng.standard_normal((5, 3)) * 0.5) for _ in range(3)]
    weights.append(Tensor(rng.standard_normal((4, 3)) * 0.5))
    w = Tensor(rng.standard_normal((2, 5, 3)))

    def fn(nodes, W_Q, W_K, W_V, W_M):
        h, _ = attention_head(nodes, graph.edges, W_Q, W_K, W_V, W_M, literal=literal)
        return (h * w).sum()

    assert gradcheck(fn, [nodes, *weights]) < TOLERANCE


@pytest.mark.parametrize('seed', range(5))
def test_gradcheck_interaction_module(seed):
    rng = np.random.default_rng(seed)
    module = InteractionModule(3, 4, 2, 3, 5, 4, rng)
    X = rng.standard_normal((2, 3, 5, 5))
    w = Tensor(rng.standard_normal((2, 4)))
    assert gradcheck(lambda *_: (module(X) * w).sum(), module.parameters(), h=H_KINKED) < TOLERANCE


@pytest.mark.parametrize('seed', range(5))
def test_gradcheck_transformer_block(seed):
    rng = np.random.default_rng(seed)
    block = TransformerBlock(8, 2, 8, rng)
    x = Tensor(rng.standard_normal((2, 4, 8)))
    w = Tensor(rng.standard_normal((2, 4, 8)))
    err = gradcheck(lambda x, *_: (block(x) * w).sum(), [x, *block.parameters()], h=H_KINKED)
    assert err < TOLERANCE


@pytest.mark.parametrize('seed', range(5))
def test_gradcheck_fusion_and_predictor(seed):
    model = _small('CVAE_T', seed=seed)
    rng = np.random.default_rng(seed)
    fused = Tensor(rng.standard_normal((2, model.fusion.fc0.d_in)))
    w = Tensor(rng.standard_normal((2, SMALL['t_pre'], 2)))
    params = model.fusion.parameters() + model.decoder.parameters()
    err = gradcheck(lambda f, *_: (model.decoder(model.fusion(f)) * w).sum(), [fused, *params], h=H_KINKED)
    assert err < TOLERANCE


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(5))
def test_gradcheck_composite_loss(seed):
    model = _small('CIT', seed=seed)
    rng = np.random.default_rng(100 + seed)
    X = _history(rng)
    Y = rng.standard_normal((2, SMALL['t_pre'], 2))
    B = (rng.random((2, SMALL['t_pre'])) < 0.5).astype(float)
    eps = rng.standard_normal((2, SMALL['d_z']))

    def fn(*_):
        return composite_loss(model(X, eps=eps), Y, B, (1.0, 0.5, 1.0))[0]

    assert gradcheck(fn, model.parameters(), h=H_KINKED, debug=debug) < TOLERANCE


def test_encoder_zero_input_zero_params():
    rng = np.random.default_rng(0)
    encoder = HistoryEncoder(5, 5, 6, 8, rng)
    encoder.load_state_dict({k: np.zeros_like(v) for k, v in encoder.state_dict().items()})
    h = encoder(np.zeros((3, 5, 5)))
    assert h.shape == (1, 6)
    assert np.all(h.values == 0.0)


def test_encoder_is_order_sensitive():
    rng = np.random.default_rng(1)
    encoder = HistoryEncoder(5, 5, 6, 8, rng)
    X = rng.standard_normal((1, 4, 5, 5))
    assert not np.allclose(encoder(X).values, encoder(X[:, ::-1]).values)


def test_encoder_rejects_bad_shape():
    encoder = HistoryEncoder(5, 5, 6, 8, np.random.default_rng(0))
    with pytest.raises(ShapeError):
        encoder(np.zeros((2, 3, 4, 5)))


def test_sample_latent_exact():
    mu = Tensor([0.5, -1.0])
    logvar = Tensor([math.log(4.0), 0.0])
    z = sample_latent(mu, logvar, [1.0, 2.0])
    assert z.values.tolist() == [2.5, 1.0]
    assert np.array_equal(sample_latent(mu, logvar, [0.0, 0.0]).values, mu.values)


@pytest.mark.slow
def test_sample_latent_moments():
    rng = np.random.default_rng(7)
    n = 100_000
    mu_values = np.array([0.3, -2.0, 1.5])
    logvar_values = np.array([0.0, math.log(0.25), math.log(2.0)])
    mu = Tensor(np.tile(mu_values, (n, 1)))
    logvar = Tensor(np.tile(logvar_values, (n, 1)))
    z = sample_latent(mu, logvar, rng.standard_normal((n, 3))).values
    var = np.exp(logvar_values)
    assert np.all(np.abs(z.mean(axis=0) - mu_values) < 3.0 * np.sqrt(var / n))
    assert np.all(np.abs(z.var(axis=0) / var - 1.0) < 0.05)


def test_gaussian_head_clips_logvar():
    head = GaussianHead(2, 2, np.random.default_rng(0), logvar_min=-1.0, logvar_max=1.0)
    head.logvar.load_state_dict({'W': np.full((2, 2), 100.0), 'b': np.zeros(2)})
    _, logvar = head(Tensor([[1.0, 1.0]]))
    assert np.all(logvar.values == 1.0)


def test_attention_identical_nodes_uniform():
    rng = np.random.default_rng(3)
    X = np.tile(rng.standard_normal((1, 5)), (5, 1))
    graph = build_graph(X)
    assert np.all(graph.edges == 0.0)
    weights = [Tensor(rng.standard_normal((5, 4))) for _ in range(3)] + [Tensor(rng.standard_normal((4, 4)))]
    _, alpha = attention_head(graph.nodes, graph.edges, *weights)
    assert np.allclose(alpha.values, 0.25, atol=1e-15)


def test_attention_two_nodes_by_hand():
    X = np.array([
        [0.0, 1.0, 2.0, 0.5, 0.1],
        [3.5, 4.0, 1.0, -0.5, 0.0],
    ])
    graph = build_graph(X)
    ### Edge of node 0 towards node 1: [dv, da, dy, dx].
    assert graph.edges[0, 0].tolist() == [-1.0, -1.0, 3.5, 3.0]
    eye5 = Tensor(np.eye(5)[:, :2])
    W_M = Tensor(np.eye(4)[:, :2])
    h, alpha = attention_head(graph.nodes, graph.edges, eye5, eye5, eye5, W_M)
    assert np.all(alpha.values == 1.0)
    ### A single neighbor: h_0 = V_1 + M_01 with V = nodes[:, :2] = [v, a].
    expected = graph.nodes[1, :2] + graph.edges[0, 0, :2]
    assert np.allclose(h.values[0], expected, atol=1e-15)


def test_attention_rows_sum_to_one():
    rng = np.random.default_rng(4)
    graph = build_graph(rng.standard_normal((3, 5, 5)))
    weights = [Tensor(rng.standard_normal((5, 3))) for _ in range(3)] + [Tensor(rng.standard_normal((4, 3)))]
    _, alpha = attention_head(graph.nodes, graph.edges, *weights)
    assert alpha.shape == (3, 5, 4)
    assert np.allclose(alpha.values.sum(axis=-1), 1.0, atol=1e-12)


def test_interaction_zero_output_weights_gives_half():
    module = InteractionModule(3, 4, 2, 3, 5, 4, np.random.default_rng(0))
    module.output.load_state_dict({'W': np.zeros_like(module.output.W.values), 'b': np.zeros(4)})
    B_hat = module(np.random.default_rng(1).standard_normal((2, 3, 5, 5)))
    assert np.all(B_hat.values == 0.5)


def test_interaction_saturated_logits_stay_in_open_interval():
    module = InteractionModule(3, 4, 2, 3, 5, 4, np.random.default_rng(0))
    module.output.load_state_dict({
        'W': np.zeros_like(module.output.W.values),
        'b': np.array([100.0, -100.0, 40.0, -40.0]),
    })
    B_hat = module(np.random.default_rng(1).standard_normal((2, 3, 5, 5))).values
    assert np.all(B_hat > 0.0) and np.all(B_hat < 1.0)
    assert B_hat[0, 0] == 1.0 - PROB_EPS
    assert B_hat[0, 1] == PROB_EPS


def test_interaction_vehicle_permutation_invariant():
    rng = np.random.default_rng(5)
    module = InteractionModule(3, 4, 2, 3, 5, 4, rng)
    X = rng.standard_normal((2, 3, 5, 5))
    perm = [3, 0, 4, 1, 2]
    assert np.allclose(module(X).values, module(X[:, :, perm, :]).values, atol=1e-12)


def test_decoder_is_deterministic_given_eps():
    model = _small('CIT')
    rng = np.random.default_rng(0)
    X = _history(rng)
    eps = rng.standard_normal((2, SMALL['d_z']))
    assert np.array_equal(model(X, eps=eps).Y_hat.values, model(X, eps=eps).Y_hat.values)


def test_latent_changes_prediction():
    model = _small('CVAE_T')
    rng = np.random.default_rng(0)
    X = _history(rng)
    a = model(X, eps=np.zeros((2, SMALL['d_z']))).Y_hat.values
    b = model(X, eps=np.ones((2, SMALL['d_z']))).Y_hat.values
    assert not np.allclose(a, b)


@pytest.mark.parametrize('variant', [v.value for v in Variant])
def test_forward_shapes(variant):
    model = _small(variant)
    out = model(_history(np.random.default_rng(0), batch=3), rng=np.random.default_rng(1))
    assert out.Y_hat.shape == (3, SMALL['t_pre'], 2)
    assert (out.mu is not None) == Variant(variant).latent
    assert (out.B_hat is not None) == Variant(variant).interaction
    if out.B_hat is not None:
        assert np.all((out.B_hat.values > 0.0) & (out.B_hat.values < 1.0))


def test_single_history_is_batched():
    model = _small('TRANSFORMER')
    X = _history(np.random.default_rng(0), batch=1)
    assert np.array_equal(model(X[0]).Y_hat.values, model(X).Y_hat.values)


def test_parameter_counts_follow_variant_structure():
    c = ModelConfig(**SMALL)
    transformer, cvae_t, cit = _small('TRANSFORMER'), _small('CVAE_T'), _small('CIT')
    latent = 2 * (c.d_h * c.d_z + c.d_z)
    fusion_delta = (c.d_z - c.d_h) * c.mlp_hidden
    assert cvae_t.num_parameters() - transformer.num_parameters() == latent + fusion_delta

    interaction = (
        c.heads * (3 * 5 * c.d_head + 4 * c.d_head)
        + (c.heads * c.d_head * c.d_q + c.d_q)
        + (c.d_q * c.d_e + c.d_e)
        + (c.t_obs * c.d_e * c.t_pre + c.t_pre)
    )
    assert cit.num_parameters() - cvae_t.num_parameters() == interaction + c.t_pre * c.mlp_hidden


def test_cit_without_interaction_signal_matches_cvae_t():
    cvae_t, cit = _small('CVAE_T', seed=1), _small('CIT', seed=2)
    state = cit.state_dict()
    for name, values in cvae_t.state_dict().items():
        if name == 'fusion.fc0.W':
            ### Rows for the yield probabilities are zeroed.
            state[name] = np.zeros_like(state[name])
            state[name][:values.shape[0]] = values
        else:
            state[name] = values
    cit.load_state_dict(state)
    rng = np.random.default_rng(0)
    X = _history(rng)
    eps = rng.standard_normal((2, SMALL['d_z']))
    expected = cvae_t(X, eps=eps).Y_hat.values
    assert np.allclose(cit(X, eps=eps, B_hat=0.5).Y_hat.values, expected, atol=1e-12)


def test_build_model_rejects_unknown_variant():
    with pytest.raises(ValueError):
        build_model('LSTM', SMALL)


def test_model_config_validation():
    with pytest.raises(ValueError):
        ModelConfig(**{**SMALL, 'd_trans': 9})
    with pytest.raises(ValueError):
        ModelConfig(**SMALL, unknown=1)


def test_seed_controls_initialization():
    a, b, c = _small('CIT', seed=3), _small('CIT', seed=3), _small('CIT', seed=4)
    for (name, va), (_, vb), (_, vc) in zip(a.state_dict().items(), b.state_dict().items(), c.state_dict().items()):
        assert np.array_equal(va, vb), name
    assert any(not np.array_equal(va, vc) for va, vc in zip(a.state_dict().values(), c.state_dict().values()))


def test_load_state_dict_strict():
    model = _small('TRANSFORMER')
    state = model.state_dict()
    state.pop(next(iter(state)))
    with pytest.raises(CheckpointError):
        model.load_state_dict(state)


def test_checkpoint_roundtrip_bitwise(tmp_path):
    from pclc.core import NormStats
    model = _small('CIT', seed=9)
    stats = NormStats(
        x_mean=np.arange(5.0), x_std=np.ones(5) * 2.0,
        y_mean=np.array([1.0, 0.5]), y_std=np.array([3.0, 0.25]),
    )
    ckpt = Checkpoint(model=model, stats=stats, train_config={'epochs': 1}, history=[{'epoch': 0, 'train': 1.0}])
    save_checkpoint(ckpt, tmp_path, debug=debug)
    loaded = load_checkpoint(tmp_path, debug=debug)

    assert loaded.variant == 'CIT'
    assert loaded.stats == stats
    assert loaded.history == ckpt.history
    for (name, a), (_, b) in zip(model.state_dict().items(), loaded.model.state_dict().items()):
        assert np.array_equal(a, b), name
    X = _history(np.random.default_rng(0))
    eps = np.random.default_rng(1).standard_normal((2, SMALL['d_z']))
    assert np.array_equal(model(X, eps=eps).Y_hat.values, loaded.model(X, eps=eps).Y_hat.values)


def test_checkpoint_errors(tmp_path):
    with pytest.raises(CheckpointError):
        load_checkpoint(tmp_path / 'missing')

    save_checkpoint(Checkpoint(model=_small('TRANSFORMER')), tmp_path)
    manifest_path = tmp_path / 'checkpoint.json'
    manifest = json.loads(manifest_path.read_text())

    truncated = tmp_path / 'params' / manifest['parameters'][0]['file']
    truncated.write_bytes(truncated.read_bytes()[:-8])
    with pytest.raises(CheckpointError):
        load_checkpoint(tmp_path)

    manifest['format'] = '99.0.0'
    manifest_path.write_text(json.dumps(manifest))
    with pytest.raises(CheckpointError):
        load_checkpoint(tmp_path)

    manifest_path.write_text('{not json')
    with pytest.raises(CheckpointError):
        load_checkpoint(tmp_path)
