import numpy as np
import pytest

from icoswitch.channels import (
    AXIS_Y,
    amplitude_damping_channel,
    dephasing_channel,
    depolarizing_channel,
    pauli_along,
    su2_unitary,
    unitary_channel,
)
from icoswitch.linalg import partial_trace
from icoswitch.switch import (
    CausalOrder,
    SwitchSpec,
    all_orders,
    control_state,
    equal_amplitudes,
    evolve_joint,
    r_element,
    r_matrix,
    switch_kraus_ops,
)


def rand_rho(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    r = a @ a.conj().T
    return r / np.trace(r)


def two_order_spec(p_a=0.3, p_b=0.6, theta=0.8):
    from icoswitch.channels import AXIS_Z

    return SwitchSpec(
        (
            depolarizing_channel(2, p_a),
            unitary_channel(su2_unitary(theta, AXIS_Z, 1)),
            depolarizing_channel(2, p_b),
        ),
        (CausalOrder((0, 1, 2)), CausalOrder((2, 1, 0))),
        equal_amplitudes(2),
    )


def test_causal_order_validation():
    with pytest.raises(ValueError):
        CausalOrder((0, 0, 1))
    with pytest.raises(ValueError):
        CausalOrder((0, 2))


def test_all_orders_count():
    assert len(all_orders(3)) == 6
    assert len(all_orders(4)) == 24


def test_r_diagonal_is_one():
    spec = two_order_spec()
    rho = np.eye(2) / 2
    for j in range(2):
        assert r_element(spec, j, j, rho) == pytest.approx(1.0, abs=1e-12)


def test_r_matrix_hermitian_with_unit_diagonal():
    rng = np.random.default_rng(8)
    spec = two_order_spec()
    rho = rand_rho(rng, 2)
    r = r_matrix(spec, rho)
    assert np.allclose(r, r.conj().T, atol=1e-12)
    assert np.allclose(np.diag(r), 1.0, atol=1e-12)


def test_switch_kraus_completeness():
    spec = two_order_spec()
    ops = switch_kraus_ops(spec)
    total = sum(k.conj().T @ k for k in ops)
    assert np.allclose(total, np.eye(total.shape[0]), atol=1e-10)


def test_control_state_matches_joint_evolution():
    rng = np.random.default_rng(9)
    spec = two_order_spec()
    probe = rand_rho(rng, 2)
    rho_c = control_state(spec, probe)
    amps = equal_amplitudes(2)
    joint = evolve_joint(spec, np.outer(amps, amps.conj()), probe)
    reduced = partial_trace(joint, (2, 2), keep=0)
    assert np.max(np.abs(rho_c - reduced)) < 1e-12


def test_unitary_only_switch_orders_commute_to_identity_interference():
    # Two commuting unitaries: both orders produce the same evolution, so
    # the interference trace is exactly 1 and the control stays pure.
    from icoswitch.channels import AXIS_Z

    u1 = unitary_channel(su2_unitary(0.7, AXIS_Z, 1))
    u2 = unitary_channel(su2_unitary(1.3, AXIS_Z, 1))
    spec = SwitchSpec(
        (u1, u2), (CausalOrder((0, 1)), CausalOrder((1, 0))), equal_amplitudes(2)
    )
    assert r_element(spec, 0, 1, np.eye(2) / 2) == pytest.approx(1.0, abs=1e-12)


def test_anticommuting_unitaries_give_minus_one():
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sz = np.diag([1.0, -1.0]).astype(complex)
    spec = SwitchSpec(
        (unitary_channel(sx), unitary_channel(sz)),
        (CausalOrder((0, 1)), CausalOrder((1, 0))),
        equal_amplitudes(2),
    )
    assert r_element(spec, 0, 1, np.eye(2) / 2) == pytest.approx(-1.0, abs=1e-12)


def test_fully_depolarizing_two_order_interference():
    # Complete depolarization on both sides (survival p=0) erases all
    # order information: the closed form collapses to 1/d^2.
    spec = two_order_spec(p_a=0.0, p_b=0.0, theta=1.1)
    got = r_element(spec, 0, 1, np.eye(2) / 2)
    assert got == pytest.approx(0.25, abs=1e-12)


def test_switch_spec_validation():
    ch = depolarizing_channel(2, 0.5)
    with pytest.raises(ValueError):
        SwitchSpec((ch,), (CausalOrder((0,)), CausalOrder((0,))), np.array([1.0]))
    with pytest.raises(ValueError):
        SwitchSpec(
            (ch, ch),
            (CausalOrder((0, 1)), CausalOrder((1, 0))),
            np.array([1.0, 0.0, 0.0]),
        )


def test_mixed_channel_types_agree_with_direct_kraus_sum():
    # Independent oracle: assemble the interference trace directly from
    # nested loops over Kraus indices, no vectorization.
    rng = np.random.default_rng(10)
    from icoswitch.channels import AXIS_Z

    spec = SwitchSpec(
        (
            dephasing_channel(0.35, pauli_along(AXIS_Y)),
            unitary_channel(su2_unitary(0.9, AXIS_Z, 1)),
            amplitude_damping_channel(0.55),
        ),
        (CausalOrder((0, 1, 2)), CausalOrder((2, 1, 0))),
        equal_amplitudes(2),
    )
    probe = rand_rho(rng, 2)
    acc = 0.0 + 0.0j
    chs = spec.channels
    for i in range(len(chs[0])):
        for j in range(len(chs[1])):
            for k in range(len(chs[2])):
                first = chs[2].kraus_ops[k] @ chs[1].kraus_ops[j] @ chs[0].kraus_ops[i]
                second = chs[0].kraus_ops[i] @ chs[1].kraus_ops[j] @ chs[2].kraus_ops[k]
                acc += np.trace(first @ probe @ second.conj().T)
    assert abs(r_element(spec, 0, 1, probe) - acc) < 1e-12
