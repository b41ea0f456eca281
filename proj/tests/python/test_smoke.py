import pytest

import vlcwdm as v


def test_channel_basics():
    assert v.lambertian_order(60.0) == 1.0
    room = v.RoomConfig.default_room()
    assert len(room.luminaires) == 8
    gains = v.gain_matrix(room, [v.UserPosition(2.0, 4.0)], v.ReceiverModel())
    assert len(gains) == 1 and len(gains[0]) == 8
    assert all(g > 0 for g in gains[0])


def test_single_user_link():
    room = v.RoomConfig.default_room()
    users = [v.UserPosition(2.0, 4.0)]
    reports = v.sinr(users, [v.PairChoice(0, v.Wavelength.red)], room, v.ReceiverModel())
    assert reports[0].interference_sq == 0.0
    assert reports[0].sinr > 0
    assert reports[0].achievable_rate > 0
    assert v.ook_ber(v.ber_target_sinr()) == pytest.approx(1e-9, rel=1e-6)


def test_solver_matches_brute_force():
    room = v.RoomConfig.default_room()
    rx = v.ReceiverModel()
    for seed in (3, 4):
        users = v.generate_users(room, 3, seed)
        inst = v.build_instance(room, users, rx)
        exact = v.solve_bnb(inst)
        oracle = v.brute_force(inst)
        assert exact.surrogate_objective == oracle.surrogate_objective
        assert v.surrogate_objective(inst, exact.assignment) == exact.surrogate_objective
        pairs = {(p.luminaire, p.wavelength) for p in exact.assignment}
        assert len(pairs) == 3


def test_infeasible_raises():
    room = v.RoomConfig.default_room()
    room.luminaires = room.luminaires[:1]
    users = [v.UserPosition(1.0 + 0.1 * k, 1.0) for k in range(5)]
    with pytest.raises(v.InfeasibleError):
        v.build_instance(room, users, v.ReceiverModel())


def test_trend_is_deterministic():
    spec = v.ScenarioSpec()
    spec.user_counts = [1, 2]
    spec.trials_per_point = 2
    spec.seed = 11
    a = v.trend_to_csv(v.run_trend(spec))
    spec.threads = 1
    b = v.trend_to_csv(v.run_trend(spec))
    assert a == b
    assert a.count("\n") == 5  # header + 4 trial rows


def test_config_round_trip():
    spec = v.load_config('{"room": {"power_multiplier": 15.0}}')
    assert spec.room.power_multiplier == 15.0
    assert v.load_config(v.config_to_json(spec)).room.power_multiplier == 15.0
    with pytest.raises(ValueError):
        v.load_config('{"room": {"witdh": 1}}')
