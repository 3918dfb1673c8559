import json
import math

import pytest

from qslice.errors import UnknownIdentity
from qslice.experiments import (CoefficientGenerator, casorati_scan,
                                identity_names, identity_sweep,
                                scan_probe_points)
from qslice.laurent import eval_truncated
from qslice.quaternion import Quaternion
from qslice.rng import Xoshiro256


def test_rng_is_reproducible():
    a = Xoshiro256(42)
    b = Xoshiro256(42)
    assert [a.next_u64() for _ in range(5)] == [b.next_u64() for _ in range(5)]
    c = Xoshiro256(42, stream=1)
    assert c.next_u64() != Xoshiro256(42).next_u64()


def test_rng_uniform_range():
    rng = Xoshiro256(7)
    vals = [rng.random() for _ in range(1000)]
    assert all(0.0 <= v < 1.0 for v in vals)
    assert 0.4 < sum(vals) / len(vals) < 0.6


@pytest.mark.parametrize("name", identity_names())
def test_identity_sweeps_pass(name):
    rep = identity_sweep(name, 120, seed=5)
    assert rep.passed, f"{name} worst residual {rep.worst_residual}"


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        identity_sweep("unknown", 10, 0)


def test_sweep_report_deterministic():
    a = identity_sweep("product_formula", 50, seed=9)
    b = identity_sweep("product_formula", 50, seed=9)
    assert json.dumps(a.to_json_dict()) == json.dumps(b.to_json_dict())


def test_generator_window_shapes():
    gen = CoefficientGenerator("reciprocal_factorial")
    e = gen.expansion(Quaternion(0), depth=10)
    assert e.n_min == -10 and e.n_max == 0
    assert abs(e.coefficient(-3) - Quaternion(1.0 / math.factorial(3))) < 1e-15
    geo = CoefficientGenerator("geometric", ratio=0.25)
    e2 = geo.expansion(Quaternion(0), depth=4)
    assert abs(e2.coefficient(-2) - Quaternion(0.0625)) < 1e-15


def test_scan_deterministic_and_json_stable():
    gen = CoefficientGenerator("reciprocal_factorial")
    a = casorati_scan(gen, Quaternion(0), 0.5, 0.2, 10, seed=3, depth=20, budget=3000)
    b = casorati_scan(gen, Quaternion(0), 0.5, 0.2, 10, seed=3, depth=20, budget=3000)
    assert json.dumps(a.to_json_dict()) == json.dumps(b.to_json_dict())
    assert "threshold_note" in a.to_json_dict()


def test_scan_self_witness():
    # a target that IS a value of the model at a shared-pool point gets hit
    # with (numerically) zero residual
    gen = CoefficientGenerator("reciprocal_factorial")
    e = gen.expansion(Quaternion(0), depth=20)
    probe = scan_probe_points(Quaternion(0), 0.5, seed=3, count=2000)
    q0 = Quaternion.from_array(probe[7])
    target = eval_truncated(e, q0)
    res = casorati_scan(gen, Quaternion(0), 0.5, 1e-9, 1, seed=3,
                        depth=20, budget=3000, targets=[target])
    assert res.targets_hit == 1
    assert res.witnesses[0].residual <= 1e-11


def test_scan_eps_infinite_hits_everything():
    gen = CoefficientGenerator("reciprocal_factorial")
    res = casorati_scan(gen, Quaternion(0), 0.5, math.inf, 8, seed=1,
                        depth=10, budget=1000)
    assert res.targets_hit == res.targets_tried == 8


def test_scan_witness_residuals_recorded():
    gen = CoefficientGenerator("reciprocal_factorial")
    res = casorati_scan(gen, Quaternion(0), 0.5, 0.25, 12, seed=2, depth=25,
                        budget=4000)
    e = gen.expansion(Quaternion(0), depth=25)
    for w in res.witnesses:
        assert w.residual < 0.25
        again = eval_truncated(e, w.point)
        assert abs(again - w.target) <= w.residual * (1 + 1e-9) + 1e-12


def test_scan_monotone_in_eps_and_depth():
    gen = CoefficientGenerator("reciprocal_factorial")
    hits_eps = [casorati_scan(gen, Quaternion(0), 0.5, eps, 30, seed=11,
                              depth=40, budget=6000).targets_hit
                for eps in (0.5, 0.1, 0.02)]
    assert hits_eps[0] >= hits_eps[1] >= hits_eps[2]
    hits_depth = [casorati_scan(gen, Quaternion(0), 0.5, 0.1, 30, seed=11,
                                depth=d, budget=6000).targets_hit
                  for d in (1, 2, 40)]
    assert hits_depth[0] <= hits_depth[1] <= hits_depth[2]
