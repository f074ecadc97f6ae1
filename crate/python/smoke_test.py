"""Smoke test for the ntnsim Python extension."""

import math

import ntnsim


def main():
    assert abs(ntnsim.bessel_j1(1.0) - 0.44005058574493355) < 1e-12
    assert ntnsim.aperture_gain_rel(0.0, 100.0) == 1.0
    assert ntnsim.slant_range(600.0, 90.0) == 600.0
    assert abs(ntnsim.propagation_delay(299792.458) - 1.0) < 1e-12
    assert abs(ntnsim.fspl_db(1.0, 1.0) - 92.45) < 1e-9

    for sid in ntnsim.BUILTIN_IDS:
        sc = ntnsim.Scenario.builtin(sid)
        ok, line = sc.calibrate()
        print(line)
        assert ok, line

    sc6 = ntnsim.Scenario.builtin("sc6")
    assert 0.75 * 390e6 <= sc6.analytic_capacity_bps() <= 1.25 * 390e6
    budget = sc6.budget()
    assert math.isclose(budget["snr"], sc6.snr_db)
    density = ntnsim.area_capacity_density(sc6.capacity_bps, sc6.footprint_area_km2)
    print(f"sc6 area capacity density {density / 1e3:.1f} kbit/s/km^2")

    rows = sc6.sweep([1, 500, 1000], duration_s=3.0, warmup_s=1.0, parallel=2)
    for r in rows:
        print(r["rate_mbps"], round(r["throughput_mbps"], 3), round(r["pdr"], 4), round(r["latency_mean_ms"], 3))
    assert abs(rows[-1]["throughput_mbps"] - 302.72) / 302.72 < 0.05
    assert rows == sc6.sweep([1, 500, 1000], duration_s=3.0, warmup_s=1.0, parallel=1)

    slow = ntnsim.Scenario.builtin("sc6", {"backhaul_delay_ms": "5"})
    assert slow.one_way_delay_s > sc6.one_way_delay_s

    try:
        ntnsim.Scenario.builtin("nosuch")
    except KeyError:
        pass
    else:
        raise AssertionError("unknown preset accepted")
    try:
        ntnsim.Scenario.builtin("sc6", {"bandwidth_mhz": "-1"})
    except ValueError:
        pass
    else:
        raise AssertionError("negative bandwidth accepted")
    print("smoke test OK")


if __name__ == "__main__":
    main()
