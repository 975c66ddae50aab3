#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rfqlink/metrics.hpp"

using namespace rfqlink::metrics;

namespace {

// Parabolic-in-dB lobe peaking at 15 dB / 59 GHz with asymmetric half-widths
// so the 3 dB points land at 52.5 and 67.5 GHz.
GainCurve parabola_curve(size_t n = 1001) {
    std::vector<double> f, g;
    for (size_t i = 0; i < n; ++i) {
        const double fi = 50e9 + 20e9 * static_cast<double>(i) / static_cast<double>(n - 1);
        f.push_back(fi);
        const double hw = fi < 59e9 ? 6.5e9 : 8.5e9;
        const double x = (fi - 59e9) / hw;
        g.push_back(15.0 - 3.0 * x * x);
    }
    return GainCurve(std::move(f), std::move(g));
}

// gt_db(P) = g0 - 10*log10(1 + 10^((P - pc)/10)); 1 dB compression where
// 10^((P-pc)/10) = 10^0.1 - 1.
PowerSweep compression_sweep(double g0, double p1db_target, double p_start, double p_stop,
                             size_t n = 401) {
    const double pc = p1db_target - 10.0 * std::log10(std::pow(10.0, 0.1) - 1.0);
    std::vector<double> p, g;
    for (size_t i = 0; i < n; ++i) {
        const double pi = p_start + (p_stop - p_start) * static_cast<double>(i) / static_cast<double>(n - 1);
        p.push_back(pi);
        g.push_back(g0 - 10.0 * std::log10(1.0 + std::pow(10.0, (pi - pc) / 10.0)));
    }
    return PowerSweep(std::move(p), std::move(g));
}

}  // namespace

TEST_CASE("parabolic curve: f0 = 59 GHz, band 52.5 to 67.5 GHz") {
    const auto curve = parabola_curve();
    const auto rep = band_3db(curve);
    const double step = 20e9 / 1000.0;  // grid spacing
    CHECK(std::abs(rep.f0 - 59e9) <= step);
    CHECK(std::abs(rep.f_low - 52.5e9) < 20e6);
    CHECK(std::abs(rep.f_high - 67.5e9) < 20e6);
    CHECK(rep.bw == rep.f_high - rep.f_low);
    CHECK_FALSE(rep.low_clipped);
    CHECK_FALSE(rep.high_clipped);
}

TEST_CASE("flat curve: tie-break to lowest frequency, both edges clipped") {
    const GainCurve flat({1e9, 2e9, 3e9, 4e9}, {5.0, 5.0, 5.0, 5.0});
    const auto rep = band_3db(flat);
    CHECK(rep.f0 == 1e9);
    CHECK(rep.low_clipped);
    CHECK(rep.high_clipped);
    CHECK(rep.f_low == 1e9);
    CHECK(rep.f_high == 4e9);
}

TEST_CASE("band_3db is invariant under a constant dB offset") {
    const auto curve = parabola_curve(501);
    auto shifted = curve;
    for (double& g : shifted.gain_db) g += 10.0;
    const auto a = band_3db(curve);
    const auto b = band_3db(shifted);
    CHECK(a.f0 == b.f0);
    CHECK(a.f_low == b.f_low);
    CHECK(a.f_high == b.f_high);
    CHECK(b.gain_at_f0 == a.gain_at_f0 + 10.0);
}

TEST_CASE("multiple lobes: only the contiguous interval containing f0 counts") {
    // main lobe around index 5, secondary lobe above threshold at the start
    const GainCurve curve({1, 2, 3, 4, 5, 6, 7, 8, 9},
                          {9.0, 4.0, 2.0, 8.0, 10.0, 8.0, 2.0, 9.5, 2.0});
    const auto rep = band_3db(curve);
    CHECK(rep.f0 == 5.0);
    CHECK(rep.f_low > 3.0);
    CHECK(rep.f_high < 7.0);
}

TEST_CASE("band_3db rejects short curves") {
    CHECK_THROWS_AS(GainCurve({1e9, 2e9}, {0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("p1db recovers the analytic crossing at -21.8 dBm") {
    const auto sweep = compression_sweep(15.0, -21.8, -45.0, -10.0);
    CHECK(std::abs(p1db(sweep) - (-21.8)) < 0.05);
}

TEST_CASE("p1db is invariant under gain offset and tail points") {
    const auto sweep = compression_sweep(15.0, -21.8, -45.0, -10.0);
    const double base = p1db(sweep);
    auto shifted = sweep;
    for (double& g : shifted.gt_db) g += 5.0;
    CHECK(p1db(shifted) == doctest::Approx(base).epsilon(1e-12));
    // appending points beyond the crossing does not move it
    auto extended = sweep;
    extended.pin_dbm.push_back(-5.0);
    extended.gt_db.push_back(-2.0);
    CHECK(p1db(extended) == doctest::Approx(base).epsilon(1e-12));
    // strictly inside the sweep
    CHECK(base > sweep.pin_dbm.front());
    CHECK(base < sweep.pin_dbm.back());
}

TEST_CASE("p1db error paths") {
    const PowerSweep flat({-40.0, -35.0, -30.0, -25.0}, {10.0, 10.0, 10.0, 10.0});
    CHECK_THROWS_WITH_AS(p1db(flat), "P1dB not reached", std::runtime_error);

    // no plateau: gain still sloping over the 3 lowest points
    const PowerSweep sloped({-40.0, -35.0, -30.0, -25.0}, {12.0, 11.5, 11.0, 8.0});
    CHECK_THROWS_WITH_AS(p1db(sloped), doctest::Contains("no small-signal region"),
                         std::runtime_error);
}

TEST_CASE("gain_at interpolation") {
    const GainCurve curve({1e9, 2e9, 3e9}, {0.0, 10.0, 4.0});
    CHECK(gain_at(curve, 2e9) == 10.0);
    CHECK(gain_at(curve, 1.5e9) == doctest::Approx(5.0));
    CHECK(gain_at(curve, 2.5e9) == doctest::Approx(7.0));
    CHECK_THROWS_AS(gain_at(curve, 0.5e9), std::out_of_range);
    CHECK_THROWS_AS(gain_at(curve, 3.5e9), std::out_of_range);
}
