#include "rfqlink/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace rfqlink::metrics {

namespace {

void check_xy(const std::vector<double>& xs, const std::vector<double>& ys, size_t min_len,
              const char* what) {
    if (xs.size() != ys.size() || xs.size() < min_len)
        throw std::invalid_argument(
            fmt::format("{}: needs at least {} matched points", what, min_len));
    for (size_t i = 1; i < xs.size(); ++i)
        if (xs[i] <= xs[i - 1])
            throw std::invalid_argument(fmt::format("{}: x values must be strictly increasing", what));
}

}  // namespace

GainCurve::GainCurve(std::vector<double> f, std::vector<double> g)
    : freqs(std::move(f)), gain_db(std::move(g)) {
    check_xy(freqs, gain_db, 3, "GainCurve");
}

PowerSweep::PowerSweep(std::vector<double> p, std::vector<double> g)
    : pin_dbm(std::move(p)), gt_db(std::move(g)) {
    check_xy(pin_dbm, gt_db, 4, "PowerSweep");
}

BandReport band_3db(const GainCurve& curve, double delta_db) {
    if (curve.freqs.size() < 3) throw std::invalid_argument("band_3db: fewer than 3 points");
    const auto& f = curve.freqs;
    const auto& g = curve.gain_db;

    // ties broken by lowest frequency
    size_t peak = 0;
    for (size_t i = 1; i < g.size(); ++i)
        if (g[i] > g[peak]) peak = i;

    BandReport rep;
    rep.f0 = f[peak];
    rep.gain_at_f0 = g[peak];
    const double thr = g[peak] - delta_db;

    // walk left within the contiguous lobe
    size_t i = peak;
    while (i > 0 && g[i - 1] >= thr) --i;
    if (i == 0) {
        rep.f_low = f.front();
        rep.low_clipped = true;
    } else {
        const double t = (thr - g[i - 1]) / (g[i] - g[i - 1]);
        rep.f_low = f[i - 1] + t * (f[i] - f[i - 1]);
    }

    size_t j = peak;
    while (j + 1 < g.size() && g[j + 1] >= thr) ++j;
    if (j + 1 == g.size()) {
        rep.f_high = f.back();
        rep.high_clipped = true;
    } else {
        const double t = (g[j] - thr) / (g[j] - g[j + 1]);
        rep.f_high = f[j] + t * (f[j + 1] - f[j]);
    }

    rep.bw = rep.f_high - rep.f_low;
    return rep;
}

double p1db(const PowerSweep& sweep) {
    const auto& p = sweep.pin_dbm;
    const auto& g = sweep.gt_db;

    const double g0 = (g[0] + g[1] + g[2]) / 3.0;
    const double spread = *std::max_element(g.begin(), g.begin() + 3) -
                          *std::min_element(g.begin(), g.begin() + 3);
    if (spread > 0.1)
        throw std::runtime_error(
            fmt::format("no small-signal region: plateau spread {:.3f} dB exceeds 0.1 dB", spread));

    const double thr = g0 - 1.0;
    for (size_t i = 1; i < g.size(); ++i) {
        if (g[i] < thr) {
            const double t = (g[i - 1] - thr) / (g[i - 1] - g[i]);
            return p[i - 1] + t * (p[i] - p[i - 1]);
        }
    }
    throw std::runtime_error("P1dB not reached");
}

double gain_at(const GainCurve& curve, double f) {
    if (f < curve.freqs.front() || f > curve.freqs.back())
        throw std::out_of_range(fmt::format("gain_at: {} Hz outside sweep [{}, {}]", f,
                                            curve.freqs.front(), curve.freqs.back()));
    auto it = std::lower_bound(curve.freqs.begin(), curve.freqs.end(), f);
    const size_t hi = static_cast<size_t>(it - curve.freqs.begin());
    if (hi < curve.freqs.size() && curve.freqs[hi] == f) return curve.gain_db[hi];
    const size_t lo = hi - 1;
    const double t = (f - curve.freqs[lo]) / (curve.freqs[hi] - curve.freqs[lo]);
    return curve.gain_db[lo] * (1.0 - t) + curve.gain_db[hi] * t;
}

}  // namespace rfqlink::metrics
