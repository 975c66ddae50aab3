#include "rfqlink/cryo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace rfqlink::cryo {

namespace {

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<long>(mid), v.end());
    if (v.size() % 2 == 1) return v[mid];
    const double hi = v[mid];
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<long>(mid));
    return 0.5 * (lo + hi);
}

}  // namespace

void IVTable::validate() const {
    if (v_backgate.size() != i_drain.size() || v_backgate.size() < 2)
        throw std::invalid_argument("IVTable: needs at least 2 matched samples");
    if (width <= 0.0) throw std::invalid_argument("IVTable: width must be positive");
    for (size_t i = 1; i < v_backgate.size(); ++i) {
        if (v_backgate[i] <= v_backgate[i - 1])
            throw std::invalid_argument("IVTable: back-gate voltages must be strictly increasing");
        const bool ok = polarity == Polarity::N
                            ? i_drain[i] > i_drain[i - 1]
                            : std::abs(i_drain[i]) < std::abs(i_drain[i - 1]);
        if (!ok) throw std::invalid_argument("IVTable: non-monotone drain current");
    }
}

double solve_backgate(const IVTable& table, double j_target) {
    table.validate();
    if (j_target <= 0.0) throw std::invalid_argument("solve_backgate: j_target must be positive");
    const double i_target = j_target * table.width * 1e-3;  // mA/um * um -> A

    // work on |i|, which is monotone increasing (n) or decreasing (p) in v
    std::vector<double> mag(table.i_drain.size());
    for (size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(table.i_drain[i]);

    // grid samples hit exactly
    for (size_t i = 0; i < mag.size(); ++i)
        if (mag[i] == i_target) return table.v_backgate[i];

    const double lo_val = mag.front(), hi_val = mag.back();
    const double i_min = std::min(lo_val, hi_val), i_max = std::max(lo_val, hi_val);
    if (i_target < i_min || i_target > i_max)
        throw std::runtime_error(fmt::format(
            "bias unreachable: target {:.4g} A outside table range [{:.4g}, {:.4g}] A",
            i_target, i_min, i_max));

    const bool increasing = table.polarity == Polarity::N;
    auto interp = [&](double v) {
        auto it = std::upper_bound(table.v_backgate.begin(), table.v_backgate.end(), v);
        size_t hi = static_cast<size_t>(it - table.v_backgate.begin());
        hi = std::clamp<size_t>(hi, 1, mag.size() - 1);
        const size_t lo = hi - 1;
        const double t = (v - table.v_backgate[lo]) / (table.v_backgate[hi] - table.v_backgate[lo]);
        return mag[lo] * (1.0 - t) + mag[hi] * t;
    };

    double a = table.v_backgate.front(), b = table.v_backgate.back();
    while (b - a > 1e-9) {
        const double mid = 0.5 * (a + b);
        const bool below = interp(mid) < i_target;
        if (below == increasing) a = mid;
        else b = mid;
    }
    return 0.5 * (a + b);
}

double current_budget(double v_dd, double p_dc_mw) {
    if (v_dd <= 0.0 || p_dc_mw <= 0.0)
        throw std::invalid_argument("current_budget: inputs must be positive");
    return p_dc_mw / v_dd;  // mW / V = mA
}

double density(double i_ma, double width_um) {
    if (i_ma <= 0.0 || width_um <= 0.0)
        throw std::invalid_argument("density: inputs must be positive");
    return i_ma / width_um;
}

std::vector<CoupledInductorParams> extract_lqk(const TwoPortNetwork& net) {
    std::vector<CoupledInductorParams> out;
    out.reserve(net.size());
    for (size_t i = 0; i < net.size(); ++i) {
        const double f = net.freqs[i];
        if (f <= 0.0) throw std::runtime_error("extract_lqk: frequency must be positive");
        const double w = 2.0 * std::numbers::pi * f;
        const CMat2 z = s_to_z(net.s[i], net.z0);

        CoupledInductorParams p;
        p.freq = f;
        p.l1 = z(0, 0).imag() / w;
        p.l2 = z(1, 1).imag() / w;
        p.m = z(1, 0).imag() / w;
        p.q1 = z(0, 0).imag() / z(0, 0).real();
        p.q2 = z(1, 1).imag() / z(1, 1).real();
        p.k = (p.l1 > 0.0 && p.l2 > 0.0) ? p.m / std::sqrt(p.l1 * p.l2)
                                         : std::numeric_limits<double>::quiet_NaN();
        out.push_back(p);
    }
    return out;
}

PassiveComparison compare_passive(const TwoPortNetwork& rt, const TwoPortNetwork& ct) {
    const double lo = std::max(rt.freqs.front(), ct.freqs.front());
    const double hi = std::min(rt.freqs.back(), ct.freqs.back());
    if (lo > hi) throw std::runtime_error("compare_passive: empty frequency overlap");

    std::set<double> grid_set;
    for (const auto* fs : {&rt.freqs, &ct.freqs})
        for (double f : *fs)
            if (f >= lo && f <= hi) grid_set.insert(f);
    const std::vector<double> grid(grid_set.begin(), grid_set.end());

    const auto rt_p = extract_lqk(resample(rt, grid));
    const auto ct_p = extract_lqk(resample(ct, grid));

    PassiveComparison cmp;
    cmp.freqs = grid;
    std::vector<double> dq_all, dl_all;
    for (size_t i = 0; i < grid.size(); ++i) {
        const auto& a = rt_p[i];
        const auto& b = ct_p[i];
        cmp.dq1_pct.push_back(100.0 * (b.q1 - a.q1) / a.q1);
        cmp.dq2_pct.push_back(100.0 * (b.q2 - a.q2) / a.q2);
        cmp.dl1_pct.push_back(100.0 * (b.l1 - a.l1) / a.l1);
        cmp.dl2_pct.push_back(100.0 * (b.l2 - a.l2) / a.l2);
        cmp.dk.push_back(b.k - a.k);
        dq_all.push_back(cmp.dq1_pct.back());
        dq_all.push_back(cmp.dq2_pct.back());
        dl_all.push_back(cmp.dl1_pct.back());
        dl_all.push_back(cmp.dl2_pct.back());
    }
    cmp.q_increased = median(dq_all) > 0.0;
    cmp.l_decreased = median(dl_all) < 0.0;
    return cmp;
}

}  // namespace rfqlink::cryo
