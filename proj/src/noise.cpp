#include "rfqlink/noise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace rfqlink::noise {

namespace {

void check_spectrum(const std::vector<double>& freqs, size_t n_values, const char* what) {
    if (freqs.empty() || freqs.size() != n_values)
        throw std::invalid_argument(fmt::format("{}: sizes must match and be nonzero", what));
    for (size_t i = 1; i < freqs.size(); ++i)
        if (freqs[i] <= freqs[i - 1])
            throw std::invalid_argument(fmt::format("{}: frequencies must be strictly increasing", what));
}

}  // namespace

GainSpectrum::GainSpectrum(std::vector<double> f, std::vector<double> g, std::string label_)
    : freqs(std::move(f)), gain_db(std::move(g)), label(std::move(label_)) {
    check_spectrum(freqs, gain_db.size(), "GainSpectrum");
}

NoiseDensitySpectrum::NoiseDensitySpectrum(std::vector<double> f, std::vector<double> n,
                                           std::string label_)
    : freqs(std::move(f)), onpd(std::move(n)), label(std::move(label_)) {
    check_spectrum(freqs, onpd.size(), "NoiseDensitySpectrum");
    for (double v : onpd)
        if (v <= 0.0) throw std::invalid_argument("NoiseDensitySpectrum: ONPD must be positive");
}

double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x < xs.front() || x > xs.back())
        throw std::out_of_range(
            fmt::format("interpolation point {} outside [{}, {}]", x, xs.front(), xs.back()));
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    const size_t hi = static_cast<size_t>(it - xs.begin());
    if (hi < xs.size() && xs[hi] == x) return ys[hi];
    const size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] * (1.0 - t) + ys[hi] * t;
}

double nf_db_to_temperature(double nf_db, double t0) {
    if (nf_db < 0.0) throw std::invalid_argument("nf_db_to_temperature: NF must be >= 0 dB");
    return t0 * (std::pow(10.0, nf_db / 10.0) - 1.0);
}

double temperature_to_nf_db(double t_kelvin, double t0) {
    if (t_kelvin < 0.0) throw std::invalid_argument("temperature_to_nf_db: temperature must be >= 0 K");
    return 10.0 * std::log10(1.0 + t_kelvin / t0);
}

NoiseStage friis_cascade(const std::vector<NoiseStage>& stages) {
    if (stages.empty()) throw std::invalid_argument("friis_cascade: empty stage list");
    double gain = 1.0;
    double temp = 0.0;
    for (const auto& s : stages) {
        if (s.gain_linear <= 0.0) throw std::invalid_argument("friis_cascade: stage gain must be positive");
        if (s.noise_temperature < 0.0)
            throw std::invalid_argument("friis_cascade: stage temperature must be >= 0 K");
        temp += s.noise_temperature / gain;
        gain *= s.gain_linear;
    }
    return NoiseStage{gain, temp, "cascade"};
}

double passive_noise_temperature(double available_gain, double t_phys) {
    if (available_gain <= 0.0 || available_gain > 1.0)
        throw std::invalid_argument("passive_noise_temperature: gain must be in (0, 1]");
    if (t_phys < 0.0)
        throw std::invalid_argument("passive_noise_temperature: temperature must be >= 0 K");
    return (1.0 / available_gain - 1.0) * t_phys;
}

NfSpectrum coldsource_extract(const GainSpectrum& casc_gain, const NoiseDensitySpectrum& casc_onpd,
                              const GainSpectrum& dc_gain, const NoiseDensitySpectrum& dc_onpd,
                              double t_source, double t0) {
    if (t_source <= 0.0) throw std::invalid_argument("coldsource_extract: t_source must be positive");

    const double lo = std::max({casc_gain.freqs.front(), casc_onpd.freqs.front(),
                                dc_gain.freqs.front(), dc_onpd.freqs.front()});
    const double hi = std::min({casc_gain.freqs.back(), casc_onpd.freqs.back(),
                                dc_gain.freqs.back(), dc_onpd.freqs.back()});
    if (lo > hi) throw std::runtime_error("coldsource_extract: empty frequency overlap");

    // union of all sample points inside the common range
    std::set<double> grid_set;
    for (const auto* fs : {&casc_gain.freqs, &casc_onpd.freqs, &dc_gain.freqs, &dc_onpd.freqs})
        for (double f : *fs)
            if (f >= lo && f <= hi) grid_set.insert(f);
    const std::vector<double> grid(grid_set.begin(), grid_set.end());

    NfSpectrum out;
    out.freqs = grid;
    for (double f : grid) {
        const double g_casc = std::pow(10.0, interp_linear(casc_gain.freqs, casc_gain.gain_db, f) / 10.0);
        const double g_dc = std::pow(10.0, interp_linear(dc_gain.freqs, dc_gain.gain_db, f) / 10.0);
        const double n_casc = interp_linear(casc_onpd.freqs, casc_onpd.onpd, f);
        const double n_dc = interp_linear(dc_onpd.freqs, dc_onpd.onpd, f);

        const double t_casc = n_casc / (constants::k_boltzmann * g_casc) - t_source;
        const double t_dc = n_dc / (constants::k_boltzmann * g_dc) - t_source;
        if (t_casc < 0.0 || t_dc < 0.0)
            throw std::runtime_error(fmt::format(
                "coldsource_extract: ONPD below source floor at {} Hz (T_casc={:.3g} K, T_dc={:.3g} K)",
                f, t_casc, t_dc));

        const double g_dut = g_casc / g_dc;
        const double t_dut = t_casc - t_dc / g_dut;
        const double ratio = 1.0 + t_dut / t0;
        out.t_dut.push_back(t_dut);
        out.gain_db.push_back(10.0 * std::log10(g_dut));
        out.nf_db.push_back(ratio > 0.0 ? 10.0 * std::log10(ratio)
                                        : std::numeric_limits<double>::quiet_NaN());
        out.suspect.push_back(t_dut < 0.0);
    }
    return out;
}

}  // namespace rfqlink::noise
