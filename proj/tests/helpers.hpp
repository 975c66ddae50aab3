#pragma once

// Shared test fixtures and independent oracles. Everything here must stay
// independent of the library code paths it is used to check.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "rfqlink/cmat2.hpp"
#include "rfqlink/constants.hpp"
#include "rfqlink/network.hpp"
#include "rfqlink/noise.hpp"

namespace rfqlink::testing {

/// Random 2x2 matrix with spectral norm strictly below max_norm.
inline CMat2 random_passive_matrix(std::mt19937& rng, double max_norm = 0.9) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMat2 m(Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
            Complex(u(rng), u(rng)), Complex(u(rng), u(rng)));
    const double norm = spectral_norm(m);
    std::uniform_real_distribution<double> scale(0.1, max_norm);
    return m * Complex(scale(rng) / norm);
}

inline TwoPortNetwork random_passive_network(std::mt19937& rng, size_t n_points, double z0 = 50.0) {
    std::vector<double> freqs;
    std::vector<CMat2> mats;
    for (size_t i = 0; i < n_points; ++i) {
        freqs.push_back(1e9 * static_cast<double>(i + 1));
        mats.push_back(random_passive_matrix(rng));
    }
    return TwoPortNetwork(std::move(freqs), std::move(mats), z0);
}

/// Matched attenuator: S11 = S22 = 0, |S21| = 10^(-loss/20).
inline TwoPortNetwork attenuator(const std::vector<double>& freqs, double loss_db, double z0 = 50.0) {
    const Complex s21(std::pow(10.0, -loss_db / 20.0), 0.0);
    std::vector<CMat2> mats(freqs.size(), CMat2(0.0, s21, s21, 0.0));
    return TwoPortNetwork(freqs, std::move(mats), z0, "pad");
}

/// Worst entrywise difference relative to the overall matrix magnitude.
inline double max_rel_err(const CMat2& a, const CMat2& b) {
    const double scale = std::max({a.max_abs(), b.max_abs(), 1e-30});
    double worst = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
    return worst / scale;
}

/// Brute-force Friis oracle: propagates absolute output noise density
/// k_B*(T_s + T_i)*G stage by stage and refers the total back to the input.
inline double friis_oracle_temperature(const std::vector<noise::NoiseStage>& stages,
                                       double t_source = 100.0) {
    const double kb = constants::k_boltzmann;
    double density = kb * t_source;  // W/Hz traveling through the chain
    double total_gain = 1.0;
    for (const auto& s : stages) {
        density = (density + kb * s.noise_temperature) * s.gain_linear;
        total_gain *= s.gain_linear;
    }
    // input-referred added temperature
    return density / (kb * total_gain) - t_source;
}

/// Forward model of the cold-source measurement: given DUT and downconverter
/// noise temperatures and gains, synthesizes the two gain spectra and the two
/// ONPD spectra the instrument would record.
struct ColdSourceFixture {
    noise::GainSpectrum casc_gain;
    noise::NoiseDensitySpectrum casc_onpd;
    noise::GainSpectrum dc_gain;
    noise::NoiseDensitySpectrum dc_onpd;
};

inline ColdSourceFixture synthesize_coldsource(const std::vector<double>& freqs,
                                               const std::vector<double>& t_dut,
                                               const std::vector<double>& g_dut_lin,
                                               const std::vector<double>& t_dc,
                                               const std::vector<double>& g_dc_lin,
                                               double t_source) {
    const double kb = constants::k_boltzmann;
    std::vector<double> cg, cn, dg, dn;
    for (size_t i = 0; i < freqs.size(); ++i) {
        const double g_casc = g_dut_lin[i] * g_dc_lin[i];
        const double t_casc = t_dut[i] + t_dc[i] / g_dut_lin[i];
        cg.push_back(10.0 * std::log10(g_casc));
        cn.push_back(kb * (t_source + t_casc) * g_casc);
        dg.push_back(10.0 * std::log10(g_dc_lin[i]));
        dn.push_back(kb * (t_source + t_dc[i]) * g_dc_lin[i]);
    }
    return {noise::GainSpectrum(freqs, cg, "casc"), noise::NoiseDensitySpectrum(freqs, cn, "casc"),
            noise::GainSpectrum(freqs, dg, "dc"), noise::NoiseDensitySpectrum(freqs, dn, "dc")};
}

/// Lossless coupled inductors built directly from the impedance matrix
/// Z = jw [[L1, M], [M, L2]], optionally with series resistance per branch.
inline TwoPortNetwork coupled_inductor_network(const std::vector<double>& freqs, double l1, double l2,
                                               double k, double r1 = 0.0, double r2 = 0.0,
                                               double z0 = 50.0) {
    const double m = k * std::sqrt(l1 * l2);
    std::vector<CMat2> mats;
    for (double f : freqs) {
        const double w = 2.0 * std::numbers::pi * f;
        const CMat2 z(Complex(r1, w * l1), Complex(0.0, w * m), Complex(0.0, w * m),
                      Complex(r2, w * l2));
        mats.push_back(z_to_s(z, z0));
    }
    return TwoPortNetwork(freqs, std::move(mats), z0, "coupled");
}

}  // namespace rfqlink::testing
