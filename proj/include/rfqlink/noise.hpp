#pragma once

#include <string>
#include <vector>

#include "rfqlink/constants.hpp"

namespace rfqlink::noise {

/// Gain vs frequency, in dB.
struct GainSpectrum {
    std::vector<double> freqs;  // Hz, strictly increasing
    std::vector<double> gain_db;
    std::string label;

    GainSpectrum() = default;
    GainSpectrum(std::vector<double> f, std::vector<double> g, std::string label = {});
};

/// Output noise power density vs frequency, W/Hz.
struct NoiseDensitySpectrum {
    std::vector<double> freqs;
    std::vector<double> onpd;  // W/Hz, > 0
    std::string label;

    NoiseDensitySpectrum() = default;
    NoiseDensitySpectrum(std::vector<double> f, std::vector<double> n, std::string label = {});
};

/// One stage of a receive chain: available gain (linear power ratio) and
/// input-referred equivalent noise temperature.
struct NoiseStage {
    double gain_linear = 1.0;
    double noise_temperature = 0.0;  // K
    std::string label;
};

/// Extracted noise-figure spectrum of the device under test. Negative
/// extracted temperatures are kept and flagged rather than discarded.
struct NfSpectrum {
    std::vector<double> freqs;
    std::vector<double> nf_db;
    std::vector<double> t_dut;    // K, may be negative near band edges
    std::vector<double> gain_db;  // extracted DUT gain
    std::vector<bool> suspect;    // true where t_dut < 0
};

double nf_db_to_temperature(double nf_db, double t0 = constants::t0_reference);
double temperature_to_nf_db(double t_kelvin, double t0 = constants::t0_reference);

/// Folds a chain into one equivalent stage: total gain is the product, total
/// temperature is the Friis sum T1 + T2/G1 + T3/(G1 G2) + ...
NoiseStage friis_cascade(const std::vector<NoiseStage>& stages);

/// T_e = (1/G_av - 1) * T_phys for a passive network.
double passive_noise_temperature(double available_gain, double t_phys);

/// Cold-source extraction: deconvolves the downconverter from a cascade
/// gain/ONPD measurement pair and returns the DUT noise figure. Inputs are
/// resampled onto the union grid of the common frequency range (gain in dB,
/// ONPD linearly).
NfSpectrum coldsource_extract(const GainSpectrum& casc_gain, const NoiseDensitySpectrum& casc_onpd,
                              const GainSpectrum& dc_gain, const NoiseDensitySpectrum& dc_onpd,
                              double t_source = constants::t0_reference,
                              double t0 = constants::t0_reference);

/// Linear interpolation on a sampled curve; throws outside the sweep.
double interp_linear(const std::vector<double>& xs, const std::vector<double>& ys, double x);

}  // namespace rfqlink::noise
