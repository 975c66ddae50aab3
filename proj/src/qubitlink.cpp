#include "rfqlink/qubitlink.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rfqlink/constants.hpp"

namespace rfqlink::qubitlink {

double larmor_frequency(double e_z_mev) {
    if (e_z_mev < 0.0) throw std::invalid_argument("larmor_frequency: energy must be >= 0");
    return e_z_mev * 1e-3 * constants::elementary_charge / constants::planck;
}

double zeeman_energy(double f_hz) {
    if (f_hz < 0.0) throw std::invalid_argument("zeeman_energy: frequency must be >= 0");
    return f_hz * constants::planck / constants::elementary_charge * 1e3;
}

double min_bandwidth(double f_rabi) {
    if (f_rabi < 0.0) throw std::invalid_argument("min_bandwidth: f_rabi must be >= 0");
    return 8.0 * f_rabi;
}

double required_output_power(double v_gate, double load_resistance) {
    if (v_gate <= 0.0 || load_resistance <= 0.0)
        throw std::invalid_argument("required_output_power: inputs must be positive");
    const double p_watt = v_gate * v_gate / (2.0 * load_resistance);
    return 10.0 * std::log10(p_watt / 1e-3);
}

double required_input_power(double p_out_dbm, double gain_db) {
    return p_out_dbm - gain_db;
}

QubitDriveSpec QubitDriveSpec::from_larmor(double f_larmor_hz, double f_rabi_hz) {
    QubitDriveSpec s;
    s.f_larmor = f_larmor_hz;
    s.f_rabi = f_rabi_hz;
    s.validate();
    return s;
}

QubitDriveSpec QubitDriveSpec::from_zeeman(double e_z, double f_rabi_hz) {
    QubitDriveSpec s;
    s.e_z_mev = e_z;
    s.f_larmor = larmor_frequency(e_z);
    s.f_rabi = f_rabi_hz;
    s.validate();
    return s;
}

void QubitDriveSpec::validate() const {
    if (f_larmor <= 0.0) throw std::invalid_argument("QubitDriveSpec: f_larmor must be positive");
    if (f_rabi <= 0.0) throw std::invalid_argument("QubitDriveSpec: f_rabi must be positive");
    if (v_gate <= 0.0) throw std::invalid_argument("QubitDriveSpec: v_gate must be positive");
    if (load_resistance <= 0.0)
        throw std::invalid_argument("QubitDriveSpec: load_resistance must be positive");
}

void AmplifierCard::validate() const {
    if (!(f_low <= f0 && f0 <= f_high))
        throw std::invalid_argument("AmplifierCard: f0 must lie inside [f_low, f_high]");
}

BudgetReport check_link(const AmplifierCard& card, const QubitDriveSpec& spec) {
    card.validate();
    spec.validate();

    BudgetReport rep;
    auto add = [&rep](std::string name, double required, double actual, double margin) {
        rep.criteria.push_back({std::move(name), required, actual, margin, margin >= 0.0});
    };

    add("gain_db", spec.min_gain_db, card.s21_db, card.s21_db - spec.min_gain_db);
    add("nf_db", spec.max_nf_db, card.nf_min_db, spec.max_nf_db - card.nf_min_db);

    // drive band f_L +/- 4 f_R must sit inside the measured 3 dB band
    const double band_lo = spec.f_larmor - 4.0 * spec.f_rabi;
    const double band_hi = spec.f_larmor + 4.0 * spec.f_rabi;
    const double band_margin = std::min(band_lo - card.f_low, card.f_high - band_hi);
    add("band_coverage_hz", band_hi - band_lo, card.f_high - card.f_low, band_margin);

    const double p_in = required_input_power(
        required_output_power(spec.v_gate, spec.load_resistance), card.s21_db);
    const double p_limit = card.ip1db_dbm - spec.ip1db_backoff_db;
    add("linearity_dbm", p_limit, p_in, p_limit - p_in);

    rep.overall_pass = std::all_of(rep.criteria.begin(), rep.criteria.end(),
                                   [](const Criterion& c) { return c.pass; });
    return rep;
}

}  // namespace rfqlink::qubitlink
