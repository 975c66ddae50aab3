#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rfqlink::qubitlink {

/// Drive-link requirements for a spin qubit. Exactly one of e_z_mev /
/// f_larmor is given at construction; the other is derived.
struct QubitDriveSpec {
    std::optional<double> e_z_mev;  // Zeeman splitting, meV
    double f_larmor = 0.0;          // Hz
    double f_rabi = 0.0;            // Hz
    double v_gate = 10e-3;          // V, zero to peak
    double min_gain_db = 10.0;
    double max_nf_db = 12.0;
    double infidelity_budget = 125e-6;  // informational
    double fidelity_target = 0.999;     // informational
    double load_resistance = 50.0;      // ohm
    double ip1db_backoff_db = 0.0;

    static QubitDriveSpec from_larmor(double f_larmor_hz, double f_rabi_hz);
    static QubitDriveSpec from_zeeman(double e_z_mev, double f_rabi_hz);
    void validate() const;
};

/// Measured amplifier summary used by the budget check.
struct AmplifierCard {
    double f0 = 0.0;        // Hz
    double s21_db = 0.0;    // at f0
    double f_low = 0.0;     // 3 dB band
    double f_high = 0.0;
    double nf_min_db = 0.0;
    double ip1db_dbm = 0.0;
    double p_dc_mw = 0.0;
    double v_dd = 0.0;
    double temperature = 0.0;  // K
    std::string label;

    void validate() const;
};

struct Criterion {
    std::string name;
    double required = 0.0;
    double actual = 0.0;
    double margin = 0.0;  // positive means pass with headroom
    bool pass = false;
};

struct BudgetReport {
    std::vector<Criterion> criteria;
    bool overall_pass = false;
};

double larmor_frequency(double e_z_mev);  // Hz
double zeeman_energy(double f_hz);        // meV

/// Bandwidth needed for pi/2-rotation pulses: 8 * f_rabi.
double min_bandwidth(double f_rabi);

/// Sinusoid power v^2/(2R) into the load, in dBm.
double required_output_power(double v_gate, double load_resistance);
double required_input_power(double p_out_dbm, double gain_db);

/// Evaluates gain, noise, band-coverage, and linearity criteria.
BudgetReport check_link(const AmplifierCard& card, const QubitDriveSpec& spec);

}  // namespace rfqlink::qubitlink
