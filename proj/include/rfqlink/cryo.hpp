#pragma once

#include <string>
#include <vector>

#include "rfqlink/network.hpp"

namespace rfqlink::cryo {

enum class Polarity { N, P };

/// Back-gate-voltage-to-drain-current transfer samples at fixed V_GS/V_DS and
/// temperature. p-type tables carry signed currents and negative back-gate
/// voltages; monotonicity holds on |i_drain| with decreasing v_backgate.
struct IVTable {
    std::vector<double> v_backgate;  // V, strictly increasing
    std::vector<double> i_drain;     // A, signed
    double v_gs = 0.0;
    double v_ds = 0.0;
    double temperature = 300.0;  // K
    double width = 1.0;          // um
    Polarity polarity = Polarity::N;

    void validate() const;
};

struct CoupledInductorParams {
    double freq = 0.0;  // Hz
    double l1 = 0.0;    // H
    double l2 = 0.0;
    double m = 0.0;
    double k = 0.0;  // NaN when l1 or l2 is nonpositive
    double q1 = 0.0;
    double q2 = 0.0;
};

struct PassiveComparison {
    std::vector<double> freqs;
    std::vector<double> dq1_pct, dq2_pct;
    std::vector<double> dl1_pct, dl2_pct;
    std::vector<double> dk;
    bool q_increased = false;  // median dQ > 0
    bool l_decreased = false;  // median dL < 0
};

/// Solves i_drain(v_backgate) = j_target * width on the linearly interpolated
/// table, by bisection to 1e-9 V. j_target in mA/um.
double solve_backgate(const IVTable& table, double j_target);

/// Total supply current in mA from P_DC (mW) and V_DD (V).
double current_budget(double v_dd, double p_dc_mw);

/// Current density in mA/um.
double density(double i_ma, double width_um);

/// Series-branch L/Q/k from Z-parameters: L_i = Im(Z_ii)/w, M = Im(Z21)/w,
/// k = M/sqrt(L1 L2), Q_i = Im(Z_ii)/Re(Z_ii).
std::vector<CoupledInductorParams> extract_lqk(const TwoPortNetwork& net);

/// Percentage change of L/Q (and absolute change of k) of the cryogenic
/// network versus the room-temperature one, on the common grid.
PassiveComparison compare_passive(const TwoPortNetwork& rt, const TwoPortNetwork& ct);

}  // namespace rfqlink::cryo
