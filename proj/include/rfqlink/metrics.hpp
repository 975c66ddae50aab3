#pragma once

#include <vector>

namespace rfqlink::metrics {

/// |S21|-style gain curve in dB over frequency.
struct GainCurve {
    std::vector<double> freqs;  // Hz, strictly increasing
    std::vector<double> gain_db;

    GainCurve() = default;
    GainCurve(std::vector<double> f, std::vector<double> g);
};

/// Transducer gain vs input power sweep.
struct PowerSweep {
    std::vector<double> pin_dbm;  // strictly increasing
    std::vector<double> gt_db;

    PowerSweep() = default;
    PowerSweep(std::vector<double> p, std::vector<double> g);
};

struct BandReport {
    double f0 = 0.0;         // Hz, gain peak
    double gain_at_f0 = 0.0; // dB
    double f_low = 0.0;
    double f_high = 0.0;
    double bw = 0.0;
    bool low_clipped = false;   // edge beyond the sweep start
    bool high_clipped = false;  // edge beyond the sweep end
};

/// Peak and delta-dB band edges of the contiguous lobe containing the peak.
/// Edges are located by linear interpolation; an edge outside the sweep is
/// clipped to the sweep limit and flagged.
BandReport band_3db(const GainCurve& curve, double delta_db = 3.0);

/// Input-referred 1 dB compression point. The small-signal reference is the
/// mean of the 3 lowest-power points (spread must be <= 0.1 dB).
double p1db(const PowerSweep& sweep);

/// Linear interpolation in dB; throws outside the sweep.
double gain_at(const GainCurve& curve, double f);

}  // namespace rfqlink::metrics
