#pragma once

#include <string>
#include <vector>

#include "rfqlink/cmat2.hpp"

namespace rfqlink {

enum class Representation { S, Z, Y, ABCD, T };

std::string to_string(Representation r);
Representation representation_from_string(const std::string& name);

/// Frequency-indexed S-parameter data of a linear two-port, referenced to a
/// real impedance z0. Frequencies are in Hz and strictly increasing.
struct TwoPortNetwork {
    std::vector<double> freqs;
    std::vector<CMat2> s;
    double z0 = 50.0;
    std::string label;

    TwoPortNetwork() = default;
    TwoPortNetwork(std::vector<double> freqs_, std::vector<CMat2> s_, double z0_ = 50.0,
                   std::string label_ = {});

    size_t size() const { return freqs.size(); }
};

/// Per-frequency check result plus the worst margin over the sweep.
struct CheckResult {
    std::vector<bool> ok;
    double worst_margin = 0.0;  // positive means violated by this much
    bool all_ok = true;
};

// Single-matrix conversions. z0 is the S-parameter reference impedance.
CMat2 s_to_z(const CMat2& s, double z0);
CMat2 z_to_s(const CMat2& z, double z0);
CMat2 s_to_y(const CMat2& s, double z0);
CMat2 y_to_s(const CMat2& y, double z0);
CMat2 s_to_abcd(const CMat2& s, double z0);
CMat2 abcd_to_s(const CMat2& a, double z0);
CMat2 s_to_t(const CMat2& s);
CMat2 t_to_s(const CMat2& t);

CMat2 from_s(const CMat2& s, Representation kind, double z0);
CMat2 to_s(const CMat2& x, Representation kind, double z0);

/// Converts every frequency point to the requested representation.
std::vector<CMat2> convert(const TwoPortNetwork& net, Representation kind);

/// ABCD(a)*ABCD(b) folded back to S. Requires equal z0 and identical grids.
TwoPortNetwork cascade(const TwoPortNetwork& a, const TwoPortNetwork& b);

/// Removes a known fixture from the input (left) or output (right) side.
TwoPortNetwork deembed_left(const TwoPortNetwork& measured, const TwoPortNetwork& fixture);
TwoPortNetwork deembed_right(const TwoPortNetwork& measured, const TwoPortNetwork& fixture);

/// Linear interpolation of real and imaginary parts. No extrapolation.
CMat2 at_frequency(const TwoPortNetwork& net, double f);

/// Resamples onto the given grid; every point must lie inside the sweep.
TwoPortNetwork resample(const TwoPortNetwork& net, const std::vector<double>& grid);

/// max singular value of S <= 1 + tol at each frequency.
CheckResult check_passivity(const TwoPortNetwork& net, double tol = 1e-6);
/// |S12 - S21| <= tol * max|S| at each frequency.
CheckResult check_reciprocity(const TwoPortNetwork& net, double tol = 1e-6);

TwoPortNetwork renormalize(const TwoPortNetwork& net, double z0_new);

/// Ideal thru (S11=S22=0, S21=S12=1) on the given grid.
TwoPortNetwork make_thru(const std::vector<double>& freqs, double z0 = 50.0);

}  // namespace rfqlink
