#include "rfqlink/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace rfqlink {

namespace {

constexpr double kSingularFloor = 1e-300;

[[noreturn]] void singular_at(const char* what, double f) {
    throw std::runtime_error(fmt::format("{}: singular conversion at {} Hz", what, f));
}

}  // namespace

double spectral_norm(const CMat2& a) {
    // eigenvalues of the Hermitian product A^H A
    const double p = std::norm(a(0, 0)) + std::norm(a(1, 0));
    const double q = std::norm(a(0, 1)) + std::norm(a(1, 1));
    const Complex c = std::conj(a(0, 0)) * a(0, 1) + std::conj(a(1, 0)) * a(1, 1);
    const double disc = std::sqrt((p - q) * (p - q) + 4.0 * std::norm(c));
    return std::sqrt(0.5 * (p + q + disc));
}

std::string to_string(Representation r) {
    switch (r) {
        case Representation::S: return "S";
        case Representation::Z: return "Z";
        case Representation::Y: return "Y";
        case Representation::ABCD: return "ABCD";
        case Representation::T: return "T";
    }
    return "?";
}

Representation representation_from_string(const std::string& name) {
    std::string n;
    for (char ch : name) n.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    if (n == "S") return Representation::S;
    if (n == "Z") return Representation::Z;
    if (n == "Y") return Representation::Y;
    if (n == "ABCD") return Representation::ABCD;
    if (n == "T") return Representation::T;
    throw std::invalid_argument("unknown representation: " + name);
}

TwoPortNetwork::TwoPortNetwork(std::vector<double> freqs_, std::vector<CMat2> s_, double z0_,
                               std::string label_)
    : freqs(std::move(freqs_)), s(std::move(s_)), z0(z0_), label(std::move(label_)) {
    if (freqs.empty() || freqs.size() != s.size())
        throw std::invalid_argument("TwoPortNetwork: frequency and matrix counts must match and be nonzero");
    if (z0 <= 0.0) throw std::invalid_argument("TwoPortNetwork: z0 must be positive");
    for (size_t i = 1; i < freqs.size(); ++i)
        if (freqs[i] <= freqs[i - 1])
            throw std::invalid_argument("TwoPortNetwork: frequencies must be strictly increasing");
}

CMat2 s_to_z(const CMat2& s, double z0) {
    const CMat2 i = CMat2::identity();
    const CMat2 denom = i - s;
    if (denom.singular(kSingularFloor)) throw std::runtime_error("s_to_z: (I - S) singular");
    return (i + s) * denom.inverse() * Complex(z0);
}

CMat2 z_to_s(const CMat2& z, double z0) {
    const CMat2 zi = CMat2::identity() * Complex(z0);
    const CMat2 denom = z + zi;
    if (denom.singular(kSingularFloor)) throw std::runtime_error("z_to_s: (Z + z0 I) singular");
    return (z - zi) * denom.inverse();
}

CMat2 s_to_y(const CMat2& s, double z0) {
    const CMat2 i = CMat2::identity();
    const CMat2 denom = i + s;
    if (denom.singular(kSingularFloor)) throw std::runtime_error("s_to_y: (I + S) singular");
    return (i - s) * denom.inverse() / Complex(z0);
}

CMat2 y_to_s(const CMat2& y, double z0) {
    const CMat2 i = CMat2::identity();
    const CMat2 zy = y * Complex(z0);
    const CMat2 denom = i + zy;
    if (denom.singular(kSingularFloor)) throw std::runtime_error("y_to_s: (I + z0 Y) singular");
    return (i - zy) * denom.inverse();
}

CMat2 s_to_abcd(const CMat2& s, double z0) {
    const Complex s11 = s(0, 0), s12 = s(0, 1), s21 = s(1, 0), s22 = s(1, 1);
    if (std::abs(s21) < kSingularFloor) throw std::runtime_error("s_to_abcd: S21 is zero");
    const Complex two_s21 = 2.0 * s21;
    return CMat2(((1.0 + s11) * (1.0 - s22) + s12 * s21) / two_s21,
                 z0 * ((1.0 + s11) * (1.0 + s22) - s12 * s21) / two_s21,
                 ((1.0 - s11) * (1.0 - s22) - s12 * s21) / (z0 * two_s21),
                 ((1.0 - s11) * (1.0 + s22) + s12 * s21) / two_s21);
}

CMat2 abcd_to_s(const CMat2& m, double z0) {
    const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const Complex denom = a + b / z0 + c * z0 + d;
    if (std::abs(denom) < kSingularFloor) throw std::runtime_error("abcd_to_s: singular denominator");
    return CMat2((a + b / z0 - c * z0 - d) / denom, 2.0 * (a * d - b * c) / denom,
                 2.0 / denom, (-a + b / z0 - c * z0 + d) / denom);
}

// Wave-cascade convention: T(a cascaded with b) = T(a) * T(b).
CMat2 s_to_t(const CMat2& s) {
    const Complex s11 = s(0, 0), s12 = s(0, 1), s21 = s(1, 0), s22 = s(1, 1);
    if (std::abs(s21) < kSingularFloor) throw std::runtime_error("s_to_t: S21 is zero");
    return CMat2(1.0 / s21, -s22 / s21, s11 / s21, (s12 * s21 - s11 * s22) / s21);
}

CMat2 t_to_s(const CMat2& t) {
    const Complex t11 = t(0, 0);
    if (std::abs(t11) < kSingularFloor) throw std::runtime_error("t_to_s: T11 is zero");
    return CMat2(t(1, 0) / t11, t.det() / t11, 1.0 / t11, -t(0, 1) / t11);
}

CMat2 from_s(const CMat2& s, Representation kind, double z0) {
    switch (kind) {
        case Representation::S: return s;
        case Representation::Z: return s_to_z(s, z0);
        case Representation::Y: return s_to_y(s, z0);
        case Representation::ABCD: return s_to_abcd(s, z0);
        case Representation::T: return s_to_t(s);
    }
    throw std::logic_error("from_s: bad kind");
}

CMat2 to_s(const CMat2& x, Representation kind, double z0) {
    switch (kind) {
        case Representation::S: return x;
        case Representation::Z: return z_to_s(x, z0);
        case Representation::Y: return y_to_s(x, z0);
        case Representation::ABCD: return abcd_to_s(x, z0);
        case Representation::T: return t_to_s(x);
    }
    throw std::logic_error("to_s: bad kind");
}

std::vector<CMat2> convert(const TwoPortNetwork& net, Representation kind) {
    std::vector<CMat2> out;
    out.reserve(net.size());
    for (size_t i = 0; i < net.size(); ++i) {
        try {
            out.push_back(from_s(net.s[i], kind, net.z0));
        } catch (const std::runtime_error& e) {
            throw std::runtime_error(fmt::format("{} at {} Hz", e.what(), net.freqs[i]));
        }
    }
    return out;
}

namespace {

void require_compatible(const TwoPortNetwork& a, const TwoPortNetwork& b, const char* what) {
    if (a.z0 != b.z0)
        throw std::invalid_argument(fmt::format("{}: reference impedances differ ({} vs {})", what, a.z0, b.z0));
    if (a.freqs != b.freqs)
        throw std::invalid_argument(fmt::format("{}: frequency grids differ; resample first", what));
}

}  // namespace

TwoPortNetwork cascade(const TwoPortNetwork& a, const TwoPortNetwork& b) {
    require_compatible(a, b, "cascade");
    std::vector<CMat2> out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        try {
            out.push_back(abcd_to_s(s_to_abcd(a.s[i], a.z0) * s_to_abcd(b.s[i], b.z0), a.z0));
        } catch (const std::runtime_error&) {
            singular_at("cascade", a.freqs[i]);
        }
    }
    return TwoPortNetwork(a.freqs, std::move(out), a.z0, a.label + "*" + b.label);
}

namespace {

TwoPortNetwork deembed_impl(const TwoPortNetwork& measured, const TwoPortNetwork& fixture, bool left) {
    require_compatible(measured, fixture, "deembed");
    std::vector<CMat2> out;
    out.reserve(measured.size());
    for (size_t i = 0; i < measured.size(); ++i) {
        CMat2 fx;
        try {
            fx = s_to_abcd(fixture.s[i], fixture.z0);
        } catch (const std::runtime_error&) {
            singular_at("deembed: fixture", measured.freqs[i]);
        }
        if (fx.singular(kSingularFloor)) singular_at("deembed: fixture", measured.freqs[i]);
        try {
            const CMat2 meas = s_to_abcd(measured.s[i], measured.z0);
            const CMat2 r = left ? fx.inverse() * meas : meas * fx.inverse();
            out.push_back(abcd_to_s(r, measured.z0));
        } catch (const std::runtime_error&) {
            singular_at("deembed", measured.freqs[i]);
        }
    }
    return TwoPortNetwork(measured.freqs, std::move(out), measured.z0, measured.label);
}

}  // namespace

TwoPortNetwork deembed_left(const TwoPortNetwork& measured, const TwoPortNetwork& fixture) {
    return deembed_impl(measured, fixture, true);
}

TwoPortNetwork deembed_right(const TwoPortNetwork& measured, const TwoPortNetwork& fixture) {
    return deembed_impl(measured, fixture, false);
}

CMat2 at_frequency(const TwoPortNetwork& net, double f) {
    if (f < net.freqs.front() || f > net.freqs.back())
        throw std::out_of_range(fmt::format(
            "at_frequency: {} Hz outside sweep [{}, {}]", f, net.freqs.front(), net.freqs.back()));
    auto it = std::lower_bound(net.freqs.begin(), net.freqs.end(), f);
    const size_t hi = static_cast<size_t>(it - net.freqs.begin());
    if (hi < net.freqs.size() && net.freqs[hi] == f) return net.s[hi];
    const size_t lo = hi - 1;
    const double t = (f - net.freqs[lo]) / (net.freqs[hi] - net.freqs[lo]);
    return net.s[lo] * Complex(1.0 - t) + net.s[hi] * Complex(t);
}

TwoPortNetwork resample(const TwoPortNetwork& net, const std::vector<double>& grid) {
    std::vector<CMat2> out;
    out.reserve(grid.size());
    for (double f : grid) out.push_back(at_frequency(net, f));
    return TwoPortNetwork(grid, std::move(out), net.z0, net.label);
}

CheckResult check_passivity(const TwoPortNetwork& net, double tol) {
    CheckResult r;
    r.ok.reserve(net.size());
    for (const auto& s : net.s) {
        const double margin = spectral_norm(s) - 1.0;
        r.ok.push_back(margin <= tol);
        r.worst_margin = std::max(r.worst_margin, margin);
        r.all_ok = r.all_ok && r.ok.back();
    }
    return r;
}

CheckResult check_reciprocity(const TwoPortNetwork& net, double tol) {
    CheckResult r;
    r.ok.reserve(net.size());
    for (const auto& s : net.s) {
        const double scale = std::max(s.max_abs(), 1e-30);
        const double margin = std::abs(s(0, 1) - s(1, 0)) - tol * scale;
        r.ok.push_back(margin <= 0.0);
        r.worst_margin = std::max(r.worst_margin, margin);
        r.all_ok = r.all_ok && r.ok.back();
    }
    return r;
}

TwoPortNetwork renormalize(const TwoPortNetwork& net, double z0_new) {
    if (z0_new <= 0.0) throw std::invalid_argument("renormalize: z0 must be positive");
    if (z0_new == net.z0) return net;
    // real-impedance re-referencing: S' = (S - rho I)(I - rho S)^-1 with
    // rho = (z_new - z_old)/(z_new + z_old); equivalent to going through Z but
    // defined for networks without a Z representation
    const double rho = (z0_new - net.z0) / (z0_new + net.z0);
    const CMat2 rho_i = CMat2::identity() * Complex(rho);
    std::vector<CMat2> out;
    out.reserve(net.size());
    for (size_t i = 0; i < net.size(); ++i) {
        const CMat2 denom = CMat2::identity() - net.s[i] * Complex(rho);
        if (denom.singular(kSingularFloor)) singular_at("renormalize", net.freqs[i]);
        out.push_back((net.s[i] - rho_i) * denom.inverse());
    }
    return TwoPortNetwork(net.freqs, std::move(out), z0_new, net.label);
}

TwoPortNetwork make_thru(const std::vector<double>& freqs, double z0) {
    std::vector<CMat2> s(freqs.size(), CMat2(0.0, 1.0, 1.0, 0.0));
    return TwoPortNetwork(freqs, std::move(s), z0, "thru");
}

}  // namespace rfqlink
