#include "rfqlink/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace rfqlink::touchstone {

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, size_t lineno) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + tok.size())
        throw std::runtime_error(fmt::format("line {}: non-numeric token '{}'", lineno, tok));
    return v;
}

[[noreturn]] void bad_option(size_t lineno, const std::string& detail) {
    throw std::runtime_error(fmt::format("line {}: malformed option line: {}", lineno, detail));
}

std::pair<double, double> to_complex_pair(ValueFormat f, double a, double b) {
    constexpr double deg = std::numbers::pi / 180.0;
    switch (f) {
        case ValueFormat::RI: return {a, b};
        case ValueFormat::MA: return {a * std::cos(b * deg), a * std::sin(b * deg)};
        case ValueFormat::DB: {
            const double mag = std::pow(10.0, a / 20.0);
            return {mag * std::cos(b * deg), mag * std::sin(b * deg)};
        }
    }
    throw std::logic_error("bad value format");
}

std::pair<double, double> from_complex(ValueFormat f, Complex v) {
    constexpr double deg = 180.0 / std::numbers::pi;
    switch (f) {
        case ValueFormat::RI: return {v.real(), v.imag()};
        case ValueFormat::MA: return {std::abs(v), std::arg(v) * deg};
        case ValueFormat::DB: return {20.0 * std::log10(std::abs(v)), std::arg(v) * deg};
    }
    throw std::logic_error("bad value format");
}

}  // namespace

double unit_scale(FreqUnit u) {
    switch (u) {
        case FreqUnit::Hz: return 1.0;
        case FreqUnit::kHz: return 1e3;
        case FreqUnit::MHz: return 1e6;
        case FreqUnit::GHz: return 1e9;
    }
    return 1.0;
}

std::string to_string(FreqUnit u) {
    switch (u) {
        case FreqUnit::Hz: return "Hz";
        case FreqUnit::kHz: return "kHz";
        case FreqUnit::MHz: return "MHz";
        case FreqUnit::GHz: return "GHz";
    }
    return "?";
}

std::string to_string(ParameterKind k) {
    switch (k) {
        case ParameterKind::S: return "S";
        case ParameterKind::Y: return "Y";
        case ParameterKind::Z: return "Z";
    }
    return "?";
}

std::string to_string(ValueFormat f) {
    switch (f) {
        case ValueFormat::MA: return "MA";
        case ValueFormat::DB: return "DB";
        case ValueFormat::RI: return "RI";
    }
    return "?";
}

TouchstoneDocument parse_touchstone(const std::string& text) {
    TouchstoneDocument doc;
    bool saw_option = false;
    bool saw_data = false;
    bool in_noise = false;
    int n_ports = 0;  // inferred from the first data row
    double last_net_freq = 0.0;
    double last_noise_freq = 0.0;

    std::istringstream stream(text);
    std::string raw;
    size_t lineno = 0;
    while (std::getline(stream, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();

        // full-line comment
        const auto first = raw.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (raw[first] == '!') {
            if (!saw_option && !saw_data) doc.header_comments.push_back(raw.substr(first + 1));
            continue;
        }
        if (raw[first] == '[')
            throw std::runtime_error(
                fmt::format("line {}: Touchstone v2 keyword not supported (v1 only)", lineno));

        // in-line comment
        std::string line = raw;
        if (const auto bang = line.find('!'); bang != std::string::npos) line.resize(bang);

        if (line[first] == '#') {
            if (saw_option) bad_option(lineno, "duplicate option line");
            if (saw_data) bad_option(lineno, "option line after data");
            saw_option = true;
            auto toks = split_ws(line.substr(first + 1));
            for (size_t i = 0; i < toks.size(); ++i) {
                const std::string t = upper(toks[i]);
                if (t == "HZ") doc.freq_unit = FreqUnit::Hz;
                else if (t == "KHZ") doc.freq_unit = FreqUnit::kHz;
                else if (t == "MHZ") doc.freq_unit = FreqUnit::MHz;
                else if (t == "GHZ") doc.freq_unit = FreqUnit::GHz;
                else if (t == "S") doc.parameter_kind = ParameterKind::S;
                else if (t == "Y") doc.parameter_kind = ParameterKind::Y;
                else if (t == "Z") doc.parameter_kind = ParameterKind::Z;
                else if (t == "MA") doc.value_format = ValueFormat::MA;
                else if (t == "DB") doc.value_format = ValueFormat::DB;
                else if (t == "RI") doc.value_format = ValueFormat::RI;
                else if (t == "R") {
                    if (i + 1 >= toks.size()) bad_option(lineno, "R without resistance value");
                    doc.reference_resistance = parse_number(toks[++i], lineno);
                    if (doc.reference_resistance <= 0.0)
                        bad_option(lineno, "reference resistance must be positive");
                } else {
                    bad_option(lineno, "unknown token '" + toks[i] + "'");
                }
            }
            continue;
        }

        // data row
        auto toks = split_ws(line);
        DataRow row;
        row.freq = parse_number(toks[0], lineno);
        for (size_t i = 1; i < toks.size(); ++i) row.values.push_back(parse_number(toks[i], lineno));

        if (!saw_data) {
            if (toks.size() == 3) n_ports = 1;
            else if (toks.size() == 9) n_ports = 2;
            else
                throw std::runtime_error(fmt::format(
                    "line {}: expected 3 (1-port) or 9 (2-port) fields, got {}", lineno, toks.size()));
            doc.n_ports = n_ports;
            saw_data = true;
            last_net_freq = row.freq;
            doc.data_rows.push_back(std::move(row));
            continue;
        }

        // a 5-field row after 2-port network data starts the noise block
        if (!in_noise && n_ports == 2 && toks.size() == 5 && row.freq < last_net_freq) {
            in_noise = true;
            last_noise_freq = row.freq;
            doc.noise_rows.push_back(std::move(row));
            continue;
        }

        if (in_noise) {
            if (toks.size() != 5)
                throw std::runtime_error(
                    fmt::format("line {}: noise row needs 5 fields, got {}", lineno, toks.size()));
            if (row.freq <= last_noise_freq)
                throw std::runtime_error(
                    fmt::format("line {}: noise frequencies must be strictly increasing", lineno));
            last_noise_freq = row.freq;
            doc.noise_rows.push_back(std::move(row));
            continue;
        }

        const size_t want = 1 + 2 * static_cast<size_t>(n_ports) * static_cast<size_t>(n_ports);
        if (toks.size() != want)
            throw std::runtime_error(
                fmt::format("line {}: expected {} fields, got {}", lineno, want, toks.size()));
        if (row.freq <= last_net_freq)
            throw std::runtime_error(
                fmt::format("line {}: frequencies must be strictly increasing", lineno));
        last_net_freq = row.freq;
        doc.data_rows.push_back(std::move(row));
    }

    if (doc.data_rows.empty()) throw std::runtime_error("no network data rows");
    return doc;
}

std::string serialize_touchstone(const TouchstoneDocument& doc, int precision) {
    if (doc.data_rows.empty()) throw std::invalid_argument("serialize_touchstone: empty data_rows");
    if (doc.reference_resistance <= 0.0)
        throw std::invalid_argument("serialize_touchstone: reference resistance must be positive");

    std::string out;
    for (const auto& c : doc.header_comments) out += "!" + c + "\n";
    out += fmt::format("# {} {} {} R {:.{}g}\n", to_string(doc.freq_unit),
                       to_string(doc.parameter_kind), to_string(doc.value_format),
                       doc.reference_resistance, std::max(precision, 1));

    auto emit_rows = [&](const std::vector<DataRow>& rows) {
        for (const auto& r : rows) {
            out += fmt::format("{:.{}e}", r.freq, precision);
            for (double v : r.values) out += fmt::format(" {:.{}e}", v, precision);
            out += "\n";
        }
    };
    emit_rows(doc.data_rows);
    emit_rows(doc.noise_rows);
    return out;
}

TouchstoneDocument with_format(const TouchstoneDocument& doc, ValueFormat fmt) {
    TouchstoneDocument out = doc;
    out.value_format = fmt;
    if (fmt == doc.value_format) return out;
    for (auto& row : out.data_rows) {
        for (size_t i = 0; i + 1 < row.values.size(); i += 2) {
            const auto [re, im] = to_complex_pair(doc.value_format, row.values[i], row.values[i + 1]);
            const auto [a, b] = from_complex(fmt, Complex(re, im));
            row.values[i] = a;
            row.values[i + 1] = b;
        }
    }
    return out;
}

TwoPortNetwork to_network(const TouchstoneDocument& doc) {
    if (doc.n_ports != 2)
        throw std::runtime_error(
            fmt::format("to_network: unsupported port count {} (2-port required)", doc.n_ports));

    const double scale = unit_scale(doc.freq_unit);
    std::vector<double> freqs;
    std::vector<CMat2> mats;
    freqs.reserve(doc.data_rows.size());
    mats.reserve(doc.data_rows.size());
    for (const auto& row : doc.data_rows) {
        freqs.push_back(row.freq * scale);
        // v1 two-port column order: 11, 21, 12, 22
        Complex v[4];
        for (int i = 0; i < 4; ++i) {
            const auto [re, im] = to_complex_pair(doc.value_format, row.values[static_cast<size_t>(2 * i)],
                                                  row.values[static_cast<size_t>(2 * i + 1)]);
            v[i] = Complex(re, im);
        }
        CMat2 raw(v[0], v[2], v[1], v[3]);
        switch (doc.parameter_kind) {
            case ParameterKind::S: break;
            case ParameterKind::Z: raw = z_to_s(raw, doc.reference_resistance); break;
            case ParameterKind::Y: raw = y_to_s(raw, doc.reference_resistance); break;
        }
        mats.push_back(raw);
    }
    return TwoPortNetwork(std::move(freqs), std::move(mats), doc.reference_resistance);
}

TouchstoneDocument from_network(const TwoPortNetwork& net, FreqUnit unit, ValueFormat fmt) {
    TouchstoneDocument doc;
    doc.freq_unit = unit;
    doc.parameter_kind = ParameterKind::S;
    doc.value_format = fmt;
    doc.reference_resistance = net.z0;
    doc.n_ports = 2;
    const double scale = unit_scale(unit);
    for (size_t i = 0; i < net.size(); ++i) {
        DataRow row;
        row.freq = net.freqs[i] / scale;
        const Complex order[4] = {net.s[i](0, 0), net.s[i](1, 0), net.s[i](0, 1), net.s[i](1, 1)};
        for (const Complex& c : order) {
            const auto [a, b] = from_complex(fmt, c);
            row.values.push_back(a);
            row.values.push_back(b);
        }
        doc.data_rows.push_back(std::move(row));
    }
    return doc;
}

}  // namespace rfqlink::touchstone
