#include "rfqlink/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace rfqlink::io {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool try_number(const std::string& tok, double& out) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + tok.size() && !tok.empty();
}

double number_or_throw(const std::string& tok, size_t lineno) {
    double v;
    if (!try_number(tok, v))
        throw std::runtime_error(fmt::format("line {}: non-numeric token '{}'", lineno, tok));
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    return out;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> read_xy_csv(const std::string& text) {
    std::vector<double> xs, ys;
    std::istringstream stream(text);
    std::string line;
    size_t lineno = 0;
    bool first_row = true;
    while (std::getline(stream, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split_csv(t);
        if (first_row) {
            first_row = false;
            double v;
            if (!try_number(fields[0], v)) continue;  // header row
        }
        if (fields.size() != 2)
            throw std::runtime_error(fmt::format("line {}: expected 2 fields, got {}", lineno, fields.size()));
        xs.push_back(number_or_throw(fields[0], lineno));
        ys.push_back(number_or_throw(fields[1], lineno));
    }
    if (xs.empty()) throw std::runtime_error("CSV has no data rows");
    return {std::move(xs), std::move(ys)};
}

std::string write_xy_csv(const std::string& x_name, const std::string& y_name,
                         const std::vector<double>& xs, const std::vector<double>& ys) {
    std::string out = x_name + "," + y_name + "\n";
    for (size_t i = 0; i < xs.size(); ++i) out += fmt::format("{:.12e},{:.12e}\n", xs[i], ys[i]);
    return out;
}

cryo::IVTable read_iv_table(const std::string& text) {
    cryo::IVTable table;
    std::istringstream stream(text);
    std::string line;
    size_t lineno = 0;
    bool first_row = true;
    while (std::getline(stream, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const std::string meta = trim(t.substr(1));
            const auto eq = meta.find('=');
            if (eq == std::string::npos) continue;  // plain comment
            const std::string key = trim(meta.substr(0, eq));
            const std::string val = trim(meta.substr(eq + 1));
            if (key == "v_gs") table.v_gs = number_or_throw(val, lineno);
            else if (key == "v_ds") table.v_ds = number_or_throw(val, lineno);
            else if (key == "temperature_k") table.temperature = number_or_throw(val, lineno);
            else if (key == "width_um") table.width = number_or_throw(val, lineno);
            else if (key == "polarity") {
                if (val == "n") table.polarity = cryo::Polarity::N;
                else if (val == "p") table.polarity = cryo::Polarity::P;
                else throw std::runtime_error(fmt::format("line {}: polarity must be n or p", lineno));
            }
            continue;
        }
        auto fields = split_csv(t);
        if (first_row) {
            first_row = false;
            double v;
            if (!try_number(fields[0], v)) {
                if (fields.size() < 2 || fields[0] != "v_backgate_v" || fields[1] != "i_drain_a")
                    throw std::runtime_error(fmt::format(
                        "line {}: expected header 'v_backgate_v,i_drain_a'", lineno));
                continue;
            }
        }
        if (fields.size() != 2)
            throw std::runtime_error(fmt::format("line {}: expected 2 fields, got {}", lineno, fields.size()));
        table.v_backgate.push_back(number_or_throw(fields[0], lineno));
        table.i_drain.push_back(number_or_throw(fields[1], lineno));
    }
    table.validate();
    return table;
}

std::string write_iv_table(const cryo::IVTable& table) {
    std::string out;
    out += fmt::format("# v_gs={:.12g}\n# v_ds={:.12g}\n# temperature_k={:.12g}\n# width_um={:.12g}\n",
                       table.v_gs, table.v_ds, table.temperature, table.width);
    out += fmt::format("# polarity={}\n", table.polarity == cryo::Polarity::N ? "n" : "p");
    out += "v_backgate_v,i_drain_a\n";
    for (size_t i = 0; i < table.v_backgate.size(); ++i)
        out += fmt::format("{:.12e},{:.12e}\n", table.v_backgate[i], table.i_drain[i]);
    return out;
}

std::map<std::string, std::string> read_key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream stream(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(fmt::format("line {}: expected 'key = value'", lineno));
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return kv;
}

namespace {

class KvReader {
public:
    explicit KvReader(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    double number(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) throw std::runtime_error("missing key: " + key);
        double v;
        if (!try_number(it->second, v))
            throw std::runtime_error("key " + key + ": non-numeric value '" + it->second + "'");
        seen_.insert(key);
        return v;
    }

    double number_or(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    std::string text_or(const std::string& key, std::string fallback) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return fallback;
        seen_.insert(key);
        return it->second;
    }

    void reject_unknown() const {
        for (const auto& [k, _] : kv_)
            if (!seen_.count(k)) throw std::runtime_error("unknown key: " + k);
    }

private:
    std::map<std::string, std::string> kv_;
    std::set<std::string> seen_;
};

}  // namespace

qubitlink::AmplifierCard card_from_text(const std::string& text) {
    KvReader kv(read_key_values(text));
    qubitlink::AmplifierCard card;
    card.f0 = kv.number("f0_hz");
    card.s21_db = kv.number("s21_db");
    card.f_low = kv.number("f_low_hz");
    card.f_high = kv.number("f_high_hz");
    card.nf_min_db = kv.number("nf_min_db");
    card.ip1db_dbm = kv.number("ip1db_dbm");
    card.p_dc_mw = kv.number_or("p_dc_mw", 0.0);
    card.v_dd = kv.number_or("v_dd", 0.0);
    card.temperature = kv.number_or("temperature_k", 0.0);
    card.label = kv.text_or("label", "");
    kv.reject_unknown();
    card.validate();
    return card;
}

qubitlink::QubitDriveSpec spec_from_text(const std::string& text) {
    KvReader kv(read_key_values(text));
    qubitlink::QubitDriveSpec spec;
    const bool has_ez = kv.has("e_z_mev");
    const bool has_fl = kv.has("f_larmor_hz");
    if (has_ez == has_fl)
        throw std::runtime_error("spec needs exactly one of e_z_mev / f_larmor_hz");
    if (has_ez) {
        spec.e_z_mev = kv.number("e_z_mev");
        spec.f_larmor = qubitlink::larmor_frequency(*spec.e_z_mev);
    } else {
        spec.f_larmor = kv.number("f_larmor_hz");
    }
    spec.f_rabi = kv.number("f_rabi_hz");
    spec.v_gate = kv.number_or("v_gate_v", spec.v_gate);
    spec.min_gain_db = kv.number_or("min_gain_db", spec.min_gain_db);
    spec.max_nf_db = kv.number_or("max_nf_db", spec.max_nf_db);
    spec.infidelity_budget = kv.number_or("infidelity_budget", spec.infidelity_budget);
    spec.fidelity_target = kv.number_or("fidelity_target", spec.fidelity_target);
    spec.load_resistance = kv.number_or("load_resistance_ohm", spec.load_resistance);
    spec.ip1db_backoff_db = kv.number_or("ip1db_backoff_db", spec.ip1db_backoff_db);
    kv.reject_unknown();
    spec.validate();
    return spec;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write file: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace rfqlink::io
