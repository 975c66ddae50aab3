// rfqlink: measurement post-processing CLI for the 60 GHz qubit-control
// amplifier toolkit. Exit codes: 0 success, 1 input/parse error, 2 analysis
// error.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <tuple>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "rfqlink/cryo.hpp"
#include "rfqlink/io.hpp"
#include "rfqlink/metrics.hpp"
#include "rfqlink/network.hpp"
#include "rfqlink/noise.hpp"
#include "rfqlink/qubitlink.hpp"
#include "rfqlink/touchstone.hpp"

using nlohmann::json;
using namespace rfqlink;

namespace {

constexpr const char* kToolVersion = "0.1.0";

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fnv1a_digest(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return fmt::format("fnv1a:{:016x}", h);
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Collects inputs/results/warnings for the optional --json report.
struct Report {
    std::string command;
    json inputs = json::array();
    json results = json::object();
    std::vector<std::string> warnings;
    std::string json_path;

    std::string load(const std::string& path) {
        std::string bytes;
        try {
            bytes = io::read_file(path);
        } catch (const std::exception& e) {
            throw InputError(e.what());
        }
        inputs.push_back({{"file", path}, {"digest", fnv1a_digest(bytes)}});
        return bytes;
    }

    void finish() const {
        if (json_path.empty()) return;
        json doc;
        doc["tool_version"] = kToolVersion;
        doc["timestamp"] = iso_timestamp();
        doc["command"] = command;
        doc["inputs"] = inputs;
        doc["results"] = results;
        doc["warnings"] = warnings;
        io::write_file(json_path, doc.dump(2) + "\n");
    }
};

TwoPortNetwork load_network(Report& rep, const std::string& path) {
    const std::string text = rep.load(path);
    try {
        auto net = touchstone::to_network(touchstone::parse_touchstone(text));
        net.label = path;
        return net;
    } catch (const std::exception& e) {
        throw InputError(fmt::format("{}: {}", path, e.what()));
    }
}

std::pair<std::vector<double>, std::vector<double>> load_xy(Report& rep, const std::string& path) {
    const std::string text = rep.load(path);
    try {
        return io::read_xy_csv(text);
    } catch (const std::exception& e) {
        throw InputError(fmt::format("{}: {}", path, e.what()));
    }
}

double noise_reference_t0() {
    if (const char* env = std::getenv("RFQLINK_T0")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || v <= 0.0)
            throw InputError(fmt::format("RFQLINK_T0: invalid value '{}'", env));
        return v;
    }
    return constants::t0_reference;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) std::cout << content;
    else io::write_file(out_path, content);
}

/// Aligns two networks on the union grid of their common frequency range.
std::pair<TwoPortNetwork, TwoPortNetwork> align(const TwoPortNetwork& a, const TwoPortNetwork& b) {
    const double lo = std::max(a.freqs.front(), b.freqs.front());
    const double hi = std::min(a.freqs.back(), b.freqs.back());
    if (lo > hi) throw std::runtime_error("resample: disjoint frequency ranges");
    std::vector<double> grid;
    for (const auto* fs : {&a.freqs, &b.freqs})
        for (double f : *fs)
            if (f >= lo && f <= hi) grid.push_back(f);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return {resample(a, grid), resample(b, grid)};
}

std::string matrices_csv(const std::vector<double>& freqs, const std::vector<CMat2>& mats,
                         const std::string& prefix) {
    std::string out = "freq_hz";
    const char* names[4] = {"11", "12", "21", "22"};
    for (const char* n : names) out += fmt::format(",{}{}_re,{}{}_im", prefix, n, prefix, n);
    out += "\n";
    for (size_t i = 0; i < freqs.size(); ++i) {
        out += fmt::format("{:.12e}", freqs[i]);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                out += fmt::format(",{:.12e},{:.12e}", mats[i](r, c).real(), mats[i](r, c).imag());
        out += "\n";
    }
    return out;
}

json criterion_json(const qubitlink::Criterion& c) {
    return {{"name", c.name}, {"required", c.required}, {"actual", c.actual},
            {"margin", c.margin}, {"pass", c.pass}};
}

int run(int argc, char** argv) {
    CLI::App app{"RF measurement post-processing toolkit for cryogenic qubit-control amplifiers"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Report rep;
    for (int i = 0; i < argc; ++i) rep.command += (i ? " " : "") + std::string(argv[i]);

    std::string out_path;
    // convert
    auto* cmd_convert = app.add_subcommand("convert", "Convert a 2-port file to another representation (CSV)");
    std::string conv_in, conv_to = "abcd";
    cmd_convert->add_option("input", conv_in, "Touchstone .s2p file")->required();
    cmd_convert->add_option("--to", conv_to, "target representation: s|z|y|abcd|t");
    // cascade
    auto* cmd_cascade = app.add_subcommand("cascade", "Cascade two 2-ports (Touchstone out)");
    std::string casc_a, casc_b;
    bool casc_resample = false;
    cmd_cascade->add_option("a", casc_a)->required();
    cmd_cascade->add_option("b", casc_b)->required();
    cmd_cascade->add_flag("--resample", casc_resample, "align grids by linear interpolation");
    // deembed
    auto* cmd_deembed = app.add_subcommand("deembed", "Remove fixture(s) from a measurement (Touchstone out)");
    std::string de_meas, de_left, de_right;
    bool de_resample = false;
    cmd_deembed->add_option("measured", de_meas)->required();
    cmd_deembed->add_option("--left", de_left, "input-side fixture .s2p");
    cmd_deembed->add_option("--right", de_right, "output-side fixture .s2p");
    cmd_deembed->add_flag("--resample", de_resample, "align grids by linear interpolation");
    // nf-extract
    auto* cmd_nf = app.add_subcommand("nf-extract", "Cold-source DUT noise-figure extraction (CSV out)");
    std::string nf_cg, nf_cn, nf_dg, nf_dn;
    double nf_tsource = constants::t0_reference;
    cmd_nf->add_option("--casc-gain", nf_cg, "cascade gain CSV (freq_hz, gain_db)")->required();
    cmd_nf->add_option("--casc-onpd", nf_cn, "cascade ONPD CSV (freq_hz, w_per_hz)")->required();
    cmd_nf->add_option("--dc-gain", nf_dg, "downconverter gain CSV")->required();
    cmd_nf->add_option("--dc-onpd", nf_dn, "downconverter ONPD CSV")->required();
    cmd_nf->add_option("--tsource", nf_tsource, "source termination temperature, K");
    // band
    auto* cmd_band = app.add_subcommand("band", "Peak and 3 dB band of a gain curve");
    std::string band_in;
    double band_delta = 3.0;
    cmd_band->add_option("input", band_in, "gain CSV (freq_hz, gain_db)")->required();
    cmd_band->add_option("--delta", band_delta, "band definition, dB below peak");
    // p1db
    auto* cmd_p1db = app.add_subcommand("p1db", "Input-referred 1 dB compression point");
    std::string p1_in;
    cmd_p1db->add_option("input", p1_in, "power sweep CSV (pin_dbm, gt_db)")->required();
    // passives
    auto* cmd_pass = app.add_subcommand("passives", "L/Q/k extraction, optional RT/CT comparison");
    std::string pass_rt, pass_ct;
    cmd_pass->add_option("input", pass_rt, "network .s2p")->required();
    cmd_pass->add_option("--compare", pass_ct, "second network for delta report");
    // bias
    auto* cmd_bias = app.add_subcommand("bias", "Solve back-gate voltage for a current density");
    std::string bias_in;
    double bias_j = 0.0;
    cmd_bias->add_option("input", bias_in, "I-V table CSV")->required();
    cmd_bias->add_option("--j", bias_j, "target current density, mA/um")->required();
    // budget
    auto* cmd_budget = app.add_subcommand("budget", "Qubit drive link budget check");
    std::string bud_card, bud_spec;
    cmd_budget->add_option("--card", bud_card, "amplifier card (key = value)")->required();
    cmd_budget->add_option("--spec", bud_spec, "drive spec (key = value)")->required();

    for (auto* c : {cmd_convert, cmd_cascade, cmd_deembed, cmd_nf, cmd_band, cmd_p1db, cmd_pass,
                    cmd_bias, cmd_budget}) {
        c->add_option("--json", rep.json_path, "write an analysis report to this path");
        c->add_option("--out", out_path, "write primary output here instead of stdout");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (cmd_convert->parsed()) {
        const auto net = load_network(rep, conv_in);
        Representation kind;
        try {
            kind = representation_from_string(conv_to);
        } catch (const std::exception& e) {
            throw InputError(e.what());
        }
        const auto mats = convert(net, kind);
        emit(out_path, matrices_csv(net.freqs, mats, to_string(kind)));
        rep.results = {{"representation", to_string(kind)}, {"points", net.size()}, {"z0", net.z0}};
    } else if (cmd_cascade->parsed()) {
        auto a = load_network(rep, casc_a);
        auto b = load_network(rep, casc_b);
        if (casc_resample) std::tie(a, b) = align(a, b);
        const auto out = cascade(a, b);
        emit(out_path, touchstone::serialize_touchstone(touchstone::from_network(out)));
        rep.results = {{"points", out.size()}, {"z0", out.z0}};
    } else if (cmd_deembed->parsed()) {
        if (de_left.empty() && de_right.empty())
            throw InputError("deembed: at least one of --left/--right required");
        auto net = load_network(rep, de_meas);
        if (!de_left.empty()) {
            auto fix = load_network(rep, de_left);
            if (de_resample) std::tie(net, fix) = align(net, fix);
            net = deembed_left(net, fix);
        }
        if (!de_right.empty()) {
            auto fix = load_network(rep, de_right);
            if (de_resample) std::tie(net, fix) = align(net, fix);
            net = deembed_right(net, fix);
        }
        emit(out_path, touchstone::serialize_touchstone(touchstone::from_network(net)));
        rep.results = {{"points", net.size()}, {"z0", net.z0}};
    } else if (cmd_nf->parsed()) {
        const auto [gf1, gv1] = load_xy(rep, nf_cg);
        const auto [nf1, nv1] = load_xy(rep, nf_cn);
        const auto [gf2, gv2] = load_xy(rep, nf_dg);
        const auto [nf2, nv2] = load_xy(rep, nf_dn);
        const double t0 = noise_reference_t0();
        const auto nf = noise::coldsource_extract(noise::GainSpectrum(gf1, gv1, "cascade"),
                                                  noise::NoiseDensitySpectrum(nf1, nv1, "cascade"),
                                                  noise::GainSpectrum(gf2, gv2, "dc"),
                                                  noise::NoiseDensitySpectrum(nf2, nv2, "dc"),
                                                  nf_tsource, t0);
        std::string csv = "freq_hz,nf_db,gain_db,t_dut_k,suspect\n";
        double nf_min = std::numeric_limits<double>::infinity();
        double nf_min_freq = 0.0;
        for (size_t i = 0; i < nf.freqs.size(); ++i) {
            csv += fmt::format("{:.12e},{:.12e},{:.12e},{:.12e},{}\n", nf.freqs[i], nf.nf_db[i],
                               nf.gain_db[i], nf.t_dut[i], nf.suspect[i] ? 1 : 0);
            if (nf.suspect[i])
                rep.warnings.push_back(fmt::format("negative extracted T_DUT {:.4g} K at {:.6g} Hz",
                                                   nf.t_dut[i], nf.freqs[i]));
            else if (nf.nf_db[i] < nf_min) {
                nf_min = nf.nf_db[i];
                nf_min_freq = nf.freqs[i];
            }
        }
        emit(out_path, csv);
        rep.results = {{"points", nf.freqs.size()}, {"t_source_k", nf_tsource}, {"t0_k", t0},
                       {"nf_min_db", nf_min}, {"nf_min_freq_hz", nf_min_freq}};
    } else if (cmd_band->parsed()) {
        const auto [xs, ys] = load_xy(rep, band_in);
        const auto band = metrics::band_3db(metrics::GainCurve(xs, ys), band_delta);
        rep.results = {{"f0_hz", band.f0}, {"gain_at_f0_db", band.gain_at_f0},
                       {"f_low_hz", band.f_low}, {"f_high_hz", band.f_high}, {"bw_hz", band.bw},
                       {"low_clipped", band.low_clipped}, {"high_clipped", band.high_clipped}};
        emit(out_path, rep.results.dump(2) + "\n");
    } else if (cmd_p1db->parsed()) {
        const auto [xs, ys] = load_xy(rep, p1_in);
        const double p = metrics::p1db(metrics::PowerSweep(xs, ys));
        rep.results = {{"p1db_dbm", p}};
        emit(out_path, fmt::format("{:.6f}\n", p));
    } else if (cmd_pass->parsed()) {
        const auto rt = load_network(rep, pass_rt);
        const auto params = cryo::extract_lqk(rt);
        std::string csv = "freq_hz,l1_h,l2_h,m_h,k,q1,q2\n";
        for (const auto& p : params)
            csv += fmt::format("{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                               p.freq, p.l1, p.l2, p.m, p.k, p.q1, p.q2);
        rep.results["points"] = params.size();
        const auto passv = check_passivity(rt);
        const auto recip = check_reciprocity(rt);
        rep.results["passive"] = passv.all_ok;
        rep.results["reciprocal"] = recip.all_ok;
        if (!passv.all_ok)
            rep.warnings.push_back(fmt::format("passivity violated, worst margin {:.3g}", passv.worst_margin));
        if (!pass_ct.empty()) {
            const auto ct = load_network(rep, pass_ct);
            const auto cmp = cryo::compare_passive(rt, ct);
            csv += "\n# comparison (ct vs rt)\nfreq_hz,dq1_pct,dq2_pct,dl1_pct,dl2_pct,dk\n";
            for (size_t i = 0; i < cmp.freqs.size(); ++i)
                csv += fmt::format("{:.12e},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e}\n", cmp.freqs[i],
                                   cmp.dq1_pct[i], cmp.dq2_pct[i], cmp.dl1_pct[i], cmp.dl2_pct[i],
                                   cmp.dk[i]);
            rep.results["q_increased"] = cmp.q_increased;
            rep.results["l_decreased"] = cmp.l_decreased;
        }
        emit(out_path, csv);
    } else if (cmd_bias->parsed()) {
        const std::string text = rep.load(bias_in);
        cryo::IVTable table;
        try {
            table = io::read_iv_table(text);
        } catch (const std::exception& e) {
            throw InputError(fmt::format("{}: {}", bias_in, e.what()));
        }
        const double v = cryo::solve_backgate(table, bias_j);
        rep.results = {{"v_backgate_v", v}, {"j_target_ma_per_um", bias_j},
                       {"temperature_k", table.temperature}, {"width_um", table.width}};
        emit(out_path, fmt::format("{:.9f}\n", v));
    } else if (cmd_budget->parsed()) {
        qubitlink::AmplifierCard card;
        qubitlink::QubitDriveSpec spec;
        try {
            card = io::card_from_text(rep.load(bud_card));
            spec = io::spec_from_text(rep.load(bud_spec));
        } catch (const InputError&) {
            throw;
        } catch (const std::exception& e) {
            throw InputError(e.what());
        }
        const auto report = qubitlink::check_link(card, spec);
        json criteria = json::array();
        for (const auto& c : report.criteria) criteria.push_back(criterion_json(c));
        rep.results = {{"criteria", criteria}, {"overall_pass", report.overall_pass},
                       {"f_larmor_hz", spec.f_larmor}, {"min_bandwidth_hz", qubitlink::min_bandwidth(spec.f_rabi)}};
        rep.results["card"] = {{"f0_hz", card.f0}, {"s21_db", card.s21_db},
                               {"f_low_hz", card.f_low}, {"f_high_hz", card.f_high},
                               {"nf_min_db", card.nf_min_db}, {"ip1db_dbm", card.ip1db_dbm},
                               {"p_dc_mw", card.p_dc_mw}, {"v_dd", card.v_dd},
                               {"temperature_k", card.temperature}, {"label", card.label}};
        rep.results["spec"] = {{"f_larmor_hz", spec.f_larmor}, {"f_rabi_hz", spec.f_rabi},
                               {"v_gate_v", spec.v_gate}, {"min_gain_db", spec.min_gain_db},
                               {"max_nf_db", spec.max_nf_db},
                               {"load_resistance_ohm", spec.load_resistance},
                               {"ip1db_backoff_db", spec.ip1db_backoff_db}};
        std::string text;
        for (const auto& c : report.criteria)
            text += fmt::format("{:<18} required {:>14.6g}  actual {:>14.6g}  margin {:>+12.6g}  {}\n",
                                c.name, c.required, c.actual, c.margin, c.pass ? "PASS" : "FAIL");
        text += fmt::format("overall: {}\n", report.overall_pass ? "PASS" : "FAIL");
        emit(out_path, text);
    }

    rep.finish();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
