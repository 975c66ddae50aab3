#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rfqlink/cryo.hpp"
#include "rfqlink/qubitlink.hpp"

namespace rfqlink::io {

/// Two-column CSV: '.' decimal, ',' separator, '#' comments, optional header
/// row (detected by a non-numeric first token).
std::pair<std::vector<double>, std::vector<double>> read_xy_csv(const std::string& text);

std::string write_xy_csv(const std::string& x_name, const std::string& y_name,
                         const std::vector<double>& xs, const std::vector<double>& ys);

/// IVTable CSV: metadata comment lines (# key=value) then columns
/// v_backgate_v, i_drain_a.
cryo::IVTable read_iv_table(const std::string& text);
std::string write_iv_table(const cryo::IVTable& table);

/// One `key = value` per line, '#' comments, unknown keys rejected by the
/// typed loaders below.
std::map<std::string, std::string> read_key_values(const std::string& text);

qubitlink::AmplifierCard card_from_text(const std::string& text);
qubitlink::QubitDriveSpec spec_from_text(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace rfqlink::io
