#pragma once

#include <string>
#include <vector>

#include "rfqlink/network.hpp"

namespace rfqlink::touchstone {

enum class FreqUnit { Hz, kHz, MHz, GHz };
enum class ParameterKind { S, Y, Z };
enum class ValueFormat { MA, DB, RI };

double unit_scale(FreqUnit u);
std::string to_string(FreqUnit u);
std::string to_string(ParameterKind k);
std::string to_string(ValueFormat f);

/// One network-data row: frequency in the document's declared unit plus
/// 2*n_ports^2 raw values in the declared format.
struct DataRow {
    double freq = 0.0;
    std::vector<double> values;
};

/// Touchstone v1 document. Values are kept in the declared unit and format;
/// to_network() applies the conversions.
struct TouchstoneDocument {
    FreqUnit freq_unit = FreqUnit::GHz;
    ParameterKind parameter_kind = ParameterKind::S;
    ValueFormat value_format = ValueFormat::MA;
    double reference_resistance = 50.0;
    int n_ports = 2;
    std::vector<DataRow> data_rows;
    std::vector<DataRow> noise_rows;
    std::vector<std::string> header_comments;
};

/// Parses Touchstone v1 text. Errors carry 1-based line numbers.
TouchstoneDocument parse_touchstone(const std::string& text);

/// Canonical serialization: header comments, one option line, fixed column
/// order, LF line endings. `precision` is the exponent-notation precision
/// (12 keeps values to better than 1e-12 relative).
std::string serialize_touchstone(const TouchstoneDocument& doc, int precision = 12);

/// Re-expresses the network data in another value format; complex values are
/// unchanged.
TouchstoneDocument with_format(const TouchstoneDocument& doc, ValueFormat fmt);

/// Builds the network representation. Requires a 2-port document; Y/Z data is
/// converted to S against the reference resistance.
TwoPortNetwork to_network(const TouchstoneDocument& doc);

/// Builds a 2-port S-kind document from a network.
TouchstoneDocument from_network(const TwoPortNetwork& net, FreqUnit unit = FreqUnit::GHz,
                                ValueFormat fmt = ValueFormat::RI);

}  // namespace rfqlink::touchstone
