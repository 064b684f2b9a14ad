#ifndef MALLE_REPORT_HPP
#define MALLE_REPORT_HPP

#include <string>
#include <string_view>

#include "malle/predict.hpp"

namespace malle {

inline constexpr const char* kReportVersion = "1.0.0";

/// JSON with two-space indentation and a fixed key order.
std::string to_json(const PredictionReport& r);
/// Only meta and the pair table.
std::string pairs_to_json(const PredictionReport& r);
std::string to_json(const LiftStatus& s);
std::string to_json(const OracleResult& o);

/// Inverse of to_json(PredictionReport); throws ParseError on malformed input.
PredictionReport report_from_json(std::string_view text);

std::string to_text(const PredictionReport& r);
std::string pairs_to_text(const PredictionReport& r);
std::string to_text(const OracleResult& o);

} // namespace malle

#endif // MALLE_REPORT_HPP
