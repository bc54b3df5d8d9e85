#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "normlab/rational.hpp"

namespace normlab {

// Insertion-ordered JSON keeps serialized reports stable field-for-field.
using ordered_json = nlohmann::ordered_json;

/// Everything a command prints: tool version, the resolved configuration it
/// ran with, wall-clock duration, and the payload proper. Only duration_ms
/// varies between identical runs; determinism checks compare the rest.
struct ReportEnvelope {
  std::string version;
  ordered_json command;  // {"name": ..., "args": {...}}
  std::int64_t duration_ms = 0;
  ordered_json payload;
};

ordered_json rational_json(const Rational& value);

ordered_json envelope_json(const ReportEnvelope& envelope);

std::string render_json(const ReportEnvelope& envelope);
/// Flat payloads become a header plus one row ({num,den} pairs flattened to
/// two columns); trajectory payloads use the fixed schema
/// "N,count,frequency_num,frequency_den" with one row per point. Envelope
/// metadata rides along as leading "# key=value" comment lines. Payloads
/// with other nested structure are rejected.
std::string render_csv(const ReportEnvelope& envelope);
/// "key: value" lines; the digits command prints the raw digit string only.
std::string render_plain(const ReportEnvelope& envelope);

std::string render(const ReportEnvelope& envelope, const std::string& format);

}  // namespace normlab
