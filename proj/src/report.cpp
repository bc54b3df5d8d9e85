#include "normlab/report.hpp"

#include <functional>
#include <sstream>

namespace normlab {

namespace {

bool is_rational_object(const ordered_json& v) {
  return v.is_object() && v.size() == 2 && v.contains("num") && v.contains("den");
}

std::string scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();  // numbers/bools via the JSON formatter (shortest doubles)
}

std::string command_text(const ordered_json& command) {
  std::ostringstream out;
  out << command.value("name", std::string("?"));
  if (command.contains("args")) {
    for (const auto& [key, value] : command.at("args").items())
      out << ' ' << key << '=' << scalar_text(value);
  }
  return out.str();
}

void append_csv_cell(std::ostringstream& out, bool& first, const std::string& text) {
  if (!first) out << ',';
  first = false;
  out << text;
}

}  // namespace

ordered_json rational_json(const Rational& value) {
  return ordered_json{{"num", value.num()}, {"den", value.den()}};
}

ordered_json envelope_json(const ReportEnvelope& envelope) {
  ordered_json out;
  out["version"] = envelope.version;
  out["command"] = envelope.command;
  out["duration_ms"] = envelope.duration_ms;
  out["payload"] = envelope.payload;
  return out;
}

std::string render_json(const ReportEnvelope& envelope) {
  return envelope_json(envelope).dump(2) + "\n";
}

std::string render_csv(const ReportEnvelope& envelope) {
  std::ostringstream out;
  out << "# version=" << envelope.version << "\n";
  out << "# command=" << command_text(envelope.command) << "\n";
  out << "# duration_ms=" << envelope.duration_ms << "\n";

  const ordered_json& payload = envelope.payload;
  if (payload.contains("points") && payload.at("points").is_array()) {
    out << "N,count,frequency_num,frequency_den\n";
    for (const auto& point : payload.at("points")) {
      out << scalar_text(point.at("N")) << ','
          << scalar_text(point.at("count")) << ','
          << scalar_text(point.at("frequency").at("num")) << ','
          << scalar_text(point.at("frequency").at("den")) << "\n";
    }
    return out.str();
  }

  std::ostringstream header, row;
  bool first_h = true, first_r = true;
  for (const auto& [key, value] : payload.items()) {
    if (is_rational_object(value)) {
      append_csv_cell(header, first_h, key + "_num");
      append_csv_cell(row, first_r, scalar_text(value.at("num")));
      append_csv_cell(header, first_h, key + "_den");
      append_csv_cell(row, first_r, scalar_text(value.at("den")));
    } else if (value.is_object() || value.is_array()) {
      throw std::invalid_argument(
          "csv cannot represent nested payload field '" + key + "'");
    } else {
      append_csv_cell(header, first_h, key);
      append_csv_cell(row, first_r, scalar_text(value));
    }
  }
  out << header.str() << "\n" << row.str() << "\n";
  return out.str();
}

std::string render_plain(const ReportEnvelope& envelope) {
  // The digits command answers with the digit string itself.
  if (envelope.command.value("name", std::string{}) == "digits")
    return envelope.payload.at("digits").get<std::string>() + "\n";

  std::ostringstream out;
  std::function<void(const std::string&, const ordered_json&)> emit =
      [&](const std::string& key, const ordered_json& value) {
        if (is_rational_object(value)) {
          out << key << ": " << scalar_text(value.at("num")) << '/'
              << scalar_text(value.at("den")) << "\n";
        } else if (value.is_array()) {
          for (std::size_t i = 0; i < value.size(); ++i)
            emit(key + "[" + std::to_string(i) + "]", value[i]);
        } else if (value.is_object()) {
          for (const auto& [sub, v] : value.items()) emit(key + "." + sub, v);
        } else {
          out << key << ": " << scalar_text(value) << "\n";
        }
      };
  for (const auto& [key, value] : envelope.payload.items()) emit(key, value);
  return out.str();
}

std::string render(const ReportEnvelope& envelope, const std::string& format) {
  if (format == "json") return render_json(envelope);
  if (format == "csv") return render_csv(envelope);
  if (format == "plain") return render_plain(envelope);
  throw std::invalid_argument("unknown output format: " + format);
}

}  // namespace normlab
