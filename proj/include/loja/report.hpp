#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "loja/bounds.hpp"
#include "loja/curve.hpp"

namespace loja {

inline constexpr const char* kReportSchema = "loja-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

/// Guards and probe settings read from a key=value file.
struct Config {
  GeometryGuard guard;
  std::optional<Rational> truncation;
  long double tolerance = 1e-9L;
};

/// Keys: max_n, max_support, truncation, tolerance. Lines starting with '#' are ignored.
Config parse_config(const std::string& text);
/// Reads the file named by $LOJA_CONFIG, or returns defaults when unset.
Config load_config_from_env();

struct AnalyzeOptions {
  BoundOptions bounds;
  std::optional<Curve> curve;
  ProbeOptions probe;
  std::string input_text;
};

struct AnalysisReport {
  nlohmann::json document;  // includes content_hash
  BoundStatus status = BoundStatus::Certified;
  bool hypothesis_failed = false;
};

AnalysisReport analyze(const Polynomial& f, const AnalyzeOptions& options = {});

/// Canonical text form: two-space indented JSON with a trailing newline.
std::string render(const nlohmann::json& document);
/// Hex SHA-256 of the compact dump of the document without its content_hash field.
std::string content_hash(nlohmann::json document);

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const ProbeResult& r);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const SweepResult& r);

}  // namespace loja
