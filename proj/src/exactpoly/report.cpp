#include "yv/report.hpp"

namespace yv {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "unknown";
}

void VerificationReport::fail(nlohmann::json item) {
  status = Status::fail;
  if (!witness.is_array()) witness = nlohmann::json::array();
  witness.push_back(std::move(item));
}

void VerificationReport::absorb(const VerificationReport& other) {
  if (other.failed()) {
    nlohmann::json item = other.witness;
    if (!other.note.empty()) item = {{"check", other.suite}, {"note", other.note}, {"witness", other.witness}};
    fail(std::move(item));
  }
  elapsed_ms += other.elapsed_ms;
}

VerificationReport make_report(std::string suite, std::optional<long> n) {
  VerificationReport r;
  r.suite = std::move(suite);
  r.n = n;
  return r;
}

VerificationReport skipped_report(std::string suite, std::optional<long> n, std::string why) {
  VerificationReport r = make_report(std::move(suite), n);
  r.status = Status::skipped;
  r.note = std::move(why);
  return r;
}

nlohmann::json to_json(const VerificationReport& r, bool with_timing) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["n"] = r.n ? nlohmann::json(*r.n) : nlohmann::json(nullptr);
  j["status"] = to_string(r.status);
  j["witness"] = r.witness;
  if (!r.note.empty()) j["note"] = r.note;
  if (with_timing) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

Status aggregate(std::span<const VerificationReport> reports) {
  bool any_pass = false;
  for (const auto& r : reports) {
    if (r.failed()) return Status::fail;
    if (r.passed()) any_pass = true;
  }
  return any_pass || reports.empty() ? Status::pass : Status::skipped;
}

}  // namespace yv
