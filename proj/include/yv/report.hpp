#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <span>
#include <string>

namespace yv {

enum class Status { pass, fail, skipped };

std::string to_string(Status s);

/// Pass/fail record for one identity family at one n. Failures carry
/// witnesses (the offending coefficient, residue, ...) serialized as JSON.
struct VerificationReport {
  std::string suite;
  std::optional<long> n;
  Status status = Status::pass;
  nlohmann::json witness;  // null unless something failed
  std::string note;
  double elapsed_ms = 0.0;

  bool passed() const noexcept { return status == Status::pass; }
  bool failed() const noexcept { return status == Status::fail; }

  /// Marks the report failed and appends one witness entry.
  void fail(nlohmann::json item);
  /// Folds another report into this one (any failure fails the whole).
  void absorb(const VerificationReport& other);
};

VerificationReport make_report(std::string suite, std::optional<long> n = std::nullopt);
VerificationReport skipped_report(std::string suite, std::optional<long> n, std::string why);

nlohmann::json to_json(const VerificationReport& r, bool with_timing = true);

/// fail if any report failed; skipped if all were skipped; pass otherwise.
Status aggregate(std::span<const VerificationReport> reports);

}  // namespace yv
