#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "quatrep/local_field.hpp"

namespace quatrep {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

struct CheckParams {
  std::string base;  // "padic" or "equal"; empty picks padic for prime q
  std::uint32_t q = 2;
  unsigned d = 2;
  int f = 1;
  long ell = 0;  // 0 for characteristic-0 coefficients
  int precision = 12;
  std::uint64_t seed = 1;
  int samples = 100;
  std::size_t limit = 100000;  // largest |Gamma_f| to enumerate

  std::uint32_t p() const;
  unsigned e() const;
  FieldKind kind() const;
  /// Throws DomainError for inconsistent combinations.
  void validate() const;
};

nlohmann::json to_json(const CheckParams& p);
CheckParams params_from_json(const nlohmann::json& j);

struct CheckInfo {
  std::string id;    // C1 .. C10
  std::string name;  // e.g. tame-decomposition
  std::string summary;
};

const std::vector<CheckInfo>& catalogue();
/// Accepts an id or a name; throws DomainError for unknown checks.
const CheckInfo& find_check(const std::string& id_or_name);

struct CheckReport {
  std::string id, check;
  CheckParams params;
  std::string verdict;  // pass | fail | flagged-discrepancy
  nlohmann::json witness;
  double timing_ms = 0;

  /// Everything except timing: deterministic for fixed (check, params, version).
  nlohmann::json body() const;
  std::string body_hash() const;
  nlohmann::json to_json() const;
};

CheckReport run_check(const std::string& id_or_name, const CheckParams& params);

/// Re-derive the verdict of a report from its witness with the module-level
/// verify operations only. Returns an empty string when consistent, else the reason.
std::string verify_report_witness(const CheckReport& r);

/// Hex SHA-256 of a string.
std::string sha256_hex(const std::string& s);

}  // namespace quatrep

#include "quatrep/commutator.hpp"

namespace quatrep {

/// Exact serialization of truncated quaternion elements (raw coordinates).
nlohmann::json quat_to_json(const QuatElem& x);
QuatElem quat_from_json(const Algebra& alg, const nlohmann::json& j);
nlohmann::json witness_to_json(const Algebra& alg, const CommutatorWitness& w);
CommutatorWitness witness_from_json(const Algebra& alg, const nlohmann::json& j);

/// sum over k of teich(digits[k]) p_D^k, to the given precision.
QuatElem quat_from_level_digits(const Algebra& alg, const std::vector<GaloisField::Elem>& digits, int prec);

}  // namespace quatrep
