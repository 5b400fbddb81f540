#pragma once

// Instance files, the verification suite, and machine-readable reports.
//
// Instance schema:
//   {"name": str, "e_dim": int,
//    "orbits": [{"stabilizer": [bitstring, ...], "multiplicity": int}, ...]}
// Report schema:
//   {"name", "dim_F", "seed", "checks": [{"id", "status", "count", "witness"?}]}

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fconv/eset.hpp"
#include "fconv/modules.hpp"

namespace fconv {

using Json = nlohmann::json;

struct InstanceFile {
  std::string name;
  ESetSpec spec;
  std::vector<std::string> notes;  // normalizations applied while parsing
};

// Throws parse-error with the line or field at fault.
InstanceFile parse_instance(const std::filesystem::path& path);
InstanceFile parse_instance_text(std::string_view text, const std::string& source = "<input>");
InstanceFile instance_from_json(const Json& j);
Json emit_instance(const InstanceFile& instance);

// Comma-separated bitstrings; the empty string is the zero subspace.
Subspace parse_subspace(std::string_view text, unsigned n);

// Sum over (A, B) of |X_A| |X_B| |A meet B|^2 / |E|, without building the algebra.
std::size_t convolution_dimension(const ESet& x);

struct CheckResult {
  std::string id;
  bool pass = true;
  std::size_t count = 0;
  std::string detail;
  std::optional<std::string> witness;
  double elapsed_ms = 0;
};

struct VerificationReport {
  std::string name;
  std::size_t dim_f = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool pass() const;
  const CheckResult* find(std::string_view id) const;
};

struct VerifyOptions {
  std::size_t max_dim = 512;
  std::uint64_t seed = 1;
  std::size_t random_triples = 10000;
  // Above these sizes the exhaustive loops switch to seeded sampling.
  std::size_t max_exhaustive_triples = 2000000;
  std::size_t max_exhaustive_pairs = 20000;
};

Json describe(const InstanceFile& instance);
std::string describe_text(const Json& description);

// Throws resource-limit when dim F exceeds options.max_dim.
VerificationReport verify(const InstanceFile& instance, const VerifyOptions& options = {});
Json to_json(const VerificationReport& report, bool with_timings = false);
std::string to_text(const VerificationReport& report, bool with_timings = false);

// `orbit_index` counts the E-orbits with stabilizer A in orbit order.
Json ideal_report(const InstanceFile& instance, const Subspace& a, std::size_t orbit_index, const Subspace& b,
                  std::size_t max_dim = 512);
std::string ideal_text(const Json& report);

Json catalog_report(const InstanceFile& instance, std::size_t max_dim = 512);
Json to_json(const Catalog& catalog);
std::string catalog_text(const Json& report);

}  // namespace fconv
