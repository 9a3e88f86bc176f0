#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mubg/asw.hpp"
#include "mubg/bclass.hpp"

namespace mubg {

inline constexpr const char* kReportFormat = "mubg-report 1";

enum class Task { pseries, tate, locss, collapse, kappa, integrality };

std::string to_string(Task t);
std::optional<Task> parse_task(const std::string& name);

struct FglOptions {
  std::string kind = "additive";  // additive | multiplicative | universal | table
  std::optional<BigInt> beta;     // multiplicative specialization
  int log_terms = 1;              // universal K
  std::string table;              // path of an fgl-table file
};

struct IntegralityPoint {
  Element at;
  std::string value;  // cyclotomic text over Q(zeta_e)
  int line = 0;
};

struct Manifest {
  Task task = Task::pseries;
  FglOptions fgl;
  std::optional<int> prime;
  std::optional<int> multiple;    // pseries: n of [n](x); defaults to p
  std::optional<int> degree;      // D
  std::optional<int> floor;       // L
  std::optional<int> mod_power;   // M; 0 means the integers
  int variables = 2;              // locss
  SignRule sign = SignRule::standard;
  std::optional<std::pair<int, int>> degree_range;
  std::optional<AbelianGroup> group;
  int b_degree = 4;
  FixedPointData fixed;
  std::vector<IntegralityPoint> points;
  std::string base_dir;  // for relative fgl table paths
};

struct ManifestError {
  int line = 0;
  std::string message;
};

struct ManifestParse {
  std::optional<Manifest> manifest;
  std::vector<ManifestError> errors;
  std::string describe_errors() const;
};

ManifestParse parse_manifest(const std::string& text, const std::string& base_dir = ".");
ManifestParse load_manifest(const std::string& path);

// Bundle text: "(j | c1,c2) + (j | ...)"; "(j)" on a point; "0" for none.
EquivBundle parse_bundle(const std::string& text, std::size_t factors);

}  // namespace mubg
