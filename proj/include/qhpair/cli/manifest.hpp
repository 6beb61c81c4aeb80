// Manifests: a group selector or a raw arrangement, named functions, an
// optional pairing problem and run parameters. Unknown keys are rejected.
// Indices (orders, bases) are 1-based in manifests and on the command line.
#ifndef QHPAIR_CLI_MANIFEST_HPP
#define QHPAIR_CLI_MANIFEST_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhpair/cli/report.hpp"
#include "qhpair/pairing.hpp"

namespace qhpair::cli {

struct RawArrangement {
  int rank = 0;
  std::vector<LinearForm> forms;
  /// Inner product on Y-vectors; defaults to the identity.
  std::optional<Mat<Rational>> gram;
  /// Lattice generators, one vector per entry; defaults to Z^rank.
  std::optional<std::vector<Vec<Rational>>> lattice;
};

struct RunParams {
  std::optional<int> box;
  std::optional<std::string> expr;
  std::optional<Vec<Rational>> t;
  std::optional<std::string> lattice;  // "weight" | "integer" | "manifest"
  std::optional<std::vector<int>> basis;
  std::optional<int> cap;
  std::optional<int> max_cap;
  std::optional<bool> numeric_check;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<int> points;
};

struct Manifest {
  int version = 1;
  std::optional<std::string> group;
  std::optional<RawArrangement> arrangement;
  std::optional<std::vector<int>> order;
  std::map<std::string, std::string> functions;
  std::optional<PairingProblem> problem;
  RunParams run;
};

Manifest manifest_from_json(const Json& j);
Json manifest_to_json(const Manifest& m);
/// Reads and parses a file; throws ParseError on malformed JSON.
Manifest load_manifest(const std::string& path);

PairingProblem problem_from_json(const Json& j);
Json problem_to_json(const PairingProblem& p);

/// "builtin:NAME" or a manifest file containing a problem block.
PairingProblem load_problem(const std::string& spec);
std::vector<std::string> builtin_problem_names();

}  // namespace qhpair::cli

#endif  // QHPAIR_CLI_MANIFEST_HPP
