#ifndef TORIC_PROBLEM_HPP
#define TORIC_PROBLEM_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/numeric.hpp"
#include "core/polytope.hpp"

namespace toric {

struct ProblemOptions {
  double tol = 1e-10;
  int quad_degree_cap = 25;
  int n_grid = 2048;
  uint64_t seed = 12345;
  bool oracle = false;
};

// A problem file: polytope data plus either raw base weights or a preset
// name (exactly one of the two), with solver options.
struct ProblemSpec {
  std::string name;
  int dim = 0;
  std::vector<Vec> vertices;
  std::vector<Facet> facets;
  bool use_preset = false;
  std::string preset;
  std::vector<Vec> raw_a;
  Vec raw_b;
  ProblemOptions options;
};

ProblemSpec parse_problem_file(const std::string& path);
// fallback_name is used when the document has no "name" field.
ProblemSpec parse_problem_text(const std::string& text, const std::string& fallback_name);

// Canonical form: fixed key set, defaults filled, numeric leaves coerced to
// double. Serializing this with sorted keys is the hashing contract.
nlohmann::json canonical_spec_json(const ProblemSpec& spec);
std::string canonical_spec_dump(const ProblemSpec& spec);
std::string input_hash(const ProblemSpec& spec);

}  // namespace toric

#endif
