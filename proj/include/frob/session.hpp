#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "frob/poly.hpp"
#include "frob/testideal.hpp"

namespace frob {

/// Parsed session file: characteristic, ring block, named ideal and map
/// blocks, and free-form command parameters. Polynomials inside blocks are
/// parsed eagerly in the base ring; parameters are kept raw and parsed on
/// demand (some are tensor-ring elements whose factor count depends on n).
struct SessionSpec {
  uint32_t p = 2;
  std::vector<std::string> var_names;  // declaration order
  std::optional<std::pair<int, int>> segre_rs;
  std::vector<std::string> quotient_gens;                     // raw text
  std::vector<std::pair<std::string, std::vector<std::string>>> ideals;  // raw text
  struct MapSpec {
    int e = 1;
    std::string g;  // raw text
  };
  std::vector<std::pair<std::string, MapSpec>> maps;
  std::map<std::string, std::string> params;  // raw values

  RingContext base_ctx() const;
  int tensor_n() const;  // param n, default 1

  /// Parses a polynomial expression in this session's variables. factors > 1
  /// admits suffixed names like x0_2.
  Polynomial parse_poly(const std::string& text, uint16_t factors = 1) const;

  std::vector<Polynomial> ideal_generators(const std::string& name) const;
  bool has_ideal(const std::string& name) const;
  bool has_map(const std::string& name) const;
  std::pair<int, Polynomial> map_spec(const std::string& name) const;

  std::optional<int64_t> param_int(const std::string& key) const;
  std::optional<RationalExponent> param_rational(const std::string& key) const;
  std::optional<Polynomial> param_poly(const std::string& key, uint16_t factors = 1) const;
};

/// Parses the session grammar:
///   char 2; vars x0..x1, y0..y1; segre r=1 s=1;
///   quotient { a*d - b*c }; ideal P { a, b };
///   map phi { e=1, g = x1*y1 }; param h = 2;
/// Throws std::runtime_error with line/column on malformed input.
SessionSpec parse_session(const std::string& text);

/// Canonical text form; parse(serialize(s)) reproduces s.
std::string serialize_session(const SessionSpec& spec);

struct CommandOptions {
  int e_max = 4;
  int n_max = 3;
  int degree_bound = 3;
  uint64_t cap = 1000000;
  uint64_t max_unknowns = 10000;
  int threads = 1;
};

/// Line-delimited structured report plus a summary object. Verdicts are
/// "pass", "fail" or "inconclusive"; exit code 0/1/2/3 (3 = error).
struct CommandReport {
  std::vector<std::string> records;  // JSON lines, summary last
  int exit_code = 3;
  std::string rendered() const;
};

CommandReport run_command(const SessionSpec& spec, const std::string& command,
                          const CommandOptions& opts);

extern const char* const kToolVersion;

}  // namespace frob
