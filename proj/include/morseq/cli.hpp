#pragma once

// Batch front end: dispatch a parsed command to the engines and write a
// canonical JSON (or table) report.  Exit codes: 0 ok, 1 mathematical
// failure, 2 input or usage error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace morseq {

struct CommandConfig {
  std::string group;  // toric | cech | fp | poset | flag
  std::string verb;

  std::string dataset;
  std::string fan;
  std::string divisor;
  std::string edges;
  std::string candidate;

  std::optional<std::vector<std::int64_t>> chamber;
  std::optional<std::vector<std::int64_t>> weight;
  std::optional<std::vector<std::int64_t>> lambda;
  std::optional<std::vector<std::size_t>> charts;
  std::optional<std::string> box;  // "lo:hi" or "lo1,lo2:hi1,hi2"
  std::int64_t margin = 10;
  std::optional<std::size_t> r_max;
  std::string variant = "cs";

  char root_type = 'A';
  std::size_t root_rank = 1;

  std::string format = "json";  // json | table
  int verbosity = 0;
};

int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

}  // namespace morseq
