#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pjt {

/// Process exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalid = 1,  // validation failure or structurally invalid input
  kExitParse = 2,    // unreadable or malformed document, bad flags
  kExitResource = 3, // a table, diagram or enumeration over its cap
};

struct RunConfig {
  std::string subcommand;
  std::string cnf_path;
  std::optional<std::string> jt_path;
  std::optional<std::string> td_path;
  std::string planner = "htb"; // htb | td | td-stream
  std::string order = "invlexp";
  std::string rank = "be";
  std::string cluster = "tree";
  std::string executor = "add"; // add | tensor | oracle-brute | oracle-nicetd
  std::vector<int> diagram_order;
  double kappa = 1e-7;
  std::string cost = "add";
  std::uint64_t seed = 0;
  std::string emit = "human"; // human | kv
};

/// Runs `pjt <args...>` with "-" paths reading `in`. Results go to `out`;
/// errors and timing go to `err`. Returns an ExitCode.
int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

} // namespace pjt
