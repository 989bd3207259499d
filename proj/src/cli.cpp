#include "pjt/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pjt/add.hpp"
#include "pjt/errors.hpp"
#include "pjt/numeric.hpp"
#include "pjt/oracle.hpp"
#include "pjt/planner_htb.hpp"
#include "pjt/planner_td.hpp"
#include "pjt/tensor.hpp"

namespace pjt {

namespace {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ValidationFailure : public std::runtime_error {
public:
  explicit ValidationFailure(std::vector<std::string> lines)
      : std::runtime_error("validation failed"), lines_(std::move(lines)) {}
  [[nodiscard]] const std::vector<std::string> &lines() const noexcept { return lines_; }

private:
  std::vector<std::string> lines_;
};

/// Error raised while reading a named document.
class DocumentError : public std::runtime_error {
public:
  DocumentError(const std::string &path, const ParseError &e) : std::runtime_error(path + ": " + e.what()) {}
};

std::string read_text(const std::string &path, std::istream &in) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file)
    throw IoError("cannot read " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

template <class F> auto parse_document(const std::string &path, std::istream &in, F parse) {
  const auto text = read_text(path, in);
  try {
    return parse(text);
  } catch (const ParseError &e) {
    throw DocumentError(path, e);
  }
}

std::vector<std::string> describe(const Violations &violations, std::string_view what) {
  std::vector<std::string> lines;
  for (const auto &v : violations)
    lines.push_back(std::string(what) + " " + std::string(to_string(v.kind)) + ": " + v.message);
  return lines;
}

class Emitter {
public:
  Emitter(std::ostream &out, bool kv, bool comment) : out_(out), kv_(kv), comment_(comment) {}

  template <class T> void operator()(std::string_view key, const T &value) {
    if (comment_)
      out_ << "c ";
    out_ << key << (kv_ ? "=" : " ") << value << "\n";
  }

private:
  std::ostream &out_;
  bool kv_;
  bool comment_;
};

struct Plan {
  ProjectJoinTree tree;
  std::string planner;
  std::vector<std::pair<std::string, std::string>> notes;
};

Plan make_plan(const RunConfig &cfg, const CnfFormula &formula, std::istream &in) {
  if (cfg.jt_path) {
    auto tree = parse_document(*cfg.jt_path, in, read_jt);
    if (auto v = validate(tree, formula); !v.empty())
      throw ValidationFailure(describe(v, "jt"));
    return {std::move(tree), "jt", {}};
  }
  if (cfg.planner == "htb") {
    HtbConfig htb;
    htb.order = *parse_order_heuristic(cfg.order);
    htb.rank = *parse_rank_method(cfg.rank);
    htb.cluster = *parse_cluster_method(cfg.cluster);
    htb.seed = cfg.seed;
    return {build_tree(formula, htb), "htb " + cfg.order + " " + cfg.rank + " " + cfg.cluster, {}};
  }
  if (cfg.planner == "td") {
    const auto td = cfg.td_path ? parse_document(*cfg.td_path, in, parse_td)
                                : build_td_minfill(gaifman_graph(formula));
    return {td_to_pjt(formula, td), cfg.td_path ? "td" : "td minfill", {}};
  }
  // td-stream
  if (!cfg.td_path)
    throw CLI::ValidationError("--planner td-stream needs --td FILE|-");
  std::ifstream file;
  std::istream *source = &in;
  if (*cfg.td_path != "-") {
    file.open(*cfg.td_path, std::ios::binary);
    if (!file)
      throw IoError("cannot read " + *cfg.td_path);
    source = &file;
  }
  TdStreamReader reader(*source);
  StreamOptions options;
  options.cost = *parse_cost_model(cfg.cost);
  options.kappa = cfg.kappa;
  auto result = best_of_stream(formula, [&] { return reader.next_document(); }, options);
  return {std::move(result.tree),
          "td-stream",
          {{"td_chosen", std::to_string(result.chosen)},
           {"td_consumed", std::to_string(result.consumed)},
           {"td_rejected", std::to_string(result.rejected)}}};
}

int cmd_plan(const RunConfig &cfg, std::istream &in, std::ostream &out) {
  const auto formula = parse_document(cfg.cnf_path, in, parse_cnf);
  const auto plan = make_plan(cfg, formula, in);
  out << write_jt(plan.tree);
  Emitter emit(out, cfg.emit == "kv", true);
  emit("planner", plan.planner);
  for (const auto &[key, value] : plan.notes)
    emit(key, value);
  const int w = width(plan.tree, formula);
  emit("width", w);
  emit("cost_add", format_double(std::ldexp(1.0, w)));
  emit("cost_tensor", estimate_flops(plan.tree, formula));
  return kExitOk;
}

int cmd_count(const RunConfig &cfg, std::istream &in, std::ostream &out) {
  const auto formula = parse_document(cfg.cnf_path, in, parse_cnf);
  std::optional<Plan> plan;
  std::optional<ContractionStats> stats;
  double value = 0;
  if (cfg.executor == "oracle-brute") {
    value = brute_force_wmc(formula);
  } else if (cfg.executor == "oracle-nicetd") {
    const auto td = cfg.td_path ? parse_document(*cfg.td_path, in, parse_td)
                                : build_td_minfill(gaifman_graph(formula));
    value = nice_td_wmc(formula, formula.weights, make_nice(td));
  } else {
    plan = make_plan(cfg, formula, in);
    if (cfg.executor == "add") {
      auto order = cfg.diagram_order.empty() ? default_order(formula)
                                             : DiagramOrder::from_sequence(cfg.diagram_order);
      AddExecutor executor(formula, std::move(order));
      value = executor.valuate(plan->tree, formula.weights);
    } else {
      const auto result = valuate_tensor(plan->tree, formula);
      value = result.value;
      stats = result.stats;
    }
  }

  const bool kv = cfg.emit == "kv";
  if (kv)
    out << "count=" << format_double(value) << "\n";
  else
    out << format_double(value) << "\n";
  Emitter emit(out, kv, !kv);
  if (plan) {
    emit("planner", plan->planner);
    for (const auto &[key, v] : plan->notes)
      emit(key, v);
    emit("width", width(plan->tree, formula));
  }
  emit("executor", cfg.executor);
  if (stats) {
    emit("max_rank", stats->max_rank);
    emit("flops", stats->flops);
  }
  return kExitOk;
}

int cmd_validate(const RunConfig &cfg, std::istream &in, std::ostream &out) {
  if (!cfg.jt_path && !cfg.td_path)
    throw CLI::ValidationError("validate needs --jt FILE or --td FILE");
  const auto formula = parse_document(cfg.cnf_path, in, parse_cnf);
  std::vector<std::string> lines;
  if (cfg.jt_path) {
    const auto tree = parse_document(*cfg.jt_path, in, read_jt);
    for (auto &line : describe(validate(tree, formula), "jt"))
      lines.push_back(std::move(line));
  }
  if (cfg.td_path) {
    const auto td = parse_document(*cfg.td_path, in, parse_td);
    for (auto &line : describe(td_validate(td, gaifman_graph(formula)), "td"))
      lines.push_back(std::move(line));
  }
  if (!lines.empty())
    throw ValidationFailure(std::move(lines));
  out << "ok\n";
  return kExitOk;
}

int cmd_convert(const RunConfig &cfg, std::istream &in, std::ostream &out) {
  if (cfg.jt_path.has_value() == cfg.td_path.has_value())
    throw CLI::ValidationError("convert needs exactly one of --jt FILE and --td FILE");
  const auto formula = parse_document(cfg.cnf_path, in, parse_cnf);
  if (cfg.jt_path) {
    const auto tree = parse_document(*cfg.jt_path, in, read_jt);
    if (auto v = validate(tree, formula); !v.empty())
      throw ValidationFailure(describe(v, "jt"));
    out << write_td(tree_to_td(tree, formula));
  } else {
    const auto td = parse_document(*cfg.td_path, in, parse_td);
    out << write_jt(td_to_pjt(formula, td));
  }
  return kExitOk;
}

void add_planner_options(CLI::App &app, RunConfig &cfg) {
  app.add_option("--planner", cfg.planner, "Planner")->check(CLI::IsMember({"htb", "td", "td-stream"}));
  app.add_option("--order", cfg.order, "Cluster variable order heuristic")
      ->check(CLI::IsMember({"random", "mcs", "invmcs", "lexp", "invlexp", "lexm", "invlexm", "minfill",
                             "invminfill"}));
  app.add_option("--rank", cfg.rank, "Clause rank method")->check(CLI::IsMember({"be", "bm"}));
  app.add_option("--cluster", cfg.cluster, "Clustering method")->check(CLI::IsMember({"list", "tree"}));
  app.add_option("--seed", cfg.seed, "Seed for the random order");
  app.add_option("--kappa", cfg.kappa, "Planning seconds allowed per unit of estimated cost")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--cost", cfg.cost, "Cost model for streamed decompositions")
      ->check(CLI::IsMember({"add", "tensor"}));
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
  RunConfig cfg;
  CLI::App app("Weighted model counting with project-join trees", "pjt");
  app.require_subcommand(1);

  auto *plan = app.add_subcommand("plan", "Build a project-join tree and print it in JT format");
  auto *count = app.add_subcommand("count", "Compute the weighted model count");
  auto *check = app.add_subcommand("validate", "Check a JT or tree decomposition against a CNF");
  auto *convert = app.add_subcommand("convert", "Convert a JT to a tree decomposition or back");
  for (auto *sub : {plan, count, check, convert}) {
    sub->add_option("cnf", cfg.cnf_path, "DIMACS CNF file, - for stdin")->required();
    sub->add_option("--jt", cfg.jt_path, "JT file");
    sub->add_option("--td", cfg.td_path, "PACE tree decomposition file, - for stdin");
  }
  for (auto *sub : {plan, count})
    add_planner_options(*sub, cfg);
  count
      ->add_option("--executor", cfg.executor, "Executor")
      ->check(CLI::IsMember({"add", "tensor", "oracle-brute", "oracle-nicetd"}));
  count->add_option("--diagram-order", cfg.diagram_order, "Diagram variable order, top first")->delimiter(',');
  for (auto *sub : {plan, count})
    sub->add_option("--emit", cfg.emit, "Output style")->check(CLI::IsMember({"human", "kv"}));

  const auto start = std::chrono::steady_clock::now();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    cfg.subcommand = app.get_subcommands().front()->get_name();
    int code = kExitOk;
    if (cfg.subcommand == "plan")
      code = cmd_plan(cfg, in, out);
    else if (cfg.subcommand == "count")
      code = cmd_count(cfg, in, out);
    else if (cfg.subcommand == "validate")
      code = cmd_validate(cfg, in, out);
    else
      code = cmd_convert(cfg, in, out);
    if (cfg.subcommand == "count")
      err << "c elapsed_seconds "
          << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << "\n";
    return code;
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DocumentError &e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationFailure &e) {
    for (const auto &line : e.lines())
      out << line << "\n";
    return kExitInvalid;
  } catch (const ResourceError &e) {
    err << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const InvalidInput &e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
}

} // namespace pjt
