// Command-line front end: balanced equivalence relations, quotient networks
// and the lattice of a coupled cell network file.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cellsync/cellsync.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kParseError = 2,
  kInvalidPartition = 3,
  kBudgetExceeded = 4,
};

struct ValidationFailed {};

struct Context {
  std::string file;
  bool permissive = false;
};

cellsync::Network load_validated(const Context& ctx) {
  cellsync::Network net = cellsync::load_network(ctx.file);
  const auto report = cellsync::validate(
      net, ctx.permissive ? cellsync::Strictness::Permissive : cellsync::Strictness::Strict);
  if (!report.ok()) {
    for (const auto& v : report.violations) std::cerr << ctx.file << ": " << v.message << '\n';
    throw ValidationFailed{};
  }
  return net;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced equivalence relations (robust synchrony patterns) of coupled cell networks"};
  app.require_subcommand(1);

  Context ctx;
  cellsync::EnumerationOptions opts;
  bool brute_force = false;
  bool quotients = false;
  bool full_square = false;
  std::string dot_path;
  std::string partition_text;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("FILE", ctx.file, "network file")->required();
    cmd->add_flag("--permissive", ctx.permissive, "skip the arrow-type head/tail cell-type check");
  };
  auto add_search = [&](CLI::App* cmd) {
    cmd->add_option("--budget", opts.budget, "maximum number of candidate partitions to test")
        ->default_val(cellsync::kDefaultCandidateBudget);
    cmd->add_option("--jobs", opts.jobs, "worker threads")->default_val(1)->check(CLI::PositiveNumber);
    cmd->add_flag("--brute-force", brute_force, "test every set partition instead of refinements of the top node");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a network file");
  add_common(validate_cmd);
  auto* top_cmd = app.add_subcommand("top", "print the coarsest balanced partition");
  add_common(top_cmd);
  auto* enumerate_cmd = app.add_subcommand("enumerate", "print every balanced partition, one per line");
  add_common(enumerate_cmd);
  add_search(enumerate_cmd);
  auto* lattice_cmd = app.add_subcommand("lattice", "print the lattice of balanced partitions");
  add_common(lattice_cmd);
  add_search(lattice_cmd);
  lattice_cmd->add_option("--dot", dot_path, "write the lattice as GraphViz DOT to PATH ('-' for stdout)");
  lattice_cmd->add_flag("--quotients", quotients, "print quotient matrices of every lattice node");
  lattice_cmd->add_flag("--full-square", full_square, "compute covering pairs from the full B*B product");
  auto* check_cmd = app.add_subcommand("check", "test whether a partition is balanced");
  add_common(check_cmd);
  check_cmd->add_option("--partition", partition_text, "partition in cycle notation, e.g. (124)(3)(5)")->required();
  auto* quotient_cmd = app.add_subcommand("quotient", "print the quotient network of a balanced partition");
  add_common(quotient_cmd);
  quotient_cmd->add_option("--partition", partition_text, "partition in cycle notation")->required();

  CLI11_PARSE(app, argc, argv);
  opts.mode = brute_force ? cellsync::SearchMode::BruteForce : cellsync::SearchMode::TopRestricted;

  try {
    if (validate_cmd->parsed()) {
      const auto net = load_validated(ctx);
      std::cout << "ok: " << net.cells << " cells, " << net.arrow_types() << " arrow types\n";
    } else if (top_cmd->parsed()) {
      const auto top = cellsync::minimal_balanced_coloring(load_validated(ctx));
      std::cout << cellsync::format_partitions({top});
    } else if (enumerate_cmd->parsed()) {
      std::cout << cellsync::format_partitions(cellsync::enumerate_balanced(load_validated(ctx), opts));
    } else if (lattice_cmd->parsed()) {
      const auto net = load_validated(ctx);
      const auto lattice = cellsync::build_lattice(
          cellsync::enumerate_balanced(net, opts),
          full_square ? cellsync::CoveringMethod::FullSquare : cellsync::CoveringMethod::WitnessWindow);
      if (dot_path != "-") std::cout << cellsync::format_lattice(lattice);
      if (quotients)
        for (const auto& node : lattice.nodes) std::cout << cellsync::format_quotient(cellsync::quotient(net, node));
      if (!dot_path.empty()) write_text(dot_path, cellsync::render_dot(lattice));
    } else if (check_cmd->parsed() || quotient_cmd->parsed()) {
      const auto net = load_validated(ctx);
      cellsync::Partition p;
      try {
        p = cellsync::parse_partition(partition_text, net.cells);
      } catch (const cellsync::PartitionSyntaxError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidPartition;
      }
      if (check_cmd->parsed()) {
        std::cout << cellsync::to_normal_form(p) << (cellsync::is_balanced(net, p) ? " balanced" : " not balanced")
                  << '\n';
      } else {
        try {
          std::cout << cellsync::format_quotient(cellsync::quotient(net, p));
        } catch (const cellsync::NotBalancedError& e) {
          std::cerr << "error: " << e.what() << '\n';
          return kInvalidPartition;
        }
      }
    }
  } catch (const ValidationFailed&) {
    return kValidationFailure;
  } catch (const cellsync::ParseError& e) {
    std::cerr << "error: " << ctx.file << ": " << e.what() << '\n';
    return kParseError;
  } catch (const cellsync::BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << " (raise --budget to proceed)\n";
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseError;
  }
  return kOk;
}
