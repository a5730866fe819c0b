// twistkl: tables and verification runs for Hecke modules on twisted
// involutions.
//
// Exit codes: 0 pass, 1 verified-property failure, 2 usage or input error,
// 3 internal consistency error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "twistkl/cells.hpp"
#include "twistkl/coxeter.hpp"
#include "twistkl/hecke.hpp"
#include "twistkl/invmod.hpp"
#include "twistkl/tables.hpp"
#include "twistkl/verify.hpp"

namespace {

using twistkl::json;

enum Exit { kPass = 0, kFailed = 1, kUsage = 2, kInternal = 3 };

struct RunConfig {
  std::string type;
  std::string matrix_file;
  std::string star;
  std::optional<int> max_length;
  std::string format = "json";
  std::string out;
  unsigned threads = 1;
};

twistkl::CoxeterMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw twistkl::InputError("cannot open matrix file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw twistkl::InvalidMatrix(std::string("matrix file is not valid JSON: ") + e.what());
  }
  if (!j.contains("m") || !j["m"].is_array())
    throw twistkl::InvalidMatrix("matrix file needs an array field \"m\"");
  std::vector<std::vector<int>> m;
  for (const auto& row : j["m"]) {
    if (!row.is_array()) throw twistkl::InvalidMatrix("matrix rows must be arrays");
    std::vector<int> r;
    for (const auto& e : row) {
      if (e.is_string()) {
        const auto s = e.get<std::string>();
        if (s != "inf" && s != "infinity")
          throw twistkl::InvalidMatrix("unknown matrix entry \"" + s + "\"");
        r.push_back(twistkl::kInfinity);
      } else if (e.is_number_integer()) {
        const int v = e.get<int>();
        r.push_back(v == -1 ? twistkl::kInfinity : v);
      } else {
        throw twistkl::InvalidMatrix("matrix entries must be integers or \"inf\"");
      }
    }
    m.push_back(std::move(r));
  }
  if (j.contains("rank") && j["rank"].get<std::size_t>() != m.size())
    throw twistkl::InvalidMatrix("\"rank\" does not match the matrix size");
  return twistkl::CoxeterMatrix(std::move(m));
}

twistkl::StarMap parse_star(const std::string& text, int rank) {
  if (text.empty()) return twistkl::StarMap::identity(rank);
  std::vector<int> images;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      images.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw twistkl::InvalidStar("cannot parse star entry \"" + item + "\"");
    }
  }
  return twistkl::StarMap::from_one_based(images);
}

/// Builds the group; infinite groups are enumerated two lengths beyond the
/// requested bound so that every tilde move of a listed element is known.
twistkl::Group make_group(const RunConfig& cfg) {
  if (cfg.type.empty() == cfg.matrix_file.empty())
    throw twistkl::InputError("give exactly one of --type and --matrix");
  twistkl::CoxeterMatrix m = cfg.type.empty() ? read_matrix_file(cfg.matrix_file)
                                              : twistkl::parse_named_type(cfg.type);
  twistkl::StarMap star = parse_star(cfg.star, m.rank());
  twistkl::GroupOptions options;
  if (!twistkl::recognize_finite_type(m)) {
    if (!cfg.max_length)
      throw twistkl::UnsupportedGroup("infinite Coxeter group requires --max-length");
    options.max_length = *cfg.max_length + 2;
  }
  return twistkl::Group(std::move(m), std::move(star), options);
}

void emit(const RunConfig& cfg, const json& table) {
  const std::string text = cfg.format == "csv" ? twistkl::table_to_csv(table) : table.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out);
  if (!out) throw twistkl::InputError("cannot write " + cfg.out);
  out << text;
}

int run_verify(const RunConfig& cfg, const std::string& suite) {
  const twistkl::Group g = make_group(cfg);
  const twistkl::Hecke h(g);
  const twistkl::InvolutionModule m(h);
  twistkl::Report report;
  if (suite == "relations") {
    report = twistkl::verify_module_relations(m);
  } else if (suite == "positivity-point") {
    report = twistkl::verify_positivity_pointwise(m, cfg.threads, cfg.max_length);
  } else if (suite == "positivity-module") {
    report = twistkl::verify_positivity_module(m, cfg.threads);
  } else {
    g.require_complete("cell suites");
    const twistkl::CellDecomposition cells(h, cfg.threads);
    if (suite == "cells-72") {
      report = twistkl::verify_a_function(cells);
      if (report.passed) report = twistkl::verify_cell_action(cells, m);
    } else {
      report = twistkl::verify_parity(cells, m);
    }
  }
  const std::string text = report.to_json(g).dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream(cfg.out) << text;
  }
  return report.passed ? kPass : kFailed;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--type", cfg.type, "named type, e.g. A3, B3, H3, I2(7), A2~, A1xA1");
  cmd->add_option("--matrix", cfg.matrix_file, "JSON file {\"rank\":n,\"m\":[[...]]}");
  cmd->add_option("--star", cfg.star, "diagram involution as 1-based images, e.g. 3,2,1");
  cmd->add_option("--max-length", cfg.max_length, "length bound (required for infinite groups)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", cfg.out, "output path (default stdout)");
  cmd->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hecke modules on twisted involutions: tables and verification"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* involutions = app.add_subcommand("involutions", "list twisted involutions");
  add_common(involutions, cfg);

  std::string kind;
  auto* tables = app.add_subcommand("tables", "polynomial tables: kl, skl, mu, bar");
  tables->add_option("kind", kind, "table kind")
      ->required()
      ->check(CLI::IsMember({"kl", "skl", "mu", "bar"}));
  add_common(tables, cfg);

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember(
          {"relations", "positivity-point", "positivity-module", "cells-72", "parity"}));
  add_common(verify, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*involutions) {
      const twistkl::Group g = make_group(cfg);
      emit(cfg, twistkl::involutions_table(g, cfg.max_length));
      return kPass;
    }
    if (*tables) {
      const twistkl::Group g = make_group(cfg);
      const twistkl::Hecke h(g);
      const twistkl::InvolutionModule m(h);
      emit(cfg, twistkl::polynomial_table(m, *twistkl::parse_table_kind(kind), cfg.max_length,
                                          cfg.threads));
      return kPass;
    }
    return run_verify(cfg, suite);
  } catch (const twistkl::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const twistkl::PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
