// gchoi: command-line front end to libgchoi.
//
//   gchoi analyze -i A.json [--tol 1e-9] [--seed 42] [--starts 64] [--format json|text]
//   gchoi search  -i A.json ...
//   gchoi probe   -i A.json ...
//   gchoi reproduce <choi|example5|boundary|kye-boundary> [--a a1 a2 a3] [--c c1 c2 c3]
//
// Exit status: 0 on success whatever the verdict, 1 for bad input, 2 when
// the analysis contradicts itself.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gchoi/gchoi.h"

namespace {

struct Common {
  gchoi_config cfg = gchoi_config_default();
  std::string format;
  std::uint64_t seed = 42;
};

void add_common(CLI::App* cmd, Common& c, const char* default_format) {
  c.format = default_format;
  c.seed = c.cfg.seed;
  cmd->add_option("--tol", c.cfg.tolerance, "margin band and violation tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "search seed")->capture_default_str();
  cmd->add_option("--starts", c.cfg.starts, "random starts per search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iterations", c.cfg.max_iterations, "iterations per start")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--threads", c.cfg.threads, "worker threads (0 = all cores)")->capture_default_str();
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
}

int exit_code(gchoi_status s) {
  switch (s) {
    case GCHOI_OK: return 0;
    case GCHOI_INTERNAL: return 2;
    default: return 1;
  }
}

int report_error(gchoi_status s) {
  std::fprintf(stderr, "gchoi: %s\n", gchoi_last_error());
  return exit_code(s);
}

int emit(gchoi_status s, gchoi_report* r, const std::string& format) {
  if (s != GCHOI_OK) return report_error(s);
  const char* body = format == "json" ? gchoi_report_json(r) : gchoi_report_text(r);
  std::fputs(body, stdout);
  gchoi_report_destroy(r);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positivity, decomposability and certificate search for generalized Choi maps"};
  app.set_version_flag("--version", std::string(gchoi_version()));
  app.require_subcommand(1);

  std::string input;
  Common analyze_opts, search_opts, probe_opts, repro_opts;

  auto* analyze = app.add_subcommand("analyze", "evaluate every condition and run both certificate searches");
  analyze->add_option("-i,--input", input, "coefficient matrix JSON file")->required();
  add_common(analyze, analyze_opts, "json");

  auto* search = app.add_subcommand("search", "search for a positivity violation only");
  search->add_option("-i,--input", input, "coefficient matrix JSON file")->required();
  add_common(search, search_opts, "json");

  auto* probe = app.add_subcommand("probe", "search for a PPT indecomposability witness only");
  probe->add_option("-i,--input", input, "coefficient matrix JSON file")->required();
  add_common(probe, probe_opts, "json");

  std::string name;
  std::vector<double> a_params, c_params;
  auto* repro = app.add_subcommand("reproduce", "rebuild a named example and print its headline quantity");
  repro->add_option("name", name, "choi | example5 | boundary | kye-boundary")->required();
  repro->add_option("--a", a_params, "a1 a2 a3 for boundary")->expected(3);
  repro->add_option("--c", c_params, "c1 c2 c3 for kye-boundary")->expected(3);
  add_common(repro, repro_opts, "text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  auto run_file = [&](Common& c, auto fn) {
    c.cfg.seed = c.seed;
    c.cfg.violation_tolerance = c.cfg.tolerance;
    gchoi_matrix* m = nullptr;
    if (const gchoi_status s = gchoi_matrix_load(input.c_str(), &m); s != GCHOI_OK) return report_error(s);
    gchoi_report* r = nullptr;
    const gchoi_status s = fn(m, &c.cfg, &r);
    gchoi_matrix_destroy(m);
    return emit(s, r, c.format);
  };

  if (*analyze) return run_file(analyze_opts, gchoi_analyze);
  if (*search) return run_file(search_opts, gchoi_search);
  if (*probe) return run_file(probe_opts, gchoi_probe);

  repro_opts.cfg.seed = repro_opts.seed;
  repro_opts.cfg.violation_tolerance = repro_opts.cfg.tolerance;
  std::vector<double> params;
  if (!a_params.empty() && !c_params.empty()) {
    std::fprintf(stderr, "gchoi: give either --a or --c, not both\n");
    return 1;
  }
  if (!a_params.empty()) {
    if (name != "boundary") {
      std::fprintf(stderr, "gchoi: --a applies to 'boundary' only\n");
      return 1;
    }
    params = a_params;
  }
  if (!c_params.empty()) {
    if (name != "kye-boundary") {
      std::fprintf(stderr, "gchoi: --c applies to 'kye-boundary' only\n");
      return 1;
    }
    params = c_params;
  }
  gchoi_report* r = nullptr;
  const gchoi_status s = gchoi_reproduce(name.c_str(), params.data(), params.size(), &repro_opts.cfg, &r);
  return emit(s, r, repro_opts.format);
}
