#include "gchoi/gchoi.h"

#include <exception>
#include <new>
#include <string>

#include "gchoi/errors.hpp"
#include "gchoi/report.hpp"

struct gchoi_matrix {
  gchoi::InputDocument doc;
};

struct gchoi_report {
  gchoi::Report report;
};

namespace {

thread_local std::string g_last_error;

gchoi_status fail(gchoi_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

template <class Fn>
gchoi_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return GCHOI_OK;
  } catch (const gchoi::InvalidInput& e) {
    return fail(GCHOI_INVALID_INPUT, e.what());
  } catch (const gchoi::NotApplicable& e) {
    return fail(GCHOI_NOT_APPLICABLE, e.what());
  } catch (const gchoi::InternalError& e) {
    return fail(GCHOI_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GCHOI_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GCHOI_INTERNAL, e.what());
  } catch (...) {
    return fail(GCHOI_INTERNAL, "unknown error");
  }
}

gchoi::RunOptions to_options(const gchoi_config* cfg) {
  const gchoi_config c = cfg ? *cfg : gchoi_config_default();
  gchoi::RunOptions opt;
  opt.search.seed = c.seed;
  opt.search.starts = c.starts;
  opt.search.max_iterations = c.max_iterations;
  opt.search.step_tolerance = c.step_tolerance;
  opt.search.violation_tolerance = c.violation_tolerance;
  opt.search.threads = c.threads;
  opt.tolerance = c.tolerance;
  return opt;
}

template <class Run>
gchoi_status run_on(const gchoi_matrix* m, const gchoi_config* cfg, gchoi_report** out, Run run) {
  if (!out) return fail(GCHOI_INVALID_INPUT, "output pointer is null");
  *out = nullptr;
  if (!m) return fail(GCHOI_INVALID_INPUT, "matrix is null");
  return guarded([&] { *out = new gchoi_report{run(m->doc, to_options(cfg))}; });
}

}  // namespace

extern "C" {

gchoi_config gchoi_config_default(void) {
  const gchoi::RunOptions d;
  return {d.search.seed, d.search.starts, d.search.max_iterations, d.search.step_tolerance,
          d.search.violation_tolerance, d.tolerance, d.search.threads};
}

gchoi_status gchoi_matrix_create(size_t n, const double* row_major, gchoi_matrix** out) {
  if (!out) return fail(GCHOI_INVALID_INPUT, "output pointer is null");
  *out = nullptr;
  if (!row_major) return fail(GCHOI_INVALID_INPUT, "entries are null");
  if (n > gchoi::kMaxDimension) return fail(GCHOI_INVALID_INPUT, "matrix dimension too large");
  return guarded([&] {
    gchoi::CoefficientMatrix a(n, std::span<const double>(row_major, n * n));
    *out = new gchoi_matrix{gchoi::InputDocument{std::move(a), std::nullopt}};
  });
}

gchoi_status gchoi_matrix_load(const char* path, gchoi_matrix** out) {
  if (!out) return fail(GCHOI_INVALID_INPUT, "output pointer is null");
  *out = nullptr;
  if (!path) return fail(GCHOI_INVALID_INPUT, "path is null");
  return guarded([&] { *out = new gchoi_matrix{gchoi::load_input(path)}; });
}

size_t gchoi_matrix_dim(const gchoi_matrix* m) { return m ? m->doc.a.n() : 0; }

void gchoi_matrix_destroy(gchoi_matrix* m) { delete m; }

gchoi_status gchoi_analyze(const gchoi_matrix* m, const gchoi_config* cfg, gchoi_report** out) {
  return run_on(m, cfg, out, gchoi::run_analyze);
}

gchoi_status gchoi_search(const gchoi_matrix* m, const gchoi_config* cfg, gchoi_report** out) {
  return run_on(m, cfg, out, gchoi::run_search);
}

gchoi_status gchoi_probe(const gchoi_matrix* m, const gchoi_config* cfg, gchoi_report** out) {
  return run_on(m, cfg, out, gchoi::run_probe);
}

gchoi_status gchoi_reproduce(const char* name, const double* params, size_t nparams, const gchoi_config* cfg,
                             gchoi_report** out) {
  if (!out) return fail(GCHOI_INVALID_INPUT, "output pointer is null");
  *out = nullptr;
  if (!name) return fail(GCHOI_INVALID_INPUT, "name is null");
  if (nparams > 0 && !params) return fail(GCHOI_INVALID_INPUT, "params are null");
  return guarded([&] {
    const std::span<const double> p = nparams ? std::span<const double>(params, nparams) : std::span<const double>();
    *out = new gchoi_report{gchoi::run_reproduce(name, p, to_options(cfg))};
  });
}

const char* gchoi_report_json(const gchoi_report* r) { return r ? r->report.json.c_str() : ""; }

const char* gchoi_report_text(const gchoi_report* r) { return r ? r->report.text.c_str() : ""; }

uint32_t gchoi_report_summary(const gchoi_report* r) { return r ? r->report.summary.bits() : 0u; }

int gchoi_report_has_violation(const gchoi_report* r) { return r && r->report.violation ? 1 : 0; }

int gchoi_report_has_witness(const gchoi_report* r) { return r && r->report.witness ? 1 : 0; }

void gchoi_report_destroy(gchoi_report* r) { delete r; }

const char* gchoi_last_error(void) { return g_last_error.c_str(); }

const char* gchoi_version(void) { return gchoi::kVersion; }

}  // extern "C"
