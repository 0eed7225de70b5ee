// Copyright 2026 The aggmg Authors
// SPDX-License-Identifier: Apache-2.0
//
// aggmg command line: generate test problems, solve systems with the
// aggregation multigrid preconditioner, and run benchmark sweeps.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aggmg/cycles.hpp"
#include "aggmg/error.hpp"
#include "aggmg/galerkin.hpp"
#include "aggmg/hierarchy.hpp"
#include "aggmg/krylov.hpp"
#include "aggmg/matrix_market.hpp"
#include "aggmg/parallel.hpp"
#include "aggmg/poisson.hpp"
#include "aggmg/smoother.hpp"
#include "aggmg/sparse.hpp"
#include "aggmg/vector_ops.hpp"

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr int kExitOk = 0;
constexpr int kExitNoConvergence = 2;
constexpr int kExitInputError = 3;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  aggmg::require(in.good(), "cannot open '" + path + "' for hashing");
  std::uint64_t h = 1469598103934665603ULL;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  std::ostringstream s;
  s << "fnv1a64:" << std::hex << std::setfill('0') << std::setw(16) << h;
  return s.str();
}

// All solve settings with defaults materialized; serialized into the run
// manifest so a run can be reproduced from the manifest alone.
struct SolveOptions {
  std::string matrix;
  std::string rhs;  // empty: all-ones right-hand side
  double tol = 1e-6;
  int max_iters = 200;
  int restart = 30;
  std::string solver = "fgmres";
  std::string cycle = "hybrid";
  int klevels = 2;
  std::string inner = "gmres";
  double t = 0.25;
  std::string smoother = "djacobi";
  double alpha = 0.25;
  std::uint64_t seed = 42;
  aggmg::index_t coarse_size = 600;
  int max_levels = 25;
  int threads = 0;
  bool reuse_cache = false;
  bool allow_pattern = false;
};

aggmg::SmootherKind parse_smoother(const std::string& s) {
  if (s == "jacobi") return aggmg::SmootherKind::jacobi;
  if (s == "djacobi") return aggmg::SmootherKind::damped_jacobi;
  if (s == "sgs") return aggmg::SmootherKind::sgs;
  throw aggmg::Error("unknown smoother '" + s + "'");
}

aggmg::CycleKind parse_cycle(const std::string& s) {
  if (s == "v") return aggmg::CycleKind::v;
  if (s == "k") return aggmg::CycleKind::k;
  if (s == "hybrid") return aggmg::CycleKind::hybrid;
  throw aggmg::Error("unknown cycle '" + s + "'");
}

json options_to_json(const SolveOptions& o) {
  json j;
  j["matrix"] = o.matrix;
  j["rhs"] = o.rhs;
  j["tol"] = o.tol;
  j["max_iters"] = o.max_iters;
  j["restart"] = o.restart;
  j["solver"] = o.solver;
  j["cycle"] = o.cycle;
  j["klevels"] = o.klevels;
  j["inner"] = o.inner;
  j["t"] = o.t;
  j["smoother"] = o.smoother;
  j["alpha"] = o.alpha;
  j["seed"] = o.seed;
  j["coarse_size"] = o.coarse_size;
  j["max_levels"] = o.max_levels;
  j["threads"] = o.threads;
  j["reuse_cache"] = o.reuse_cache;
  j["allow_pattern"] = o.allow_pattern;
  return j;
}

SolveOptions options_from_json(const json& j) {
  SolveOptions o;
  o.matrix = j.at("matrix").get<std::string>();
  o.rhs = j.at("rhs").get<std::string>();
  o.tol = j.at("tol").get<double>();
  o.max_iters = j.at("max_iters").get<int>();
  o.restart = j.at("restart").get<int>();
  o.solver = j.at("solver").get<std::string>();
  o.cycle = j.at("cycle").get<std::string>();
  o.klevels = j.at("klevels").get<int>();
  o.inner = j.at("inner").get<std::string>();
  o.t = j.at("t").get<double>();
  o.smoother = j.at("smoother").get<std::string>();
  o.alpha = j.at("alpha").get<double>();
  o.seed = j.at("seed").get<std::uint64_t>();
  o.coarse_size = j.at("coarse_size").get<aggmg::index_t>();
  o.max_levels = j.at("max_levels").get<int>();
  o.threads = j.at("threads").get<int>();
  o.reuse_cache = j.at("reuse_cache").get<bool>();
  o.allow_pattern = j.at("allow_pattern").get<bool>();
  return o;
}

json make_manifest(const SolveOptions& o) {
  json m;
  m["tool"] = "aggmg";
  m["version"] = aggmg::version();
  m["command"] = "solve";
  m["config"] = options_to_json(o);
  json inputs;
  inputs["matrix"] = {{"path", o.matrix}, {"hash", file_hash(o.matrix)}};
  if (!o.rhs.empty()) inputs["rhs"] = {{"path", o.rhs}, {"hash", file_hash(o.rhs)}};
  m["inputs"] = inputs;
  return m;
}

struct SolveOutcome {
  aggmg::SolveReport report;
  aggmg::HierarchyReport hierarchy;
  double final_relative_residual = 0.0;
};

SolveOutcome run_pipeline(const SolveOptions& o, const aggmg::SparseMatrix& A,
                          const aggmg::Vector& b) {
  aggmg::set_num_threads(o.threads);

  aggmg::SetupConfig scfg;
  scfg.alpha = o.alpha;
  scfg.coarse_size_max = o.coarse_size;
  scfg.max_levels = o.max_levels;
  scfg.smoother = parse_smoother(o.smoother);
  scfg.seed = o.seed;
  scfg.reuse_caches = o.reuse_cache;

  const auto t_setup = Clock::now();
  const aggmg::Hierarchy h =
      aggmg::setup_hierarchy(A, aggmg::ones_vector(A.n_rows), scfg);
  const double setup_seconds = seconds_since(t_setup);
  for (const std::string& w : h.warnings) std::cerr << "warning: " << w << "\n";

  aggmg::CycleConfig ccfg;
  ccfg.kind = parse_cycle(o.cycle);
  ccfg.k_levels = o.klevels;
  ccfg.t = o.t;
  ccfg.inner = (o.inner == "cg") ? aggmg::InnerKind::cg : aggmg::InnerKind::gmres;

  aggmg::SolverConfig kcfg;
  kcfg.method = (o.solver == "pcg") ? aggmg::SolverMethod::pcg
                                    : aggmg::SolverMethod::fgmres;
  kcfg.tol = o.tol;
  kcfg.max_iters = o.max_iters;
  kcfg.restart = o.restart;

  const aggmg::Preconditioner M = [&](const aggmg::Vector& r) {
    return aggmg::apply_preconditioner(h, ccfg, r);
  };
  const aggmg::Vector x0(A.n_rows, 0.0);
  aggmg::SolveResult res = (kcfg.method == aggmg::SolverMethod::pcg)
                               ? aggmg::pcg(A, b, x0, M, kcfg)
                               : aggmg::fgmres(A, b, x0, M, kcfg);
  res.report.setup_seconds = setup_seconds;

  SolveOutcome out;
  out.report = std::move(res.report);
  out.hierarchy = aggmg::hierarchy_report(h);
  const double nb = aggmg::norm2(b);
  out.final_relative_residual =
      nb > 0.0 ? out.report.residual_history.back() / nb : 0.0;
  return out;
}

json outcome_to_json(const SolveOutcome& oc) {
  json j;
  j["converged"] = oc.report.converged;
  j["iterations"] = oc.report.iterations;
  j["final_relative_residual"] = oc.final_relative_residual;
  j["setup_seconds"] = oc.report.setup_seconds;
  j["solve_seconds"] = oc.report.solve_seconds;
  j["residual_history"] = oc.report.residual_history;
  if (!oc.report.note.empty()) j["note"] = oc.report.note;
  json levels = json::array();
  for (const auto& s : oc.hierarchy.levels)
    levels.push_back({{"n", s.n}, {"nnz", s.nnz}, {"nnz_per_row", s.nnz_per_row}});
  j["hierarchy"] = {{"levels", levels},
                    {"grid_complexity", oc.hierarchy.grid_complexity},
                    {"operator_complexity", oc.hierarchy.operator_complexity}};
  return j;
}

void print_outcome(const SolveOutcome& oc) {
  std::cout << aggmg::format_table(oc.hierarchy);
  std::cout << (oc.report.converged ? "converged" : "NOT converged") << " in "
            << oc.report.iterations << " iterations, relative residual "
            << std::scientific << std::setprecision(3) << oc.final_relative_residual
            << "\n";
  std::cout << std::fixed << std::setprecision(3) << "setup "
            << oc.report.setup_seconds << " s, solve " << oc.report.solve_seconds
            << " s\n";
  if (!oc.report.note.empty()) std::cout << "note: " << oc.report.note << "\n";
  std::cout.unsetf(std::ios::floatfield);
}

int cmd_generate(const std::string& kind, aggmg::index_t nx, aggmg::index_t ny,
                 aggmg::index_t nz, double epsilon, int weak_axis,
                 const std::string& rhs_kind, std::uint64_t seed,
                 const std::string& matrix_out, const std::string& rhs_out) {
  aggmg::PoissonSpec spec;
  if (kind == "poisson2d") {
    spec.dims = 2;
  } else if (kind == "poisson3d") {
    spec.dims = 3;
    spec.nz = nz;
  } else {
    throw aggmg::Error("unknown problem kind '" + kind + "'");
  }
  spec.nx = nx;
  spec.ny = ny;
  spec.epsilon = epsilon;
  spec.weak_axis = weak_axis;
  const aggmg::SparseMatrix A = aggmg::generate_poisson(spec);
  const aggmg::Vector b = (rhs_kind == "random")
                              ? aggmg::random_vector(A.n_rows, seed)
                              : aggmg::ones_vector(A.n_rows);
  aggmg::write_matrix_market_file(matrix_out, A);
  aggmg::write_vector_market_file(rhs_out, b);
  std::cout << "wrote " << matrix_out << " (" << A.n_rows << " unknowns, " << A.nnz()
            << " nnz) and " << rhs_out << "\n";
  return kExitOk;
}

int cmd_solve(SolveOptions o, const std::string& from_manifest,
              const std::string& report_path, const std::string& manifest_out) {
  if (!from_manifest.empty()) {
    std::ifstream in(from_manifest);
    aggmg::require(in.good(), "cannot open manifest '" + from_manifest + "'");
    json m = json::parse(in);
    o = options_from_json(m.at("config"));
    for (const auto& [name, entry] : m.at("inputs").items()) {
      const std::string path = entry.at("path").get<std::string>();
      const std::string recorded = entry.at("hash").get<std::string>();
      if (file_hash(path) != recorded)
        std::cerr << "warning: " << name << " file '" << path
                  << "' differs from the manifest hash; results may not reproduce\n";
    }
  }
  aggmg::require(!o.matrix.empty(), "--matrix is required");

  aggmg::MmOptions mm;
  mm.allow_pattern = o.allow_pattern;
  const aggmg::SparseMatrix A = aggmg::read_matrix_market_file(o.matrix, mm);
  const aggmg::Vector b =
      o.rhs.empty() ? aggmg::ones_vector(A.n_rows) : aggmg::read_vector_market_file(o.rhs);
  aggmg::require(static_cast<aggmg::index_t>(b.size()) == A.n_rows,
                 "right-hand side length does not match the matrix");

  const json manifest = make_manifest(o);
  const SolveOutcome oc = run_pipeline(o, A, b);

  print_outcome(oc);
  if (!manifest_out.empty()) {
    std::ofstream out(manifest_out);
    aggmg::require(out.good(), "cannot write manifest '" + manifest_out + "'");
    out << manifest.dump(2) << "\n";
  } else {
    std::cout << "manifest: " << manifest.dump() << "\n";
  }
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    aggmg::require(out.good(), "cannot write report '" + report_path + "'");
    json rep = outcome_to_json(oc);
    rep["manifest"] = manifest;
    out << rep.dump(2) << "\n";
  }
  return oc.report.converged ? kExitOk : kExitNoConvergence;
}

int cmd_bench(const std::vector<aggmg::index_t>& sizes, SolveOptions o, double epsilon,
              aggmg::index_t galerkin_refresh, const std::string& out_path) {
  json rows = json::array();
  std::cout << "    size        n  iters     setup_s     solve_s  status\n";
  for (const aggmg::index_t s : sizes) {
    json row;
    row["size"] = s;
    try {
      aggmg::PoissonSpec spec;
      spec.nx = s;
      spec.ny = s;
      spec.epsilon = epsilon;
      const aggmg::SparseMatrix A = aggmg::generate_poisson(spec);
      const aggmg::Vector b = aggmg::ones_vector(A.n_rows);
      const SolveOutcome oc = run_pipeline(o, A, b);
      row["n"] = A.n_rows;
      row["iterations"] = oc.report.iterations;
      row["converged"] = oc.report.converged;
      row["setup_seconds"] = oc.report.setup_seconds;
      row["solve_seconds"] = oc.report.solve_seconds;
      row["final_relative_residual"] = oc.final_relative_residual;
      std::cout << std::setw(8) << s << std::setw(9) << A.n_rows << std::setw(7)
                << oc.report.iterations << std::setw(12) << std::fixed
                << std::setprecision(3) << oc.report.setup_seconds << std::setw(12)
                << oc.report.solve_seconds
                << (oc.report.converged ? "  ok" : "  NOT converged") << "\n";
      std::cout.unsetf(std::ios::floatfield);
    } catch (const std::exception& e) {
      row["error"] = e.what();
      std::cout << std::setw(8) << s << "  error: " << e.what() << "\n";
    }
    rows.push_back(row);
  }

  json result;
  result["rows"] = rows;

  if (galerkin_refresh > 0) {
    aggmg::set_num_threads(o.threads);
    aggmg::PoissonSpec spec;
    spec.nx = galerkin_refresh;
    spec.ny = galerkin_refresh;
    spec.epsilon = epsilon;
    const aggmg::SparseMatrix A = aggmg::generate_poisson(spec);
    aggmg::SetupConfig scfg;
    scfg.alpha = o.alpha;
    scfg.seed = o.seed;
    scfg.smoother = parse_smoother(o.smoother);
    scfg.reuse_caches = true;
    aggmg::Hierarchy h = aggmg::setup_hierarchy(A, aggmg::ones_vector(A.n_rows), scfg);

    const std::vector<double> values = h.levels[0].A.values;
    const auto t_cached = Clock::now();
    h = aggmg::refresh_values(std::move(h), values);
    const double cached_s = seconds_since(t_cached);

    // Same numeric rebuild, but through explicit triple products.
    const auto t_direct = Clock::now();
    for (aggmg::index_t k = 0; k + 1 < h.n_levels(); ++k) {
      h.levels[k + 1].A =
          aggmg::galerkin_direct(h.levels[k].R, h.levels[k].A, h.levels[k].P);
      h.levels[k].smoother =
          aggmg::setup_smoother(h.levels[k].A, scfg.smoother, scfg.arnoldi_m, o.seed);
    }
    aggmg::lu_factor(aggmg::to_dense(h.levels.back().A));
    const double direct_s = seconds_since(t_direct);

    std::cout << "galerkin refresh " << galerkin_refresh << "^2: cached "
              << std::fixed << std::setprecision(4) << cached_s << " s, direct "
              << direct_s << " s, speedup " << std::setprecision(2)
              << direct_s / cached_s << "x\n";
    std::cout.unsetf(std::ios::floatfield);
    result["galerkin_refresh"] = {{"size", galerkin_refresh},
                                  {"cached_seconds", cached_s},
                                  {"direct_seconds", direct_s},
                                  {"speedup", direct_s / cached_s}};
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    aggmg::require(out.good(), "cannot write '" + out_path + "'");
    out << result.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aggregation multigrid solver"};
  app.require_subcommand(1);

  // generate
  std::string g_kind = "poisson2d";
  aggmg::index_t g_nx = 64, g_ny = 64, g_nz = 64;
  double g_epsilon = 0.01;  // anisotropic by default; pass 1 for isotropic
  int g_weak_axis = -1;
  std::string g_rhs_kind = "ones";
  std::uint64_t g_seed = 42;
  std::string g_matrix_out = "matrix.mtx", g_rhs_out = "rhs.mtx";
  CLI::App* gen = app.add_subcommand("generate", "write a Matrix Market test problem");
  gen->add_option("--kind", g_kind, "poisson2d or poisson3d");
  gen->add_option("--nx", g_nx);
  gen->add_option("--ny", g_ny);
  gen->add_option("--nz", g_nz);
  gen->add_option("--epsilon", g_epsilon, "coefficient on the weak axis");
  gen->add_option("--weak-axis", g_weak_axis, "0=x 1=y 2=z, -1 for the default");
  gen->add_option("--rhs-kind", g_rhs_kind, "ones or random");
  gen->add_option("--seed", g_seed, "seed for --rhs-kind random");
  gen->add_option("--matrix-out", g_matrix_out);
  gen->add_option("--rhs-out", g_rhs_out);

  // solve
  SolveOptions so;
  std::string s_from_manifest, s_report, s_manifest_out;
  CLI::App* sol = app.add_subcommand("solve", "solve a system with the multigrid-"
                                              "preconditioned Krylov solver");
  sol->add_option("--matrix", so.matrix, "Matrix Market system matrix");
  sol->add_option("--rhs", so.rhs, "Matrix Market right-hand side (default: ones)");
  sol->add_option("--tol", so.tol, "relative residual target");
  sol->add_option("--max-iters", so.max_iters);
  sol->add_option("--solver", so.solver)->check(CLI::IsMember({"fgmres", "pcg"}));
  sol->add_option("--cycle", so.cycle)->check(CLI::IsMember({"v", "k", "hybrid"}));
  sol->add_option("--klevels", so.klevels, "accelerated levels in hybrid mode");
  sol->add_option("--inner", so.inner)->check(CLI::IsMember({"cg", "gmres"}));
  sol->add_option("--t", so.t, "inner residual threshold");
  sol->add_option("--smoother", so.smoother)
      ->check(CLI::IsMember({"jacobi", "djacobi", "sgs"}));
  sol->add_option("--alpha", so.alpha, "strength threshold");
  sol->add_option("--seed", so.seed);
  sol->add_option("--coarse-size", so.coarse_size, "largest direct-solve grid");
  sol->add_option("--max-levels", so.max_levels);
  sol->add_option("--threads", so.threads, "0 = runtime default");
  sol->add_flag("--reuse-cache", so.reuse_cache, "build value-refresh caches");
  sol->add_flag("--allow-pattern", so.allow_pattern,
                "accept pattern matrices as all-ones");
  sol->add_option("--restart", so.restart, "fgmres restart length");
  sol->add_option("--from-manifest", s_from_manifest,
                  "re-run a recorded manifest (other flags ignored)");
  sol->add_option("--report", s_report, "write a structured report to this file");
  sol->add_option("--manifest-out", s_manifest_out,
                  "write the manifest here instead of stdout");

  // bench
  SolveOptions bo;
  std::string b_sizes = "64,128,256";
  double b_epsilon = 1.0;
  aggmg::index_t b_galerkin = 0;
  std::string b_out;
  CLI::App* ben = app.add_subcommand("bench", "sweep grid sizes and report timings");
  ben->add_option("--sizes", b_sizes, "comma-separated square grid sizes");
  ben->add_option("--epsilon", b_epsilon);
  ben->add_option("--tol", bo.tol);
  ben->add_option("--max-iters", bo.max_iters);
  ben->add_option("--solver", bo.solver)->check(CLI::IsMember({"fgmres", "pcg"}));
  ben->add_option("--cycle", bo.cycle)->check(CLI::IsMember({"v", "k", "hybrid"}));
  ben->add_option("--klevels", bo.klevels);
  ben->add_option("--inner", bo.inner)->check(CLI::IsMember({"cg", "gmres"}));
  ben->add_option("--t", bo.t);
  ben->add_option("--smoother", bo.smoother)
      ->check(CLI::IsMember({"jacobi", "djacobi", "sgs"}));
  ben->add_option("--alpha", bo.alpha);
  ben->add_option("--seed", bo.seed);
  ben->add_option("--coarse-size", bo.coarse_size);
  ben->add_option("--threads", bo.threads);
  ben->add_flag("--reuse-cache", bo.reuse_cache);
  ben->add_option("--galerkin-refresh", b_galerkin,
                  "also time cached vs direct coarse-operator refresh at this size");
  ben->add_option("--out", b_out, "write results as structured data");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (gen->parsed())
      return cmd_generate(g_kind, g_nx, g_ny, g_nz, g_epsilon, g_weak_axis, g_rhs_kind,
                          g_seed, g_matrix_out, g_rhs_out);
    if (sol->parsed()) return cmd_solve(so, s_from_manifest, s_report, s_manifest_out);
    if (ben->parsed()) {
      std::vector<aggmg::index_t> sizes;
      std::stringstream ss(b_sizes);
      std::string tok;
      while (std::getline(ss, tok, ',')) sizes.push_back(std::stoll(tok));
      return cmd_bench(sizes, bo, b_epsilon, b_galerkin, b_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
