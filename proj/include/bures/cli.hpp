#ifndef BURES_CLI_HPP
#define BURES_CLI_HPP

// Command layer behind the `bures` executable. `run` takes the arguments
// without the program name and returns the process exit code:
//   0 success, 2 validation failure, 3 numerical-gate failure.
//
// CSV columns (fixed order):
//   geodesic      s, root_fidelity_to_start, trace, purity, eig_0..eig_{N-1}[, bloch_x, bloch_y, bloch_z]
//   werner-sweep  p, root_fidelity, s_star_over_half_pi, closed_form, abs_diff
//   qubit-orbit   s, closed_x, closed_y, closed_z, pipeline_x, pipeline_y, pipeline_z, abs_diff

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bures/bures.hpp"
#include "bures/io.hpp"

namespace bures {
namespace cli {

using json = nlohmann::json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 2;
inline constexpr int exit_gate = 3;

struct Options {
  int samples = 11;
  int steps = 101;
  std::string format = "csv";
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string out;

  double tol_or(double fallback) const { return tol.value_or(fallback); }
};

namespace detail {

inline json rounded(double v) { return io::round_significant(v, 15); }

inline json to_json(const RealVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline void csv_row(std::ostream& os, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << io::csv_number(values[i]);
  os << '\n';
}

inline void csv_header(std::ostream& os, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
  os << '\n';
}

inline void emit_table(std::ostream& os, const Options& opt, const std::vector<std::string>& names,
                       const std::vector<std::vector<double>>& rows, json extra = json::object()) {
  if (opt.format == "json") {
    json doc = std::move(extra);
    json list = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < names.size(); ++i) obj[names[i]] = row[i];
      list.push_back(std::move(obj));
    }
    doc["columns"] = names;
    doc["rows"] = std::move(list);
    os << doc.dump(2) << '\n';
  } else {
    csv_header(os, names);
    for (const auto& row : rows) csv_row(os, row);
  }
}

// Evaluates fn(i) for i in [0, count) on a few threads; results stay in index order.
template <class Fn>
auto ordered_parallel_map(std::size_t count, Fn fn) {
  using Row = decltype(fn(std::size_t{0}));
  std::vector<Row> rows(count);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) rows[i] = fn(i);
    return rows;
  }
  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) rows[i] = fn(i);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  return rows;
}

inline closedform::Vector3 vector3(const RealVector& v, const char* flag) {
  if (v.size() != 3) throw validation_error(std::string(flag) + " must have 3 components");
  return {v(0), v(1), v(2)};
}

}  // namespace detail

inline int cmd_fidelity(const std::string& a, const std::string& b, const Options&, std::ostream& os) {
  const auto rho1 = io::load_state(a);
  const auto rho2 = io::load_state(b);
  const auto summary = geodesy::bures(rho1, rho2);
  json doc = {{"root_fidelity", detail::rounded(summary.root_fidelity)},
              {"bures_angle", detail::rounded(summary.bures_angle)},
              {"bures_distance", detail::rounded(summary.bures_distance)}};
  os << doc.dump(2) << '\n';
  return exit_ok;
}

inline int cmd_geodesic(const std::string& a, const std::string& b, const Options& opt, std::ostream& os,
                        std::ostream& err) {
  if (opt.samples < 2) throw validation_error("--samples must be at least 2");
  const auto rho1 = io::load_state(a);
  const auto rho2 = io::load_state(b);
  const auto path = geodesy::geometric_mean_operator(rho1, rho2);
  const auto n = path.dim();
  const double tol = opt.tol_or(1e-9);

  std::vector<std::string> names = {"s", "root_fidelity_to_start", "trace", "purity"};
  for (Eigen::Index i = 0; i < n; ++i) names.push_back("eig_" + std::to_string(i));
  if (n == 2) names.insert(names.end(), {"bloch_x", "bloch_y", "bloch_z"});

  const auto k = static_cast<std::size_t>(opt.samples);
  struct Row {
    std::vector<double> values;
    double fidelity_gap = 0.0;
    double trace_gap = 0.0;
  };
  const auto rows = detail::ordered_parallel_map(k, [&](std::size_t i) {
    const double s = i + 1 == k ? path.s_star() : path.s_star() * static_cast<double>(i) / static_cast<double>(k - 1);
    const auto rho = geodesy::geodesic_point(path, s);
    const double f = geodesy::root_fidelity(rho1, rho);
    const double tr = rho.hermitian().trace();
    Row row;
    row.values = {s, f, tr, rho.purity()};
    const auto sd = matcore::spectral_decompose(rho.hermitian());
    for (Eigen::Index j = 0; j < n; ++j) row.values.push_back(sd.eigenvalues(j));
    if (n == 2) {
      const auto x = closedform::bloch_of(rho.matrix());
      row.values.insert(row.values.end(), {x(0), x(1), x(2)});
    }
    row.fidelity_gap = std::abs(f - std::cos(s));
    row.trace_gap = std::abs(tr - 1.0);
    return row;
  });

  std::vector<std::vector<double>> table;
  double worst_f = 0.0;
  double worst_tr = 0.0;
  for (const auto& r : rows) {
    table.push_back(r.values);
    worst_f = std::max(worst_f, r.fidelity_gap);
    worst_tr = std::max(worst_tr, r.trace_gap);
  }
  detail::emit_table(os, opt, names, table,
                     {{"s_star", path.s_star()}, {"root_fidelity", path.root_fidelity()}, {"dim", n}});
  if (worst_tr > 1e-10 || worst_f > tol) {
    err << "gate failed: max |Tr rho(s) - 1| = " << worst_tr << ", max |sqrtF(rho1, rho(s)) - cos s| = " << worst_f
        << " (tol " << tol << ")\n";
    return exit_gate;
  }
  return exit_ok;
}

inline int cmd_werner_sweep(const Options& opt, std::ostream& os, std::ostream& err) {
  if (opt.steps < 2) throw validation_error("--steps must be at least 2");
  const double tol = opt.tol_or(1e-10);
  const auto steps = static_cast<std::size_t>(opt.steps);
  const auto rows = detail::ordered_parallel_map(steps, [&](std::size_t i) {
    const double p = i + 1 == steps ? 1.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
    const double f = geodesy::root_fidelity(werner(werner_kind::ghz, p), werner(werner_kind::w, p));
    const double closed = closedform::werner_root_fidelity(p);
    return std::vector<double>{p, f, std::acos(f) / (std::numbers::pi / 2), closed, std::abs(f - closed)};
  });
  detail::emit_table(os, opt, {"p", "root_fidelity", "s_star_over_half_pi", "closed_form", "abs_diff"}, rows);
  double worst = 0.0;
  for (const auto& r : rows)
    if (r[0] < 1.0) worst = std::max(worst, r[4]);
  if (worst > tol) {
    err << "gate failed: spectral and closed-form root fidelity differ by " << worst << " (tol " << tol << ")\n";
    return exit_gate;
  }
  return exit_ok;
}

inline int cmd_qubit_orbit(const RealVector& xv, const RealVector& yv, const Options& opt, std::ostream& os,
                           std::ostream& err) {
  if (opt.samples < 2) throw validation_error("--samples must be at least 2");
  const auto x = detail::vector3(xv, "--x");
  const auto y = detail::vector3(yv, "--y");
  const double tol = opt.tol_or(1e-9);
  const auto rho1 = DensityMatrix::from(closedform::qubit_state(x));
  const auto rho2 = DensityMatrix::from(closedform::qubit_state(y));
  const auto path = geodesy::geometric_mean_operator(rho1, rho2);
  const auto k = static_cast<std::size_t>(opt.samples);
  std::vector<std::vector<double>> rows;
  double worst = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double s = i + 1 == k ? path.s_star() : path.s_star() * static_cast<double>(i) / static_cast<double>(k - 1);
    const auto closed = closedform::qubit_orbit(x, y, s);
    const auto pipeline = closedform::bloch_of(geodesy::geodesic_point(path, s).matrix());
    const double diff = (closed - pipeline).cwiseAbs().maxCoeff();
    worst = std::max(worst, diff);
    rows.push_back({s, closed(0), closed(1), closed(2), pipeline(0), pipeline(1), pipeline(2), diff});
  }
  detail::emit_table(os, opt,
                     {"s", "closed_x", "closed_y", "closed_z", "pipeline_x", "pipeline_y", "pipeline_z", "abs_diff"},
                     rows, {{"s_star", path.s_star()}});
  if (worst > tol) {
    err << "gate failed: closed-form orbit deviates from the spectral geodesic by " << worst << " (tol " << tol
        << ")\n";
    return exit_gate;
  }
  return exit_ok;
}

inline int cmd_solve_g(int n, const std::optional<RealVector>& xv, const std::optional<RealVector>& xdotv,
                       const Options& opt, std::ostream& os, std::ostream& err) {
  const auto basis = generator_basis(n);
  const auto m = static_cast<Eigen::Index>(basis.size());
  Rng rng(opt.seed);
  RealVector x;
  if (xv) {
    x = *xv;
  } else {
    x = bloch_from_density(random_density(n, rng), basis).coords();
  }
  RealVector xdot;
  if (xdotv) {
    xdot = *xdotv;
  } else {
    std::normal_distribution<double> normal;
    xdot.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) xdot(i) = normal(rng);
  }
  const BlochVector bx(n, x);
  const double tol = opt.tol_or(1e-8);
  const auto gen = sun::solve_tangent_G(bx, xdot, basis);
  const double residual = sun::reconstruction_residual(gen, bx, xdot, basis);
  json doc = {{"n", n},
              {"x", detail::to_json(x)},
              {"xdot", detail::to_json(xdot)},
              {"g0", gen.g0},
              {"g", detail::to_json(gen.g)},
              {"residual", residual},
              {"reciprocal_condition", gen.reciprocal_condition}};
  os << doc.dump(2) << '\n';
  if (!(residual <= tol)) {
    err << "gate failed: reconstruction residual " << residual << " exceeds " << tol << '\n';
    return exit_gate;
  }
  return exit_ok;
}

inline int cmd_invariants(const std::string& a, const Options& opt, std::ostream& os, std::ostream& err) {
  const auto rho = io::load_state(a);
  const auto inv = sun::characteristic_invariants(rho);
  const auto sd = matcore::spectral_decompose(rho.hermitian());
  // Elementary symmetric polynomials of the eigenvalues, for comparison.
  const auto n = rho.dim();
  RealVector e = RealVector::Zero(n + 1);
  e(0) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = i + 1; k >= 1; --k) e(k) += sd.eigenvalues(i) * e(k - 1);
  const RealVector from_eigs = e.tail(n);
  const double diff = (inv - from_eigs).cwiseAbs().maxCoeff();
  const double tol = opt.tol_or(1e-10);
  json doc = {{"dim", n},
              {"invariants", detail::to_json(inv)},
              {"eigenvalues", detail::to_json(sd.eigenvalues)},
              {"from_eigenvalues", detail::to_json(from_eigs)},
              {"max_abs_diff", diff},
              {"purity", rho.purity()}};
  os << doc.dump(2) << '\n';
  if (!(diff <= tol)) {
    err << "gate failed: invariants differ from eigenvalue polynomials by " << diff << " (tol " << tol << ")\n";
    return exit_gate;
  }
  return exit_ok;
}

inline int cmd_sun_check(const std::vector<int>& dims, const Options& opt, std::ostream& os, std::ostream& err) {
  const double tol = opt.tol_or(1e-12);
  json list = json::array();
  double worst = 0.0;
  for (int n : dims) {
    const auto r = sun::check_algebra(generator_basis(n));
    worst = std::max(worst, r.worst());
    list.push_back({{"n", n},
                    {"trace_orthogonality", r.trace_orthogonality},
                    {"f_antisymmetry", r.f_antisymmetry},
                    {"d_symmetry", r.d_symmetry},
                    {"completeness", r.completeness},
                    {"closure", r.closure}});
  }
  os << json{{"checks", list}, {"tol", tol}}.dump(2) << '\n';
  if (!(worst <= tol)) {
    err << "gate failed: algebra residual " << worst << " exceeds " << tol << '\n';
    return exit_gate;
  }
  return exit_ok;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bures geodesics, Uhlmann fidelity and su(N) tangent tools", "bures"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--samples", opt.samples, "Sample count along a path")->capture_default_str();
  app.add_option("--steps", opt.steps, "Grid points for sweeps")->capture_default_str();
  app.add_option("--format", opt.format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--tol", opt.tol, "Gate tolerance (command-specific default)");
  app.add_option("--seed", opt.seed, "Seed for random inputs")->capture_default_str();
  app.add_option("--out", opt.out, "Write output to FILE instead of stdout");

  std::string state_a;
  std::string state_b;
  auto* fidelity = app.add_subcommand("fidelity", "Root fidelity, Bures angle and distance as JSON");
  fidelity->add_option("state1", state_a, "Matrix file or @builtin")->required();
  fidelity->add_option("state2", state_b, "Matrix file or @builtin")->required();

  auto* geodesic = app.add_subcommand("geodesic", "Sample the Bures geodesic between two states");
  geodesic->add_option("state1", state_a)->required();
  geodesic->add_option("state2", state_b)->required();

  app.add_subcommand("werner-sweep", "Root fidelity of the GHZ/W Werner pair over p in [0, 1]");

  std::string x_text;
  std::string y_text;
  std::string xdot_text;
  auto* orbit = app.add_subcommand("qubit-orbit", "Closed-form qubit orbit against the spectral geodesic");
  orbit->add_option("--x", x_text, "Start Bloch vector, comma separated")->required();
  orbit->add_option("--y", y_text, "End Bloch vector, comma separated")->required();

  int n = 2;
  auto* solve = app.add_subcommand("solve-g", "Solve drho = G rho + rho G in the su(N) expansion");
  solve->add_option("--n", n, "Hilbert-space dimension")->capture_default_str();
  solve->add_option("--x", x_text, "Bloch vector (random state from --seed if omitted)");
  solve->add_option("--xdot", xdot_text, "Bloch velocity (random from --seed if omitted)");

  auto* invariants = app.add_subcommand("invariants", "Characteristic invariants from power traces");
  invariants->add_option("state", state_a)->required();

  std::vector<int> dims = {2, 3, 4};
  auto* sun_check = app.add_subcommand("sun-check", "Residuals of the generator-basis identities");
  sun_check->add_option("--n", dims, "Dimensions to check")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return exit_ok;
    }
    err << "error: " << e.what() << '\n';
    return exit_validation;
  }

  std::ostringstream buffer;
  int code = exit_ok;
  try {
    if (*fidelity) {
      code = cmd_fidelity(state_a, state_b, opt, buffer);
    } else if (*geodesic) {
      code = cmd_geodesic(state_a, state_b, opt, buffer, err);
    } else if (app.got_subcommand("werner-sweep")) {
      code = cmd_werner_sweep(opt, buffer, err);
    } else if (*orbit) {
      code = cmd_qubit_orbit(io::parse_vector(x_text, "--x"), io::parse_vector(y_text, "--y"), opt, buffer, err);
    } else if (*solve) {
      std::optional<RealVector> x;
      std::optional<RealVector> xdot;
      if (!x_text.empty()) x = io::parse_vector(x_text, "--x");
      if (!xdot_text.empty()) xdot = io::parse_vector(xdot_text, "--xdot");
      code = cmd_solve_g(n, x, xdot, opt, buffer, err);
    } else if (*invariants) {
      code = cmd_invariants(state_a, opt, buffer, err);
    } else if (*sun_check) {
      code = cmd_sun_check(dims, opt, buffer, err);
    }
  } catch (const validation_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_validation;
  } catch (const numerical_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_gate;
  }

  if (opt.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(opt.out);
    if (!file) {
      err << "error: cannot write " << opt.out << '\n';
      return exit_validation;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace cli
}  // namespace bures

#endif  // BURES_CLI_HPP
