// momentbc: truncated moment problems through the boundary-control pipeline.
//
// Subcommands: classify, solve, jacobi, response, simulate, determinacy.
// Inputs are JSON ({"moments": [...]} / {"a": [...], "b": [...]}) or CSV
// (one moment per line); results are JSON with the input digest embedded.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "momentbc/bc_solver.hpp"
#include "momentbc/determinacy.hpp"
#include "momentbc/errors.hpp"
#include "momentbc/moments.hpp"
#include "momentbc/oracle.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace momentbc;

namespace {

constexpr const char* kVersion = "momentbc 0.1.0";

enum ExitCode {
  kOk = 0,
  kInputError = 2,
  kInfeasible = 3,
  kOrderInfeasible = 4,
  kResidualFailure = 5,
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct ProblemFile {
  MomentSequence moments;
  int order = 0;        // 0: not specified
  double tol = kDefaultTol;
  std::string digest;
};

ProblemFile load_problem(const fs::path& path, const std::string& format) {
  const std::string bytes = read_file(path);
  ProblemFile p;
  p.digest = fnv1a_digest(bytes);
  const bool csv = format == "csv" || (format.empty() && path.extension() == ".csv");
  if (csv) {
    std::istringstream in(bytes);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      try {
        size_t used = 0;
        const double v = std::stod(line, &used);
        while (used < line.size() && std::isspace(static_cast<unsigned char>(line[used]))) ++used;
        if (used != line.size()) throw std::invalid_argument("trailing characters");
        p.moments.push_back(v);
      } catch (const std::exception&) {
        throw InputError(path.string() + ":" + std::to_string(lineno) +
                         ": expected one decimal number per line");
      }
    }
  } else {
    json j;
    try {
      j = json::parse(bytes);
    } catch (const json::parse_error& e) {
      throw InputError(path.string() + ": " + e.what());
    }
    if (!j.contains("moments") || !j["moments"].is_array())
      throw InputError(path.string() + ": field \"moments\" (array) is required");
    for (const auto& v : j["moments"]) {
      if (!v.is_number())
        throw InputError(path.string() + ": field \"moments\" must hold numbers");
      p.moments.push_back(v.get<double>());
    }
    if (j.contains("order")) p.order = j["order"].get<int>();
    if (j.contains("tolerance")) p.tol = j["tolerance"].get<double>();
  }
  if (p.moments.empty()) throw InputError(path.string() + ": no moments given");
  for (double v : p.moments)
    if (!std::isfinite(v)) throw InputError(path.string() + ": moments must be finite");
  return p;
}

struct JacobiFile {
  std::vector<double> a, b;
  std::string digest;
};

JacobiFile load_jacobi(const fs::path& path) {
  const std::string bytes = read_file(path);
  JacobiFile jf;
  jf.digest = fnv1a_digest(bytes);
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  if (!j.contains("b") || !j["b"].is_array())
    throw InputError(path.string() + ": field \"b\" (array) is required");
  for (const auto& v : j["b"]) jf.b.push_back(v.get<double>());
  if (j.contains("a"))
    for (const auto& v : j["a"]) jf.a.push_back(v.get<double>());
  return jf;
}

json result_header(const std::string& digest, double tol) {
  json r;
  r["tool"] = kVersion;
  r["input_digest"] = digest;
  r["tolerance"] = tol;
  return r;
}

void emit(const json& result, const std::string& output) {
  const std::string text = result.dump(2) + "\n";
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw InputError("cannot write " + output);
    out << text;
  }
}

// ---- subcommand bodies ----------------------------------------------------

int run_classify(const ProblemFile& p, const std::string& output) {
  json result = result_header(p.digest, p.tol);
  json table = json::array();
  const int hard_cap = int((p.moments.size() + 1) / 2);
  const int cap = p.order > 0 ? std::min(p.order, hard_cap) : hard_cap;
  bool failed = false;
  int max_ok = 0;
  for (int N = 1; N <= cap && !failed; ++N) {
    json row;
    row["order"] = N;
    try {
      const Classification c = classify(p.moments, N, p.tol);
      row["hamburger"] = c.hamburger;
      row["stieltjes"] = c.stieltjes;
      row["hausdorff"] = c.hausdorff;
      row["min_eigenvalue_s0"] = c.min_eig_s0;
      if (!std::isnan(c.min_eig_s1)) row["min_eigenvalue_s1"] = c.min_eig_s1;
      if (!std::isnan(c.min_eig_diff)) row["min_eigenvalue_diff"] = c.min_eig_diff;
      row["det_s0"] = hankel(p.moments, N, 0).determinant();
      if (int(p.moments.size()) >= 2 * N)
        row["det_s1"] = hankel(p.moments, N, 1).determinant();
      if (c.hamburger) max_ok = N; else failed = true;
    } catch (const InsufficientMoments&) {
      break;  // ran out of moments for the Stieltjes column at the last order
    }
    table.push_back(row);
  }
  result["max_feasible_order"] = max_ok;
  result["classification"] = table;
  emit(result, output);
  return max_ok == 0 ? kInfeasible : kOk;
}

int run_solve(const ProblemFile& p, int order, const std::string& output) {
  const int N = order > 0 ? order : (p.order > 0 ? p.order : max_feasible_order(p.moments, p.tol));
  if (N < 1) throw InputError("no feasible order; give --order >= 1");
  json result = result_header(p.digest, p.tol);
  result["order"] = N;
  try {
    const AtomicMeasure mu = solve_truncated(p.moments, N, p.tol);
    json atoms = json::array();
    for (const auto& atom : mu.atoms)
      atoms.push_back({{"position", atom.position}, {"weight", atom.weight}});
    result["atoms"] = atoms;
    const int checked = std::min<int>(int(p.moments.size()), 2 * N - 1);
    const ResidualReport rep = verify_measure(
        mu, MomentSequence(p.moments.begin(), p.moments.begin() + checked));
    result["residuals"] = rep.per_moment;
    result["max_residual"] = rep.max_residual;
    emit(result, output);
    return kOk;
  } catch (const NotPositiveDefinite& e) {
    result["error"] = e.what();
    result["suggested_order"] = max_feasible_order(p.moments, p.tol);
    emit(result, output);
    return kOrderInfeasible;
  } catch (const DegenerateProblem& e) {
    result["error"] = e.what();
    result["suggested_order"] = e.suggested_order;
    emit(result, output);
    return kOrderInfeasible;
  } catch (const ResidualTooLarge& e) {
    result["error"] = e.what();
    result["max_residual"] = e.max_residual;
    emit(result, output);
    return kResidualFailure;
  }
}

int run_jacobi(const ProblemFile& p, int order, const std::string& output) {
  const int N = order > 0 ? order : (p.order > 0 ? p.order : int(p.moments.size() / 2));
  if (N < 1) throw InputError("order must be >= 1");
  json result = result_header(p.digest, p.tol);
  result["order"] = N;
  try {
    const JacobiMatrix J = recover_jacobi(p.moments, N, p.tol);
    result["a"] = J.a;
    result["b"] = J.b;
    // re-simulate and report how well the dynamics reproduce the input
    const int T = 2 * N - 1;
    const ResponseVector sim = response_vector(J, T);
    const ResponseVector ref = moments_to_response(p.moments, T);
    double mismatch = 0.0;
    for (int i = 0; i < T; ++i) mismatch = std::max(mismatch, std::abs(sim[i] - ref[i]));
    result["response_mismatch"] = mismatch;
    emit(result, output);
    return kOk;
  } catch (const NotPositiveDefinite& e) {
    result["error"] = e.what();
    result["suggested_order"] = max_feasible_order(p.moments, p.tol);
    emit(result, output);
    return kOrderInfeasible;
  } catch (const DegenerateProblem& e) {
    result["error"] = e.what();
    result["suggested_order"] = e.suggested_order;
    emit(result, output);
    return kOrderInfeasible;
  }
}

int run_response(const JacobiFile& jf, int steps, const std::string& output) {
  JacobiMatrix J(jf.a, jf.b);  // validation happens here
  const int T = steps > 0 ? steps : 2 * J.size() - 1;
  json result = result_header(jf.digest, kDefaultTol);
  const ResponseVector r = response_vector(J, T);
  result["steps"] = T;
  result["response"] = r;
  result["moments"] = response_to_moments(r, T);
  emit(result, output);
  return kOk;
}

int run_simulate(const JacobiFile& jf, int steps, const std::string& control_file,
                 const std::string& output) {
  JacobiMatrix J(jf.a, jf.b);
  const int T = steps > 0 ? steps : J.size();
  Control f{1.0};
  if (!control_file.empty()) {
    f.clear();
    const json j = json::parse(read_file(control_file));
    for (const auto& v : (j.is_array() ? j : j.at("control"))) f.push_back(v.get<double>());
  }
  json result = result_header(jf.digest, kDefaultTol);
  const Wavefield w = simulate_finite(J, f, T);
  result["steps"] = T;
  json trace = json::array(), final_state = json::array();
  for (int t = 1; t <= T; ++t) trace.push_back(w.at(1, t));
  for (int n = 1; n <= J.size(); ++n) final_state.push_back(w.at(n, T));
  result["boundary_trace"] = trace;
  result["final_state"] = final_state;
  emit(result, output);
  return kOk;
}

int run_determinacy(const ProblemFile& p, int steps, const std::string& output) {
  const int hard_cap = int((p.moments.size() + 1) / 2);
  const int T_max = steps > 0 ? std::min(steps, hard_cap) : hard_cap;
  if (T_max < 1) throw InputError("not enough moments for any horizon");
  json result = result_header(p.digest, p.tol);
  result["horizon"] = T_max;

  const HamburgerIndicators ham = hamburger_indicators(p.moments, T_max);
  auto trace_json = [](const IndicatorTrace& tr) {
    json t;
    t["values"] = tr.values;
    if (tr.truncated_at <= int(tr.values.size()) + 1 && tr.usable() > 0)
      t["truncated_at"] = tr.truncated_at;
    return t;
  };
  auto label = [](const IndicatorTrace& tr) -> std::string {
    if (tr.usable() < 2) return "inconclusive (trace too short)";
    const GrowthTrend g = fit_growth(tr);
    return g.bounded ? "bounded (indeterminate-type)" : "growing (determinate-type)";
  };
  result["hamburger"] = {
      {"gamma_form", trace_json(ham.gamma_form)},
      {"gamma_slope", fit_growth(ham.gamma_form).slope},
      {"omega_form", trace_json(ham.omega_form)},
      {"omega_slope", fit_growth(ham.omega_form).slope},
      {"trend", label(ham.gamma_form)},
  };

  // Stieltjes indicators make sense only if the sequence is Stieltjes-feasible
  const int feasible = max_feasible_order(p.moments, p.tol);
  if (feasible >= 1) {
    try {
      const StieltjesIndicators st = stieltjes_indicators(p.moments, std::min(T_max, feasible));
      result["stieltjes"] = {
          {"mass", trace_json(st.mass)},
          {"mass_slope", fit_growth(st.mass).slope},
          {"length", trace_json(st.length)},
          {"length_slope", fit_growth(st.length).slope},
          {"trend", label(st.mass)},
      };
    } catch (const Error&) {
      // not Stieltjes-representable; leave the section out
    }
  }

  // Hausdorff verdict over the orders the moments can support
  const int max_hausdorff = std::min(feasible, int(p.moments.size() / 2));
  if (max_hausdorff >= 1) {
    try {
      const HausdorffVerdict v = hausdorff_determinacy(p.moments, max_hausdorff, p.tol);
      json hv;
      hv["orders_checked"] = max_hausdorff;
      if (v.determinate) {
        hv["verdict"] = "determinate (Hausdorff)";
        hv["eigenvalue_sums"] = v.eigenvalue_sums;
      } else {
        hv["verdict"] = "not Hausdorff at order " + std::to_string(v.failing_order);
        hv["failing_order"] = v.failing_order;
      }
      result["hausdorff"] = hv;
    } catch (const Error&) {
    }
  }
  result["note"] = "finite-horizon indicator trends, not a determinacy proof";
  emit(result, output);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Hamburger/Stieltjes/Hausdorff moment problems via "
               "the boundary-control pipeline"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string moments_file, jacobi_file, control_file, output, batch_dir, format;
  int order = 0, steps = 0;
  double tol = kDefaultTol;
  bool tol_set = false;

  auto add_common = [&](CLI::App* cmd, bool needs_moments) {
    if (needs_moments) {
      cmd->add_option("--moments", moments_file, "moment sequence file (JSON or CSV)");
      cmd->add_option("--batch", batch_dir, "process every file in a directory");
    } else {
      cmd->add_option("--jacobi", jacobi_file, "Jacobi matrix file (JSON with a, b)")
          ->required();
    }
    cmd->add_option("--order", order, "truncation order N");
    cmd->add_option("--steps", steps, "time horizon T");
    cmd->add_option("--tol", tol, "pivot/residual tolerance")
        ->each([&](const std::string&) { tol_set = true; });
    cmd->add_option("--output", output, "result file (default: stdout)");
    cmd->add_option("--format", format, "input format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* c_classify = app.add_subcommand("classify", "per-order existence classification");
  CLI::App* c_solve = app.add_subcommand("solve", "construct an atomic measure");
  CLI::App* c_jacobi = app.add_subcommand("jacobi", "recover the Jacobi matrix");
  CLI::App* c_response = app.add_subcommand("response", "response vector of a Jacobi matrix");
  CLI::App* c_simulate = app.add_subcommand("simulate", "run the discrete-time dynamics");
  CLI::App* c_determinacy = app.add_subcommand("determinacy", "determinacy indicator traces");
  add_common(c_classify, true);
  add_common(c_solve, true);
  add_common(c_jacobi, true);
  add_common(c_response, false);
  add_common(c_simulate, false);
  add_common(c_determinacy, true);
  c_simulate->add_option("--control", control_file, "control sequence file (JSON array)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInputError;
  }

  auto dispatch_problem = [&](const fs::path& path, const std::string& out) -> int {
    ProblemFile p = load_problem(path, format);
    if (tol_set) p.tol = tol;
    if (c_classify->parsed()) return run_classify(p, out);
    if (c_solve->parsed()) return run_solve(p, order, out);
    if (c_jacobi->parsed()) return run_jacobi(p, order, out);
    if (c_determinacy->parsed()) return run_determinacy(p, steps, out);
    return kInputError;
  };

  try {
    if (c_response->parsed() || c_simulate->parsed()) {
      const JacobiFile jf = load_jacobi(jacobi_file);
      return c_response->parsed() ? run_response(jf, steps, output)
                                  : run_simulate(jf, steps, control_file, output);
    }
    if (!batch_dir.empty()) {
      std::vector<fs::path> inputs;
      for (const auto& entry : fs::directory_iterator(batch_dir)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension();
        if (ext == ".json" || ext == ".csv") inputs.push_back(entry.path());
      }
      std::sort(inputs.begin(), inputs.end());  // order-independent results
      if (inputs.empty()) throw InputError("batch directory has no .json/.csv files");
      const fs::path out_dir = output.empty() ? fs::path(batch_dir) : fs::path(output);
      fs::create_directories(out_dir);
      int worst = kOk;
      for (const auto& path : inputs) {
        const fs::path out = out_dir / (path.stem().string() + ".result.json");
        try {
          worst = std::max(worst, dispatch_problem(path, out.string()));
        } catch (const InputError& e) {
          std::cerr << "error: " << e.what() << "\n";
          worst = std::max(worst, int(kInputError));
        }
      }
      return worst;
    }
    if (moments_file.empty()) throw InputError("give --moments FILE or --batch DIR");
    return dispatch_problem(moments_file, output);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InsufficientMoments& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
