#include "frameopt/cli/commands.hpp"

#include <cmath>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "frameopt/cli/format.hpp"
#include "frameopt/cli/reproduce.hpp"
#include "frameopt/erasure.hpp"
#include "frameopt/errors.hpp"
#include "frameopt/optimizer.hpp"

namespace frameopt::cli {

using nlohmann::json;

namespace {

json frame_json(const Frame& f) {
  json out = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(vector_json(f.vector(i)));
  return out;
}

json one_based(const std::vector<std::size_t>& idx) {
  json out = json::array();
  for (auto i : idx) out.push_back(i + 1);
  return out;
}

Complex complex_of(const json& j) {
  return {j[0].get<double>(), j[1].get<double>()};
}

CVector cvector_of(const json& j) {
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v(static_cast<Eigen::Index>(k)) = complex_of(j[k]);
  return v;
}

std::string reals_line(const json& arr) {
  std::string out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    if (k) out += ", ";
    out += arr[k].is_array() ? format_complex(complex_of(arr[k])) : format_real(arr[k].get<double>());
  }
  return out;
}

std::string yes_no(const json& b) {
  return b.get<bool>() ? "yes" : "no";
}

// Scaled so the largest-modulus entry becomes 1, which removes the
// arbitrary phase of an SVD basis vector.
json normalized_corrections(const DualParametrization& p, const CMatrix& a) {
  CMatrix u = corrections(p, a);
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  if (u.size() > 0 && u.cwiseAbs().maxCoeff(&r, &c) > 0.0) u /= u(r, c);
  json out = json::array();
  for (Eigen::Index i = 0; i < u.cols(); ++i) out.push_back(vector_json(u.col(i)));
  return out;
}

void print_vectors(std::ostream& out, const std::string& prefix, const json& vectors) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    fmt::print(out, "  {}_{} = {}\n", prefix, i + 1, format_vector(cvector_of(vectors[i])));
  }
}

// ---------------------------------------------------------------------------
// text renderers

void print_analyze(std::ostream& out, const json& r) {
  fmt::print(out, "frame: {} vectors in C^{}\n", r["size"].get<std::size_t>(), r["dim"].get<std::size_t>());
  fmt::print(out, "frame bounds: A = {}, B = {} ({})\n", format_real(r["frame_bounds"]["lower"]),
             format_real(r["frame_bounds"]["upper"]), r["tight"].get<bool>() ? "tight" : "not tight");
  fmt::print(out, "frame operator S:\n");
  for (const auto& row : r["frame_operator"]) fmt::print(out, "  [{}]\n", reals_line(row));
  fmt::print(out, "canonical dual S^-1 F:\n");
  print_vectors(out, "g", r["canonical_dual"]);
  const auto& wr = r["weight_report"];
  fmt::print(out, "weights q: {}\n", reals_line(r["weights"]));
  fmt::print(out, "  q_i >= 1: {}   sum 1/q_i - N = {:.3e}\n", yes_no(wr["all_at_least_one"]),
             wr["sum_residual"].get<double>());
  fmt::print(out, "q_i <f_i, S^-1 f_i>: {}\n", reals_line(r["weighted_diagonal"]));
  fmt::print(out, "r_1^q(canonical dual) = {}\n", format_real(r["canonical_value"]));
  const auto& part = r["partition"];
  fmt::print(out, "c = {}, c^2 = {}\n", format_real(part["c"]), format_real(part["c_squared"]));
  const auto set_text = [](const json& idx) {
    std::string s = "{";
    for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? ", " : "") + std::to_string(idx[k].get<std::size_t>());
    return s + "}";
  };
  fmt::print(out, "Lambda_1 = {}, Lambda_2 = {}\n", set_text(part["lambda1"]), set_text(part["lambda2"]));
  const auto& cert = r["certificate"];
  fmt::print(out, "H1 ∩ H2 = {{0}}: {}\n", yes_no(cert["h1h2_trivial"]));
  fmt::print(out, "Lambda_2 empty: {}   Lambda_2 vectors independent: {}\n", yes_no(cert["lambda2_empty"]),
             yes_no(cert["lambda2_independent"]));
  fmt::print(out, "sqrt(q_i)||f_i|| constant: {}\n", yes_no(cert["score_constant"]));
  fmt::print(out, "dual degrees of freedom: {}\n", r["dof"].get<std::size_t>());
  fmt::print(out, "verdict: {}\n", r["verdict"].get<std::string>());
}

void print_optimal(std::ostream& out, const json& r) {
  fmt::print(out, "optimal r_1^q = {} ({:.15g})\n", format_real(r["value"]), r["value"].get<double>());
  fmt::print(out, "certified lower bound = {} ({})\n", format_real(r["certified_lower_bound"]),
             r["lower_bound_respected"].get<bool>() ? "respected" : "VIOLATED");
  fmt::print(out, "canonical dual value = {}\n", format_real(r["canonical_value"]));
  fmt::print(out, "converged: {} after {} projection sweeps\n", yes_no(r["converged"]),
             r["iterations"].get<std::size_t>());
  fmt::print(out, "minimizing dual:\n");
  print_vectors(out, "g", r["minimizer_dual"]);
}

void print_family(std::ostream& out, const json& r) {
  fmt::print(out, "family: {}\n", r["kind"].get<std::string>());
  if (!r["feasible"].get<bool>()) {
    fmt::print(out, "{}\n", r["message"].get<std::string>());
    return;
  }
  fmt::print(out, "complex dimension: {}\n", r["complex_dimension"].get<std::size_t>());
  fmt::print(out, "particular member:\n");
  print_vectors(out, "g", r["particular_dual"]);
  const auto& basis = r["basis_corrections"];
  for (std::size_t k = 0; k < basis.size(); ++k) {
    fmt::print(out, "basis correction {} (u_1, ..., u_M):\n", k + 1);
    print_vectors(out, "u", basis[k]);
  }
  fmt::print(out, "{}\n", r["message"].get<std::string>());
}

void print_weights(std::ostream& out, const json& r) {
  fmt::print(out, "normalized probabilities: {}\n", reals_line(r["probabilities"]));
  fmt::print(out, "weights q: {}\n", reals_line(r["weights"]));
  const auto& wr = r["report"];
  fmt::print(out, "q_i >= 1: {}\n", yes_no(wr["all_at_least_one"]));
  fmt::print(out, "sum 1/q_i = {} (N = {}, residual {:.3e})\n", format_real(wr["reciprocal_sum"]),
             r["dim"].get<std::size_t>(), wr["sum_residual"].get<double>());
}

void print_reproduce(std::ostream& out, const json& r) {
  fmt::print(out, "reproduce {}: {}\n", r["id"].get<std::string>(), r["title"].get<std::string>());
  for (const auto& c : r["checks"]) {
    fmt::print(out, "  [{}] {}\n", c["pass"].get<bool>() ? "PASS" : "FAIL", c["label"].get<std::string>());
    fmt::print(out, "         computed: {}\n", c["computed"].get<std::string>());
    fmt::print(out, "         expected: {}  (deviation {:.2e}, tol {:.0e})\n", c["expected"].get<std::string>(),
               c["deviation"].is_null() ? INFINITY : c["deviation"].get<double>(), c["tol"].get<double>());
  }
  fmt::print(out, "{}: {}/{} checks passed -> {}\n", r["id"].get<std::string>(), r["passed"].get<std::size_t>(),
             r["checks"].size(), r["pass"].get<bool>() ? "PASS" : "FAIL");
}

void emit(std::ostream& out, const json& r, bool as_json, void (*text)(std::ostream&, const json&)) {
  if (as_json) {
    out << r.dump(2) << '\n';
  } else {
    text(out, r);
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// report builders

json analyze_report(const Problem& problem) {
  const Frame& f = problem.frame;
  const WeightSeq& q = problem.weights;
  const auto bounds = frame_bounds(f);
  const Frame canonical = canonical_dual(f);
  const auto cert = certificate(f, q);
  const auto wr = validate_weights(q, f.dim());
  const std::size_t dof = (f.size() - f.dim()) * f.dim();

  json r;
  r["dim"] = f.dim();
  r["size"] = f.size();
  r["frame_bounds"] = {{"lower", bounds.lower}, {"upper", bounds.upper}};
  r["tight"] = cert.tight;
  r["frame_operator"] = matrix_json(frame_operator(f));
  r["canonical_dual"] = frame_json(canonical);
  r["weights"] = json(std::vector<double>(q.values().begin(), q.values().end()));
  r["weight_report"] = {{"all_at_least_one", wr.all_at_least_one},
                        {"sum_matches_dim", wr.sum_matches_dim},
                        {"sum_residual", wr.sum_residual}};
  json diag = json::array();
  for (const auto& v : weighted_diagonal(f, canonical, q)) diag.push_back(complex_json(v));
  r["weighted_diagonal"] = diag;
  r["canonical_value"] = cert.canonical_value;
  r["partition"] = {{"c", cert.partition.c},
                    {"c_squared", cert.lower_bound},
                    {"lambda1", one_based(cert.partition.lambda1)},
                    {"lambda2", one_based(cert.partition.lambda2)},
                    {"scores", cert.partition.scores}};
  r["certificate"] = {{"h1h2_trivial", cert.h1h2_trivial},
                      {"lambda2_independent", cert.lambda2_independent},
                      {"lambda2_empty", cert.lambda2_empty},
                      {"tight", cert.tight},
                      {"score_constant", cert.score_constant},
                      {"lower_bound", cert.lower_bound},
                      {"canonical_value", cert.canonical_value},
                      {"canonical_optimal", cert.canonical_optimal()}};
  r["dof"] = dof;

  std::string verdict;
  if (dof == 0) {
    verdict = "dual is unique (basis)";
  } else if (cert.canonical_optimal()) {
    verdict = fmt::format(
        "canonical dual optimal (H1 ∩ H2 = {{0}} certificate), optimal value c^2 = {}; uniqueness NOT implied",
        format_real(cert.lower_bound));
  } else if (wr.sum_matches_dim && std::abs(cert.canonical_value - 1.0) <= 1e-9) {
    verdict = "canonical dual optimal (attains the uniform lower bound 1); uniqueness NOT implied";
  } else {
    verdict = "certificate inapplicable (H1 ∩ H2 != {0}); run `optimal` for the true value";
  }
  r["verdict"] = verdict;
  return r;
}

json optimal_report(const Problem& problem, double tol, std::size_t budget) {
  const auto res = minimize_r1(problem.frame, problem.weights, tol, budget);
  const auto p = parametrize_duals(problem.frame);
  const Frame g = dual_from_params(p, res.minimizer);
  const auto check = verify_lower_bound(problem.frame, problem.weights, res.value);
  json r;
  r["value"] = res.value;
  r["converged"] = res.converged;
  r["iterations"] = res.iterations;
  r["certified_lower_bound"] = res.certified_lower_bound;
  r["lower_bound_respected"] = check.respected;
  r["canonical_value"] = r1_error(problem.frame, p.canonical, problem.weights);
  r["minimizer_params"] = matrix_json(res.minimizer);
  r["minimizer_dual"] = frame_json(g);
  return r;
}

json family_report(const Problem& problem, FamilyKind mode) {
  const auto p = parametrize_duals(problem.frame);
  json r;
  r["kind"] = mode == FamilyKind::kDiagonalPreserving ? "diagonal-preserving" : "equality-set";
  std::optional<AffineDualFamily> fam;
  if (mode == FamilyKind::kDiagonalPreserving) {
    fam = diagonal_preserving_family(p);
  } else {
    fam = equality_set_family(p, problem.weights);
  }
  r["feasible"] = fam.has_value();
  if (!fam) {
    r["complex_dimension"] = 0;
    r["message"] = "optimal value exceeds 1; equality family empty";
    return r;
  }
  r["complex_dimension"] = fam->complex_dimension();
  r["particular_dual"] = frame_json(dual_from_params(p, fam->particular));
  json basis = json::array();
  for (const auto& b : fam->basis) basis.push_back(normalized_corrections(p, b));
  r["basis_corrections"] = basis;
  const double value = r1_error(problem.frame, dual_from_params(p, fam->particular), problem.weights);
  r["member_value"] = value;
  if (fam->complex_dimension() == 0) {
    r["message"] = fmt::format("{} is the unique member (r_1^q = {})",
                               fam->particular.norm() <= 1e-12 ? "canonical dual" : "the particular dual",
                               format_real(value));
  } else {
    r["message"] = fmt::format("every member attains r_1^q = {}", format_real(value));
  }
  return r;
}

json weights_report(const std::vector<double>& probs, std::size_t dim) {
  const ProbSeq p(probs);
  const WeightSeq q = weights_from_probabilities(p, dim);
  const auto wr = validate_weights(q, dim);
  const ProbSeq pn = p.normalized();
  json r;
  r["dim"] = dim;
  r["probabilities"] = json(std::vector<double>(pn.values().begin(), pn.values().end()));
  r["weights"] = json(std::vector<double>(q.values().begin(), q.values().end()));
  r["report"] = {{"all_at_least_one", wr.all_at_least_one},
                 {"sum_matches_dim", wr.sum_matches_dim},
                 {"reciprocal_sum", q.reciprocal_sum()},
                 {"sum_residual", wr.sum_residual}};
  return r;
}

json reproduce_report(const std::string& id) {
  const auto rc = reproduction_case(id);
  json r;
  r["id"] = rc.id;
  r["title"] = rc.title;
  r["checks"] = json::array();
  std::size_t passed = 0;
  for (const auto& o : rc.run()) {
    passed += o.pass ? 1 : 0;
    r["checks"].push_back({{"label", o.label},
                           {"pass", o.pass},
                           {"deviation", std::isfinite(o.deviation) ? json(o.deviation) : json(nullptr)},
                           {"tol", o.tol},
                           {"computed", o.computed},
                           {"expected", o.expected}});
  }
  r["passed"] = passed;
  r["pass"] = passed == r["checks"].size();
  return r;
}

// ---------------------------------------------------------------------------

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"frameopt: optimal dual frames under probabilistic 1-erasure"};
  app.require_subcommand(1);

  bool as_json = false;
  std::string path;
  double tol = kDefaultMinimaxTol;
  std::size_t budget = kDefaultMinimaxBudget;
  std::string mode;
  std::vector<double> probs;
  std::size_t dim = 0;
  std::string example;

  auto* analyze = app.add_subcommand("analyze", "frame bounds, canonical dual, Lambda partition, certificate");
  analyze->add_option("path", path, "FrameDocument JSON file")->required();
  analyze->add_flag("--json", as_json, "machine-readable output");

  auto* optimal = app.add_subcommand("optimal", "minimize r_1^q over all duals");
  optimal->add_option("path", path, "FrameDocument JSON file")->required();
  optimal->add_option("--tol", tol, "bisection tolerance on the optimal value")->check(CLI::PositiveNumber);
  optimal->add_option("--budget", budget, "maximum number of projection sweeps");
  optimal->add_flag("--json", as_json, "machine-readable output");

  auto* family = app.add_subcommand("family", "characterize an affine family of optimal duals");
  family->add_option("path", path, "FrameDocument JSON file")->required();
  family->add_option("--mode", mode, "diagonal | equality")
      ->required()
      ->check(CLI::IsMember({"diagonal", "equality"}));
  family->add_flag("--json", as_json, "machine-readable output");

  auto* weights = app.add_subcommand("weights", "weight sequence from erasure probabilities");
  weights->add_option("--probs", probs, "p_1,...,p_M (relative scale)")->required()->delimiter(',');
  weights->add_option("--dim", dim, "space dimension N")->required();
  weights->add_flag("--json", as_json, "machine-readable output");

  auto* reproduce = app.add_subcommand("reproduce", "re-derive and check the stored reference values of an example");
  reproduce->add_option("example", example, "ex3.2 | ex3.3 | ex3.4")->required();
  reproduce->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return static_cast<int>(ExitCode::kInvalidInput);
  }

  try {
    if (*analyze) {
      emit(out, analyze_report(resolve(load_document(path))), as_json, print_analyze);
    } else if (*optimal) {
      const json r = optimal_report(resolve(load_document(path)), tol, budget);
      emit(out, r, as_json, print_optimal);
      if (!r["converged"].get<bool>()) {
        fmt::print(err, "error: optimizer budget exhausted before the bracket closed; partial result above\n");
        return static_cast<int>(ExitCode::kNumericalFailure);
      }
    } else if (*family) {
      const auto kind = mode == "diagonal" ? FamilyKind::kDiagonalPreserving : FamilyKind::kEqualitySet;
      emit(out, family_report(resolve(load_document(path)), kind), as_json, print_family);
    } else if (*weights) {
      emit(out, weights_report(probs, dim), as_json, print_weights);
    } else if (*reproduce) {
      const json r = reproduce_report(example);
      emit(out, r, as_json, print_reproduce);
      if (!r["pass"].get<bool>()) return static_cast<int>(ExitCode::kNumericalFailure);
    }
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return static_cast<int>(ExitCode::kNumericalFailure);
  }
  return static_cast<int>(ExitCode::kOk);
}

}  // namespace frameopt::cli
