#include "frameopt/cli/reproduce.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "frameopt/cli/format.hpp"
#include "frameopt/errors.hpp"

namespace frameopt::cli {

namespace {

using Stored = std::span<const double>;

CVector real_vector(std::initializer_list<double> xs) {
  CVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v(k++) = x;
  return v;
}

std::string join_reals(Stored xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ", ";
    out += format_real(xs[k]);
  }
  return out;
}

double max_dev(const CVector& computed, Stored expected) {
  double dev = computed.size() == static_cast<Eigen::Index>(expected.size()) ? 0.0 : INFINITY;
  for (std::size_t k = 0; k < expected.size() && static_cast<Eigen::Index>(k) < computed.size(); ++k) {
    dev = std::max(dev, std::abs(computed(static_cast<Eigen::Index>(k)) - expected[k]));
  }
  return dev;
}

// Stored layout: M * N real entries, vector by vector.
Frame frame_from_stored(Stored xs, std::size_t m, std::size_t n) {
  CMatrix s(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      s(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = xs[i * n + k];
    }
  }
  return Frame(std::move(s));
}

Check scalar(std::string label, double expected, double tol,
             std::function<double(const Workspace&)> fn) {
  return Check{std::move(label), {expected}, tol, [fn](const Workspace& ws, Stored s) {
                 const double v = fn(ws);
                 return Evaluation{std::abs(v - s[0]), format_real(v)};
               }};
}

Check flag(std::string label, bool expected, std::function<bool(const Workspace&)> fn) {
  return Check{std::move(label), {expected ? 1.0 : 0.0}, kAlgebraicTol,
               [fn](const Workspace& ws, Stored s) {
                 const bool v = fn(ws);
                 return Evaluation{std::abs((v ? 1.0 : 0.0) - s[0]), v ? "true" : "false"};
               }};
}

Check vector_check(std::string label, std::vector<double> expected, double tol,
                   std::function<CVector(const Workspace&)> fn) {
  return Check{std::move(label), std::move(expected), tol, [fn](const Workspace& ws, Stored s) {
                 const CVector v = fn(ws);
                 return Evaluation{max_dev(v, s), format_vector(v)};
               }};
}

CVector weighted_canonical(const Workspace& ws) {
  const auto diag = weighted_diagonal(ws.frame(), ws.params().canonical, ws.weights());
  return Eigen::Map<const CVector>(diag.data(), static_cast<Eigen::Index>(diag.size()));
}

FrameDocument real_document(std::string name, std::size_t dim,
                            std::initializer_list<std::initializer_list<double>> vectors,
                            std::vector<double> weights) {
  FrameDocument doc;
  doc.name = std::move(name);
  doc.dim = dim;
  for (const auto& v : vectors) doc.vectors.push_back(real_vector(v));
  doc.weights = std::move(weights);
  return doc;
}

// ---------------------------------------------------------------------------
// C^4 frame with weights (7/5, 7/2, 1, 1, 1): reference values as listed.

ReproductionCase case_ex32() {
  ReproductionCase c;
  c.id = "ex3.2";
  c.title = "five-vector frame in C^4, weights (7/5, 7/2, 1, 1, 1)";
  c.document = real_document("ex3.2", 4,
                             {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 0, 0}, {0, 0, 1, 2}, {0, 0, 2, 1}},
                             {7.0 / 5.0, 7.0 / 2.0, 1.0, 1.0, 1.0});

  c.checks.push_back(vector_check(
      "frame operator S (row-major)",
      {3, 3, 0, 0, 3, 5, 0, 0, 0, 0, 5, 4, 0, 0, 4, 5}, kAlgebraicTol, [](const Workspace& ws) {
        const CMatrix s = frame_operator(ws.frame());
        return CVector(s.transpose().reshaped());
      }));

  const std::vector<std::vector<double>> canonical = {{5.0 / 6, -1.0 / 2, 0, 0},
                                                      {1.0 / 3, 0, 0, 0},
                                                      {1.0 / 6, 1.0 / 2, 0, 0},
                                                      {0, 0, -1.0 / 3, 2.0 / 3},
                                                      {0, 0, 2.0 / 3, -1.0 / 3}};
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    c.checks.push_back(vector_check(fmt::format("canonical dual S^-1 f_{}", i + 1), canonical[i],
                                    kAlgebraicTol, [i](const Workspace& ws) {
                                      return ws.params().canonical.vector(i);
                                    }));
  }
  c.checks.push_back(vector_check("q_i <f_i, S^-1 f_i>",
                                  {7.0 / 6, 7.0 / 6, 7.0 / 6, 1, 1}, kAlgebraicTol,
                                  weighted_canonical));
  c.checks.push_back(scalar("c", std::sqrt(7.0 / 6.0), kAlgebraicTol,
                            [](const Workspace& ws) { return ws.cert().partition.c; }));
  c.checks.push_back(scalar("c^2", 7.0 / 6.0, kAlgebraicTol,
                            [](const Workspace& ws) { return ws.cert().lower_bound; }));
  c.checks.push_back(Check{"Lambda_1 indicator", {1, 1, 1, 0, 0}, kAlgebraicTol,
                           [](const Workspace& ws, Stored s) {
                             const auto& l1 = ws.cert().partition.lambda1;
                             CVector ind = CVector::Zero(static_cast<Eigen::Index>(ws.frame().size()));
                             for (auto i : l1) ind(static_cast<Eigen::Index>(i)) = 1.0;
                             return Evaluation{max_dev(ind, s), "Lambda_1 = " + format_index_set(l1)};
                           }});
  c.checks.push_back(flag("{f_i : i in Lambda_2} linearly independent", true,
                          [](const Workspace& ws) { return ws.cert().lambda2_independent; }));
  c.checks.push_back(flag("H1 ∩ H2 = {0}", true,
                          [](const Workspace& ws) { return ws.cert().h1h2_trivial; }));

  const std::vector<double> listed_g = {5.0 / 6, -1.0 / 2, 1, 1, 1.0 / 3, 0, -2, -2, 1.0 / 6, 1.0 / 2,
                                        1, 1, 0, 0, -1.0 / 3, 2.0 / 3, 0, 0, 2.0 / 3, -1.0 / 3};
  c.checks.push_back(Check{"listed alternative G is a dual (max |Theta_G^* Theta_F - I|)", listed_g,
                           kAlgebraicTol, [](const Workspace& ws, Stored s) {
                             const Frame g = frame_from_stored(s, 5, 4);
                             const double dev = dual_deviation(ws.frame(), g);
                             return Evaluation{dev, fmt::format("{:.3e}", dev)};
                           }});
  std::vector<double> g_diag = listed_g;
  for (double v : {7.0 / 6, 7.0 / 6, 7.0 / 6, 1.0, 1.0}) g_diag.push_back(v);
  c.checks.push_back(Check{"listed alternative G: q_i <f_i, g_i>", g_diag, kAlgebraicTol,
                           [](const Workspace& ws, Stored s) {
                             const Frame g = frame_from_stored(s.first(20), 5, 4);
                             const auto d = weighted_diagonal(ws.frame(), g, ws.weights());
                             const CVector v = Eigen::Map<const CVector>(d.data(), 5);
                             return Evaluation{max_dev(v, s.subspan(20)), format_vector(v)};
                           }});
  c.checks.push_back(scalar("diagonal-preserving family complex dimension", 2, kAlgebraicTol,
                            [](const Workspace& ws) {
                              return static_cast<double>(
                                  diagonal_preserving_family(ws.params()).complex_dimension());
                            }));
  c.checks.push_back(Check{"diagonal-preserving members attain r_1^q", {7.0 / 6}, kAlgebraicTol,
                           [](const Workspace& ws, Stored s) {
                             const auto fam = diagonal_preserving_family(ws.params());
                             double dev = 0.0;
                             double last = 0.0;
                             for (Complex a : {Complex(1, 0), Complex(-2, 3), Complex(0.5, -1)}) {
                               std::vector<Complex> coeffs(fam.complex_dimension(), a);
                               if (!coeffs.empty()) coeffs.back() *= Complex(0, 1);
                               const Frame g = dual_from_params(ws.params(), fam.member(coeffs));
                               last = r1_error(ws.frame(), g, ws.weights());
                               dev = std::max(dev, std::abs(last - s[0]));
                             }
                             return Evaluation{dev, format_real(last)};
                           }});
  c.checks.push_back(scalar("optimal r_1^q over all duals", 7.0 / 6.0, kOptimizerCheckTol,
                            [](const Workspace& ws) { return ws.optimum().value; }));
  c.checks.push_back(scalar("certified lower bound", 7.0 / 6.0, kAlgebraicTol,
                            [](const Workspace& ws) { return ws.optimum().certified_lower_bound; }));
  return c;
}

// ---------------------------------------------------------------------------
// Tight frame in C^2 with bound 3, weights (3, 3, 3/2, 3/2).

FrameDocument tight_document(std::string name) {
  return real_document(std::move(name), 2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}},
                       {3.0, 3.0, 1.5, 1.5});
}

// The (-w, w, w, w) dual, stored entrywise as (re, im) pairs, column by column.
Check pattern_member(std::string label, Complex w) {
  const double t = 1.0 / 3;
  const std::vector<Complex> g = {t, -2.0 * w, 2.0 * w, t, t - w, t + w, t + w, -t + w};
  std::vector<double> stored;
  for (Complex z : g) {
    stored.push_back(z.real());
    stored.push_back(z.imag());
  }
  return Check{std::move(label), std::move(stored), kAlgebraicTol, [](const Workspace& ws, Stored s) {
                 CMatrix g(2, 4);
                 for (Eigen::Index i = 0; i < 4; ++i) {
                   for (Eigen::Index k = 0; k < 2; ++k) {
                     const auto at = static_cast<std::size_t>(4 * i + 2 * k);
                     g(k, i) = Complex(s[at], s[at + 1]);
                   }
                 }
                 const Frame gf(g);
                 const auto fam = equality_set_family(ws.params(), ws.weights());
                 if (!fam) return Evaluation{INFINITY, "equality family empty"};
                 const double res = family_membership_residual(ws.params(), *fam, gf);
                 double diag_dev = 0.0;
                 for (const auto& v : weighted_diagonal(ws.frame(), gf, ws.weights())) {
                   diag_dev = std::max(diag_dev, std::abs(v - 1.0));
                 }
                 return Evaluation{std::max(res, diag_dev),
                                   fmt::format("membership residual {:.2e}, max |q_i<f_i,g_i> - 1| {:.2e}",
                                               res, diag_dev)};
               }};
}

ReproductionCase case_ex33() {
  ReproductionCase c;
  c.id = "ex3.3";
  c.title = "tight frame in C^2 with bound 3, weights (3, 3, 3/2, 3/2)";
  c.document = tight_document("ex3.3");
  c.checks.push_back(vector_check("frame bounds (A, B)", {3, 3}, kAlgebraicTol, [](const Workspace& ws) {
    const auto b = frame_bounds(ws.frame());
    return real_vector({b.lower, b.upper});
  }));
  c.checks.push_back(flag("tight", true, [](const Workspace& ws) { return is_tight(ws.frame()); }));
  const std::vector<std::vector<double>> canonical = {
      {1.0 / 3, 0}, {0, 1.0 / 3}, {1.0 / 3, 1.0 / 3}, {1.0 / 3, -1.0 / 3}};
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    c.checks.push_back(vector_check(fmt::format("canonical dual S^-1 f_{}", i + 1), canonical[i],
                                    kAlgebraicTol, [i](const Workspace& ws) {
                                      return ws.params().canonical.vector(i);
                                    }));
  }
  c.checks.push_back(scalar("r_1^q(F, S^-1 F)", 1.0, kAlgebraicTol,
                            [](const Workspace& ws) { return ws.cert().canonical_value; }));
  c.checks.push_back(scalar("|Lambda_2|", 0.0, kAlgebraicTol, [](const Workspace& ws) {
    return static_cast<double>(ws.cert().partition.lambda2.size());
  }));
  c.checks.push_back(scalar("uniform lower bound (sum 1/q_i = N)", 1.0, kAlgebraicTol,
                            [](const Workspace& ws) { return ws.optimum().certified_lower_bound; }));
  c.checks.push_back(scalar("optimal r_1^q over all duals", 1.0, kOptimizerCheckTol,
                            [](const Workspace& ws) { return ws.optimum().value; }));
  c.checks.push_back(scalar("equality-set family complex dimension", 1.0, kAlgebraicTol,
                            [](const Workspace& ws) {
                              const auto fam = equality_set_family(ws.params(), ws.weights());
                              return fam ? static_cast<double>(fam->complex_dimension()) : -1.0;
                            }));
  c.checks.push_back(pattern_member("pattern dual at w = 0 is optimal and in the family", {0, 0}));
  c.checks.push_back(pattern_member("pattern dual at w = 1 is optimal and in the family", {1, 0}));
  c.checks.push_back(pattern_member("pattern dual at w = i is optimal and in the family", {0, 1}));
  return c;
}

ReproductionCase case_ex34() {
  ReproductionCase c;
  c.id = "ex3.4";
  c.title = "same tight frame: sqrt(q_i)||f_i|| constant, optimal dual not unique";
  c.document = tight_document("ex3.4");
  c.checks.push_back(vector_check("sqrt(q_i) ||f_i||",
                                  {std::sqrt(3.0), std::sqrt(3.0), std::sqrt(3.0), std::sqrt(3.0)},
                                  kAlgebraicTol, [](const Workspace& ws) {
                                    CVector v(4);
                                    for (std::size_t i = 0; i < 4; ++i) {
                                      v(static_cast<Eigen::Index>(i)) =
                                          std::sqrt(ws.weights()[i]) * ws.frame().vector(i).norm();
                                    }
                                    return v;
                                  }));
  c.checks.push_back(flag("sqrt(q_i) ||f_i|| constant", true,
                          [](const Workspace& ws) { return ws.cert().score_constant; }));
  c.checks.push_back(scalar("r_1^q(F, S^-1 F)", 1.0, kAlgebraicTol,
                            [](const Workspace& ws) { return ws.cert().canonical_value; }));
  c.checks.push_back(scalar("equality-set family complex dimension", 1.0, kAlgebraicTol,
                            [](const Workspace& ws) {
                              const auto fam = equality_set_family(ws.params(), ws.weights());
                              return fam ? static_cast<double>(fam->complex_dimension()) : -1.0;
                            }));
  c.checks.push_back(pattern_member("non-canonical optimal dual (w = 1) in the family", {1, 0}));
  c.checks.push_back(Check{"distance of the w = 1 optimal dual from the canonical dual", {std::sqrt(12.0)},
                           kAlgebraicTol, [](const Workspace& ws, Stored s) {
                             // corrections (0,-2), (2,0), (-1,1), (1,1): squared norm 12
                             CMatrix g = ws.params().canonical.synthesis();
                             g(1, 0) += -2.0;
                             g(0, 1) += 2.0;
                             g(0, 2) += -1.0;
                             g(1, 2) += 1.0;
                             g(0, 3) += 1.0;
                             g(1, 3) += 1.0;
                             const double dist = (g - ws.params().canonical.synthesis()).norm();
                             const double r = r1_error(ws.frame(), Frame(g), ws.weights());
                             return Evaluation{std::max(std::abs(dist - s[0]), std::abs(r - 1.0)),
                                               fmt::format("distance {}, r_1^q {}", format_real(dist),
                                                           format_real(r))};
                           }});
  return c;
}

}  // namespace

Workspace::Workspace(const FrameDocument& doc) : problem_(resolve(doc)) {}

const DualParametrization& Workspace::params() const {
  if (!params_) params_ = parametrize_duals(problem_.frame);
  return *params_;
}

const OptimalityCertificate& Workspace::cert() const {
  if (!cert_) cert_ = certificate(problem_.frame, problem_.weights);
  return *cert_;
}

const MinimaxResult& Workspace::optimum() const {
  if (!optimum_) optimum_ = minimize_r1(problem_.frame, problem_.weights, kOptimizerSolveTol);
  return *optimum_;
}

std::size_t ReproductionCase::constant_count() const {
  std::size_t n = 0;
  for (const auto& v : document.vectors) n += 2 * static_cast<std::size_t>(v.size());
  if (document.weights) n += document.weights->size();
  if (document.probabilities) n += document.probabilities->size();
  for (const auto& c : checks) n += c.stored.size();
  return n;
}

void ReproductionCase::perturb_constant(std::size_t k, double delta) {
  for (auto& v : document.vectors) {
    const auto n = 2 * static_cast<std::size_t>(v.size());
    if (k < n) {
      auto& z = v(static_cast<Eigen::Index>(k / 2));
      z += (k % 2 == 0) ? Complex(delta, 0) : Complex(0, delta);
      return;
    }
    k -= n;
  }
  for (auto* seq : {&document.weights, &document.probabilities}) {
    if (!*seq) continue;
    if (k < (*seq)->size()) {
      (**seq)[k] += delta;
      return;
    }
    k -= (*seq)->size();
  }
  for (auto& c : checks) {
    if (k < c.stored.size()) {
      c.stored[k] += delta;
      return;
    }
    k -= c.stored.size();
  }
  throw InvalidInput("perturb_constant: index out of range");
}

std::vector<CheckOutcome> ReproductionCase::run() const {
  std::vector<CheckOutcome> out;
  std::optional<Workspace> ws;
  std::string setup_error;
  try {
    ws.emplace(document);
  } catch (const std::exception& e) {
    setup_error = e.what();
  }
  for (const auto& c : checks) {
    CheckOutcome o;
    o.label = c.label;
    o.tol = c.tol;
    o.expected = join_reals(c.stored);
    if (!ws) {
      o.computed = "error: " + setup_error;
      o.deviation = INFINITY;
    } else {
      try {
        const auto e = c.evaluate(*ws, c.stored);
        o.deviation = e.deviation;
        o.computed = e.computed;
      } catch (const std::exception& e) {
        o.computed = std::string("error: ") + e.what();
        o.deviation = INFINITY;
      }
    }
    o.pass = o.deviation <= c.tol;
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<std::string> reproduction_ids() {
  return {"ex3.2", "ex3.3", "ex3.4"};
}

ReproductionCase reproduction_case(const std::string& id) {
  if (id == "ex3.2") return case_ex32();
  if (id == "ex3.3") return case_ex33();
  if (id == "ex3.4") return case_ex34();
  throw InvalidInput(fmt::format("unknown example id '{}' (expected ex3.2, ex3.3 or ex3.4)", id));
}

}  // namespace frameopt::cli
