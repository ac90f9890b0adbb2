#pragma once

// Property harness for the set-function claims: non-additivity and
// non-monotonicity of mu_first, monotonicity and sub-additivity of
// mu_second, additivity on orthogonal subspaces, and the classical
// (orthogonal-state) limit. Every randomized check is reproducible from its
// generator seed.
//
// Asserting checks fail the suite when violated. The orthogonal-additivity
// check for p_rho is a claim evaluator: it reports confirmations and
// violations and never fails the suite.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qmeasure/measures.hpp"
#include "qmeasure/serialize.hpp"
#include "qmeasure/states.hpp"

namespace qmeasure {

struct InstanceGenerator {
  int dim_min = 2;
  int dim_max = 8;
  int size_min = 1;
  int size_max = 6;
  std::uint64_t seed = 0;
  int count = 100;

  void validate() const {
    if (dim_min < 1 || dim_max < dim_min || dim_max > 16)
      throw std::invalid_argument("InstanceGenerator: dim range must satisfy 1 <= min <= max <= 16");
    if (size_min < 1 || size_max < size_min || size_max > 32)
      throw std::invalid_argument("InstanceGenerator: size range must satisfy 1 <= min <= max <= 32");
    if (count < 0) throw std::invalid_argument("InstanceGenerator: count must be >= 0");
  }
};

struct PropertyReport {
  std::string property_name;
  int trials = 0;
  int violations = 0;
  double worst_violation = 0.0;
  std::optional<Json> witness;
  double tolerance_used = 0.0;
  bool asserting = true;
  bool passed = true;
  Json details = Json::object();
};

inline Json to_json(const PropertyReport& r) {
  return Json{{"property_name", r.property_name},
              {"trials", r.trials},
              {"violations", r.violations},
              {"worst_violation", r.worst_violation},
              {"witness", r.witness ? *r.witness : Json(nullptr)},
              {"tolerance_used", r.tolerance_used},
              {"asserting", r.asserting},
              {"passed", r.passed},
              {"details", r.details}};
}

namespace detail {

inline PropertyReport empty_report(std::string name, double tolerance, bool asserting = true) {
  PropertyReport r;
  r.property_name = std::move(name);
  r.tolerance_used = tolerance;
  r.asserting = asserting;
  return r;
}

inline std::vector<PureState> haar_states(std::size_t dim, int n, RandomSource& rng) {
  std::vector<PureState> v;
  for (int k = 0; k < n; ++k) v.push_back(haar_sample(dim, rng));
  return v;
}

inline PureState plus_state() { return PureState::normalized({1.0, 1.0}); }

inline StateSet qubit_pair() { return StateSet({PureState::basis(2, 0), PureState::basis(2, 1)}); }

inline StateSet qubit_triple() { return qubit_pair().with(plus_state()); }

/// Random full-rank-ish mixed state: Dirichlet mixture of dim + 1 Haar rays.
inline DensityMatrix random_mixed_state(std::size_t dim, RandomSource& rng) {
  const StateSet s(haar_states(dim, static_cast<int>(dim) + 1, rng));
  return convex_combination(s, SimplexWeights::random(s.size(), rng));
}

/// Density matrix supported on span(frame) with a random spectrum.
inline Matrix random_block(const std::vector<PureState>& frame, double mass, RandomSource& rng) {
  const std::size_t d = frame.front().dim();
  Matrix m(d);
  if (mass == 0.0) return m;
  // random state on the block: mixture of Haar rays inside span(frame)
  const Subspace block(frame);
  const auto w = SimplexWeights::random(frame.size() + 1, rng);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto psi = haar_sample_in(block, rng);
    m += Matrix::outer(psi.amplitudes(), psi.amplitudes()) * Complex(mass * w[k]);
  }
  return m;
}

inline std::vector<PureState> slice(const std::vector<PureState>& v, std::size_t lo, std::size_t hi) {
  return {v.begin() + static_cast<std::ptrdiff_t>(lo), v.begin() + static_cast<std::ptrdiff_t>(hi)};
}

}  // namespace detail

/// Random pairs {psi, phi} with overlap p >= 0.01 must satisfy
/// mu({psi, phi}) <= 2 - delta(p), delta(p) = 2 - 2^two_state_entropy(p) > 0, where delta
/// comes from the closed form and mu from the eigenvalue route.
inline PropertyReport check_nonadditivity_mu_first(const InstanceGenerator& gen) {
  gen.validate();
  constexpr double kOverlapThreshold = 0.01;
  auto r = detail::empty_report("nonadditivity_mu_first", 1e-9);
  if (gen.count == 0) return r;
  RandomSource rng(gen.seed);

  int excluded = 0;
  for (int t = 0; t < gen.count; ++t) {
    const auto dim = static_cast<std::size_t>(rng.uniform_int(std::max(2, gen.dim_min), std::max(2, gen.dim_max)));
    const auto psi = haar_sample(dim, rng);
    const auto phi = haar_sample(dim, rng);
    ++r.trials;
    const double p = overlap_probability(psi, phi);
    if (p < kOverlapThreshold) {
      ++excluded;
      continue;
    }
    const StateSet pair({psi, phi});
    const double mu = mu_first(pair).value;
    const double delta = 2.0 - std::exp2(two_state_entropy(p));
    const double excess = mu - (2.0 - delta);
    if (excess > r.tolerance_used || !(delta > r.tolerance_used)) {
      ++r.violations;
      if (!r.witness || excess > r.worst_violation)
        r.witness = Json{{"pair", to_json(pair)}, {"overlap", p}, {"mu", mu}, {"delta", delta}};
      r.worst_violation = std::max(r.worst_violation, std::max(excess, 0.0));
    }
  }

  const StateSet half({PureState::basis(2, 0), detail::plus_state()});
  r.details = Json{{"excluded_below_overlap", excluded},
                   {"overlap_threshold", kOverlapThreshold},
                   {"overlap_half_pair_mu", mu_first(half).value},
                   {"orthogonal_pair_mu", mu_first(detail::qubit_pair()).value}};
  r.passed = r.violations == 0;
  return r;
}

/// Certifies the witness {|0>,|1>} subset of {|0>,|1>,|+>} with
/// mu_first 2 > 1.88988, then searches random extended triples for more.
/// Passes when the analytic witness holds and, if any trials ran, at least
/// one random witness is found.
inline PropertyReport check_nonmonotonicity_mu_first(const InstanceGenerator& gen) {
  gen.validate();
  auto r = detail::empty_report("nonmonotonicity_mu_first", 1e-9);
  if (gen.count == 0) return r;
  RandomSource rng(gen.seed);

  auto witness_json = [](const StateSet& sub, const StateSet& super, double mu_sub, double mu_super) {
    return Json{{"subset", to_json(sub)},
                {"superset", to_json(super)},
                {"mu_subset", mu_sub},
                {"mu_superset", mu_super},
                {"gap", mu_sub - mu_super}};
  };

  const auto sub = detail::qubit_pair();
  const auto super = detail::qubit_triple();
  const double mu_sub = mu_first(sub).value;
  const double mu_super = mu_first(super).value;
  const bool analytic_ok = mu_sub - mu_super > r.tolerance_used;

  for (int t = 0; t < gen.count; ++t) {
    const auto dim = static_cast<std::size_t>(rng.uniform_int(gen.dim_min, gen.dim_max));
    const int n = rng.uniform_int(gen.size_min, std::max(gen.size_min, gen.size_max - 1));
    const StateSet u(detail::haar_states(dim, n, rng));
    const auto extended = u.with(haar_sample(dim, rng));
    ++r.trials;
    const double a = mu_first(u).value;
    const double b = mu_first(extended).value;
    if (a - b > r.tolerance_used) {
      ++r.violations;
      if (a - b > r.worst_violation) {
        r.worst_violation = a - b;
        r.witness = witness_json(u, extended, a, b);
      }
    }
  }

  r.details = Json{{"analytic_witness", witness_json(sub, super, mu_sub, mu_super)},
                   {"analytic_witness_confirmed", analytic_ok},
                   {"random_witnesses_found", r.violations}};
  r.passed = analytic_ok && r.violations > 0;
  return r;
}

/// For U subset U' (U' extends U with fresh Haar rays):
/// mu_second(U) <= mu_second(U') + gap(U) + gap(U'). The combined gap must
/// itself stay within tolerance_used, otherwise the instance counts as a
/// violation (uncertified).
inline PropertyReport check_monotonicity_mu_second(const InstanceGenerator& gen, const OptimizerSettings& opts = {}) {
  gen.validate();
  auto r = detail::empty_report("monotonicity_mu_second", 1e-4);
  if (gen.count == 0) return r;
  RandomSource rng(gen.seed);

  int uncertified = 0;
  for (int t = 0; t < gen.count; ++t) {
    const auto dim = static_cast<std::size_t>(rng.uniform_int(gen.dim_min, gen.dim_max));
    const int n_super = rng.uniform_int(std::max(2, gen.size_min), std::max(2, gen.size_max));
    const int n_sub = rng.uniform_int(1, n_super - 1);
    const auto rays = detail::haar_states(dim, n_super, rng);
    const StateSet u(detail::slice(rays, 0, static_cast<std::size_t>(n_sub)));
    const StateSet extended(rays);
    ++r.trials;
    const auto a = mu_second(u, opts);
    const auto b = mu_second(extended, opts);
    const double slack = a.gap_bound + b.gap_bound;
    const double excess = a.value - b.value - slack;
    const bool certified = slack <= r.tolerance_used && a.converged && b.converged;
    if (!certified) ++uncertified;
    if (excess > 1e-12 || !certified) {
      ++r.violations;
      r.worst_violation = std::max(r.worst_violation, std::max(excess, 0.0));
      if (!r.witness)
        r.witness = Json{{"subset", to_json(u)}, {"superset", to_json(extended)}, {"mu_subset", a.value},
                         {"mu_superset", b.value}, {"combined_gap", slack}};
    }
  }

  const auto pair = mu_second(detail::qubit_pair(), opts).value;
  const auto triple = mu_second(detail::qubit_triple(), opts).value;
  r.details = Json{{"uncertified", uncertified}, {"qubit_pair_mu", pair}, {"qubit_triple_mu", triple}};
  r.passed = r.violations == 0;
  return r;
}

/// Disjoint ray sets A, B: mu_second(A u B) <= mu_second(A) + mu_second(B)
/// + gap(A) + gap(B).
inline PropertyReport check_subadditivity_mu_second(const InstanceGenerator& gen, const OptimizerSettings& opts = {}) {
  gen.validate();
  auto r = detail::empty_report("subadditivity_mu_second", 1e-4);
  if (gen.count == 0) return r;
  RandomSource rng(gen.seed);

  int uncertified = 0;
  for (int t = 0; t < gen.count; ++t) {
    const auto dim = static_cast<std::size_t>(rng.uniform_int(gen.dim_min, gen.dim_max));
    const int total = rng.uniform_int(std::max(2, gen.size_min), std::max(2, gen.size_max));
    const int n_a = rng.uniform_int(1, total - 1);
    const auto rays = detail::haar_states(dim, total, rng);
    const StateSet a(detail::slice(rays, 0, static_cast<std::size_t>(n_a)));
    const StateSet b(detail::slice(rays, static_cast<std::size_t>(n_a), rays.size()));
    const StateSet both(rays);
    ++r.trials;
    const auto ma = mu_second(a, opts);
    const auto mb = mu_second(b, opts);
    const auto mab = mu_second(both, opts);
    const double slack = ma.gap_bound + mb.gap_bound;
    const double excess = mab.value - ma.value - mb.value - slack;
    const bool certified = slack + mab.gap_bound <= r.tolerance_used && ma.converged && mb.converged && mab.converged;
    if (!certified) ++uncertified;
    if (excess > 1e-12 || !certified) {
      ++r.violations;
      r.worst_violation = std::max(r.worst_violation, std::max(excess, 0.0));
      if (!r.witness)
        r.witness = Json{{"a", to_json(a)}, {"b", to_json(b)}, {"mu_a", ma.value}, {"mu_b", mb.value},
                         {"mu_union", mab.value}};
    }
  }

  const StateSet zero({PureState::basis(2, 0)});
  const StateSet plus({detail::plus_state()});
  r.details = Json{{"uncertified", uncertified},
                   {"zero_plus_union_mu", mu_second(zero.united(plus), opts).value},
                   {"orthogonal_singletons_union_mu", mu_second(detail::qubit_pair(), opts).value}};
  r.passed = r.violations == 0;
  return r;
}

/// Orthogonal V, W: mu_second over spanning ray sets of V, W and V (+) W must
/// give dim V + dim W = mu(V) + mu(W). Each subspace is represented by a
/// Haar-rotated orthonormal basis plus extra Haar rays inside it, so the
/// optimizer has to find the maximally mixed state itself.
inline PropertyReport check_orthogonal_additivity_mu(const InstanceGenerator& gen, const OptimizerSettings& opts = {}) {
  gen.validate();
  auto r = detail::empty_report("orthogonal_additivity_mu", 1e-4);
  if (gen.count == 0) return r;
  RandomSource rng(gen.seed);

  auto spanning_set = [&](const std::vector<PureState>& frame) {
    const Subspace space(frame);
    std::vector<PureState> rays = haar_orthonormal_set(frame.size(), frame.size(), rng);
    // rotate the coordinate frame into the subspace
    std::vector<PureState> states;
    for (const auto& c : rays) {
      std::vector<Complex> a(frame.front().dim());
      for (std::size_t k = 0; k < frame.size(); ++k)
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += c[k] * frame[k][i];
      states.push_back(PureState::normalized(std::move(a)));
    }
    if (frame.size() >= 2)
      for (int extra = 0; extra < 2; ++extra) states.push_back(haar_sample_in(space, rng));
    return StateSet(std::move(states));
  };

  for (int t = 0; t < gen.count; ++t) {
    const auto dim = static_cast<std::size_t>(rng.uniform_int(std::max(2, gen.dim_min), std::max(2, gen.dim_max)));
    const auto kv = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(dim) - 1));
    const auto kw = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(dim - kv)));
    const auto frame = haar_orthonormal_set(dim, kv + kw, rng);
    const auto fv = detail::slice(frame, 0, kv);
    const auto fw = detail::slice(frame, kv, kv + kw);
    const Subspace v(fv), w(fw);
    const auto sv = spanning_set(fv);
    const auto sw = spanning_set(fw);
    const auto svw = sv.united(sw);
    ++r.trials;

    const auto mv = mu_second(sv, opts);
    const auto mw = mu_second(sw, opts);
    const auto mvw = mu_second(svw, opts);
    const double expected = mu_subspace(v.direct_sum(w)).value;
    const double slack = mv.gap_bound + mw.gap_bound + mvw.gap_bound;
    const double err = std::max(std::abs(mvw.value - mv.value - mw.value), std::abs(mvw.value - expected));
    if (err > r.tolerance_used || slack > r.tolerance_used) {
      ++r.violations;
      r.worst_violation = std::max(r.worst_violation, err);
      if (!r.witness)
        r.witness = Json{{"v", to_json(sv)}, {"w", to_json(sw)}, {"mu_v", mv.value}, {"mu_w", mw.value},
                         {"mu_sum_space", mvw.value}, {"expected", expected}};
    }
  }
  r.passed = r.violations == 0;
  return r;
}

/// Claim evaluator for p_rho(V) + p_rho(W) = p_rho(V (+) W), V orthogonal
/// to W. Runs fixed instances (including rho = |+><+|, V = span|0>,
/// W = span|1>, which gives 0 + 0 vs 1) and random ones, stratified by
/// whether rho is block-diagonal with respect to V, W and their complement.
inline PropertyReport check_orthogonal_additivity_p_rho(const InstanceGenerator& gen,
                                                        const OptimizerSettings& opts = {}) {
  gen.validate();
  auto r = detail::empty_report("orthogonal_additivity_p_rho", 1e-6, false);
  if (gen.count == 0) return r;
  RandomSource rng(gen.seed);

  struct Stratum {
    int trials = 0, additive = 0, violations = 0;
    double worst = 0.0;
  } block, generic;

  Json instances = Json::array();
  auto evaluate = [&](const std::string& name, const DensityMatrix& rho, const Subspace& v, const Subspace& w,
                      bool block_diagonal, bool record) {
    const auto pv = p_rho_subspace(rho, v, opts);
    const auto pw = p_rho_subspace(rho, w, opts);
    const auto pvw = p_rho_subspace(rho, v.direct_sum(w), opts);
    const double diff = pvw.lambda - pv.lambda - pw.lambda;
    const double slack = r.tolerance_used + pv.bracket_width + pw.bracket_width + pvw.bracket_width;
    const bool additive = std::abs(diff) <= slack;
    auto& s = block_diagonal ? block : generic;
    ++s.trials;
    ++r.trials;
    if (additive) {
      ++s.additive;
    } else {
      ++s.violations;
      ++r.violations;
      s.worst = std::max(s.worst, std::abs(diff));
      r.worst_violation = std::max(r.worst_violation, std::abs(diff));
    }
    Json inst{{"name", name}, {"rho", to_json(rho)}, {"v", to_json(v)}, {"w", to_json(w)},
              {"p_v", pv.lambda}, {"p_w", pw.lambda}, {"p_v_plus_w", pvw.lambda},
              {"block_diagonal", block_diagonal}, {"additive", additive}};
    if (record) instances.push_back(inst);
    return inst;
  };

  const auto v0 = Subspace::coordinate(2, std::vector<std::size_t>{0});
  const auto v1 = Subspace::coordinate(2, std::vector<std::size_t>{1});
  const std::vector<double> diag2{0.3, 0.7};
  evaluate("block_diagonal_qubit", DensityMatrix(HermitianOperator::diagonal(diag2)), v0, v1, true, true);
  r.witness = evaluate("plus_state_qubit", projector(detail::plus_state()), v0, v1, false, true);
  const std::vector<double> diag3{0.2, 0.3, 0.5};
  evaluate("diagonal_qutrit", DensityMatrix(HermitianOperator::diagonal(diag3)),
           Subspace::coordinate(3, std::vector<std::size_t>{0}), Subspace::coordinate(3, std::vector<std::size_t>{1, 2}),
           true, true);

  for (int t = 0; t < gen.count; ++t) {
    const auto dim = static_cast<std::size_t>(rng.uniform_int(std::max(2, gen.dim_min), std::max(2, gen.dim_max)));
    const auto kv = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(dim) - 1));
    const auto kw = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(dim - kv)));
    const auto frame = haar_orthonormal_set(dim, dim, rng);
    const auto fv = detail::slice(frame, 0, kv);
    const auto fw = detail::slice(frame, kv, kv + kw);
    const Subspace v(fv), w(fw);
    const bool block_diagonal = t % 2 == 0;
    if (block_diagonal) {
      // masses on V, W and the complement
      const auto mass = SimplexWeights::random(3, rng);
      Matrix m = detail::random_block(fv, mass[0], rng) + detail::random_block(fw, mass[1], rng);
      const double rest_mass = kv + kw < dim ? mass[2] : 0.0;
      if (kv + kw < dim) m += detail::random_block(detail::slice(frame, kv + kw, dim), rest_mass, rng);
      const double tr = m.trace().real();
      m *= Complex(1.0 / tr);
      evaluate("random_block_diagonal", DensityMatrix(HermitianOperator(std::move(m))), v, w, true, false);
    } else {
      evaluate("random_generic", detail::random_mixed_state(dim, rng), v, w, false, false);
    }
  }

  auto stratum_json = [](const Stratum& s) {
    return Json{{"trials", s.trials}, {"additive", s.additive}, {"violations", s.violations}, {"worst", s.worst}};
  };
  r.details = Json{{"instances", std::move(instances)},
                   {"block_diagonal", stratum_json(block)},
                   {"generic", stratum_json(generic)},
                   {"claim_holds_on_all_instances", r.violations == 0}};
  r.passed = true;
  return r;
}

/// Mutually orthogonal k-sets: mu_first = mu_second = k and S = log2 k.
inline PropertyReport check_classical_limit(const InstanceGenerator& gen, const OptimizerSettings& opts = {}) {
  gen.validate();
  auto r = detail::empty_report("classical_limit", 1e-6);
  if (gen.count == 0) return r;
  RandomSource rng(gen.seed);

  auto evaluate = [&](const StateSet& u) {
    const double k = static_cast<double>(u.size());
    const auto m1 = mu_first(u);
    const auto m2 = mu_second(u, opts);
    const double s = von_neumann_entropy(uniform_mixture(u));
    const double err = std::max({std::abs(m1.value - k), std::abs(m2.value - k), std::abs(s - std::log2(k))});
    ++r.trials;
    if (err > r.tolerance_used) {
      ++r.violations;
      r.worst_violation = std::max(r.worst_violation, err);
      if (!r.witness) r.witness = Json{{"set", to_json(u)}, {"mu_first", m1.value}, {"mu_second", m2.value}, {"entropy_bits", s}};
    }
    return Json{{"k", u.size()}, {"dim", u.dim()}, {"mu_first", m1.value}, {"mu_second", m2.value}, {"entropy_bits", s}};
  };

  Json fixed = Json::array();
  fixed.push_back(evaluate(StateSet({PureState::basis(2, 0)})));
  fixed.push_back(evaluate(Subspace::full(4).as_state_set()));
  for (int t = 0; t < gen.count; ++t) {
    const auto dim = static_cast<std::size_t>(rng.uniform_int(gen.dim_min, gen.dim_max));
    const auto k = static_cast<std::size_t>(rng.uniform_int(1, static_cast<int>(dim)));
    evaluate(StateSet(haar_orthonormal_set(dim, k, rng)));
  }
  r.details = Json{{"fixed_instances", std::move(fixed)}};
  r.passed = r.violations == 0;
  return r;
}

struct SuiteSettings {
  std::uint64_t seed = 20240101;
  OptimizerSettings optimizer;
  InstanceGenerator nonadditivity{.dim_min = 2, .dim_max = 6, .count = 1000};
  InstanceGenerator nonmonotonicity{.dim_min = 2, .dim_max = 2, .size_min = 2, .size_max = 3, .count = 5000};
  InstanceGenerator monotonicity{.dim_min = 2, .dim_max = 4, .size_min = 2, .size_max = 5, .count = 500};
  InstanceGenerator subadditivity{.dim_min = 2, .dim_max = 4, .size_min = 2, .size_max = 5, .count = 500};
  InstanceGenerator orthogonal_mu{.dim_min = 2, .dim_max = 6, .count = 200};
  InstanceGenerator orthogonal_p_rho{.dim_min = 2, .dim_max = 4, .count = 40};
  InstanceGenerator classical{.dim_min = 1, .dim_max = 8, .count = 100};

  /// Every generator with its count set to n.
  SuiteSettings with_count(int n) const {
    SuiteSettings s = *this;
    for (auto* g : {&s.nonadditivity, &s.nonmonotonicity, &s.monotonicity, &s.subadditivity, &s.orthogonal_mu,
                    &s.orthogonal_p_rho, &s.classical})
      g->count = n;
    return s;
  }
};

struct CheckEntry {
  std::string_view name;  // command-line name
  std::function<PropertyReport(const SuiteSettings&, std::uint64_t seed)> run;
};

/// Checks in suite order. Each check's generator seed is derived from the
/// master seed and the check's position.
inline const std::vector<CheckEntry>& registered_checks() {
  static const std::vector<CheckEntry> checks = {
      {"nonadd-mu1",
       [](const SuiteSettings& s, std::uint64_t seed) {
         auto g = s.nonadditivity;
         g.seed = seed;
         return check_nonadditivity_mu_first(g);
       }},
      {"nonmono-mu1",
       [](const SuiteSettings& s, std::uint64_t seed) {
         auto g = s.nonmonotonicity;
         g.seed = seed;
         return check_nonmonotonicity_mu_first(g);
       }},
      {"mono-mu2",
       [](const SuiteSettings& s, std::uint64_t seed) {
         auto g = s.monotonicity;
         g.seed = seed;
         return check_monotonicity_mu_second(g, s.optimizer);
       }},
      {"subadd-mu2",
       [](const SuiteSettings& s, std::uint64_t seed) {
         auto g = s.subadditivity;
         g.seed = seed;
         return check_subadditivity_mu_second(g, s.optimizer);
       }},
      {"orthadd-mu",
       [](const SuiteSettings& s, std::uint64_t seed) {
         auto g = s.orthogonal_mu;
         g.seed = seed;
         return check_orthogonal_additivity_mu(g, s.optimizer);
       }},
      {"orthadd-prho",
       [](const SuiteSettings& s, std::uint64_t seed) {
         auto g = s.orthogonal_p_rho;
         g.seed = seed;
         return check_orthogonal_additivity_p_rho(g, s.optimizer);
       }},
      {"classical-limit",
       [](const SuiteSettings& s, std::uint64_t seed) {
         auto g = s.classical;
         g.seed = seed;
         return check_classical_limit(g, s.optimizer);
       }},
  };
  return checks;
}

inline std::uint64_t check_seed(std::uint64_t master, std::size_t index) {
  RandomSource r = RandomSource::derived(master, index);
  return static_cast<std::uint64_t>(r.uniform() * 0x1.0p53);
}

/// Runs one registered check by command-line name; throws
/// std::invalid_argument for unknown names.
inline PropertyReport run_check(std::string_view name, const SuiteSettings& settings) {
  const auto& checks = registered_checks();
  for (std::size_t i = 0; i < checks.size(); ++i)
    if (checks[i].name == name) return checks[i].run(settings, check_seed(settings.seed, i));
  throw std::invalid_argument("unknown check: " + std::string(name));
}

inline std::vector<PropertyReport> run_full_suite(const SuiteSettings& settings = {}) {
  std::vector<PropertyReport> out;
  const auto& checks = registered_checks();
  for (std::size_t i = 0; i < checks.size(); ++i) out.push_back(checks[i].run(settings, check_seed(settings.seed, i)));
  return out;
}

/// True iff every asserting check passed; claim evaluators never fail.
inline bool suite_passed(const std::vector<PropertyReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const PropertyReport& r) { return !r.asserting || r.passed; });
}

}  // namespace qmeasure
