#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "qmeasure/optimize.hpp"

using namespace qmeasure;

namespace {

StateSet random_set(std::size_t d, std::size_t n, RandomSource& rng) {
  std::vector<PureState> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(haar_sample(d, rng));
  return StateSet(std::move(s));
}

// Full-rank state: 0.2 I/d + 0.8 (random mixture).
Matrix full_rank_state(std::size_t d, RandomSource& rng) {
  const auto u = random_set(d, 3, rng);
  const auto w = SimplexWeights::random(3, rng);
  Matrix m = oracle::mixture(oracle::amplitudes(u), w.values());
  m *= Complex(0.8);
  m += Matrix::identity(d) * Complex(0.2 / static_cast<double>(d));
  return m;
}

}  // namespace

TEST(OptimizerSettings, ValidateRejectsNonsense) {
  EXPECT_THROW((OptimizerSettings{.tolerance = 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((OptimizerSettings{.max_iterations = 0}.validate()), std::invalid_argument);
  EXPECT_THROW((OptimizerSettings{.restarts = -1}.validate()), std::invalid_argument);
  EXPECT_NO_THROW(OptimizerSettings{}.validate());
}

// Euclidean projection onto the simplex: KKT says x_i = max(y_i - tau, 0)
// for one common tau.
TEST(ProjectToSimplex, SatisfiesKkt) {
  RandomSource rng(1);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> y(static_cast<std::size_t>(rng.uniform_int(1, 7)));
    for (double& v : y) v = 3.0 * rng.normal();
    const auto x = detail::project_to_simplex(y);
    EXPECT_NEAR(std::accumulate(x.begin(), x.end(), 0.0), 1.0, 1e-12);
    double tau = 0.0;
    bool have = false;
    for (std::size_t i = 0; i < y.size(); ++i) {
      EXPECT_GE(x[i], 0.0);
      if (x[i] > 0.0) {
        if (!have) tau = y[i] - x[i], have = true;
        EXPECT_NEAR(y[i] - x[i], tau, 1e-12);
      }
    }
    for (std::size_t i = 0; i < y.size(); ++i)
      if (x[i] == 0.0) {
        EXPECT_LE(y[i], tau + 1e-12);
      }
  }
}

TEST(HullEntropy, MatchesClosedFormEigenvalues) {
  RandomSource rng(2);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 2;
    const auto u = random_set(d, 3, rng);
    const auto w = SimplexWeights::random(3, rng);
    EXPECT_NEAR(hull_entropy(u, w.values()), oracle::mixture_entropy(u, w.values()), 1e-10);
  }
}

// Central differences along the simplex tangent e_i - e_j agree with
// g_i - g_j.
TEST(EntropyGradient, MatchesFiniteDifferences) {
  RandomSource rng(3);
  const double h = 1e-5;
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 2;
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 5));
    const auto u = random_set(d, n, rng);
    auto w = SimplexWeights::random(n, rng).values();
    for (double& x : w) x = 0.9 * x + 0.1 / static_cast<double>(n);  // interior
    const auto g = entropy_gradient(u, SimplexWeights(w));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        auto plus = w, minus = w;
        plus[i] += h, plus[j] -= h;
        minus[i] -= h, minus[j] += h;
        const double fd = (oracle::mixture_entropy(u, plus) - oracle::mixture_entropy(u, minus)) / (2.0 * h);
        EXPECT_NEAR(g[i] - g[j], fd, 1e-4) << "t=" << t << " i=" << i << " j=" << j;
      }
  }
}

TEST(MaxEntropyOverHull, MatchesGridSearch) {
  RandomSource rng(4);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 2 + t % 2;
    const std::size_t n = 2 + (t / 2) % 2;
    const auto u = random_set(d, n, rng);
    const auto res = max_entropy_over_hull(u);
    const auto grid = oracle::max_entropy_grid(u, n == 2 ? 1000 : 200);
    ASSERT_TRUE(res.converged);
    // the grid is a lower bound; the solver's certified gap must cover it
    EXPECT_LE(grid.value, res.entropy_bits + res.trace.final_gap + 1e-9);
    EXPECT_NEAR(res.entropy_bits, grid.value, 1e-5) << "t=" << t;
    EXPECT_NEAR(oracle::mixture_entropy(u, res.weights.values()), res.entropy_bits, 1e-10);
  }
}

// Klein's bound is valid from any starting point.
TEST(HullEntropyUpperBound, DominatesGridOptimumEverywhere) {
  RandomSource rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto u = random_set(2, 3, rng);
    const double best = oracle::max_entropy_grid(u, 200).value;
    for (int k = 0; k < 5; ++k) EXPECT_GE(hull_entropy_upper_bound(u, SimplexWeights::random(3, rng)), best - 1e-9);
  }
}

TEST(HullEntropyUpperBound, InfiniteWhenAStateLeavesTheSupport) {
  const StateSet u({PureState::basis(2, 0), PureState::basis(2, 1)});
  EXPECT_TRUE(std::isinf(hull_entropy_upper_bound(u, SimplexWeights::vertex(2, 0))));
}

TEST(FrankWolfe, ObjectiveHistoryNeverDecreases) {
  RandomSource rng(6);
  for (int t = 0; t < 20; ++t) {
    const auto u = random_set(4, 6, rng);
    const auto res = max_entropy_over_hull(u);
    const auto& h = res.trace.objective_history;
    for (std::size_t k = 1; k < h.size(); ++k) EXPECT_GE(h[k], h[k - 1] - 1e-12);
  }
}

TEST(MaxEntropyOverHull, SingletonAndOrthogonalBasis) {
  const auto single = max_entropy_over_hull(StateSet({PureState::basis(3, 1)}));
  EXPECT_EQ(single.entropy_bits, 0.0);
  const auto basis = max_entropy_over_hull(StateSet(
      {PureState::basis(4, 0), PureState::basis(4, 1), PureState::basis(4, 2), PureState::basis(4, 3)}));
  EXPECT_NEAR(basis.entropy_bits, 2.0, 1e-9);
}

TEST(MaxFraction, AnalyticCases) {
  const StateSet zero({PureState::basis(2, 0)});
  const auto half = max_fraction(DensityMatrix::maximally_mixed(2), zero);
  EXPECT_NEAR(half.lambda, 0.5, 1e-8);
  EXPECT_TRUE(half.converged);
  const auto none = max_fraction(projector(PureState::normalized({1.0, 1.0})), zero);
  EXPECT_NEAR(none.lambda, 0.0, 1e-8);
  // rho inside the hull
  const StateSet both({PureState::basis(2, 0), PureState::basis(2, 1)});
  const std::vector<double> diag{0.3, 0.7};
  EXPECT_EQ(max_fraction(DensityMatrix(HermitianOperator::diagonal(diag)), both).lambda, 1.0);
}

TEST(MaxFraction, DimensionMismatchThrows) {
  EXPECT_THROW(max_fraction(DensityMatrix::maximally_mixed(3), StateSet({PureState::basis(2, 0)})), DimensionMismatch);
}

// d = 2, n <= 3: weight grid x lambda grid at 1e-3.
TEST(MaxFraction, MatchesGridOracle) {
  RandomSource rng(7);
  for (int t = 0; t < 10; ++t) {
    const auto n = static_cast<std::size_t>(1 + t % 3);
    const auto rho = full_rank_state(2, rng);
    const auto u = random_set(2, n, rng);
    const auto res = max_fraction(DensityMatrix(HermitianOperator(rho)), u);
    const double grid = oracle::fraction_grid(rho, u, 1000);
    EXPECT_NEAR(res.lambda, grid, 2e-3) << "t=" << t;
    EXPECT_GE(res.lambda, grid - 1e-6);
    EXPECT_GE(res.upper_bound, res.lambda);
    EXPECT_GE(res.upper_bound, grid - 1e-9);

    // the witness certifies feasibility of the reported lambda
    ASSERT_TRUE(res.witness_weights);
    Matrix residual = rho;
    Matrix sigma = oracle::mixture(oracle::amplitudes(u), res.witness_weights->values());
    sigma *= Complex(res.lambda);
    residual -= sigma;
    EXPECT_GE(oracle::min_eig_small(residual), -1e-8);
  }
}

TEST(MaxFractionSubspace, BlockDiagonalGivesBlockTrace) {
  const std::vector<double> diag{0.1, 0.2, 0.3, 0.4};
  const DensityMatrix rho(HermitianOperator::diagonal(diag));
  const auto v = Subspace::coordinate(4, std::vector<std::size_t>{1, 3});
  EXPECT_NEAR(max_fraction_subspace(rho, v).lambda, 0.6, 1e-7);
}

TEST(MaxFractionSubspace, RankOneMatchesInverseFormula) {
  RandomSource rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto rho = full_rank_state(2, rng);
    const auto v = haar_sample(2, rng);
    const auto res = max_fraction_subspace(DensityMatrix(HermitianOperator(rho)), Subspace({v}));
    const std::vector<Complex> amps(v.amplitudes().begin(), v.amplitudes().end());
    EXPECT_NEAR(res.lambda, oracle::rank_one_fraction_2x2(rho, amps), 1e-7);
  }
}

TEST(MaxFractionSubspace, PlaneInQutritMatchesBlochGrid) {
  RandomSource rng(9);
  for (int t = 0; t < 3; ++t) {
    const auto rho = full_rank_state(3, rng);
    const auto frame = haar_orthonormal_set(3, 2, rng);
    const auto res = max_fraction_subspace(DensityMatrix(HermitianOperator(rho)), Subspace(frame));
    const std::vector<Complex> e0(frame[0].amplitudes().begin(), frame[0].amplitudes().end());
    const std::vector<Complex> e1(frame[1].amplitudes().begin(), frame[1].amplitudes().end());
    const double grid = oracle::fraction_bloch_grid(rho, e0, e1, 40, 2000);
    EXPECT_GE(res.lambda, grid - 1e-6);
    EXPECT_NEAR(res.lambda, grid, 2e-2);
  }
}

TEST(MaxFractionSubspace, FullSpaceIsOne) {
  RandomSource rng(10);
  const auto rho = full_rank_state(3, rng);
  EXPECT_EQ(max_fraction_subspace(DensityMatrix(HermitianOperator(rho)), Subspace::full(3)).lambda, 1.0);
}
