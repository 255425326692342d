#pragma once
// Monte Carlo harnesses: simulate-and-refit tables for the two estimators,
// goodness-of-fit size, and comparison-test size. Replication r always uses
// seed + r, so tables are reproducible for any thread count.

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "msmd/mle.hpp"
#include "msmd/params.hpp"
#include "msmd/whittle.hpp"

namespace msmd {

struct McOptions {
  std::size_t n = 10000;
  int replications = 100;
  std::uint64_t seed = 1;
  int threads = 1;
  WhittleOptions whittle;
  MleOptions mle;
};

struct McTable {
  std::vector<std::string> names;
  Eigen::VectorXd truth;
  Eigen::MatrixXd estimates;  // replications x dim
  std::vector<char> converged;
  std::size_t n = 0;
  double elapsed_seconds = 0.0;

  Eigen::VectorXd mean() const;
  Eigen::VectorXd sd() const;       // across replications
  Eigen::VectorXd se_mean() const;  // sd / sqrt(replications)
};

McTable mc_whittle(const MsmdParams& truth, const McOptions& opt);

// binomial multipliers only; the filter state space does not exist for the
// log-normal law and the call throws std::invalid_argument
McTable mc_mle(const MsmdParams& truth, const McOptions& opt);

struct GofSize {
  int replications = 0;
  int reject5 = 0;
  int reject10 = 0;
  std::vector<double> pvalues;
  double elapsed_seconds = 0.0;

  double rate5() const { return replications ? double(reject5) / replications : 0.0; }
  double rate10() const { return replications ? double(reject10) / replications : 0.0; }
};

// correct-model rejection rates. With refit the spectrum is re-estimated by
// Whittle on every replication; otherwise the test runs at the true theta.
// bandwidth 0 selects the floor(3 n^0.4) default.
GofSize mc_gof_size(const MsmdParams& truth, std::size_t n, int replications,
                    std::uint64_t seed, int bandwidth = 0, bool refit = false,
                    int threads = 1);

struct DmSize {
  int replications = 0;
  int reject5 = 0;
  std::vector<double> stats;

  double rate5() const { return replications ? double(reject5) / replications : 0.0; }
};

// size under iid standard normal loss differentials
DmSize mc_dm_size(std::size_t t_len, int replications, std::uint64_t seed, int bandwidth = 0);

}  // namespace msmd
