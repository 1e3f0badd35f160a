#pragma once

#include <cstddef>
#include <vector>

#include "ramgrs/dataset.hpp"
#include "ramgrs/dense.hpp"
#include "ramgrs/lp.hpp"

namespace ramgrs {

/// Reciprocal-range slack weights. A coordinate whose observed range is zero
/// is degenerate: it carries weight exactly 0 and contributes nothing to the
/// objective, while its constraint row stays in every model.
struct RangeWeights {
  std::vector<double> r_minus;  // input weights, length m
  std::vector<double> r_plus;   // output weights, length s
  std::vector<std::size_t> degenerate_inputs;
  std::vector<std::size_t> degenerate_outputs;

  bool all_degenerate() const {
    return degenerate_inputs.size() == r_minus.size() &&
           degenerate_outputs.size() == r_plus.size();
  }
};

RangeWeights compute_range_weights(const Dataset& ds);

/// One evaluated unit's optimum: score, intensities over the full DMU set,
/// and slack vectors. weighted_slack is the solver's raw optimal objective
/// R-'s- + R+'s+, which equals (m+s)(1-rho) and is carried forward unrounded.
struct RamResult {
  double rho = 1.0;
  std::vector<double> lambda;
  std::vector<double> s_minus;
  std::vector<double> s_plus;
  double weighted_slack = 0.0;
};

/// One score solve over the full DMU set. Note: `lambda` is one optimal
/// vertex; alternative optima usually exist, and the vertex returned need not
/// have maximal support. That is the whole reason the reference-set pipeline
/// exists -- never read peer sets off this vector.
RamResult solve_ram(const Dataset& ds, std::size_t o, const RangeWeights& w,
                    const Tolerances& tol);

/// All n scores in dataset order; evaluations are independent and run on up
/// to `jobs` threads.
std::vector<RamResult> solve_ram_all(const Dataset& ds, const RangeWeights& w,
                                     const Tolerances& tol, unsigned jobs = 1);

/// The RAM-efficient units, with their data columns assembled in dataset
/// order. Membership is decided from the score alone: a vertex optimum can
/// hide alternative optima, the score cannot.
struct EfficientSet {
  std::vector<std::size_t> indices;  // dataset indices, ascending
  DenseMatrix x_e;                   // m x |E|
  DenseMatrix y_e;                   // s x |E|

  std::size_t size() const { return indices.size(); }
};

EfficientSet classify_efficient(const Dataset& ds, const RangeWeights& w,
                                const Tolerances& tol, unsigned jobs = 1);
EfficientSet classify_efficient(const Dataset& ds,
                                const std::vector<RamResult>& results,
                                const Tolerances& tol);

}  // namespace ramgrs
