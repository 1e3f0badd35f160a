#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ramgrs/dense.hpp"

namespace ramgrs {

/// One decision making unit: an id plus its observed input and output
/// quantities. All entries are finite and non-negative (zeros allowed).
struct DmuRecord {
  std::string id;
  std::vector<double> inputs;
  std::vector<double> outputs;
};

/// Numerical thresholds shared across the whole pipeline.
///   feasibility_eps — constraint-residual tolerance
///   support_eps     — threshold for treating an intensity as positive
///   efficiency_eps  — threshold for treating a score as 1
///   objective_eps   — objective-equality tolerance across formulations
struct Tolerances {
  double feasibility_eps = 1e-7;
  double support_eps = 1e-7;
  double efficiency_eps = 1e-6;
  double objective_eps = 1e-6;

  /// Throws InputError unless every field is in (0, 1).
  void validate() const;
};

Tolerances default_tolerances();

/// Immutable, validated collection of DMU records. All downstream math uses
/// positional indices resolved once here; ids only surface in reports.
class Dataset {
 public:
  static Dataset from_records(std::vector<DmuRecord> records);

  std::size_t n() const { return records_.size(); }
  std::size_t num_inputs() const { return m_; }
  std::size_t num_outputs() const { return s_; }

  const std::vector<DmuRecord>& records() const { return records_; }
  const DmuRecord& record(std::size_t j) const { return records_[j]; }

  double input(std::size_t i, std::size_t j) const { return records_[j].inputs[i]; }
  double output(std::size_t r, std::size_t j) const { return records_[j].outputs[r]; }

  /// Input matrix X (m x n): column j is DMU j's input vector.
  DenseMatrix input_matrix() const;
  /// Output matrix Y (s x n).
  DenseMatrix output_matrix() const;

  std::optional<std::size_t> index_of(const std::string& id) const;

  const std::vector<std::string>& input_labels() const { return input_labels_; }
  const std::vector<std::string>& output_labels() const { return output_labels_; }

 private:
  Dataset() = default;
  std::vector<DmuRecord> records_;
  std::size_t m_ = 0;
  std::size_t s_ = 0;
  std::vector<std::string> input_labels_;
  std::vector<std::string> output_labels_;

  friend Dataset load_dataset(std::istream& in);
};

/// Parse the CSV dialect: header `dmu,in:<label>...,out:<label>...` with all
/// input columns before output columns; one row per DMU. Errors carry the
/// offending row/column.
Dataset load_dataset(std::istream& in);
Dataset load_dataset_file(const std::string& path);

/// Inverse of load_dataset; values are written with exact round-trip
/// formatting, so load(write(ds)) == ds bit for bit.
void write_csv(const Dataset& ds, std::ostream& out);

}  // namespace ramgrs
