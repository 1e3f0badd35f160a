#include "ramgrs/dataset.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "ramgrs/errors.hpp"
#include "ramgrs/util.hpp"

namespace ramgrs {

void Tolerances::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !(v < 1.0) || !std::isfinite(v)) {
      throw InputError(std::string("tolerance ") + name +
                       " must lie strictly between 0 and 1");
    }
  };
  check(feasibility_eps, "feasibility_eps");
  check(support_eps, "support_eps");
  check(efficiency_eps, "efficiency_eps");
  check(objective_eps, "objective_eps");
}

Tolerances default_tolerances() { return Tolerances{}; }

Dataset Dataset::from_records(std::vector<DmuRecord> records) {
  if (records.empty()) throw InputError("dataset must contain at least one DMU");
  const std::size_t m = records.front().inputs.size();
  const std::size_t s = records.front().outputs.size();

  std::unordered_set<std::string> seen;
  for (std::size_t j = 0; j < records.size(); ++j) {
    const DmuRecord& rec = records[j];
    if (rec.id.empty()) {
      throw InputError("empty DMU id at row " + std::to_string(j + 2));
    }
    if (!seen.insert(rec.id).second) {
      throw InputError("duplicate DMU id '" + rec.id + "'");
    }
    if (rec.inputs.size() != m || rec.outputs.size() != s) {
      throw InputError("DMU '" + rec.id + "' has inconsistent dimensions");
    }
    for (double v : rec.inputs) {
      if (!std::isfinite(v)) throw InputError("non-finite input for DMU '" + rec.id + "'");
      if (v < 0.0) throw InputError("negative input for DMU '" + rec.id + "'");
    }
    for (double v : rec.outputs) {
      if (!std::isfinite(v)) throw InputError("non-finite output for DMU '" + rec.id + "'");
      if (v < 0.0) throw InputError("negative output for DMU '" + rec.id + "'");
    }
  }

  Dataset ds;
  ds.records_ = std::move(records);
  ds.m_ = m;
  ds.s_ = s;
  ds.input_labels_.resize(m);
  ds.output_labels_.resize(s);
  for (std::size_t i = 0; i < m; ++i) ds.input_labels_[i] = "x" + std::to_string(i + 1);
  for (std::size_t r = 0; r < s; ++r) ds.output_labels_[r] = "y" + std::to_string(r + 1);
  return ds;
}

DenseMatrix Dataset::input_matrix() const {
  DenseMatrix x(m_, n());
  for (std::size_t j = 0; j < n(); ++j)
    for (std::size_t i = 0; i < m_; ++i) x.at(i, j) = records_[j].inputs[i];
  return x;
}

DenseMatrix Dataset::output_matrix() const {
  DenseMatrix y(s_, n());
  for (std::size_t j = 0; j < n(); ++j)
    for (std::size_t r = 0; r < s_; ++r) y.at(r, j) = records_[j].outputs[r];
  return y;
}

std::optional<std::size_t> Dataset::index_of(const std::string& id) const {
  for (std::size_t j = 0; j < records_.size(); ++j)
    if (records_[j].id == id) return j;
  return std::nullopt;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, std::size_t row,
                    const std::string& column) {
  const std::string t = trim(field);
  if (t.empty()) {
    throw InputError("empty value at row " + std::to_string(row) + ", column " + column);
  }
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) {
    throw InputError("unparseable value '" + t + "' at row " + std::to_string(row) +
                     ", column " + column);
  }
  if (!std::isfinite(v)) {
    throw InputError("non-finite value at row " + std::to_string(row) + ", column " +
                     column);
  }
  if (v < 0.0) {
    throw InputError("negative value at row " + std::to_string(row) + ", column " +
                     column);
  }
  return v;
}

}  // namespace

Dataset load_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("missing header row");
  const std::vector<std::string> header = split_csv_line(line);
  if (header.empty() || trim(header[0]) != "dmu") {
    throw InputError("header must start with column 'dmu'");
  }

  std::vector<std::string> input_labels, output_labels;
  bool seen_output = false;
  for (std::size_t k = 1; k < header.size(); ++k) {
    const std::string col = trim(header[k]);
    if (col.rfind("in:", 0) == 0) {
      if (seen_output) {
        throw InputError("input column '" + col + "' appears after an output column");
      }
      input_labels.push_back(col.substr(3));
    } else if (col.rfind("out:", 0) == 0) {
      seen_output = true;
      output_labels.push_back(col.substr(4));
    } else {
      throw InputError("header column '" + col + "' must be prefixed 'in:' or 'out:'");
    }
  }
  if (input_labels.empty()) throw InputError("header declares no input columns");
  if (output_labels.empty()) throw InputError("header declares no output columns");
  const std::size_t m = input_labels.size();
  const std::size_t s = output_labels.size();

  std::vector<DmuRecord> records;
  std::unordered_set<std::string> seen_ids;
  std::size_t row = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != 1 + m + s) {
      throw InputError("row " + std::to_string(row) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(1 + m + s));
    }
    DmuRecord rec;
    rec.id = trim(fields[0]);
    if (rec.id.empty()) throw InputError("empty DMU id at row " + std::to_string(row));
    if (!seen_ids.insert(rec.id).second) {
      throw InputError("duplicate DMU id '" + rec.id + "' at row " + std::to_string(row));
    }
    rec.inputs.reserve(m);
    rec.outputs.reserve(s);
    for (std::size_t i = 0; i < m; ++i) {
      rec.inputs.push_back(parse_number(fields[1 + i], row, "in:" + input_labels[i]));
    }
    for (std::size_t r = 0; r < s; ++r) {
      rec.outputs.push_back(parse_number(fields[1 + m + r], row, "out:" + output_labels[r]));
    }
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw InputError("dataset contains no data rows");

  Dataset ds = Dataset::from_records(std::move(records));
  ds.input_labels_ = std::move(input_labels);
  ds.output_labels_ = std::move(output_labels);
  return ds;
}

Dataset load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open dataset file '" + path + "'");
  return load_dataset(in);
}

void write_csv(const Dataset& ds, std::ostream& out) {
  out << "dmu";
  for (const auto& l : ds.input_labels()) out << ",in:" << l;
  for (const auto& l : ds.output_labels()) out << ",out:" << l;
  out << "\n";
  for (const DmuRecord& rec : ds.records()) {
    out << rec.id;
    for (double v : rec.inputs) out << "," << format_double_exact(v);
    for (double v : rec.outputs) out << "," << format_double_exact(v);
    out << "\n";
  }
}

}  // namespace ramgrs
