#include "ldmcap/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <unordered_map>

#include "ldmcap/error.hpp"

namespace ldmcap {

namespace detail {
extern const char* const kIrisCsv;
}

LabeledDataset::LabeledDataset(Matrix features, std::vector<Label> labels, int num_classes)
    : features_(std::move(features)), labels_(std::move(labels)), num_classes_(num_classes) {
  if (labels_.empty() || features_.cols() == 0) {
    throw InvalidDatasetError("dataset needs at least one row and one feature");
  }
  if (features_.rows() != labels_.size()) {
    throw InvalidDatasetError("feature rows (" + std::to_string(features_.rows()) +
                              ") do not match label count (" +
                              std::to_string(labels_.size()) + ")");
  }
  if (num_classes_ < 2) {
    throw InvalidDatasetError("dataset needs at least 2 classes, got " +
                              std::to_string(num_classes_));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 0 || labels_[i] >= num_classes_) {
      throw InvalidDatasetError("label " + std::to_string(labels_[i]) + " at row " +
                                std::to_string(i) + " outside [0, " +
                                std::to_string(num_classes_) + ")");
    }
  }
}

LabeledDataset LabeledDataset::with_labels(std::vector<Label> labels) const {
  return LabeledDataset(features_, std::move(labels), num_classes_);
}

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  s = s.substr(b, e - b + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool parse_real(std::string_view cell, double& out) {
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc{} && ptr == cell.data() + cell.size();
}

}  // namespace

LabeledDataset parse_csv(std::string_view text, std::size_t label_column,
                         std::string_view source) {
  Matrix features;
  std::vector<Label> labels;
  std::unordered_map<std::string, Label> label_ids;
  std::vector<double> row_values;
  std::size_t expected_cells = 0;
  bool first_row = true;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                     : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (trim(line).empty()) continue;

    const auto cells = split_cells(line);
    auto fail = [&](const std::string& what) -> ParseError {
      return ParseError(std::string(source) + ": row " + std::to_string(line_no) + ": " + what);
    };
    if (label_column >= cells.size()) {
      throw fail("label column " + std::to_string(label_column) + " missing (row has " +
                 std::to_string(cells.size()) + " cells)");
    }
    if (cells.size() < 2) throw fail("need at least one feature column");

    if (first_row) {
      first_row = false;
      expected_cells = cells.size();
      // String labels are legal data, so only feature cells decide the header.
      double dummy = 0.0;
      bool header = false;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i != label_column && !parse_real(cells[i], dummy)) header = true;
      }
      if (header) continue;
    }
    if (cells.size() != expected_cells) {
      throw fail("expected " + std::to_string(expected_cells) + " cells, found " +
                 std::to_string(cells.size()));
    }

    row_values.clear();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i == label_column) continue;
      double v = 0.0;
      if (!parse_real(cells[i], v)) {
        throw fail("cannot parse '" + std::string(cells[i]) + "' as a real number");
      }
      row_values.push_back(v);
    }
    const std::string key(cells[label_column]);
    if (key.empty()) throw fail("empty label");
    const auto [it, inserted] = label_ids.try_emplace(key, static_cast<Label>(label_ids.size()));
    labels.push_back(it->second);
    features.append_row(row_values);
  }

  if (labels.empty()) throw InvalidDatasetError(std::string(source) + ": no data rows");
  if (label_ids.size() < 2) {
    throw InvalidDatasetError(std::string(source) + ": need at least 2 distinct labels, found " +
                              std::to_string(label_ids.size()));
  }
  return LabeledDataset(std::move(features), std::move(labels),
                        static_cast<int>(label_ids.size()));
}

LabeledDataset load_csv(const std::filesystem::path& path, std::size_t label_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), label_column, path.string());
}

const LabeledDataset& builtin_iris() {
  static const LabeledDataset iris = parse_csv(detail::kIrisCsv, 4, "builtin:iris");
  return iris;
}

HoldoutSplit split_train_holdout(const LabeledDataset& ds, std::size_t holdout_size, Rng& rng) {
  const std::size_t n = ds.size();
  if (holdout_size < 1 || holdout_size >= n) {
    throw ArgumentError("holdout size " + std::to_string(holdout_size) + " must be in [1, " +
                        std::to_string(n) + ")");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first holdout_size slots are a uniform sample.
  for (std::size_t i = 0; i < holdout_size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(order[i], order[pick(rng)]);
  }
  std::vector<std::size_t> held(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(holdout_size));
  std::sort(held.begin(), held.end());

  std::vector<bool> is_held(n, false);
  for (auto r : held) is_held[r] = true;

  Matrix train_x;
  std::vector<Label> train_y;
  Matrix hold_x;
  for (std::size_t r = 0; r < n; ++r) {
    if (is_held[r]) {
      hold_x.append_row(ds.features().row(r));
    } else {
      train_x.append_row(ds.features().row(r));
      train_y.push_back(ds.labels()[r]);
    }
  }
  return HoldoutSplit{LabeledDataset(std::move(train_x), std::move(train_y), ds.num_classes()),
                      std::move(hold_x), std::move(held)};
}

LabeledDataset permute_labels(const LabeledDataset& ds, Rng& rng) {
  std::vector<Label> labels = ds.labels();
  std::shuffle(labels.begin(), labels.end(), rng);
  return ds.with_labels(std::move(labels));
}

LabeledDataset random_labels(const LabeledDataset& ds, Rng& rng) {
  std::uniform_int_distribution<Label> draw(0, ds.num_classes() - 1);
  std::vector<Label> labels(ds.size());
  for (auto& l : labels) l = draw(rng);
  return ds.with_labels(std::move(labels));
}

}  // namespace ldmcap
