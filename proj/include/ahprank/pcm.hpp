#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ahprank {

/// Relative tolerance on a_ij * a_ji = 1 for every present pair.
inline constexpr double kReciprocityTolerance = 1e-9;

enum class Format { Csv, Json };

/**
 * Square positive partial matrix of preference ratios.
 *
 * Entry (i, j) estimates w_i / w_j. A missing comparison is stored as an
 * exact 0.0 in both orientations. Instances are immutable once validated.
 */
class IncompletePCM {
 public:
  /// Validates `raw` and builds the matrix. Throws ahprank::Error on any
  /// structural or reciprocity violation; never repairs the input.
  static IncompletePCM validate(const Eigen::MatrixXd& raw, std::vector<std::string> labels = {});

  int size() const noexcept { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }
  bool has(int i, int j) const { return i != j && entries_(i, j) > 0.0; }
  bool is_tie(int i, int j) const { return has(i, j) && entries_(i, j) == 1.0; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Number of compared unordered pairs.
  int comparison_count() const noexcept;
  bool complete() const noexcept { return 2 * comparison_count() == size() * (size() - 1); }

  /// Present ratios outside the Saaty range [1/9, 9]. Informational only.
  std::vector<std::string> range_warnings() const;

 private:
  IncompletePCM(Eigen::MatrixXd entries, std::vector<std::string> labels)
      : entries_(std::move(entries)), labels_(std::move(labels)) {}

  Eigen::MatrixXd entries_;
  std::vector<std::string> labels_;
};

enum class Normalization { SumOne, FirstComponentOne };

std::string_view to_string(Normalization n) noexcept;
Normalization normalization_from_string(std::string_view s);

/// Strictly positive weight vector together with its log-domain image.
class PriorityVector {
 public:
  /// Empty vector.
  PriorityVector() = default;

  /// Throws Errc::NonPositiveWeights if any weight is not strictly positive
  /// (or not finite).
  static PriorityVector from_weights(const Eigen::VectorXd& weights,
                                     Normalization normalization = Normalization::SumOne);
  static PriorityVector from_log_weights(const Eigen::VectorXd& log_weights,
                                         Normalization normalization = Normalization::SumOne);

  int size() const noexcept { return static_cast<int>(weights_.size()); }
  const Eigen::VectorXd& weights() const noexcept { return weights_; }
  /// ln(weights), consistent with the stored normalization.
  const Eigen::VectorXd& log_weights() const noexcept { return log_weights_; }
  Normalization normalization() const noexcept { return normalization_; }
  double operator[](int i) const { return weights_(i); }

  PriorityVector renormalized(Normalization normalization) const;

 private:
  PriorityVector(Eigen::VectorXd w, Eigen::VectorXd y, Normalization n)
      : weights_(std::move(w)), log_weights_(std::move(y)), normalization_(n) {}

  Eigen::VectorXd weights_;
  Eigen::VectorXd log_weights_;
  Normalization normalization_ = Normalization::SumOne;
};

/// Formats a double with 12 significant digits ("%.12g").
std::string format_number(double value);

// Matrix text formats.
//
// CSV: one row per line, comma-separated cells; a cell is a decimal, a
// rational "a/b", empty, or 0 (the last two mean "missing"). Blank lines and
// lines whose first non-space character is '#' are ignored.
//
// JSON: {"n": <int>, "labels": [<string>...], "entries": [[<number>...]...]}.
// Entries may also be rational strings such as "1/2".
IncompletePCM parse_matrix(std::string_view text, Format format);
std::string serialize_matrix(const IncompletePCM& pcm, Format format);

/// Parses a single CSV cell ("", "0", decimal, or "a/b"). Returns nullopt on
/// malformed text.
std::optional<double> parse_cell(std::string_view cell);

// Weight formats.
//
// CSV:  "# normalization: sum-one" then "alternative,weight" then one row per
//       alternative. The parser also accepts plain numbers, one per line or
//       comma-separated on one line.
// JSON: {"normalization": "...", "weights": [...], "log_weights": [...]}.
std::string serialize_weights(const PriorityVector& w, Format format,
                              const std::vector<std::string>& labels = {});
PriorityVector parse_weights(std::string_view text, Format format);
/// Same as parse_weights but without the positivity requirement.
Eigen::VectorXd parse_raw_weights(std::string_view text, Format format);

IncompletePCM read_matrix_file(const std::string& path);
std::string read_text_file(const std::string& path);
/// Picks JSON when the path ends with ".json", CSV otherwise.
Format format_for_path(const std::string& path);

}  // namespace ahprank
