#include "ahprank/pcm.hpp"

#include "ahprank/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ahprank {

namespace {

std::string pair_text(int i, int j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

struct TextLine {
  int number;
  std::string_view text;
};

// Non-blank, non-comment lines with their 1-based line numbers.
std::vector<TextLine> content_lines(std::string_view text, std::vector<std::string_view>* comments = nullptr) {
  std::vector<TextLine> lines;
  int number = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++number;
    const std::string_view t = trim(raw);
    if (t.empty()) continue;
    if (t.front() == '#') {
      if (comments) comments->push_back(t);
      continue;
    }
    lines.push_back({number, raw});
  }
  return lines;
}

std::pair<int, int> line_column(std::string_view text, size_t byte) {
  int line = 1;
  int column = 1;
  for (size_t k = 0; k < std::min(byte, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw PositionedError(Errc::ParseError, line, column,
                          "invalid JSON at line " + std::to_string(line) + ", column " +
                              std::to_string(column));
  }
}

double json_number(const nlohmann::json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    if (auto d = parse_cell(v.get<std::string>())) return *d;
  }
  if (v.is_null()) return 0.0;
  throw Error(Errc::ParseError, "expected a number at " + where);
}

}  // namespace

// ---------------------------------------------------------------------------

IncompletePCM IncompletePCM::validate(const Eigen::MatrixXd& raw, std::vector<std::string> labels) {
  if (raw.rows() != raw.cols()) {
    throw Error(Errc::NonSquare, std::to_string(raw.rows()) + "x" + std::to_string(raw.cols()) + " matrix");
  }
  const int n = static_cast<int>(raw.rows());
  if (n < 2) throw Error(Errc::TooSmall, "at least two alternatives are required");
  if (!labels.empty() && static_cast<int>(labels.size()) != n) {
    throw Error(Errc::InvalidArgument, "label count does not match matrix size");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double a = raw(i, j);
      if (!std::isfinite(a)) throw PositionedError(Errc::InvalidEntry, i, j, "non-finite entry at " + pair_text(i, j));
      if (a < 0.0) throw PositionedError(Errc::NegativeEntry, i, j, "negative entry at " + pair_text(i, j));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (raw(i, i) != 1.0) throw PositionedError(Errc::BadDiagonal, i, i, "diagonal entry " + std::to_string(i) + " is not 1");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool forward = raw(i, j) > 0.0;
      const bool backward = raw(j, i) > 0.0;
      if (forward != backward) {
        throw PositionedError(Errc::OneSidedComparison, i, j, "only one orientation present at " + pair_text(i, j));
      }
      if (forward && std::abs(raw(i, j) * raw(j, i) - 1.0) > kReciprocityTolerance) {
        throw PositionedError(Errc::ReciprocityViolation, i, j, "a_ij * a_ji != 1 at " + pair_text(i, j));
      }
    }
  }
  return IncompletePCM(raw, std::move(labels));
}

int IncompletePCM::comparison_count() const noexcept {
  int count = 0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (entries_(i, j) > 0.0) ++count;
  return count;
}

std::vector<std::string> IncompletePCM::range_warnings() const {
  std::vector<std::string> out;
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      const double a = entries_(i, j);
      if (a > 0.0 && (a > 9.0 * (1 + 1e-12) || a < (1.0 / 9.0) * (1 - 1e-12))) {
        out.push_back("entry " + pair_text(i, j) + " = " + format_number(a) + " is outside the Saaty range [1/9, 9]");
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Normalization n) noexcept {
  return n == Normalization::SumOne ? "sum-one" : "first-component-one";
}

Normalization normalization_from_string(std::string_view s) {
  if (s == "sum-one") return Normalization::SumOne;
  if (s == "first-component-one") return Normalization::FirstComponentOne;
  throw Error(Errc::ParseError, "unknown normalization '" + std::string(s) + "'");
}

PriorityVector PriorityVector::from_weights(const Eigen::VectorXd& weights, Normalization normalization) {
  if (weights.size() == 0) throw Error(Errc::InvalidArgument, "empty weight vector");
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (!(weights(i) > 0.0) || !std::isfinite(weights(i))) {
      throw Error(Errc::NonPositiveWeights, "weight " + std::to_string(i) + " = " + format_number(weights(i)));
    }
  }
  return from_log_weights(weights.array().log().matrix(), normalization);
}

PriorityVector PriorityVector::from_log_weights(const Eigen::VectorXd& log_weights, Normalization normalization) {
  if (log_weights.size() == 0) throw Error(Errc::InvalidArgument, "empty weight vector");
  if (!log_weights.allFinite()) throw Error(Errc::NonPositiveWeights, "non-finite log-weight");
  Eigen::VectorXd y = log_weights;
  if (normalization == Normalization::SumOne) {
    const double shift = y.maxCoeff();
    const double log_sum = shift + std::log((y.array() - shift).exp().sum());
    y.array() -= log_sum;
  } else {
    y.array() -= y(0);
  }
  Eigen::VectorXd w = y.array().exp();
  if (normalization == Normalization::SumOne) w /= w.sum();
  return PriorityVector(std::move(w), std::move(y), normalization);
}

PriorityVector PriorityVector::renormalized(Normalization normalization) const {
  return from_log_weights(log_weights_, normalization);
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

// ---------------------------------------------------------------------------

std::optional<double> parse_cell(std::string_view cell) {
  cell = trim(cell);
  if (cell.empty()) return 0.0;
  const size_t slash = cell.find('/');
  if (slash == std::string_view::npos) return parse_decimal(cell);
  const auto num = parse_decimal(trim(cell.substr(0, slash)));
  const auto den = parse_decimal(trim(cell.substr(slash + 1)));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

IncompletePCM parse_matrix(std::string_view text, Format format) {
  if (format == Format::Json) {
    const nlohmann::json doc = parse_json(text);
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
      throw Error(Errc::ParseError, "JSON matrix must be an object with an 'entries' array");
    }
    const auto& rows = doc["entries"];
    const int n = static_cast<int>(rows.size());
    if (doc.contains("n") && (!doc["n"].is_number_integer() || doc["n"].get<int>() != n)) {
      throw Error(Errc::NonSquare, "'n' does not match the number of rows");
    }
    Eigen::MatrixXd raw(n, n);
    for (int i = 0; i < n; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
        throw Error(Errc::NonSquare, "row " + std::to_string(i) + " does not have " + std::to_string(n) + " entries");
      }
      for (int j = 0; j < n; ++j) raw(i, j) = json_number(rows[i][j], "entries[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
    std::vector<std::string> labels;
    if (doc.contains("labels") && !doc["labels"].is_null()) {
      if (!doc["labels"].is_array()) throw Error(Errc::ParseError, "'labels' must be an array");
      for (const auto& l : doc["labels"]) {
        if (!l.is_string()) throw Error(Errc::ParseError, "labels must be strings");
        labels.push_back(l.get<std::string>());
      }
    }
    return IncompletePCM::validate(raw, std::move(labels));
  }

  const auto lines = content_lines(text);
  const int n = static_cast<int>(lines.size());
  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto cells = split(lines[i].text, ',');
    if (static_cast<int>(cells.size()) != n) {
      throw PositionedError(Errc::NonSquare, lines[i].number, static_cast<int>(cells.size()),
                            "line " + std::to_string(lines[i].number) + " has " + std::to_string(cells.size()) +
                                " cells, expected " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
      const auto value = parse_cell(cells[j]);
      if (!value) {
        throw PositionedError(Errc::ParseError, lines[i].number, j + 1,
                              "cannot parse '" + std::string(trim(cells[j])) + "' at line " +
                                  std::to_string(lines[i].number) + ", column " + std::to_string(j + 1));
      }
      raw(i, j) = *value;
    }
  }
  return IncompletePCM::validate(raw);
}

std::string serialize_matrix(const IncompletePCM& pcm, Format format) {
  const int n = pcm.size();
  if (format == Format::Json) {
    nlohmann::ordered_json doc;
    doc["n"] = n;
    doc["labels"] = pcm.labels();
    auto rows = nlohmann::ordered_json::array();
    for (int i = 0; i < n; ++i) {
      auto row = nlohmann::ordered_json::array();
      // Emitted through the 12-digit formatter so CSV and JSON agree.
      for (int j = 0; j < n; ++j) row.push_back(std::stod(format_number(pcm(i, j))));
      rows.push_back(std::move(row));
    }
    doc["entries"] = std::move(rows);
    return doc.dump() + "\n";
  }
  std::string out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out += ',';
      out += format_number(pcm(i, j));
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string serialize_weights(const PriorityVector& w, Format format, const std::vector<std::string>& labels) {
  const bool use_labels = static_cast<int>(labels.size()) == w.size();
  if (format == Format::Json) {
    nlohmann::ordered_json doc;
    doc["normalization"] = std::string(to_string(w.normalization()));
    auto weights = nlohmann::ordered_json::array();
    auto logs = nlohmann::ordered_json::array();
    for (int i = 0; i < w.size(); ++i) {
      weights.push_back(std::stod(format_number(w.weights()(i))));
      logs.push_back(std::stod(format_number(w.log_weights()(i))));
    }
    if (use_labels) doc["labels"] = labels;
    doc["weights"] = std::move(weights);
    doc["log_weights"] = std::move(logs);
    return doc.dump() + "\n";
  }
  std::string out = "# normalization: " + std::string(to_string(w.normalization())) + "\n";
  out += "alternative,weight\n";
  for (int i = 0; i < w.size(); ++i) {
    out += use_labels ? labels[i] : std::to_string(i + 1);
    out += ',';
    out += format_number(w.weights()(i));
    out += '\n';
  }
  return out;
}

namespace {

struct RawWeights {
  Eigen::VectorXd values;
  Normalization normalization = Normalization::SumOne;
};

RawWeights parse_weights_impl(std::string_view text, Format format) {
  RawWeights result;
  if (format == Format::Json) {
    const nlohmann::json doc = parse_json(text);
    const nlohmann::json* arr = &doc;
    if (doc.is_object()) {
      if (!doc.contains("weights")) throw Error(Errc::ParseError, "JSON weights must contain 'weights'");
      arr = &doc["weights"];
      if (doc.contains("normalization")) result.normalization = normalization_from_string(doc["normalization"].get<std::string>());
    }
    if (!arr->is_array()) throw Error(Errc::ParseError, "'weights' must be an array");
    result.values.resize(static_cast<Eigen::Index>(arr->size()));
    for (size_t i = 0; i < arr->size(); ++i) result.values(static_cast<Eigen::Index>(i)) = json_number((*arr)[i], "weights[" + std::to_string(i) + "]");
    return result;
  }

  std::vector<std::string_view> comments;
  auto lines = content_lines(text, &comments);
  for (std::string_view c : comments) {
    const auto pos = c.find("normalization:");
    if (pos != std::string_view::npos) result.normalization = normalization_from_string(trim(c.substr(pos + 14)));
  }
  bool header = false;
  if (!lines.empty()) {
    for (std::string_view cell : split(lines.front().text, ',')) {
      if (!parse_decimal(trim(cell))) header = true;
    }
    if (header) lines.erase(lines.begin());
  }
  std::vector<double> values;
  auto take = [&](const TextLine& line, std::string_view cell, int column) {
    const auto v = parse_cell(cell);
    if (!v || trim(cell).empty()) {
      throw PositionedError(Errc::ParseError, line.number, column,
                            "cannot parse weight at line " + std::to_string(line.number) + ", column " + std::to_string(column));
    }
    values.push_back(*v);
  };
  if (!header && lines.size() == 1) {
    const auto cells = split(lines.front().text, ',');
    for (size_t k = 0; k < cells.size(); ++k) take(lines.front(), cells[k], static_cast<int>(k) + 1);
  } else {
    for (const auto& line : lines) {
      const auto cells = split(line.text, ',');
      take(line, cells.back(), static_cast<int>(cells.size()));
    }
  }
  result.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return result;
}

}  // namespace

PriorityVector parse_weights(std::string_view text, Format format) {
  auto raw = parse_weights_impl(text, format);
  return PriorityVector::from_weights(raw.values, raw.normalization);
}

Eigen::VectorXd parse_raw_weights(std::string_view text, Format format) {
  return parse_weights_impl(text, format).values;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileNotFound, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Format format_for_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0 ? Format::Json : Format::Csv;
}

IncompletePCM read_matrix_file(const std::string& path) {
  return parse_matrix(read_text_file(path), format_for_path(path));
}

}  // namespace ahprank
