#include "vpl/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "vpl/error.hpp"

namespace vpl {

namespace {

[[noreturn]] void format_error(const std::string& source, std::size_t line, const std::string& msg) {
  throw Error(Errc::format_error, source + ":" + std::to_string(line) + ": " + msg);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size() && !token.empty();
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    const auto end = line.find_first_of(" \t\r", start);
    tokens.push_back(line.substr(start, end == std::string_view::npos ? end : end - start));
    pos = end == std::string_view::npos ? line.size() : end;
  }
  return tokens;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::format_error, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::format_error, "cannot write " + path.string());
  return out;
}

Index infer_classes(const std::vector<Index>& labels, std::vector<std::string>& warnings) {
  const Index k = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<bool> present(static_cast<std::size_t>(k), false);
  for (Index c : labels) present[c] = true;
  for (Index c = 0; c < k; ++c) {
    if (!present[c]) warnings.push_back("class " + std::to_string(c) + " has no members");
  }
  return k;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::vector<Index> Dataset::class_counts() const {
  std::vector<Index> counts(static_cast<std::size_t>(num_classes), 0);
  for (Index c : true_labels) ++counts[c];
  return counts;
}

Eigen::MatrixXd read_feature_csv(std::istream& in, const std::string& source) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    std::size_t count = 0;
    std::size_t pos = 0;
    while (true) {
      const auto comma = row.find(',', pos);
      const auto field = row.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
      double v = 0.0;
      if (!parse_number(field, v)) {
        format_error(source, lineno, "non-numeric field '" + std::string(trim(field)) + "'");
      }
      values.push_back(v);
      ++count;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (rows == 0) {
      cols = count;
    } else if (count != cols) {
      format_error(source, lineno, "ragged row: " + std::to_string(count) + " fields, expected " +
                                       std::to_string(cols));
    }
    ++rows;
  }
  Eigen::MatrixXd features(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      features(static_cast<Index>(r), static_cast<Index>(c)) = values[r * cols + c];
    }
  }
  return features;
}

void write_feature_csv(std::ostream& out, const Eigen::Ref<const Eigen::MatrixXd>& features) {
  for (Index r = 0; r < features.rows(); ++r) {
    for (Index c = 0; c < features.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(features(r, c));
    }
    out << '\n';
  }
}

std::vector<Index> read_label_list(std::istream& in, const std::string& source) {
  std::vector<Index> labels;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string_view field = trim(line);
    if (field.empty()) continue;
    long long v = 0;
    if (!parse_number(field, v)) {
      format_error(source, lineno, "label '" + std::string(field) + "' is not an integer");
    }
    if (v < 0) format_error(source, lineno, "negative label " + std::to_string(v));
    labels.push_back(static_cast<Index>(v));
  }
  return labels;
}

void write_label_list(std::ostream& out, std::span<const Index> labels) {
  for (Index c : labels) out << c << '\n';
}

EdgeList read_edge_list(std::istream& in, const std::string& source) {
  EdgeList list;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tokens = split_whitespace(body);
    if (tokens.size() < 2 || tokens.size() > 3) {
      format_error(source, lineno, "expected 'src dst [weight]'");
    }
    long long src = 0;
    long long dst = 0;
    double weight = 1.0;
    if (!parse_number(tokens[0], src) || !parse_number(tokens[1], dst) || src < 0 || dst < 0) {
      format_error(source, lineno, "node indices must be nonnegative integers");
    }
    if (tokens.size() == 3 && (!parse_number(tokens[2], weight) || !(weight >= 0.0) ||
                               !std::isfinite(weight))) {
      format_error(source, lineno, "weight must be a finite nonnegative number");
    }
    if (src == dst) {
      list.warnings.push_back(source + ":" + std::to_string(lineno) + ": self-loop at node " +
                              std::to_string(src) + " dropped");
      continue;
    }
    list.max_node = std::max<Index>(list.max_node, std::max(src, dst));
    list.edges.push_back(Edge{static_cast<Index>(src), static_cast<Index>(dst), weight});
  }
  return list;
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& e : g.edges()) {
    out << e.src << ' ' << e.dst << ' ' << format_double(e.weight) << '\n';
  }
}

LabelSet read_label_set(std::istream& in, std::optional<Index> num_classes,
                        const std::string& source) {
  std::vector<LabelEntry> entries;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tokens = split_whitespace(body);
    long long node = 0;
    long long cls = 0;
    if (tokens.size() != 2 || !parse_number(tokens[0], node) || !parse_number(tokens[1], cls) ||
        node < 0 || cls < 0) {
      format_error(source, lineno, "expected 'node class' with nonnegative integers");
    }
    entries.push_back(LabelEntry{static_cast<Index>(node), static_cast<Index>(cls)});
  }
  if (entries.empty()) throw Error(Errc::format_error, source + ": no labels");
  Index k = 0;
  for (const auto& e : entries) k = std::max(k, e.cls + 1);
  try {
    return LabelSet(num_classes.value_or(k), std::move(entries));
  } catch (const Error& e) {
    throw Error(Errc::format_error, source + ": " + e.what());
  }
}

void write_label_set(std::ostream& out, const LabelSet& labels) {
  for (const auto& e : labels.entries()) out << e.node << ' ' << e.cls << '\n';
}

Dataset load_feature_dataset(const std::filesystem::path& features_path,
                             const std::filesystem::path& labels_path) {
  auto fin = open_input(features_path);
  auto lin = open_input(labels_path);
  Dataset ds;
  ds.name = features_path.stem().string();
  ds.features = read_feature_csv(fin, features_path.string());
  ds.true_labels = read_label_list(lin, labels_path.string());
  if (ds.features->rows() != ds.size()) {
    throw Error(Errc::format_error, "row-count mismatch: " + features_path.string() + " has " +
                                        std::to_string(ds.features->rows()) + " rows, " +
                                        labels_path.string() + " has " +
                                        std::to_string(ds.size()) + " labels");
  }
  ds.num_classes = infer_classes(ds.true_labels, ds.warnings);
  return ds;
}

Dataset load_graph_dataset(const std::filesystem::path& edges_path,
                           const std::filesystem::path& labels_path) {
  auto ein = open_input(edges_path);
  auto lin = open_input(labels_path);
  Dataset ds;
  ds.name = edges_path.stem().string();
  EdgeList list = read_edge_list(ein, edges_path.string());
  ds.true_labels = read_label_list(lin, labels_path.string());
  if (list.max_node >= ds.size()) {
    throw Error(Errc::format_error, edges_path.string() + ": node " +
                                        std::to_string(list.max_node) + " exceeds the " +
                                        std::to_string(ds.size()) + " labels in " +
                                        labels_path.string());
  }
  ds.warnings = std::move(list.warnings);
  ds.num_classes = infer_classes(ds.true_labels, ds.warnings);
  try {
    ds.graph = Graph::from_edges(ds.size(), list.edges);
  } catch (const Error& e) {
    throw Error(Errc::format_error, edges_path.string() + ": " + e.what());
  }
  return ds;
}

void save_feature_dataset(const Dataset& ds, const std::filesystem::path& features_path,
                          const std::filesystem::path& labels_path) {
  if (!ds.features) throw Error(Errc::invalid_input, "dataset has no features");
  auto fout = open_output(features_path);
  write_feature_csv(fout, *ds.features);
  auto lout = open_output(labels_path);
  write_label_list(lout, ds.true_labels);
}

void save_graph_dataset(const Dataset& ds, const std::filesystem::path& edges_path,
                        const std::filesystem::path& labels_path) {
  if (!ds.graph) throw Error(Errc::invalid_input, "dataset has no graph");
  auto eout = open_output(edges_path);
  write_edge_list(eout, *ds.graph);
  auto lout = open_output(labels_path);
  write_label_list(lout, ds.true_labels);
}

}  // namespace vpl
