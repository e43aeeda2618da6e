#include "fairsc/datasets.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fairsc {

using nlohmann::json;

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void validate(const DatasetBundle& bundle) {
  const Index n = bundle.size();
  if (n == 0) throw ContractError("dataset: empty bundle");
  if (bundle.kind == DatasetKind::kPoints) {
    if (bundle.points.rows() != n) throw ContractError("dataset: points row count mismatch");
    if (bundle.adjacency.size() != 0) throw ContractError("dataset: both points and adjacency set");
    if (!bundle.points.allFinite()) throw ContractError("dataset: non-finite point coordinates");
  } else {
    if (bundle.points.size() != 0) throw ContractError("dataset: both points and adjacency set");
    if (bundle.adjacency.rows() != n || bundle.adjacency.cols() != n)
      throw ContractError("dataset: adjacency shape mismatch");
    if ((bundle.adjacency - bundle.adjacency.transpose()).norm() != 0.0)
      throw ContractError("dataset: adjacency not symmetric");
    if (bundle.adjacency.diagonal().cwiseAbs().maxCoeff() != 0.0)
      throw ContractError("dataset: adjacency diagonal not zero");
    if (bundle.adjacency.minCoeff() < 0.0) throw ContractError("dataset: negative edge weight");
  }
  for (int label : bundle.group_labels)
    if (label < 0 || label >= bundle.num_groups)
      throw ContractError("dataset: group label out of range");
  if (!bundle.ground_truth_clusters.empty() &&
      bundle.ground_truth_clusters.size() != bundle.group_labels.size())
    throw ContractError("dataset: ground truth size mismatch");
}

double msbm_default_edge_probability(int n) {
  if (n < 2) throw ContractError("msbm_default_edge_probability: n must be >= 2");
  return std::pow(std::log(static_cast<double>(n)) / n, 0.1);
}

DatasetBundle gen_msbm(Rng& rng, int n, int k, int h, double p_within, double p_between) {
  if (k < 1 || h < 1) throw ContractError("gen_msbm: k and h must be positive");
  if (p_within < 0.0 || p_within > 1.0 || p_between < 0.0 || p_between > 1.0)
    throw ContractError("gen_msbm: edge probabilities must lie in [0, 1]");
  n = (n / k) * k;  // truncate to a multiple of k
  const int cluster_size = n / k;
  if (h > cluster_size) throw ContractError("gen_msbm: need h <= n/k");

  DatasetBundle bundle;
  bundle.kind = DatasetKind::kGraph;
  bundle.name = "msbm";
  bundle.group_labels.resize(n);
  bundle.ground_truth_clusters.resize(n);
  bundle.num_groups = h;

  // Identical group composition in every cluster: group s receives
  // cluster_size/h members (the first cluster_size % h groups one extra),
  // which makes the planted clustering exactly group fair.
  for (int c = 0; c < k; ++c) {
    const int base = c * cluster_size;
    const int quot = cluster_size / h;
    const int rem = cluster_size % h;
    int offset = 0;
    for (int s = 0; s < h; ++s) {
      const int count = quot + (s < rem ? 1 : 0);
      for (int j = 0; j < count; ++j) {
        bundle.group_labels[base + offset] = s;
        bundle.ground_truth_clusters[base + offset] = c;
        ++offset;
      }
    }
  }

  bundle.adjacency = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool same = bundle.ground_truth_clusters[i] == bundle.ground_truth_clusters[j];
      const double p = same ? p_within : p_between;
      if (rng.uniform() < p) {
        bundle.adjacency(i, j) = 1.0;
        bundle.adjacency(j, i) = 1.0;
      }
    }
  }

  bundle.provenance = json{{"generator", "msbm"},   {"n", n},
                           {"k", k},                {"h", h},
                           {"p_within", p_within},  {"p_between", p_between},
                           {"seed", rng.seed()}}
                          .dump();
  return bundle;
}

DatasetBundle gen_randlaplace(Rng& rng, int n, int h, double group_prob) {
  if (n < 2) throw ContractError("gen_randlaplace: n must be >= 2");
  if (h < 2) throw ContractError("gen_randlaplace: h must be >= 2");
  if (!(group_prob > 0.0 && group_prob < 1.0))
    throw ContractError("gen_randlaplace: group_prob must lie in (0, 1)");

  DatasetBundle bundle;
  bundle.kind = DatasetKind::kGraph;
  bundle.name = "randlaplace";
  bundle.num_groups = h;
  bundle.adjacency = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double w = rng.uniform();
      bundle.adjacency(i, j) = w;
      bundle.adjacency(j, i) = w;
    }

  bundle.group_labels.resize(n);
  for (int i = 0; i < n; ++i) {
    if (h == 2)
      bundle.group_labels[i] = rng.uniform() < group_prob ? 1 : 0;
    else
      bundle.group_labels[i] = static_cast<int>(rng.uniform_below(h));
  }
  // Repair a missing group deterministically rather than failing downstream;
  // vanishingly rare beyond tiny n. Donors are taken from the largest group.
  std::vector<int> counts(h, 0);
  for (int label : bundle.group_labels) ++counts[label];
  for (int s = 0; s < h; ++s) {
    if (counts[s] > 0) continue;
    const int donor_group = static_cast<int>(
        std::max_element(counts.begin(), counts.end()) - counts.begin());
    for (int i = 0; i < n; ++i)
      if (bundle.group_labels[i] == donor_group) {
        bundle.group_labels[i] = s;
        --counts[donor_group];
        ++counts[s];
        break;
      }
  }

  bundle.provenance = json{{"generator", "randlaplace"},
                           {"n", n},
                           {"h", h},
                           {"group_prob", group_prob},
                           {"seed", rng.seed()}}
                          .dump();
  return bundle;
}

namespace {

// Fixed elliptical-cloud parameters; centers are far enough apart that the
// two clusters never overlap (separation >= 4 * largest axis std).
constexpr double kEllipticalCenters[2][2] = {{0.0, 0.0}, {5.0, 0.0}};
constexpr double kEllipticalStd[2] = {1.0, 0.3};

}  // namespace

DatasetBundle gen_elliptical(Rng& rng, int n) {
  if (n < 4 || n % 2 != 0) throw ContractError("gen_elliptical: n must be even and >= 4");

  DatasetBundle bundle;
  bundle.kind = DatasetKind::kPoints;
  bundle.name = "elliptical";
  bundle.num_groups = 2;
  bundle.points.resize(n, 2);
  bundle.group_labels.resize(n);
  bundle.ground_truth_clusters.resize(n);

  const int per_cloud = n / 2;
  for (int c = 0; c < 2; ++c) {
    for (int j = 0; j < per_cloud; ++j) {
      const int i = c * per_cloud + j;
      bundle.points(i, 0) = kEllipticalCenters[c][0] + kEllipticalStd[0] * rng.normal();
      bundle.points(i, 1) = kEllipticalCenters[c][1] + kEllipticalStd[1] * rng.normal();
      bundle.ground_truth_clusters[i] = c;
      bundle.group_labels[i] = j < (per_cloud + 1) / 2 ? 0 : 1;
    }
  }

  bundle.provenance = json{{"generator", "elliptical"},
                           {"n", n},
                           {"centers", {{0.0, 0.0}, {5.0, 0.0}}},
                           {"axis_std", {kEllipticalStd[0], kEllipticalStd[1]}},
                           {"seed", rng.seed()}}
                          .dump();
  return bundle;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char extra_sep) {
  std::vector<std::string> fields;
  std::string current;
  for (char ch : line) {
    if (ch == ' ' || ch == '\t' || ch == extra_sep) {
      if (!current.empty()) fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) fields.push_back(std::move(current));
  return fields;
}

double parse_number(const std::string& text, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno != 0 || text.empty())
    throw ParseError(where + ": expected a number, got '" + text + "'");
  return value;
}

long parse_integer(const std::string& text, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const long value = std::strtol(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || errno != 0 || text.empty())
    throw ParseError(where + ": expected an integer, got '" + text + "'");
  return value;
}

std::vector<int> read_group_file(const std::string& group_path, int* num_groups) {
  std::ifstream in(group_path);
  if (!in) throw ParseError("cannot open group file: " + group_path);
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const long value =
        parse_integer(line, group_path + ":" + std::to_string(line_no));
    if (value < 0)
      throw ParseError(group_path + ":" + std::to_string(line_no) + ": negative group label");
    labels.push_back(static_cast<int>(value));
  }
  if (labels.empty()) throw ParseError("group file is empty: " + group_path);
  *num_groups = 1 + *std::max_element(labels.begin(), labels.end());
  return labels;
}

}  // namespace

DatasetBundle load_edge_list(const std::string& edge_path, const std::string& group_path) {
  DatasetBundle bundle;
  bundle.kind = DatasetKind::kGraph;
  bundle.name = edge_path;
  bundle.group_labels = read_group_file(group_path, &bundle.num_groups);
  const Index n = bundle.size();
  bundle.adjacency = Matrix::Zero(n, n);

  std::ifstream in(edge_path);
  if (!in) throw ParseError("cannot open edge file: " + edge_path);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string where = edge_path + ":" + std::to_string(line_no);
    auto fields = split_fields(line, ',');
    if (fields.empty() || fields[0][0] == '#') continue;
    if (fields.size() != 2 && fields.size() != 3)
      throw ParseError(where + ": expected 'u v [w]'");
    const long u = parse_integer(fields[0], where);
    const long v = parse_integer(fields[1], where);
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError(where + ": node id out of range [0, " + std::to_string(n) + ")");
    const double w = fields.size() == 3 ? parse_number(fields[2], where) : 1.0;
    if (w < 0.0) throw ParseError(where + ": negative edge weight");
    if (u == v) continue;  // self-loops ignored, diagonal stays zero
    const double merged = std::max(bundle.adjacency(u, v), w);
    bundle.adjacency(u, v) = merged;
    bundle.adjacency(v, u) = merged;
  }

  bundle.provenance = json{{"source", "edge_list"},
                           {"edge_path", edge_path},
                           {"group_path", group_path}}
                          .dump();
  validate(bundle);
  return bundle;
}

DatasetBundle load_feature_csv(const std::string& path, const std::string& group_column) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open csv file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_fields(line, ',');
  Index group_idx = -1;
  for (Index c = 0; c < static_cast<Index>(header.size()); ++c)
    if (header[c] == group_column) group_idx = c;
  if (group_idx < 0)
    throw ParseError(path + ": group column '" + group_column + "' not found in header");

  const Index num_cols = static_cast<Index>(header.size());
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::vector<std::string> encoding;  // first-appearance order
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_fields(line, ',');
    if (static_cast<Index>(fields.size()) != num_cols)
      throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(num_cols) + " fields, got " + std::to_string(fields.size()));
    std::vector<double> row;
    row.reserve(num_cols - 1);
    for (Index c = 0; c < num_cols; ++c) {
      if (c == group_idx) {
        const auto it = std::find(encoding.begin(), encoding.end(), fields[c]);
        if (it == encoding.end()) {
          labels.push_back(static_cast<int>(encoding.size()));
          encoding.push_back(fields[c]);
        } else {
          labels.push_back(static_cast<int>(it - encoding.begin()));
        }
      } else {
        row.push_back(parse_number(fields[c], path + ":" + std::to_string(line_no) + ":column '" +
                                                  header[c] + "'"));
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": no data rows");

  DatasetBundle bundle;
  bundle.kind = DatasetKind::kPoints;
  bundle.name = path;
  bundle.num_groups = static_cast<int>(encoding.size());
  bundle.group_labels = std::move(labels);
  bundle.points.resize(static_cast<Index>(rows.size()), num_cols - 1);
  for (Index i = 0; i < bundle.points.rows(); ++i)
    for (Index c = 0; c < num_cols - 1; ++c) bundle.points(i, c) = rows[i][c];

  bundle.provenance = json{{"source", "feature_csv"},
                           {"path", path},
                           {"group_column", group_column},
                           {"group_encoding", encoding}}
                          .dump();
  validate(bundle);
  return bundle;
}

void write_edge_list(const DatasetBundle& bundle, const std::string& edge_path,
                     const std::string& group_path) {
  if (bundle.kind != DatasetKind::kGraph)
    throw ContractError("write_edge_list: bundle is not a graph");
  std::ofstream edges(edge_path);
  if (!edges) throw ParseError("cannot write edge file: " + edge_path);
  const Index n = bundle.size();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (bundle.adjacency(i, j) != 0.0)
        edges << i << ' ' << j << ' ' << format_double(bundle.adjacency(i, j)) << '\n';

  std::ofstream groups(group_path);
  if (!groups) throw ParseError("cannot write group file: " + group_path);
  for (int label : bundle.group_labels) groups << label << '\n';
}

void write_feature_csv(const DatasetBundle& bundle, const std::string& path) {
  if (bundle.kind != DatasetKind::kPoints)
    throw ContractError("write_feature_csv: bundle is not a point set");
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write csv file: " + path);
  const Index d = bundle.points.cols();
  for (Index c = 0; c < d; ++c) out << 'x' << c << ',';
  out << "group\n";
  for (Index i = 0; i < bundle.points.rows(); ++i) {
    for (Index c = 0; c < d; ++c) out << format_double(bundle.points(i, c)) << ',';
    out << 'g' << bundle.group_labels[i] << '\n';
  }
}

}  // namespace fairsc
