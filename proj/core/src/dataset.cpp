#include "msns/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace msns {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double map_label(const std::string& token, const LabelMap& label_map, const std::string& where) {
  if (!label_map.empty()) {
    auto it = label_map.find(token);
    if (it == label_map.end()) {
      throw DataError(where + ": label '" + token + "' not covered by the label map");
    }
    return static_cast<double>(it->second);
  }
  double v = 0;
  try {
    std::size_t pos = 0;
    v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw DataError(where + ": cannot parse label '" + token + "'");
  }
  if (v != 1.0 && v != -1.0) {
    throw DataError(where + ": label '" + token + "' is not +-1 and no label map was given");
  }
  return v;
}

double parse_value(const std::string& token, const std::string& where) {
  try {
    std::size_t pos = 0;
    double v = std::stod(token, &pos);
    if (pos != token.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite");
    return v;
  } catch (const std::exception&) {
    throw DataError(where + ": bad numeric token '" + token + "'");
  }
}

Dataset pack(std::vector<Sample> samples, long n, std::string name, long dropped) {
  if (samples.empty()) throw DataError(name + ": empty dataset");
  Dataset d;
  d.features.resize(static_cast<long>(samples.size()), n);
  d.labels.resize(static_cast<long>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    d.features.row(static_cast<long>(i)) = samples[i].z.transpose();
    d.labels[static_cast<long>(i)] = samples[i].y;
  }
  d.name = std::move(name);
  d.dropped_rows = dropped;
  d.validate();
  return d;
}

}  // namespace

Sample Dataset::sample(long i) const { return Sample{features.row(i).transpose(), labels[i]}; }

void Dataset::validate() const {
  if (size() < 1) throw DataError(name + ": dataset must contain at least one sample");
  if (features.rows() != labels.size()) {
    throw DataError(name + ": feature/label count mismatch");
  }
  if (!features.allFinite()) throw DataError(name + ": non-finite feature entries");
  for (long i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1.0 && labels[i] != -1.0) {
      throw DataError(name + ": label at row " + std::to_string(i) + " is not +-1");
    }
  }
}

LabelMap parse_label_map(const std::string& text) {
  LabelMap map;
  std::string token;
  std::stringstream ss(text);
  // accept both space- and comma-separated "raw:mapped" pairs
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::stringstream parts(normalized);
  while (parts >> token) {
    std::size_t colon = token.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= token.size()) {
      throw DataError("label map: bad pair '" + token + "'");
    }
    std::string raw = token.substr(0, colon);
    std::string mapped = token.substr(colon + 1);
    int v = 0;
    try {
      v = std::stoi(mapped);
    } catch (const std::exception&) {
      throw DataError("label map: bad target in '" + token + "'");
    }
    if (v != 1 && v != -1) throw DataError("label map: target must be +-1 in '" + token + "'");
    map[raw] = v;
  }
  if (map.empty()) throw DataError("label map: no pairs found");
  return map;
}

SyntheticData generate_synthetic(long n, long train_size, long test_size, double t,
                                 std::uint64_t seed) {
  if (n < 1 || train_size < 1 || test_size < 1) {
    throw std::invalid_argument("generate_synthetic: sizes must be >= 1");
  }
  if (!(t > 0)) throw std::invalid_argument("generate_synthetic: t must be positive");

  Engine xbar_rng = make_engine(derive_seed(seed, {stream::dataset_xbar}));
  Vector x_bar = sample_ball_volume(t, n, xbar_rng);

  auto draw = [&](long count, std::uint64_t tag, const std::string& name) {
    Engine rng = make_engine(derive_seed(seed, {tag}));
    std::bernoulli_distribution mask(0.1);
    std::normal_distribution<double> normal(0.0, 1.0);
    Dataset d;
    d.features.resize(count, n);
    d.labels.resize(count);
    for (long i = 0; i < count; ++i) {
      for (long j = 0; j < n; ++j) {
        // draw both so the stream advances identically regardless of mask
        const bool keep = mask(rng);
        const double g = normal(rng);
        d.features(i, j) = keep ? g : 0.0;
      }
      const double score = d.features.row(i).dot(x_bar);
      d.labels[i] = score >= 0 ? 1.0 : -1.0;
    }
    d.name = name;
    return d;
  };

  SyntheticData out;
  out.train = draw(train_size, stream::dataset_train, "synthetic-train");
  out.test = draw(test_size, stream::dataset_test, "synthetic-test");
  out.x_bar = std::move(x_bar);
  return out;
}

Dataset load_csv(const std::string& path, const LabelMap& label_map_in) {
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot open '" + path + "'");

  LabelMap label_map = label_map_in;
  std::vector<Sample> samples;
  long n = -1;
  long dropped = 0;
  std::string line;
  long line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = path + ":" + std::to_string(line_no);
    std::string body = trim(line);
    if (body.empty()) continue;
    if (body[0] == '#') {
      if (body.rfind("#label_map", 0) == 0) {
        label_map = parse_label_map(trim(body.substr(10)));
      }
      continue;
    }

    std::vector<std::string> fields;
    std::stringstream ss(body);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!body.empty() && body.back() == ',') fields.push_back("");

    if (n < 0) n = static_cast<long>(fields.size()) - 1;
    if (static_cast<long>(fields.size()) != n + 1) {
      throw DataError(where + ": expected " + std::to_string(n + 1) + " columns, got " +
                      std::to_string(fields.size()));
    }
    if (n < 1) throw DataError(where + ": rows need at least one feature column");

    const bool missing = std::any_of(fields.begin(), fields.end(), [](const std::string& f) {
      return f.empty() || f == "?";
    });
    if (missing) {
      ++dropped;
      continue;
    }

    Sample s;
    s.y = map_label(fields[0], label_map, where);
    s.z.resize(n);
    for (long j = 0; j < n; ++j) s.z[j] = parse_value(fields[static_cast<std::size_t>(j) + 1], where);
    samples.push_back(std::move(s));
  }

  return pack(std::move(samples), n, path, dropped);
}

Dataset load_libsvm(const std::string& path, const LabelMap& label_map) {
  std::ifstream in(path);
  if (!in) throw DataError("libsvm: cannot open '" + path + "'");

  struct SparseRow {
    double y;
    std::vector<std::pair<long, double>> entries;
  };
  std::vector<SparseRow> rows;
  long max_index = 0;
  std::string line;
  long line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = path + ":" + std::to_string(line_no);
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;

    std::stringstream ss(body);
    std::string token;
    if (!(ss >> token)) continue;

    SparseRow row;
    row.y = map_label(token, label_map, where);

    long prev_index = 0;
    while (ss >> token) {
      std::size_t colon = token.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 >= token.size()) {
        throw DataError(where + ": bad feature token '" + token + "'");
      }
      long idx = 0;
      try {
        idx = std::stol(token.substr(0, colon));
      } catch (const std::exception&) {
        throw DataError(where + ": bad feature index in '" + token + "'");
      }
      if (idx < 1) throw DataError(where + ": feature indices are 1-based, got " + std::to_string(idx));
      if (idx <= prev_index) {
        throw DataError(where + ": non-monotone feature index " + std::to_string(idx));
      }
      prev_index = idx;
      const double val = parse_value(token.substr(colon + 1), where);
      row.entries.emplace_back(idx, val);
      max_index = std::max(max_index, idx);
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) throw DataError(path + ": empty dataset");

  std::vector<Sample> samples;
  samples.reserve(rows.size());
  const long n = std::max<long>(max_index, 1);
  for (const auto& row : rows) {
    Sample s;
    s.y = row.y;
    s.z = Vector::Zero(n);
    for (const auto& [idx, val] : row.entries) s.z[idx - 1] = val;
    samples.push_back(std::move(s));
  }
  return pack(std::move(samples), n, path, 0);
}

void write_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("csv: cannot write '" + path + "'");
  for (long i = 0; i < data.size(); ++i) {
    out << (data.labels[i] > 0 ? "1" : "-1");
    for (long j = 0; j < data.dim(); ++j) out << ',' << format_g17(data.features(i, j));
    out << '\n';
  }
  if (!out) throw DataError("csv: write failed for '" + path + "'");
}

std::vector<std::vector<long>> kfold_indices(long count, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("kfold: k must be >= 2");
  if (count < k) throw DataError("kfold: fewer samples than folds");
  std::vector<long> order(static_cast<std::size_t>(count));
  std::iota(order.begin(), order.end(), 0L);
  Engine rng = make_engine(seed);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::vector<long>> folds(static_cast<std::size_t>(k));
  const long base = count / k;
  const long extra = count % k;
  long pos = 0;
  for (int f = 0; f < k; ++f) {
    const long len = base + (f < extra ? 1 : 0);
    folds[static_cast<std::size_t>(f)].assign(order.begin() + pos, order.begin() + pos + len);
    pos += len;
  }
  return folds;
}

Dataset subset(const Dataset& data, const std::vector<long>& indices) {
  if (indices.empty()) throw DataError(data.name + ": empty subset");
  Dataset out;
  out.features.resize(static_cast<long>(indices.size()), data.dim());
  out.labels.resize(static_cast<long>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out.features.row(static_cast<long>(i)) = data.features.row(indices[i]);
    out.labels[static_cast<long>(i)] = data.labels[indices[i]];
  }
  out.name = data.name + "-subset";
  return out;
}

std::vector<std::pair<Dataset, Dataset>> kfold_split(const Dataset& data, int k,
                                                     std::uint64_t seed) {
  const auto folds = kfold_indices(data.size(), k, seed);
  std::vector<std::pair<Dataset, Dataset>> out;
  out.reserve(folds.size());
  for (std::size_t v = 0; v < folds.size(); ++v) {
    std::vector<long> train_idx;
    train_idx.reserve(static_cast<std::size_t>(data.size()) - folds[v].size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
      if (f == v) continue;
      train_idx.insert(train_idx.end(), folds[f].begin(), folds[f].end());
    }
    out.emplace_back(subset(data, train_idx), subset(data, folds[v]));
  }
  return out;
}

}  // namespace msns
