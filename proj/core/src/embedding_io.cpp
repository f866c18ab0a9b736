// EMB1 / LBL / HED1 readers and writers, plus the CSV fallback.
//
// All binary formats are little-endian with an 8-byte ASCII magic followed by
// a u32 version. Features and head parameters are stored as f32 and widened
// to f64 on load.

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "binary_io.hpp"
#include "tetot/data_model.hpp"
#include "tetot/errors.hpp"

namespace tetot {
namespace {

constexpr std::string_view kEmbMagic = "TETOTEMB";
constexpr std::string_view kLblMagic = "TETOTLBL";
constexpr std::string_view kHedMagic = "TETOTHED";
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kDtypeF32 = 1;

// Refuse absurd headers before allocating.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 34;

void check_finite(const Matrix& m, const std::filesystem::path& path) {
  if (!m.allFinite()) throw DataError("non-finite value in " + path.string());
}

bool starts_with_magic(const std::filesystem::path& path, std::string_view magic) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 8> buf{};
  in.read(buf.data(), buf.size());
  return in.gcount() == 8 && std::string_view(buf.data(), 8) == magic;
}

bool looks_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<char, 8> buf{};
  in.read(buf.data(), buf.size());
  const auto n = in.gcount();
  // Any 8 leading uppercase letters claim to be a magic; CSV never starts that way.
  if (n < 8) return false;
  return std::all_of(buf.begin(), buf.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

Matrix read_f32_matrix(detail::BinaryReader& r, std::uint64_t rows, std::uint64_t cols) {
  if (rows == 0 || cols == 0) throw FormatError(r.where() + ": empty matrix");
  if (rows > kMaxElements / cols) throw FormatError(r.where() + ": matrix too large");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = r.f32();
  return m;
}

void write_f32_matrix(detail::BinaryWriter& w, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) w.f32(static_cast<float>(m(i, j)));
}

struct LabelFile {
  std::vector<std::int64_t> labels;
  std::size_t num_classes;
};

LabelFile read_labels(const std::filesystem::path& path) {
  detail::BinaryReader r(path);
  r.magic(kLblMagic);
  r.version(kVersion);
  const std::uint64_t count = r.u64();
  const std::uint32_t k = r.u32();
  if (count > kMaxElements) throw FormatError(r.where() + ": label count too large");
  LabelFile out{std::vector<std::int64_t>(count), k};
  for (auto& l : out.labels) l = r.i64();
  r.expect_end();
  return out;
}

void write_labels(const std::vector<std::int64_t>& labels, std::size_t k,
                  const std::filesystem::path& path) {
  detail::BinaryWriter w(path);
  w.magic(kLblMagic);
  w.u32(kVersion);
  w.u64(labels.size());
  w.u32(static_cast<std::uint32_t>(k));
  for (auto l : labels) w.i64(l);
  w.close();
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

EmbeddingSet load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::vector<std::vector<double>> rows;
  std::vector<std::int64_t> labels;
  bool header_seen = false;
  bool has_label_column = false;
  std::size_t width = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_csv(line);
    std::vector<double> values(fields.size());
    bool numeric = true;
    for (std::size_t c = 0; c < fields.size() && numeric; ++c) numeric = parse_double(fields[c], values[c]);
    if (!numeric) {
      if (header_seen || !rows.empty())
        throw FormatError(path.string() + ":" + std::to_string(line_no) + ": non-numeric field");
      header_seen = true;
      has_label_column = !fields.empty() && fields.back() == "label";
      width = fields.size();
      continue;
    }
    if (width == 0) width = fields.size();
    if (fields.size() != width)
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(width) + " fields, got " + std::to_string(fields.size()));
    if (has_label_column) {
      const double l = values.back();
      if (l != std::floor(l) || std::abs(l) > 1e15)
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": label is not an integer");
      labels.push_back(static_cast<std::int64_t>(l));
      values.pop_back();
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw FormatError(path.string() + ": no data rows");
  const std::size_t cols = rows.front().size();
  if (cols == 0) throw FormatError(path.string() + ": no feature columns");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  check_finite(m, path);
  if (!has_label_column) return EmbeddingSet(std::move(m), std::nullopt, 0, path.stem().string());
  const auto max_label = *std::max_element(labels.begin(), labels.end());
  const std::size_t k = max_label < 0 ? 1 : static_cast<std::size_t>(max_label) + 1;
  return EmbeddingSet(std::move(m), std::move(labels), k, path.stem().string());
}

}  // namespace

std::filesystem::path label_sidecar_path(const std::filesystem::path& embedding_path) {
  auto p = embedding_path;
  p.replace_extension(".lbl");
  return p;
}

EmbeddingSet load_embedding_set(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw IoError("no such file: " + path.string());
  if (!looks_binary(path)) return load_csv(path);
  if (!starts_with_magic(path, kEmbMagic))
    throw FormatError(path.string() + ": bad magic (expected TETOTEMB)");

  detail::BinaryReader r(path);
  r.magic(kEmbMagic);
  r.version(kVersion);
  const std::uint32_t dtype = r.u32();
  if (dtype != kDtypeF32) throw FormatError(r.where() + ": unsupported dtype code " + std::to_string(dtype));
  const std::uint64_t rows = r.u64();
  const std::uint64_t cols = r.u64();
  Matrix features = read_f32_matrix(r, rows, cols);
  r.expect_end();
  check_finite(features, path);

  std::optional<std::vector<std::int64_t>> labels;
  std::size_t k = 0;
  const auto sidecar = label_sidecar_path(path);
  if (sidecar != path && std::filesystem::exists(sidecar)) {
    auto lf = read_labels(sidecar);
    if (lf.labels.size() != rows)
      throw FormatError(sidecar.string() + ": " + std::to_string(lf.labels.size()) +
                        " labels for " + std::to_string(rows) + " rows");
    if (lf.num_classes == 0) throw DataError(sidecar.string() + ": num_classes is 0");
    labels = std::move(lf.labels);
    k = lf.num_classes;
  }
  try {
    return EmbeddingSet(std::move(features), std::move(labels), k, path.stem().string());
  } catch (const InputError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_embedding_set(const EmbeddingSet& set, const std::filesystem::path& path) {
  detail::BinaryWriter w(path);
  w.magic(kEmbMagic);
  w.u32(kVersion);
  w.u32(kDtypeF32);
  w.u64(set.rows());
  w.u64(set.dim());
  write_f32_matrix(w, set.features());
  w.close();
  if (set.has_labels()) write_labels(*set.labels(), set.num_classes(), label_sidecar_path(path));
}

ClassifierHead load_classifier_head(const std::filesystem::path& path) {
  detail::BinaryReader r(path);
  r.magic(kHedMagic);
  r.version(kVersion);
  const std::uint64_t k = r.u64();
  const std::uint64_t dim = r.u64();
  Matrix weights = read_f32_matrix(r, k, dim);
  Vector bias(static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < bias.size(); ++i) bias(i) = r.f32();
  r.expect_end();
  if (!weights.allFinite() || !bias.allFinite()) throw DataError("non-finite value in " + path.string());
  try {
    return ClassifierHead(std::move(weights), std::move(bias));
  } catch (const InputError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void save_classifier_head(const ClassifierHead& head, const std::filesystem::path& path) {
  detail::BinaryWriter w(path);
  w.magic(kHedMagic);
  w.u32(kVersion);
  w.u64(head.num_classes());
  w.u64(head.dim());
  write_f32_matrix(w, head.weights());
  for (Eigen::Index i = 0; i < head.bias().size(); ++i) w.f32(static_cast<float>(head.bias()(i)));
  w.close();
}

}  // namespace tetot
