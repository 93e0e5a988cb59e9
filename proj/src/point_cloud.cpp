// Copyright 2026 The mmlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mmlab/point_cloud.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <system_error>

namespace mmlab {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords, SeedProvenance provenance)
    : dim_(dim), coords_(std::move(coords)), provenance_(std::move(provenance)) {
  if (dim_ == 0) throw std::invalid_argument("PointCloud: dim must be positive");
  if (coords_.empty()) throw std::invalid_argument("PointCloud: needs at least one point");
  if (coords_.size() % dim_ != 0) {
    throw std::invalid_argument("PointCloud: coordinate count is not a multiple of dim");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("PointCloud: non-finite coordinate");
  }
}

std::vector<double> PointCloud::column(std::size_t j) const {
  if (j >= dim_) throw std::invalid_argument("PointCloud::column: index out of range");
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coords_[i * dim_ + j];
  return out;
}

bool PointCloud::identical(const PointCloud& other) const noexcept {
  return dim_ == other.dim_ && coords_.size() == other.coords_.size() &&
         std::memcmp(coords_.data(), other.coords_.data(), coords_.size() * sizeof(double)) == 0;
}

double distance(std::span<const double> x, std::span<const double> y) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double norm(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

namespace {

template <typename U>
void put_le(std::ostream& out, U value) {
  std::array<char, sizeof(U)> buf{};
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    buf[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  }
  out.write(buf.data(), buf.size());
}

template <typename U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (!in) throw std::runtime_error("read_binary: truncated input");
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(buf[i]) << (8 * i);
  return value;
}

}  // namespace

void write_binary(const PointCloud& cloud, std::ostream& out) {
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(cloud.dim()));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(cloud.size()));
  for (double c : cloud.coords()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(c));
  if (!out) throw std::runtime_error("write_binary: stream failure");
}

PointCloud read_binary(std::istream& in) {
  const auto dim = get_le<std::uint32_t>(in);
  const auto m = get_le<std::uint64_t>(in);
  if (dim == 0 || m == 0) throw std::runtime_error("read_binary: empty cloud header");
  std::vector<double> coords(static_cast<std::size_t>(dim) * m);
  for (double& c : coords) c = std::bit_cast<double>(get_le<std::uint64_t>(in));
  return PointCloud(dim, std::move(coords));
}

void write_csv(const PointCloud& cloud, std::ostream& out) {
  std::array<char, 64> buf{};
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) out.put(',');
      auto res = std::to_chars(buf.data(), buf.data() + buf.size(), p[j]);
      out.write(buf.data(), res.ptr - buf.data());
    }
    out.put('\n');
  }
  if (!out) throw std::runtime_error("write_csv: stream failure");
}

PointCloud read_csv(std::istream& in) {
  std::vector<double> coords;
  std::size_t dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t count = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      double v = 0.0;
      auto res = std::from_chars(p, comma, v);
      if (res.ec != std::errc() || res.ptr != comma) {
        throw std::runtime_error("read_csv: bad number on line " + std::to_string(lineno));
      }
      coords.push_back(v);
      ++count;
      p = comma + 1;
    }
    if (dim == 0) dim = count;
    if (count != dim) throw std::runtime_error("read_csv: ragged row " + std::to_string(lineno));
  }
  if (dim == 0) throw std::runtime_error("read_csv: no rows");
  return PointCloud(dim, std::move(coords));
}

void save_binary(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_binary(cloud, out);
}

PointCloud load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return read_binary(in);
}

}  // namespace mmlab
