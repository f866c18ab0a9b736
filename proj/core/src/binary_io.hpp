#pragma once

// Little-endian primitive readers/writers shared by the binary formats.

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "tetot/errors.hpp"

namespace tetot::detail {

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

class BinaryReader {
 public:
  explicit BinaryReader(const std::filesystem::path& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw IoError("cannot open " + path.string());
  }

  std::string where() const { return path_.string() + "@" + std::to_string(offset_); }

  void magic(std::string_view expected) {
    char buf[8];
    read(buf, 8);
    if (std::string_view(buf, 8) != expected)
      throw FormatError(path_.string() + ": bad magic (expected " + std::string(expected) + ")");
  }
  void version(std::uint32_t expected) {
    const auto v = u32();
    if (v != expected) throw FormatError(path_.string() + ": unsupported version " + std::to_string(v));
  }

  std::uint32_t u32() { return pod<std::uint32_t>(); }
  std::uint64_t u64() { return pod<std::uint64_t>(); }
  std::int64_t i64() { return pod<std::int64_t>(); }
  float f32() { return pod<float>(); }
  double f64() { return pod<double>(); }

  void expect_end() {
    if (in_.peek() != std::char_traits<char>::eof())
      throw FormatError(where() + ": trailing bytes after payload");
  }

 private:
  template <typename T>
  T pod() {
    T v;
    read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
  }
  void read(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw FormatError(where() + ": truncated file");
    offset_ += n;
  }

  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t offset_ = 0;
};

class BinaryWriter {
 public:
  explicit BinaryWriter(const std::filesystem::path& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  }

  void magic(std::string_view m) { write(m.data(), m.size()); }
  void u32(std::uint32_t v) { pod(v); }
  void u64(std::uint64_t v) { pod(v); }
  void i64(std::int64_t v) { pod(v); }
  void f32(float v) { pod(v); }
  void f64(double v) { pod(v); }

  void close() {
    out_.close();
    if (!out_) throw IoError("failed writing " + path_.string());
  }

 private:
  template <typename T>
  void pod(T v) {
    write(reinterpret_cast<const char*>(&v), sizeof(T));
  }
  void write(const char* src, std::size_t n) {
    out_.write(src, static_cast<std::streamsize>(n));
    if (!out_) throw IoError("failed writing " + path_.string());
  }

  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace tetot::detail
