#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "otad/common.hpp"

namespace otad::io {

// Little-endian primitive encoding shared by the dataset cache, atlas and
// checkpoint files. Every file starts with a 4-byte magic and a u32 version.

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void magic(std::string_view tag);
  void u8(std::uint8_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void i32(std::int32_t v);
  void f64(double v);
  void str(const std::string& s);
  /// Rows-major dump of a dense matrix, shape first.
  void matrix(const Matrix& m);
  void vector(const Vector& v);

 private:
  std::ostream& out_;
};

class Reader {
 public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  void expect_magic(std::string_view tag);
  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  std::int32_t i32();
  double f64();
  std::string str();
  Matrix matrix();
  Vector vector();

 private:
  void read_bytes(char* dst, std::size_t n);

  std::istream& in_;
  std::string source_;
};

/// Reads a whole file into memory; throws DataError when it cannot be opened.
std::vector<char> read_file(const std::string& path);

}  // namespace otad::io
