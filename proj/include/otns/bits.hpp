#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace otns {

// A bit string stored one bit per byte (values 0 or 1), index 0 first.
using Bits = std::vector<std::uint8_t>;

inline void check_bit_values(const Bits& b) {
  for (std::uint8_t v : b)
    if (v > 1) throw std::invalid_argument("Bits element out of range (expected 0 or 1)");
}

inline Bits xor_bits(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) throw std::length_error("xor_bits: length mismatch");
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

inline std::size_t hamming_weight(const Bits& b) {
  std::size_t w = 0;
  for (std::uint8_t v : b) w += v;
  return w;
}

// Pack to 64-bit words, bit i of the string at bit (i % 64) of word (i / 64).
inline std::vector<std::uint64_t> pack_words(const Bits& b) {
  std::vector<std::uint64_t> w((b.size() + 63) / 64, 0);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) w[i / 64] |= std::uint64_t{1} << (i % 64);
  return w;
}

// Hex encoding for serialized bit strings: MSB-first within the string, i.e.
// bit 0 is the most significant bit of the first hex digit.  Length is carried
// separately so trailing pad bits (always 0) are unambiguous.
inline std::string bits_to_hex(const Bits& b) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve((b.size() + 3) / 4);
  for (std::size_t i = 0; i < b.size(); i += 4) {
    unsigned nibble = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nibble <<= 1;
      if (i + j < b.size() && b[i + j]) nibble |= 1;
    }
    out.push_back(digits[nibble]);
  }
  return out;
}

inline Bits bits_from_hex(std::string_view hex, std::size_t len) {
  if (hex.size() != (len + 3) / 4)
    throw std::invalid_argument("bits_from_hex: hex length does not match bit length");
  Bits out(len, 0);
  for (std::size_t i = 0; i < hex.size(); ++i) {
    char c = hex[i];
    unsigned nibble;
    if (c >= '0' && c <= '9') nibble = unsigned(c - '0');
    else if (c >= 'a' && c <= 'f') nibble = unsigned(c - 'a') + 10;
    else if (c >= 'A' && c <= 'F') nibble = unsigned(c - 'A') + 10;
    else throw std::invalid_argument("bits_from_hex: invalid hex digit");
    for (std::size_t j = 0; j < 4; ++j) {
      std::size_t pos = 4 * i + j;
      if (pos < len) out[pos] = (nibble >> (3 - j)) & 1;
      else if ((nibble >> (3 - j)) & 1)
        throw std::invalid_argument("bits_from_hex: nonzero pad bit");
    }
  }
  return out;
}

// Subsequence of x at the given positions.
template <typename Index>
inline Bits select_bits(const Bits& x, const std::vector<Index>& idx) {
  Bits out;
  out.reserve(idx.size());
  for (Index i : idx) {
    if (i < 0 || std::size_t(i) >= x.size()) throw std::out_of_range("select_bits: index out of range");
    out.push_back(x[std::size_t(i)]);
  }
  return out;
}

}  // namespace otns
