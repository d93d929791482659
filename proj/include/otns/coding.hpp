#pragma once

// Syndrome-based error correction over small binary linear codes (coset-leader
// decoding, exhaustive tables for block lengths <= 16) and the 2-universal
// binary Toeplitz hash used for privacy amplification.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "otns/bits.hpp"

namespace otns {

// A binary [n_b, k] code given by its parity-check matrix, decoded to
// correction radius t.  Construction verifies full row rank and that all
// error patterns of weight <= t have distinct syndromes, and precomputes a
// coset-leader table over all 2^(n_b - k) syndromes.
class LinearCode {
 public:
  // parity_rows: one mask per row of H; bit j of a mask is column j.
  LinearCode(int block_len, int dimension, std::vector<std::uint16_t> parity_rows,
             int correction_radius, std::string name)
      : n_(block_len), k_(dimension), t_(correction_radius), rows_(std::move(parity_rows)),
        name_(std::move(name)) {
    if (n_ < 1 || n_ > 16) throw std::invalid_argument("LinearCode: block_len must be in [1, 16]");
    if (k_ < 0 || k_ > n_) throw std::invalid_argument("LinearCode: dimension outside [0, block_len]");
    if (t_ < 0 || t_ > n_) throw std::invalid_argument("LinearCode: correction radius outside range");
    if (int(rows_.size()) != n_ - k_)
      throw std::invalid_argument("LinearCode: expected block_len - dimension parity rows");
    const std::uint16_t col_mask = std::uint16_t((1u << n_) - 1u);
    for (std::uint16_t row : rows_)
      if (row & ~col_mask) throw std::invalid_argument("LinearCode: parity row exceeds block length");
    check_rank();
    build_leader_table();
    check_radius();
  }

  static const LinearCode& hamming74() {
    // Columns of H are the binary representations of 1..7 (LSB in row 0), so
    // a single-bit error at position j yields syndrome j+1.
    static const LinearCode c(7, 4, {0x55, 0x66, 0x78}, 1, "hamming74");
    return c;
  }
  static const LinearCode& repetition31() {
    static const LinearCode c(3, 1, {0x3, 0x5}, 1, "repetition31");
    return c;
  }
  static const LinearCode& extended_hamming84() {
    // Hamming [7,4] rows padded with a zero column plus an overall-parity
    // row; corrects single errors and flags (detects) all double errors.
    static const LinearCode c(8, 4, {0x55, 0x66, 0x78, 0xFF}, 1, "extended_hamming84");
    return c;
  }
  static const LinearCode& by_name(const std::string& name) {
    if (name == "hamming74") return hamming74();
    if (name == "repetition31") return repetition31();
    if (name == "extended_hamming84") return extended_hamming84();
    throw std::invalid_argument("unknown code: " + name +
                                " (expected hamming74, repetition31, extended_hamming84)");
  }

  int block_len() const { return n_; }
  int dimension() const { return k_; }
  int correction_radius() const { return t_; }
  int syndrome_bits() const { return n_ - k_; }
  const std::string& name() const { return name_; }

  // Syndrome of one block; bit i of the result is row i of H dotted with w.
  std::uint16_t block_syndrome(std::uint16_t w) const {
    std::uint16_t s = 0;
    for (int i = 0; i < n_ - k_; ++i)
      s |= std::uint16_t((std::popcount(unsigned(rows_[std::size_t(i)] & w)) & 1) << i);
    return s;
  }

  std::uint16_t coset_leader(std::uint16_t syndrome) const { return leaders_[syndrome]; }
  int coset_leader_weight(std::uint16_t syndrome) const { return leader_weight_[syndrome]; }

  // Parity-check matrix as a row-major bit string (row 0 first, column 0 first).
  Bits parity_check_bits() const {
    Bits out;
    out.reserve(std::size_t((n_ - k_) * n_));
    for (std::uint16_t row : rows_)
      for (int j = 0; j < n_; ++j) out.push_back(std::uint8_t((row >> j) & 1));
    return out;
  }

 private:
  void check_rank() const {
    // Gaussian elimination over GF(2); all rows must be independent.
    std::vector<std::uint16_t> rows = rows_;
    int rank = 0;
    for (int col = 0; col < n_ && rank < int(rows.size()); ++col) {
      int pivot = -1;
      for (int i = rank; i < int(rows.size()); ++i)
        if ((rows[std::size_t(i)] >> col) & 1) { pivot = i; break; }
      if (pivot < 0) continue;
      std::swap(rows[std::size_t(rank)], rows[std::size_t(pivot)]);
      for (int i = 0; i < int(rows.size()); ++i)
        if (i != rank && ((rows[std::size_t(i)] >> col) & 1))
          rows[std::size_t(i)] ^= rows[std::size_t(rank)];
      ++rank;
    }
    if (rank != int(rows_.size()))
      throw std::invalid_argument("LinearCode: parity-check matrix is rank deficient");
  }

  void build_leader_table() {
    const std::size_t syndromes = std::size_t(1) << (n_ - k_);
    leaders_.assign(syndromes, 0);
    leader_weight_.assign(syndromes, std::uint8_t(0xFF));
    // Enumerate error patterns in order of increasing weight; the first
    // pattern reaching a syndrome is its minimum-weight coset leader.
    const std::uint32_t patterns = std::uint32_t(1) << n_;
    for (int w = 0; w <= n_; ++w) {
      for (std::uint32_t e = 0; e < patterns; ++e) {
        if (std::popcount(e) != w) continue;
        std::uint16_t s = block_syndrome(std::uint16_t(e));
        if (leader_weight_[s] == 0xFF) {
          leaders_[s] = std::uint16_t(e);
          leader_weight_[s] = std::uint8_t(w);
        }
      }
    }
  }

  void check_radius() const {
    // Every pattern of weight <= t must be its own coset leader, i.e. all
    // such syndromes are distinct.
    const std::uint32_t patterns = std::uint32_t(1) << n_;
    for (std::uint32_t e = 0; e < patterns; ++e) {
      if (std::popcount(e) > t_) continue;
      std::uint16_t s = block_syndrome(std::uint16_t(e));
      if (leaders_[s] != std::uint16_t(e))
        throw std::invalid_argument(
            "LinearCode: error patterns of weight <= t do not have distinct syndromes");
    }
  }

  int n_, k_, t_;
  std::vector<std::uint16_t> rows_;
  std::string name_;
  std::vector<std::uint16_t> leaders_;
  std::vector<std::uint8_t> leader_weight_;
};

struct Syndrome {
  Bits bits;  // length (n_b - k) * number_of_blocks
};

namespace detail {
inline std::uint16_t block_word(const Bits& x, std::size_t block, int n_b) {
  std::uint16_t w = 0;
  for (int j = 0; j < n_b; ++j) {
    std::size_t pos = block * std::size_t(n_b) + std::size_t(j);
    if (pos < x.size() && x[pos]) w |= std::uint16_t(1u << j);
  }
  return w;
}
}  // namespace detail

// Per-block syndromes of x, concatenated (linear in x).  Inputs whose length
// is not a block multiple are zero-padded when allow_pad is set (the pad is
// deterministic and public), otherwise rejected.
inline Syndrome syndrome(const LinearCode& code, const Bits& x, bool allow_pad = true) {
  const int n_b = code.block_len();
  if (!allow_pad && x.size() % std::size_t(n_b) != 0)
    throw std::length_error("syndrome: input length not a multiple of block length");
  const std::size_t blocks = (x.size() + std::size_t(n_b) - 1) / std::size_t(n_b);
  Syndrome out;
  out.bits.reserve(blocks * std::size_t(code.syndrome_bits()));
  for (std::size_t b = 0; b < blocks; ++b) {
    std::uint16_t s = code.block_syndrome(detail::block_word(x, b, n_b));
    for (int i = 0; i < code.syndrome_bits(); ++i)
      out.bits.push_back(std::uint8_t((s >> i) & 1));
  }
  return out;
}

struct DecodeResult {
  Bits corrected;                         // same length as the received string
  std::vector<std::uint8_t> block_failed; // 1 where the coset leader exceeds radius t
  bool any_failed = false;
};

// Coset-leader decoding of y against the announced syndrome s: per block the
// minimum-weight e with H e = s_block xor H y_block is applied.  Exact
// recovery is guaranteed when the true error weight per block is <= t; blocks
// whose leader weight exceeds t are flagged as failures.
inline DecodeResult decode(const LinearCode& code, const Bits& y, const Syndrome& s) {
  const int n_b = code.block_len();
  const int sb = code.syndrome_bits();
  if (sb == 0) {
    DecodeResult out;
    out.corrected = y;
    out.block_failed.assign((y.size() + std::size_t(n_b) - 1) / std::size_t(n_b), 0);
    return out;
  }
  if (s.bits.size() % std::size_t(sb) != 0)
    throw std::length_error("decode: syndrome length not a multiple of the per-block size");
  const std::size_t blocks = s.bits.size() / std::size_t(sb);
  const std::size_t y_blocks = (y.size() + std::size_t(n_b) - 1) / std::size_t(n_b);
  if (y_blocks != blocks)
    throw std::length_error("decode: received string and syndrome cover different block counts");
  DecodeResult out;
  out.corrected = y;
  out.corrected.resize(blocks * std::size_t(n_b), 0);  // zero pad, as in syndrome()
  out.block_failed.assign(blocks, 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::uint16_t sy = code.block_syndrome(detail::block_word(out.corrected, b, n_b));
    std::uint16_t target = 0;
    for (int i = 0; i < sb; ++i)
      if (s.bits[b * std::size_t(sb) + std::size_t(i)]) target |= std::uint16_t(1u << i);
    std::uint16_t diff = std::uint16_t(sy ^ target);
    std::uint16_t e = code.coset_leader(diff);
    if (code.coset_leader_weight(diff) > code.correction_radius()) {
      out.block_failed[b] = 1;
      out.any_failed = true;
    }
    for (int j = 0; j < n_b; ++j)
      if ((e >> j) & 1) out.corrected[b * std::size_t(n_b) + std::size_t(j)] ^= 1;
  }
  out.corrected.resize(y.size());
  return out;
}

// Leaked bits per data bit of the code: (n_b - k) / n_b.
inline double syndrome_overhead(const LinearCode& code) {
  return double(code.syndrome_bits()) / double(code.block_len());
}

// Seed of a binary Toeplitz matrix T mapping input_len bits to output_len
// bits: T[i][j] = bits[input_len - 1 + i - j], so bits holds the first row
// reversed followed by the first column (minus the shared corner).
struct ToeplitzSeed {
  Bits bits;
  std::size_t output_len = 0;
};

inline std::size_t toeplitz_seed_len(std::size_t input_len, std::size_t output_len) {
  return input_len + output_len == 0 ? 0 : input_len + output_len - 1;
}

// T x over GF(2); linear in x for a fixed seed.  Word-packed evaluation:
// output bit i is the parity of x AND a sliding window of the reversed seed.
inline Bits toeplitz_hash(const ToeplitzSeed& seed, const Bits& x) {
  const std::size_t n = x.size();
  const std::size_t ell = seed.output_len;
  if (seed.bits.size() != toeplitz_seed_len(n, ell))
    throw std::length_error("toeplitz_hash: seed sized for a different input/output length");
  Bits out(ell, 0);
  if (ell == 0 || n == 0) return out;
  Bits rev(seed.bits.rbegin(), seed.bits.rend());
  const std::vector<std::uint64_t> xw = pack_words(x);
  const std::vector<std::uint64_t> rw = pack_words(rev);
  auto rev_window_word = [&](std::size_t bitoff, std::size_t wi) -> std::uint64_t {
    // Word wi of rev >> bitoff.
    std::size_t q = bitoff / 64, sh = bitoff % 64;
    std::uint64_t lo = q + wi < rw.size() ? rw[q + wi] : 0;
    if (sh == 0) return lo;
    std::uint64_t hi = q + wi + 1 < rw.size() ? rw[q + wi + 1] : 0;
    return (lo >> sh) | (hi << (64 - sh));
  };
  for (std::size_t i = 0; i < ell; ++i) {
    // out[i] = sum_j x[j] * seed[n-1+i-j] = sum_j x[j] * rev[(ell-1-i)+j].
    const std::size_t off = ell - 1 - i;
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < xw.size(); ++w) acc ^= xw[w] & rev_window_word(off, w);
    out[i] = std::uint8_t(std::popcount(acc) & 1);
  }
  return out;
}

}  // namespace otns
