#ifndef RLCAN_COMMON_HPP
#define RLCAN_COMMON_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace rlcan {

// Subsets of an indexed carrier (lattice elements, worlds) as bit masks.
// Carriers are capped at 64 elements; larger structures are rejected up
// front by the size guards, never silently truncated.
using Mask = std::uint64_t;

constexpr int kMaxElements = 64;

constexpr Mask bit(int i) { return Mask{1} << i; }
constexpr bool has(Mask m, int i) { return (m >> i) & 1; }
constexpr Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline int popcount(Mask m) { return __builtin_popcountll(m); }

// Lowest set bit index; -1 on empty.
inline int first_bit(Mask m) { return m ? __builtin_ctzll(m) : -1; }

template <class F>
void for_each_bit(Mask m, F&& f) {
  while (m) {
    int i = __builtin_ctzll(m);
    f(i);
    m &= m - 1;
  }
}

// Diagnostic for an expected, reportable failure (a violated law, a failed
// precondition on user input). `witness` carries the offending element or
// world indices.
struct Error {
  std::string code;
  std::vector<int> witness;
  std::string message;
};

inline Error make_error(std::string code, std::vector<int> witness = {},
                        std::string message = {}) {
  return Error{std::move(code), std::move(witness), std::move(message)};
}

template <class T>
using Result = std::variant<T, Error>;

template <class T>
bool is_ok(const Result<T>& r) {
  return std::holds_alternative<T>(r);
}
template <class T>
const T& value(const Result<T>& r) {
  return std::get<T>(r);
}
// A reference into a temporary would dangle; use take() for rvalues.
template <class T>
const T& value(Result<T>&& r) = delete;
template <class T>
T take(Result<T>&& r) {
  return std::get<T>(std::move(r));
}
template <class T>
const Error& error(const Result<T>& r) {
  return std::get<Error>(r);
}

// Dynamic bitset for sets that may exceed 64 bits (pair relations over
// world posets: bit index = x*W + y).
class Bits {
 public:
  Bits() = default;
  explicit Bits(int nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

  int size_bits() const { return n_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool any() const {
    for (auto v : w_)
      if (v) return true;
    return false;
  }
  bool none() const { return !any(); }
  int count() const {
    int c = 0;
    for (auto v : w_) c += __builtin_popcountll(v);
    return c;
  }
  bool operator==(const Bits& o) const = default;

  Bits& operator|=(const Bits& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  bool subset_of(const Bits& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  template <class F>
  void for_each(F&& f) const {
    for (size_t k = 0; k < w_.size(); ++k) {
      std::uint64_t v = w_[k];
      while (v) {
        f(int(k * 64) + __builtin_ctzll(v));
        v &= v - 1;
      }
    }
  }

  // Lexicographic key (low bit = least significant), for deterministic sorts.
  const std::vector<std::uint64_t>& words() const { return w_; }
  bool lex_less(const Bits& o) const {
    for (size_t i = w_.size(); i-- > 0;)
      if (w_[i] != o.w_[i]) return w_[i] < o.w_[i];
    return false;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace rlcan

#endif
