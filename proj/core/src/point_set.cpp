#include <boxlogic/point_set.hpp>

#include <boxlogic/errors.hpp>

#include <algorithm>
#include <bit>

namespace boxlogic {

namespace {

std::size_t word_count(std::size_t size) { return (size + 63) / 64; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

PointSet::PointSet(std::size_t size) : size_(size), words_(word_count(size), 0) {}

PointSet PointSet::full(std::size_t size) {
  PointSet s(size);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  s.trim();
  return s;
}

void PointSet::trim() noexcept {
  const std::size_t tail = size_ & 63;
  if (tail != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

std::size_t PointSet::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool PointSet::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool PointSet::all() const noexcept { return count() == size_; }

std::size_t PointSet::lowest() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return npos;
}

std::size_t PointSet::next(std::size_t i) const noexcept {
  ++i;
  if (i >= size_) return npos;
  std::size_t w = i >> 6;
  std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (i & 63));
  while (true) {
    if (bits != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
    if (++w == words_.size()) return npos;
    bits = words_[w];
  }
}

bool PointSet::is_subset_of(const PointSet& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool PointSet::intersects(const PointSet& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

PointSet& PointSet::operator&=(const PointSet& other) noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

PointSet& PointSet::operator|=(const PointSet& other) noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

PointSet& PointSet::operator^=(const PointSet& other) noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

PointSet& PointSet::operator-=(const PointSet& other) noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

PointSet PointSet::complement() const {
  PointSet c(*this);
  for (auto& w : c.words_) w = ~w;
  c.trim();
  return c;
}

std::size_t PointSet::hash() const noexcept {
  // FNV-1a over words, then a final avalanche.
  std::uint64_t h = 1469598103934665603ull ^ size_;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return static_cast<std::size_t>(h);
}

std::string PointSet::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = std::max<std::size_t>(1, (size_ + 3) / 4);
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    const std::size_t bit = d * 4;
    unsigned nibble = 0;
    for (std::size_t k = 0; k < 4 && bit + k < size_; ++k) {
      if (test(bit + k)) nibble |= 1u << k;
    }
    out[digits - 1 - d] = kDigits[nibble];
  }
  return out;
}

PointSet PointSet::from_hex(std::string_view hex, std::size_t size) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  PointSet s(size);
  const std::size_t digits = hex.size();
  for (std::size_t d = 0; d < digits; ++d) {
    const int v = hex_value(hex[digits - 1 - d]);
    if (v < 0) throw InvalidInput("invalid hex digit in bit vector '" + std::string(hex) + "'");
    for (std::size_t k = 0; k < 4; ++k) {
      if ((v >> k) & 1) {
        const std::size_t bit = d * 4 + k;
        if (bit >= size) {
          throw InvalidInput("bit vector '" + std::string(hex) + "' has bits beyond " +
                             std::to_string(size));
        }
        s.set(bit);
      }
    }
  }
  return s;
}

std::vector<std::size_t> PointSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

bool canonical_less(const PointSet& a, const PointSet& b) noexcept {
  const auto ca = a.count();
  const auto cb = b.count();
  if (ca != cb) return ca < cb;
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t w = 0; w < wa.size(); ++w) {
    const std::uint64_t diff = wa[w] ^ wb[w];
    if (diff != 0) return (wa[w] & (diff & (~diff + 1))) != 0;
  }
  return false;
}

}  // namespace boxlogic
