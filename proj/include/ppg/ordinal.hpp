#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace ppg {

/// Heights live in {0, 1, 2, ...} ∪ {ω, ω+1, ...} ∪ {∞}.
class Ordinal {
 public:
  enum class Kind : std::uint8_t { Finite = 0, OmegaPlus = 1, Infinity = 2 };

  constexpr Ordinal() = default;

  static constexpr Ordinal finite(int j) { return Ordinal(Kind::Finite, j); }
  static constexpr Ordinal omega_plus(int j) { return Ordinal(Kind::OmegaPlus, j); }
  static constexpr Ordinal infinity() { return Ordinal(Kind::Infinity, 0); }

  constexpr Kind kind() const { return kind_; }
  constexpr int offset() const { return j_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_infinity() const { return kind_ == Kind::Infinity; }

  constexpr Ordinal succ() const {
    return kind_ == Kind::Infinity ? *this : Ordinal(kind_, j_ + 1);
  }

  constexpr auto operator<=>(const Ordinal&) const = default;

  std::string str() const {
    switch (kind_) {
      case Kind::Finite: return std::to_string(j_);
      case Kind::OmegaPlus: return j_ == 0 ? "w" : "w+" + std::to_string(j_);
      case Kind::Infinity: return "inf";
    }
    return "?";
  }

 private:
  constexpr Ordinal(Kind k, int j) : kind_(k), j_(j) {}

  Kind kind_ = Kind::Finite;
  int j_ = 0;
};

}  // namespace ppg
