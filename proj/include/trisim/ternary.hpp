#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace trisim {

/// One ternary digit. Construction from anything outside {0,1,2} throws.
class Trit {
public:
  constexpr Trit() noexcept = default;
  explicit Trit(int value);

  constexpr int value() const noexcept { return value_; }

  friend constexpr bool operator==(Trit, Trit) = default;
  friend constexpr auto operator<=>(Trit, Trit) = default;

private:
  std::uint8_t value_ = 0;
};

inline const Trit kTrits[3] = {Trit{0}, Trit{1}, Trit{2}};

/// Logic levels 0, vdd/2, vdd.
class VoltageMap {
public:
  explicit VoltageMap(double vdd = 0.9);

  double vdd() const noexcept { return vdd_; }
  double level(Trit t) const noexcept { return vdd_ * t.value() / 2.0; }
  double default_tolerance() const noexcept { return vdd_ / 10.0; }

private:
  double vdd_;
};

struct FullAddResult {
  Trit sum;
  Trit cout;

  friend bool operator==(const FullAddResult&, const FullAddResult&) = default;
};

struct Division {
  Trit quotient;
  Trit remainder;

  friend bool operator==(const Division&, const Division&) = default;
};

/// Trits, least-significant position first.
class TritVector {
public:
  explicit TritVector(std::vector<Trit> trits);
  /// Convenience for tests and literals, e.g. TritVector::of({2, 1}).
  static TritVector of(std::initializer_list<int> digits);

  std::size_t width() const noexcept { return trits_.size(); }
  Trit operator[](std::size_t pos) const { return trits_.at(pos); }
  std::span<const Trit> trits() const noexcept { return trits_; }

  friend bool operator==(const TritVector&, const TritVector&) = default;

private:
  std::vector<Trit> trits_;
};

struct RippleResult {
  TritVector sum;
  Trit cout;
};

/// Widest vector whose value fits in 64 bits.
inline constexpr std::size_t kMaxValueWidth = 40;

FullAddResult full_add(Trit a, Trit b, Trit cin) noexcept;

/// sigma = 3*quotient + remainder. Throws Errc::OutOfRange outside [0,6].
Division decompose(int sigma);

double trit_to_voltage(Trit t, const VoltageMap& m) noexcept;

/// Nearest logic level, or Errc::Unresolvable when v is further than tol from
/// all of them. Requires 0 <= tol < vdd/4.
Trit voltage_to_trit(double v, const VoltageMap& m, double tol);
Trit voltage_to_trit(double v, const VoltageMap& m);

/// Throws Errc::WidthMismatch unless a and b have the same width.
RippleResult ripple_add(const TritVector& a, const TritVector& b, Trit cin);

/// Throws Errc::Overflow for widths above kMaxValueWidth.
std::uint64_t base3_value(const TritVector& v);
/// Throws Errc::Overflow unless x < 3^width.
TritVector from_integer(std::uint64_t x, std::size_t width);

/// The 27-row full-adder truth table: header a,b,cin,sum,cout, ascending (a,b,cin).
std::string truth_table_csv();

}  // namespace trisim
