#include "trisim/ternary.hpp"

#include <cmath>
#include <sstream>

#include "trisim/error.hpp"

namespace trisim {

Trit::Trit(int value) {
  if (value < 0 || value > 2) {
    throw Error(Errc::OutOfRange, "trit value " + std::to_string(value) + " not in {0,1,2}");
  }
  value_ = static_cast<std::uint8_t>(value);
}

VoltageMap::VoltageMap(double vdd) : vdd_(vdd) {
  if (!(vdd > 0.0)) {
    throw Error(Errc::Config, "vdd must be positive");
  }
}

TritVector::TritVector(std::vector<Trit> trits) : trits_(std::move(trits)) {
  if (trits_.empty()) {
    throw Error(Errc::OutOfRange, "trit vector width must be positive");
  }
}

TritVector TritVector::of(std::initializer_list<int> digits) {
  std::vector<Trit> trits;
  trits.reserve(digits.size());
  for (int d : digits) trits.emplace_back(d);
  return TritVector(std::move(trits));
}

FullAddResult full_add(Trit a, Trit b, Trit cin) noexcept {
  const int sigma = a.value() + b.value() + cin.value();
  const Division d = decompose(sigma);
  return {d.remainder, d.quotient};
}

Division decompose(int sigma) {
  if (sigma < 0 || sigma > 6) {
    throw Error(Errc::OutOfRange, "sigma " + std::to_string(sigma) + " not in [0,6]");
  }
  return {Trit{sigma / 3}, Trit{sigma % 3}};
}

double trit_to_voltage(Trit t, const VoltageMap& m) noexcept { return m.level(t); }

Trit voltage_to_trit(double v, const VoltageMap& m, double tol) {
  if (!(tol >= 0.0) || !(tol < m.vdd() / 4.0)) {
    throw Error(Errc::OutOfRange, "tolerance must lie in [0, vdd/4)");
  }
  int nearest = static_cast<int>(std::lround(2.0 * v / m.vdd()));
  if (nearest < 0) nearest = 0;
  if (nearest > 2) nearest = 2;
  const Trit t{nearest};
  if (!(std::abs(v - m.level(t)) <= tol)) {
    std::ostringstream msg;
    msg << v << " V is not within " << tol << " V of any logic level";
    throw Error(Errc::Unresolvable, msg.str());
  }
  return t;
}

Trit voltage_to_trit(double v, const VoltageMap& m) { return voltage_to_trit(v, m, m.default_tolerance()); }

RippleResult ripple_add(const TritVector& a, const TritVector& b, Trit cin) {
  if (a.width() != b.width()) {
    throw Error(Errc::WidthMismatch,
                "operand widths " + std::to_string(a.width()) + " and " + std::to_string(b.width()));
  }
  std::vector<Trit> sum;
  sum.reserve(a.width());
  Trit carry = cin;
  for (std::size_t i = 0; i < a.width(); ++i) {
    const FullAddResult r = full_add(a[i], b[i], carry);
    sum.push_back(r.sum);
    carry = r.cout;
  }
  return {TritVector(std::move(sum)), carry};
}

std::uint64_t base3_value(const TritVector& v) {
  if (v.width() > kMaxValueWidth) {
    throw Error(Errc::Overflow, "width " + std::to_string(v.width()) + " exceeds 64-bit range");
  }
  std::uint64_t value = 0;
  for (std::size_t i = v.width(); i-- > 0;) {
    value = value * 3 + static_cast<std::uint64_t>(v[i].value());
  }
  return value;
}

TritVector from_integer(std::uint64_t x, std::size_t width) {
  if (width == 0) {
    throw Error(Errc::OutOfRange, "trit vector width must be positive");
  }
  std::vector<Trit> trits;
  trits.reserve(width);
  for (std::size_t i = 0; i < width; ++i) {
    trits.emplace_back(static_cast<int>(x % 3));
    x /= 3;
  }
  if (x != 0) {
    throw Error(Errc::Overflow, "value does not fit in " + std::to_string(width) + " trits");
  }
  return TritVector(std::move(trits));
}

std::string truth_table_csv() {
  std::ostringstream out;
  out << "a,b,cin,sum,cout\n";
  for (Trit a : kTrits) {
    for (Trit b : kTrits) {
      for (Trit c : kTrits) {
        const FullAddResult r = full_add(a, b, c);
        out << a.value() << ',' << b.value() << ',' << c.value() << ',' << r.sum.value() << ','
            << r.cout.value() << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace trisim
