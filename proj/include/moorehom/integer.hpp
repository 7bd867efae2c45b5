#ifndef MOOREHOM_INTEGER_HPP
#define MOOREHOM_INTEGER_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace moore {

/// Unbounded signed integer.
///
/// Values that fit in an int64_t are stored inline and all arithmetic on
/// them goes through overflow-checked builtins; anything larger is promoted
/// to a GMP integer. The representation is canonical: a value that fits in
/// int64_t is never held in the big form, so equality on the small path is
/// a single compare.
class Integer {
  public:
    Integer() noexcept = default;
    Integer(int64_t v) noexcept : small_(v) {}  // NOLINT: implicit so literals convert
    Integer(int v) noexcept : small_(v) {}      // NOLINT
    Integer(long long v) noexcept : small_(static_cast<int64_t>(v)) {}  // NOLINT
    Integer(uint64_t v);                        // NOLINT
    explicit Integer(const mpz_class& v);

    Integer(const Integer& o) : small_(o.small_) {
        if (o.big_) big_ = std::make_unique<mpz_class>(*o.big_);
    }
    Integer(Integer&&) noexcept = default;
    Integer& operator=(const Integer& o) {
        if (this != &o) {
            small_ = o.small_;
            if (o.big_)
                big_ = std::make_unique<mpz_class>(*o.big_);
            else
                big_.reset();
        }
        return *this;
    }
    Integer& operator=(Integer&&) noexcept = default;

    /// Parses an optionally signed decimal integer; throws std::invalid_argument.
    static Integer parse(std::string_view text);

    bool is_small() const noexcept { return !big_; }
    bool is_zero() const noexcept { return !big_ && small_ == 0; }
    bool is_one() const noexcept { return !big_ && small_ == 1; }
    int sign() const noexcept {
        if (big_) return sgn(*big_);
        return (small_ > 0) - (small_ < 0);
    }
    bool fits_int64() const noexcept { return !big_; }
    /// Only meaningful when fits_int64().
    int64_t to_int64() const noexcept { return small_; }
    mpz_class to_mpz() const;
    std::string to_string() const;

    Integer& operator+=(const Integer& o);
    Integer& operator-=(const Integer& o);
    Integer& operator*=(const Integer& o);
    Integer operator-() const;

    /// this -= a * b
    void submul(const Integer& a, const Integer& b);
    /// this += a * b
    void addmul(const Integer& a, const Integer& b);
    void negate();

    friend Integer operator+(Integer a, const Integer& b) { return a += b; }
    friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
    friend Integer operator*(Integer a, const Integer& b) { return a *= b; }

    friend bool operator==(const Integer& a, const Integer& b) noexcept;
    friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept;

    friend std::ostream& operator<<(std::ostream& os, const Integer& v) {
        return os << v.to_string();
    }

  private:
    void set_big(mpz_class v);
    void normalize();

    int64_t small_ = 0;
    std::unique_ptr<mpz_class> big_;
};

Integer abs(const Integer& a);
/// Compares |a| with |b|.
std::strong_ordering cmp_abs(const Integer& a, const Integer& b) noexcept;
/// Floor division; b must be nonzero.
Integer floor_div(const Integer& a, const Integer& b);
/// Remainder with the sign of b (floor semantics); b must be nonzero.
Integer floor_mod(const Integer& a, const Integer& b);
/// Exact division; b must divide a.
Integer div_exact(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& a);
/// Nonnegative gcd; gcd(0, 0) = 0.
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

using IntVector = std::vector<Integer>;

}  // namespace moore

#endif  // MOOREHOM_INTEGER_HPP
