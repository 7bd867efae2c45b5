#include "moorehom/integer.hpp"

#include <limits>
#include <stdexcept>

namespace moore {

namespace {

mpz_class mpz_from_int64(int64_t v) {
    mpz_class r;
    if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max()) {
        r = static_cast<long>(v);
    } else {
        r = std::to_string(v);
    }
    return r;
}

}  // namespace

Integer::Integer(uint64_t v) {
    if (v <= static_cast<uint64_t>(std::numeric_limits<int64_t>::max())) {
        small_ = static_cast<int64_t>(v);
    } else {
        set_big(mpz_class(std::to_string(v)));
    }
}

Integer::Integer(const mpz_class& v) {
    set_big(v);
    normalize();
}

Integer Integer::parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed integer literal '" + s + "'");
    for (size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("malformed integer literal '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    return Integer(mpz_class(s, 10));
}

mpz_class Integer::to_mpz() const {
    if (big_) return *big_;
    return mpz_from_int64(small_);
}

std::string Integer::to_string() const {
    if (big_) return big_->get_str();
    return std::to_string(small_);
}

void Integer::set_big(mpz_class v) {
    if (big_)
        *big_ = std::move(v);
    else
        big_ = std::make_unique<mpz_class>(std::move(v));
}

void Integer::normalize() {
    if (!big_) return;
    if (mpz_fits_slong_p(big_->get_mpz_t()) && sizeof(long) == sizeof(int64_t)) {
        small_ = big_->get_si();
        big_.reset();
    }
}

Integer& Integer::operator+=(const Integer& o) {
    if (!big_ && !o.big_) {
        int64_t r;
        if (!__builtin_add_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    set_big(to_mpz() + o.to_mpz());
    normalize();
    return *this;
}

Integer& Integer::operator-=(const Integer& o) {
    if (!big_ && !o.big_) {
        int64_t r;
        if (!__builtin_sub_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    set_big(to_mpz() - o.to_mpz());
    normalize();
    return *this;
}

Integer& Integer::operator*=(const Integer& o) {
    if (!big_ && !o.big_) {
        int64_t r;
        if (!__builtin_mul_overflow(small_, o.small_, &r)) {
            small_ = r;
            return *this;
        }
    }
    set_big(to_mpz() * o.to_mpz());
    normalize();
    return *this;
}

Integer Integer::operator-() const {
    Integer r(*this);
    r.negate();
    return r;
}

void Integer::negate() {
    if (!big_) {
        if (small_ != std::numeric_limits<int64_t>::min()) {
            small_ = -small_;
            return;
        }
        set_big(-mpz_from_int64(small_));
        return;
    }
    mpz_neg(big_->get_mpz_t(), big_->get_mpz_t());
    normalize();
}

void Integer::submul(const Integer& a, const Integer& b) {
    if (!big_ && !a.big_ && !b.big_) {
        int64_t p, r;
        if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
            !__builtin_sub_overflow(small_, p, &r)) {
            small_ = r;
            return;
        }
    }
    mpz_class acc = to_mpz();
    mpz_class am = a.to_mpz(), bm = b.to_mpz();
    mpz_submul(acc.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t());
    set_big(std::move(acc));
    normalize();
}

void Integer::addmul(const Integer& a, const Integer& b) {
    if (!big_ && !a.big_ && !b.big_) {
        int64_t p, r;
        if (!__builtin_mul_overflow(a.small_, b.small_, &p) &&
            !__builtin_add_overflow(small_, p, &r)) {
            small_ = r;
            return;
        }
    }
    mpz_class acc = to_mpz();
    mpz_class am = a.to_mpz(), bm = b.to_mpz();
    mpz_addmul(acc.get_mpz_t(), am.get_mpz_t(), bm.get_mpz_t());
    set_big(std::move(acc));
    normalize();
}

bool operator==(const Integer& a, const Integer& b) noexcept {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    if (a.big_ && b.big_) return cmp(*a.big_, *b.big_) == 0;
    return false;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
    if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
    // A big value lies outside the int64 range, so its sign decides.
    if (a.big_ && !b.big_) return sgn(*a.big_) < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (!a.big_ && b.big_) return sgn(*b.big_) > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = cmp(*a.big_, *b.big_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Integer abs(const Integer& a) {
    return a.sign() < 0 ? -a : a;
}

std::strong_ordering cmp_abs(const Integer& a, const Integer& b) noexcept {
    if (a.is_small() && b.is_small()) {
        int64_t x = a.to_int64(), y = b.to_int64();
        // Compare in unsigned space to survive INT64_MIN.
        uint64_t ux = x < 0 ? 0 - static_cast<uint64_t>(x) : static_cast<uint64_t>(x);
        uint64_t uy = y < 0 ? 0 - static_cast<uint64_t>(y) : static_cast<uint64_t>(y);
        return ux <=> uy;
    }
    mpz_class x = a.to_mpz(), y = b.to_mpz();
    int c = mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t());
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Integer floor_div(const Integer& a, const Integer& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small()) {
        int64_t x = a.to_int64(), y = b.to_int64();
        if (!(x == std::numeric_limits<int64_t>::min() && y == -1)) {
            int64_t q = x / y;
            if ((x % y != 0) && ((x < 0) != (y < 0))) --q;
            return Integer(q);
        }
    }
    mpz_class q;
    mpz_class x = a.to_mpz(), y = b.to_mpz();
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return Integer(q);
}

Integer floor_mod(const Integer& a, const Integer& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small()) {
        int64_t x = a.to_int64(), y = b.to_int64();
        if (y == -1) return Integer(0);
        int64_t r = x % y;
        if (r != 0 && ((r < 0) != (y < 0))) r += y;
        return Integer(r);
    }
    mpz_class r;
    mpz_class x = a.to_mpz(), y = b.to_mpz();
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return Integer(r);
}

Integer div_exact(const Integer& a, const Integer& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (a.is_small() && b.is_small()) {
        int64_t x = a.to_int64(), y = b.to_int64();
        if (!(x == std::numeric_limits<int64_t>::min() && y == -1)) return Integer(x / y);
    }
    mpz_class q;
    mpz_class x = a.to_mpz(), y = b.to_mpz();
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return Integer(q);
}

bool divides(const Integer& d, const Integer& a) {
    if (d.is_zero()) return a.is_zero();
    return floor_mod(a, d).is_zero();
}

Integer gcd(const Integer& a, const Integer& b) {
    if (a.is_small() && b.is_small()) {
        int64_t x = a.to_int64(), y = b.to_int64();
        if (x != std::numeric_limits<int64_t>::min() && y != std::numeric_limits<int64_t>::min()) {
            x = x < 0 ? -x : x;
            y = y < 0 ? -y : y;
            while (y != 0) {
                int64_t t = x % y;
                x = y;
                y = t;
            }
            return Integer(x);
        }
    }
    mpz_class g;
    mpz_class x = a.to_mpz(), y = b.to_mpz();
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return Integer(g);
}

Integer lcm(const Integer& a, const Integer& b) {
    if (a.is_zero() || b.is_zero()) return Integer(0);
    Integer g = gcd(a, b);
    return abs(div_exact(a, g) * b);
}

}  // namespace moore
