#include "ainf/scalar.hpp"

#include <cctype>
#include <ostream>

namespace ainf {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field Field::prime(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    return Field(p);
}

Scalar Field::zero() const { return Scalar(mpq_class(0), p_); }
Scalar Field::one() const { return Scalar(mpq_class(1), p_); }
Scalar Field::from_int(long v) const { return Scalar(mpq_class(v), p_); }

Scalar Field::parse(std::string_view text) const {
    std::string s(text);
    auto bad = [&] { return std::invalid_argument("malformed scalar \"" + s + "\""); };
    if (s.empty()) throw bad();
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    bool seen_slash = false;
    bool digits_before = false, digits_after = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            (seen_slash ? digits_after : digits_before) = true;
        } else if (c == '/' && !seen_slash) {
            seen_slash = true;
        } else {
            throw bad();
        }
    }
    if (!digits_before || (seen_slash && !digits_after)) throw bad();
    std::string clean = s[0] == '+' ? s.substr(1) : s;
    mpq_class q;
    if (q.set_str(clean, 10) != 0) throw bad();
    if (seen_slash && q.get_den() == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
    q.canonicalize();
    if (p_ != 0 && mpz_divisible_ui_p(q.get_den_mpz_t(), p_))
        throw std::invalid_argument("denominator of \"" + s + "\" vanishes mod " + std::to_string(p_));
    return Scalar(q, p_);
}

std::string Field::name() const { return p_ == 0 ? "Q" : "GF(" + std::to_string(p_) + ")"; }

Scalar::Scalar(mpq_class v, std::uint32_t modulus) : value_(std::move(v)), modulus_(modulus) {
    value_.canonicalize();
    reduce();
}

void Scalar::reduce() {
    if (modulus_ == 0) return;
    mpz_class p(modulus_);
    mpz_class num = value_.get_num();
    mpz_class den = value_.get_den();
    if (den != 1) {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
            throw std::domain_error("denominator not invertible mod p");
        num *= inv;
    }
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    value_ = mpq_class(r);
}

void Scalar::adopt(std::uint32_t modulus) {
    if (modulus == modulus_ || modulus == 0) return;
    if (modulus_ != 0) throw std::logic_error("mixing scalars of different characteristic");
    modulus_ = modulus;
    reduce();
}

Scalar Scalar::operator-() const {
    Scalar r(*this);
    r.value_ = -r.value_;
    r.reduce();
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    adopt(o.modulus_);
    value_ += o.value_;
    reduce();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    adopt(o.modulus_);
    value_ -= o.value_;
    reduce();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    adopt(o.modulus_);
    value_ *= o.value_;
    reduce();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    adopt(o.modulus_);
    return *this *= o.inverse();
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    Scalar r(*this);
    r.value_ = 1 / value_;
    r.value_.canonicalize();
    r.reduce();
    return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.modulus_ == b.modulus_) return a.value_ == b.value_;
    Scalar x(a), y(b);
    std::uint32_t m = a.modulus_ != 0 ? a.modulus_ : b.modulus_;
    x.adopt(m);
    y.adopt(m);
    return x.value_ == y.value_;
}

std::string Scalar::to_string() const { return value_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace ainf
