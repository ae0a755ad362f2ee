#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kvh {

// Session-wide coefficient field. Q is the rational field, Qi the Gaussian
// rationals. Scalars are always stored as a pair (re, im); under Q the
// imaginary part must stay zero, which input parsing enforces.
enum class FieldTag { Q, Qi };

inline const char* field_name(FieldTag f) { return f == FieldTag::Q ? "Q" : "Qi"; }

// Exact Gaussian rational. Both parts are kept canonical (reduced, positive
// denominator) by GMP, so operator== is structural equality.
class Scalar {
public:
    Scalar() : re_(0), im_(0) {}
    Scalar(long n) : re_(n), im_(0) {}
    Scalar(long num, long den) : re_(num, den), im_(0) {
        if (den == 0) throw std::invalid_argument("Scalar: zero denominator");
        re_.canonicalize();
    }
    explicit Scalar(const mpq_class& re) : re_(re), im_(0) {}
    Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

    Scalar operator-() const { return Scalar(-re_, -im_); }

    Scalar& operator+=(const Scalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        if (is_real() && o.is_real()) {
            re_ *= o.re_;
            return *this;
        }
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
        if (o.is_real()) {
            re_ /= o.re_;
            im_ /= o.re_;
            return *this;
        }
        mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
        mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
        mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Total order used only for deterministic pivot tie-breaks and map keys.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        int c = cmp(a.re_, b.re_);
        if (c != 0) return c < 0;
        return cmp(a.im_, b.im_) < 0;
    }

    // Approximate bit size of the stored integers; the elimination pivot
    // heuristic picks the entry minimizing this.
    size_t bit_size() const {
        auto bits = [](const mpq_class& q) {
            return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
        };
        size_t b = bits(re_);
        if (!is_real()) b += bits(im_);
        return b;
    }

    // "p/q" for rationals, "p/q+r/s i" / "p/q-r/s i" for Gaussian rationals.
    // Integer values print without the "/1".
    std::string str() const {
        auto one = [](const mpq_class& q) {
            std::string s = q.get_num().get_str();
            if (q.get_den() != 1) s += "/" + q.get_den().get_str();
            return s;
        };
        if (is_real()) return one(re_);
        std::string s = one(re_);
        s += (sgn(im_) < 0) ? "-" : "+";
        mpq_class a = abs(im_);
        s += one(a);
        s += " i";
        return s;
    }

    static Scalar parse(std::string_view text, FieldTag field = FieldTag::Qi);

private:
    mpq_class re_, im_;
};

inline Scalar parse_rational_part(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::string t(s);
    if (t.empty()) throw std::invalid_argument("Scalar: empty value");
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("Scalar: bad value '" + t + "'");
    if (q.get_den() == 0) throw std::invalid_argument("Scalar: zero denominator in '" + t + "'");
    q.canonicalize();
    return Scalar(q);
}

// Accepts "p", "p/q", "p/q+r/s i", "p/q-r/s i" and "r/s i" (whitespace around
// tokens ignored). Under field Q a nonzero imaginary part is rejected.
inline Scalar Scalar::parse(std::string_view text, FieldTag field) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("Scalar: empty literal");

    bool has_i = !s.empty() && s.back() == 'i';
    if (has_i) s.pop_back();

    if (!has_i) {
        Scalar v = parse_rational_part(s);
        return v;
    }
    // Split "re±im" at the last +/- that is not a leading sign of s or of the
    // numerator/denominator; scan from position 1.
    size_t split = std::string::npos;
    for (size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '+' && s[k - 1] != '-') {
            split = k;
            break;
        }
    }
    Scalar result;
    if (split == std::string::npos) {
        if (s.empty() || s == "+") s = "1";
        else if (s == "-") s = "-1";
        Scalar im = parse_rational_part(s);
        result = Scalar(mpq_class(0), im.re());
    } else {
        Scalar re = parse_rational_part(s.substr(0, split));
        std::string imtxt = s.substr(split);
        if (imtxt == "+") imtxt = "1";
        else if (imtxt == "-") imtxt = "-1";
        Scalar im = parse_rational_part(imtxt);
        result = Scalar(re.re(), im.re());
    }
    if (field == FieldTag::Q && !result.is_real())
        throw std::invalid_argument("Scalar: complex literal under field Q");
    return result;
}

}  // namespace kvh
