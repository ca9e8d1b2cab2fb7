#pragma once

// Exact arithmetic over GF(p), GF(p^k) and Q.  Every other module sits on
// top of this one; no floating point anywhere.  Finite-field values are
// packed into one machine word (digits base p), rationals are exact GMP
// rationals in lowest terms.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace modchev {

struct MixedFields : std::runtime_error {
    MixedFields() : std::runtime_error("operands belong to different fields") {}
};
struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("division by zero") {}
};
struct WrongCharacteristic : std::runtime_error {
    explicit WrongCharacteristic(const std::string& what) : std::runtime_error(what) {}
};

class FieldElement;

// Runtime description of a coefficient field.  Instances are interned, so
// element ownership can be tested by pointer identity and a given (p, k)
// always uses the same modulus within a process.
class FieldSpec {
  public:
    enum class Kind { PrimePower, Rationals };

    Kind kind() const { return kind_; }
    long characteristic() const { return p_; }
    int extension_degree() const { return k_; }
    // modulus coefficients c_0..c_k of the irreducible polynomial, monic.
    const std::vector<long>& modulus() const { return modulus_; }
    bool is_rationals() const { return kind_ == Kind::Rationals; }
    long order() const { return order_; } // p^k, 0 for Q

    static const FieldSpec* rationals();
    // GF(p^k); moduli from a frozen table for the fields the catalogs use,
    // otherwise the lexicographically least monic irreducible.
    static const FieldSpec* gf(long p, int k = 1);

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(long n) const;        // image of n under Z -> K
    FieldElement generator() const;             // t, for k > 1
    FieldElement element(const std::vector<long>& coeffs) const;

    // Text form: "3" / "t+1" / "5/6".  parse is the exact inverse of print.
    FieldElement parse(const std::string& text) const;

    std::string name() const;

    // All elements, for small finite fields (used by exhaustive oracles).
    std::vector<FieldElement> all_elements() const;

  private:
    friend class FieldElement;
    FieldSpec(Kind kind, long p, int k, std::vector<long> modulus)
        : kind_(kind), p_(p), k_(k), modulus_(std::move(modulus)) {
        order_ = 1;
        if (kind_ == Kind::PrimePower) {
            for (int i = 0; i < k_; ++i) {
                if (order_ > (long(1) << 40)) throw std::runtime_error("field too large");
                order_ *= p_;
            }
            // packed modulus (without the leading monic digit)
            packed_modulus_ = 0;
            uint64_t mul = 1;
            for (int i = 0; i < k_; ++i) {
                packed_modulus_ += uint64_t(modulus_[i]) * mul;
                mul *= uint64_t(p_);
            }
        } else {
            order_ = 0;
        }
    }
    Kind kind_;
    long p_;
    int k_;
    std::vector<long> modulus_;
    long order_;
    uint64_t packed_modulus_ = 0;
};

// One field element, by value.  For GF(p^k) the k coefficients over Z/p sit
// in a single word (little-endian digits base p); for Q an exact mpq.
class FieldElement {
  public:
    FieldElement() : owner_(nullptr), v_(0) {}

    const FieldSpec* owner() const { return owner_; }

    bool is_zero() const {
        if (!owner_) return true;
        if (owner_->is_rationals()) return q_ == 0;
        return v_ == 0;
    }
    bool is_one() const {
        if (!owner_) return false;
        if (owner_->is_rationals()) return q_ == 1;
        return v_ == 1;
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        if (a.owner_ != b.owner_) return false;
        if (!a.owner_) return true;
        if (a.owner_->is_rationals()) return a.q_ == b.q_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
    // Total order for use as map keys (no algebraic meaning).
    friend bool operator<(const FieldElement& a, const FieldElement& b) {
        if (a.owner_ != b.owner_) return a.owner_ < b.owner_;
        if (!a.owner_) return false;
        if (a.owner_->is_rationals()) return a.q_ < b.q_;
        return a.v_ < b.v_;
    }

    std::vector<long> coeffs() const {
        std::vector<long> c(owner_->extension_degree(), 0);
        uint64_t v = v_;
        for (auto& d : c) {
            d = long(v % uint64_t(owner_->characteristic()));
            v /= uint64_t(owner_->characteristic());
        }
        return c;
    }

    FieldElement operator-() const {
        check(owner_);
        if (owner_->is_rationals()) return FieldElement(owner_, -q_);
        if (owner_->characteristic() == 2) return *this;
        uint64_t p = owner_->characteristic();
        uint64_t r = 0, mul = 1, v = v_;
        for (int i = 0; i < owner_->extension_degree(); ++i) {
            uint64_t d = v % p;
            v /= p;
            if (d) r += (p - d) * mul;
            mul *= p;
        }
        return FieldElement(owner_, r);
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.match(b);
        if (a.owner_->is_rationals()) return FieldElement(a.owner_, a.q_ + b.q_);
        uint64_t p = a.owner_->characteristic();
        if (p == 2) return FieldElement(a.owner_, a.v_ ^ b.v_);
        uint64_t r = 0, mul = 1, x = a.v_, y = b.v_;
        for (int i = 0; i < a.owner_->extension_degree(); ++i) {
            uint64_t d = x % p + y % p;
            if (d >= p) d -= p;
            r += d * mul;
            mul *= p;
            x /= p;
            y /= p;
        }
        return FieldElement(a.owner_, r);
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return a + (-b); }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.match(b);
        if (a.owner_->is_rationals()) return FieldElement(a.owner_, a.q_ * b.q_);
        const FieldSpec* F = a.owner_;
        uint64_t p = F->characteristic();
        int k = F->extension_degree();
        if (k == 1) return FieldElement(F, (a.v_ * b.v_) % p);
        long x[16], y[16], prod[31];
        uint64_t v = a.v_;
        for (int i = 0; i < k; ++i) {
            x[i] = long(v % p);
            v /= p;
        }
        v = b.v_;
        for (int i = 0; i < k; ++i) {
            y[i] = long(v % p);
            v /= p;
        }
        for (int i = 0; i < 2 * k - 1; ++i) prod[i] = 0;
        for (int i = 0; i < k; ++i) {
            if (!x[i]) continue;
            for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % long(p);
        }
        const auto& m = F->modulus();
        for (int d = 2 * k - 2; d >= k; --d) {
            long c = prod[d];
            if (!c) continue;
            prod[d] = 0;
            for (int i = 0; i < k; ++i) {
                long& t = prod[d - k + i];
                t = (t - c * m[i]) % long(p);
                if (t < 0) t += long(p);
            }
        }
        uint64_t r = 0, mul = 1;
        for (int i = 0; i < k; ++i) {
            r += uint64_t(prod[i]) * mul;
            mul *= p;
        }
        return FieldElement(F, r);
    }
    FieldElement inverse() const {
        check(owner_);
        if (is_zero()) throw DivisionByZero();
        if (owner_->is_rationals()) return FieldElement(owner_, 1 / q_);
        return pow(owner_->order() - 2);
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inverse(); }

    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

    FieldElement pow(long e) const {
        check(owner_);
        if (owner_->is_rationals()) {
            if (e < 0) return inverse().pow(-e);
            mpq_class r = 1;
            for (long i = 0; i < e; ++i) r *= q_;
            return FieldElement(owner_, r);
        }
        if (e < 0) return inverse().pow(-e);
        FieldElement r = owner_->one(), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // Smallest r in {0,..,p-1} with r*1 == *this, when the element lies in
    // the prime subfield; nullopt otherwise ("not in Z/p").
    std::optional<long> min_nonneg_int() const {
        check(owner_);
        if (owner_->is_rationals()) throw WrongCharacteristic("min_nonneg_int needs positive characteristic");
        if (v_ >= uint64_t(owner_->characteristic())) return std::nullopt;
        return long(v_);
    }

    // Frobenius inverse in GF(2^k): the unique square root.
    FieldElement sqrt_char2() const {
        check(owner_);
        if (owner_->is_rationals() || owner_->characteristic() != 2)
            throw WrongCharacteristic("sqrt_char2 needs characteristic 2");
        return pow(owner_->order() / 2);
    }
    FieldElement frobenius() const {
        check(owner_);
        return pow(owner_->characteristic());
    }

    const mpq_class& rational() const { return q_; }
    uint64_t packed() const { return v_; }

    std::string str() const;

  private:
    friend class FieldSpec;
    FieldElement(const FieldSpec* o, uint64_t v) : owner_(o), v_(v) {}
    FieldElement(const FieldSpec* o, mpq_class q) : owner_(o), v_(0), q_(std::move(q)) { q_.canonicalize(); }
    static void check(const FieldSpec* o) {
        if (!o) throw std::runtime_error("uninitialized field element");
    }
    void match(const FieldElement& b) const {
        check(owner_);
        if (owner_ != b.owner_) throw MixedFields();
    }
    const FieldSpec* owner_;
    uint64_t v_;
    mpq_class q_;
};

inline FieldElement FieldSpec::zero() const {
    if (is_rationals()) return FieldElement(this, mpq_class(0));
    return FieldElement(this, uint64_t(0));
}
inline FieldElement FieldSpec::one() const { return from_int(1); }
inline FieldElement FieldSpec::from_int(long n) const {
    if (is_rationals()) return FieldElement(this, mpq_class(n));
    long r = n % p_;
    if (r < 0) r += p_;
    return FieldElement(this, uint64_t(r));
}
inline FieldElement FieldSpec::generator() const {
    if (is_rationals() || k_ < 2) throw std::runtime_error("no generator: not an extension field");
    return FieldElement(this, uint64_t(p_));
}
inline FieldElement FieldSpec::element(const std::vector<long>& coeffs) const {
    if (is_rationals()) throw std::runtime_error("coefficient vectors are for finite fields");
    uint64_t v = 0, mul = 1;
    for (int i = 0; i < k_; ++i) {
        long c = i < int(coeffs.size()) ? coeffs[i] % p_ : 0;
        if (c < 0) c += p_;
        v += uint64_t(c) * mul;
        mul *= uint64_t(p_);
    }
    return FieldElement(this, v);
}

inline std::vector<FieldElement> FieldSpec::all_elements() const {
    if (is_rationals()) throw std::runtime_error("rationals are not enumerable");
    std::vector<FieldElement> out;
    out.reserve(order_);
    std::vector<long> c(k_, 0);
    for (long n = 0; n < order_; ++n) {
        out.push_back(element(c));
        for (int i = 0; i < k_; ++i) {
            if (++c[i] < p_) break;
            c[i] = 0;
        }
    }
    return out;
}

namespace detail {

inline bool poly_irreducible(long p, const std::vector<long>& m) {
    // m: monic of degree k over GF(p); trial division by all monic
    // polynomials of degree <= k/2.
    int k = int(m.size()) - 1;
    auto polymod = [&](std::vector<long> a, const std::vector<long>& b) {
        int db = int(b.size()) - 1;
        for (int d = int(a.size()) - 1; d >= db; --d) {
            long c = a[d] % p;
            if (!c) continue;
            for (int i = 0; i <= db; ++i) {
                a[d - db + i] = ((a[d - db + i] - c * b[i]) % p + p) % p;
            }
        }
        a.resize(db);
        return a;
    };
    for (int d = 1; 2 * d <= k; ++d) {
        std::vector<long> f(d + 1, 0);
        f[d] = 1;
        long total = 1;
        for (int i = 0; i < d; ++i) total *= p;
        for (long n = 0; n < total; ++n) {
            long t = n;
            for (int i = 0; i < d; ++i) {
                f[i] = t % p;
                t /= p;
            }
            auto r = polymod(m, f);
            bool zero = true;
            for (long c : r)
                if (c % p) zero = false;
            if (zero) return false;
        }
    }
    return true;
}

inline std::vector<long> default_modulus(long p, int k) {
    // Frozen table first, so serialized catalog values stay stable.
    if (p == 2 && k == 2) return {1, 1, 1};    // t^2+t+1
    if (p == 2 && k == 3) return {1, 1, 0, 1}; // t^3+t+1
    if (p == 3 && k == 2) return {1, 0, 1};    // t^2+1
    if (p == 5 && k == 2) return {3, 0, 1};    // t^2+3
    std::vector<long> m(k + 1, 0);
    m[k] = 1;
    long total = 1;
    for (int i = 0; i < k; ++i) total *= p;
    for (long n = 0; n < total; ++n) {
        long t = n;
        for (int i = 0; i < k; ++i) {
            m[i] = t % p;
            t /= p;
        }
        if (m[0] == 0) continue;
        if (poly_irreducible(p, m)) return m;
    }
    throw std::runtime_error("no irreducible polynomial found");
}

inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

} // namespace detail

inline const FieldSpec* FieldSpec::rationals() {
    static FieldSpec q(Kind::Rationals, 0, 1, {});
    return &q;
}

inline const FieldSpec* FieldSpec::gf(long p, int k) {
    if (!detail::is_prime(p)) throw std::runtime_error("characteristic must be prime");
    if (k < 1 || k > 16) throw std::runtime_error("extension degree out of range");
    static std::map<std::pair<long, int>, std::unique_ptr<FieldSpec>> cache;
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto spec = std::unique_ptr<FieldSpec>(
            new FieldSpec(Kind::PrimePower, p, k, k > 1 ? detail::default_modulus(p, k) : std::vector<long>{0, 1}));
        it = cache.emplace(key, std::move(spec)).first;
    }
    return it->second.get();
}

inline std::string FieldElement::str() const {
    check(owner_);
    if (owner_->is_rationals()) {
        if (q_.get_den() == 1) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }
    if (owner_->extension_degree() == 1) return std::to_string(v_);
    auto c = coeffs();
    std::string s;
    for (int i = int(c.size()) - 1; i >= 0; --i) {
        if (!c[i]) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
        if (i >= 1) {
            s += "t";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

inline FieldElement FieldSpec::parse(const std::string& text) const {
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (is_rationals()) {
        size_t slash = text.find('/');
        if (slash == std::string::npos) return FieldElement(this, mpq_class(mpz_class(text)));
        mpz_class num(text.substr(0, slash)), den(text.substr(slash + 1));
        if (den == 0) throw DivisionByZero();
        return FieldElement(this, mpq_class(num, den));
    }
    // finite field: sum of [coef][t[^e]] terms, '-' allowed
    std::vector<long> c(k_, 0);
    bool any = false;
    while (i < text.size()) {
        skip();
        long sign = 1;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') sign = -1;
            ++i;
            skip();
        } else if (any) {
            break;
        }
        long coef = 1;
        bool sawnum = false;
        long val = 0;
        while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
            val = val * 10 + (text[i] - '0');
            ++i;
            sawnum = true;
        }
        if (sawnum) coef = val;
        int e = 0;
        if (i < text.size() && text[i] == 't') {
            ++i;
            e = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                e = 0;
                while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) {
                    e = e * 10 + (text[i] - '0');
                    ++i;
                }
            }
        } else if (!sawnum) {
            throw std::runtime_error("malformed field element: '" + text + "'");
        }
        if (e >= k_) throw std::runtime_error("exponent beyond extension degree in '" + text + "'");
        long v = ((sign * coef) % p_ + p_) % p_;
        c[e] = (c[e] + v) % p_;
        any = true;
        skip();
    }
    if (!any) throw std::runtime_error("empty field element");
    return element(c);
}

inline std::string FieldSpec::name() const {
    if (is_rationals()) return "Q";
    if (k_ == 1) return "GF(" + std::to_string(p_) + ")";
    return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

} // namespace modchev
