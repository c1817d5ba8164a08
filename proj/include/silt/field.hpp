#pragma once

// Exact scalars: prime fields F_p (runtime modulus) and arbitrary-precision
// rationals. No floating point anywhere. Both types plug into Eigen dense
// matrices; all algorithms downstream are templated on the scalar.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

namespace silt {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller broke a precondition (dimension mismatch, unknown vertex, ...).
class usage_error : public error {
public:
    using error::error;
};

// A mathematical invariant the library relies on failed to hold.
class invariant_violation : public error {
public:
    using error::error;
};

// A configured brute-force cap was exceeded; fail loudly instead of hanging.
class cap_exceeded : public error {
public:
    using error::error;
};

// A capped decision procedure could not reach a verdict (never a wrong answer).
class undecided_error : public error {
public:
    using error::error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw invariant_violation(what);
}

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Arbitrary-precision rational with a deliberately narrow interface: the
// backing boost number accepts conversions from nearly anything, which trips
// Eigen's operator SFINAE, so only the constructors below are exposed.
struct Rat {
    BigRat q;

    Rat() = default;
    Rat(int64_t value) : q(value) {}  // NOLINT: Eigen needs implicit Scalar(int)
    explicit Rat(BigRat value) : q(std::move(value)) {}
    explicit Rat(const BigInt& num, const BigInt& den) : q(num, den) {}

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(BigRat(a.q + b.q)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(BigRat(a.q - b.q)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(BigRat(a.q * b.q)); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.q == 0) throw usage_error("division by zero in Q");
        return Rat(BigRat(a.q / b.q));
    }
    Rat operator-() const { return Rat(BigRat(-q)); }
    Rat& operator+=(const Rat& o) { q += o.q; return *this; }
    Rat& operator-=(const Rat& o) { q -= o.q; return *this; }
    Rat& operator*=(const Rat& o) { q *= o.q; return *this; }
    Rat& operator/=(const Rat& o) { return *this = *this / o; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q == b.q; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.q != b.q; }
};

// Element of F_p. The modulus travels with the value; scalars created by
// Eigen internals (Scalar(0), Scalar(1)) start unbound (p == 0) and pick up
// the modulus from the first bound operand they meet. Unbound arithmetic is
// plain integer arithmetic, which maps correctly into F_p at binding time.
struct Fp {
    int64_t v = 0;
    int64_t p = 0;

    Fp() = default;
    Fp(int64_t value) : v(value), p(0) {}  // NOLINT: Eigen needs implicit Scalar(int)
    Fp(int64_t value, int64_t modulus) : v(value), p(modulus) {
        if (p > 0) normalize();
    }

    void normalize() {
        v %= p;
        if (v < 0) v += p;
    }

    bool bound() const { return p != 0; }

    static int64_t join(int64_t a, int64_t b) {
        if (a == 0) return b;
        if (b == 0) return a;
        if (a != b) throw usage_error("F_p arithmetic across different moduli");
        return a;
    }

    friend Fp operator+(const Fp& a, const Fp& b) { return Fp(a.v + b.v, join(a.p, b.p)); }
    friend Fp operator-(const Fp& a, const Fp& b) { return Fp(a.v - b.v, join(a.p, b.p)); }
    friend Fp operator*(const Fp& a, const Fp& b) { return Fp(a.v * b.v, join(a.p, b.p)); }
    Fp operator-() const { return Fp(-v, p); }

    Fp inverse() const {
        if (!bound()) {
            if (v == 1) return Fp(1);
            if (v == -1) return Fp(-1);
            throw usage_error("cannot invert unbound integer in F_p");
        }
        if (v == 0) throw usage_error("division by zero in F_p");
        // extended Euclid
        int64_t a = v, m = p, x0 = 1, x1 = 0;
        while (m != 0) {
            int64_t q = a / m;
            int64_t t = a - q * m; a = m; m = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        require(a == 1, "F_p modulus not prime: gcd != 1 at inversion");
        return Fp(x0, p);
    }

    friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }

    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    bool is_zero() const { return bound() ? v == 0 : v == 0; }

    friend bool operator==(const Fp& a, const Fp& b) {
        if (a.bound() && b.bound()) {
            Fp::join(a.p, b.p);
            return a.v == b.v;
        }
        if (!a.bound() && !b.bound()) return a.v == b.v;
        const Fp& bd = a.bound() ? a : b;
        const Fp& ub = a.bound() ? b : a;
        return Fp(ub.v, bd.p).v == bd.v;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

inline bool scalar_is_zero(const Fp& x) { return x.is_zero(); }
inline bool scalar_is_zero(const Rat& x) { return x.q == 0; }

inline std::string scalar_to_string(const Fp& x) { return std::to_string(x.v); }
inline std::string scalar_to_string(const Rat& x) { return x.q.str(); }

inline bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Runtime field descriptor; binds integer/decimal data to exact scalars.
struct Field {
    enum class Kind { prime, rationals };
    Kind kind = Kind::rationals;
    int64_t p = 0;

    static Field fp(int64_t p) {
        if (!is_prime(p)) throw usage_error("field modulus " + std::to_string(p) + " is not prime");
        return Field{Kind::prime, p};
    }
    static Field rationals() { return Field{Kind::rationals, 0}; }

    bool is_finite() const { return kind == Kind::prime; }

    friend bool operator==(const Field& a, const Field& b) {
        return a.kind == b.kind && a.p == b.p;
    }
};

template <class S>
struct FieldOps;

template <>
struct FieldOps<Fp> {
    static Fp from_int(const Field& f, int64_t n) { return Fp(n, f.p); }
    static Fp from_bigint(const Field& f, const BigInt& n) {
        BigInt r = n % f.p;
        if (r < 0) r += f.p;
        return Fp(static_cast<int64_t>(r), f.p);
    }
    static bool field_matches(const Field& f) { return f.kind == Field::Kind::prime; }
};

template <>
struct FieldOps<Rat> {
    static Rat from_int(const Field&, int64_t n) { return Rat(n); }
    static Rat from_bigint(const Field&, const BigInt& n) { return Rat(BigRat(n)); }
    static bool field_matches(const Field& f) { return f.kind == Field::Kind::rationals; }
};

// Parses "-12", "3/4", "1.25" into an exact scalar of the field.
template <class S>
S scalar_from_decimal(const Field& f, const std::string& text) {
    auto parse_int = [](const std::string& s) -> BigInt {
        if (s.empty()) throw usage_error("empty coefficient");
        return BigInt(s);
    };
    auto slash = text.find('/');
    auto dot = text.find('.');
    BigInt num, den = 1;
    if (slash != std::string::npos) {
        num = parse_int(text.substr(0, slash));
        den = parse_int(text.substr(slash + 1));
        if (den == 0) throw usage_error("zero denominator in coefficient '" + text + "'");
    } else if (dot != std::string::npos) {
        std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
        bool neg = !head.empty() && head[0] == '-';
        num = parse_int(head.empty() || head == "-" ? std::string(neg ? "-0" : "0") : head);
        for (char c : tail) {
            if (c < '0' || c > '9') throw usage_error("bad coefficient '" + text + "'");
            num = num * 10 + (neg ? -(c - '0') : (c - '0'));
            den *= 10;
        }
    } else {
        num = parse_int(text);
    }
    if constexpr (std::is_same_v<S, Rat>) {
        return Rat(num, den);
    } else {  // F_p
        Fp n = FieldOps<Fp>::from_bigint(f, num);
        Fp d = FieldOps<Fp>::from_bigint(f, den);
        return n / d;
    }
}

}  // namespace silt

namespace Eigen {

template <>
struct NumTraits<silt::Fp> {
    using Real = silt::Fp;
    using NonInteger = silt::Fp;
    using Literal = silt::Fp;
    using Nested = silt::Fp;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 3,
        MulCost = 6
    };
    static inline silt::Fp epsilon() { return silt::Fp(0); }
    static inline silt::Fp dummy_precision() { return silt::Fp(0); }
    static inline int digits10() { return 18; }
};

template <>
struct NumTraits<silt::Rat> {
    using Real = silt::Rat;
    using NonInteger = silt::Rat;
    using Literal = silt::Rat;
    using Nested = silt::Rat;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 10,
        MulCost = 20
    };
    static inline silt::Rat epsilon() { return silt::Rat(0); }
    static inline silt::Rat dummy_precision() { return silt::Rat(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
